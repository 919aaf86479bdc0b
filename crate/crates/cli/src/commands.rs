use crate::{Check, Cli, Command, Emit, Mode};
use hypermirror::format::{diffpoly_terms, parse_functions, tpoly_record, SeriesRecord};
use hypermirror::golden::{golden_suite, ItemStatus};
use hypermirror::mirror::{
    integrality_report, mirror_pipeline, verify_hodge_identity, Integrality,
};
use hypermirror::ode::{
    relation_search, verify_q_tilde_equation, verify_schwarzian_equation, verify_z_equation,
    wronskian, OdeError, SearchConfig, SearchMode,
};
use hypermirror::par::map_tasks;
use hypermirror::series::rational::{format_rational, rat};
use hypermirror::yukawa::{
    evaluate_f0_at, instanton_numbers, pandharipande_residuals, t_functions,
    t_functions_from_basis, yukawa_definition_residual, yukawa_from_definition, yukawa_from_mirror,
    QuinticData, YukawaError,
};
use hypermirror::{Exec, PowerSeries};
use serde_json::{json, Value};
use std::fmt::Display;
use std::fmt::Write as _;
use thiserror::Error;

const MIN_ORDER: usize = 8;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl RunError {
    pub fn code(&self) -> u8 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Compute(_) => 1,
        }
    }
}

fn compute<E: Display>(e: E) -> RunError {
    RunError::Compute(e.to_string())
}

/// A finished command: the structured report, its text rendering, and
/// whether every check in it passed.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn value(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            ok: true,
        }
    }
}

fn check_order(order: usize) -> Result<(), RunError> {
    if order < MIN_ORDER {
        return Err(RunError::Usage(format!(
            "--order must be at least {MIN_ORDER}, got {order}"
        )));
    }
    Ok(())
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn run(cli: &Cli) -> Result<Outcome, RunError> {
    match &cli.command {
        Command::Mirror { s, order, emit } => mirror(*s, *order, *emit),
        Command::Yukawa { order } => yukawa(*order),
        Command::Instantons { count } => instantons(*count),
        Command::Prepotential { order } => prepotential(*order),
        Command::Verify { check, s, order } => verify(*check, *s, *order),
        Command::EvalF0 { t, order } => eval_f0(*t, *order),
        Command::Wronskian { input } => wronskian_file(input),
        Command::SearchRelation {
            mode,
            weight_bound,
            order,
            trials,
        } => search(*mode, *weight_bound, *order, *trials, cli.seed),
    }
}

fn series_outcome(label: &str, s: &PowerSeries) -> Outcome {
    Outcome::value(
        json!({ "name": label, "series": SeriesRecord::from(s) }),
        format!("{label} = {s}"),
    )
}

fn mirror(s: u32, order: usize, emit: Emit) -> Result<Outcome, RunError> {
    if s < 3 {
        return Err(RunError::Usage(format!("--s must be at least 3, got {s}")));
    }
    check_order(order)?;
    let d = mirror_pipeline(s, order).map_err(compute)?;
    let (label, series) = match emit {
        Emit::ZOfQ => ("z_of_q", &d.z_of_q),
        Emit::QOfZ => ("q_of_z", &d.q_of_z),
        Emit::F0Tilde => ("f0_tilde", &d.f0_tilde),
    };
    let mut o = series_outcome(label, series);
    o.json["s"] = json!(s);
    Ok(o)
}

fn yukawa(order: usize) -> Result<Outcome, RunError> {
    check_order(order)?;
    Ok(series_outcome(
        "K",
        &yukawa_from_definition(order).map_err(compute)?,
    ))
}

fn instantons(count: usize) -> Result<Outcome, RunError> {
    if count == 0 {
        return Err(RunError::Usage("--count must be positive".into()));
    }
    let k = yukawa_from_definition(count + 1).map_err(compute)?;
    let table = instanton_numbers(&k, count).map_err(compute)?;
    let mut text = String::new();
    for l in 1..=table.len() {
        let _ = writeln!(
            text,
            "n_{l} = {}    N_{l} = {}",
            table.n(l),
            format_rational(&table.big_n[l - 1])
        );
    }
    Ok(Outcome::value(
        serde_json::to_value(&table).expect("table serializes"),
        text,
    ))
}

fn prepotential(order: usize) -> Result<Outcome, RunError> {
    check_order(order)?;
    let f = QuinticData::new(order).map_err(compute)?.prepotential;
    let json = json!({ "name": "F", "t_powers": tpoly_record(&f) });
    Ok(Outcome::value(json, format!("F = {f:?}")))
}

fn eval_f0(t: f64, order: usize) -> Result<Outcome, RunError> {
    check_order(order)?;
    let r = evaluate_f0_at(t, order).map_err(|e| match e {
        YukawaError::Divergent(_) => RunError::Usage(format!("--t must be negative: {e}")),
        other => compute(other),
    })?;
    let json = json!({ "t": float(t), "order": order, "value": float(r.value), "tail_bound": float(r.tail_bound) });
    Ok(Outcome::value(
        json,
        format!(
            "F0({}) = {} (tail < {})",
            float(t),
            float(r.value),
            float(r.tail_bound)
        ),
    ))
}

fn wronskian_file(path: &std::path::Path) -> Result<Outcome, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
    let fs =
        parse_functions(&text).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
    match wronskian(&fs) {
        Ok(w) => {
            let parts: Vec<SeriesRecord> = w.parts().iter().map(SeriesRecord::from).collect();
            let mut text = String::new();
            for (j, p) in w.parts().iter().enumerate() {
                let _ = writeln!(text, "log^{j}/{j}!: {p}");
            }
            Ok(Outcome::value(
                json!({ "status": "nonzero", "count": fs.len(), "log_parts": parts }),
                text,
            ))
        }
        Err(OdeError::Indeterminate { order }) => Ok(Outcome::value(
            json!({ "status": "zero_to_order", "count": fs.len(), "order": order }),
            format!("W vanishes below x^{order}"),
        )),
        Err(e) => Err(RunError::Usage(e.to_string())),
    }
}

fn search(
    mode: Mode,
    weight_bound: i64,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<Outcome, RunError> {
    check_order(order)?;
    if trials == 0 {
        return Err(RunError::Usage("--trials must be positive".into()));
    }
    let mode = match mode {
        Mode::P1 => SearchMode::P1,
        Mode::P2 => SearchMode::P2,
    };
    let mut cfg = SearchConfig::new(mode, weight_bound);
    cfg.order = order;
    cfg.trials = trials;
    cfg.seed = seed;
    let r = match relation_search(&cfg) {
        Ok(r) => r,
        Err(e @ OdeError::NoRelation { .. }) => {
            return Ok(Outcome {
                json: json!({ "status": "not_found", "mode": mode, "weight_bound": weight_bound, "seed": seed, "reason": e.to_string() }),
                text: format!("no relation: {e}"),
                ok: false,
            })
        }
        Err(e) => return Err(compute(e)),
    };
    let symbols: Vec<Value> = r
        .polynomial
        .symbols()
        .iter()
        .map(|s| json!({ "name": s.name, "weight": s.weight }))
        .collect();
    let mut text = format!(
        "{mode:?} relation at weight {} (degree {}, {} terms, kernel {} of {} monomials, order {} equation)\n",
        r.weight,
        r.degree,
        r.polynomial.len(),
        r.kernel_dimension,
        r.monomials,
        r.differential_order
    );
    for (e, c) in r.polynomial.terms() {
        let mono: Vec<String> = e
            .iter()
            .zip(r.polynomial.symbols())
            .filter(|(&k, _)| k > 0)
            .map(|(&k, s)| {
                if k == 1 {
                    s.name.clone()
                } else {
                    format!("({})^{k}", s.name)
                }
            })
            .collect();
        let _ = writeln!(text, "  {:>12} {}", format_rational(c), mono.join(" "));
    }
    let json = json!({
        "status": "found",
        "mode": r.mode,
        "seed": seed,
        "weight": r.weight,
        "degree": r.degree,
        "kernel_dimension": r.kernel_dimension,
        "monomials": r.monomials,
        "certified_samples": r.certified_samples,
        "verified_order": r.verified_order,
        "differential_order": r.differential_order,
        "symbols": symbols,
        "polynomial": diffpoly_terms(&r.polynomial),
    });
    Ok(Outcome::value(json, text))
}

/// One line of a verification report.
struct Item {
    name: String,
    pass: bool,
    detail: Value,
    summary: String,
}

fn residual_item(name: String, r: &PowerSeries, below: usize) -> Item {
    let known = r.order() >= below as i64;
    let zero = r.truncate(below as i64).is_zero();
    let first = r
        .truncate(below as i64)
        .leading()
        .map(|(n, c)| json!({ "exponent": n, "coefficient": format_rational(c) }));
    let summary = match (known, zero) {
        (false, _) => format!("only known below {}", r.order()),
        (true, true) => format!("zero below x^{below}"),
        (true, false) => format!("nonzero: {}", first.clone().unwrap_or(Value::Null)),
    };
    Item {
        name,
        pass: known && zero,
        detail: json!({ "checked_below": below, "first_nonzero": first }),
        summary,
    }
}

type Job = Box<dyn Fn() -> Result<Vec<Item>, RunError> + Send + Sync>;

fn s_values(s: Option<u32>, allowed: &[u32], check: &str) -> Result<Vec<u32>, RunError> {
    match s {
        None => Ok(allowed.to_vec()),
        Some(s) if allowed.contains(&s) => Ok(vec![s]),
        Some(s) => Err(RunError::Usage(format!(
            "{check} is available for s in {allowed:?}, got {s}"
        ))),
    }
}

fn schwarzian_job(s: u32, order: usize) -> Job {
    Box::new(move || {
        let r = verify_schwarzian_equation(s, order).map_err(compute)?;
        Ok(vec![residual_item(format!("schwarzian.s{s}"), &r, order)])
    })
}

fn hodge_job(s: u32, order: usize) -> Job {
    Box::new(move || {
        let r = verify_hodge_identity(s, order + 4).map_err(compute)?;
        Ok(vec![residual_item(format!("hodge.s{s}"), &r, order)])
    })
}

fn z_equation_job(order: usize) -> Job {
    Box::new(move || {
        Ok(vec![residual_item(
            "z_equation".into(),
            &verify_z_equation(order).map_err(compute)?,
            order,
        )])
    })
}

fn q_tilde_job(order: usize) -> Job {
    Box::new(move || {
        Ok(vec![residual_item(
            "q_tilde_equation".into(),
            &verify_q_tilde_equation(order).map_err(compute)?,
            order,
        )])
    })
}

fn yukawa_job(order: usize) -> Job {
    Box::new(move || {
        let d = mirror_pipeline(5, order + 4).map_err(compute)?;
        let k = yukawa_from_mirror(&d).map_err(compute)?;
        Ok(vec![residual_item(
            "k_definition".into(),
            &yukawa_definition_residual(&d, &k).map_err(compute)?,
            order,
        )])
    })
}

fn pandharipande_job(order: usize) -> Job {
    Box::new(move || {
        let qd = QuinticData::new(order + 1).map_err(compute)?;
        let sets = [
            (
                "prepotential",
                t_functions(&qd.prepotential).map_err(compute)?,
            ),
            (
                "basis",
                t_functions_from_basis(&qd.mirror).map_err(compute)?,
            ),
        ];
        let mut items = Vec::new();
        for (label, ts) in sets {
            for (j, r) in pandharipande_residuals(&ts, &qd.k)
                .map_err(compute)?
                .iter()
                .enumerate()
            {
                let pass = r.order() >= order as i64 && r.truncate(order as i64).is_zero();
                items.push(Item {
                    name: format!("pandharipande.{label}.t{j}"),
                    pass,
                    detail: json!({ "checked_below": order, "known_below": r.order() }),
                    summary: if pass {
                        format!("zero below q^{order}")
                    } else {
                        "nonzero".into()
                    },
                });
            }
        }
        Ok(items)
    })
}

fn golden_job(order: usize) -> Job {
    Box::new(move || {
        let report = golden_suite(order, Exec::Parallel).map_err(compute)?;
        Ok(report
            .items
            .into_iter()
            .map(|i| {
                let pass = !matches!(i.status, ItemStatus::Fail { .. });
                let summary = match &i.status {
                    ItemStatus::Pass => "matches".to_string(),
                    ItemStatus::Partial { checked_through, table_order } => {
                        format!("partial: matches below {checked_through} of {table_order}")
                    }
                    ItemStatus::Fail { exponent, expected, computed } => {
                        format!("mismatch at exponent {exponent}: printed {expected}, computed {computed}")
                    }
                };
                Item {
                    name: format!("golden.{}", i.name),
                    pass,
                    detail: serde_json::to_value(&i.status).expect("status serializes"),
                    summary,
                }
            })
            .collect())
    })
}

fn integrality_job(s: u32, order: usize) -> Job {
    Box::new(move || {
        let d = mirror_pipeline(s, order + 2).map_err(compute)?;
        let mut series = vec![
            ("z_of_q", d.z_of_q.clone()),
            ("q_of_z_over_z", d.q_mantissa()),
            ("f0_tilde", d.f0_tilde.clone()),
        ];
        if s == 5 {
            series.push((
                "k_over_5",
                yukawa_from_mirror(&d).map_err(compute)?.scale(&rat(1, 5)),
            ));
        }
        series
            .into_iter()
            .map(|(label, f)| {
                let status = integrality_report(&f, order as i64 - 1).map_err(compute)?;
                Ok(Item {
                    name: format!("integrality.s{s}.{label}"),
                    pass: status == Integrality::Pass,
                    detail: serde_json::to_value(status).expect("status serializes"),
                    summary: match status {
                        Integrality::Pass => format!("integral below x^{order}"),
                        Integrality::FirstFailure { exponent } => {
                            format!("non-integral at exponent {exponent}")
                        }
                    },
                })
            })
            .collect()
    })
}

fn verify(check: Check, s: Option<u32>, order: usize) -> Result<Outcome, RunError> {
    check_order(order)?;
    let takes_s = matches!(check, Check::Schwarzian | Check::Hodge | Check::Integrality);
    if s.is_some() && !takes_s {
        return Err(RunError::Usage(
            "--s applies only to the Schwarzian, hodge and integrality checks".into(),
        ));
    }
    let jobs: Vec<Job> = match check {
        Check::Schwarzian => s_values(s, &[3, 4], "schwarzian")?
            .into_iter()
            .map(|s| schwarzian_job(s, order))
            .collect(),
        Check::Hodge => s_values(s, &[3, 4], "hodge")?
            .into_iter()
            .map(|s| hodge_job(s, order))
            .collect(),
        Check::Integrality => s_values(s, &[3, 4, 5], "integrality")?
            .into_iter()
            .map(|s| integrality_job(s, order))
            .collect(),
        Check::ZEquation => vec![z_equation_job(order)],
        Check::QTildeEquation => vec![q_tilde_job(order)],
        Check::Pandharipande => vec![pandharipande_job(order)],
        Check::Golden => vec![golden_job(order)],
        Check::All => {
            let mut v = vec![
                schwarzian_job(3, order),
                schwarzian_job(4, order),
                hodge_job(3, order),
                hodge_job(4, order),
            ];
            v.extend([
                yukawa_job(order),
                z_equation_job(order),
                q_tilde_job(order),
                pandharipande_job(order),
                golden_job(order),
            ]);
            v.extend([3, 4, 5].map(|s| integrality_job(s, order)));
            v
        }
    };
    let results = map_tasks(Exec::Parallel, jobs.len(), |i| jobs[i]());
    let mut items = Vec::new();
    for r in results {
        items.extend(r?);
    }
    let ok = items.iter().all(|i| i.pass);
    let mut text = String::new();
    for i in &items {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if i.pass { "PASS" } else { "FAIL" },
            i.name,
            i.summary
        );
    }
    let _ = writeln!(
        text,
        "{} of {} checks passed",
        items.iter().filter(|i| i.pass).count(),
        items.len()
    );
    let json = json!({
        "order": order,
        "passed": ok,
        "items": items.iter().map(|i| json!({ "name": i.name, "pass": i.pass, "detail": i.detail })).collect::<Vec<_>>(),
    });
    Ok(Outcome { json, text, ok })
}
