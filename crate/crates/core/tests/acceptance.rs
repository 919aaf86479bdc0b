//! Acceptance run: one line per criterion, nonzero exit if any fails.

use hypermirror::golden::{embedded_tables, golden_suite_with, GoldenReport, ItemStatus};
use hypermirror::hypergeom::{frobenius_basis, symmetric_square_check, DeltaOperator};
use hypermirror::mirror::{
    integrality_report, mirror_pipeline, verify_hodge_identity, Integrality,
};
use hypermirror::ode::identities::{
    mobius, schwarzian, verify_q_tilde_equation, verify_z_equation,
};
use hypermirror::ode::linalg::nullspace;
use hypermirror::ode::wronskian::lemma3_residual;
use hypermirror::ode::{
    r_operator, relation_search, wronskian, OdeError, SearchConfig, SearchMode,
};
use hypermirror::series::rational::{binomial, int, rat};
use hypermirror::yukawa::{
    evaluate_f0_at, instanton_numbers, lambert_inverse, pandharipande_residuals, t_functions,
    t_functions_from_basis, yukawa_definition_residual, yukawa_from_definition, yukawa_from_mirror,
    QuinticData,
};
use hypermirror::{Exec, LogSeries, PowerSeries, Rational, Var};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn fail<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Zero through `through` inclusive.
fn vanishes(name: &str, r: &PowerSeries, through: i64) -> Result<(), String> {
    ensure(r.order() > through, || {
        format!("{name}: only known below {}", r.order())
    })?;
    ensure(r.truncate(through + 1).is_zero(), || {
        format!("{name}: nonzero at {:?}", r.leading())
    })
}

fn vanishes_log(name: &str, r: &LogSeries, through: i64) -> Result<(), String> {
    ensure(r.order() > through, || {
        format!("{name}: only known below {}", r.order())
    })?;
    ensure(r.truncate(through + 1).is_zero(), || {
        format!("{name}: nonzero")
    })
}

fn golden_subset(prefix: &str, order: usize) -> Result<GoldenReport, String> {
    let tables: Vec<_> = embedded_tables()
        .into_iter()
        .filter(|t| t.name.starts_with(prefix))
        .collect();
    golden_suite_with(&tables, order, Exec::Parallel).map_err(fail("golden"))
}

fn all_pass(r: &GoldenReport) -> Check {
    let bad: Vec<String> = r
        .items
        .iter()
        .filter(|i| i.status != ItemStatus::Pass)
        .map(|i| format!("{} {:?}", i.name, i.status))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(r.items
        .iter()
        .map(|i| i.name.as_str())
        .collect::<Vec<_>>()
        .join(", "))
}

fn c1() -> Check {
    all_pass(&golden_subset("s3.", 24)?)
}

fn c2() -> Check {
    all_pass(&golden_subset("s4.", 24)?)
}

fn c3() -> Check {
    all_pass(&golden_subset("s5.", 24)?)
}

fn c4() -> Check {
    let names = all_pass(&golden_subset("yukawa.", 24)?)?;
    let printed = embedded_tables()
        .into_iter()
        .find(|t| t.name == "yukawa.K")
        .ok_or("no K table")?;
    let printed = printed.series().map_err(fail("K table"))?;
    let from_print = lambert_inverse(&printed, &int(5), 4).map_err(fail("inverse"))?;
    let want = [2875i64, 609250, 317206375];
    for (l, w) in want.iter().enumerate() {
        ensure(from_print.n(l + 1) == &BigInt::from(*w), || {
            format!("n_{} = {}", l + 1, from_print.n(l + 1))
        })?;
    }
    let k = yukawa_from_definition(51).map_err(fail("K"))?;
    let table = instanton_numbers(&k, 50).map_err(fail("instantons"))?;
    ensure(table.lambert(&int(5), 51) == k, || {
        "Lambert round trip differs".into()
    })?;
    Ok(format!(
        "{names}; n = 2875, 609250, 317206375; round trip through q^50"
    ))
}

fn c5() -> Check {
    for s in [3, 4] {
        let r = verify_hodge_identity(s, 40).map_err(fail("hodge"))?;
        vanishes(&format!("f0^2 identity s={s}"), &r, 32)?;
    }
    let data = mirror_pipeline(5, 40).map_err(fail("pipeline"))?;
    let k = yukawa_from_mirror(&data).map_err(fail("K"))?;
    vanishes(
        "K definition",
        &yukawa_definition_residual(&data, &k).map_err(fail("eq"))?,
        32,
    )?;
    vanishes(
        "z(q) equation",
        &verify_z_equation(25).map_err(fail("z eq"))?,
        24,
    )?;
    vanishes(
        "Q~ equation",
        &verify_q_tilde_equation(25).map_err(fail("Q~ eq"))?,
        24,
    )?;
    let qd = QuinticData::new(24).map_err(fail("quintic"))?;
    let from_f = t_functions(&qd.prepotential).map_err(fail("t"))?;
    let from_basis = t_functions_from_basis(&qd.mirror).map_err(fail("t basis"))?;
    for ts in [&from_f, &from_basis] {
        for (j, r) in pandharipande_residuals(ts, &qd.k)
            .map_err(fail("pandharipande"))?
            .iter()
            .enumerate()
        {
            ensure(r.order() > 20, || format!("t_{j}: order {}", r.order()))?;
            ensure(r.truncate(21).is_zero(), || {
                format!("t_{j}: nonzero residual")
            })?;
        }
    }
    Ok("f0^2 identities (s=3,4) and K definition through 32; z(q) and Q~ equations through 24; t_0..t_3 through 20".into())
}

fn c6() -> Check {
    for s in [3, 4, 5] {
        let basis = frobenius_basis(s, 41).map_err(fail("basis"))?;
        let op = DeltaOperator::mirror(s).map_err(fail("operator"))?;
        for (j, f) in basis.solutions().iter().enumerate() {
            let r = op.apply(f).map_err(fail("apply"))?;
            vanishes_log(&format!("s={s} f_{j}"), &r, 40)?;
        }
    }
    vanishes(
        "symmetric square",
        &symmetric_square_check(21).map_err(fail("sym"))?,
        20,
    )?;
    let basis = frobenius_basis(3, 40).map_err(fail("basis"))?;
    let r = r_operator(&basis.solutions()).map_err(fail("R[t]"))?;
    let lead = r
        .poly
        .coefficient(&r.leading_monomial())
        .ok_or("no leading term")?;
    ensure(*lead == PowerSeries::one(Var::Z, lead.order()), || {
        "leading coefficient is not 1".into()
    })?;
    for j in 0..2 {
        let t = basis.f(j).div_series(&basis.g[0]).map_err(fail("t_j"))?;
        vanishes_log(
            &format!("R[t_{j}]"),
            &r.apply(&t).map_err(fail("apply R"))?,
            20,
        )?;
    }
    Ok(
        "operators through 40; symmetric square through 20; R[t] monic, kills t_0, t_1 through 20"
            .into(),
    )
}

fn integral(name: &str, f: &PowerSeries, through: i64) -> Result<(), String> {
    match integrality_report(f, through).map_err(fail(name))? {
        Integrality::Pass => Ok(()),
        Integrality::FirstFailure { exponent } => {
            Err(format!("{name}: non-integral at {exponent}"))
        }
    }
}

fn c7() -> Check {
    let built: Vec<_> = std::thread::scope(|sc| {
        let hs: Vec<_> = [3u32, 4, 5]
            .map(|s| sc.spawn(move || mirror_pipeline(s, 102)))
            .into_iter()
            .collect();
        hs.into_iter()
            .map(|h| h.join().expect("pipeline thread"))
            .collect()
    });
    for d in built {
        let d = d.map_err(fail("pipeline"))?;
        integral(&format!("s={} z(q)", d.s), &d.z_of_q, 100)?;
        integral(&format!("s={} q(z)/z", d.s), &d.q_mantissa(), 100)?;
        integral(&format!("s={} f0~", d.s), &d.f0_tilde, 100)?;
        if d.s == 5 {
            let k = yukawa_from_mirror(&d).map_err(fail("K"))?;
            integral("K/5", &k.scale(&rat(1, 5)), 100)?;
        }
    }
    Ok("z(q), q(z)/z, f0~ for s=3,4,5 and K/5 through 100".into())
}

fn zeta3() -> f64 {
    // ζ(3) = (5/2) Σ (-1)^(n+1) / (n³ C(2n,n))
    let s: f64 = (1..=40u64)
        .map(|n| {
            let c = binomial(2 * n, n).to_f64().expect("finite");
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sign / ((n * n * n) as f64 * c)
        })
        .sum();
    2.5 * s
}

fn c8() -> Check {
    let pi = std::f64::consts::PI;
    let target = 10.0 / 3.0 * pi.powi(3) - 120.0 * zeta3();
    let got = evaluate_f0_at(-2.0 * pi, 12).map_err(fail("eval"))?;
    let err = (got.value - target).abs();
    ensure(err < 1e-9, || {
        format!(
            "F0(-2π) = {:.17e}, target {:.17e}, error {err:e}",
            got.value, target
        )
    })?;
    Ok(format!(
        "F0(-2π) = {:.17e}, target {:.17e}, error {err:.1e}",
        got.value, target
    ))
}

fn random_series(rng: &mut ChaCha8Rng, var: Var, valuation: i64, order: i64) -> PowerSeries {
    let n = (order - valuation) as usize;
    let coeffs = (0..n)
        .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    PowerSeries::new(var, valuation, coeffs, order)
}

fn unit(rng: &mut ChaCha8Rng, var: Var, order: i64) -> PowerSeries {
    let mut s = random_series(rng, var, 0, order);
    while s.valuation() != Some(0) {
        s = random_series(rng, var, 0, order);
    }
    s
}

const CASES: usize = 100;

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..CASES {
        let order = rng.gen_range(4..14);
        let f = unit(&mut rng, Var::Z, order).shift(1);
        let g = f.revert().map_err(fail("revert"))?;
        let id = f.compose(&g).map_err(fail("compose"))?;
        ensure(id == PowerSeries::identity(Var::Z, id.order()), || {
            "reversion round trip".into()
        })?;
        let h = random_series(&mut rng, Var::Z, 1, order);
        let back = h.exp().and_then(|e| e.log()).map_err(fail("exp/log"))?;
        ensure(back == h.truncate(back.order()), || {
            "exp/log round trip".into()
        })?;
    }
    let z = PowerSeries::from_i64(Var::Q, 1, &[1, -15, 171, -1679, 15054, -126981], 12);
    let base = schwarzian(&z).map_err(fail("schwarzian"))?;
    for _ in 0..CASES {
        let (a, b, c) = (
            int(rng.gen_range(1..6)),
            int(rng.gen_range(-4..5)),
            int(rng.gen_range(-3..4)),
        );
        let d = (&b * &c + int(1)) / &a;
        let w = mobius(&z, [&a, &b, &c, &d]).map_err(fail("mobius"))?;
        let s = schwarzian(&w).map_err(fail("schwarzian"))?;
        let n = s.order().min(base.order());
        ensure(s.truncate(n) == base.truncate(n), || {
            format!("Möbius invariance fails for ({a},{b},{c},{d})")
        })?;
    }
    lemma1(&mut rng)?;
    lemma2(&mut rng)?;
    lemma3(&mut rng)?;
    Ok(format!(
        "{CASES} cases each: reversion, exp/log, Möbius, three Wronskian lemmas"
    ))
}

/// W vanishes to order exactly when an independent nullspace finds a
/// rational dependence among the coefficient vectors.
fn lemma1(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let order = 10i64;
    for case in 0..CASES {
        let m = rng.gen_range(2..=3);
        let mut fs: Vec<PowerSeries> = (0..m)
            .map(|_| random_series(rng, Var::Z, 0, order))
            .collect();
        if case % 2 == 0 {
            let mut comb = PowerSeries::zero(Var::Z, order);
            for f in &fs[1..] {
                comb = comb
                    .try_add(&f.scale(&rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))))
                    .map_err(fail("add"))?;
            }
            fs[0] = comb;
        }
        let rows: Vec<Vec<Rational>> = (0..order)
            .map(|n| fs.iter().map(|f| f.coeff(n)).collect())
            .collect();
        let dependent = !nullspace(&rows, m).is_empty();
        let logs: Vec<LogSeries> = fs.iter().cloned().map(LogSeries::from).collect();
        let vanishing = match wronskian(&logs) {
            Err(OdeError::Indeterminate { .. }) => true,
            Ok(_) => false,
            Err(e) => return Err(format!("wronskian: {e}")),
        };
        ensure(dependent == vanishing, || {
            format!("case {case}: dependent={dependent}, W vanishes={vanishing}")
        })?;
    }
    Ok(())
}

/// `D[y] W(f₀, f₁) = W(y, f₀, f₁)` for the `s = 3` operator made monic in `d/dz`.
fn lemma2(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let order = 14;
    let basis = frobenius_basis(3, order).map_err(fail("basis"))?;
    let d = DeltaOperator::mirror(3)
        .map_err(fail("op"))?
        .to_dz()
        .monic();
    let fs = basis.solutions();
    let w = wronskian(&fs).map_err(fail("W"))?;
    for _ in 0..CASES {
        let y = LogSeries::from(random_series(rng, Var::Z, 0, order as i64));
        let lhs = d
            .apply(&y)
            .and_then(|dy| dy.try_mul(&w))
            .map_err(fail("D[y]"))?;
        let rhs = wronskian(&[y, fs[0].clone(), fs[1].clone()]).map_err(fail("W3"))?;
        let n = lhs.order().min(rhs.order());
        ensure(n >= 6, || format!("lemma 2 only checked below {n}"))?;
        ensure(lhs.truncate(n) == rhs.truncate(n), || {
            "D[y] W != W(y, f0, f1)".into()
        })?;
    }
    Ok(())
}

fn lemma3(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let bases = [
        frobenius_basis(3, 12).map_err(fail("basis"))?,
        frobenius_basis(5, 10).map_err(fail("basis"))?,
    ];
    for i in 0..CASES {
        let b = &bases[i % 2];
        let g = unit(rng, Var::Z, b.order());
        let r = lemma3_residual(&g, &b.solutions()).map_err(fail("lemma 3"))?;
        ensure(r.is_zero() && r.order() > 0, || "W(g f) != g^m W(f)".into())?;
    }
    Ok(())
}

fn c10() -> Check {
    let cfg = SearchConfig::new(SearchMode::P2, 12);
    let r = relation_search(&cfg).map_err(fail("search"))?;
    ensure(r.weight == 12, || {
        format!("first relation at weight {}", r.weight)
    })?;
    ensure(r.verified_order >= 16, || {
        format!("verified only through {}", r.verified_order)
    })?;
    ensure(!r.polynomial.is_empty(), || "empty relation".into())?;
    Ok(format!(
        "weight {}, {} terms, degree {}, kernel dim {} of {} monomials, {} fresh samples, zero on quintic A2/A4 below q^{}, order {} in z",
        r.weight,
        r.polynomial.len(),
        r.degree,
        r.kernel_dimension,
        r.monomials,
        r.certified_samples,
        r.verified_order,
        r.differential_order
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("s=3 golden", Duration::from_secs(1), c1),
        ("s=4 golden", Duration::from_secs(1), c2),
        ("s=5 golden", Duration::from_secs(2), c3),
        ("Yukawa golden", Duration::from_secs(2), c4),
        ("identity suite", Duration::from_secs(30), c5),
        ("operator suite", Duration::from_secs(60), c6),
        ("integrality suite", Duration::from_secs(10), c7),
        ("numeric F0(-2π)", Duration::from_secs(1), c8),
        ("property suite", Duration::from_secs(60), c9),
        ("relation search P2", Duration::from_secs(600), c10),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (status, detail) = match out {
            Ok(d) if took <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget {budget:?}: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} [{:.2}s] {name}: {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
