//! Search for quasi-homogeneous differential relations between two
//! generators by exact linear algebra on random jets.
//!
//! A candidate relation of weight `W` is a combination of the monomials in
//! `G^(i)` (weight `w_G + i`) of total weight `W`. Every random sample gives
//! one linear condition per known Taylor coefficient; the kernel of the
//! stacked system holds every relation valid on all samples. A kernel vector
//! is then certified on fresh samples and checked on the quintic data.

use super::ab::{a_quantities, b_quantities, quintic_ab, quintic_q0_q2, Derivation};
use super::diffpoly::{DiffPolynomial, Monomial, Symbol};
use super::linalg::nullspace;
use super::OdeError;
use crate::hypergeom::RationalFunction;
use crate::par::{self, Exec};
use crate::series::rational::{big, int, rat, Rational};
use crate::series::{PowerSeries, SeriesError, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `P2`: relation identically true on `(B₂(u), B₄(u))`, then checked on the
/// mirror map's `(A₂, A₄)`. `P1`: identically true on `(A₂(z), A₄(z))` for
/// the quintic `Q₀, Q₂`, then checked on `B₂, B₄` of `log K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    P1,
    P2,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub weight_bound: i64,
    /// Order to which the found relation is checked on the quintic data.
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl SearchConfig {
    pub fn new(mode: SearchMode, weight_bound: i64) -> Self {
        SearchConfig {
            mode,
            weight_bound,
            order: 16,
            trials: 4,
            seed: 1,
            exec: Exec::default(),
        }
    }
}

/// A generator with its base weight; derivative `i` has weight `weight + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
}

/// Symbols `G^(i)` of weight at most `max_weight`, generator-major.
pub fn symbols_up_to(gens: &[Generator], max_weight: i64) -> Vec<(usize, usize, Symbol)> {
    let mut out = Vec::new();
    for (g, gen) in gens.iter().enumerate() {
        for i in 0..=(max_weight - gen.weight).max(-1) {
            let name = if i == 0 {
                gen.name.clone()
            } else {
                format!("{}^({i})", gen.name)
            };
            out.push((g, i as usize, Symbol::new(name, gen.weight + i)));
        }
    }
    out
}

/// All exponent vectors of total weight exactly `weight`.
pub fn monomials_of_weight(symbols: &[Symbol], weight: i64) -> Vec<Monomial> {
    fn go(symbols: &[Symbol], i: usize, left: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == symbols.len() {
            return;
        }
        let w = symbols[i].weight;
        let mut k = 0;
        while k as i64 * w <= left {
            cur[i] = k;
            go(symbols, i + 1, left - k as i64 * w, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(symbols, 0, weight, &mut vec![0; symbols.len()], &mut out);
    out
}

/// One sample: for each generator, its jet `[G, G', G'', …]`.
pub type Sample = Vec<Vec<PowerSeries>>;

fn symbol_values(sample: &Sample, syms: &[(usize, usize, Symbol)]) -> Vec<PowerSeries> {
    syms.iter()
        .map(|(g, i, _)| sample[*g][*i].clone())
        .collect()
}

fn evaluate_monomials(
    values: &[PowerSeries],
    monos: &[Monomial],
) -> Result<Vec<PowerSeries>, SeriesError> {
    let order = values.iter().map(PowerSeries::order).min().unwrap_or(0);
    let var = values.first().map_or(Var::T, PowerSeries::var);
    let one = PowerSeries::one(var, order);
    let mut cache: Vec<Vec<PowerSeries>> = values
        .iter()
        .map(|v| vec![one.clone(), v.truncate(order)])
        .collect();
    monos
        .iter()
        .map(|e| {
            let mut acc = one.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().expect("nonempty").try_mul(&values[i])?;
                    cache[i].push(next);
                }
                acc = acc.try_mul(&cache[i][k as usize])?;
            }
            Ok(acc)
        })
        .collect()
}

/// Kernel of the monomial-evaluation system at one weight, as polynomials.
pub fn relations_at_weight(
    gens: &[Generator],
    weight: i64,
    samples: &[Sample],
    exec: Exec,
) -> Result<Vec<DiffPolynomial<Rational>>, SeriesError> {
    let syms = symbols_up_to(gens, weight);
    let symbols: Vec<Symbol> = syms.iter().map(|(_, _, s)| s.clone()).collect();
    let monos = monomials_of_weight(&symbols, weight);
    if monos.is_empty() {
        return Ok(Vec::new());
    }
    let evaluated = par::map_items(exec, samples, |s| {
        evaluate_monomials(&symbol_values(s, &syms), &monos)
    });
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for ev in evaluated {
        let ev = ev?;
        let lo = ev.iter().map(PowerSeries::min_exponent).min().unwrap_or(0);
        let hi = ev.iter().map(PowerSeries::order).min().unwrap_or(0);
        for n in lo..hi {
            rows.push(ev.iter().map(|p| p.coeff(n)).collect());
        }
    }
    let kernel = nullspace(&rows, monos.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let terms = monos.iter().cloned().zip(v.into_iter().map(big));
            DiffPolynomial::from_terms(symbols.clone(), terms)
        })
        .collect())
}

/// Evaluates a relation on a sample; zero means the relation holds there.
pub fn evaluate_on(
    p: &DiffPolynomial<Rational>,
    gens: &[Generator],
    sample: &Sample,
) -> Result<PowerSeries, SeriesError> {
    let w = p.symbols().iter().map(|s| s.weight).max().unwrap_or(0);
    let syms = symbols_up_to(gens, w);
    debug_assert_eq!(syms.len(), p.symbols().len());
    let values = symbol_values(sample, &syms);
    let order = values.iter().map(PowerSeries::order).min().unwrap_or(0);
    let var = values.first().map_or(Var::T, PowerSeries::var);
    let one = PowerSeries::one(var, order);
    p.evaluate(&values, &one, |c| {
        Ok(PowerSeries::constant(var, c.clone(), order))
    })
}

/// The two generators `X₂` (weight 2) and `X₄` (weight 4).
pub fn ab_generators(prefix: &str) -> Vec<Generator> {
    vec![
        Generator {
            name: format!("{prefix}2"),
            weight: 2,
        },
        Generator {
            name: format!("{prefix}4"),
            weight: 4,
        },
    ]
}

/// Jets of `(B₂, B₄)` at a random polynomial `u(T)`.
pub fn random_b_sample(rng: &mut impl Rng, jet: usize, rows: usize) -> Result<Sample, SeriesError> {
    let n = (rows + jet + 4) as i64;
    let coeffs: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-6..=6))).collect();
    let u = PowerSeries::new(Var::T, 0, coeffs, n + 4 + jet as i64);
    let uj = Derivation::Plain.jet(&u, 4);
    let (b2, b4) = b_quantities(&uj[1..])?;
    Ok(vec![
        Derivation::Plain.jet(&b2, jet),
        Derivation::Plain.jet(&b4, jet),
    ])
}

/// Jets of `(A₂, A₄)` at a random `z(T) = z₀ + …` regular for `Q₀, Q₂`.
pub fn random_a_sample(
    rng: &mut impl Rng,
    q0: &RationalFunction,
    q2: &RationalFunction,
    jet: usize,
    rows: usize,
) -> Result<Sample, SeriesError> {
    let n = (rows + jet + 6) as i64;
    let z0 = loop {
        let c = rat(rng.gen_range(1..=9), rng.gen_range(2..=9) * 1000);
        if q0.eval(&c).is_some() && q2.eval(&c).is_some() {
            break c;
        }
    };
    let mut coeffs = vec![z0];
    coeffs.push(int(rng.gen_range(1..=4)));
    coeffs.extend((2..n).map(|_| int(rng.gen_range(-3..=3))));
    let z = PowerSeries::new(Var::T, 0, coeffs, n + jet as i64);
    let (a2, a4) = a_quantities(&z, q0, q2, Derivation::Plain)?;
    Ok(vec![
        Derivation::Plain.jet(&a2, jet),
        Derivation::Plain.jet(&a4, jet),
    ])
}

/// Outcome of a successful search.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub mode: SearchMode,
    pub weight: i64,
    pub degree: u32,
    /// Dimension of the relation space at this weight.
    pub kernel_dimension: usize,
    pub monomials: usize,
    pub polynomial: DiffPolynomial<Rational>,
    /// Fresh samples on which the relation was re-checked.
    pub certified_samples: usize,
    /// Order through which it vanishes on the quintic data.
    pub verified_order: i64,
    /// Order of the resulting equation for `z` (P2) or `u` (P1).
    pub differential_order: usize,
}

fn sample(
    mode: SearchMode,
    rng: &mut ChaCha8Rng,
    jet: usize,
    rows: usize,
    q: &(RationalFunction, RationalFunction),
) -> Result<Sample, SeriesError> {
    match mode {
        SearchMode::P2 => random_b_sample(rng, jet, rows),
        SearchMode::P1 => random_a_sample(rng, &q.0, &q.1, jet, rows),
    }
}

#[allow(clippy::too_many_arguments)]
fn samples(
    mode: SearchMode,
    seed: u64,
    stream: u64,
    count: usize,
    jet: usize,
    rows: usize,
    q: &(RationalFunction, RationalFunction),
    exec: Exec,
) -> Result<Vec<Sample>, SeriesError> {
    par::map_tasks(exec, count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream * 1_000_003 + i as u64);
        sample(mode, &mut rng, jet, rows, q)
    })
    .into_iter()
    .collect()
}

/// Walks the weights `2..=weight_bound` and returns the first stratum with
/// a relation, certified and checked on the quintic data.
pub fn relation_search(cfg: &SearchConfig) -> Result<RelationReport, OdeError> {
    let gens = ab_generators(match cfg.mode {
        SearchMode::P2 => "B",
        SearchMode::P1 => "A",
    });
    let q = quintic_q0_q2()?;
    for weight in 2..=cfg.weight_bound {
        let syms = symbols_up_to(&gens, weight);
        let symbols: Vec<Symbol> = syms.iter().map(|(_, _, s)| s.clone()).collect();
        let nmono = monomials_of_weight(&symbols, weight).len();
        if nmono == 0 {
            continue;
        }
        let jet = (weight - 2).max(0) as usize;
        let trials = cfg.trials.max(1);
        let rows = (2 * nmono + 8).div_ceil(trials).max(8);
        let found = samples(
            cfg.mode,
            cfg.seed,
            weight as u64,
            trials,
            jet,
            rows,
            &q,
            cfg.exec,
        )?;
        let kernel = relations_at_weight(&gens, weight, &found, cfg.exec)?;
        let Some(p) = kernel.first().cloned() else {
            continue;
        };

        let fresh = samples(
            cfg.mode,
            cfg.seed ^ 0x5eed,
            weight as u64,
            2,
            jet,
            rows,
            &q,
            cfg.exec,
        )?;
        for s in &fresh {
            let r = evaluate_on(&p, &gens, s)?;
            if !r.is_zero() {
                return Err(OdeError::Uncertified { weight });
            }
        }
        let verified_order = verify_on_quintic(&p, cfg.mode, jet, cfg.order)?;
        let differential_order = differential_order(&p, &gens, cfg.mode);
        return Ok(RelationReport {
            mode: cfg.mode,
            weight,
            degree: p.degree(),
            kernel_dimension: kernel.len(),
            monomials: nmono,
            polynomial: p.primitive(),
            certified_samples: fresh.len(),
            verified_order,
            differential_order,
        });
    }
    Err(OdeError::NoRelation {
        weight_bound: cfg.weight_bound,
        trials: cfg.trials,
        seed: cfg.seed,
    })
}

/// Order of the equation the relation gives on the checked side: in `z`
/// for `P2` (`A₂^(i)` involves `z^(i+3)`, `A₄^(i)` involves `z^(i+5)`), in
/// `u` for `P1` (`B₂^(i)` involves `u^(i+2)`, `B₄^(i)` involves `u^(i+4)`).
fn differential_order(p: &DiffPolynomial<Rational>, gens: &[Generator], mode: SearchMode) -> usize {
    let w = p.symbols().iter().map(|s| s.weight).max().unwrap_or(0);
    let syms = symbols_up_to(gens, w);
    let offset = |g: usize| -> usize {
        match (mode, g) {
            (SearchMode::P2, 0) => 3,
            (SearchMode::P2, _) => 5,
            (SearchMode::P1, 0) => 2,
            (SearchMode::P1, _) => 4,
        }
    };
    p.terms()
        .flat_map(|(e, _)| {
            e.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, _)| syms[i].1 + offset(syms[i].0))
        })
        .max()
        .unwrap_or(0)
}

/// `P(A₂, A₄)` (for `P2`) or `P(B₂(log K), B₄(log K))` (for `P1`) on the
/// quintic, with primes `δ_q`. Returns the order through which it vanishes.
fn verify_on_quintic(
    p: &DiffPolynomial<Rational>,
    mode: SearchMode,
    jet: usize,
    order: usize,
) -> Result<i64, OdeError> {
    let ab = quintic_ab(order)?;
    let (x2, x4) = match mode {
        SearchMode::P2 => (ab.a2, ab.a4),
        SearchMode::P1 => (ab.b2, ab.b4),
    };
    let sample = vec![
        Derivation::Euler.jet(&x2, jet),
        Derivation::Euler.jet(&x4, jet),
    ];
    let gens = ab_generators("X");
    let r = evaluate_on(p, &gens, &sample)?;
    if !r.is_zero() {
        return Err(OdeError::QuinticCheckFailed {
            exponent: r.min_exponent(),
        });
    }
    if r.order() < order as i64 {
        return Err(OdeError::InsufficientOrder {
            needed: order as i64,
            got: r.order(),
        });
    }
    Ok(r.order())
}

/// Checks a found relation against `evaluate_on` for arbitrary samples.
pub fn residual_on(
    p: &DiffPolynomial<Rational>,
    sample: &Sample,
) -> Result<PowerSeries, SeriesError> {
    evaluate_on(p, &ab_generators("X"), sample)
}
