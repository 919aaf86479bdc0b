//! Exact text records for series, operators and differential polynomials.
//!
//! Every coefficient is written as `"n"` or `"p/q"`; nothing goes through a
//! float. Records round-trip through JSON.

use crate::hypergeom::{DeltaOperator, Poly};
use crate::ode::{DiffPolynomial, Symbol};
use crate::series::rational::{format_rational, parse_rational, ParseRationalError};
use crate::series::{LogSeries, PowerSeries, Rational, Var};
use crate::yukawa::TPolyQSeries;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("series coefficients run past the order ({valuation} + {len} > {order})")]
    PastOrder {
        valuation: i64,
        len: usize,
        order: i64,
    },
    #[error("empty input")]
    Empty,
    #[error("log parts use different variables")]
    MixedVariables,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub variable: Var,
    pub valuation: i64,
    pub order: i64,
    pub coeffs: Vec<String>,
}

impl From<&PowerSeries> for SeriesRecord {
    fn from(s: &PowerSeries) -> Self {
        SeriesRecord {
            variable: s.var(),
            valuation: s.min_exponent(),
            order: s.order(),
            coeffs: s.raw_coeffs().iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<&SeriesRecord> for PowerSeries {
    type Error = FormatError;

    fn try_from(r: &SeriesRecord) -> Result<Self, FormatError> {
        if r.valuation.saturating_add(r.coeffs.len() as i64) > r.order {
            return Err(FormatError::PastOrder {
                valuation: r.valuation,
                len: r.coeffs.len(),
                order: r.order,
            });
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::new(r.variable, r.valuation, coeffs, r.order))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub coeffs: Vec<String>,
}

impl From<&Poly> for PolyRecord {
    fn from(p: &Poly) -> Self {
        PolyRecord {
            coeffs: p.coeffs().iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<&PolyRecord> for Poly {
    type Error = FormatError;

    fn try_from(r: &PolyRecord) -> Result<Self, FormatError> {
        Ok(Poly::new(
            r.coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<_, _>>()?,
        ))
    }
}

/// `Σ c_k(z) δ^k`, with `coeffs[k]` the polynomial `c_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub order: usize,
    pub coeffs: Vec<PolyRecord>,
}

impl From<&DeltaOperator> for OperatorRecord {
    fn from(op: &DeltaOperator) -> Self {
        OperatorRecord {
            order: op.order(),
            coeffs: op.coeffs().iter().map(PolyRecord::from).collect(),
        }
    }
}

impl TryFrom<&OperatorRecord> for DeltaOperator {
    type Error = FormatError;

    fn try_from(r: &OperatorRecord) -> Result<Self, FormatError> {
        Ok(DeltaOperator::new(
            r.coeffs
                .iter()
                .map(Poly::try_from)
                .collect::<Result<_, _>>()?,
        ))
    }
}

/// One monomial of a differential polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: String,
    pub weight: i64,
}

pub fn diffpoly_terms(p: &DiffPolynomial<Rational>) -> Vec<TermRecord> {
    p.terms()
        .map(|(e, c)| TermRecord {
            exponents: e.clone(),
            coefficient: format_rational(c),
            weight: p.weight_of(e),
        })
        .collect()
}

pub fn diffpoly_from_terms(
    symbols: Vec<Symbol>,
    terms: &[TermRecord],
) -> Result<DiffPolynomial<Rational>, FormatError> {
    let parsed = terms
        .iter()
        .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coefficient)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(DiffPolynomial::from_terms(symbols, parsed))
}

/// `Σ t^k a_k(q)`, listed by power of `t`.
pub fn tpoly_record(p: &TPolyQSeries) -> Vec<SeriesRecord> {
    p.terms().iter().map(SeriesRecord::from).collect()
}

/// A function in a Wronskian input file: either a plain series or the parts
/// `p_j` of `Σ p_j log^j / j!`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionRecord {
    Log { log_parts: Vec<SeriesRecord> },
    Plain(SeriesRecord),
}

impl TryFrom<&FunctionRecord> for LogSeries {
    type Error = FormatError;

    fn try_from(r: &FunctionRecord) -> Result<Self, FormatError> {
        match r {
            FunctionRecord::Plain(s) => Ok(LogSeries::new(vec![PowerSeries::try_from(s)?])),
            FunctionRecord::Log { log_parts } if log_parts.is_empty() => Err(FormatError::Empty),
            FunctionRecord::Log { log_parts }
                if log_parts
                    .iter()
                    .any(|p| p.variable != log_parts[0].variable) =>
            {
                Err(FormatError::MixedVariables)
            }
            FunctionRecord::Log { log_parts } => Ok(LogSeries::new(
                log_parts
                    .iter()
                    .map(PowerSeries::try_from)
                    .collect::<Result<_, _>>()?,
            )),
        }
    }
}

/// Accepts either `[f, …]` or `{"functions": [f, …]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FunctionList {
    Bare(Vec<FunctionRecord>),
    Wrapped { functions: Vec<FunctionRecord> },
}

pub fn parse_functions(text: &str) -> Result<Vec<LogSeries>, FormatError> {
    let list = match serde_json::from_str(text)? {
        FunctionList::Bare(v) | FunctionList::Wrapped { functions: v } => v,
    };
    if list.is_empty() {
        return Err(FormatError::Empty);
    }
    list.iter().map(LogSeries::try_from).collect()
}

/// Compact single-line listing `c₀, c₁, …` from the valuation up.
pub fn coefficient_line(s: &PowerSeries) -> String {
    s.raw_coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::OperatorKind;
    use crate::series::rational::{int, rat};

    #[test]
    fn series_round_trip() {
        let s = PowerSeries::new(Var::Z, -2, vec![rat(1, 3), int(0), int(-7)], 4);
        let rec = SeriesRecord::from(&s);
        assert_eq!(rec.coeffs, vec!["1/3", "0", "-7", "0", "0", "0"]);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"variable\":\"z\""));
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(PowerSeries::try_from(&back).unwrap(), s);
    }

    #[test]
    fn zero_series_keeps_order() {
        let s = PowerSeries::zero(Var::Q, 9);
        let back = PowerSeries::try_from(&SeriesRecord::from(&s)).unwrap();
        assert!(back.is_zero());
        assert_eq!(back.order(), 9);
    }

    #[test]
    fn bad_records_are_rejected() {
        let r = SeriesRecord {
            variable: Var::Q,
            valuation: 0,
            order: 1,
            coeffs: vec!["1".into(), "2".into()],
        };
        assert!(matches!(
            PowerSeries::try_from(&r),
            Err(FormatError::PastOrder { .. })
        ));
        let r = SeriesRecord {
            variable: Var::Q,
            valuation: 0,
            order: 2,
            coeffs: vec!["1/0".into()],
        };
        assert!(PowerSeries::try_from(&r).is_err());
    }

    #[test]
    fn operator_round_trip() {
        let op = DeltaOperator::build(OperatorKind::Quintic).unwrap();
        let rec = OperatorRecord::from(&op);
        assert_eq!(rec.order, 4);
        assert_eq!(DeltaOperator::try_from(&rec).unwrap(), op);
    }

    #[test]
    fn function_files() {
        let text = r#"{"functions": [
            {"variable": "z", "valuation": 0, "order": 6, "coeffs": ["1"]},
            {"log_parts": [{"variable": "z", "valuation": 0, "order": 6, "coeffs": []},
                           {"variable": "z", "valuation": 0, "order": 6, "coeffs": ["1"]}]}
        ]}"#;
        let fs = parse_functions(text).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1].log_degree(), 1);
        assert!(parse_functions("[]").is_err());
    }
}
