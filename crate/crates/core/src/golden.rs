//! Comparison of computed series against the printed coefficient tables in
//! `golden/tables.toml`.

use crate::format::{FormatError, SeriesRecord};
use crate::mirror::{mirror_pipeline, MirrorData, MirrorError};
use crate::par::{map_tasks, Exec};
use crate::series::rational::format_rational;
use crate::series::{PowerSeries, Var};
use crate::yukawa::{yukawa_from_mirror, YukawaError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub const EMBEDDED_TABLES: &str = include_str!("../golden/tables.toml");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("golden tables: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Yukawa(#[from] YukawaError),
    #[error("duplicate golden item {0}")]
    Duplicate(String),
    #[error("{name}: the Yukawa coupling is only defined for s = 5")]
    YukawaNeedsQuintic { name: String },
}

/// Which computed series a table is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    QOfZ,
    ZOfQ,
    F0Tilde,
    G0,
    G1,
    G2,
    G3,
    Yukawa,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub name: String,
    pub source: Source,
    pub s: u32,
    pub variable: Var,
    pub valuation: i64,
    pub order: i64,
    pub coeffs: Vec<String>,
}

impl GoldenTable {
    pub fn series(&self) -> Result<PowerSeries, FormatError> {
        let rec = SeriesRecord {
            variable: self.variable,
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.clone(),
        };
        PowerSeries::try_from(&rec)
    }
}

#[derive(Deserialize)]
struct TableFile {
    item: Vec<GoldenTable>,
}

pub fn parse_tables(text: &str) -> Result<Vec<GoldenTable>, GoldenError> {
    let file: TableFile = toml::from_str(text)?;
    let mut seen = BTreeSet::new();
    for t in &file.item {
        if !seen.insert(t.name.clone()) {
            return Err(GoldenError::Duplicate(t.name.clone()));
        }
        if t.source == Source::Yukawa && t.s != 5 {
            return Err(GoldenError::YukawaNeedsQuintic {
                name: t.name.clone(),
            });
        }
        t.series()?;
    }
    Ok(file.item)
}

pub fn embedded_tables() -> Vec<GoldenTable> {
    parse_tables(EMBEDDED_TABLES).expect("embedded golden tables are well formed")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    Fail {
        exponent: i64,
        expected: String,
        computed: String,
    },
    /// Agreement on every exponent below `checked_through`, which is short
    /// of the printed table.
    Partial {
        checked_through: i64,
        table_order: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemReport {
    pub name: String,
    #[serde(flatten)]
    pub status: ItemStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub order: usize,
    pub items: Vec<ItemReport>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status == ItemStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ItemReport> {
        self.items
            .iter()
            .filter(|i| matches!(i.status, ItemStatus::Fail { .. }))
    }

    pub fn item(&self, name: &str) -> Option<&ItemReport> {
        self.items.iter().find(|i| i.name == name)
    }
}

/// Compares `computed` with `expected` on the exponents both know.
pub fn compare(expected: &PowerSeries, computed: &PowerSeries) -> ItemStatus {
    let lo = expected.min_exponent().min(computed.min_exponent());
    let through = expected.order().min(computed.order());
    for n in lo..through {
        let (e, c) = (expected.coeff(n), computed.coeff(n));
        if e != c {
            return ItemStatus::Fail {
                exponent: n,
                expected: format_rational(&e),
                computed: format_rational(&c),
            };
        }
    }
    if through < expected.order() {
        ItemStatus::Partial {
            checked_through: through,
            table_order: expected.order(),
        }
    } else {
        ItemStatus::Pass
    }
}

fn pick(data: &MirrorData, source: Source) -> Result<PowerSeries, GoldenError> {
    let g = |j: usize| {
        data.basis
            .g
            .get(j)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(Var::Z, data.order))
    };
    Ok(match source {
        Source::QOfZ => data.q_of_z.clone(),
        Source::ZOfQ => data.z_of_q.clone(),
        Source::F0Tilde => data.f0_tilde.clone(),
        Source::G0 => g(0),
        Source::G1 => g(1),
        Source::G2 => g(2),
        Source::G3 => g(3),
        Source::Yukawa => yukawa_from_mirror(data)?,
    })
}

/// Runs every table against pipelines built to `order`. Each distinct `s`
/// is computed once; the report keeps the table order.
pub fn golden_suite_with(
    tables: &[GoldenTable],
    order: usize,
    exec: Exec,
) -> Result<GoldenReport, GoldenError> {
    let ss: Vec<u32> = tables
        .iter()
        .map(|t| t.s)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let built = map_tasks(exec, ss.len(), |i| mirror_pipeline(ss[i], order));
    let mut data = Vec::with_capacity(ss.len());
    for d in built {
        data.push(d?);
    }
    let items = tables
        .iter()
        .map(|t| {
            let d = &data[ss
                .iter()
                .position(|&s| s == t.s)
                .expect("s collected above")];
            let status = compare(&t.series()?, &pick(d, t.source)?);
            Ok(ItemReport {
                name: t.name.clone(),
                status,
            })
        })
        .collect::<Result<_, GoldenError>>()?;
    Ok(GoldenReport { order, items })
}

pub fn golden_suite(order: usize, exec: Exec) -> Result<GoldenReport, GoldenError> {
    golden_suite_with(&embedded_tables(), order, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        let t = embedded_tables();
        assert_eq!(t.len(), 13);
        let g3 = t
            .iter()
            .find(|x| x.name == "s5.g3")
            .unwrap()
            .series()
            .unwrap();
        assert_eq!(format_rational(&g3.coeff(4)), "-325329574909375/288");
    }

    #[test]
    fn duplicates_rejected() {
        let one = "[[item]]\nname = \"a\"\nsource = \"z_of_q\"\ns = 3\nvariable = \"q\"\nvaluation = 1\norder = 2\ncoeffs = [\"1\"]\n";
        assert!(parse_tables(one).is_ok());
        assert!(matches!(
            parse_tables(&format!("{one}{one}")),
            Err(GoldenError::Duplicate(_))
        ));
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = PowerSeries::from_i64(Var::Q, 0, &[1, 2, 3, 4], 4);
        let b = PowerSeries::from_i64(Var::Q, 0, &[1, 2, 5, 7], 6);
        assert_eq!(
            compare(&a, &b),
            ItemStatus::Fail {
                exponent: 2,
                expected: "3".into(),
                computed: "5".into()
            }
        );
        assert_eq!(
            compare(&a, &a.truncate(2)),
            ItemStatus::Partial {
                checked_through: 2,
                table_order: 4
            }
        );
        assert_eq!(compare(&a, &a.extend_order(9)), ItemStatus::Pass);
    }
}
