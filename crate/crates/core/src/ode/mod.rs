//! Wronskians, the operator `R[t]`, Schwarzian identities, the `A`/`B`
//! quantities and the search for differential relations between them.

pub mod ab;
pub mod diffpoly;
pub mod identities;
pub mod linalg;
pub mod relation;
pub mod wronskian;

pub use ab::{a_quantities, ab_quantities, b_quantities, quintic_ab, ABQuantities, Derivation};
pub use diffpoly::{determinant, Coefficient, DiffPolynomial, Monomial, Symbol};
pub use identities::{
    log_derivatives, q_tilde_residual, quintic_q, quintic_q_tilde, schwarzian, schwarzian_residual,
    verify_q_tilde_equation, verify_schwarzian_equation, verify_z_equation, z_equation_residual,
};
pub use linalg::{nullspace, Echelon};
pub use relation::{relation_search, RelationReport, SearchConfig, SearchMode};
pub use wronskian::{r_operator, wronskian, wronskian_series, ROperator};

use crate::hypergeom::HypergeomError;
use crate::mirror::MirrorError;
use crate::series::SeriesError;
use crate::yukawa::YukawaError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Hypergeom(#[from] HypergeomError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Yukawa(#[from] YukawaError),
    #[error("no input functions")]
    EmptyInput,
    #[error("determinant vanishes to order {order}; raise the order to decide")]
    Indeterminate { order: i64 },
    #[error("the basis is degenerate: R[t] has no leading term")]
    DegenerateBasis,
    #[error("R[t] coefficient kept a log term")]
    LogCoefficient,
    #[error("the Schwarzian equation is available for s in {{3, 4}}, got {0}")]
    UnsupportedS(u32),
    #[error("needed order {needed}, the computation only reached {got}")]
    InsufficientOrder { needed: i64, got: i64 },
    #[error("no relation up to weight {weight_bound} ({trials} trials, seed {seed})")]
    NoRelation {
        weight_bound: i64,
        trials: usize,
        seed: u64,
    },
    #[error("relation of weight {weight} failed on fresh samples")]
    Uncertified { weight: i64 },
    #[error("relation fails on the quintic data at exponent {exponent}")]
    QuinticCheckFailed { exponent: i64 },
}
