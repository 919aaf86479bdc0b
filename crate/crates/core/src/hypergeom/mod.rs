//! Hypergeometric operators, their Frobenius bases, and normal forms.

pub mod frobenius;
pub mod normal_form;
pub mod operator;
pub mod poly;

pub use frobenius::{
    frobenius_basis, pfq_series, symmetric_square_check, symmetric_square_residual, FrobeniusBasis,
};
pub use normal_form::{fourth_order_normal_form, second_order_normal_form, FourthOrderNormalForm};
pub use operator::{DeltaOperator, DzOperator, MonicOperator, OperatorKind};
pub use poly::{Poly, RationalFunction};

use crate::series::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergeomError {
    #[error("s must be at least 3, got {0}")]
    SmallS(u32),
    #[error("operator has order {got}, expected {expected}")]
    WrongOrder { expected: usize, got: usize },
    #[error("lower parameter {0} is a nonpositive integer")]
    InvalidLowerParameter(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
