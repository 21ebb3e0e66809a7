//! Bicomplex numbers `z1 + i2 z2` (`i1^2 = i2^2 = -1`, `j = i1 i2`) and
//! numerical convergence analysis of bicomplex series and infinite products.
//!
//! Most operations run on the idempotent decomposition
//! `w = w' e1 + w'' e2`, where `e1 = (1 + j)/2`, `e2 = (1 - j)/2` and
//! `w' = z1 - i1 z2`, `w'' = z1 + i1 z2` are ordinary complex numbers.
//! Products, inverses, `exp`, `Log` and convergence all split into two
//! independent complex problems there.

pub mod bicomplex;
pub mod error;
pub mod format;
pub mod products;
pub mod seqspec;
pub mod series;
pub mod transcendental;

pub use crate::bicomplex::{
    Bicomplex, Complex, ComplexI2, Conjugation, Duplex, IdempotentPair, Moduli, SingularityVerdict,
    DEFAULT_SINGULAR_TOL,
};
pub use crate::error::{Error, Result};
pub use crate::products::{
    absolute_convergence_check, componentwise_log_bound, evaluate_product, log_bound_check, log_sum_equivalence,
    partial_products, AbsoluteCheck, CriterionVerdict, Extrapolation, LogBound, LogSumEquivalence, ProductReport,
    ProductVerdict,
};
pub use crate::seqspec::{EvalError, Expr, ParseError, Terms};
pub use crate::series::{
    analyze_complex_series, analyze_nonnegative, analyze_series, eval_power_series, partial_sums, AnalysisConfig,
    SeriesReport, Verdict,
};
pub use crate::transcendental::{
    exp, log_branch, log_principal, log1p, sqrt, trig_form, BranchIndex, LatticeCoordinates, TrigForm,
};
