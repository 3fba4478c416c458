//! Quaternionic calculus on open subsets of H = R^4: quaternion algebra,
//! second-order jets, a small expression language, quaternion-valued
//! differential forms, and checks for algebraic regularity of functions of
//! the shape `f = f1 e1 + Σ x_k f0 e_k`.

pub mod check;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod forms;
pub mod identities;
pub mod jet;
pub mod quaternion;
pub mod regularity;
pub mod sample;

pub use check::{check_point, Mode, ResidualReport, Tolerances, Verdict};
pub use error::{DomainError, Error, Result};
pub use expr::{parse, Expr, ParseError};
pub use forms::{
    differential0, fueter, FormField, MultiIndex, PointForm, QFunction, Side, SpecialForm,
};
pub use jet::Jet2;
pub use quaternion::Quaternion;
pub use regularity::{
    dq_limit, form_residuals, helper_function, pde_residuals, quaternion_derivative, LimitConfig,
    LimitDiagnostics, PdeResiduals, SpecialFunction,
};
