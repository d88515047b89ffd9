//! Sequences over `F_{q^2}` built from the Hermitian curve, and tools to
//! measure their nonlinear complexity.
//!
//! The pipeline is: [`FieldCtx`] for arithmetic, [`curve`] for places and
//! the functions `f_i`, `h_ell`, [`build_sequence`] for the terms, and
//! [`nonlinear_complexity`] for the exact complexity of a prefix. The
//! [`bounds`] module evaluates the lower bounds in exact rational arithmetic.
//!
//! ```
//! use hermseq::{build_sequence, nonlinear_complexity, DegreeMode, FieldCtx};
//!
//! let f4 = FieldCtx::new(2, 1, None).unwrap();
//! let s = build_sequence(&f4, f4.epsilon(), 2).unwrap();
//! let n = nonlinear_complexity(&f4, s.terms(), DegreeMode::PerVariable(1), 1 << 20).unwrap();
//! assert!(n.exact().is_some());
//! ```

pub mod bounds;
pub mod complexity;
pub mod curve;
pub mod error;
pub mod field;
pub mod linalg;
pub mod report;
pub mod sequence;
pub mod verify;

pub use bounds::{all_bounds, BoundParams, BoundValue, Rational};
pub use complexity::{
    complexity_profile, linear_complexity, nonlinear_complexity, ComplexityResult, DegreeMode,
};
pub use curve::{CollinearFamily, CurveFunction, Place};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use sequence::{build_sequence, Sequence};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/curve.md")]
    mod curve {}
    #[doc = include_str!("../../../book/src/sequence.md")]
    mod sequence {}
    #[doc = include_str!("../../../book/src/complexity.md")]
    mod complexity {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
