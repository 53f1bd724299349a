//! Exact verification of inequalities for the Boros-Moll coefficients
//! `d_i(m)`: 2-log-concavity, ratio bounds, the printed polynomial identities
//! and sign claims, and real-rootedness by Sturm sequences.
//!
//! Everything is exact: rationals are [`Rational`], square roots are
//! [`SurdExpr`], and no floating point is used anywhere.

pub mod bounds;
pub mod coefficients;
pub mod exactnum;
pub mod identities;
pub mod logconcavity;
pub mod realroots;
pub mod report;

pub use coefficients::{BorosMollRow, RowTable};
pub use exactnum::{Rational, SurdExpr};
pub use identities::{Forms, PolyTable};
pub use report::{VerificationReport, Violation};
