//! Exact and numerical toolkit for the magnitude of finite metric spaces.
//!
//! The magnitude of a finite metric space `X` at scale `t` is the sum of the
//! entries of the inverse of the similarity matrix `(e^{-t d(x,y)})`. This
//! crate computes the magnitude function numerically, computes the *formal
//! magnitude* exactly as a generalized rational function in `q` (where
//! `|tX| = Mag(X)(e^{-t})`), decides whether the small-scale limit
//! `lim_{t -> 0} |tX|` equals 1 (the one-point property), and constructs
//! spaces whose small-scale limit equals any prescribed rational `R >= 1`.
//!
//! Highlights:
//! - [`genpoly::GenPoly`] / [`genrat::GenRat`]: exact arithmetic with
//!   rational exponents, plus the exact `q -> 1` limit engine.
//! - [`space::FiniteMetricSpace`]: validation, scaling, joins, l1-products,
//!   graph metrics, homogeneity and positivity checks.
//! - [`engine`]: numeric and exact formal magnitude, the small-scale limit,
//!   and the `F_n`, `C_n`, `C_n'` diagnostics.
//! - [`closed`]: Speyer, forest, complete-bipartite and join formulas, with
//!   the explicit limit formula for joins of homogeneous spaces.
//! - [`construct`]: bisection synthesis of a space with a prescribed
//!   small-scale limit.

pub mod closed;
pub mod construct;
pub mod engine;
pub mod error;
pub mod genpoly;
pub mod genrat;
pub mod io;
pub mod rational;
pub mod series;
pub mod space;
pub mod upoly;

pub use error::{Error, Result};
pub use genpoly::GenPoly;
pub use genrat::{GenRat, LimitResult};
pub use rational::{ExtRational, Rational};
pub use space::{FiniteMetricSpace, Graph};
