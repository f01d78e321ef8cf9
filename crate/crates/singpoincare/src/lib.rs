//! Exact computation of Poincaré series and Alexander polynomials of
//! multi-index filtrations on plane curve and normal surface singularities.
//!
//! The library works from resolution data. A resolution can be entered
//! directly as a dual graph ([`graph::ResolutionGraph`]) or computed from
//! exact Puiseux parametrizations of plane branches by simulating the
//! iterated blowup process ([`resolve::resolve`]). On top of that sit the
//! A'Campo-type product formulas ([`poincare`]), their equivariant
//! refinement over the divisor class group ([`equivariant`]), the calculus
//! of ideals presented as products of divisorial and curve ideals
//! ([`ideal`]), and an independent brute-force oracle that recomputes
//! Poincaré series from jet-space dimensions by exact linear algebra
//! ([`oracle`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.
//!
//! The `singpoincare` binary wraps the pipeline behind a small job-file
//! interface; see the `examples/` directory for direct library usage, one
//! runnable example per capability.

pub mod error;
pub mod rational;

pub mod matrix;
pub mod snf;

pub mod series;
pub mod factor;

pub mod graph;
pub mod puiseux;
pub mod resolve;

pub mod poincare;
pub mod equivariant;
pub mod ideal;

pub mod oracle;

pub mod job;
pub mod render;

pub use error::{Error, Result};
pub use factor::{FactorForm, FactorKey};
pub use graph::{CheckedGraph, EulerData, GraphMode, LinkingData, ResolutionGraph};
pub use matrix::{IntMatrix, RatMatrix};
pub use puiseux::{Germ, PuiseuxBranch, QPoly};
pub use rational::Rat;
pub use resolve::{intersection_number, resolve, resolve_germs, ResolvedCurve};
pub use series::{CharTag, CoeffRing, IntSeries, Monomial, Series, Truncation};
pub use snf::{smith_normal_form, FiniteAbelianGroup, SmithForm};
