//! Symmetric SL-invariant polynomials for four qubits.
//!
//! The crate works on the four-dimensional critical subspace `A` of the
//! four-qubit Hilbert space, spanned by `u0..u3`. On `A` every SL-invariant
//! polynomial is a polynomial in the coordinates `z0..z3`, and the
//! permutation-symmetric ones are exactly the invariants of a finite
//! reflection group of order 1152 (the Weyl group of type F4).
//!
//! * [`poly`]: exact sparse polynomials over the rationals.
//! * [`invariants`]: the generators `E_j`, `F_k`, the discriminant `Δ` and the
//!   hyperdeterminant `γ = Δ²`, including a power-sum route to `γ`.
//! * [`group`]: reflections, the qubit-swap matrices and closure enumeration.
//! * [`qstate`]: numeric n-qubit states, local SL(2,C) actions, the two- and
//!   three-qubit invariants and the orbit-dimension genericity test.
//! * [`optimizer`]: maximization of `|γ|` on the unit sphere of `A`.

mod dd;
mod error;
pub mod group;
pub mod invariants;
pub mod matrix;
pub mod optimizer;
pub mod poly;
pub mod qstate;
pub mod serde_complex;

pub use error::Error;
pub use group::{GroupElement, GroupSet};
pub use invariants::{ACoords, InvariantReport};
pub use matrix::{rat, RatMatrix};
pub use optimizer::{OptConfig, OptResult};
pub use poly::{Monomial, MultiPoly, Rational};
pub use qstate::{LocalOp, StateVec};

pub type Result<T, E = Error> = std::result::Result<T, E>;
