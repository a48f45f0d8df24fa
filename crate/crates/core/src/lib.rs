//! Hamiltonian dynamics on coadjoint orbits of finite-dimensional Lie groups.
//!
//! A Lie algebra is given by real structure constants ([`algebra`]); its dual
//! carries the Lie-Poisson bracket, and any Hamiltonian linear in the algebra
//! generates a flow solvable by a matrix exponential ([`lie_poisson`]). The
//! [`orbit`] module exposes the pointwise geometry of the orbits, and
//! [`conformal`] and [`galilei`] work through two concrete orbits of
//! SL(2,R) and of the N = 2 conformal Galilei group.

pub mod algebra;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod expm;
pub mod galilei;
pub mod integrate;
pub mod lie_poisson;
pub mod orbit;
pub mod trajectory;

pub use algebra::{AdjointMatrix, AlgebraVector, Builtin, DualVector, LieAlgebra};
pub use error::{Error, Result};
pub use lie_poisson::{HamiltonianSpec, Observable};
pub use trajectory::Trajectory;
