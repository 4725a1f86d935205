//! Left-invariant Riemannian geometry on the nine five-dimensional nilpotent
//! Lie algebras: derivations, reduction of inner products to representative
//! form, Milnor frames, Ricci curvature and the prescribed Ricci problem.

pub mod algebra;
pub mod cli;
pub mod derivations;
pub mod errata;
pub mod frames;
pub mod linalg;
pub mod moduli;
pub mod ricci;
pub mod solver;

pub use algebra::{AlgebraId, Mat5, StructureConstants, Vec5};
