//! Exact equivariant K-theory Schubert structure constants of Grassmannians.
//!
//! The coefficients `K_{λ,μ}^ν` are Laurent polynomials in `t_1..t_n`. They
//! are computed by summing weights of genomic tableaux ([`rule`]), and
//! independently by the key recurrence seeded with set-valued tableaux
//! ([`oracles`]) and by rectification of equivariant increasing tableaux
//! ([`eqinc`]). The genomic jeu de taquin that proves the recurrence is
//! implemented in [`jdt`].

pub mod cli;
pub mod eqinc;
pub mod error;
pub mod genomic;
pub mod jdt;
pub mod laurent;
pub mod oracles;
pub mod rule;
pub mod shapes;
pub mod weights;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, ZPoly};
pub use shapes::{BoxPos, EdgePos, GrassCtx, Partition, SkewShape};
