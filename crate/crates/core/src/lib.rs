//! Finite non-degenerate set-theoretic solutions of the Yang–Baxter equation and finite
//! skew left braces, stored as explicit tables.
//!
//! The crate is layered bottom-up:
//!
//! * [`perm`] and [`group`]: permutations, generated permutation groups, orbits, block
//!   systems and groups given by multiplication tables.
//! * [`solution`]: validated solutions `r(x,y) = (λ_x(y), ρ_y(x))`, derived solutions,
//!   retraction, congruences and a brute-force simplicity decider.
//! * [`brace`]: skew left braces, ideals, socle, the permutation brace of a solution and
//!   the two structural simplicity criteria.
//! * [`constructions`]: builders for the abelian-`V` and non-abelian-`V` families,
//!   Byott's simple braces, Lyubashenko solutions and a registry of named examples.
//! * [`corpus`]: a fixed collection of small named solutions used for cross-checks.

pub mod brace;
pub mod config;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod group;
pub mod perm;
pub mod solution;

pub use brace::{BraceLike, Ideal, SkewBrace};
pub use error::{Error, Result};
pub use group::{FiniteGroup, TableGroup};
pub use perm::{GenGroup, Partition, Perm};
pub use solution::FinSolution;
