//! Word maps over small finite groups.
//!
//! The crate measures how well a word map `w_G : G^d → G` agrees with a
//! homomorphism `G^d → G`, builds the derived word equation
//! `w(x⁻¹yz) = w(x)⁻¹ w(y) w(z)` in `3d` variables, counts its solutions
//! exactly or by seeded sampling, and checks the explicit lower bounds
//! `f(ρ)·|G|^{3d}` (solutions), `f1(ρ)|X|²` (set-family pairs) and
//! `f(ρ)/(2 − f(ρ))` (commuting probability) in exact arithmetic.
//!
//! Modules, bottom up: [`bounds`] (rationals and bound functions),
//! [`freeword`] (reduced words), [`group`] (Cayley tables),
//! [`homset`] (endomorphisms and homomorphisms from direct powers),
//! [`census`] (tables, counts and verifiers), [`familycheck`] (set
//! families) and [`cli`].

pub mod bounds;
pub mod budget;
pub mod census;
pub mod cli;
pub mod error;
pub mod familycheck;
pub mod freeword;
pub mod group;
pub mod homset;
pub mod report;
pub mod rng;
pub mod tuples;

pub use bounds::{BoundTriple, Rational};
pub use budget::Budgets;
pub use error::{Error, Result};
pub use freeword::Word;
pub use group::{Elem, GroupTable};
