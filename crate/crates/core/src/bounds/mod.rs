//! Exact rational arithmetic and the explicit bound functions.
//!
//! With `c = ⌈2/ρ⌉`:
//!
//! * `f1(ρ) = min(ρ² / (12c), ρ³ / (4c))`
//! * `f2(ρ) = ρ / (c (c + 1))`
//! * `f(ρ)  = f1(ρ) · f2(ρ)`, the guaranteed solution proportion
//! * `commuting_bound(ρ) = f(ρ) / (2 − f(ρ))`
//!
//! Everything here is exact; floats never enter a comparison.

mod rational;

pub use rational::Rational;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

fn check_domain(rho: &Rational) -> Result<()> {
    if rho.is_positive() && *rho <= Rational::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("rho = {rho} is outside (0, 1]")))
    }
}

/// `⌈2/ρ⌉` by integer ceiling division of `2·den` by `num`.
pub fn ceil_two_over(rho: &Rational) -> Result<BigInt> {
    check_domain(rho)?;
    Ok((Rational::from_int(2) / rho.clone()).ceil())
}

/// Which of the two fractions in `f1` is the smaller one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F1Branch {
    /// `ρ² / (12c)`
    Square,
    /// `ρ³ / (4c)`
    Cube,
}

fn f1_branches(rho: &Rational) -> Result<(Rational, Rational)> {
    let c = Rational::from_int(ceil_two_over(rho)?);
    let square = rho.pow(2) / (Rational::from_int(12) * c.clone());
    let cube = rho.pow(3) / (Rational::from_int(4) * c);
    Ok((square, cube))
}

pub fn f1(rho: &Rational) -> Result<Rational> {
    let (square, cube) = f1_branches(rho)?;
    Ok(square.min(cube))
}

/// The branch attaining `f1(ρ)`; ties go to [`F1Branch::Square`].
pub fn f1_branch(rho: &Rational) -> Result<F1Branch> {
    let (square, cube) = f1_branches(rho)?;
    Ok(if cube < square { F1Branch::Cube } else { F1Branch::Square })
}

pub fn f2(rho: &Rational) -> Result<Rational> {
    let c = ceil_two_over(rho)?;
    let denom = Rational::from_int(c.clone() * (c + 1));
    Ok(rho / &denom)
}

/// `ρ` together with `f1(ρ)`, `f2(ρ)` and their product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTriple {
    pub rho: Rational,
    pub f1: Rational,
    pub f2: Rational,
    pub f: Rational,
}

impl BoundTriple {
    /// Checks `0 < f1, f2, f <= 1`, `f = f1·f2` and `f³ < 1/2`.
    pub fn check_invariants(&self) -> bool {
        let one = Rational::one();
        let in_unit = |r: &Rational| r.is_positive() && *r <= one;
        in_unit(&self.f1)
            && in_unit(&self.f2)
            && in_unit(&self.f)
            && self.f == &self.f1 * &self.f2
            && self.f.pow(3) < Rational::new(1, 2)
    }
}

pub fn f(rho: &Rational) -> Result<BoundTriple> {
    let f1 = f1(rho)?;
    let f2 = f2(rho)?;
    let f = &f1 * &f2;
    Ok(BoundTriple { rho: rho.clone(), f1, f2, f })
}

/// `ε / (2 − ε)` with `ε = f(ρ)`: the lower bound on the commuting probability.
pub fn commuting_bound(rho: &Rational) -> Result<Rational> {
    let eps = f(rho)?.f;
    let two = Rational::from_int(2);
    Ok(&eps / &(&two - &eps))
}
