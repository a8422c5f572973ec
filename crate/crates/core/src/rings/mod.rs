//! Exact coefficient rings.

mod graded;
mod modp;
mod rational;

use std::fmt;

pub use graded::{GradedPoly, GradedPolyModP, Monomial, WeightedDegree};
pub use modp::{ModP, OddPrime};
pub use rational::Rational;

use crate::error::{Error, Result};

/// Commutative ring usable as a series coefficient.
///
/// Rings such as `Z/p` need their modulus to build constants, so constants
/// are produced from an existing element (`zero_like`, `one_like`).
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse of a unit.
    fn inverse(&self) -> Option<Self>;
    /// Image of a rational scalar, if it exists in this ring.
    fn scalar_like(&self, r: &Rational) -> Option<Self>;
    /// Failure to represent `1/k`, as an error of this ring.
    fn division_error(&self, k: u64) -> Error {
        Error::ScalarNotRepresentable(format!("1/{k}"))
    }
}

/// Coefficient rings with context-free constants.
pub trait ConstRing: Coefficient {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn scalar_like(&self, r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
}

impl ConstRing for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Coefficient for GradedPoly {
    fn zero_like(&self) -> Self {
        GradedPoly::zero()
    }
    fn one_like(&self) -> Self {
        GradedPoly::one()
    }
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.as_constant()?.recip().map(GradedPoly::constant)
    }
    fn scalar_like(&self, r: &Rational) -> Option<Self> {
        Some(GradedPoly::constant(r.clone()))
    }
}

impl ConstRing for GradedPoly {
    fn zero() -> Self {
        GradedPoly::zero()
    }
    fn one() -> Self {
        GradedPoly::one()
    }
    fn from_rational(r: &Rational) -> Self {
        GradedPoly::constant(r.clone())
    }
}

impl Coefficient for ModP {
    fn zero_like(&self) -> Self {
        ModP::zero(self.prime())
    }
    fn one_like(&self) -> Self {
        ModP::one(self.prime())
    }
    fn is_zero(&self) -> bool {
        ModP::is_zero(*self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
    fn inverse(&self) -> Option<Self> {
        ModP::inverse(*self)
    }
    fn scalar_like(&self, r: &Rational) -> Option<Self> {
        r.reduce_mod_p(self.prime()).ok()
    }
    fn division_error(&self, k: u64) -> Error {
        Error::IntegrateInResidueRing {
            p: self.prime().get(),
            k,
        }
    }
}

/// A value of a genus reduced mod p: a residue for the numeric genera, a
/// polynomial over `Z/p` for the elliptic genus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Residue {
    Scalar(ModP),
    Poly(GradedPolyModP),
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        match self {
            Residue::Scalar(v) => v.is_zero(),
            Residue::Poly(q) => q.is_zero(),
        }
    }

    pub fn prime(&self) -> OddPrime {
        match self {
            Residue::Scalar(v) => v.prime(),
            Residue::Poly(q) => q.prime(),
        }
    }

    pub fn as_scalar(&self) -> Option<ModP> {
        match self {
            Residue::Scalar(v) => Some(*v),
            Residue::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&GradedPolyModP> {
        match self {
            Residue::Poly(q) => Some(q),
            Residue::Scalar(_) => None,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residue::Scalar(v) => write!(f, "{v}"),
            Residue::Poly(q) => write!(f, "{q}"),
        }
    }
}

/// Rings whose p-integral elements reduce into a [`Residue`].
pub trait Reduce: Coefficient {
    fn to_residue(&self, p: OddPrime) -> Result<Residue>;
    /// Exact membership of `self - other` in `p Z_(p)` (coefficient-wise).
    fn congruent_mod_p(&self, other: &Self, p: OddPrime) -> bool;
}

impl Reduce for Rational {
    fn to_residue(&self, p: OddPrime) -> Result<Residue> {
        self.reduce_mod_p(p).map(Residue::Scalar)
    }
    fn congruent_mod_p(&self, other: &Self, p: OddPrime) -> bool {
        Rational::congruent_mod_p(self, other, p.get())
    }
}

impl Reduce for GradedPoly {
    fn to_residue(&self, p: OddPrime) -> Result<Residue> {
        self.reduce_mod_p(p).map(Residue::Poly)
    }
    fn congruent_mod_p(&self, other: &Self, p: OddPrime) -> bool {
        (self - other)
            .terms()
            .all(|(_, c)| c.valuation(p.get()).is_none_or(|v| v >= 1))
    }
}
