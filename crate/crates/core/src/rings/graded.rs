//! Polynomials in the two graded symbols `delta` (weight 2) and `eps`
//! (weight 4), over the rationals and over `Z/p`.
//!
//! Text form: terms joined by `" + "`, each written as `c`, `c*delta^a`,
//! `c*eps^b` or `c*delta^a*eps^b`, where `c` is `n` or `n/d` and an exponent
//! of 1 is omitted. Terms appear by descending weighted degree, then by
//! descending `delta` exponent. The zero polynomial prints as `0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::modp::{ModP, OddPrime};
use super::rational::Rational;
use crate::error::{Error, Result};

/// The monomial `delta^delta * eps^eps`.
///
/// Ordered so that a `BTreeMap` iterates in canonical output order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub delta: u32,
    pub eps: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { delta: 0, eps: 0 };

    pub fn new(delta: u32, eps: u32) -> Self {
        Monomial { delta, eps }
    }

    pub fn weighted_degree(self) -> u32 {
        2 * self.delta + 4 * self.eps
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.delta + other.delta, self.eps + other.eps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weighted_degree()
            .cmp(&self.weighted_degree())
            .then(other.delta.cmp(&self.delta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`GradedPoly::weighted_degree`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeightedDegree {
    Homogeneous(u32),
    Inhomogeneous,
}

fn write_terms<'a, C: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Monomial, C)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write!(f, "{c}")?;
        match m.delta {
            0 => {}
            1 => f.write_str("*delta")?,
            a => write!(f, "*delta^{a}")?,
        }
        match m.eps {
            0 => {}
            1 => f.write_str("*eps")?,
            b => write!(f, "*eps^{b}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn parse_terms(s: &str) -> Result<Vec<(Monomial, &str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    for term in s.split(" + ") {
        let mut factors = term.trim().split('*');
        let coeff = factors.next().unwrap_or_default();
        let mut m = Monomial::ONE;
        for factor in factors {
            let (sym, exp) = match factor.split_once('^') {
                Some((sym, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                    (sym, e)
                }
                None => (factor, 1),
            };
            match sym {
                "delta" => m.delta += exp,
                "eps" => m.eps += exp,
                _ => return Err(Error::Parse(format!("unknown symbol {sym:?}"))),
            }
        }
        out.push((m, coeff));
    }
    Ok(out)
}

/// Polynomial in `delta`, `eps` with rational coefficients; zero terms are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        GradedPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, delta: u32, eps: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(delta, eps), c);
        }
        GradedPoly { terms }
    }

    pub fn delta() -> Self {
        GradedPoly::monomial(Rational::one(), 1, 0)
    }

    pub fn eps() -> Self {
        GradedPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = GradedPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `delta^a eps^b`.
    pub fn coeff(&self, delta: u32, eps: u32) -> Rational {
        self.terms
            .get(&Monomial::new(delta, eps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, when the polynomial has no `delta`/`eps` terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree());
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::Inhomogeneous)
        }
    }

    /// True for zero and for weighted-homogeneous polynomials of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree() == d)
    }

    /// Evaluates at rational values of `delta` and `eps`.
    pub fn evaluate(&self, delta: &Rational, eps: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let dp = delta.pow(m.delta as i32).expect("nonnegative power");
                let ep = eps.pow(m.eps as i32).expect("nonnegative power");
                c * &dp * ep
            })
            .sum()
    }

    /// Substitutes a rational value for `eps`, leaving a polynomial in `delta`.
    pub fn specialize_eps(&self, eps: &Rational) -> Self {
        GradedPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::new(m.delta, 0),
                c * eps.pow(m.eps as i32).expect("nonnegative power"),
            )
        }))
    }

    /// Coefficient-wise reduction into `Z/p[delta, eps]`.
    pub fn reduce_mod_p(&self, p: OddPrime) -> Result<GradedPolyModP> {
        let mut out = GradedPolyModP::zero(p);
        for (m, c) in &self.terms {
            out.add_term(*m, c.reduce_mod_p(p)?);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GradedPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = GradedPoly::zero();
        for (m, c) in parse_terms(s)? {
            p.add_term(m, &c.parse::<Rational>()?);
        }
        Ok(p)
    }
}

impl Add<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_binops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

owned_binops!(GradedPoly);
owned_binops!(GradedPolyModP);

/// Polynomial in `delta`, `eps` over `Z/p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPolyModP {
    p: OddPrime,
    terms: BTreeMap<Monomial, ModP>,
}

impl GradedPolyModP {
    pub fn zero(p: OddPrime) -> Self {
        GradedPolyModP {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: ModP) -> Self {
        let mut out = GradedPolyModP::zero(c.prime());
        out.add_term(Monomial::ONE, c);
        out
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    fn add_term(&mut self, m: Monomial, c: ModP) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert(ModP::zero(self.p));
        *entry = *entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, delta: u32, eps: u32) -> ModP {
        self.terms
            .get(&Monomial::new(delta, eps))
            .copied()
            .unwrap_or(ModP::zero(self.p))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ModP)> {
        self.terms.iter()
    }

    /// Substitutes `eps = 1`.
    pub fn specialize_eps_one(&self) -> Self {
        let mut out = GradedPolyModP::zero(self.p);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.delta, 0), *c);
        }
        out
    }

    /// Parses the canonical text form; coefficients are read as rationals and
    /// reduced mod `p`.
    pub fn parse(s: &str, p: OddPrime) -> Result<Self> {
        let mut out = GradedPolyModP::zero(p);
        for (m, c) in parse_terms(s)? {
            out.add_term(m, c.parse::<Rational>()?.reduce_mod_p(p)?);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedPolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for GradedPolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl Add<&GradedPolyModP> for &GradedPolyModP {
    type Output = GradedPolyModP;
    fn add(self, rhs: &GradedPolyModP) -> GradedPolyModP {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

impl Sub<&GradedPolyModP> for &GradedPolyModP {
    type Output = GradedPolyModP;
    fn sub(self, rhs: &GradedPolyModP) -> GradedPolyModP {
        self + &-rhs
    }
}

impl Mul<&GradedPolyModP> for &GradedPolyModP {
    type Output = GradedPolyModP;
    fn mul(self, rhs: &GradedPolyModP) -> GradedPolyModP {
        assert_eq!(self.p, rhs.p, "mismatched moduli");
        let mut out = GradedPolyModP::zero(self.p);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), *ca * *cb);
            }
        }
        out
    }
}

impl Neg for &GradedPolyModP {
    type Output = GradedPolyModP;
    fn neg(self) -> GradedPolyModP {
        GradedPolyModP {
            p: self.p,
            terms: self.terms.iter().map(|(m, c)| (*m, -*c)).collect(),
        }
    }
}
