//! Exact arithmetic in `Q(zeta_p)` and the field trace, used as an
//! independent oracle for the fixed-point functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::genus::GenusKind;
use crate::rings::{OddPrime, Rational};

/// Element of `Q(zeta_p)` in the basis `1, zeta, ..., zeta^{p-2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: OddPrime,
    coords: Vec<Rational>,
}

impl CycloElem {
    pub fn zero(p: OddPrime) -> Self {
        CycloElem {
            p,
            coords: vec![Rational::zero(); p.as_usize() - 1],
        }
    }

    pub fn from_rational(p: OddPrime, r: Rational) -> Self {
        let mut e = CycloElem::zero(p);
        e.coords[0] = r;
        e
    }

    pub fn one(p: OddPrime) -> Self {
        CycloElem::from_rational(p, Rational::one())
    }

    /// `zeta^j` for any integer `j`.
    pub fn zeta_pow(p: OddPrime, j: i64) -> Self {
        let mut full = vec![Rational::zero(); p.as_usize()];
        full[p.residue(j) as usize] = Rational::one();
        CycloElem::from_exponents(p, full)
    }

    /// `sum_j c_j zeta^j` from coefficients of `zeta^0 .. zeta^{len-1}`;
    /// exponents are taken mod `p`.
    pub fn from_exponents(p: OddPrime, coeffs: Vec<Rational>) -> Self {
        let n = p.as_usize();
        let mut full = vec![Rational::zero(); n];
        for (j, c) in coeffs.into_iter().enumerate() {
            full[j % n] += &c;
        }
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        let top = full.pop().expect("p >= 3");
        let coords = full.into_iter().map(|c| &c - &top).collect();
        CycloElem { p, coords }
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(CycloElem {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let n = self.p.as_usize();
        let mut full = vec![Rational::zero(); n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % n] += &(a * b);
                }
            }
        }
        Ok(CycloElem::from_exponents(self.p, full))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElem {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_p`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let phi = vec![Rational::one(); self.p.as_usize()];
        let mut r0 = phi;
        let mut r1 = upoly::trim(self.coords.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1 = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = upoly::divmod(&r0, &r1);
            let s2 = upoly::sub(&s0, &upoly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_p is irreducible
        let c = r0[0].recip().ok_or(Error::ZeroDivision)?;
        let s: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Ok(CycloElem::from_exponents(self.p, s))
    }

    /// `self^k`, with negative `k` through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloElem::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The field trace to `Q`: `Tr(1) = p - 1`, `Tr(zeta^j) = -1`.
    pub fn trace(&self) -> Rational {
        let p1 = Rational::from_integer(self.p.get() as i64 - 1);
        let rest: Rational = self.coords[1..].iter().cloned().sum();
        &(&self.coords[0] * &p1) - &rest
    }

    /// The Galois conjugate `zeta -> zeta^m`.
    pub fn galois(&self, m: u64) -> Self {
        let n = self.p.as_usize();
        let m = (m % self.p.get()) as usize;
        let mut full = vec![Rational::zero(); n];
        for (j, c) in self.coords.iter().enumerate() {
            full[(j * m) % n] += c;
        }
        CycloElem::from_exponents(self.p, full)
    }

    /// Evaluates a polynomial with rational coefficients (constant first).
    pub fn eval_poly(coeffs: &[Rational], x: &CycloElem) -> CycloElem {
        let mut acc = CycloElem::zero(x.p);
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + &CycloElem::from_rational(x.p, c.clone());
        }
        acc
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.checked_add(rhs).expect("same prime")
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self.checked_add(&-rhs).expect("same prime")
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.checked_mul(rhs).expect("same prime")
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        self.scale(&Rational::from_integer(-1))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*zeta")?,
                _ => write!(f, "{c}*zeta^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(zeta_{})", self.p)
    }
}

/// Dense univariate polynomials over `Q`, constant term first, no trailing
/// zeros.
mod upoly {
    use crate::rings::Rational;

    pub fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
        while a.last().is_some_and(Rational::is_zero) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = trim(a.to_vec());
        let lead_inv = b.last().and_then(Rational::recip).expect("nonzero divisor");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().expect("nonempty") * &lead_inv;
            for (i, y) in b.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(&c * y);
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }
}

/// Checks that `chi_y` with this `y` admits the trace and B-series routes at
/// `p`: `y` must be `p`-integral and `1 + y` a unit mod `p`.
pub fn check_chi_y(y: &Rational, p: OddPrime) -> Result<()> {
    let r = y.reduce_mod_p(p)?;
    if (r + crate::rings::ModP::one(p)).is_zero() {
        return Err(Error::DegenerateChiY {
            p: p.get(),
            y: y.to_string(),
        });
    }
    Ok(())
}

/// `theta = f(-2 pi i / p)` as an element of `Q(zeta_p)`.
///
/// For the Euler characteristic this is the formal value `1`.
pub fn theta_of(kind: &GenusKind, p: OddPrime) -> Result<CycloElem> {
    let one = CycloElem::one(p);
    let zeta = CycloElem::zeta_pow(p, 1);
    let one_minus_zeta = &one - &zeta;
    match kind {
        GenusKind::Todd => Ok(one_minus_zeta),
        GenusKind::Euler => Ok(one),
        GenusKind::LGenus => Ok(&one_minus_zeta * &(&one + &zeta).invert()?),
        GenusKind::ChiY { y } => {
            check_chi_y(y, p)?;
            Ok(&one_minus_zeta * &(&one + &zeta.scale(y)).invert()?)
        }
        GenusKind::AHat => {
            let h = (p.get() as i64 - 1) / 2;
            Ok(&CycloElem::zeta_pow(p, h + 1) - &CycloElem::zeta_pow(p, h))
        }
        GenusKind::Elliptic | GenusKind::Custom => Err(Error::UnsupportedKind(kind.to_string())),
    }
}

/// `Tr(theta^k)`; for negative `k` this is the coefficient `B_{-k}`.
pub fn trace_theta_power(kind: &GenusKind, p: OddPrime, k: i64) -> Result<Rational> {
    Ok(theta_of(kind, p)?.pow(k)?.trace())
}

/// Reduces weights into `[1, p - 1]`, rejecting multiples of `p`.
pub fn canonical_weights(p: OddPrime, weights: &[i64]) -> Result<Vec<u64>> {
    weights
        .iter()
        .map(|&x| match p.residue(x) {
            0 => Err(Error::ZeroWeight(x)),
            r => Ok(r),
        })
        .collect()
}

/// The fixed-point function `-Tr prod_k 1/[theta]_{x_k}` computed directly in
/// `Q(zeta_p)`.
pub fn ab_trace(kind: &GenusKind, p: OddPrime, weights: &[i64]) -> Result<Rational> {
    let xs = canonical_weights(p, weights)?;
    let one = CycloElem::one(p);
    let (mut num, mut den) = (one.clone(), one.clone());
    match kind {
        GenusKind::Euler => {}
        GenusKind::Todd | GenusKind::LGenus | GenusKind::ChiY { .. } | GenusKind::AHat => {
            if let GenusKind::ChiY { y } = kind {
                check_chi_y(y, p)?;
            }
            for &x in &xs {
                let zx = CycloElem::zeta_pow(p, x as i64);
                den = &den * &(&one - &zx);
                num = match kind {
                    GenusKind::Todd => num,
                    GenusKind::LGenus => &num * &(&one + &zx),
                    GenusKind::ChiY { y } => &num * &(&one + &zx.scale(y)),
                    _ => {
                        let half = (x * (p.get() + 1) / 2) as i64;
                        &num * &CycloElem::zeta_pow(p, half)
                    }
                };
            }
        }
        GenusKind::Elliptic | GenusKind::Custom => {
            return Err(Error::UnsupportedKind(kind.to_string()))
        }
    }
    Ok(-(&num * &den.invert()?).trace())
}

/// A polynomial over `Q` (constant term first) that vanishes at `theta`.
///
/// For the `chi_y` family (Todd at `y = 0`, L at `y = 1`) it is
/// `((1 + y u)^p - (1 - u)^p) / ((1 + y) u)`; for A-hat it is
/// `2 sinh(p arcsinh(u/2)) / u`, of degree `p - 1`.
pub fn minimal_polynomial(kind: &GenusKind, p: OddPrime) -> Result<Vec<Rational>> {
    let y = match kind {
        GenusKind::Todd => Rational::zero(),
        GenusKind::LGenus => Rational::one(),
        GenusKind::ChiY { y } => {
            check_chi_y(y, p)?;
            y.clone()
        }
        GenusKind::Euler => return Ok(vec![Rational::from_integer(-1), Rational::one()]),
        GenusKind::AHat => return Ok(ahat_minimal_polynomial(p)),
        GenusKind::Elliptic | GenusKind::Custom => {
            return Err(Error::UnsupportedKind(kind.to_string()))
        }
    };
    let n = p.as_usize();
    let scale = (&y + &Rational::one()).recip().ok_or(Error::ZeroDivision)?;
    let mut binom = Rational::one();
    let mut y_pow = Rational::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..=n {
        let neg = if k % 2 == 0 { Rational::one() } else { Rational::from_integer(-1) };
        if k > 0 {
            // coefficient of u^k over (1+y) u, shifted to u^{k-1}
            out.push(&(&binom * &(&y_pow - &neg)) * &scale);
        }
        binom = &binom * &Rational::new((n - k) as i64, k as i64 + 1);
        y_pow = &y_pow * &y;
    }
    Ok(out)
}

/// `s_p(u)/u` where `s_1 = u`, `s_{-1} = -u` and
/// `s_{n+2} = (u^2 + 2) s_n - s_{n-2}`.
fn ahat_minimal_polynomial(p: OddPrime) -> Vec<Rational> {
    let x = [Rational::zero(), Rational::one()];
    let mut prev: Vec<Rational> = x.iter().map(|c| -c).collect();
    let mut cur = x.to_vec();
    let factor = [Rational::from_integer(2), Rational::zero(), Rational::one()];
    for _ in 0..(p.get() - 1) / 2 {
        let next = upoly::sub(&upoly::mul(&factor, &cur), &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur[1..].to_vec()
}
