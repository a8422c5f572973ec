//! Truncated formal power series in one variable `u`.
//!
//! A series of order `N` stores the `N + 1` coefficients of `u^0 .. u^N`
//! densely; every operation is exact through degree `N`. Binary operations
//! on series of different orders truncate to the smaller one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rings::{Coefficient, ConstRing, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> Series<R> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// The bracket `<a>_m`: the coefficient of `u^m`.
    pub fn coeff(&self, m: usize) -> Result<&R> {
        self.coeffs.get(m).ok_or(Error::IndexBeyondTruncation {
            index: m,
            order: self.order(),
        })
    }

    fn zero_elem(&self) -> R {
        self.coeffs[0].zero_like()
    }

    fn zeros(&self, order: usize) -> Vec<R> {
        vec![self.zero_elem(); order + 1]
    }

    /// Same ring, all coefficients zero, given order.
    pub fn zero_like(&self, order: usize) -> Self {
        Series::new(self.zeros(order))
    }

    /// Constant series `c` of the given order.
    pub fn constant_like(&self, c: R, order: usize) -> Self {
        let mut v = self.zeros(order);
        v[0] = c;
        Series::new(v)
    }

    /// Keeps degrees `0..=order` (no-op if the series is shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series::new(self.coeffs[..=n].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<S: Coefficient>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Series<S>> {
        Ok(Series::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.order().min(other.order());
        Series::new((0..=n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = self.zeros(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Series::new(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.constant_like(self.coeffs[0].one_like(), self.order());
        for _ in 0..exp {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NonUnitConstantTerm(self.coeffs[0].to_string()))?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(a0_inv.clone());
        for k in 1..=n {
            let mut s = self.zero_elem();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s = s.add_ref(&self.coeffs[i].mul_ref(&out[k - i]));
                }
            }
            out.push(s.mul_ref(&a0_inv).neg_ref());
        }
        Ok(Series::new(out))
    }

    /// `outer(inner(u))`, by Horner evaluation in the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = inner.constant_like(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse `b` with `a(b(u)) = b(a(u)) = u`, solved degree by
    /// degree from the table of coefficients of the powers of `b`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotReversible("nonzero constant term".into()));
        }
        let n = self.order();
        if n == 0 {
            return Err(Error::NotReversible("order 0 carries no linear term".into()));
        }
        let a1_inv = self.coeffs[1]
            .inverse()
            .ok_or_else(|| Error::NotReversible("linear coefficient is not a unit".into()))?;
        let zero = self.zero_elem();
        let mut b = vec![zero.clone(); n + 1];
        b[1] = a1_inv.clone();
        // powers[j][k] = coefficient of u^k in b^j
        let mut powers = vec![vec![zero.clone(); n + 1]; n + 1];
        powers[1][1] = b[1].clone();
        for k in 2..=n {
            let mut s = zero.clone();
            for j in 2..=k {
                let mut c = zero.clone();
                for i in 1..=(k - j + 1) {
                    if !b[i].is_zero() && !powers[j - 1][k - i].is_zero() {
                        c = c.add_ref(&b[i].mul_ref(&powers[j - 1][k - i]));
                    }
                }
                if !self.coeffs[j].is_zero() && !c.is_zero() {
                    s = s.add_ref(&self.coeffs[j].mul_ref(&c));
                }
                powers[j][k] = c;
            }
            b[k] = s.mul_ref(&a1_inv).neg_ref();
            powers[1][k] = b[k].clone();
        }
        Ok(Series::new(b))
    }

    /// Termwise derivative; the result has order `N - 1`.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return self.zero_like(0);
        }
        let one = self.coeffs[0].one_like();
        Series::new(
            (1..=self.order())
                .map(|k| {
                    let kk = one.scalar_like(&Rational::from_integer(k as i64)).expect("integers embed");
                    self.coeffs[k].mul_ref(&kk)
                })
                .collect(),
        )
    }

    /// Termwise antiderivative with zero constant term; the result has order
    /// `N + 1`. Fails when some `1/(k+1)` does not exist in the ring.
    pub fn integrate(&self) -> Result<Self> {
        let zero = self.zero_elem();
        let mut out = Vec::with_capacity(self.order() + 2);
        out.push(zero.clone());
        for (k, c) in self.coeffs.iter().enumerate() {
            let d = (k + 1) as u64;
            let inv = zero
                .scalar_like(&Rational::new(1, d as i64))
                .ok_or_else(|| zero.division_error(d))?;
            out.push(c.mul_ref(&inv));
        }
        Ok(Series::new(out))
    }

    /// `(1 + w)^alpha = sum_k binom(alpha, k) w^k` for `w(0) = 0`.
    pub fn binomial_power(w: &Self, alpha: &Rational) -> Result<Self> {
        if !w.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = w.order();
        let mut binoms = Vec::with_capacity(n + 1);
        let mut c = Rational::one();
        for k in 0..=n {
            binoms.push(c.clone());
            c = &c * &(alpha - &Rational::from_integer(k as i64)) / Rational::from_integer(k as i64 + 1);
        }
        let zero = w.zero_elem();
        let coeffs = binoms
            .iter()
            .map(|b| {
                zero.scalar_like(b)
                    .ok_or_else(|| Error::ScalarNotRepresentable(b.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Series::new(coeffs).compose(w)
    }

    /// Divides by `u^k`; the `k` lowest coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::IndexBeyondTruncation {
                index: k,
                order: self.order(),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition(format!("series is not divisible by u^{k}")));
        }
        Ok(Series::new(self.coeffs[k..].to_vec()))
    }

    /// Multiplies by `u^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = self.zeros(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        Series::new(out)
    }

    /// `num / den` for two series that are both divisible by `u`: both are
    /// divided by `u` first. The result has order `min(N) - 1`.
    pub fn ratio_of_u_multiples(num: &Self, den: &Self) -> Result<Self> {
        let num = num.shift_down(1)?;
        let den = den.shift_down(1)?;
        Ok(num.mul_series(&den.invert()?))
    }
}

impl<R: ConstRing> Series<R> {
    pub fn zero(order: usize) -> Self {
        Series::new(vec![R::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Series::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut v = vec![R::zero(); order + 1];
        v[0] = c;
        Series::new(v)
    }

    /// The variable `u` (order must be at least 1 to be nonzero).
    pub fn variable(order: usize) -> Self {
        let mut v = vec![R::zero(); order + 1];
        if order >= 1 {
            v[1] = R::one();
        }
        Series::new(v)
    }

    /// Series from leading coefficients, zero-padded to `order`.
    pub fn from_slice(coeffs: &[R], order: usize) -> Self {
        let mut v = vec![R::zero(); order + 1];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        Series::new(v)
    }

    /// The polynomial `sum_k c_k u^k` with rational `c_k`.
    pub fn from_rationals(coeffs: &[Rational], order: usize) -> Self {
        let v: Vec<R> = coeffs.iter().map(R::from_rational).collect();
        Series::from_slice(&v, order)
    }

    /// `1 + c u`.
    pub fn linear(c: &Rational, order: usize) -> Self {
        Series::from_rationals(&[Rational::one(), c.clone()], order)
    }
}

impl<R: Coefficient> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, rhs: &Series<R>) -> Series<R> {
        self.zip_with(rhs, |a, b| a.add_ref(b))
    }
}

impl<R: Coefficient> Sub for &Series<R> {
    type Output = Series<R>;
    fn sub(self, rhs: &Series<R>) -> Series<R> {
        self.zip_with(rhs, |a, b| a.sub_ref(b))
    }
}

impl<R: Coefficient> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, rhs: &Series<R>) -> Series<R> {
        self.mul_series(rhs)
    }
}

impl<R: Coefficient> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        self.map(|c| c.neg_ref())
    }
}

impl<R: Coefficient> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let text = c.to_string();
            let text = if text.contains(' ') && k > 0 {
                format!("({text})")
            } else {
                text
            };
            match k {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*u")?,
                _ => write!(f, "{text}*u^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}

impl<R: fmt::Debug> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{GradedPoly, ModP, OddPrime};

    type S = Series<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(cs: &[i64], order: usize) -> S {
        let v: Vec<Rational> = cs.iter().map(|&c| Rational::from_integer(c)).collect();
        S::from_slice(&v, order)
    }

    fn geometric(order: usize) -> S {
        S::new(vec![Rational::one(); order + 1])
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&ints(&[1, 1], 4) * &ints(&[1, -1], 4), ints(&[1, 0, -1], 4));
        assert_eq!(&S::variable(3) * &S::variable(3), ints(&[0, 0, 1], 3));
        assert_eq!(&geometric(6) * &ints(&[1, -1], 6), S::one(6));
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = geometric(3);
        let b = geometric(5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(ints(&[1, -1], 5).invert().unwrap(), geometric(5));
        // 1/(2 - u) = sum u^k / 2^(k+1); checked by multiplying back.
        let a = ints(&[2, -1], 6);
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeffs()[..3], [r(1, 2), r(1, 4), r(1, 8)]);
        assert_eq!(&a * &inv, S::one(6));
        let err = ints(&[0, 1, 1], 4).invert().unwrap_err();
        assert_eq!(err.name(), "NonUnitConstantTerm");
    }

    #[test]
    fn compose_examples() {
        let inner = ints(&[0, 3, -1, 7], 5);
        assert_eq!(S::variable(5).compose(&inner).unwrap(), inner);
        let outer = ints(&[0, 1, 1], 4);
        assert_eq!(outer.compose(&ints(&[0, 2], 4)).unwrap(), ints(&[0, 2, 4], 4));
        // 1/(1 - u/(1+u)) = 1 + u
        let u_over = S::variable(5).mul_series(&ints(&[1, 1], 5).invert().unwrap());
        assert_eq!(geometric(5).compose(&u_over).unwrap(), ints(&[1, 1], 5));
        assert_eq!(
            outer.compose(&ints(&[1, 1], 4)).unwrap_err(),
            Error::NonzeroInnerConstant
        );
    }

    #[test]
    fn revert_examples() {
        assert_eq!(S::variable(6).revert().unwrap(), S::variable(6));
        // u - u^2 reverts to the Catalan series u + u^2 + 2u^3 + 5u^4.
        let a = ints(&[0, 1, -1], 4);
        let b = a.revert().unwrap();
        assert_eq!(b, ints(&[0, 1, 1, 2, 5], 4));
        assert_eq!(a.compose(&b).unwrap(), S::variable(4));
        assert_eq!(b.compose(&a).unwrap(), S::variable(4));
        assert_eq!(ints(&[1, 1], 3).revert().unwrap_err().name(), "NotReversible");
        assert_eq!(ints(&[0, 0, 1], 3).revert().unwrap_err().name(), "NotReversible");
    }

    #[test]
    fn todd_f_reverts_to_minus_log() {
        // 1 - e^{-w} and -ln(1-u) = sum u^k/k
        let n = 8;
        let mut f = vec![Rational::zero()];
        let mut fact = Rational::one();
        for k in 1..=n {
            fact = &fact * &Rational::from_integer(k as i64);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            f.push(&Rational::from_integer(sign) / &fact);
        }
        let g = S::new(f).revert().unwrap();
        for k in 1..=n {
            assert_eq!(g.coeffs()[k], r(1, k as i64));
        }
    }

    #[test]
    fn calculus_examples() {
        assert_eq!(ints(&[0, 0, 1], 3).differentiate(), ints(&[0, 2], 2));
        let log = geometric(5).integrate().unwrap();
        assert_eq!(log.order(), 6);
        for k in 1..=6 {
            assert_eq!(log.coeffs()[k], r(1, k as i64));
        }
        let a = ints(&[0, 4, -3, 9], 6);
        assert_eq!(a.differentiate().integrate().unwrap(), a);
    }

    #[test]
    fn integrate_in_residue_ring_fails() {
        let p = OddPrime::new(3).unwrap();
        let s = Series::new(vec![ModP::one(p); 5]);
        assert_eq!(
            s.integrate().unwrap_err(),
            Error::IntegrateInResidueRing { p: 3, k: 3 }
        );
        let short = Series::new(vec![ModP::one(p); 2]);
        assert!(short.integrate().is_ok());
    }

    #[test]
    fn binomial_examples() {
        let sq = S::binomial_power(&S::variable(3), &r(2, 1)).unwrap();
        assert_eq!(sq, ints(&[1, 2, 1], 3));

        let w = S::from_slice(&[Rational::zero(), Rational::zero(), r(1, 4)], 4);
        let half = S::binomial_power(&w, &r(-1, 2)).unwrap();
        assert_eq!(
            half,
            S::from_slice(&[r(1, 1), r(0, 1), r(-1, 8), r(0, 1), r(3, 128)], 4)
        );
        // oracle: half^2 (1 + u^2/4) = 1
        let one_plus_w = &w + &S::one(4);
        assert_eq!(&(&half * &half) * &one_plus_w, S::one(4));

        let d = GradedPoly::delta();
        let e = GradedPoly::eps();
        let wg = Series::from_slice(
            &[GradedPoly::zero(), GradedPoly::zero(), d.scale(&r(-2, 1)), GradedPoly::zero(), e],
            4,
        );
        let g = Series::binomial_power(&wg, &r(-1, 2)).unwrap();
        assert_eq!(g.coeff(2).unwrap(), &d);
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(ints(&[1, 0, 3], 2).coeff(2).unwrap(), &r(3, 1));
        assert_eq!(S::variable(3).coeff(0).unwrap(), &Rational::zero());
        let log = geometric(6).integrate().unwrap();
        for n in 0..6 {
            assert_eq!(log.coeff(n + 1).unwrap(), &r(1, n as i64 + 1));
        }
        assert_eq!(
            ints(&[1], 2).coeff(3).unwrap_err(),
            Error::IndexBeyondTruncation { index: 3, order: 2 }
        );
    }

    #[test]
    fn display() {
        assert_eq!(ints(&[1, 0, -3], 3).to_string(), "1 + -3*u^2 + O(u^4)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const ORDER: usize = 7;

        fn coeff() -> impl Strategy<Value = Rational> {
            (-9i64..10, 1i64..5).prop_map(|(n, d)| Rational::new(n, d))
        }

        fn series() -> impl Strategy<Value = S> {
            prop::collection::vec(coeff(), ORDER + 1).prop_map(S::new)
        }

        fn unit_series() -> impl Strategy<Value = S> {
            series().prop_filter("unit constant", |s| !s.coeffs()[0].is_zero())
        }

        fn inner_series() -> impl Strategy<Value = S> {
            series().prop_map(|s| {
                let mut v = s.into_coeffs();
                v[0] = Rational::zero();
                S::new(v)
            })
        }

        fn reversible() -> impl Strategy<Value = S> {
            inner_series().prop_filter("unit linear term", |s| !s.coeffs()[1].is_zero())
        }

        proptest! {
            #[test]
            fn invert_is_inverse(a in unit_series()) {
                prop_assert_eq!(&a * &a.invert().unwrap(), S::one(ORDER));
            }

            #[test]
            fn revert_is_two_sided(a in reversible()) {
                let b = a.revert().unwrap();
                prop_assert_eq!(a.compose(&b).unwrap(), S::variable(ORDER));
                prop_assert_eq!(b.compose(&a).unwrap(), S::variable(ORDER));
            }

            #[test]
            fn compose_distributes_over_mul(a in series(), b in series(), c in inner_series()) {
                let lhs = (&a * &b).compose(&c).unwrap();
                let rhs = &a.compose(&c).unwrap() * &b.compose(&c).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn binomial_powers_cancel(w in inner_series(), n in -5i64..6, d in 1i64..4) {
                let alpha = Rational::new(n, d);
                let a = S::binomial_power(&w, &alpha).unwrap();
                let b = S::binomial_power(&w, &-&alpha).unwrap();
                prop_assert_eq!(&a * &b, S::one(ORDER));
            }

            #[test]
            fn chain_rule(a in series(), b in inner_series()) {
                let lhs = a.compose(&b).unwrap().differentiate();
                let rhs = &a.differentiate().compose(&b.truncate(ORDER - 1)).unwrap() * &b.differentiate();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
