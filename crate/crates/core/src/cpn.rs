//! Weight data of the linear `Z/p` actions on `CP^n`, Legendre polynomials,
//! and the Legendre congruences for the elliptic genus.

use crate::error::{Error, Result};
use crate::fixedpoint::{default_order, genus_mod_p, p_series_term, Route, WeightSet};
use crate::genus::{Genus, GenusSpec};
use crate::rings::{GradedPoly, GradedPolyModP, Monomial, OddPrime, Rational, Residue};
use crate::series::Series;

/// Exponents `y_0 .. y_n` of the action
/// `(z_0 : ... : z_n) -> (l^{y_0} z_0 : ... : l^{y_n} z_n)`, distinct mod p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueTuple {
    p: OddPrime,
    ys: Vec<i64>,
}

impl ResidueTuple {
    pub fn new(p: OddPrime, ys: Vec<i64>) -> Result<Self> {
        if ys.is_empty() {
            return Err(Error::Precondition("at least one residue is needed".into()));
        }
        let mut seen: Vec<u64> = ys.iter().map(|&y| p.residue(y)).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateResidues(p.get()));
        }
        Ok(ResidueTuple { p, ys })
    }

    /// `0, 1, ..., n`.
    pub fn standard(p: OddPrime, n: usize) -> Result<Self> {
        ResidueTuple::new(p, (0..=n as i64).collect())
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    /// Complex dimension of the projective space.
    pub fn n(&self) -> usize {
        self.ys.len() - 1
    }

    pub fn residues(&self) -> &[i64] {
        &self.ys
    }
}

/// Fixed point `j` has weights `y_i - y_j` for `i != j`.
pub fn cpn_weights(rt: &ResidueTuple) -> WeightSet {
    let points = (0..rt.ys.len())
        .map(|j| {
            rt.ys
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &yi)| yi - rt.ys[j])
                .collect()
        })
        .collect();
    WeightSet::new(rt.p, rt.n(), points).expect("distinct residues give nonzero weights")
}

/// `P_m(t)`, coefficients of `t^0 .. t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrePoly {
    pub m: usize,
    pub coeffs: Vec<Rational>,
}

impl LegendrePoly {
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * t) + c)
    }
}

/// `P_0 .. P_max` from `(1 - 2 t u + u^2)^{-1/2} = sum P_m(t) u^m`, with `t`
/// carried as `delta`.
pub fn legendre_table(max: usize) -> Vec<LegendrePoly> {
    let order = max.max(1);
    let w = Series::from_slice(
        &[
            GradedPoly::zero(),
            GradedPoly::delta().scale(&Rational::from_integer(-2)),
            GradedPoly::one(),
        ],
        order,
    );
    let gen = Series::binomial_power(&w, &Rational::new(-1, 2)).expect("w(0) = 0");
    gen.coeffs()[..=max]
        .iter()
        .enumerate()
        .map(|(m, c)| LegendrePoly {
            m,
            coeffs: (0..=m as u32).map(|a| c.coeff(a, 0)).collect(),
        })
        .collect()
}

pub fn legendre(m: usize) -> LegendrePoly {
    legendre_table(m).pop().expect("nonempty table")
}

/// `k^m P_m(delta / k)` with `k^2 = eps`: `sum_i a_i delta^{m-2i} eps^i`
/// where `P_m(t) = sum_i a_i t^{m-2i}`.
pub fn homogenized_legendre(m: usize) -> GradedPoly {
    let lp = legendre(m);
    GradedPoly::from_terms((0..=m / 2).map(|i| {
        (
            Monomial::new((m - 2 * i) as u32, i as u32),
            lp.coeffs[m - 2 * i].clone(),
        )
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eq45Report {
    pub p: OddPrime,
    pub m: usize,
    /// Elliptic genus of `CP^{2m}` by the p-series route.
    pub lhs: GradedPolyModP,
    /// Homogenized `P_m` mod p.
    pub rhs: GradedPolyModP,
    /// `<(1 - 2 delta u^2 + eps u^4)^{-1/2}>_{2m}` over `Q`.
    pub cpn_value: GradedPoly,
    /// `cpn_value` equals the homogenized `P_m` exactly.
    pub exact_identity: bool,
    pub holds: bool,
}

/// The elliptic p-series route on `CP^{2m}` against the homogenized Legendre
/// polynomial `P_m`.
pub fn check_eq45(rt: &ResidueTuple) -> Result<Eq45Report> {
    let (p, n) = (rt.p(), rt.n());
    if n % 2 != 0 {
        return Err(Error::Precondition(format!("dimension {n} is odd")));
    }
    let m = n / 2;
    let genus = GenusSpec::elliptic(default_order(n, p))?;
    let cpn_value = genus.cpn_genus(n)?;
    let lhs = match genus_mod_p(&Genus::Elliptic(genus), &cpn_weights(rt), Route::PSeries)? {
        Residue::Poly(q) => q,
        Residue::Scalar(_) => unreachable!("elliptic residues are polynomials"),
    };
    let hom = homogenized_legendre(m);
    let rhs = hom.reduce_mod_p(p)?;
    Ok(Eq45Report {
        p,
        m,
        holds: lhs == rhs,
        exact_identity: cpn_value == hom,
        lhs,
        rhs,
        cpn_value,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eq46Report {
    pub p: OddPrime,
    /// `<p^2 u^p / (u [u]_2 ... [u]_p)>_{p-1}` mod p.
    pub lhs: GradedPolyModP,
    /// Homogenized `P_{(p-1)/2}` mod p.
    pub rhs: GradedPolyModP,
    pub holds: bool,
    /// Both sides at `eps = 1`.
    pub lhs_eps_one: GradedPolyModP,
    pub rhs_eps_one: GradedPolyModP,
    pub holds_eps_one: bool,
    /// Coefficient of `u^p` in `[u]_p` mod p.
    pub up_coefficient: GradedPolyModP,
    pub up_coefficient_matches: bool,
}

/// The case `n = p - 1`, where every fixed point carries all nonzero
/// residues as weights.
pub fn check_eq46(p: OddPrime) -> Result<Eq46Report> {
    let n = p.as_usize() - 1;
    let genus = GenusSpec::elliptic(default_order(n, p))?;
    let weights: Vec<u64> = (1..p.get()).collect();
    let term = p_series_term(&genus, p, &weights, n)?;
    let lhs = term.scale(&Rational::from_integer(p.get() as i64)).reduce_mod_p(p)?;
    let rhs = homogenized_legendre(n / 2).reduce_mod_p(p)?;
    let up_coefficient = genus.power_system(p.get()).coeff(p.as_usize())?.reduce_mod_p(p)?;
    let lhs_eps_one = lhs.specialize_eps_one();
    let rhs_eps_one = rhs.specialize_eps_one();
    Ok(Eq46Report {
        p,
        holds: lhs == rhs,
        holds_eps_one: lhs_eps_one == rhs_eps_one,
        up_coefficient_matches: up_coefficient == rhs,
        lhs,
        rhs,
        lhs_eps_one,
        rhs_eps_one,
        up_coefficient,
    })
}
