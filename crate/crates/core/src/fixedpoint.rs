//! Fixed-point formulas: per-point functions, the three routes to a genus
//! mod p, Conner–Floyd residuals, the `h(u)` reconciliation and fixed
//! submanifolds with trivial normal bundle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{self, canonical_weights, check_chi_y};
use crate::error::{Error, Result};
use crate::genus::{power_system_closed, Genus, GenusKind, GenusSpec};
use crate::rings::{ConstRing, GradedPoly, ModP, OddPrime, Rational, Reduce, Residue};
use crate::series::Series;

/// Weights of the fixed points of a `Z/p` action on a `2n`-manifold, each
/// canonicalized to `[1, p - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightSetJson", into = "WeightSetJson")]
pub struct WeightSet {
    p: OddPrime,
    n: usize,
    points: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct WeightSetJson {
    p: u64,
    n: usize,
    fixed_points: Vec<Vec<i64>>,
}

impl TryFrom<WeightSetJson> for WeightSet {
    type Error = Error;
    fn try_from(raw: WeightSetJson) -> Result<Self> {
        WeightSet::new(OddPrime::new(raw.p)?, raw.n, raw.fixed_points)
    }
}

impl From<WeightSet> for WeightSetJson {
    fn from(w: WeightSet) -> Self {
        WeightSetJson {
            p: w.p.get(),
            n: w.n,
            fixed_points: w
                .points
                .into_iter()
                .map(|pt| pt.into_iter().map(|x| x as i64).collect())
                .collect(),
        }
    }
}

impl WeightSet {
    pub fn new(p: OddPrime, n: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let points = points
            .iter()
            .map(|pt| {
                if pt.len() != n {
                    return Err(Error::Precondition(format!(
                        "fixed point has {} weights, expected {n}",
                        pt.len()
                    )));
                }
                canonical_weights(p, pt)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightSet { p, n, points })
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of fixed points.
    pub fn q(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }
}

/// Components of the fixed-point set, each with its normal weights and the
/// (caller-supplied) genus of the component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SubmanifoldJson", into = "SubmanifoldJson")]
pub struct SubmanifoldData {
    p: OddPrime,
    components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub normal_weights: Vec<u64>,
    pub genus_value: GradedPoly,
}

#[derive(Serialize, Deserialize)]
struct SubmanifoldJson {
    p: u64,
    components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    normal_weights: Vec<i64>,
    genus_value: String,
}

impl TryFrom<SubmanifoldJson> for SubmanifoldData {
    type Error = Error;
    fn try_from(raw: SubmanifoldJson) -> Result<Self> {
        let p = OddPrime::new(raw.p)?;
        let components = raw
            .components
            .into_iter()
            .map(|c| {
                Ok(Component {
                    normal_weights: canonical_weights(p, &c.normal_weights)?,
                    genus_value: c.genus_value.parse()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubmanifoldData { p, components })
    }
}

impl From<SubmanifoldData> for SubmanifoldJson {
    fn from(d: SubmanifoldData) -> Self {
        SubmanifoldJson {
            p: d.p.get(),
            components: d
                .components
                .into_iter()
                .map(|c| ComponentJson {
                    normal_weights: c.normal_weights.into_iter().map(|x| x as i64).collect(),
                    genus_value: c.genus_value.to_string(),
                })
                .collect(),
        }
    }
}

impl SubmanifoldData {
    pub fn new(p: OddPrime, components: Vec<(Vec<i64>, GradedPoly)>) -> Result<Self> {
        let components = components
            .into_iter()
            .map(|(w, v)| {
                Ok(Component {
                    normal_weights: canonical_weights(p, &w)?,
                    genus_value: v,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubmanifoldData { p, components })
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }
}

/// Which formula computes the genus mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// `sum_j <(p u / [u]_p) prod u / [u]_{x_k}>_n`.
    PSeries,
    /// `sum_j -<A(u) B(u)>_n`.
    Ab,
    /// `sum_j -Tr prod 1/[theta]_{x_k}` in `Q(zeta_p)`.
    Trace,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::PSeries, Route::Ab, Route::Trace];

    pub fn name(self) -> &'static str {
        match self {
            Route::PSeries => "pseries",
            Route::Ab => "ab",
            Route::Trace => "trace",
        }
    }
}

/// Truncation order used when the caller has no better choice.
pub fn default_order(n: usize, p: OddPrime) -> usize {
    n + p.as_usize() + 2
}

fn integer<R: ConstRing>(k: u64) -> R {
    R::from_rational(&Rational::from_integer(k as i64))
}

/// Memoizes `u / [u]_x` for one genus.
struct Kernel<'a, R> {
    genus: &'a GenusSpec<R>,
    u_over: HashMap<u64, Series<R>>,
}

impl<'a, R: ConstRing> Kernel<'a, R> {
    fn new(genus: &'a GenusSpec<R>) -> Self {
        Kernel {
            genus,
            u_over: HashMap::new(),
        }
    }

    /// `u / [u]_x`, of order one less than the genus.
    fn u_over(&mut self, x: u64) -> Result<&Series<R>> {
        if x == 0 {
            return Err(Error::ZeroWeight(0));
        }
        if !self.u_over.contains_key(&x) {
            let s = self.genus.power_system(x).shift_down(1)?.invert()?;
            self.u_over.insert(x, s);
        }
        Ok(&self.u_over[&x])
    }

    fn a_series(&mut self, weights: &[u64]) -> Result<Series<R>> {
        let mut acc = Series::one(self.genus.order() - 1);
        for &x in weights {
            acc = acc.mul_series(self.u_over(x)?);
        }
        Ok(acc)
    }

    fn point_series(&mut self, p: OddPrime, weights: &[u64]) -> Result<Series<R>> {
        let pf = self.u_over(p.get())?.scale(&integer(p.get()));
        Ok(self.a_series(weights)?.mul_series(&pf))
    }
}

/// `A(u) = prod_k u / [u]_{x_k}`, of order one less than the genus.
pub fn a_series<R: ConstRing>(g: &GenusSpec<R>, weights: &[u64]) -> Result<Series<R>> {
    Kernel::new(g).a_series(weights)
}

fn check_weights(p: OddPrime, weights: &[u64]) -> Result<()> {
    match weights.iter().find(|&&x| x % p.get() == 0) {
        Some(&x) => Err(Error::ZeroWeight(x as i64)),
        None => Ok(()),
    }
}

/// `<(p u / [u]_p) A(u)>_m`, exact over the genus ring.
pub fn p_series_term<R: ConstRing>(
    g: &GenusSpec<R>,
    p: OddPrime,
    weights: &[u64],
    m: usize,
) -> Result<R> {
    check_weights(p, weights)?;
    Kernel::new(g).point_series(p, weights)?.coeff(m).cloned()
}

/// `B(u) = sum_s Tr(theta^{-s}) u^s` from its closed form, to `order`.
pub fn b_series(kind: &GenusKind, p: OddPrime, order: usize) -> Result<Series<Rational>> {
    let pr = Rational::from_integer(p.get() as i64);
    let pe = p.get() as u32;
    let n = order + 1;
    let (num, den) = match kind {
        GenusKind::Todd | GenusKind::LGenus | GenusKind::ChiY { .. } => {
            let y = match kind {
                GenusKind::Todd => Rational::zero(),
                GenusKind::LGenus => Rational::one(),
                GenusKind::ChiY { y } => {
                    check_chi_y(y, p)?;
                    y.clone()
                }
                _ => unreachable!(),
            };
            let a = Series::linear(&y, n);
            let b = Series::linear(&Rational::from_integer(-1), n);
            let num = (&a.pow(pe - 1) - &b.pow(pe - 1)).scale(&pr);
            (num, &a.pow(pe) - &b.pow(pe))
        }
        GenusKind::AHat => {
            let root = Series::binomial_power(
                &Series::from_rationals(
                    &[Rational::zero(), Rational::zero(), Rational::new(1, 4)],
                    n,
                ),
                &Rational::new(1, 2),
            )?;
            let num = power_system_closed(kind, p.get() - 1, n)?.scale(&pr);
            let den = root.mul_series(&power_system_closed(kind, p.get(), n)?);
            (num, den)
        }
        _ => return Err(Error::UnsupportedKind(kind.to_string())),
    };
    Series::ratio_of_u_multiples(&num, &den)
}

/// The fixed-point function `-<A(u) B(u)>_d` for a tuple of `d` weights.
///
/// Weights are used as given (any representative prime to `p`).
pub fn ab_coefficient(g: &GenusSpec<Rational>, p: OddPrime, weights: &[u64]) -> Result<Rational> {
    check_weights(p, weights)?;
    AbKernel::new(g, p).value(weights)
}

struct AbKernel<'a> {
    kernel: Kernel<'a, Rational>,
    p: OddPrime,
    b: Option<Series<Rational>>,
}

impl<'a> AbKernel<'a> {
    fn new(g: &'a GenusSpec<Rational>, p: OddPrime) -> Self {
        AbKernel {
            kernel: Kernel::new(g),
            p,
            b: None,
        }
    }

    fn value(&mut self, weights: &[u64]) -> Result<Rational> {
        let kind = self.kernel.genus.kind();
        if *kind == GenusKind::Euler {
            return Ok(Rational::from_integer(1 - self.p.get() as i64));
        }
        let d = weights.len();
        let order = self.kernel.genus.order() - 1;
        if self.b.is_none() {
            self.b = Some(b_series(kind, self.p, order)?);
        }
        let a = self.kernel.a_series(weights)?;
        let ab = a.mul_series(self.b.as_ref().expect("just built"));
        Ok(-ab.coeff(d)?.clone())
    }
}

fn sum_to_residue<R: Reduce + ConstRing>(values: impl IntoIterator<Item = R>, p: OddPrime) -> Result<Residue> {
    let total = values.into_iter().fold(R::zero(), |acc, v| acc.add_ref(&v));
    total.to_residue(p)
}

fn pseries_values<R: ConstRing>(g: &GenusSpec<R>, w: &WeightSet, m: usize) -> Result<Vec<R>> {
    let mut k = Kernel::new(g);
    w.points()
        .iter()
        .map(|pt| k.point_series(w.p(), pt)?.coeff(m).cloned())
        .collect()
}

/// Per-point values of a route, exact, in fixed-point order.
pub fn route_values(g: &Genus, w: &WeightSet, route: Route) -> Result<Vec<GradedPoly>> {
    let n = w.n();
    match (g, route) {
        (Genus::Elliptic(e), Route::PSeries) => pseries_values(e, w, n),
        (Genus::Elliptic(e), _) => Err(Error::UnsupportedKind(e.kind().to_string())),
        (Genus::Rational(r), route) => {
            let vals = match route {
                Route::PSeries => pseries_values(r, w, n)?,
                Route::Ab => {
                    let mut k = AbKernel::new(r, w.p());
                    w.points().iter().map(|pt| k.value(pt)).collect::<Result<_>>()?
                }
                Route::Trace => {
                    let kind = r.kind();
                    w.points()
                        .iter()
                        .map(|pt| {
                            let xs: Vec<i64> = pt.iter().map(|&x| x as i64).collect();
                            cyclotomic::ab_trace(kind, w.p(), &xs)
                        })
                        .collect::<Result<_>>()?
                }
            };
            Ok(vals.into_iter().map(GradedPoly::constant).collect())
        }
    }
}

/// The genus of the manifold mod p, by the chosen route.
pub fn genus_mod_p(g: &Genus, w: &WeightSet, route: Route) -> Result<Residue> {
    let vals = route_values(g, w, route)?;
    match g {
        Genus::Elliptic(_) => sum_to_residue(vals, w.p()),
        Genus::Rational(_) => sum_to_residue(
            vals.into_iter().map(|v| v.as_constant().expect("rational route value")),
            w.p(),
        ),
    }
}

fn cf_sums<R: ConstRing>(g: &GenusSpec<R>, w: &WeightSet, upto: usize) -> Result<Vec<R>> {
    let mut k = Kernel::new(g);
    let mut sums = vec![R::zero(); upto + 1];
    for pt in w.points() {
        let s = k.point_series(w.p(), pt)?;
        for (m, slot) in sums.iter_mut().enumerate() {
            *slot = slot.add_ref(s.coeff(m)?);
        }
    }
    Ok(sums)
}

/// Residuals mod p of the Conner–Floyd equations
/// `sum_j <(p u/[u]_p) prod u/[u]_{x_k}>_m` for `m = 0 .. n - 1`.
///
/// A non-integral sum is reported in place without failing the other degrees.
pub fn cf_residuals(g: &Genus, w: &WeightSet) -> Result<Vec<Result<Residue>>> {
    if w.n() == 0 {
        return Err(Error::Precondition("Conner-Floyd equations need n >= 1".into()));
    }
    let top = w.n() - 1;
    Ok(match g {
        Genus::Rational(r) => cf_sums(r, w, top)?
            .into_iter()
            .map(|s| s.to_residue(w.p()))
            .collect(),
        Genus::Elliptic(e) => cf_sums(e, w, top)?
            .into_iter()
            .map(|s| s.to_residue(w.p()))
            .collect(),
    })
}

/// `h(u) = p ([u]_p - u) / (B(u) [u]_p)` to `order`.
pub fn h_series(kind: &GenusKind, p: OddPrime, order: usize) -> Result<Series<Rational>> {
    let b = b_series(kind, p, order)?;
    let up = power_system_closed(kind, p.get(), order + 1)?;
    let num = (&up - &Series::variable(order + 1)).scale(&Rational::from_integer(p.get() as i64));
    Ok(Series::ratio_of_u_multiples(&num, &up)?.mul_series(&b.invert()?))
}

/// Both sides of the reconciliation between the B-series route and the
/// p-series route.
#[derive(Clone, Debug, PartialEq)]
pub struct Thm71Report {
    pub p: OddPrime,
    pub n: usize,
    /// `sum_j -<A B>_n`.
    pub ab_sum: Rational,
    /// `sum_j <P A>_n`.
    pub pseries_sum: Rational,
    /// `sum_j <P A>_m` for `m = 0 .. n - 1`.
    pub cf_sums: Vec<Rational>,
    /// Coefficients `H_1 .. H_n` of `1/h(u)`.
    pub h_inverse: Vec<Rational>,
    /// `pseries_sum + sum_m H_{n-m} cf_sums[m]`.
    pub rhs: Rational,
    pub holds: bool,
}

impl Thm71Report {
    pub fn lhs_residue(&self) -> Result<ModP> {
        self.ab_sum.reduce_mod_p(self.p)
    }

    pub fn rhs_residue(&self) -> Result<ModP> {
        self.rhs.reduce_mod_p(self.p)
    }
}

/// Checks `sum_j AB_j == sum_j <P A_j>_n + sum_{m<n} H_{n-m} sum_j <P A_j>_m`
/// mod p. Requires `n <= p - 2` unless `beyond_guard` is set.
pub fn thm71_check(g: &GenusSpec<Rational>, w: &WeightSet, beyond_guard: bool) -> Result<Thm71Report> {
    let (p, n) = (w.p(), w.n());
    if n + 2 > p.as_usize() && !beyond_guard {
        return Err(Error::GuardViolation { n, p: p.get() });
    }
    let kind = g.kind();
    let h = h_series(kind, p, n.max(1))?;
    let h_inv = h.invert()?;
    let sums = cf_sums(g, w, n)?;
    let mut ab = AbKernel::new(g, p);
    let ab_sum: Rational = w
        .points()
        .iter()
        .map(|pt| ab.value(pt))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    let h_inverse: Vec<Rational> = h_inv.coeffs()[1..=n].to_vec();
    let mut rhs = sums[n].clone();
    for (m, s) in sums[..n].iter().enumerate() {
        rhs += &(&h_inverse[n - m - 1] * s);
    }
    let holds = ab_sum.congruent_mod_p(&rhs, p.get());
    Ok(Thm71Report {
        p,
        n,
        ab_sum,
        pseries_sum: sums[n].clone(),
        cf_sums: sums[..n].to_vec(),
        h_inverse,
        rhs,
        holds,
    })
}

/// `phi(M) = sum_nu AB(normal weights of M_nu) phi(M_nu)` mod p.
pub fn submanifold_genus(g: &Genus, data: &SubmanifoldData) -> Result<Residue> {
    let r = match g {
        Genus::Rational(r) => r,
        Genus::Elliptic(e) => return Err(Error::UnsupportedKind(e.kind().to_string())),
    };
    let mut k = AbKernel::new(r, data.p());
    let mut total = Rational::zero();
    for c in data.components() {
        let v = c.genus_value.as_constant().ok_or(Error::RingMismatch)?;
        total += &(&k.value(&c.normal_weights)? * &v);
    }
    total.to_residue(data.p())
}
