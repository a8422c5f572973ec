//! Catalog of Hirzebruch genera, each presented by its formal-group
//! logarithm `g(u)` and the inverse series `f = g^{-1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rings::{Coefficient, GradedPoly, Rational};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GenusKind {
    Todd,
    Euler,
    LGenus,
    ChiY { y: Rational },
    AHat,
    Elliptic,
    Custom,
}

impl GenusKind {
    pub fn y_param(&self) -> Option<&Rational> {
        match self {
            GenusKind::ChiY { y } => Some(y),
            _ => None,
        }
    }

    /// Whether the genus takes values in `Q[delta, eps]` rather than `Q`.
    pub fn is_graded(&self) -> bool {
        matches!(self, GenusKind::Elliptic)
    }
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusKind::Todd => f.write_str("td"),
            GenusKind::Euler => f.write_str("euler"),
            GenusKind::LGenus => f.write_str("L"),
            GenusKind::ChiY { y } => write!(f, "chi_y:{y}"),
            GenusKind::AHat => f.write_str("ahat"),
            GenusKind::Elliptic => f.write_str("elliptic"),
            GenusKind::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for GenusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "td" => Ok(GenusKind::Todd),
            "euler" => Ok(GenusKind::Euler),
            "L" => Ok(GenusKind::LGenus),
            "ahat" => Ok(GenusKind::AHat),
            "elliptic" => Ok(GenusKind::Elliptic),
            "chi_y" => Err(Error::BadParams("chi_y needs a parameter, e.g. chi_y:2".into())),
            _ => match s.strip_prefix("chi_y:") {
                Some(y) => Ok(GenusKind::ChiY { y: y.parse()? }),
                None => Err(Error::Parse(format!("unknown genus {s:?}"))),
            },
        }
    }
}

/// A genus together with its logarithm and `f`-series, both truncated at the
/// same order.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSpec<R> {
    kind: GenusKind,
    logarithm: Series<R>,
    f_series: Series<R>,
}

impl<R: Coefficient> GenusSpec<R> {
    fn from_logarithm(kind: GenusKind, logarithm: Series<R>) -> Result<Self> {
        if logarithm.order() < 2 {
            return Err(Error::BadParams("truncation order must be at least 2".into()));
        }
        let one = logarithm.coeffs()[0].one_like();
        if !logarithm.coeffs()[0].is_zero() || logarithm.coeffs()[1] != one {
            return Err(Error::BadParams(
                "logarithm must start u + O(u^2)".into(),
            ));
        }
        let f_series = logarithm.revert()?;
        Ok(GenusSpec {
            kind,
            logarithm,
            f_series,
        })
    }

    /// A genus outside the catalog, given by its logarithm.
    pub fn custom(logarithm: Series<R>) -> Result<Self> {
        GenusSpec::from_logarithm(GenusKind::Custom, logarithm)
    }

    pub fn kind(&self) -> &GenusKind {
        &self.kind
    }

    pub fn y_param(&self) -> Option<&Rational> {
        self.kind.y_param()
    }

    pub fn order(&self) -> usize {
        self.logarithm.order()
    }

    pub fn logarithm(&self) -> &Series<R> {
        &self.logarithm
    }

    pub fn f_series(&self) -> &Series<R> {
        &self.f_series
    }

    /// `[u]_m = f(m g(u))`.
    pub fn power_system(&self, m: u64) -> Series<R> {
        let factor = self.logarithm.coeffs()[0]
            .scalar_like(&Rational::from_integer(m as i64))
            .expect("integers embed in characteristic zero");
        self.f_series
            .compose(&self.logarithm.scale(&factor))
            .expect("logarithm has zero constant term")
    }

    /// `phi(CP^n)`: the coefficient of `u^n` in `g'(u)`.
    pub fn cpn_genus(&self, n: usize) -> Result<R> {
        self.logarithm.differentiate().coeff(n).cloned()
    }
}

impl GenusSpec<Rational> {
    /// A genus with rational values; `kind` must not be elliptic or custom.
    pub fn rational(kind: GenusKind, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::BadParams("truncation order must be at least 2".into()));
        }
        let n = order - 1;
        let derivative = match &kind {
            GenusKind::Todd => Series::new(vec![Rational::one(); n + 1]),
            GenusKind::Euler => {
                // g = u/(1-u), g' = 1/(1-u)^2
                Series::new((0..=n).map(|k| Rational::from_integer(k as i64 + 1)).collect())
            }
            GenusKind::LGenus => Series::new(
                (0..=n)
                    .map(|k| Rational::from_integer(if k % 2 == 0 { 1 } else { 0 }))
                    .collect(),
            ),
            GenusKind::ChiY { y } => {
                // (1/(1-u) + y/(1+yu)) / (1+y): coefficient sum_{i<=k} (-y)^i
                let minus_y = -y;
                let mut acc = Rational::zero();
                let mut pw = Rational::one();
                let mut v = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    acc = &acc + &pw;
                    v.push(acc.clone());
                    pw = &pw * &minus_y;
                }
                Series::new(v)
            }
            GenusKind::AHat => {
                let w = Series::from_rationals(
                    &[Rational::zero(), Rational::zero(), Rational::new(1, 4)],
                    n,
                );
                Series::binomial_power(&w, &Rational::new(-1, 2))?
            }
            GenusKind::Elliptic | GenusKind::Custom => {
                return Err(Error::BadParams(format!(
                    "{kind} has no rational catalog logarithm"
                )))
            }
        };
        GenusSpec::from_logarithm(kind, derivative.integrate()?)
    }
}

impl GenusSpec<GradedPoly> {
    /// The elliptic genus: `g'(u) = (1 - 2 delta u^2 + eps u^4)^{-1/2}`.
    pub fn elliptic(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::BadParams("truncation order must be at least 2".into()));
        }
        let w = elliptic_quartic(order - 1);
        let derivative = Series::binomial_power(&w, &Rational::new(-1, 2))?;
        GenusSpec::from_logarithm(GenusKind::Elliptic, derivative.integrate()?)
    }
}

/// `-2 delta u^2 + eps u^4`.
fn elliptic_quartic(order: usize) -> Series<GradedPoly> {
    Series::from_slice(
        &[
            GradedPoly::zero(),
            GradedPoly::zero(),
            GradedPoly::delta().scale(&Rational::from_integer(-2)),
            GradedPoly::zero(),
            GradedPoly::eps(),
        ],
        order,
    )
}

/// `ln((1 + y u)/(1 - u))`, the logarithm of `chi_y` before normalization;
/// it equals `(1 + y)` times the stored logarithm.
pub fn unnormalized_chi_y_logarithm(y: &Rational, order: usize) -> Result<Series<Rational>> {
    let n = order.max(1) - 1;
    let minus_y = -y;
    let mut pw = Rational::one();
    let mut v = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        v.push(&Rational::one() + &(y * &pw));
        pw = &pw * &minus_y;
    }
    Series::new(v).integrate()
}

/// A genus over whichever coefficient ring its values live in.
#[derive(Clone, Debug, PartialEq)]
pub enum Genus {
    Rational(GenusSpec<Rational>),
    Elliptic(GenusSpec<GradedPoly>),
}

impl Genus {
    /// Builds a catalog genus at the given truncation order.
    pub fn new(kind: GenusKind, order: usize) -> Result<Self> {
        match kind {
            GenusKind::Elliptic => GenusSpec::elliptic(order).map(Genus::Elliptic),
            GenusKind::Custom => Err(Error::BadParams(
                "custom genera are built from a logarithm".into(),
            )),
            kind => GenusSpec::rational(kind, order).map(Genus::Rational),
        }
    }

    pub fn kind(&self) -> &GenusKind {
        match self {
            Genus::Rational(g) => g.kind(),
            Genus::Elliptic(g) => g.kind(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Genus::Rational(g) => g.order(),
            Genus::Elliptic(g) => g.order(),
        }
    }
}

/// `[u]_m` from the closed forms of the catalog, expanded to `order`.
pub fn power_system_closed(kind: &GenusKind, m: u64, order: usize) -> Result<Series<Rational>> {
    let one = Series::<Rational>::one(order);
    let u = Series::<Rational>::variable(order);
    let mi = Rational::from_integer(m as i64);
    let exp = u32::try_from(m).map_err(|_| Error::BadParams("power too large".into()))?;
    let one_minus_u = Series::linear(&Rational::from_integer(-1), order).pow(exp);
    match kind {
        GenusKind::Todd => Ok(&one - &one_minus_u),
        GenusKind::Euler => {
            let den = Series::linear(&(&mi - &Rational::one()), order);
            Ok(u.scale(&mi).mul_series(&den.invert()?))
        }
        GenusKind::LGenus => {
            let a = Series::linear(&Rational::one(), order).pow(exp);
            Ok((&a - &one_minus_u).mul_series(&(&a + &one_minus_u).invert()?))
        }
        GenusKind::ChiY { y } => {
            if (y + &Rational::one()).is_zero() {
                return power_system_closed(&GenusKind::Euler, m, order);
            }
            let a = Series::linear(y, order).pow(exp);
            let den = &a + &one_minus_u.scale(y);
            Ok((&a - &one_minus_u).mul_series(&den.invert()?))
        }
        GenusKind::AHat => {
            // w = u/2 + sqrt(1 + u^2/4), 1/w = sqrt(1 + u^2/4) - u/2
            let root = Series::binomial_power(
                &Series::from_rationals(
                    &[Rational::zero(), Rational::zero(), Rational::new(1, 4)],
                    order,
                ),
                &Rational::new(1, 2),
            )?;
            let half_u = u.scale(&Rational::new(1, 2));
            let w = &root + &half_u;
            let w_inv = &root - &half_u;
            Ok(&w.pow(exp) - &w_inv.pow(exp))
        }
        GenusKind::Elliptic | GenusKind::Custom => {
            Err(Error::UnsupportedClosedForm(kind.to_string()))
        }
    }
}

/// The elliptic triple
/// `u (3 - 8 delta u^2 + 6 eps u^4 - eps^2 u^8) / (1 - 6 eps u^4 + 8 delta eps u^6 - 3 eps^2 u^8)`.
pub fn elliptic_triple_closed(order: usize) -> Result<Series<GradedPoly>> {
    let d = GradedPoly::delta();
    let e = GradedPoly::eps();
    let e2 = &e * &e;
    let c = |k: i64| Rational::from_integer(k);
    let z = GradedPoly::zero;
    let num = Series::from_slice(
        &[
            z(),
            GradedPoly::constant(c(3)),
            z(),
            d.scale(&c(-8)),
            z(),
            e.scale(&c(6)),
            z(),
            z(),
            z(),
            e2.scale(&c(-1)),
        ],
        order,
    );
    let den = Series::from_slice(
        &[
            GradedPoly::one(),
            z(),
            z(),
            z(),
            e.scale(&c(-6)),
            z(),
            (&d * &e).scale(&c(8)),
            z(),
            e2.scale(&c(-3)),
        ],
        order,
    );
    Ok(num.mul_series(&den.invert()?))
}
