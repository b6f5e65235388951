//! Orbifold circle-bundle data for CR-Seifert manifolds.
//!
//! Normalization: regular fibers have length 2π and the base has area
//! ∫_Σ dθ = -2πd, so ∫_M θ∧dθ = -4π²d and a constant-curvature base has
//! Webster curvature R = -χ/d.

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{PiLaurent, Rational};

/// Cone point of the base: local group ℤ/α acting on the base chart by
/// e^{2πiρ/α} and on the fiber by e^{2πiβ/α}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConePoint {
    pub alpha: i64,
    pub rho: i64,
    pub beta: i64,
}

impl ConePoint {
    pub fn new(alpha: i64, rho: i64, beta: i64) -> Result<Self> {
        let c = ConePoint { alpha, rho, beta };
        match c.problem() {
            None => Ok(c),
            Some(d) => Err(d.into_error(&c)),
        }
    }

    fn problem(&self) -> Option<Diagnostic> {
        let ConePoint { alpha, rho, beta } = *self;
        if alpha < 2 {
            return Some(Diagnostic::InvalidConePoint {
                index: 0,
                reason: "alpha must be at least 2".into(),
            });
        }
        if !(1..alpha).contains(&rho) || !(1..alpha).contains(&beta) {
            return Some(Diagnostic::InvalidConePoint {
                index: 0,
                reason: "rho and beta must lie in [1, alpha)".into(),
            });
        }
        if rho.gcd(&alpha) != 1 || beta.gcd(&alpha) != 1 {
            return Some(Diagnostic::NonCoprime { index: 0 });
        }
        None
    }
}

/// Problems reported by [`SeifertData::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NotPseudoconvex,
    NonCoprime { index: usize },
    InvalidConePoint { index: usize, reason: String },
}

impl Diagnostic {
    fn with_index(self, i: usize) -> Self {
        match self {
            Diagnostic::NonCoprime { .. } => Diagnostic::NonCoprime { index: i },
            Diagnostic::InvalidConePoint { reason, .. } => {
                Diagnostic::InvalidConePoint { index: i, reason }
            }
            d => d,
        }
    }

    fn into_error(self, c: &ConePoint) -> Error {
        match self {
            Diagnostic::NonCoprime { .. } => Error::InvalidConePoint {
                alpha: c.alpha,
                rho: c.rho,
                beta: c.beta,
                reason: "rho and beta must be prime to alpha".into(),
            },
            Diagnostic::InvalidConePoint { reason, .. } => Error::InvalidConePoint {
                alpha: c.alpha,
                rho: c.rho,
                beta: c.beta,
                reason,
            },
            Diagnostic::NotPseudoconvex => Error::NotPseudoconvex(String::new()),
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::NotPseudoconvex => write!(f, "NotPseudoconvex"),
            Diagnostic::NonCoprime { index } => write!(f, "NonCoprime(cone {index})"),
            Diagnostic::InvalidConePoint { index, reason } => {
                write!(f, "InvalidConePoint(cone {index}: {reason})")
            }
        }
    }
}

/// Degree, orbifold Euler characteristic and cone points of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub degree: Rational,
    pub chi_orb: Rational,
    pub cone_points: Vec<ConePoint>,
}

impl SeifertData {
    /// Checked constructor.
    pub fn new(degree: Rational, chi_orb: Rational, cone_points: Vec<ConePoint>) -> Result<Self> {
        let data = SeifertData {
            degree,
            chi_orb,
            cone_points,
        };
        data.check()?;
        Ok(data)
    }

    fn check(&self) -> Result<()> {
        if !self.degree.is_negative() {
            return Err(Error::NotPseudoconvex(self.degree.to_string()));
        }
        for c in &self.cone_points {
            ConePoint::new(c.alpha, c.rho, c.beta)?;
        }
        Ok(())
    }

    /// Base of genus `g` with the given cone points;
    /// χ = 2 - 2g - Σ (1 - 1/αᵢ).
    pub fn from_genus(g: u32, degree: Rational, cone_points: Vec<ConePoint>) -> Result<Self> {
        let chi = orbifold_euler_characteristic(g, &cone_points);
        Self::new(degree, chi, cone_points)
    }

    /// The standard sphere S³ → CP¹ with d = -1, χ = 2.
    pub fn sphere() -> Self {
        SeifertData {
            degree: Rational::from_integer(-1),
            chi_orb: Rational::from_integer(2),
            cone_points: Vec::new(),
        }
    }

    /// L(p, q) as an orbifold bundle over a sphere with two order-p cone
    /// points. Requires gcd(q - 1, p) = 1.
    pub fn lens_space(p: i64, q: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::DomainError(format!(
                "lens space needs p >= 2, got {p}"
            )));
        }
        if q.rem_euclid(p).gcd(&p) != 1 {
            return Err(Error::NonCoprime {
                a: q,
                alpha: p as u64,
            });
        }
        if (q - 1).rem_euclid(p).gcd(&p) != 1 {
            return Err(Error::GcdCondition { p, q });
        }
        let cones = vec![
            ConePoint::new(p, (q - 1).rem_euclid(p), 1)?,
            ConePoint::new(p, (1 - q).rem_euclid(p), q.rem_euclid(p))?,
        ];
        Self::new(Rational::new(-1, p), Rational::new(2, p), cones)
    }

    /// Reports every violated invariant; never fails.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if !self.degree.is_negative() {
            out.push(Diagnostic::NotPseudoconvex);
        }
        for (i, c) in self.cone_points.iter().enumerate() {
            if let Some(d) = c.problem() {
                out.push(d.with_index(i));
            }
        }
        out
    }

    /// Constant Webster curvature R = -χ/d of the base.
    pub fn webster_curvature_const(&self) -> Rational {
        -(&self.chi_orb / &self.degree)
    }

    pub fn geom_integrals_const(&self) -> GeomIntegrals {
        let four_pi2 = PiLaurent::monomial(Rational::from_integer(4), 2).expect("in range");
        let vol = four_pi2.scale(&-self.degree.clone());
        let r = self.webster_curvature_const();
        GeomIntegrals {
            int_r: vol.scale(&r),
            int_r2: vol.scale(&(&r * &r)),
            vol,
            int_tau2: PiLaurent::zero(),
        }
    }
}

pub fn orbifold_euler_characteristic(g: u32, cone_points: &[ConePoint]) -> Rational {
    let mut chi = Rational::from_integer(2 - 2 * g as i64);
    for c in cone_points {
        chi -= Rational::one() - Rational::new(1, c.alpha);
    }
    chi
}

pub fn webster_curvature_const(data: &SeifertData) -> Rational {
    data.webster_curvature_const()
}

pub fn geom_integrals_const(data: &SeifertData) -> GeomIntegrals {
    data.geom_integrals_const()
}

/// Curvature integrals over M: ∫θ∧dθ, ∫Rθ∧dθ, ∫R²θ∧dθ, ∫|τ|²θ∧dθ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomIntegrals {
    pub vol: PiLaurent,
    pub int_r: PiLaurent,
    pub int_r2: PiLaurent,
    pub int_tau2: PiLaurent,
}

/// JSON form: `{"genus": 0, "degree": "-1/3", "cone_points": [...]}` or
/// with `"chi_orb": "2/3"` instead of `genus`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_orb: Option<Rational>,
    pub degree: Rational,
    #[serde(default)]
    pub cone_points: Vec<ConePoint>,
}

impl SeifertInput {
    /// Builds the data without checking invariants, so that `validate` can
    /// report on it.
    pub fn to_data_unchecked(&self) -> Result<SeifertData> {
        let chi = match (&self.genus, &self.chi_orb) {
            (Some(g), None) => orbifold_euler_characteristic(*g, &self.cone_points),
            (None, Some(chi)) => chi.clone(),
            (Some(_), Some(_)) => {
                return Err(Error::Schema(
                    "give either genus or chi_orb, not both".into(),
                ))
            }
            (None, None) => return Err(Error::Schema("missing genus or chi_orb".into())),
        };
        Ok(SeifertData {
            degree: self.degree.clone(),
            chi_orb: chi,
            cone_points: self.cone_points.clone(),
        })
    }

    pub fn to_data(&self) -> Result<SeifertData> {
        let data = self.to_data_unchecked()?;
        data.check()?;
        Ok(data)
    }

    pub fn parse_json(s: &str) -> Result<SeifertData> {
        let input: SeifertInput =
            serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        input.to_data()
    }
}

impl From<&SeifertData> for SeifertInput {
    fn from(d: &SeifertData) -> Self {
        SeifertInput {
            genus: None,
            chi_orb: Some(d.chi_orb.clone()),
            degree: d.degree.clone(),
            cone_points: d.cone_points.clone(),
        }
    }
}

/// Random admissible data: up to `max_points` cone points with α in
/// `[2, max_alpha]`, a genus in `0..=3` and a negative degree. Used by the
/// regression sweeps.
pub fn random_data<R: Rng>(rng: &mut R, max_alpha: i64, max_points: usize) -> SeifertData {
    let n = rng.gen_range(0..=max_points);
    let mut cones = Vec::with_capacity(n);
    while cones.len() < n {
        let alpha = rng.gen_range(2..=max_alpha);
        let rho = rng.gen_range(1..alpha);
        let beta = rng.gen_range(1..alpha);
        if let Ok(c) = ConePoint::new(alpha, rho, beta) {
            cones.push(c);
        }
    }
    let g = rng.gen_range(0..=3u32);
    let den = rng.gen_range(1..=24i64);
    let num = rng.gen_range(1..=60i64);
    SeifertData::from_genus(g, Rational::new(-num, den), cones).expect("constructed valid")
}
