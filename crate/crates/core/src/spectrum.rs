//! Virtual spectrum of d*_ε/ε and the limit spectrum of D*.
//!
//! Input modes are joint eigenvalues (k, n) of the horizontal Laplacian and
//! of iT on functions. Each mode gives the pair λ± solving
//! λ² - λ - (εk + ε²n²) = 0; the holomorphic counts h₀, h₂ add and remove
//! the constant lines ±n.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{Number, Rational};

/// Residual tolerance on the floating-point path.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-12;

/// An eigenvalue: exact when the discriminant is a rational square.
#[derive(Clone, Debug, PartialEq)]
pub enum LineValue {
    Exact(Rational),
    Approx(f64),
}

impl LineValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            LineValue::Exact(r) => r.to_f64(),
            LineValue::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LineValue::Exact(r) => r.is_zero(),
            LineValue::Approx(x) => *x == 0.0,
        }
    }

    fn neg(&self) -> LineValue {
        match self {
            LineValue::Exact(r) => LineValue::Exact(-r),
            LineValue::Approx(x) => LineValue::Approx(-x),
        }
    }

    fn div(&self, eps: &Rational) -> LineValue {
        match self {
            LineValue::Exact(r) => LineValue::Exact(r / eps),
            LineValue::Approx(x) => LineValue::Approx(x / eps.to_f64()),
        }
    }

    /// Exact values match exactly; anything involving a float matches
    /// within a relative 1e-12.
    pub fn matches(&self, other: &LineValue) -> bool {
        match (self, other) {
            (LineValue::Exact(a), LineValue::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= FLOAT_RESIDUAL_TOL * a.abs().max(b.abs()).max(1.0)
            }
        }
    }

    fn cmp_value(&self, other: &LineValue) -> Ordering {
        match (self, other) {
            (LineValue::Exact(a), LineValue::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for LineValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineValue::Exact(r) => write!(f, "{r}"),
            LineValue::Approx(x) => write!(f, "{x:.15e}"),
        }
    }
}

/// Horizontal eigenvalue k ≥ 0, Fourier index n, multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralMode {
    #[serde(with = "number_serde")]
    pub k: Number,
    pub n: i64,
    pub mult: u64,
}

impl SpectralMode {
    pub fn new(k: Number, n: i64, mult: u64) -> Result<Self> {
        if k.to_f64() < 0.0 || k.to_f64().is_nan() {
            return Err(Error::DomainError(format!(
                "k must be non-negative, got {k}"
            )));
        }
        if mult == 0 {
            return Err(Error::DomainError("multiplicity must be positive".into()));
        }
        Ok(SpectralMode { k, n, mult })
    }

    pub fn exact(k: Rational, n: i64, mult: u64) -> Result<Self> {
        Self::new(Number::Exact(k), n, mult)
    }

    fn k_value(&self) -> LineValue {
        match &self.k {
            Number::Exact(r) => LineValue::Exact(r.clone()),
            Number::Approx(x) => LineValue::Approx(*x),
        }
    }

    fn is_trivial(&self) -> bool {
        self.n == 0 && self.k_value().is_zero()
    }
}

mod number_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Number, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n {
            Number::Exact(r) => r.serialize(s),
            Number::Approx(x) => s.serialize_f64(*x),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Number, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Float(f64),
            Str(String),
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Int(i) => Number::Exact(Rational::from_integer(i)),
            Repr::Float(x) => Number::Approx(x),
            Repr::Str(s) => Number::Exact(s.parse().map_err(serde::de::Error::custom)?),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plus,
    Minus,
    Holomorphic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
            Family::Holomorphic => "holomorphic",
        })
    }
}

/// Where a line came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Origin {
    Mode { k: LineValue, n: i64 },
    Fourier(i64),
}

impl Origin {
    fn sort_key(&self) -> (u8, f64, i64) {
        match self {
            Origin::Mode { k, n } => (0, k.to_f64(), *n),
            Origin::Fourier(n) => (1, 0.0, *n),
        }
    }

    fn same(&self, other: &Origin) -> bool {
        match (self, other) {
            (Origin::Mode { k: a, n: na }, Origin::Mode { k: b, n: nb }) => {
                na == nb && a.matches(b)
            }
            (Origin::Fourier(a), Origin::Fourier(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Mode { k, n } => write!(f, "k={k};n={n}"),
            Origin::Fourier(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralLine {
    pub value: LineValue,
    pub mult: u64,
    pub family: Family,
    pub origin: Origin,
}

/// h₀(n), h₂(n) by Fourier index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloCounts {
    #[serde(default, with = "count_map")]
    pub h0: BTreeMap<i64, u64>,
    #[serde(default, with = "count_map")]
    pub h2: BTreeMap<i64, u64>,
}

mod count_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<i64, u64>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let as_str: BTreeMap<String, u64> = m.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        as_str.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<i64, u64>, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<i64>()
                    .map(|k| (k, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

impl HoloCounts {
    /// Counts for the standard sphere for |n| ≤ `nmax`.
    pub fn sphere(nmax: i64) -> Self {
        let mut out = HoloCounts::default();
        for n in -nmax..=nmax {
            let (h0, h2) = crate::rrketa::sphere_h_counts(n);
            if h0 > 0 {
                out.h0.insert(n, h0);
            }
            if h2 > 0 {
                out.h2.insert(n, h2);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((n, _)) = self.h0.iter().find(|(n, m)| **n < 0 && **m > 0) {
            return Err(Error::DomainError(format!(
                "h0({n}) must vanish for negative n"
            )));
        }
        Ok(())
    }
}

/// JSON form: `{"modes": [{"k": "2", "n": 1, "mult": 4}], "holo": {"h0": {"1": 2}}}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumInput {
    pub modes: Vec<SpectralMode>,
    #[serde(default)]
    pub holo: HoloCounts,
}

impl SpectrumInput {
    pub fn parse_json(s: &str) -> Result<Self> {
        let input: SpectrumInput =
            serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        for m in &input.modes {
            SpectralMode::new(m.k.clone(), m.n, m.mult)?;
        }
        input.holo.validate()?;
        Ok(input)
    }

    /// The truncated sphere model with holomorphic counts up to the cutoff.
    pub fn sphere_model(cutoff: i64) -> Self {
        SpectrumInput {
            modes: sphere_model_modes(cutoff),
            holo: HoloCounts::sphere(cutoff),
        }
    }
}

/// Roots of λ² - λ - (εk + ε²n²) = 0 as (λ⁺, λ⁻).
pub fn lambda_pm(k: &Number, n: i64, eps: &Rational) -> Result<(LineValue, LineValue)> {
    if !eps.is_positive() {
        return Err(Error::DomainError(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if k.to_f64() < 0.0 {
        return Err(Error::DomainError(format!(
            "k must be non-negative, got {k}"
        )));
    }
    let n2 = Rational::from_integer(n) * Rational::from_integer(n);
    if let Number::Exact(kr) = k {
        let c = eps * kr + eps * eps * &n2;
        let disc = Rational::one() + Rational::from_integer(4) * &c;
        if let Some(root) = disc.sqrt_exact() {
            let half = Rational::new(1, 2);
            return Ok((
                LineValue::Exact((Rational::one() + &root) * &half),
                LineValue::Exact((Rational::one() - root) * half),
            ));
        }
    }
    let c = eps.to_f64() * k.to_f64() + eps.to_f64().powi(2) * n2.to_f64();
    let root = (1.0 + 4.0 * c).sqrt();
    let plus = (1.0 + root) / 2.0;
    // λ⁻ = -c/λ⁺ avoids cancellation for small ε.
    let minus = -c / plus;
    Ok((LineValue::Approx(plus), LineValue::Approx(minus)))
}

/// λ² - λ - εk - ε²n². Float lines are converted to their exact binary
/// value first, so the residual measures the stored root and not the
/// rounding of the evaluation.
pub fn quadratic_residual(lambda: &LineValue, k: &Number, n: i64, eps: &Rational) -> LineValue {
    let exact = |l: &Rational, k: &Rational| {
        let n2 = Rational::from_integer(n) * Rational::from_integer(n);
        l * l - l.clone() - eps * k - eps * eps * &n2
    };
    let as_exact = |x: f64| Rational::from_f64_exact(x);
    match (lambda, k) {
        (LineValue::Exact(l), Number::Exact(kr)) => LineValue::Exact(exact(l, kr)),
        _ => {
            let l = match lambda {
                LineValue::Exact(r) => Some(r.clone()),
                LineValue::Approx(x) => as_exact(*x),
            };
            let kr = match k {
                Number::Exact(r) => Some(r.clone()),
                Number::Approx(x) => as_exact(*x),
            };
            match (l, kr) {
                (Some(l), Some(kr)) => LineValue::Approx(exact(&l, &kr).to_f64()),
                _ => LineValue::Approx(f64::NAN),
            }
        }
    }
}

fn sort_lines(lines: &mut Vec<SpectralLine>) {
    lines.sort_by(|a, b| {
        a.value
            .cmp_value(&b.value)
            .then_with(|| a.family.cmp(&b.family))
            .then_with(|| {
                let (x, y) = (a.origin.sort_key(), b.origin.sort_key());
                x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.cmp(&y.2))
            })
    });
    // merge identical neighbours
    let mut merged: Vec<SpectralLine> = Vec::with_capacity(lines.len());
    for line in lines.drain(..) {
        if let Some(last) = merged.last_mut() {
            if last.family == line.family
                && last.value.matches(&line.value)
                && last.origin.same(&line.origin)
            {
                last.mult += line.mult;
                continue;
            }
        }
        merged.push(line);
    }
    *lines = merged;
}

/// Removes `mult` copies of `value`, preferring lines from modes with
/// k = |n| = |value|, then any matching line in sorted order.
fn subtract(lines: &mut Vec<SpectralLine>, value: &LineValue, mut mult: u64, n: i64) -> Result<()> {
    let preferred = |l: &SpectralLine| match &l.origin {
        Origin::Mode { k, n: m } => {
            m.abs() == n.abs() && k.matches(&LineValue::Exact(Rational::from_integer(n.abs())))
        }
        Origin::Fourier(_) => false,
    };
    for pass in 0..2 {
        for line in lines.iter_mut() {
            if mult == 0 {
                break;
            }
            if !line.value.matches(value) || (pass == 0 && !preferred(line)) {
                continue;
            }
            let take = line.mult.min(mult);
            line.mult -= take;
            mult -= take;
        }
    }
    lines.retain(|l| l.mult > 0);
    if mult > 0 {
        return Err(Error::NegativeMultiplicity {
            value: value.to_string(),
            missing: mult,
        });
    }
    Ok(())
}

/// Adds 2h₂(n) copies of n and removes 2h₀(n) copies of -n for n ≥ 1.
fn apply_holomorphic(lines: &mut Vec<SpectralLine>, holo: &HoloCounts) -> Result<()> {
    holo.validate()?;
    for (&n, &h2) in &holo.h2 {
        if n != 0 && h2 > 0 {
            lines.push(SpectralLine {
                value: LineValue::Exact(Rational::from_integer(n)),
                mult: 2 * h2,
                family: Family::Holomorphic,
                origin: Origin::Fourier(n),
            });
        }
    }
    sort_lines(lines);
    for (&n, &h0) in &holo.h0 {
        if n >= 1 && h0 > 0 {
            subtract(
                lines,
                &LineValue::Exact(Rational::from_integer(-n)),
                2 * h0,
                n,
            )?;
        }
    }
    Ok(())
}

/// spec*(d*_ε/ε) = ±spec*(Q±_ε) ∪ 2×spec*(-iT|ℋ²⁰) \ 2×spec*(iT|ker ∂̄_b).
pub fn virtual_spectrum(
    modes: &[SpectralMode],
    holo: &HoloCounts,
    eps: &Rational,
) -> Result<Vec<SpectralLine>> {
    let per_mode: Vec<Vec<SpectralLine>> = modes
        .par_iter()
        .map(|m| -> Result<Vec<SpectralLine>> {
            let (plus, minus) = lambda_pm(&m.k, m.n, eps)?;
            let origin = Origin::Mode {
                k: m.k_value(),
                n: m.n,
            };
            let mut out = vec![SpectralLine {
                value: plus.div(eps),
                mult: m.mult,
                family: Family::Plus,
                origin: origin.clone(),
            }];
            if !m.is_trivial() {
                out.push(SpectralLine {
                    value: minus.div(eps),
                    mult: m.mult,
                    family: Family::Minus,
                    origin,
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut lines: Vec<SpectralLine> = per_mode.into_iter().flatten().collect();
    sort_lines(&mut lines);
    apply_holomorphic(&mut lines, holo)?;
    Ok(lines)
}

/// spec*(D*) = spec*(-Δ_H) ∪ 2×spec*(-iT|ℋ²⁰) \ 2×spec*(iT|ker ∂̄_b).
pub fn dstar_limit_spectrum(
    modes: &[SpectralMode],
    holo: &HoloCounts,
) -> Result<Vec<SpectralLine>> {
    let mut lines: Vec<SpectralLine> = modes
        .iter()
        .filter(|m| !m.k_value().is_zero())
        .map(|m| SpectralLine {
            value: m.k_value().neg(),
            mult: m.mult,
            family: Family::Minus,
            origin: Origin::Mode {
                k: m.k_value(),
                n: m.n,
            },
        })
        .collect();
    sort_lines(&mut lines);
    apply_holomorphic(&mut lines, holo)?;
    Ok(lines)
}

/// spec*(Δ_H): the lines +k for nonzero k.
pub fn delta_h_lines(modes: &[SpectralMode]) -> Vec<SpectralLine> {
    let mut lines: Vec<SpectralLine> = modes
        .iter()
        .filter(|m| !m.k_value().is_zero())
        .map(|m| SpectralLine {
            value: m.k_value(),
            mult: m.mult,
            family: Family::Plus,
            origin: Origin::Mode {
                k: m.k_value(),
                n: m.n,
            },
        })
        .collect();
    sort_lines(&mut lines);
    lines
}

/// Multiset union: spec*(Δ₂) = spec*(D*) ∪ spec*(Δ_H).
pub fn delta2_spectrum(
    dstar_lines: &[SpectralLine],
    delta_h: &[SpectralLine],
) -> Vec<SpectralLine> {
    let mut lines: Vec<SpectralLine> = dstar_lines.iter().chain(delta_h).cloned().collect();
    sort_lines(&mut lines);
    lines
}

/// Σ mult·λ/|λ|^{s+1} over nonzero lines.
pub fn partial_eta(lines: &[SpectralLine], s: f64) -> f64 {
    lines
        .iter()
        .filter(|l| !l.value.is_zero())
        .map(|l| {
            let v = l.value.to_f64();
            l.mult as f64 * v.signum() / v.abs().powf(s)
        })
        .sum()
}

/// Value → total multiplicity, collapsing families and origins.
pub fn value_multiset(lines: &[SpectralLine]) -> Vec<(LineValue, u64)> {
    let mut out: Vec<(LineValue, u64)> = Vec::new();
    let mut sorted = lines.to_vec();
    sorted.sort_by(|a, b| a.value.cmp_value(&b.value));
    for l in sorted {
        match out.last_mut() {
            Some((v, m)) if v.matches(&l.value) => *m += l.mult,
            _ => out.push((l.value.clone(), l.mult)),
        }
    }
    out
}

/// The part of the multiset not cancelled by its own negation.
pub fn asymmetric_residual(lines: &[SpectralLine]) -> Vec<(LineValue, i64)> {
    let ms = value_multiset(lines);
    let mult_of = |v: &LineValue| -> u64 {
        ms.iter()
            .filter(|(w, _)| w.matches(v))
            .map(|(_, m)| *m)
            .sum()
    };
    ms.iter()
        .filter(|(v, _)| v.to_f64() > 0.0)
        .filter_map(|(v, m)| {
            let diff = *m as i64 - mult_of(&v.neg()) as i64;
            (diff != 0).then(|| (v.clone(), diff))
        })
        .collect()
}

/// Number of negative holomorphic lines; reported, not asserted.
pub fn negative_holomorphic_count(lines: &[SpectralLine]) -> u64 {
    lines
        .iter()
        .filter(|l| l.family == Family::Holomorphic && l.value.to_f64() < 0.0)
        .map(|l| l.mult)
        .sum()
}

/// A finite model of the standard sphere used as a fixture: the harmonic
/// spaces H^{p,q} with p + q ≤ `cutoff`, horizontal eigenvalue
/// k = 2pq + p + q, Fourier index |p - q| and real multiplicity
/// 2(p + q + 1) (or 2p + 1 when p = q). The normalization is a model
/// choice; only k = |n| on the CR functions H^{p,0} matters for the
/// bookkeeping.
pub fn sphere_model_modes(cutoff: i64) -> Vec<SpectralMode> {
    let mut out = Vec::new();
    for p in 0..=cutoff {
        for q in 0..=p.min(cutoff - p) {
            let k = Rational::from_integer(2 * p * q + p + q);
            let mult = if p == q { 2 * p + 1 } else { 2 * (p + q + 1) };
            out.push(SpectralMode::exact(k, p - q, mult as u64).expect("valid"));
        }
    }
    out
}
