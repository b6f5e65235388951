//! Filling obstructions and lens-space cross-checks.
//!
//! If M bounds a complex hyperbolic 4-manifold N then ν(M) = -χ(N) + 3τ(N),
//! so ν must be an integer. On constant-curvature data this reduces to the
//! integrality of χ²/4d.

use serde::Serialize;

use crate::dedekind::dedekind_rademacher;
use crate::error::{Error, Result};
use crate::exactq::{Integral, Number, Rational};
use crate::invariants::{eta_round, nu, nu_const};
use crate::report::ReportRow;
use crate::seifert::SeifertData;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Obstructed,
}

impl Verdict {
    fn from_integer(x: &Rational) -> Self {
        if x.is_integer() {
            Verdict::Pass
        } else {
            Verdict::Obstructed
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityCheck {
    pub verdict: Verdict,
    pub value: Rational,
}

/// Is ν (constant-curvature path) an integer?
pub fn check_integer_nu(data: &SeifertData) -> IntegralityCheck {
    let value = nu_const(data);
    IntegralityCheck {
        verdict: Verdict::from_integer(&value),
        value,
    }
}

/// Is χ²/4d an integer?
pub fn check_chi2_over_4d(chi: &Rational, d: &Rational) -> Result<IntegralityCheck> {
    if !d.is_negative() {
        return Err(Error::NotPseudoconvex(format!(
            "degree must be negative, got {d}"
        )));
    }
    let value = chi * chi / (q(4, 1) * d);
    Ok(IntegralityCheck {
        verdict: Verdict::from_integer(&value),
        value,
    })
}

/// ν = -χ(N) + 3τ(N).
pub fn filling_identity(chi_n: i64, tau_n: i64, nu: &Rational) -> bool {
    *nu == Rational::from_integer(3 * tau_n - chi_n)
}

/// Rational roots of a·x² + b·x + c (a ≠ 0), ascending, without repeats.
pub fn rational_quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
    assert!(!a.is_zero(), "leading coefficient must be nonzero");
    let disc = b * b - q(4, 1) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let Some(root) = disc.sqrt_exact() else {
        return Vec::new();
    };
    let two_a = q(2, 1) * a;
    let mut out = vec![
        (-b.clone() - &root) / two_a.clone(),
        (-b.clone() + root) / two_a,
    ];
    out.sort();
    out.dedup();
    out
}

/// All rational d < 0 with χ + 3 = d + 3 + χ²/4d, i.e. the disk bundles of
/// degree d over a surface of Euler characteristic χ (τ = -1) whose boundary
/// passes the filling identity. Clearing 4d gives 4d² - 4χd + χ² = 0.
pub fn disk_bundle_solve(chi: i64) -> Result<Vec<Rational>> {
    if chi >= 0 || chi % 2 != 0 {
        return Err(Error::DomainError(format!(
            "chi must be negative and even, got {chi}"
        )));
    }
    let chi = Rational::from_integer(chi);
    let roots = rational_quadratic_roots(&q(4, 1), &(q(-4, 1) * &chi), &(&chi * &chi));
    Ok(roots.into_iter().filter(|d| d.is_negative()).collect())
}

/// Right-hand side of χ(N) - 3τ(N) ≥ -ν(M).
pub fn miyaoka_yau_bound(data: &SeifertData, int_r2_base: Option<&Integral>) -> Result<Number> {
    Ok(match nu(data, int_r2_base)? {
        Number::Exact(r) => Number::Exact(-r),
        Number::Approx(x) => Number::Approx(-x),
    })
}

/// τ_cusp = τ - (1/3) Σ [Σᵢ]·[Σᵢ].
pub fn cusp_signature(tau_n: i64, self_intersections: &[i64]) -> Rational {
    let total: i64 = self_intersections.iter().sum();
    Rational::from_integer(tau_n) - q(total, 3)
}

/// ν(L(p, q)) = -1/p + 12 s(p, q, 1).
pub fn lens_nu_direct(p: i64, qq: i64) -> Result<Rational> {
    if p < 1 {
        return Err(Error::DomainError(format!("p must be positive, got {p}")));
    }
    let s = dedekind_rademacher(p as u64, qq, 1)?;
    Ok(q(-1, p) + q(12, 1) * s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensReport {
    pub p: i64,
    pub q: i64,
    pub nu: Rational,
    pub eta_round: Rational,
    pub nu_direct: Rational,
    pub eta_direct: Rational,
    pub rows: Vec<ReportRow>,
}

impl LensReport {
    pub fn identity_holds(&self) -> bool {
        !self.rows[0].status.is_failure()
    }
}

/// Hard identity ν + 3η_round = -1/p, plus the two closed-form comparisons
/// (ν against -1/p + 12s(p,q,1), η_round against -4s(p,q,1)) reported only.
pub fn lens_report(p: i64, qq: i64) -> Result<LensReport> {
    let data = SeifertData::lens_space(p, qq)?;
    let nu = nu_const(&data);
    let eta = eta_round(&data);
    let s = dedekind_rademacher(p as u64, qq, 1)?;
    let nu_direct = lens_nu_direct(p, qq)?;
    let eta_direct = q(-4, 1) * s;
    let lhs = &nu + &(q(3, 1) * &eta);
    let rows = vec![
        ReportRow::exact_eq(format!("L({p},{qq}) nu+3*eta_round=-1/p"), &lhs, &q(-1, p)),
        ReportRow::report(
            format!("L({p},{qq}) nu vs -1/p+12s(p,q,1)"),
            &nu,
            &nu_direct,
        ),
        ReportRow::report(
            format!("L({p},{qq}) eta_round vs -4s(p,q,1)"),
            &eta,
            &eta_direct,
        ),
    ];
    Ok(LensReport {
        p,
        q: qq,
        nu,
        eta_round: eta,
        nu_direct,
        eta_direct,
        rows,
    })
}

/// Admissible lens parameters: 1 ≤ q < p, gcd(q, p) = gcd(q - 1, p) = 1.
pub fn admissible_lens_pairs(pmax: i64) -> Vec<(i64, i64)> {
    use num_integer::Integer;
    let mut out = Vec::new();
    for p in 2..=pmax {
        for qq in 1..p {
            if qq.gcd(&p) == 1 && (qq - 1).gcd(&p) == 1 {
                out.push((p, qq));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsEpstein {
    pub mu: Rational,
    pub nu: Rational,
    pub three_mu_integer: Verdict,
}

/// μ = χ²/4d and ν = -χ²/4d - d - 3 on a cone-free bundle.
pub fn burns_epstein(chi: &Rational, d: &Rational) -> Result<BurnsEpstein> {
    let check = check_chi2_over_4d(chi, d)?;
    let mu = check.value;
    let nu = -mu.clone() - d.clone() - q(3, 1);
    let three_mu = q(3, 1) * &mu;
    Ok(BurnsEpstein {
        three_mu_integer: Verdict::from_integer(&three_mu),
        mu,
        nu,
    })
}

/// Obstruction rows for one data set.
pub fn obstruction_rows(data: &SeifertData) -> Vec<ReportRow> {
    let check = check_integer_nu(data);
    let bound = miyaoka_yau_bound(data, None).expect("constant curvature is exact");
    let mut rows = vec![
        ReportRow {
            check: "nu integral".into(),
            lhs: check.value.to_string(),
            rhs: "integer".into(),
            status: crate::report::Status::report(check.verdict == Verdict::Pass),
        },
        ReportRow::exact(
            "miyaoka-yau rhs = -nu",
            &bound,
            &(-check.value.clone()),
            bound == Number::Exact(-check.value.clone()),
        ),
    ];
    if data.cone_points.is_empty() {
        if let Ok(be) = burns_epstein(&data.chi_orb, &data.degree) {
            rows.push(ReportRow::exact_eq(
                "burns-epstein nu = nu",
                &be.nu,
                &check.value,
            ));
        }
    }
    rows
}
