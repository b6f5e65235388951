//! η₀ by counting holomorphic sections.
//!
//! The holomorphic part of the virtual spectrum contributes
//! Σ_{n≠0} sgn(n) χ∂̄(L⁻ⁿ) |n|⁻ˢ, where the orbifold Riemann–Roch formula
//! gives χ∂̄(L⁻ⁿ) as an affine function of n plus a periodic correction.
//! The affine part regularizes through ζ(-1), the periodic part through
//! ζ(0, x) = 1/2 - x, and η₀ = 1 + 2·(regularized sum).

use num_integer::Integer;
use serde::Serialize;

use crate::exactq::{frac, hurwitz_zeta_at_zero, mod_inverse, zeta_at_minus_one, Rational};
use crate::seifert::{ConePoint, SeifertData};

/// Sign convention for the fractional part in the Riemann–Roch correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FracSign {
    /// frac(+n·β·ρ'/α): the convention under which the counting route
    /// reproduces η₀ = 1 + d/3 + 4Σs.
    Plus,
    /// frac(-n·β·ρ'/α).
    Minus,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// β·ρ' mod α with ρ' = ρ⁻¹ mod α.
fn fiber_residue(c: &ConePoint) -> i64 {
    let inv = mod_inverse(c.rho, c.alpha as u64).expect("validated cone point") as i128;
    ((c.beta as i128 * inv).rem_euclid(c.alpha as i128)) as i64
}

/// Mean-zero periodic part of one cone point's correction at Fourier index n.
fn cone_periodic(c: &ConePoint, n: i64, sign: FracSign) -> Rational {
    let s = match sign {
        FracSign::Plus => 1,
        FracSign::Minus => -1,
    };
    let num = (s * n as i128 * fiber_residue(c) as i128).rem_euclid(c.alpha as i128) as i64;
    q(c.alpha - 1, 2 * c.alpha) - frac(&q(num, c.alpha))
}

/// χ∂̄(L⁻ⁿ) = χ/2 - nd + Σᵢ [(1/2)(1 - 1/αᵢ) - frac(n·βᵢρ'ᵢ/αᵢ)].
pub fn chi_del(data: &SeifertData, n: i64) -> Rational {
    chi_del_with(data, n, FracSign::Plus)
}

pub fn chi_del_with(data: &SeifertData, n: i64, sign: FracSign) -> Rational {
    &data.chi_orb / &q(2, 1) - Rational::from_integer(n) * &data.degree
        + periodic_component(data, n, sign)
}

/// The periodic, mean-zero component g(n) of χ∂̄(L⁻ⁿ).
pub fn periodic_component(data: &SeifertData, n: i64, sign: FracSign) -> Rational {
    data.cone_points
        .iter()
        .map(|c| cone_periodic(c, n, sign))
        .sum()
}

/// Result of the regularized evaluation at s = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaBreakdown {
    pub affine_part: Rational,
    pub periodic_part: Rational,
    pub total: Rational,
}

/// Σ_{n≠0} -d|n| at s = 0, i.e. -2d·ζ(-1) = d/6.
fn affine_part(data: &SeifertData) -> Rational {
    q(-2, 1) * &data.degree * zeta_at_minus_one()
}

/// Σ_{r=1}^{A} (h(r) - h(-r))·ζ(0, r/A) for an A-periodic h.
fn regularized_odd_sum(period: i64, h: impl Fn(i64) -> Rational) -> Rational {
    (1..=period)
        .map(|r| {
            let diff = h(r) - h(-r);
            if diff.is_zero() {
                return diff;
            }
            diff * hurwitz_zeta_at_zero(&q(r, period)).expect("r/A in (0, 1]")
        })
        .sum()
}

/// Regularized Σ_{n≠0} sgn(n) χ∂̄(L⁻ⁿ)|n|⁻ˢ at s = 0, evaluating the
/// periodic part one cone point at a time with period αᵢ.
pub fn regularized_eta_difference(data: &SeifertData) -> EtaBreakdown {
    regularized_eta_difference_with(data, FracSign::Plus)
}

pub fn regularized_eta_difference_with(data: &SeifertData, sign: FracSign) -> EtaBreakdown {
    let periodic: Rational = data
        .cone_points
        .iter()
        .map(|c| regularized_odd_sum(c.alpha, |n| cone_periodic(c, n, sign)))
        .sum();
    breakdown(affine_part(data), periodic)
}

/// Same value, but summing the full periodic component over one common
/// period A = lcm(αᵢ).
pub fn regularized_eta_difference_lcm(data: &SeifertData) -> EtaBreakdown {
    let period = common_period(data);
    let periodic = regularized_odd_sum(period, |n| periodic_component(data, n, FracSign::Plus));
    breakdown(affine_part(data), periodic)
}

pub fn common_period(data: &SeifertData) -> i64 {
    data.cone_points
        .iter()
        .fold(1i64, |acc, c| acc.lcm(&c.alpha))
}

fn breakdown(affine_part: Rational, periodic_part: Rational) -> EtaBreakdown {
    EtaBreakdown {
        total: &affine_part + &periodic_part,
        affine_part,
        periodic_part,
    }
}

/// η₀ = 1 + 2·(regularized holomorphic difference).
pub fn eta0_via_rrk(data: &SeifertData) -> Rational {
    Rational::one() + q(2, 1) * regularized_eta_difference(data).total
}

/// Dimensions (h₀, h₂) of CR functions with iTf = -nf and holomorphic
/// (2,0)-forms with iTα = -nα on the standard sphere.
pub fn sphere_h_counts(n: i64) -> (u64, u64) {
    let h0 = if n >= 0 { (n + 1) as u64 } else { 0 };
    let h2 = if n >= 2 { (n - 1) as u64 } else { 0 };
    (h0, h2)
}
