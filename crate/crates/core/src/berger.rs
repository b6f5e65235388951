//! Left-invariant metrics on S³.
//!
//! All quantities are rational functions of λ² (written `x` below), so every
//! identity is checked exactly. A rational identity P(x)/Q(x) = 0 where the
//! cleared numerator has degree ≤ 4 is certified by five distinct samples;
//! the battery uses at least twenty.

use crate::error::{Error, Result};
use crate::exactq::{PiLaurent, Rational};

/// ∫_{S³} α₃∧α₁∧α₂ for the frame with dα₁ = α₂∧α₃ (and cyclic).
pub fn frame_volume() -> PiLaurent {
    PiLaurent::monomial(Rational::from_integer(16), 2).expect("in range")
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn positive(x: &Rational, what: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "{what} must be positive, got {x}"
        )))
    }
}

/// Parameters of the diagonal family λ₁²α₁² + λ₂²α₂² + λ₃²α₃².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergerParams {
    pub lambda2: Rational,
    pub full: Option<(Rational, Rational, Rational)>,
}

impl BergerParams {
    pub fn new(lambda2: Rational) -> Result<Self> {
        positive(&lambda2, "lambda^2")?;
        Ok(BergerParams {
            lambda2,
            full: None,
        })
    }

    pub fn full(l1: Rational, l2: Rational, l3: Rational) -> Result<Self> {
        for l in [&l1, &l2, &l3] {
            positive(l, "lambda_i^2")?;
        }
        Ok(BergerParams {
            lambda2: l2.clone(),
            full: Some((l1, l2, l3)),
        })
    }
}

/// η = (2/3)((s₁³ - 4s₁s₂)/s₃ + 9), sᵢ the elementary symmetric
/// polynomials in λ₁², λ₂², λ₃².
pub fn hitchin_eta(l1: &Rational, l2: &Rational, l3: &Rational) -> Result<Rational> {
    for l in [l1, l2, l3] {
        positive(l, "lambda_i^2")?;
    }
    let s1 = l1 + l2 + l3.clone();
    let s2 = l1 * l2 + l2 * l3 + l1 * l3;
    let s3 = l1 * l2 * l3.clone();
    let cube = &s1 * &s1 * &s1;
    let num = cube - q(4, 1) * &s1 * &s2;
    Ok(q(2, 3) * (num / s3 + q(9, 1)))
}

/// Coefficients of η(α₁² + λ²α₂² + bα₃²) as a Laurent polynomial in b:
/// returns `[c₂, c₁, c₀, c₋₁]`.
pub fn hitchin_expansion(lambda2: &Rational) -> Result<[Rational; 4]> {
    positive(lambda2, "lambda^2")?;
    let a = lambda2;
    let big_a = Rational::one() + a;
    // s₁³ - 4s₁s₂ = b³ - A b² - (A² + 4a) b + A(A² - 4a), s₃ = a b.
    let two_thirds_over_a = q(2, 3) / a.clone();
    let c2 = two_thirds_over_a.clone();
    let c1 = -(&two_thirds_over_a * &big_a);
    let c0 = &two_thirds_over_a * &(-(&big_a * &big_a) - q(4, 1) * a) + q(6, 1);
    let c_1 = &two_thirds_over_a * &(&big_a * &(&big_a * &big_a - q(4, 1) * a));
    Ok([c2, c1, c0, c_1])
}

/// η₀(α₁² + λ²α₂²) = (2/3λ²)(-λ⁴ + 3λ² - 1).
pub fn berger_eta0(lambda2: &Rational) -> Result<Rational> {
    positive(lambda2, "lambda^2")?;
    let x = lambda2;
    Ok(q(2, 3) / x.clone() * (-(x * x) + q(3, 1) * x - Rational::one()))
}

/// (R², |τ|²) = ((1+λ²)²/4λ², (1-λ²)²/4λ²).
pub fn berger_webster(lambda2: &Rational) -> Result<(Rational, Rational)> {
    positive(lambda2, "lambda^2")?;
    let x = lambda2;
    let four_x = q(4, 1) * x;
    let plus = Rational::one() + x;
    let minus = Rational::one() - x;
    Ok((&plus * &plus / &four_x, &minus * &minus / &four_x))
}

/// μ = -1 + 3(1 - λ²)²/4λ².
pub fn berger_mu(lambda2: &Rational) -> Result<Rational> {
    let (_, tau2) = berger_webster(lambda2)?;
    Ok(q(-1, 1) + q(3, 1) * tau2)
}

/// ν = -1 + 9(1 - λ²)²/4λ².
pub fn berger_nu(lambda2: &Rational) -> Result<Rational> {
    let (_, tau2) = berger_webster(lambda2)?;
    Ok(q(-1, 1) + q(9, 1) * tau2)
}

/// One row of the identity battery at a given λ².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergerRow {
    pub lambda2: Rational,
    pub eta0: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub r2: Rational,
    pub tau2: Rational,
    /// ν + 3η₀ = (1+λ²)²/4λ²
    pub sum_identity: bool,
    /// ν = 3μ + 2
    pub mu_identity: bool,
    /// ν + 3η₀ = (1/16π²)·R²·vol
    pub curvature_identity: bool,
    /// constant term in λ₃² of the three-parameter η equals η₀
    pub limit_identity: bool,
}

impl BergerRow {
    pub fn all_pass(&self) -> bool {
        self.sum_identity && self.mu_identity && self.curvature_identity && self.limit_identity
    }
}

pub fn identity_row(lambda2: &Rational) -> Result<BergerRow> {
    let eta0 = berger_eta0(lambda2)?;
    let mu = berger_mu(lambda2)?;
    let nu = berger_nu(lambda2)?;
    let (r2, tau2) = berger_webster(lambda2)?;
    let lhs = &nu + &(q(3, 1) * &eta0);
    let x = lambda2;
    let closed = (Rational::one() + x) * (Rational::one() + x) / (q(4, 1) * x);
    let local = frame_volume()
        .scale(&r2)
        .checked_mul(&PiLaurent::monomial(q(1, 16), -2)?)?;
    let [c2, c1, c0, c_1] = hitchin_expansion(lambda2)?;
    // The expansion must reproduce the closed formula at several b, and
    // its constant term is η₀.
    let mut expansion_ok = c0 == eta0;
    for b in [q(1, 2), q(3, 1), q(17, 5)] {
        let direct = hitchin_eta(&Rational::one(), lambda2, &b)?;
        let series = &c2 * &(&b * &b) + &c1 * &b + c0.clone() + &c_1 / &b;
        expansion_ok &= direct == series;
    }
    Ok(BergerRow {
        lambda2: lambda2.clone(),
        sum_identity: lhs == closed,
        mu_identity: nu == q(3, 1) * &mu + q(2, 1),
        curvature_identity: PiLaurent::rational(lhs.clone()) == local,
        limit_identity: expansion_ok,
        eta0,
        mu,
        nu,
        r2,
        tau2,
    })
}

/// Deterministic sample of distinct positive rationals: k/(j) for small
/// k, j, ordered by value.
pub fn sample_lambda2(count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    let mut den = 1i64;
    while out.len() < count {
        for num in 1..=(3 * den) {
            let r = q(num, den);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        den += 1;
    }
    out.truncate(count);
    out.sort();
    out
}
