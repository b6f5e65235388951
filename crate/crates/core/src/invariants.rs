//! The headline invariants of a CR-Seifert manifold and the relations
//! between them: ν, the renormalized η₀, the contact η(D*), the η of the
//! metric family t²θ² + γ, its diabatic expansion in ε = t⁻², and the zeta
//! corrections ζ(Δ_H)(0) and ζ(Q⁺_ε)(0).

use crate::dedekind::{dedekind_fast, reduce_to_classical};
use crate::error::{Error, Result};
use crate::exactq::{Integral, LaurentEps, Number, PiLaurent, Rational};
use crate::seifert::{GeomIntegrals, SeifertData};

/// t² of the round metric under the fiber-length-2π normalization.
pub const ROUND_T2: i64 = 2;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn pi_pow(c: Rational, e: i32) -> PiLaurent {
    PiLaurent::monomial(c, e).expect("exponent within bounds")
}

/// Σⱼ s(αⱼ, ρⱼ, βⱼ) over the cone points, via the classical reduction.
pub fn dedekind_total(data: &SeifertData) -> Rational {
    data.cone_points
        .iter()
        .map(|c| {
            let (alpha, cc) = reduce_to_classical(c.alpha as u64, c.rho, c.beta)
                .expect("cone points are validated at construction");
            dedekind_fast(cc, alpha).expect("coprime after reduction")
        })
        .sum()
}

/// η₀ = 1 + d/3 + 4 Σ s(αⱼ, ρⱼ, βⱼ).
pub fn eta0(data: &SeifertData) -> Rational {
    Rational::one() + &data.degree / &q(3, 1) + q(4, 1) * dedekind_total(data)
}

/// ν = -d - 3 - 12 Σ s + (1/8π) ∫_Σ R² dθ.
///
/// Without a supplied base integral the curvature is taken constant, which
/// makes the last term -χ²/4d.
pub fn nu(data: &SeifertData, int_r2_over_base: Option<&Integral>) -> Result<Number> {
    let top = -data.degree.clone() - q(3, 1) - q(12, 1) * dedekind_total(data);
    match int_r2_over_base {
        None => Ok(Number::Exact(top + curvature_term_const(data))),
        Some(Integral::Exact(p)) => {
            let term = p.checked_mul(&pi_pow(q(1, 8), -1))?;
            let r = term
                .as_rational()
                .ok_or_else(|| Error::ExponentMismatch(term.to_string()))?;
            Ok(Number::Exact(top + r))
        }
        Some(Integral::Approx(x)) => Ok(Number::Approx(
            top.to_f64() + x / (8.0 * std::f64::consts::PI),
        )),
    }
}

/// -χ²/4d, the curvature term of ν on a constant-curvature base.
fn curvature_term_const(data: &SeifertData) -> Rational {
    -(&data.chi_orb * &data.chi_orb) / (q(4, 1) * &data.degree)
}

/// ν on a constant-curvature base, exactly.
pub fn nu_const(data: &SeifertData) -> Rational {
    match nu(data, None) {
        Ok(Number::Exact(r)) => r,
        _ => unreachable!("constant-curvature path is exact"),
    }
}

/// ν = -3η₀ + (1/16π²) ∫_M R² θ∧dθ.
pub fn nu_from_eta0(eta0: &Rational, int_r2: &Integral) -> Result<Number> {
    match int_r2 {
        Integral::Exact(p) => {
            let v =
                &PiLaurent::rational(q(-3, 1) * eta0) + &p.checked_mul(&pi_pow(q(1, 16), -2))?;
            v.as_rational()
                .map(Number::Exact)
                .ok_or_else(|| Error::ExponentMismatch(v.to_string()))
        }
        Integral::Approx(x) => Ok(Number::Approx(
            -3.0 * eta0.to_f64() + x / (16.0 * std::f64::consts::PI.powi(2)),
        )),
    }
}

/// ζ(Δ_H)(0) = (1/512) ∫_M R² θ∧dθ.
pub fn zeta_delta_h(int_r2: &PiLaurent) -> PiLaurent {
    int_r2.scale(&q(1, 512))
}

/// η(D*) = η₀ - ζ(Δ_H)(0) on a constant-curvature base.
pub fn eta_dstar(data: &SeifertData) -> PiLaurent {
    &PiLaurent::rational(eta0(data)) - &zeta_delta_h(&data.geom_integrals_const().int_r2)
}

/// η of the metric t²θ² + γ for a constant-curvature base:
/// (1/3)(d + 3 + 2d(πt²χ/V - π²t⁴d²/V²)) + 4Σs with V = -2πd the base
/// area. Evaluated in π-Laurent arithmetic; the π's cancel.
pub fn ouyang_eta(data: &SeifertData, t2: &Rational) -> Result<Rational> {
    if !t2.is_positive() {
        return Err(Error::DomainError(format!(
            "t^2 must be positive, got {t2}"
        )));
    }
    let d = &data.degree;
    let area = pi_pow(q(-2, 1) * d, 1);
    let pi_over_v = pi_pow(Rational::one(), 1).checked_div_monomial(&area)?;
    let first = pi_over_v.scale(&(t2 * &data.chi_orb));
    let second = pi_over_v.checked_mul(&pi_over_v)?.scale(&(t2 * t2 * d * d));
    let bracket = &PiLaurent::rational(d + q(3, 1)) + &(&first - &second).scale(&(q(2, 1) * d));
    let v = &bracket.scale(&q(1, 3)) + &PiLaurent::rational(q(4, 1) * dedekind_total(data));
    v.as_rational()
        .ok_or_else(|| Error::ExponentMismatch(v.to_string()))
}

/// η on the round-metric parameter t² = 2.
pub fn eta_round(data: &SeifertData) -> Rational {
    ouyang_eta(data, &Rational::from_integer(ROUND_T2)).expect("t^2 = 2 is admissible")
}

/// c₀ + c₁t² + c₂t⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuyangEta {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl OuyangEta {
    /// Recovers the coefficients from [`ouyang_eta`] by interpolating at
    /// t² = 1, 2, 3.
    pub fn extract(data: &SeifertData) -> Result<Self> {
        let y: Vec<Rational> = (1..=3)
            .map(|t| ouyang_eta(data, &Rational::from_integer(t)))
            .collect::<Result<_>>()?;
        // Newton forward differences on nodes 1, 2, 3.
        let d1 = &y[1] - &y[0];
        let d2 = &y[2] - &(q(2, 1) * &y[1]) + &y[0];
        let c2 = &d2 / &q(2, 1);
        let c1 = &d1 - &(q(3, 1) * &c2);
        let c0 = &y[0] - &c1 - &c2;
        Ok(OuyangEta { c0, c1, c2 })
    }

    pub fn eval(&self, t2: &Rational) -> Rational {
        &self.c0 + &(&self.c1 * t2) + &self.c2 * &(t2 * t2)
    }
}

/// η(h_ε) = Σ ηᵢ εⁱ with ε = t⁻², read off the t²-polynomial.
pub fn diabatic_expansion(data: &SeifertData) -> Result<LaurentEps> {
    let poly = OuyangEta::extract(data)?;
    let mut out = LaurentEps::zero();
    out.set(-2, PiLaurent::rational(poly.c2))?;
    out.set(-1, PiLaurent::rational(poly.c1))?;
    out.set(0, PiLaurent::rational(poly.c0))?;
    Ok(out)
}

/// ζ(Q⁺_ε)(0) = (1/48π²ε²)(∫θ∧dθ - 2ε∫Rθ∧dθ + ε²∫|τ|²θ∧dθ).
pub fn zeta_q_expansion(g: &GeomIntegrals) -> Result<LaurentEps> {
    let k = pi_pow(q(1, 48), -2);
    let mut out = LaurentEps::zero();
    out.set(-2, g.vol.checked_mul(&k)?)?;
    out.set(-1, g.int_r.checked_mul(&k)?.scale(&q(-2, 1)))?;
    out.set(0, g.int_tau2.checked_mul(&k)?)?;
    Ok(out)
}

/// ζ₀(Q): the ε⁰ coefficient of ζ(Q⁺_ε)(0) - ζ(Q⁻_ε)(0) = 2ζ(Q⁺_ε)(0).
pub fn zeta0_q(g: &GeomIntegrals) -> Result<PiLaurent> {
    Ok(zeta_q_expansion(g)?.coeff(0).scale(&q(2, 1)))
}

/// ν = -3η(D*) + (1/16π² - 3/512) ∫R²θ∧dθ, checked exactly.
pub fn check_cor15(data: &SeifertData) -> bool {
    let int_r2 = data.geom_integrals_const().int_r2;
    let coeff = &pi_pow(q(1, 16), -2) - &PiLaurent::rational(q(3, 512));
    let rhs = match coeff.checked_mul(&int_r2) {
        Ok(t) => &eta_dstar(data).scale(&q(-3, 1)) + &t,
        Err(_) => return false,
    };
    rhs == PiLaurent::rational(nu_const(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{random_data, ConePoint};
    use rand::SeedableRng;

    fn s3() -> SeifertData {
        SeifertData::sphere()
    }

    fn l32() -> SeifertData {
        SeifertData::lens_space(3, 2).unwrap()
    }

    #[test]
    fn eta0_examples() {
        assert_eq!(eta0(&s3()), q(2, 3));
        assert_eq!(eta0(&l32()), q(4, 3));
        let d = SeifertData::new(q(-2, 1), q(2, 1), vec![]).unwrap();
        assert_eq!(eta0(&d), q(1, 3));
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_const(&s3()), q(-1, 1));
        assert_eq!(nu_const(&l32()), q(-11, 3));
        let d =
            SeifertData::new(q(-1, 1), q(3, 2), vec![ConePoint::new(2, 1, 1).unwrap()]).unwrap();
        assert_eq!(nu_const(&d), q(-23, 16));
    }

    #[test]
    fn nu_general_path() {
        // Constant curvature: ∫_Σ R² dθ = R²·(-2πd) = 8π on S³.
        let exact = Integral::Exact(pi_pow(q(8, 1), 1));
        assert_eq!(nu(&s3(), Some(&exact)).unwrap(), Number::Exact(q(-1, 1)));
        let approx = Integral::Approx(8.0 * std::f64::consts::PI);
        assert!((nu(&s3(), Some(&approx)).unwrap().to_f64() + 1.0).abs() < 1e-12);
        let wrong = Integral::Exact(pi_pow(q(1, 1), 2));
        assert!(matches!(
            nu(&s3(), Some(&wrong)),
            Err(Error::ExponentMismatch(_))
        ));
    }

    #[test]
    fn nu_from_eta0_examples() {
        let i = |c: Rational| Integral::Exact(pi_pow(c, 2));
        assert_eq!(
            nu_from_eta0(&q(2, 3), &i(q(16, 1))).unwrap(),
            Number::Exact(q(-1, 1))
        );
        assert_eq!(
            nu_from_eta0(&q(4, 3), &i(q(16, 3))).unwrap(),
            Number::Exact(q(-11, 3))
        );
        assert_eq!(
            nu_from_eta0(&Rational::one(), &Integral::Exact(PiLaurent::zero())).unwrap(),
            Number::Exact(q(-3, 1))
        );
        assert!(matches!(
            nu_from_eta0(&Rational::one(), &Integral::Exact(pi_pow(q(1, 1), 1))),
            Err(Error::ExponentMismatch(_))
        ));
        let f = nu_from_eta0(
            &q(2, 3),
            &Integral::Approx(16.0 * std::f64::consts::PI.powi(2)),
        )
        .unwrap();
        assert!((f.to_f64() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn eta_dstar_examples() {
        assert_eq!(eta_dstar(&s3()).to_string(), "2/3 - 1/32*pi^2");
        assert_eq!(eta_dstar(&l32()).to_string(), "4/3 - 1/96*pi^2");
        let flat = SeifertData::new(q(-1, 1), Rational::zero(), vec![]).unwrap();
        assert_eq!(eta_dstar(&flat), PiLaurent::rational(eta0(&flat)));
    }

    #[test]
    fn zeta_delta_h_examples() {
        assert_eq!(zeta_delta_h(&pi_pow(q(16, 1), 2)), pi_pow(q(1, 32), 2));
        assert!(zeta_delta_h(&PiLaurent::zero()).is_zero());
        assert_eq!(zeta_delta_h(&pi_pow(q(16, 3), 2)), pi_pow(q(1, 96), 2));
    }

    #[test]
    fn ouyang_examples() {
        assert_eq!(ouyang_eta(&s3(), &q(2, 1)).unwrap(), Rational::zero());
        for (p, qq) in [(3, 2), (5, 2), (7, 3), (11, 5)] {
            let l = SeifertData::lens_space(p, qq).unwrap();
            let expect = Rational::one() - q(1, p) + q(4, 1) * dedekind_total(&l);
            assert_eq!(eta_round(&l), expect);
        }
        assert_eq!(eta_round(&l32()), q(10, 9));
        assert!(ouyang_eta(&s3(), &Rational::zero()).is_err());
    }

    #[test]
    fn ouyang_polynomial_closed_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let d = random_data(&mut rng, 30, 3);
            let p = OuyangEta::extract(&d).unwrap();
            assert_eq!(p.c0, eta0(&d));
            assert_eq!(p.c1, -(&d.chi_orb / &q(3, 1)));
            assert_eq!(p.c2, -(&d.degree / &q(6, 1)));
            let t2 = q(7, 5);
            assert_eq!(p.eval(&t2), ouyang_eta(&d, &t2).unwrap());
        }
    }

    #[test]
    fn diabatic_examples() {
        let e = diabatic_expansion(&s3()).unwrap();
        assert_eq!(e.coeff(-2), PiLaurent::rational(q(1, 6)));
        assert_eq!(e.coeff(-1), PiLaurent::rational(q(-2, 3)));
        assert_eq!(e.coeff(0), PiLaurent::rational(q(2, 3)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let d = random_data(&mut rng, 30, 3);
            let e = diabatic_expansion(&d).unwrap();
            assert!(e.support().all(|i| (-2..=0).contains(&i)));
            assert!(e.coeff(1).is_zero() && e.coeff(2).is_zero());
            let vol = d.geom_integrals_const().vol;
            let ratio = e.coeff(-2).checked_div_monomial(&vol).unwrap();
            assert_eq!(ratio, pi_pow(q(1, 24), -2));
        }
    }

    #[test]
    fn zeta_q_examples() {
        let g = s3().geom_integrals_const();
        let z = zeta_q_expansion(&g).unwrap();
        assert!(z.coeff(0).is_zero());
        assert_eq!(z.coeff(-2), PiLaurent::rational(q(1, 12)));
        let mut torsion = g.clone();
        torsion.int_tau2 = pi_pow(q(24, 1), 2);
        assert_eq!(
            zeta0_q(&torsion).unwrap(),
            PiLaurent::rational(Rational::one())
        );
    }

    #[test]
    fn cross_relations_on_random_data() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let d = random_data(&mut rng, 40, 4);
            let g = d.geom_integrals_const();
            assert_eq!(
                nu_from_eta0(&eta0(&d), &Integral::Exact(g.int_r2.clone())).unwrap(),
                Number::Exact(nu_const(&d))
            );
            assert_eq!(
                PiLaurent::rational(eta0(&d)),
                &eta_dstar(&d) + &zeta_delta_h(&g.int_r2)
            );
            assert!(check_cor15(&d));
        }
        assert!(check_cor15(&s3()));
        assert!(check_cor15(&l32()));
    }
}
