//! Dedekind–Rademacher sums
//!
//! s(α, ρ, β) = (1/4α) Σ_{k=1}^{α-1} cot(kρπ/α) cot(kβπ/α)
//!
//! computed three ways: the sawtooth sum Σ ((kρ/α))((kβ/α)) (the defining
//! exact route), the Euclidean reciprocity recursion for the classical sum
//! s(c, α) = s(α, 1, c), and the literal cotangent sum in floating point.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactq::{mod_inverse, Rational};

fn check_coprime(alpha: u64, x: i64) -> Result<()> {
    if alpha == 0 {
        return Err(Error::DomainError("alpha must be positive".into()));
    }
    if alpha == 1 {
        return Ok(());
    }
    if (x.rem_euclid(alpha as i64) as u64).gcd(&alpha) != 1 {
        return Err(Error::NonCoprime { a: x, alpha });
    }
    Ok(())
}

/// Sawtooth evaluation of s(α, ρ, β).
///
/// With rₖ = kρ mod α and r'ₖ = kβ mod α, both permutations of 1..α-1, the
/// sum Σ (rₖ/α - 1/2)(r'ₖ/α - 1/2) collapses to Σ rₖr'ₖ / α² - (α-1)/4, so
/// only an integer accumulator is needed.
pub fn dedekind_rademacher(alpha: u64, rho: i64, beta: i64) -> Result<Rational> {
    check_coprime(alpha, rho)?;
    check_coprime(alpha, beta)?;
    if alpha == 1 {
        return Ok(Rational::zero());
    }
    let a = alpha as u128;
    let rho = rho.rem_euclid(alpha as i64) as u128;
    let beta = beta.rem_euclid(alpha as i64) as u128;
    let (mut r1, mut r2) = (0u128, 0u128);
    let mut acc: u128 = 0;
    for _ in 1..alpha {
        r1 += rho;
        if r1 >= a {
            r1 -= a;
        }
        r2 += beta;
        if r2 >= a {
            r2 -= a;
        }
        acc += r1 * r2;
    }
    let acc = Rational::from(num_bigint::BigInt::from(acc));
    let a2 = Rational::from(num_bigint::BigInt::from(a * a));
    Ok(acc / a2 - Rational::new(alpha as i64 - 1, 4))
}

/// Rewrites s(α, ρ, β) as the classical s(α, 1, c) with c = β·ρ⁻¹ mod α.
pub fn reduce_to_classical(alpha: u64, rho: i64, beta: i64) -> Result<(u64, i64)> {
    check_coprime(alpha, rho)?;
    check_coprime(alpha, beta)?;
    if alpha == 1 {
        return Ok((1, 0));
    }
    let inv = mod_inverse(rho, alpha)? as i128;
    let c = ((beta as i128) * inv).rem_euclid(alpha as i128) as i64;
    Ok((alpha, c))
}

/// Classical Dedekind sum s(c, α) = Σ ((k/α))((kc/α)) by the reciprocity
/// law s(b, c) + s(c, b) = -1/4 + (b/c + c/b + 1/(bc))/12.
pub fn dedekind_fast(c: i64, alpha: u64) -> Result<Rational> {
    check_coprime(alpha, c)?;
    let mut sign = Rational::one();
    let mut total = Rational::zero();
    let mut b = c.rem_euclid(alpha as i64) as i128;
    let mut m = alpha as i128;
    // Invariant: s(c, α) = total + sign · s(b, m), gcd(b, m) = 1, 0 <= b < m.
    while b != 0 {
        let (bq, mq) = (
            Rational::from(num_bigint::BigInt::from(b)),
            Rational::from(num_bigint::BigInt::from(m)),
        );
        let twelfth = Rational::new(1, 12);
        let recip = Rational::new(-1, 4)
            + twelfth * (&bq / &mq + &mq / &bq + (bq.clone() * &mq).recip().expect("nonzero"));
        total += &sign * &recip;
        sign = -sign;
        let next = m.rem_euclid(b);
        m = b;
        b = next;
    }
    Ok(total)
}

/// Literal cotangent sum (1/4α) Σ cot(kρπ/α) cot(kβπ/α).
pub fn dedekind_float_oracle(alpha: u64, rho: i64, beta: i64) -> Result<f64> {
    check_coprime(alpha, rho)?;
    check_coprime(alpha, beta)?;
    let a = alpha as f64;
    let cot = |x: f64| x.cos() / x.sin();
    let sum: f64 = (1..alpha)
        .map(|k| {
            let kr = ((k as i128 * rho as i128).rem_euclid(alpha as i128)) as f64;
            let kb = ((k as i128 * beta as i128).rem_euclid(alpha as i128)) as f64;
            cot(kr * std::f64::consts::PI / a) * cot(kb * std::f64::consts::PI / a)
        })
        .sum();
    Ok(sum / (4.0 * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Independent sawtooth oracle in plain rational arithmetic.
    fn sawtooth_brute(alpha: u64, rho: i64, beta: i64) -> Rational {
        let saw = |x: Rational| -> Rational {
            if x.is_integer() {
                Rational::zero()
            } else {
                crate::exactq::frac(&x) - q(1, 2)
            }
        };
        (1..alpha as i64)
            .map(|k| saw(q(k * rho, alpha as i64)) * saw(q(k * beta, alpha as i64)))
            .sum()
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(dedekind_rademacher(1, 1, 1).unwrap(), Rational::zero());
        assert_eq!(dedekind_rademacher(2, 1, 1).unwrap(), Rational::zero());
        assert_eq!(sawtooth_brute(3, 1, 1), q(1, 18));
        assert_eq!(dedekind_rademacher(3, 1, 1).unwrap(), q(1, 18));
        assert_eq!(sawtooth_brute(5, 1, 1), q(1, 5));
        assert_eq!(dedekind_rademacher(5, 1, 1).unwrap(), q(1, 5));
        assert_eq!(sawtooth_brute(3, 2, 1), q(-1, 18));
        assert_eq!(dedekind_rademacher(3, 2, 1).unwrap(), q(-1, 18));
    }

    #[test]
    fn closed_form_for_unit_arguments() {
        for a in 2..40u64 {
            let expect = q(((a - 1) * (a - 2)) as i64, 12 * a as i64);
            assert_eq!(dedekind_rademacher(a, 1, 1).unwrap(), expect);
        }
    }

    #[test]
    fn non_coprime_rejected() {
        assert!(matches!(
            dedekind_rademacher(4, 2, 1),
            Err(Error::NonCoprime { .. })
        ));
        assert!(matches!(dedekind_fast(3, 6), Err(Error::NonCoprime { .. })));
        assert!(matches!(
            dedekind_float_oracle(6, 1, 4),
            Err(Error::NonCoprime { .. })
        ));
        assert!(reduce_to_classical(9, 3, 1).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_classical(3, 2, 2).unwrap(), (3, 1));
        assert_eq!(reduce_to_classical(7, 1, 10).unwrap(), (7, 3));
        assert_eq!(reduce_to_classical(5, 3, 2).unwrap(), (5, 4));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(dedekind_fast(1, 3).unwrap(), q(1, 18));
        assert_eq!(dedekind_fast(1, 1).unwrap(), Rational::zero());
        assert_eq!(sawtooth_brute(5, 1, 2), Rational::zero());
        assert_eq!(dedekind_fast(2, 5).unwrap(), Rational::zero());
        assert_eq!(dedekind_fast(-1, 3).unwrap(), q(-1, 18));
    }

    #[test]
    fn float_oracle_examples() {
        assert!((dedekind_float_oracle(3, 1, 1).unwrap() - 1.0 / 18.0).abs() < 1e-12);
        assert!(dedekind_float_oracle(2, 1, 1).unwrap().abs() < 1e-12);
        assert!((dedekind_float_oracle(5, 1, 1).unwrap() - 0.2).abs() < 1e-12);
    }

    fn coprime_triple(max: u64) -> impl Strategy<Value = (u64, i64, i64)> {
        (2..max, any::<i64>(), any::<i64>()).prop_filter_map("coprime", |(a, r, b)| {
            let r = r % 10_000;
            let b = b % 10_000;
            let ok = |x: i64| (x.rem_euclid(a as i64) as u64).gcd(&a) == 1;
            (ok(r) && ok(b)).then_some((a, r, b))
        })
    }

    proptest! {
        #[test]
        fn sawtooth_matches_brute((a, r, b) in coprime_triple(60)) {
            prop_assert_eq!(dedekind_rademacher(a, r, b).unwrap(), sawtooth_brute(a, r, b));
        }

        #[test]
        fn symmetric_and_unit_invariant((a, r, b) in coprime_triple(200), m in 1i64..1000) {
            let s = dedekind_rademacher(a, r, b).unwrap();
            prop_assert_eq!(dedekind_rademacher(a, b, r).unwrap(), s.clone());
            prop_assume!((m as u64).gcd(&a) == 1);
            prop_assert_eq!(dedekind_rademacher(a, m * r, m * b).unwrap(), s.clone());
            prop_assert_eq!(dedekind_rademacher(a, r + a as i64, b - 3 * a as i64).unwrap(), s);
        }

        #[test]
        fn fast_matches_sawtooth((a, r, b) in coprime_triple(3000)) {
            let (alpha, c) = reduce_to_classical(a, r, b).unwrap();
            prop_assert_eq!(dedekind_fast(c, alpha).unwrap(), dedekind_rademacher(a, r, b).unwrap());
        }

        #[test]
        fn oracle_close((a, r, b) in coprime_triple(500)) {
            let exact = dedekind_rademacher(a, r, b).unwrap().to_f64();
            prop_assert!((dedekind_float_oracle(a, r, b).unwrap() - exact).abs() < 1e-9);
        }

        #[test]
        fn reciprocity(b in 1i64..2000, c in 1i64..2000) {
            prop_assume!(b.gcd(&c) == 1);
            let lhs = dedekind_fast(b, c as u64).unwrap() + dedekind_fast(c, b as u64).unwrap();
            let (bq, cq) = (Rational::from_integer(b), Rational::from_integer(c));
            let rhs = q(-1, 4) + q(1, 12) * (&bq / &cq + &cq / &bq + (bq.clone() * &cq).recip().unwrap());
            prop_assert_eq!(lhs.clone(), rhs);
            // brute-force oracle for the same identity on small inputs
            if b < 80 && c < 80 {
                prop_assert_eq!(sawtooth_brute(c as u64, 1, b) + sawtooth_brute(b as u64, 1, c), lhs);
            }
        }
    }
}
