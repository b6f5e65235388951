//! The verification battery behind `crsf verify`. Every scope is seeded and
//! sized to finish in well under a second in release builds.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::berger::{berger_nu, identity_row, sample_lambda2};
use crate::dedekind::{dedekind_fast, dedekind_float_oracle, dedekind_rademacher};
use crate::error::Error;
use crate::exactq::{hurwitz_zeta_at_zero, Number, PiLaurent, Rational};
use crate::invariants::{check_cor15, eta0, eta_dstar, nu_const, zeta0_q, zeta_delta_h, OuyangEta};
use crate::obstruct::{
    admissible_lens_pairs, check_chi2_over_4d, disk_bundle_solve, lens_report, Verdict,
};
use crate::report::ReportRow;
use crate::rrketa::{
    common_period, eta0_via_rrk, regularized_eta_difference, regularized_eta_difference_lcm,
};
use crate::seifert::{random_data, SeifertData};
use crate::spectrum::{
    dstar_limit_spectrum, lambda_pm, quadratic_residual, sphere_model_modes, virtual_spectrum,
    HoloCounts, LineValue, FLOAT_RESIDUAL_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Exactq,
    Dedekind,
    Seifert,
    Invariants,
    Rrketa,
    Berger,
    Spectrum,
    Obstruct,
}

impl Scope {
    pub const MODULES: [Scope; 8] = [
        Scope::Exactq,
        Scope::Dedekind,
        Scope::Seifert,
        Scope::Invariants,
        Scope::Rrketa,
        Scope::Berger,
        Scope::Spectrum,
        Scope::Obstruct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Exactq => "exactq",
            Scope::Dedekind => "dedekind",
            Scope::Seifert => "seifert",
            Scope::Invariants => "invariants",
            Scope::Rrketa => "rrketa",
            Scope::Berger => "berger",
            Scope::Spectrum => "spectrum",
            Scope::Obstruct => "obstruct",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        std::iter::once(Scope::All)
            .chain(Scope::MODULES)
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scope {s:?}")))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn run(scope: Scope) -> Vec<ReportRow> {
    match scope {
        Scope::All => Scope::MODULES.iter().flat_map(|s| run(*s)).collect(),
        Scope::Exactq => exactq_rows(),
        Scope::Dedekind => dedekind_rows(),
        Scope::Seifert => seifert_rows(),
        Scope::Invariants => invariants_rows(),
        Scope::Rrketa => rrketa_rows(),
        Scope::Berger => berger_rows(),
        Scope::Spectrum => spectrum_rows(),
        Scope::Obstruct => obstruct_rows(),
    }
}

fn exactq_rows() -> Vec<ReportRow> {
    let text = "2/3 - 1/32*pi^2";
    let parsed: PiLaurent = text.parse().expect("literal parses");
    vec![
        ReportRow::exact(
            "pi-laurent round trip",
            parsed.to_string(),
            text,
            parsed.to_string() == text,
        ),
        ReportRow::exact_eq(
            "zeta(0, 1/3)",
            &hurwitz_zeta_at_zero(&q(1, 3)).expect("in range"),
            &q(1, 6),
        ),
        ReportRow::exact_eq("1/3 + 1/6", &(q(1, 3) + q(1, 6)), &q(1, 2)),
    ]
}

fn dedekind_rows() -> Vec<ReportRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xded);
    let (mut agree, mut oracle, mut recip) = (true, true, true);
    let mut n = 0;
    while n < 200 {
        let a: i64 = rng.gen_range(2..=20_000);
        let c: i64 = rng.gen_range(1..a);
        if num_integer::gcd(a, c) != 1 {
            continue;
        }
        n += 1;
        let slow = dedekind_rademacher(a as u64, 1, c).expect("coprime");
        agree &= slow == dedekind_fast(c, a as u64).expect("coprime");
        if a <= 500 {
            oracle &= (dedekind_float_oracle(a as u64, 1, c).expect("coprime") - slow.to_f64())
                .abs()
                < 1e-9;
        }
        let lhs = slow + dedekind_fast(a, c as u64).expect("coprime");
        let rhs = q(-1, 4) + (q(a, c) + q(c, a) + q(1, a * c)) / q(12, 1);
        recip &= lhs == rhs;
    }
    vec![
        ReportRow::exact("sawtooth = reciprocity (200 pairs)", agree, true, agree),
        ReportRow::exact("cotangent oracle < 1e-9", oracle, true, oracle),
        ReportRow::exact("reciprocity law (200 pairs)", recip, true, recip),
        ReportRow::exact_eq(
            "s(3,1,1)",
            &dedekind_rademacher(3, 1, 1).expect("coprime"),
            &q(1, 18),
        ),
    ]
}

fn seifert_rows() -> Vec<ReportRow> {
    let l = SeifertData::lens_space(3, 2).expect("admissible");
    vec![
        ReportRow::exact_eq("L(3,2) degree", &l.degree, &q(-1, 3)),
        ReportRow::exact_eq("L(3,2) chi", &l.chi_orb, &q(2, 3)),
        ReportRow::exact(
            "L(4,3) refused",
            SeifertData::lens_space(4, 3).is_err(),
            true,
            SeifertData::lens_space(4, 3).is_err(),
        ),
    ]
}

fn invariants_rows() -> Vec<ReportRow> {
    let s3 = SeifertData::sphere();
    let mut rng = ChaCha8Rng::seed_from_u64(0x15);
    let cor15 = (0..200).all(|_| check_cor15(&random_data(&mut rng, 40, 4)));
    let oy = OuyangEta::extract(&s3).expect("sphere");
    let mut rows = vec![
        ReportRow::exact_eq("eta0(S3)", &eta0(&s3), &q(2, 3)),
        ReportRow::exact_eq("ouyang c0(S3)", &oy.c0, &q(2, 3)),
        ReportRow::exact_eq("nu(S3)", &nu_const(&s3), &q(-1, 1)),
        ReportRow::exact_eq(
            "nu(L(3,2))",
            &nu_const(&SeifertData::lens_space(3, 2).expect("ok")),
            &q(-11, 3),
        ),
        ReportRow::exact_eq(
            "zeta_deltaH(16pi^2)",
            &zeta_delta_h(&PiLaurent::monomial(q(16, 1), 2).expect("in range")),
            &PiLaurent::monomial(q(1, 32), 2).expect("in range"),
        ),
        ReportRow::exact_eq(
            "eta(D*)(S3)",
            &eta_dstar(&s3),
            &"2/3 - 1/32*pi^2".parse().expect("literal"),
        ),
        ReportRow::exact(
            "eta(D*) and nu consistent on 200 random data",
            cor15,
            true,
            cor15,
        ),
    ];
    let mut g = s3.geom_integrals_const();
    rows.push(ReportRow::exact_eq(
        "zeta0(Q) torsion-free",
        &zeta0_q(&g).expect("in range"),
        &PiLaurent::zero(),
    ));
    g.int_tau2 = PiLaurent::monomial(q(3, 1), 2).expect("in range");
    rows.push(ReportRow::exact_eq(
        "zeta0(Q) with torsion 3pi^2",
        &zeta0_q(&g).expect("in range"),
        &PiLaurent::rational(q(1, 8)),
    ));
    rows
}

fn rrketa_rows() -> Vec<ReportRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x77);
    let (mut same, mut lcm_same) = (true, true);
    for _ in 0..100 {
        let d = random_data(&mut rng, 60, 4);
        same &= eta0_via_rrk(&d) == eta0(&d);
        if common_period(&d) <= 5000 {
            lcm_same &= regularized_eta_difference_lcm(&d) == regularized_eta_difference(&d);
        }
    }
    vec![
        ReportRow::exact_eq(
            "eta0_via_rrk(S3)",
            &eta0_via_rrk(&SeifertData::sphere()),
            &q(2, 3),
        ),
        ReportRow::exact("eta0_via_rrk = eta0 (100 random)", same, true, same),
        ReportRow::exact("per-point = lcm route", lcm_same, true, lcm_same),
    ]
}

fn berger_rows() -> Vec<ReportRow> {
    let mut rows = vec![ReportRow::exact_eq(
        "berger_nu(1)",
        &berger_nu(&q(1, 1)).expect("positive"),
        &q(-1, 1),
    )];
    for x in sample_lambda2(20) {
        let r = identity_row(&x).expect("positive");
        rows.push(ReportRow::exact(
            format!("berger identities at {x}"),
            r.all_pass(),
            true,
            r.all_pass(),
        ));
    }
    rows
}

fn spectrum_rows() -> Vec<ReportRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x44);
    let (mut exact_ok, mut float_ok, mut sum_ok) = (true, true, true);
    for _ in 0..2000 {
        let k = if rng.gen_bool(0.5) {
            Number::Exact(q(rng.gen_range(0..200), rng.gen_range(1..5)))
        } else {
            Number::Approx(rng.gen_range(0.0..200.0))
        };
        let n = rng.gen_range(-20..=20);
        let eps = q(1, rng.gen_range(1..=1024));
        let (p, m) = lambda_pm(&k, n, &eps).expect("eps > 0");
        for l in [&p, &m] {
            match quadratic_residual(l, &k, n, &eps) {
                LineValue::Exact(r) => exact_ok &= r.is_zero(),
                LineValue::Approx(x) => float_ok &= x.abs() < FLOAT_RESIDUAL_TOL,
            }
        }
        sum_ok &= match (&p, &m) {
            (LineValue::Exact(a), LineValue::Exact(b)) => a + b == Rational::one(),
            _ => (p.to_f64() + m.to_f64() - 1.0).abs() < 1e-12,
        };
    }
    let modes = sphere_model_modes(6);
    let holo = HoloCounts::sphere(6);
    let consistent = virtual_spectrum(&modes, &holo, &q(1, 64)).is_ok()
        && dstar_limit_spectrum(&modes, &holo).is_ok();
    vec![
        ReportRow::exact("quadratic residual exact = 0", exact_ok, true, exact_ok),
        ReportRow::exact("quadratic residual float < 1e-12", float_ok, true, float_ok),
        ReportRow::exact("lambda+ + lambda- = 1", sum_ok, true, sum_ok),
        ReportRow::exact(
            "sphere truncation subtraction feasible",
            consistent,
            true,
            consistent,
        ),
    ]
}

fn obstruct_rows() -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let disk_ok = (1..=20).all(|k| disk_bundle_solve(-2 * k).ok() == Some(vec![q(-k, 1)]));
    rows.push(ReportRow::exact(
        "disk bundle d = chi/2, chi in [-40,-2]",
        disk_ok,
        true,
        disk_ok,
    ));
    let c = check_chi2_over_4d(&q(-2, 1), &q(-3, 1)).expect("d < 0");
    rows.push(ReportRow::exact(
        "chi^2/4d at (-2,-3) obstructed",
        &c.value,
        q(-1, 3),
        c.verdict == Verdict::Obstructed && c.value == q(-1, 3),
    ));
    for (p, qq) in admissible_lens_pairs(7) {
        rows.extend(lens_report(p, qq).expect("admissible").rows);
    }
    rows
}
