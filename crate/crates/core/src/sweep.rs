//! Parameter sweeps. Rows are computed in parallel and returned sorted by
//! their parameters, so output does not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::berger::{identity_row, sample_lambda2};
use crate::error::Result;
use crate::exactq::Rational;
use crate::obstruct::{admissible_lens_pairs, disk_bundle_solve, lens_report};
use crate::report::Status;

/// Runs `f` on a pool of at most `threads` workers (None: rayon default).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LensRow {
    pub p: i64,
    pub q: i64,
    pub nu: Rational,
    pub eta_round: Rational,
    pub identity: Status,
    pub nu_direct: Rational,
    pub nu_comparison: Status,
    pub eta_direct: Rational,
    pub eta_comparison: Status,
}

impl LensRow {
    pub const HEADER: [&'static str; 9] = [
        "p",
        "q",
        "nu",
        "eta_round",
        "identity",
        "nu_direct",
        "nu_comparison",
        "eta_direct",
        "eta_comparison",
    ];

    pub fn cells(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.q.to_string(),
            self.nu.to_string(),
            self.eta_round.to_string(),
            self.identity.to_string(),
            self.nu_direct.to_string(),
            self.nu_comparison.to_string(),
            self.eta_direct.to_string(),
            self.eta_comparison.to_string(),
        ]
    }
}

pub fn lens_sweep(pmax: i64) -> Result<Vec<LensRow>> {
    let mut rows: Vec<LensRow> = admissible_lens_pairs(pmax)
        .into_par_iter()
        .map(|(p, q)| {
            let r = lens_report(p, q)?;
            Ok(LensRow {
                p,
                q,
                identity: r.rows[0].status,
                nu_comparison: r.rows[1].status,
                eta_comparison: r.rows[2].status,
                nu: r.nu,
                eta_round: r.eta_round,
                nu_direct: r.nu_direct,
                eta_direct: r.eta_direct,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| (r.p, r.q));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergerSweepRow {
    pub lambda2: Rational,
    pub eta0: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub r2: Rational,
    pub tau2: Rational,
    pub sum_identity: Status,
    pub mu_identity: Status,
    pub curvature_identity: Status,
    pub limit_identity: Status,
}

impl BergerSweepRow {
    pub const HEADER: [&'static str; 10] = [
        "lambda2",
        "eta0",
        "mu",
        "nu",
        "R2",
        "tau2",
        "sum_identity",
        "mu_identity",
        "curvature_identity",
        "limit_identity",
    ];

    pub fn cells(&self) -> Vec<String> {
        vec![
            self.lambda2.to_string(),
            self.eta0.to_string(),
            self.mu.to_string(),
            self.nu.to_string(),
            self.r2.to_string(),
            self.tau2.to_string(),
            self.sum_identity.to_string(),
            self.mu_identity.to_string(),
            self.curvature_identity.to_string(),
            self.limit_identity.to_string(),
        ]
    }

    pub fn all_pass(&self) -> bool {
        [
            self.sum_identity,
            self.mu_identity,
            self.curvature_identity,
            self.limit_identity,
        ]
        .iter()
        .all(|s| *s == Status::ExactPass)
    }
}

pub fn berger_sweep(samples: usize) -> Result<Vec<BergerSweepRow>> {
    let mut rows: Vec<BergerSweepRow> = sample_lambda2(samples)
        .into_par_iter()
        .map(|x| {
            let r = identity_row(&x)?;
            Ok(BergerSweepRow {
                sum_identity: Status::exact(r.sum_identity),
                mu_identity: Status::exact(r.mu_identity),
                curvature_identity: Status::exact(r.curvature_identity),
                limit_identity: Status::exact(r.limit_identity),
                lambda2: r.lambda2,
                eta0: r.eta0,
                mu: r.mu,
                nu: r.nu,
                r2: r.r2,
                tau2: r.tau2,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.lambda2.cmp(&b.lambda2));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskRow {
    pub chi: i64,
    pub solutions: Vec<Rational>,
    pub half_chi: Rational,
    pub status: Status,
}

impl DiskRow {
    pub const HEADER: [&'static str; 4] = ["chi", "d", "half_chi", "status"];

    pub fn cells(&self) -> Vec<String> {
        let d: Vec<String> = self.solutions.iter().map(|r| r.to_string()).collect();
        vec![
            self.chi.to_string(),
            d.join(";"),
            self.half_chi.to_string(),
            self.status.to_string(),
        ]
    }
}

/// Even χ from `chimin` up to -2.
pub fn disk_sweep(chimin: i64) -> Result<Vec<DiskRow>> {
    let start = if chimin % 2 == 0 { chimin } else { chimin + 1 };
    let chis: Vec<i64> = (start..=-2).step_by(2).collect();
    let mut rows: Vec<DiskRow> = chis
        .into_par_iter()
        .map(|chi| {
            let solutions = disk_bundle_solve(chi)?;
            let half_chi = Rational::new(chi, 2);
            Ok(DiskRow {
                chi,
                status: Status::exact(solutions == [half_chi.clone()]),
                solutions,
                half_chi,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.chi);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_sweep_small() {
        let rows = lens_sweep(10).unwrap();
        assert_eq!(rows.len(), admissible_lens_pairs(10).len());
        assert!(rows.iter().all(|r| r.identity == Status::ExactPass));
        let r32 = rows.iter().find(|r| (r.p, r.q) == (3, 2)).unwrap();
        assert_eq!(r32.nu_comparison, Status::ReportMismatch);
        assert!(rows.windows(2).all(|w| (w[0].p, w[0].q) < (w[1].p, w[1].q)));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let a = with_threads(Some(1), || lens_sweep(25).unwrap());
        let b = with_threads(Some(4), || lens_sweep(25).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn berger_and_disk() {
        let rows = berger_sweep(20).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.all_pass()));
        let disk = disk_sweep(-20).unwrap();
        assert_eq!(disk.len(), 10);
        assert!(disk.iter().all(|r| r.status == Status::ExactPass));
        assert_eq!(disk_sweep(-7).unwrap().len(), 3);
    }
}
