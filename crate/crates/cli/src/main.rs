//! `crsf`: exact invariants of CR-Seifert 3-manifolds from the command line.
//!
//! Exit codes: 0 success, 1 an exact check failed, 2 malformed input,
//! 3 input outside the domain (e.g. non-negative degree).

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crsf_core::battery::{self, Scope};
use crsf_core::berger::{hitchin_eta, identity_row};
use crsf_core::dedekind::{
    dedekind_fast, dedekind_float_oracle, dedekind_rademacher, reduce_to_classical,
};
use crsf_core::invariants::{diabatic_expansion, eta0, eta_dstar, nu, ouyang_eta, OuyangEta};
use crsf_core::obstruct::{filling_identity, lens_report, miyaoka_yau_bound, obstruction_rows};
use crsf_core::report::{all_exact_pass, ReportRow, Status};
use crsf_core::rrketa::{
    eta0_via_rrk, regularized_eta_difference_lcm, regularized_eta_difference_with, FracSign,
};
use crsf_core::spectrum::{
    delta2_spectrum, delta_h_lines, dstar_limit_spectrum, negative_holomorphic_count, partial_eta,
    virtual_spectrum, SpectralLine, SpectrumInput,
};
use crsf_core::sweep::{
    berger_sweep, disk_sweep, lens_sweep, with_threads, BergerSweepRow, DiskRow, LensRow,
};
use crsf_core::{Error, Integral, Number, Rational, SeifertData, SeifertInput};

use table::{render, Format};

#[derive(Parser)]
#[command(
    name = "crsf",
    version,
    about = "Exact invariants of CR-Seifert 3-manifolds"
)]
struct Cli {
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "CRSF_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DataArgs {
    /// JSON file: {"genus" | "chi_orb", "degree", "cone_points": [{alpha, rho, beta}]}
    #[arg(long, conflicts_with_all = ["lens", "sphere"])]
    input: Option<PathBuf>,
    /// Lens space L(p, q)
    #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "sphere")]
    lens: Option<Vec<i64>>,
    /// Standard sphere
    #[arg(long)]
    sphere: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

impl DataArgs {
    fn load(&self) -> Result<SeifertData> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
            return Ok(SeifertInput::parse_json(&text)?);
        }
        if let Some(pq) = &self.lens {
            return Ok(SeifertData::lens_space(pq[0], pq[1])?);
        }
        if self.sphere {
            return Ok(SeifertData::sphere());
        }
        Err(Error::Schema("one of --input, --lens P Q or --sphere is required".into()).into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// ν; exact on a constant-curvature base, or with --base-r2 = ∫_Σ R² dθ
    Nu {
        #[command(flatten)]
        data: DataArgs,
        /// e.g. "8*pi" or a decimal
        #[arg(long)]
        base_r2: Option<String>,
    },
    /// η₀ = 1 + d/3 + 4Σs
    Eta0 {
        #[command(flatten)]
        data: DataArgs,
    },
    /// η(D*) on a constant-curvature base
    EtaDstar {
        #[command(flatten)]
        data: DataArgs,
    },
    /// s(α, ρ, β) by the sawtooth sum, the reciprocity recursion and the cotangent sum
    Dedekind {
        alpha: u64,
        rho: i64,
        beta: i64,
        #[arg(long)]
        json: bool,
    },
    /// η of t²θ² + γ as c₀ + c₁t² + c₂t⁴
    Ouyang {
        #[command(flatten)]
        data: DataArgs,
        /// Evaluate at this t²
        #[arg(long)]
        t2: Option<Rational>,
    },
    /// Coefficients of η(h_ε) in ε = t⁻²
    Diabatic {
        #[command(flatten)]
        data: DataArgs,
    },
    /// η₀ by holomorphic section counting
    RrkEta {
        #[command(flatten)]
        data: DataArgs,
        /// Sum over one common period lcm(αᵢ)
        #[arg(long)]
        lcm: bool,
        /// Use frac(-n·βρ'/α) in the correction term
        #[arg(long)]
        minus_sign: bool,
    },
    /// Berger sphere α₁² + λ²α₂²
    Berger {
        /// λ²
        lambda2: Rational,
        /// Also evaluate η(λ₁²α₁² + λ₂²α₂² + λ₃²α₃²)
        #[arg(long, num_args = 3, value_names = ["L1", "L2", "L3"])]
        full: Option<Vec<Rational>>,
        #[arg(long)]
        json: bool,
    },
    /// Virtual spectrum of d*_ε/ε, or its ε → 0 limit
    Spectrum {
        /// JSON file with {"modes": [...], "holo": {"h0": {...}, "h2": {...}}}
        #[arg(long, conflicts_with = "sphere_model")]
        modes: Option<PathBuf>,
        /// Truncated sphere model with p + q ≤ N
        #[arg(long, value_name = "N")]
        sphere_model: Option<i64>,
        #[arg(long, default_value = "1/10")]
        eps: Rational,
        #[arg(long, value_enum, default_value = "virtual")]
        kind: SpectrumKind,
        /// Print Σ mult·sgn(λ)|λ|⁻ˢ at this s
        #[arg(long)]
        partial_eta: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Lens space report: hard identity and closed-form comparisons
    Lens {
        p: i64,
        q: i64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Filling obstruction rows
    Obstruction {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        base_r2: Option<String>,
        /// Check ν = -χ(N) + 3τ(N) for a candidate filling
        #[arg(long, num_args = 2, value_names = ["CHI_N", "TAU_N"], allow_negative_numbers = true)]
        filling: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Parameter sweeps
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
    },
    /// Run the verification battery
    Verify {
        #[arg(default_value = "all")]
        scope: String,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumKind {
    Virtual,
    Dstar,
    Delta2,
}

#[derive(Subcommand)]
enum SweepFamily {
    /// Columns: p, q, nu, eta_round, identity, nu_direct, nu_comparison, eta_direct, eta_comparison
    Lens {
        #[arg(long, default_value_t = 20)]
        pmax: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Columns: lambda2, eta0, mu, nu, R2, tau2 and four identity statuses
    Berger {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Columns: chi, d, half_chi, status
    Disk {
        #[arg(long, default_value_t = -40, allow_negative_numbers = true)]
        chimin: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_integral(s: &Option<String>) -> Result<Option<Integral>> {
    s.as_deref()
        .map(|t| t.parse::<Integral>().map_err(Into::into))
        .transpose()
}

fn print_value(
    json_out: bool,
    invariant: &str,
    value: impl std::fmt::Display,
    route: &str,
    data: Option<&SeifertData>,
) {
    if json_out {
        let mut obj = json!({ "invariant": invariant, "value": value.to_string(), "route": route });
        if let Some(d) = data {
            obj["input"] = serde_json::to_value(SeifertInput::from(d)).expect("serializable");
        }
        println!("{obj}");
    } else {
        println!("{value}");
    }
}

fn line_cells(lines: &[SpectralLine]) -> Vec<Vec<String>> {
    lines
        .iter()
        .map(|l| {
            vec![
                l.value.to_string(),
                l.mult.to_string(),
                l.family.to_string(),
                l.origin.to_string(),
            ]
        })
        .collect()
}

fn report_table(rows: &[ReportRow], format: Format) -> Result<String> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.check.clone(),
                r.lhs.clone(),
                r.rhs.clone(),
                r.status.to_string(),
            ]
        })
        .collect();
    render(format, &["check", "lhs", "rhs", "status"], &cells)
}

fn status_code(rows: &[ReportRow]) -> ExitCode {
    if all_exact_pass(rows) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let threads = cli.threads;
    match cli.command {
        Command::Nu { data, base_r2 } => {
            let d = data.load()?;
            let integral = parse_integral(&base_r2)?;
            let route = if integral.is_some() {
                "general"
            } else {
                "constant-curvature"
            };
            let v = nu(&d, integral.as_ref())?;
            print_value(data.json, "nu", v, route, Some(&d));
        }
        Command::Eta0 { data } => {
            let d = data.load()?;
            print_value(data.json, "eta0", eta0(&d), "dedekind", Some(&d));
        }
        Command::EtaDstar { data } => {
            let d = data.load()?;
            print_value(
                data.json,
                "eta_dstar",
                eta_dstar(&d),
                "constant-curvature",
                Some(&d),
            );
        }
        Command::Dedekind {
            alpha,
            rho,
            beta,
            json: json_out,
        } => {
            let sawtooth = dedekind_rademacher(alpha, rho, beta)?;
            let (a, c) = reduce_to_classical(alpha, rho, beta)?;
            let fast = dedekind_fast(c, a)?;
            let oracle = dedekind_float_oracle(alpha, rho, beta)?;
            if json_out {
                println!(
                    "{}",
                    json!({
                        "invariant": "dedekind",
                        "value": sawtooth.to_string(),
                        "fast": fast.to_string(),
                        "oracle": oracle,
                    })
                );
            } else {
                println!("{sawtooth}");
            }
            if sawtooth != fast {
                eprintln!("sawtooth {sawtooth} != reciprocity {fast}");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Ouyang { data, t2 } => {
            let d = data.load()?;
            let c = OuyangEta::extract(&d)?;
            match t2 {
                Some(t2) => print_value(
                    data.json,
                    "ouyang_eta",
                    ouyang_eta(&d, &t2)?,
                    "ouyang",
                    Some(&d),
                ),
                None if data.json => println!(
                    "{}",
                    json!({
                        "invariant": "ouyang_eta",
                        "c0": c.c0.to_string(),
                        "c1": c.c1.to_string(),
                        "c2": c.c2.to_string(),
                    })
                ),
                None => println!("{} + ({})*t^2 + ({})*t^4", c.c0, c.c1, c.c2),
            }
        }
        Command::Diabatic { data } => {
            let d = data.load()?;
            print_value(
                data.json,
                "diabatic",
                diabatic_expansion(&d)?,
                "ouyang",
                Some(&d),
            );
        }
        Command::RrkEta {
            data,
            lcm,
            minus_sign,
        } => {
            let d = data.load()?;
            let b = if lcm {
                regularized_eta_difference_lcm(&d)
            } else if minus_sign {
                regularized_eta_difference_with(&d, FracSign::Minus)
            } else {
                regularized_eta_difference_with(&d, FracSign::Plus)
            };
            let eta = Rational::one() + Rational::from_integer(2) * &b.total;
            if data.json {
                println!(
                    "{}",
                    json!({
                        "invariant": "eta0",
                        "value": eta.to_string(),
                        "route": "rrk",
                        "affine_part": b.affine_part.to_string(),
                        "periodic_part": b.periodic_part.to_string(),
                        "input": SeifertInput::from(&d),
                    })
                );
            } else {
                println!("{eta}");
            }
            if !minus_sign && eta0_via_rrk(&d) != eta0(&d) {
                eprintln!("counting route disagrees with eta0");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Berger {
            lambda2,
            full,
            json: json_out,
        } => {
            let row = identity_row(&lambda2)?;
            let hitchin = match &full {
                Some(l) => Some(hitchin_eta(&l[0], &l[1], &l[2])?),
                None => None,
            };
            if json_out {
                let mut obj = json!({
                    "lambda2": row.lambda2.to_string(),
                    "eta0": row.eta0.to_string(),
                    "mu": row.mu.to_string(),
                    "nu": row.nu.to_string(),
                    "R2": row.r2.to_string(),
                    "tau2": row.tau2.to_string(),
                    "identities": row.all_pass(),
                });
                if let Some(h) = &hitchin {
                    obj["eta"] = json!(h.to_string());
                }
                println!("{obj}");
            } else {
                println!("eta0 = {}", row.eta0);
                println!("mu = {}", row.mu);
                println!("nu = {}", row.nu);
                println!("R^2 = {}", row.r2);
                println!("|tau|^2 = {}", row.tau2);
                if let Some(h) = &hitchin {
                    println!("eta = {h}");
                }
                println!(
                    "identities: {}",
                    if row.all_pass() { "pass" } else { "FAIL" }
                );
            }
            if !row.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Spectrum {
            modes,
            sphere_model,
            eps,
            kind,
            partial_eta: s,
            format,
        } => {
            let input = match (modes, sphere_model) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
                    SpectrumInput::parse_json(&text)?
                }
                (None, Some(n)) => SpectrumInput::sphere_model(n),
                (None, None) => {
                    return Err(Error::Schema(
                        "one of --modes or --sphere-model is required".into(),
                    )
                    .into())
                }
            };
            let lines = match kind {
                SpectrumKind::Virtual => virtual_spectrum(&input.modes, &input.holo, &eps)?,
                SpectrumKind::Dstar => dstar_limit_spectrum(&input.modes, &input.holo)?,
                SpectrumKind::Delta2 => {
                    let d = dstar_limit_spectrum(&input.modes, &input.holo)?;
                    delta2_spectrum(&d, &delta_h_lines(&input.modes))
                }
            };
            print!(
                "{}",
                render(
                    format,
                    &["value", "mult", "family", "origin"],
                    &line_cells(&lines)
                )?
            );
            eprintln!(
                "negative holomorphic lines: {}",
                negative_holomorphic_count(&lines)
            );
            if let Some(s) = s {
                eprintln!("partial eta at s={s}: {:.15e}", partial_eta(&lines, s));
            }
        }
        Command::Lens { p, q, format } => {
            let r = lens_report(p, q)?;
            print!("{}", report_table(&r.rows, format)?);
            return Ok(status_code(&r.rows));
        }
        Command::Obstruction {
            data,
            base_r2,
            filling,
            format,
        } => {
            let d = data.load()?;
            let mut rows = obstruction_rows(&d);
            if let Some(integral) = parse_integral(&base_r2)? {
                let bound = miyaoka_yau_bound(&d, Some(&integral))?;
                rows.push(ReportRow {
                    check: "miyaoka-yau rhs (given base integral)".into(),
                    lhs: bound.to_string(),
                    rhs: String::new(),
                    status: Status::ReportMatch,
                });
            }
            if let Some(f) = filling {
                let value = match nu(&d, parse_integral(&base_r2)?.as_ref())? {
                    Number::Exact(r) => r,
                    Number::Approx(_) => {
                        return Err(
                            Error::DomainError("filling check needs an exact nu".into()).into()
                        )
                    }
                };
                let ok = filling_identity(f[0], f[1], &value);
                rows.push(ReportRow {
                    check: format!("filling chi(N)={} tau(N)={}", f[0], f[1]),
                    lhs: value.to_string(),
                    rhs: (3 * f[1] - f[0]).to_string(),
                    status: Status::report(ok),
                });
            }
            print!("{}", report_table(&rows, format)?);
            return Ok(status_code(&rows));
        }
        Command::Sweep { family } => {
            return with_threads(threads, || -> Result<ExitCode> {
                let (text, ok) = match family {
                    SweepFamily::Lens { pmax, format } => {
                        let rows = lens_sweep(pmax)?;
                        let cells: Vec<Vec<String>> = rows.iter().map(LensRow::cells).collect();
                        let ok = rows.iter().all(|r| r.identity == Status::ExactPass);
                        (render(format, &LensRow::HEADER, &cells)?, ok)
                    }
                    SweepFamily::Berger { samples, format } => {
                        let rows = berger_sweep(samples)?;
                        let cells: Vec<Vec<String>> =
                            rows.iter().map(BergerSweepRow::cells).collect();
                        (
                            render(format, &BergerSweepRow::HEADER, &cells)?,
                            rows.iter().all(BergerSweepRow::all_pass),
                        )
                    }
                    SweepFamily::Disk { chimin, format } => {
                        let rows = disk_sweep(chimin)?;
                        let cells: Vec<Vec<String>> = rows.iter().map(DiskRow::cells).collect();
                        let ok = rows.iter().all(|r| r.status == Status::ExactPass);
                        (render(format, &DiskRow::HEADER, &cells)?, ok)
                    }
                };
                print!("{text}");
                Ok(if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            });
        }
        Command::Verify { scope, format } => {
            let scope: Scope = scope.parse().context("scope")?;
            let rows = battery::run(scope);
            print!("{}", report_table(&rows, format)?);
            let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
            eprintln!(
                "verify {scope}: {} rows, {} exact-pass, {} exact-fail, {} report-match, {} report-mismatch",
                rows.len(),
                count(Status::ExactPass),
                count(Status::ExactFail),
                count(Status::ReportMatch),
                count(Status::ReportMismatch),
            );
            return Ok(status_code(&rows));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Schema(_) | Error::Parse(_) | Error::InvalidConePoint { .. }) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
