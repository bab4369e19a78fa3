//! Batch front-end: runs verification suites and emits certificates as
//! JSON (schema 1) or CSV.
//!
//! Exit codes: 0 when every certificate verdict is "holds", 1 when some
//! certificate fails or is out of range, 2 for usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use pinchcheck::cert::{Certificate, Verdict, SCHEMA_VERSION};
use pinchcheck::curvature::{
    derivation_extend, random_pinched_kahler, verify_bishop_goldberg, ComplexStructure,
    CurvatureTensor, OptimizeConfig, TensorSpace,
};
use pinchcheck::fiber::{
    eq_5_4_certificate, verify_curvature_pairing_bound, verify_g_identity_s2,
    verify_g_identity_tm, AdmissibleSampler, Constraints, ESpace,
};
use pinchcheck::lie::{e6_cubic_invariant_dim, enumerate_exclusion_table, radon_hurwitz};
use pinchcheck::thresholds::{
    chain_certificates, gamma_bracket_certificate, norm_bound_implication_certificate,
    verify_monotonicity, verify_threshold_table,
};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "pinchcheck", version, about = "certificate-producing verification suites")]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Worker threads for sweeps (default: PINCHCHECK_WORKERS or all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Pinching-threshold tables and inequalities (§5).
    Thresholds {
        #[command(subcommand)]
        cmd: ThresholdsCmd,
    },
    /// Randomized curvature-tensor verification (§2).
    Curvature {
        #[command(subcommand)]
        cmd: CurvatureCmd,
    },
    /// Fiberwise integral identities (§4, §5).
    Fiber {
        #[command(subcommand)]
        cmd: FiberCmd,
    },
    /// Representation-theoretic arithmetic (§3, §5.2).
    Lie {
        #[command(subcommand)]
        cmd: LieCmd,
    },
    /// Run the full verification battery.
    All {
        /// Reduced trial counts and sweep ranges.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum ThresholdsCmd {
    /// Threshold table λ₁, λ₂, λ₃, λ₀, λ(m) over even m.
    Table {
        #[arg(long, default_value_t = 6)]
        m_min: i64,
        #[arg(long, default_value_t = 100)]
        m_max: i64,
    },
    /// Verify a named threshold claim.
    Verify {
        #[arg(long, value_enum)]
        claim: ThresholdClaim,
        #[arg(long, default_value_t = 10)]
        n_min: i64,
        #[arg(long, default_value_t = 1000)]
        n_max: i64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ThresholdClaim {
    Chain,
    Monotone,
    Lambda0,
    GammaBracket,
}

#[derive(Subcommand)]
enum CurvatureCmd {
    /// Bishop-Goldberg strata bounds on random λ-pinched Kähler tensors.
    BishopGoldberg {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.95)]
        lambda: f64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum FiberCmd {
    /// Verify a fiber-integral lemma on sampled admissible sections.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Lemma {
    #[value(name = "4.3i")]
    L43i,
    #[value(name = "4.3ii")]
    L43ii,
    #[value(name = "5.4norm")]
    Norm54,
    #[value(name = "4.1")]
    L41,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Enumerate odd-dimensional exceptional irreps passing Eqs. (3.1)-(3.2).
    Exclusion {
        #[arg(long, default_value_t = 20)]
        p_max: u64,
    },
    /// Multiplicity of the trivial representation in S³ℂ²⁷ for e6.
    E6Cubic,
    /// Radon-Hurwitz table ρ(n).
    Rh {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
}

#[derive(Args)]
struct Empty {}

#[derive(Serialize)]
struct Report {
    schema: u32,
    command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rows: Vec<serde_json::Value>,
    certificates: Vec<Certificate>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .or_else(|| {
            std::env::var("PINCHCHECK_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    if workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .ok();
    }

    let (command, result) = run_command(&cli.command);
    let report = match result {
        Ok(report) => report,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let all_hold = report.certificates.iter().all(Certificate::holds);
    let rendered = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&report),
    };
    let _ = command;
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout();
            let _ = stdout.write_all(rendered.as_bytes());
        }
    }
    if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_command(command: &Command) -> (String, Result<Report, String>) {
    match command {
        Command::Thresholds { cmd } => match cmd {
            ThresholdsCmd::Table { m_min, m_max } => (
                format!("thresholds table --m-min {m_min} --m-max {m_max}"),
                thresholds_table(*m_min, *m_max),
            ),
            ThresholdsCmd::Verify { claim, n_min, n_max } => (
                "thresholds verify".into(),
                thresholds_verify(*claim, *n_min, *n_max),
            ),
        },
        Command::Curvature {
            cmd:
                CurvatureCmd::BishopGoldberg {
                    n,
                    lambda,
                    trials,
                    restarts,
                    seed,
                    tol,
                },
        } => (
            "curvature bishop-goldberg".into(),
            bishop_goldberg(*n, *lambda, *trials, *restarts, *seed, *tol),
        ),
        Command::Fiber {
            cmd: FiberCmd::Verify {
                lemma,
                n,
                k,
                trials,
                seed,
            },
        } => ("fiber verify".into(), fiber_verify(*lemma, *n, *k, *trials, *seed)),
        Command::Lie { cmd } => match cmd {
            LieCmd::Exclusion { p_max } => ("lie exclusion".into(), lie_exclusion(*p_max)),
            LieCmd::E6Cubic => ("lie e6-cubic".into(), lie_e6_cubic()),
            LieCmd::Rh { n_max } => ("lie rh".into(), lie_rh(*n_max)),
        },
        Command::All { quick } => ("all".into(), run_all(*quick)),
    }
}

fn report(command: &str, rows: Vec<serde_json::Value>, certificates: Vec<Certificate>) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        rows,
        certificates,
    }
}

fn thresholds_table(m_min: i64, m_max: i64) -> Result<Report, String> {
    let (rows, certs) = verify_threshold_table(m_min, m_max).map_err(|e| e.to_string())?;
    let json_rows = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "m": r.m,
                "n": r.n,
                "lambda1": r.lambda1.decimal_string(),
                "lambda2": r.lambda2.decimal_string(),
                "lambda3": r.lambda3.decimal_string(),
                "lambda0": r.lambda0.decimal_string(),
                "lambda0_exact": r.lambda0.radical_string(),
                "lambda_final": r.lambda_final.to_string(),
                "lambda_final_decimal": format!("{:.12}", rational_to_f64(&r.lambda_final)),
                "dominant": r.dominant,
                "verdict": if r.verdict == Verdict::Holds { "holds" } else { "fails" },
            })
        })
        .collect();
    Ok(report("thresholds table", json_rows, certs))
}

fn rational_to_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn thresholds_verify(claim: ThresholdClaim, n_min: i64, n_max: i64) -> Result<Report, String> {
    if n_min > n_max {
        return Err(format!("empty range: n_min {n_min} > n_max {n_max}"));
    }
    let certs = match claim {
        ThresholdClaim::Chain => chain_certificates(),
        ThresholdClaim::Monotone => {
            // representative even dimensions within the range, capped at 8
            let mut ns: Vec<i64> = Vec::new();
            let mut n = if n_min % 2 == 0 { n_min.max(4) } else { n_min + 1 };
            let stride = (((n_max - n) / 2) / 8 + 1) * 2;
            while n <= n_max && ns.len() < 8 {
                ns.push(n);
                n += stride;
            }
            if ns.is_empty() {
                return Err("no even dimension ≥ 4 in range".into());
            }
            let results: Result<Vec<_>, _> = ns
                .par_iter()
                .map(|&n| verify_monotonicity(n, 200))
                .collect();
            results.map_err(|e| e.to_string())?.concat()
        }
        ThresholdClaim::Lambda0 => {
            let m_min = (n_min.max(6) + 1) / 2 * 2;
            let m_max = n_max.min(400);
            let (_, certs) = verify_threshold_table(m_min, m_max).map_err(|e| e.to_string())?;
            certs
        }
        ThresholdClaim::GammaBracket => vec![
            gamma_bracket_certificate(),
            norm_bound_implication_certificate(n_min.max(12), n_max),
        ],
    };
    Ok(report("thresholds verify", vec![], certs))
}

fn bishop_goldberg(
    n: usize,
    lambda: f64,
    trials: u64,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> Result<Report, String> {
    let certs: Result<Vec<Certificate>, String> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let trial_seed = seed.wrapping_add(t);
            let sample =
                random_pinched_kahler(n, lambda, trial_seed).map_err(|e| e.to_string())?;
            let cfg = OptimizeConfig {
                restarts,
                tol,
                seed: trial_seed ^ 0x5851_f42d_4c95_7f2d,
                ..OptimizeConfig::default()
            };
            let rep = verify_bishop_goldberg(&sample.tensor, &sample.jay, lambda, &cfg);
            let mut cert = Certificate::new("lemma2.3.bishop-goldberg", "lemma-2.3")
                .param("n", n)
                .param("lambda", lambda)
                .param("restarts", restarts)
                .param("tol", tol)
                .seed(trial_seed)
                .witness("h_min", rep.h_min)
                .witness("h_max", rep.h_max)
                .witness("sec_min", rep.sec_min)
                .witness("sec_max", rep.sec_max)
                .witness("delta_pinched", format!("{:?}", rep.delta_pinched));
            if !rep.all_bounds_hold() {
                let bad = rep
                    .strata
                    .iter()
                    .find(|s| !s.within_bounds)
                    .map(|s| format!("theta={} range=[{},{}]", s.theta, s.found_min, s.found_max))
                    .unwrap_or_else(|| "global bound".into());
                cert = cert.fail("violated_stratum", bad);
            }
            Ok(cert.runtime(start.elapsed().as_millis() as u64))
        })
        .collect();
    Ok(report("curvature bishop-goldberg", vec![], certs?))
}

fn fiber_verify(lemma: Lemma, n: usize, k: usize, trials: u64, seed: u64) -> Result<Report, String> {
    let certs: Vec<Certificate> = match lemma {
        Lemma::Norm54 => vec![eq_5_4_certificate(n).map_err(|e| e.to_string())?],
        Lemma::L43i | Lemma::L41 => {
            let cons = Constraints {
                iota_v_iota_v_degree: false,
                j_commute: false,
                ..Constraints::all()
            };
            let sampler =
                AdmissibleSampler::new(n, k, ESpace::V, &cons, seed).map_err(|e| e.to_string())?;
            (0..trials)
                .into_par_iter()
                .map(|t| {
                    let s = seed.wrapping_add(t);
                    let section = sampler.sample(s).ok_or_else(|| {
                        format!(
                            "no admissible section at n={n}, k={k} (basis {})",
                            sampler.info().basis_dim
                        )
                    })?;
                    let cert = if lemma == Lemma::L43i {
                        verify_g_identity_tm(&section)
                    } else {
                        let jay = ComplexStructure::canonical(n);
                        let g: CurvatureTensor<f64> =
                            pinchcheck::curvature::complex_hyperbolic_g(&jay);
                        verify_curvature_pairing_bound(&g, &section, 1.0, true, 0.0)
                    };
                    cert.map(|c| c.seed(s)).map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, String>>()?
        }
        Lemma::L43ii => {
            let cons = Constraints {
                iota_v_degree: true,
                iota_jv_degree: false,
                iota_v_iota_v_degree: false,
                j_commute: true,
            };
            let sampler = AdmissibleSampler::new(n, k, ESpace::S2V, &cons, seed)
                .map_err(|e| e.to_string())?;
            (0..trials)
                .into_par_iter()
                .map(|t| {
                    let s = seed.wrapping_add(t);
                    let section = sampler.sample(s).ok_or_else(|| {
                        format!(
                            "no admissible section at n={n}, k={k} (basis {})",
                            sampler.info().basis_dim
                        )
                    })?;
                    verify_g_identity_s2(&section)
                        .map(|c| c.seed(s))
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, String>>()?
        }
    };
    Ok(report("fiber verify", vec![], certs))
}

fn lie_exclusion(p_max: u64) -> Result<Report, String> {
    let (survivors, cert) = enumerate_exclusion_table(p_max).map_err(|e| e.to_string())?;
    let rows = survivors
        .iter()
        .map(|s| serde_json::to_value(s).expect("serializable survivor"))
        .collect();
    Ok(report("lie exclusion", rows, vec![cert]))
}

fn lie_e6_cubic() -> Result<Report, String> {
    let start = Instant::now();
    let dim = e6_cubic_invariant_dim().map_err(|e| e.to_string())?;
    let mut cert = Certificate::new("section5.2.e6-cubic-invariant", "section-5.2")
        .witness("trivial_multiplicity_s3", dim)
        .witness("dim_s3_v27", 3654u64);
    if dim < 1 {
        cert = cert.fail("expected_invariant", "multiplicity must be at least 1");
    }
    Ok(report(
        "lie e6-cubic",
        vec![],
        vec![cert.runtime(start.elapsed().as_millis() as u64)],
    ))
}

fn lie_rh(n_max: u64) -> Result<Report, String> {
    let start = Instant::now();
    let rows: Vec<serde_json::Value> = (1..=n_max)
        .map(|n| serde_json::json!({"n": n, "rho": radon_hurwitz(n)}))
        .collect();
    let mut cert = Certificate::new("section3.radon-hurwitz", "section-3")
        .param("n_max", n_max)
        .witness("rho_16", radon_hurwitz(16));
    let sweep_ok = (3..=10_000u64).all(|p| radon_hurwitz(4 * p + 4) <= 2 * p + 3);
    if radon_hurwitz(16) != 9 || !sweep_ok {
        cert = cert.fail("radon_hurwitz_mismatch", format!("rho(16) = {}", radon_hurwitz(16)));
    }
    Ok(report(
        "lie rh",
        rows,
        vec![cert.runtime(start.elapsed().as_millis() as u64)],
    ))
}

fn run_all(quick: bool) -> Result<Report, String> {
    let (m_max, bg_trials, bg_restarts, fiber_trials, mono_kmax) = if quick {
        (60, 3, 24, 3, 60)
    } else {
        (200, 20, 64, 20, 200)
    };
    let mut certs = Vec::new();
    let (_, table_certs) = verify_threshold_table(6, m_max).map_err(|e| e.to_string())?;
    certs.extend(table_certs);
    for n in [4i64, 8, 12] {
        certs.extend(verify_monotonicity(n, mono_kmax).map_err(|e| e.to_string())?);
    }
    certs.push(gamma_bracket_certificate());
    certs.push(norm_bound_implication_certificate(12, 200));

    let bg = bishop_goldberg(4, 0.95, bg_trials, bg_restarts, 2024, 1e-7)?;
    certs.extend(bg.certificates);
    // Lemma 2.4 derivation bound on one pinched sample, p = 1 and 2.
    {
        let start = Instant::now();
        let sample = random_pinched_kahler(4, 0.9, 7).map_err(|e| e.to_string())?;
        let g: CurvatureTensor<f64> =
            pinchcheck::curvature::complex_hyperbolic_g(&sample.jay);
        let r0 = sample.tensor.r0_decompose(&g, (1.0 + 0.9) / 2.0);
        for (p, space) in [(1, TensorSpace::Exterior), (2, TensorSpace::Symmetric)] {
            let action = derivation_extend(&r0, p, space);
            let check = action.sample_bound(0.9, if quick { 500 } else { 2000 }, 99, 1e-7);
            let mut cert = Certificate::new("lemma2.4.derivation-bound", "lemma-2.4")
                .param("p", p)
                .param("lambda", 0.9)
                .seed(99)
                .witness("bound", check.bound)
                .witness("max_found", check.max_found);
            if !check.holds {
                cert = cert.fail("exceeded", check.max_found);
            }
            certs.push(cert.runtime(start.elapsed().as_millis() as u64));
        }
    }

    let f54 = fiber_verify(Lemma::Norm54, 8, 2, 1, 0)?;
    certs.extend(f54.certificates);
    let f43i = fiber_verify(Lemma::L43i, 4, 2, fiber_trials, 10)?;
    certs.extend(f43i.certificates);
    let f43ii = fiber_verify(Lemma::L43ii, 4, 2, fiber_trials, 20)?;
    certs.extend(f43ii.certificates);
    let f41 = fiber_verify(Lemma::L41, 4, 2, fiber_trials.min(3), 30)?;
    certs.extend(f41.certificates);

    let (_, excl_cert) = enumerate_exclusion_table(13).map_err(|e| e.to_string())?;
    certs.push(excl_cert);
    let rh = lie_rh(16)?;
    certs.extend(rh.certificates);
    if !quick {
        let cubic = lie_e6_cubic()?;
        certs.extend(cubic.certificates);
    }
    Ok(report(if quick { "all --quick" } else { "all" }, vec![], certs))
}

/// Flat CSV projection: data rows if present, otherwise one line per
/// certificate.
fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    if !report.rows.is_empty() {
        // union of keys across rows, in first-seen order
        let mut keys: Vec<String> = Vec::new();
        for row in &report.rows {
            if let Some(map) = row.as_object() {
                for k in map.keys() {
                    if !keys.iter().any(|e| e == k) {
                        keys.push(k.clone());
                    }
                }
            }
        }
        out.push_str(&keys.join(","));
        out.push('\n');
        for row in &report.rows {
            let map = row.as_object();
            let line: Vec<String> = keys
                .iter()
                .map(|k| {
                    map.and_then(|m| m.get(k))
                        .map(render_csv_value)
                        .unwrap_or_default()
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str("claim_id,paper_anchor,verdict,seed,runtime_ms,witnesses\n");
    for c in &report.certificates {
        let verdict = match c.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::OutOfRange => "out-of-range",
        };
        let witnesses = c
            .witnesses
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("; ");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.claim_id,
            c.paper_anchor,
            verdict,
            c.seed.map(|s| s.to_string()).unwrap_or_default(),
            c.runtime_ms,
            csv_escape(&witnesses)
        ));
    }
    out
}

fn render_csv_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => csv_escape(s),
        other => csv_escape(&other.to_string()),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
