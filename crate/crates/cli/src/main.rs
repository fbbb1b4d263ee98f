use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use blowup_core::acceptance::{run_suite, SuiteOptions, DEFAULT_SEED, DEFAULT_TRIALS};
use blowup_core::gluing::{boxplus0, boxplus_l, classify_c_image, BlowupCenters, CImage, Gluing, X2Point};
use blowup_core::io::{config_to_json, parse_config, with_provenance};
use blowup_core::monad::special::{verify_special0, verify_special1};
use blowup_core::monad::AnyConfig;
use blowup_core::spectral::{
    build_cover_charge1, build_cover_charge2_q2, closed_form_betti, compute_pages, simplex_assembly_betti, BettiTable,
};
use blowup_core::{Config, Error, GaussianRational, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "blowup", version, about = "Exact monad calculus and Betti tables for instantons on blow-ups of the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Betti table of a moduli space.
    Betti {
        #[arg(long)]
        charge: u32,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 24)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Run checks on a configuration file.
    VerifyConfig {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Check::Integrability, Check::Nondegeneracy])]
        checks: Vec<Check>,
        #[arg(long)]
        json: bool,
    },
    /// Glue two charge-one configurations into a charge-two configuration.
    ///
    /// Two plane configurations are glued with ⊞₀, a blow-up and a plane
    /// configuration with ⊞_L, and two blow-up configurations into a point
    /// seen from both centers (requires --xl and --xr).
    Glue {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Left center as "x1,x2".
        #[arg(long)]
        xl: Option<String>,
        /// Right center as "x1,x2".
        #[arg(long)]
        xr: Option<String>,
        /// Neighbourhood radius as "p/q"; derived from the centers by default.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Decide whether a charge-two blow-up configuration comes from C.
    Classify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        xl: String,
        #[arg(long)]
        xr: String,
    },
    /// Run the acceptance suite.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Only criteria whose name or group contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    ClosedForm,
    Cech,
    Simplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Integrability,
    Nondegeneracy,
    MonadComplex,
    SpecialSubspaces,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Integrability => "integrability",
            Check::Nondegeneracy => "nondegeneracy",
            Check::MonadComplex => "monad-complex",
            Check::SpecialSubspaces => "special-subspaces",
        }
    }
}

/// Bad input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = e.downcast_ref::<Usage>().is_some()
                || matches!(
                    e.downcast_ref::<Error>(),
                    Some(
                        Error::Parse(_)
                            | Error::ShapeMismatch(_)
                            | Error::InvalidCenters(_)
                            | Error::InvalidParameter(_)
                            | Error::EigenvalueCollision(_)
                            | Error::ChargeTooLarge(_)
                    )
                );
            ExitCode::from(if is_usage { 2 } else { 1 })
        }
    }
}

/// Writes to stdout; a closed pipe ends the program quietly.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => Ok(other?),
    }
}

fn emit_json(v: &Value) -> anyhow::Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

/// `Ok(false)` is a verification failure.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Betti { charge, q, max_degree, method, format } => {
            let table = betti(charge, q, max_degree, method)?;
            match format {
                Format::Tsv => emit(&table.to_tsv())?,
                Format::Json => emit_json(&table.to_json())?,
            }
            Ok(true)
        }
        Command::VerifyConfig { file, checks, json } => verify(&file, &checks, json),
        Command::Glue { left, right, xl, xr, delta } => {
            glue(&left, &right, xl.as_deref(), xr.as_deref(), delta.as_deref())?;
            Ok(true)
        }
        Command::Classify { file, xl, xr } => {
            classify(&file, &xl, &xr)?;
            Ok(true)
        }
        Command::Suite { seed, trials, filter } => {
            let outcomes = run_suite(&SuiteOptions { seed, trials, filter });
            if outcomes.is_empty() {
                return Err(usage("the filter matches no criterion"));
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            text += &format!("{} passed, {failed} failed\n", outcomes.len() - failed);
            emit(&text)?;
            Ok(failed == 0)
        }
    }
}

fn betti(charge: u32, q: usize, max_degree: u32, method: Method) -> anyhow::Result<BettiTable> {
    if !(1..=2).contains(&charge) {
        return Err(usage(format!("charge {charge} is not supported (1 or 2)")));
    }
    Ok(match method {
        Method::ClosedForm => closed_form_betti(charge, q, max_degree)?,
        Method::Cech => {
            let cover = match (charge, q) {
                (1, _) => build_cover_charge1(q)?,
                (2, 2) => build_cover_charge2_q2()?,
                _ => return Err(usage("the Cech method needs charge 1, or charge 2 with q = 2")),
            };
            compute_pages(&cover, max_degree)?.betti
        }
        Method::Simplex => {
            if charge != 2 || q < 2 {
                return Err(usage("the simplex method needs charge 2 and q >= 2"));
            }
            simplex_assembly_betti(q, max_degree)?
        }
    })
}

fn read_config(path: &Path) -> anyhow::Result<Config> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_config(&text).with_context(|| path.display().to_string())
}

fn check_result(m: &Config, check: Check) -> Result<(bool, String), Error> {
    Ok(match (check, m) {
        (Check::Integrability, m) => {
            let ok = m.is_integrable();
            (ok, if ok { "integrable".into() } else { "residual or effectiveness fails".into() })
        }
        (Check::Nondegeneracy, AnyConfig::Plane(c)) => {
            let ok = c.nondegenerate()?;
            (ok, if ok { "no special subspace".into() } else { "degenerate".into() })
        }
        (Check::Nondegeneracy, AnyConfig::Blowup(c)) => {
            let ok = c.nondegenerate()?;
            (ok, if ok { "no special subspace or pair".into() } else { "degenerate".into() })
        }
        (Check::MonadComplex, m) => {
            let zero = match m {
                AnyConfig::Plane(c) => c.monad_residual().is_zero(),
                AnyConfig::Blowup(c) => c.monad_residual().is_zero(),
            };
            (zero, if zero { "B·A = 0".into() } else { "B·A != 0".into() })
        }
        (Check::SpecialSubspaces, AnyConfig::Plane(c)) => {
            let r = c.special_subspaces()?;
            let ok = r.lines.iter().all(|s| verify_special0(c, s));
            (ok, format!("{} special lines, b = 0: {}, c = 0: {}", r.lines.len(), r.b_zero, r.c_zero))
        }
        (Check::SpecialSubspaces, AnyConfig::Blowup(c)) => {
            let r = c.special_subspaces()?;
            let ok = r.lines.iter().all(|s| verify_special1(c, s));
            (ok, format!("{} special pairs, b = 0: {}, c = 0: {}", r.lines.len(), r.b_zero, r.c_zero))
        }
    })
}

fn verify(file: &Path, checks: &[Check], as_json: bool) -> anyhow::Result<bool> {
    let m = read_config(file)?;
    let mut all = true;
    let mut report = Vec::new();
    for &check in checks {
        let (pass, detail) = check_result(&m, check).unwrap_or_else(|e| (false, e.to_string()));
        all &= pass;
        report.push((check.name(), pass, detail));
    }
    if as_json {
        let checks: Vec<Value> = report.iter().map(|(n, p, d)| json!({"check": n, "pass": p, "detail": d})).collect();
        let params = json!({"file": file.display().to_string()});
        emit_json(&with_provenance(json!({"pass": all, "checks": checks}), "verify-config", params))?;
    } else {
        let text: String = report
            .iter()
            .map(|(name, pass, detail)| format!("{name}\t{}\t{detail}\n", if *pass { "pass" } else { "FAIL" }))
            .collect();
        emit(&text)?;
    }
    Ok(all)
}

fn parse_point(s: &str) -> anyhow::Result<[GaussianRational; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(usage(format!("expected a point \"x1,x2\", got {s:?}")));
    };
    let p = |t: &str| t.parse::<GaussianRational>().map_err(|e| usage(format!("{t:?}: {e}")));
    Ok([p(a)?, p(b)?])
}

fn gluing(xl: Option<&str>, xr: Option<&str>, delta: Option<&str>) -> anyhow::Result<Gluing<GaussianRational>> {
    let (Some(xl), Some(xr)) = (xl, xr) else {
        return Err(usage("this gluing needs --xl and --xr"));
    };
    let centers = BlowupCenters::new(parse_point(xl)?, parse_point(xr)?)?;
    Ok(match delta {
        Some(d) => {
            let d: Rational = d.parse().map_err(|_| usage(format!("delta {d:?} is not a rational \"p/q\"")))?;
            Gluing::with_delta(centers, d)?
        }
        None => Gluing::new(centers),
    })
}

fn glue(left: &Path, right: &Path, xl: Option<&str>, xr: Option<&str>, delta: Option<&str>) -> anyhow::Result<()> {
    let (l, r) = (read_config(left)?, read_config(right)?);
    if l.k() != 1 || r.k() != 1 {
        return Err(usage("both inputs must have charge one"));
    }
    let mut params = json!({"left": left.display().to_string(), "right": right.display().to_string()});
    let (operation, result) = match (&l, &r) {
        (AnyConfig::Plane(a), AnyConfig::Plane(b)) => ("boxplus0", config_to_json(&AnyConfig::Plane(boxplus0(a, b)?))),
        (AnyConfig::Blowup(a), AnyConfig::Plane(b)) => ("boxplus_l", config_to_json(&AnyConfig::Blowup(boxplus_l(a, b)?))),
        (AnyConfig::Blowup(a), AnyConfig::Blowup(b)) => {
            let g = gluing(xl, xr, delta)?;
            params["xl"] = json!(g.centers.xl.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            params["xr"] = json!(g.centers.xr.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            params["delta"] = json!(g.delta.to_string());
            let X2Point::Pair { left, right } = X2Point::glue(a, b, &g)? else {
                bail!("gluing produced a point of C");
            };
            let sides = json!({
                "left": config_to_json(&AnyConfig::Blowup(left)),
                "right": config_to_json(&AnyConfig::Blowup(right)),
            });
            ("glue_pair", sides)
        }
        (AnyConfig::Plane(_), AnyConfig::Blowup(_)) => {
            return Err(usage("put the blow-up configuration first: --left blow-up, --right plane"));
        }
    };
    emit_json(&with_provenance(result, operation, params))
}

fn classify(file: &Path, xl: &str, xr: &str) -> anyhow::Result<()> {
    let AnyConfig::Blowup(m) = read_config(file)? else {
        return Err(usage("classify needs a config1 file"));
    };
    if m.k() != 2 {
        return Err(usage(format!("classify needs charge two, got {}", m.k())));
    }
    let centers = BlowupCenters::new(parse_point(xl)?, parse_point(xr)?)?;
    let result = match classify_c_image(&m, &centers)? {
        CImage::InImage(t) => json!({"in_image": true, "block_form": config_to_json(&AnyConfig::Blowup(t))}),
        CImage::NotInImage(why) => json!({"in_image": false, "reason": why}),
    };
    let params = json!({"file": file.display().to_string(), "xl": xl, "xr": xr});
    emit_json(&with_provenance(result, "classify", params))
}
