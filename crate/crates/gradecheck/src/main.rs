//! `gradecheck`: verify gradings, compute universal groups, emit the
//! catalog, run the Kantor construction and the full claim report.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when a
//! file cannot be read or parsed.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gradecheck::format::{emit_pair, parse_algebra, parse_grading, FormatError};
use gradecheck::suite::{run_suite, SuiteOptions};
use gradecheck_core::algebra::Algebra;
use gradecheck_core::constructions::{bases, catalog, catalog_names};
use gradecheck_core::field::{matrix_rank, RankMethod};
use gradecheck_core::grading::{universal_group, verify, Grading};
use gradecheck_core::kantor::{check_lie, extend_grading, kantor, LieCheck};

#[derive(Parser)]
#[command(name = "gradecheck", version, about = "Exact checks for gradings on structurable algebras")]
struct Cli {
    /// Seed for sampled Jacobi checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Files {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    grading: PathBuf,
}

#[derive(Args)]
struct Primes {
    /// First prime for modular ranks, in (2^31, 2^62).
    #[arg(long)]
    prime: Option<u64>,
    /// Second prime; both are needed to override the defaults.
    #[arg(long, requires = "prime")]
    prime2: Option<u64>,
}

impl Primes {
    fn method(&self) -> Result<RankMethod, Failure> {
        match (self.prime, self.prime2) {
            (None, None) => Ok(RankMethod::default()),
            (Some(p), Some(p2)) => Ok(RankMethod::Modular { p, p2 }),
            _ => Err(Failure::Tooling("--prime and --prime2 go together".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the grading axioms, optionally with the involution.
    Verify {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        involution: bool,
        #[command(flatten)]
        primes: Primes,
    },
    /// Compute the universal group of a grading.
    UniversalGroup {
        #[command(flatten)]
        files: Files,
    },
    /// List the catalog or write one entry as an algebra and grading file.
    Catalog {
        #[arg(long, conflicts_with = "name")]
        list: bool,
        #[arg(long)]
        name: Option<String>,
        /// Directory for NAME.algebra.json and NAME.grading.json.
        #[arg(long, requires = "name")]
        emit: Option<PathBuf>,
    },
    /// Build the Kantor Lie algebra and check the Lie axioms.
    Kantor {
        /// Algebra file; the algebra must be structurable.
        #[arg(long, conflicts_with = "builtin")]
        algebra: Option<PathBuf>,
        /// One of cxf, cxk, cxh, tc, cxc.
        #[arg(long)]
        builtin: Option<String>,
        /// Grading on the algebra to extend to a Z x G grading.
        #[arg(long, requires = "algebra")]
        grading: Option<PathBuf>,
        /// Check Jacobi on every triple instead of sampling.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Run every claim and write a JSON report.
    Report {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sample Jacobi on the 133- and 248-dimensional algebras only.
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[command(flatten)]
        primes: Primes,
    },
}

enum Failure {
    /// A check failed.
    Check(String),
    /// Files, arguments or I/O.
    Tooling(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Algebra(e) => Failure::Check(format!("algebra fails its axioms: {e}")),
            e => Failure::Tooling(e.to_string()),
        }
    }
}

fn tooling<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Tooling(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Tooling(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Arc<Algebra>, Failure> {
    let text = read(path)?;
    parse_algebra(&text).map(Arc::new).map_err(|e| match Failure::from(e) {
        Failure::Tooling(m) => Failure::Tooling(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load(files: &Files) -> Result<Grading, Failure> {
    let a = load_algebra(&files.algebra)?;
    let text = read(&files.grading)?;
    parse_grading(&text, a).map_err(|e| match e {
        FormatError::Algebra(e) => Failure::Check(e.to_string()),
        e => Failure::Tooling(format!("{}: {e}", files.grading.display())),
    })
}

/// Writes to stdout; a closed pipe is not an error worth a panic.
fn print(v: &serde_json::Value) {
    let text = serde_json::to_string_pretty(v).expect("values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { files, involution, primes } => {
            let rank = primes.method()?;
            let g = load(&files)?;
            let r = verify(&g, involution);
            let comps: BTreeMap<String, usize> = g.components().into_iter().map(|(d, ix)| (d.to_string(), ix.len())).collect();
            // the components must also form a direct sum
            let rows: Vec<_> = g.components().values().flat_map(|ix| ix.iter().map(|&i| g.basis_vector(i))).collect();
            let span = matrix_rank(&rows, g.dim(), rank).map_err(tooling)?;
            print(&json!({ "report": r, "components": comps, "rank_of_components": span, "dim": g.dim() }));
            if r.passed && span == g.dim() {
                Ok(())
            } else {
                Err(Failure::Check("grading fails verification".into()))
            }
        }
        Command::UniversalGroup { files } => {
            let g = load(&files)?;
            let u = universal_group(&g).map_err(|e| Failure::Check(e.to_string()))?;
            let images: Vec<_> = u.support.iter().zip(&u.images).map(|(s, i)| json!([s.to_string(), i.to_string()])).collect();
            print(&json!({
                "group": u.group.to_string(),
                "free_rank": u.group.free_rank(),
                "torsion": u.group.torsion(),
                "invariant_factors": u.group.invariant_factors(),
                "support_images": images,
            }));
            Ok(())
        }
        Command::Catalog { list, name, emit } => {
            if list || name.is_none() {
                let mut out = std::io::stdout().lock();
                for n in catalog_names() {
                    let _ = writeln!(out, "{n}");
                }
                return Ok(());
            }
            let name = name.expect("checked above");
            let e = catalog(&name).map_err(|e| Failure::Check(e.to_string()))?;
            match emit {
                None => print(&json!({
                    "name": e.name,
                    "description": e.description,
                    "algebra": e.algebra.name(),
                    "dim": e.algebra.dim(),
                    "stated_group": e.stated_group.to_string(),
                })),
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(tooling)?;
                    let (at, gt) = emit_pair(&e.grading);
                    let ap = dir.join(format!("{name}.algebra.json"));
                    let gp = dir.join(format!("{name}.grading.json"));
                    std::fs::write(&ap, at).map_err(tooling)?;
                    std::fs::write(&gp, gt).map_err(tooling)?;
                    let _ = writeln!(std::io::stdout().lock(), "{}\n{}", ap.display(), gp.display());
                }
            }
            Ok(())
        }
        Command::Kantor { algebra, builtin, grading, full, samples } => {
            let a = match (&algebra, builtin.as_deref()) {
                (Some(p), _) => load_algebra(p)?,
                (None, Some(b)) => {
                    let bs = bases();
                    match b {
                        "cxf" => bs.cf.clone(),
                        "cxk" => bs.ck.clone(),
                        "cxh" => bs.ch.clone(),
                        "tc" => bs.smirnov.algebra().clone(),
                        "cxc" => bs.cc.clone(),
                        other => return Err(Failure::Tooling(format!("unknown builtin {other:?}; use cxf, cxk, cxh, tc or cxc"))),
                    }
                }
                (None, None) => return Err(Failure::Tooling("give --algebra or --builtin".into())),
            };
            let l = kantor(&a).map_err(|e| Failure::Check(e.to_string()))?;
            let mode = if full { LieCheck::Full } else { LieCheck::Sampled { seed: cli.seed, n: samples } };
            let r = check_lie(&l, mode);
            let mut out = json!({
                "algebra": a.name(),
                "dim": l.dim(),
                "component_dims": l.layout().component_dims(),
                "lie": r,
            });
            let mut ok = r.passed;
            if let (Some(alg), Some(gp)) = (&algebra, &grading) {
                let g = load(&Files { algebra: alg.clone(), grading: gp.clone() })?;
                let ext = extend_grading(&l, &g).map_err(|e| Failure::Check(e.to_string()))?;
                let u = universal_group(&ext).map_err(|e| Failure::Check(e.to_string()))?;
                out["induced_group"] = json!(u.group.to_string());
                ok &= verify(&ext, false).passed;
            }
            print(&out);
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("Lie axioms fail".into()))
            }
        }
        Command::Report { suite, out, fast, samples, primes } => {
            if suite != "paper" {
                return Err(Failure::Tooling(format!("unknown suite {suite:?}; the only suite is \"paper\"")));
            }
            let opts = SuiteOptions { fast, seed: cli.seed, samples, rank: primes.method()? };
            let claims = run_suite(&opts);
            let failed = claims.iter().filter(|c| !c.passed).count();
            for c in &claims {
                eprintln!("{} {:<28} {:>8.2}s  {}", if c.passed { "ok  " } else { "FAIL" }, c.id, c.elapsed_s, c.claim);
            }
            let doc = json!({
                "suite": suite,
                "fast": fast,
                "seed": cli.seed,
                "claims": claims,
                "passed": claims.len() - failed,
                "failed": failed,
            });
            let text = serde_json::to_string_pretty(&doc).expect("values serialize");
            match out {
                Some(p) => std::fs::write(&p, text + "\n").map_err(tooling)?,
                None => {
                    let _ = writeln!(std::io::stdout().lock(), "{text}");
                }
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} claims failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("gradecheck: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Tooling(m)) => {
            eprintln!("gradecheck: {m}");
            ExitCode::from(2)
        }
    }
}
