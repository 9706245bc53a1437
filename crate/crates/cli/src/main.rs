use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use stardecomp::collapse::{
    check_hrc, check_rc, find_collapse, CollapseOutcome, HrcVerdict, RcVerdict, DEFAULT_BUDGET,
};
use stardecomp::corpus::{run_corpus, DEFAULT_SEED};
use stardecomp::decomp::{
    find_shelling, find_star_decomp, find_star_decomp_any, is_shedding_order, is_shelling,
    is_vertex_decomposable, verify_sdv, verify_star_decomp, SdvCert, SheddingCheck, SheddingOrder,
    ShellingCheck, ShellingOrder, ShellingSearch, StarDecompCert, StarSearch, VdOracle, VdSearch,
};
use stardecomp::homology::reduced_betti;
use stardecomp::pipeline::{shell_sd2, PipelineOutcome};
use stardecomp::{sd, Complex, Error, Vertex};

const OK: u8 = 0;
const REJECTED: u8 = 1;
const HRC_FAILURE: u8 = 2;
const OUT_OF_BUDGET: u8 = 3;
const USAGE: u8 = 64;

/// Decomposition checks for simplicial complexes given as facet lists.
///
/// Exit codes: 0 success, 1 negative or rejected verdict, 2 (HRC) failure,
/// 3 search budget exceeded, 64 bad input or usage.
#[derive(Parser)]
#[command(name = "stardecomp", version)]
struct Cli {
    /// Node budget for every search.
    #[arg(long, global = true, env = "DECOMP_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barycentric subdivision as a facet list.
    Sd {
        file: PathBuf,
        /// Write the map from new vertex ids to faces as JSON.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced Z/2 Betti numbers, starting in dimension -1.
    Betti { file: PathBuf },
    /// Search for a collapse to a vertex.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        target: Option<Vertex>,
    },
    CheckRc { file: PathBuf },
    CheckHrc { file: PathBuf },
    /// Verify a facet order, or search for one.
    CheckShelling {
        file: PathBuf,
        /// JSON `{"facets": [[...], ...]}`.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Verify a shedding order, or decide vertex decomposability.
    CheckShedding {
        file: PathBuf,
        /// JSON `{"vertices": [...]}`.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Verify a star decomposition certificate, or search for one.
    CheckStardecomp {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        xset: Option<Vec<Vertex>>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Verify a decomposition in vertices of the subdivision of FILE.
    CheckSdv {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        xset: Vec<Vertex>,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Build and verify a shelling of the second barycentric subdivision.
    ShellSd2 {
        file: PathBuf,
        /// Full report with every certificate.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the bundled corpus against its known verdicts.
    Corpus {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => OUT_OF_BUDGET,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: USAGE, message }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<Complex, Failure> {
    Complex::parse(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = cli.budget;
    match cli.command {
        Command::Sd { file, labels, out } => {
            let s = sd(&read_complex(&file)?);
            let text = s.complex.to_facet_list();
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            if let Some(p) = labels {
                write(&p, &serde_json::to_string(&s.label_map()).expect("serializable"))?;
            }
            Ok(OK)
        }
        Command::Betti { file } => {
            let b = reduced_betti(&read_complex(&file)?);
            print(&serde_json::json!({ "betti": b.betti }));
            Ok(OK)
        }
        Command::Collapse { file, target } => {
            let outcome = find_collapse(&read_complex(&file)?, target, budget)?;
            print(&outcome);
            Ok(match outcome {
                CollapseOutcome::Collapsible { .. } => OK,
                CollapseOutcome::NotCollapsible => REJECTED,
                CollapseOutcome::BudgetExceeded => OUT_OF_BUDGET,
            })
        }
        Command::CheckRc { file } => {
            let v = check_rc(&read_complex(&file)?, budget)?;
            print(&v);
            Ok(match v {
                RcVerdict::Certified { .. } | RcVerdict::Vacuous => OK,
                RcVerdict::Fails { .. } => REJECTED,
                RcVerdict::BudgetExceeded => OUT_OF_BUDGET,
            })
        }
        Command::CheckHrc { file } => {
            let v = check_hrc(&read_complex(&file)?, budget)?;
            print(&v);
            Ok(match v {
                HrcVerdict::Certified { .. } => OK,
                HrcVerdict::Fails { .. } => HRC_FAILURE,
                HrcVerdict::BudgetExceeded { .. } => OUT_OF_BUDGET,
            })
        }
        Command::CheckShelling { file, order } => {
            let k = read_complex(&file)?;
            match order {
                Some(p) => {
                    let o: ShellingOrder = read_json(&p)?;
                    let v = is_shelling(&k, &o)?;
                    print(&v);
                    Ok(if v == ShellingCheck::Ok { OK } else { REJECTED })
                }
                None => {
                    let s = find_shelling(&k, budget)?;
                    print(&s);
                    Ok(match s {
                        ShellingSearch::Found { .. } => OK,
                        ShellingSearch::NotShellable => REJECTED,
                        ShellingSearch::BudgetExceeded => OUT_OF_BUDGET,
                    })
                }
            }
        }
        Command::CheckShedding { file, order } => {
            let k = read_complex(&file)?;
            match order {
                Some(p) => {
                    let o: SheddingOrder = read_json(&p)?;
                    let v = is_shedding_order(&k, &o, &mut VdOracle::new(budget))?;
                    print(&v);
                    Ok(match v {
                        SheddingCheck::Ok => OK,
                        SheddingCheck::Fail { .. } => REJECTED,
                        SheddingCheck::BudgetExceeded { .. } => OUT_OF_BUDGET,
                    })
                }
                None => {
                    let s = is_vertex_decomposable(&k, budget)?;
                    print(&s);
                    Ok(match s {
                        VdSearch::Decomposable { .. } => OK,
                        VdSearch::No => REJECTED,
                        VdSearch::BudgetExceeded => OUT_OF_BUDGET,
                    })
                }
            }
        }
        Command::CheckStardecomp { file, xset, cert } => {
            let k = read_complex(&file)?;
            match cert {
                Some(p) => {
                    let c: StarDecompCert = read_json(&p)?;
                    let xset = xset.ok_or_else(|| usage("--cert needs --xset".into()))?;
                    verdict(verify_star_decomp(&k, &xset, &c))
                }
                None => {
                    let s = match xset {
                        Some(x) => find_star_decomp(&k, &x, budget),
                        None => find_star_decomp_any(&k, budget),
                    };
                    print(&s);
                    Ok(match s {
                        StarSearch::Found { .. } => OK,
                        StarSearch::No => REJECTED,
                        StarSearch::BudgetExceeded => OUT_OF_BUDGET,
                    })
                }
            }
        }
        Command::CheckSdv { file, xset, cert } => {
            let k = read_complex(&file)?;
            let c: SdvCert = read_json(&cert)?;
            verdict(verify_sdv(&k, &xset, &c))
        }
        Command::ShellSd2 { file, out } => {
            let k = read_complex(&file)?;
            let outcome = shell_sd2(&k, budget)?;
            let code = outcome.exit_code() as u8;
            match &outcome {
                PipelineOutcome::Shelled { report } => {
                    print(&serde_json::json!({
                        "result": "shelled",
                        "sd2_facets": report.shelling.facets.len(),
                        "stats": report.stats,
                    }));
                }
                other => print(other),
            }
            if let Some(p) = out {
                write(&p, &serde_json::to_string(&outcome).expect("serializable"))?;
            }
            Ok(code)
        }
        Command::Corpus { seed } => {
            let (checks, stats) = run_corpus(seed, budget)?;
            let mut failed = 0;
            for c in &checks {
                if !c.ok {
                    failed += 1;
                }
                println!(
                    "{} {} {}: expected {}, got {}",
                    if c.ok { "ok  " } else { "FAIL" },
                    c.entry,
                    c.predicate,
                    c.expected,
                    c.actual
                );
            }
            println!(
                "{} checks, {failed} failed; {} pipeline runs, {} homology checks ({} on links)",
                checks.len(),
                stats.pipeline_runs,
                stats.homology_checks,
                stats.lemma_checks
            );
            Ok(if failed == 0 { OK } else { REJECTED })
        }
    }
}

fn verdict(r: Result<(), stardecomp::decomp::VerifyError>) -> Result<u8, Failure> {
    match r {
        Ok(()) => {
            print(&serde_json::json!({ "result": "ok" }));
            Ok(OK)
        }
        Err(e) => {
            print(&serde_json::json!({ "result": "rejected", "error": e }));
            Ok(REJECTED)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
