use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ihara_classnum::graph::{
    cycle_counts, pgt_rows, zeta_inverse_bass, zeta_inverse_hashimoto, GraphError, MultiGraph,
};
use ihara_classnum::quad::{enumerate_l_s, Discriminant, FormClassGroup};
use ihara_classnum::report::{classgroup_listing, cycles_csv, orders_csv};
use ihara_classnum::verify::{VerificationConfig, Verifier};

#[derive(Parser)]
#[command(
    name = "ihara",
    version,
    about = "Ihara zeta functions and class-number sums of quadratic orders"
)]
struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Bass,
    Hashimoto,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Reciprocal zeta polynomial of a graph, coefficients in ascending degree.
    Zeta {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        formula: Formula,
    },
    /// Non-backtracking cycle counts, primitive counts and (for regular graphs) pi(m) m / q^m.
    Cycles {
        graph: PathBuf,
        #[arg(long)]
        m_max: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduced forms and composition table for a discriminant.
    Classgroup {
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Orders with |D| <= bound in the family for (S, p).
    Orders {
        #[arg(short = 'S', long = "s", value_delimiter = ',', required = true)]
        s: Vec<u64>,
        #[arg(short, long)]
        p: u64,
        #[arg(long)]
        d_bound: u64,
        #[arg(long, default_value_t = 30)]
        k_cap: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Class-number sums against p^(Delta m) / (2m) for m = 1..m_max.
    Verify {
        #[arg(short, long)]
        p: u64,
        #[arg(short = 'S', long = "s", value_delimiter = ',', required = true)]
        s: Vec<u64>,
        #[arg(long)]
        m_max: u32,
        #[arg(long)]
        k_cap: Option<u32>,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        scan_bound: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Report destination; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the JSON mirror here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn graph_failure(e: GraphError) -> Failure {
    let code = match e {
        GraphError::LowDegree { .. } | GraphError::Empty => 3,
        _ => 2,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn load_graph(path: &Path) -> Result<MultiGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = MultiGraph::from_json(&text)
        .map_err(|e| usage(format!("{}: malformed graph file: {e}", path.display())))?;
    g.check_md2().map_err(graph_failure)?;
    Ok(g)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(e.to_string()))
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Zeta { graph, formula } => {
            let g = load_graph(&graph)?;
            let text = match formula {
                Formula::Bass => format!("{}\n", zeta_inverse_bass(&g).map_err(graph_failure)?),
                Formula::Hashimoto => {
                    format!("{}\n", zeta_inverse_hashimoto(&g).map_err(graph_failure)?)
                }
                Formula::Both => {
                    let b = zeta_inverse_bass(&g).map_err(graph_failure)?;
                    let h = zeta_inverse_hashimoto(&g).map_err(graph_failure)?;
                    let verdict = if b == h { "EQUAL" } else { "DIFFERENT" };
                    format!("bass {b}\nhashimoto {h}\n{verdict}\n")
                }
            };
            emit(None, &text)
        }
        Command::Cycles {
            graph,
            m_max,
            output,
        } => {
            let g = load_graph(&graph)?;
            let text = if g.is_regular() && g.is_connected() {
                let (table, rows) = pgt_rows(&g, m_max).map_err(graph_failure)?;
                cycles_csv(&table, Some(&rows))
            } else {
                cycles_csv(&cycle_counts(&g, m_max).map_err(graph_failure)?, None)
            };
            emit(output.as_deref(), &text)
        }
        Command::Classgroup { d } => {
            let disc = Discriminant::new(d).map_err(usage)?;
            emit(None, &classgroup_listing(&FormClassGroup::new(disc)))
        }
        Command::Orders {
            s,
            p,
            d_bound,
            k_cap,
            output,
        } => {
            let orders = enumerate_l_s(&s, p, d_bound, k_cap).map_err(usage)?;
            emit(output.as_deref(), &orders_csv(&orders))
        }
        Command::Verify {
            p,
            s,
            m_max,
            k_cap,
            delta,
            scan_bound,
            format,
            output,
            json,
        } => {
            let cfg = VerificationConfig {
                p,
                s,
                m_max,
                k_cap,
                delta_override: delta,
                scan_bound,
            };
            for w in cfg.warnings() {
                eprintln!("warning: {w}");
            }
            let report = Verifier::new(cfg).and_then(|v| v.report()).map_err(usage)?;
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            emit(output.as_deref(), &text)?;
            if let Some(path) = json {
                emit(Some(&path), &report.to_json())?;
            }
            if let Some(last) = report.last_row() {
                let summary = format!(
                    "delta={} m={} T_m={} ratio={} liminf_diag={}",
                    report.delta, last.m, last.t_m, last.ratio, last.liminf_diag
                );
                // keep standard output for the report itself when it goes there
                if output.is_some() {
                    println!("{summary}");
                } else {
                    eprintln!("{summary}");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
