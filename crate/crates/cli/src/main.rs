mod output;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use perm132::algebraic::extract_pq;
use perm132::conjectures::{closed_form_reports, size_vs_cells_counterexamples};
use perm132::invariants::all_suites;
use perm132::oracle::{joint_table, DEFAULT_GUARD};
use perm132::shapes::verify_exceptional;
use perm132::{
    census, enumerate_kernel_shapes, phi_series, psi_closed_form, psi_series, ShapeCatalog,
    DEFAULT_ORDER,
};

/// Permutations by number of 132 occurrences: kernel shapes, generating
/// functions, closed forms and brute-force checks.
#[derive(Parser, Debug)]
#[command(name = "perm132", version)]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "PERM132_THREADS")]
    threads: Option<usize>,

    /// Kernel shape catalog cache. Reused when it covers the requested
    /// level, regenerated otherwise.
    #[arg(long, global = true, value_name = "FILE")]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate kernel shapes of capacity at most R as JSON Lines.
    Shapes {
        #[arg(long, value_name = "R")]
        max_occ: u32,
        /// Write the catalog here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Confirm the exceptional shape is the only kernel of size 2r+1.
        #[arg(long)]
        verify_exceptional: bool,
    },
    /// Series coefficients of the generating function for exactly R occurrences.
    Gf {
        #[arg(long, value_name = "R")]
        occ: u32,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
        format: SeriesFormat,
    },
    /// Closed form ½(P + Q(1−4x)^(1/2−R)).
    ClosedForm {
        #[arg(long, value_name = "R")]
        occ: u32,
        #[arg(long, value_enum, default_value_t = ClosedFormat::Json)]
        format: ClosedFormat,
    },
    /// Series for exactly R occurrences and no increasing subsequence of length K.
    Restricted {
        #[arg(long, value_name = "R")]
        occ: u32,
        #[arg(long, value_name = "K", allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
        format: SeriesFormat,
    },
    /// Compare solver coefficients with brute force over S_n.
    Verify {
        #[arg(long, value_name = "R")]
        occ: u32,
        #[arg(long, value_name = "N")]
        max_n: usize,
        /// Check the restricted series for this K instead.
        #[arg(long, value_name = "K", allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Run the structural property sweeps over S_n.
    CheckInvariants {
        #[arg(long, value_name = "N", default_value_t = 8)]
        max_n: usize,
    },
    /// Report on the conjectured properties of closed forms and shapes.
    Conjectures {
        #[arg(long, value_name = "R", default_value_t = 6)]
        max_occ: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ClosedFormat {
    Json,
    Latex,
}

enum Failure {
    Usage(String),
    Mismatch,
    Other(String),
}

impl From<perm132::Error> for Failure {
    fn from(e: perm132::Error) -> Self {
        match e {
            perm132::Error::Guard { .. } => Failure::Usage(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.unwrap_or(0);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Shapes {
            max_occ,
            out: path,
            verify_exceptional: verify,
        } => {
            let catalog = load_catalog(cli.catalog.as_deref(), *max_occ)?;
            if *verify {
                for r in 1..=*max_occ {
                    verify_exceptional(r)?;
                }
                eprintln!("exceptional shapes verified for r <= {max_occ}");
            }
            match path {
                Some(p) => write_catalog(&catalog, p)?,
                None => catalog.write_jsonl(&mut out)?,
            }
            let c = census(&catalog);
            for (r, n) in &c.new_nonexceptional {
                eprintln!("r = {r}: {n} new nonexceptional shapes");
            }
        }
        Command::Gf { occ, order, format } => {
            let catalog = load_catalog(cli.catalog.as_deref(), *occ)?;
            let s = psi_series(&catalog, *occ, *order)?;
            output::series(&mut out, &s, *format == SeriesFormat::Csv)?;
        }
        Command::ClosedForm { occ, format } => {
            let catalog = load_catalog(cli.catalog.as_deref(), *occ)?;
            let a = psi_closed_form(&catalog, *occ)?;
            let form = extract_pq(&a, *occ);
            match format {
                ClosedFormat::Json => output::closed_form_json(&mut out, &form, *occ)?,
                ClosedFormat::Latex => output::closed_form_latex(&mut out, &form, *occ)?,
            }
        }
        Command::Restricted {
            occ,
            k,
            order,
            format,
        } => {
            let catalog = load_catalog(cli.catalog.as_deref(), *occ)?;
            let s = phi_series(&catalog, *occ, *k, *order)?;
            output::series(&mut out, &s, *format == SeriesFormat::Csv)?;
        }
        Command::Verify { occ, max_n, k } => {
            if *max_n > DEFAULT_GUARD {
                return Err(Failure::Usage(format!(
                    "--max-n {max_n} exceeds the limit of {DEFAULT_GUARD}"
                )));
            }
            let catalog = load_catalog(cli.catalog.as_deref(), *occ)?;
            let solver = match k {
                Some(k) => phi_series(&catalog, *occ, *k, *max_n)?,
                None => psi_series(&catalog, *occ, *max_n)?,
            };
            let mut rows = Vec::new();
            for n in 0..=*max_n {
                let table = joint_table(n)?;
                let oracle = match k {
                    Some(k) => table.restricted(*occ as u64, *k),
                    None => table.distribution().get(*occ as u64),
                };
                rows.push((n, solver.coeff(n).to_string(), oracle.to_string()));
            }
            let ok = output::verify_table(&mut out, &rows)?;
            out.flush()?;
            if !ok {
                return Err(Failure::Mismatch);
            }
        }
        Command::CheckInvariants { max_n } => {
            let reports = all_suites(*max_n);
            let mut ok = true;
            for rep in &reports {
                let status = if rep.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status}  {}  ({} checked, {} violations)",
                    rep.name, rep.checked, rep.violations
                )?;
                for e in &rep.examples {
                    writeln!(out, "      {e}")?;
                }
                ok &= rep.passed();
            }
            out.flush()?;
            if !ok {
                return Err(Failure::Mismatch);
            }
        }
        Command::Conjectures { max_occ } => {
            let catalog = load_catalog(cli.catalog.as_deref(), *max_occ)?;
            for rep in closed_form_reports(&catalog, *max_occ)? {
                writeln!(
                    out,
                    "r = {}: P, Q polynomial: {}; 2P, 2Q integral: {}; (1-4x) does not divide Q: {}",
                    rep.r, rep.polynomial, rep.half_integral, rep.q_coprime_to_one_minus_4x
                )?;
            }
            let counter = size_vs_cells_counterexamples(&catalog);
            writeln!(
                out,
                "shapes other than 1 with fewer entries than feasible cells: {}",
                if counter.is_empty() {
                    "none".to_string()
                } else {
                    counter.join(", ")
                }
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads the cached catalog when it is current and large enough, otherwise
/// enumerates and, if a cache path was given, rewrites it.
fn load_catalog(cache: Option<&Path>, r: u32) -> Result<ShapeCatalog, Failure> {
    if let Some(path) = cache {
        if let Ok(file) = File::open(path) {
            match ShapeCatalog::read_jsonl(BufReader::new(file)) {
                Ok(c) if c.max_occ >= r => return Ok(c),
                Ok(c) => eprintln!(
                    "catalog {} covers r <= {}, regenerating",
                    path.display(),
                    c.max_occ
                ),
                Err(e) => eprintln!("catalog {} unusable ({e}), regenerating", path.display()),
            }
        }
    }
    let catalog = enumerate_kernel_shapes(r)?;
    if let Some(path) = cache {
        write_catalog(&catalog, path)?;
    }
    Ok(catalog)
}

fn write_catalog(catalog: &ShapeCatalog, path: &Path) -> Result<(), Failure> {
    let mut w = BufWriter::new(File::create(path)?);
    catalog.write_jsonl(&mut w)?;
    w.flush()?;
    Ok(())
}
