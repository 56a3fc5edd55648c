//! `lcsq`: command-line driver for constraint-system graphs, solution
//! groups, certificates and isomorphism checks.
//!
//! Exit codes: 0 success, 1 verified negative, 2 usage or parse error,
//! 3 coset cap hit.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "lcsq", version, about = "Linear constraint systems, their graphs and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the linear system comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// System file: rows of M separated by ';', then '|', then b.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Graph file for H (vertex count, then 1-indexed edges); the system is
    /// its incidence system.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    #[value(name = "G")]
    G,
    #[value(name = "Gstar")]
    Gstar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decolor {
    None,
    Vertices,
    Full,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertMode {
    Qut,
    Qiso,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    /// The Mermin-Peres square (K3,3 incidence systems only).
    Pauli,
    /// The solution group inside its exact group algebra.
    Regular,
    /// A dense representation read from --rep-file.
    File,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build G(M,b) or G_*(M,b), optionally decolored.
    Build {
        #[command(flatten)]
        source: Source,
        /// Right-hand side as a bit string; overrides the system file.
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value = "G")]
        construction: Construction,
        #[arg(long, value_enum, default_value = "none")]
        decolor: Decolor,
        /// Edge color kept as plain edges when decoloring.
        #[arg(long)]
        c0: Option<String>,
        /// Graph JSON output; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate the solution group.
    Group {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        b: Option<String>,
        /// Use the homogeneous group (gamma = 1).
        #[arg(long)]
        homogeneous: bool,
        /// Word to test for triviality, e.g. "gamma" or "x1 x2 x1 x2".
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        presentation_out: Option<PathBuf>,
        #[arg(long)]
        cosets_out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and verify a magic-unitary certificate.
    Cert {
        #[arg(value_enum)]
        mode: CertMode,
        #[command(flatten)]
        source: Source,
        /// Right-hand side for qut.
        #[arg(long)]
        b: Option<String>,
        /// Row-side right-hand side for qiso.
        #[arg(long)]
        b1: Option<String>,
        /// Column-side right-hand side for qiso.
        #[arg(long)]
        b2: Option<String>,
        #[arg(long, value_enum)]
        rep: RepKind,
        #[arg(long)]
        rep_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "Gstar")]
        construction: Construction,
        /// Also lift the certificate to the fully decolored graphs.
        #[arg(long)]
        lift: bool,
        #[arg(long)]
        c0: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide isomorphism of two graph JSON files.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Write the bijection found.
        #[arg(long)]
        map_out: Option<PathBuf>,
        /// Check a given bijection instead of searching.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Automorphism group of a graph JSON file.
    Aut {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve Mx = b over F2.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        b: Option<String>,
    },
}

/// A run that stopped at the coset cap.
#[derive(Debug)]
pub struct CapHit(pub usize);

impl std::fmt::Display for CapHit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "coset enumeration hit the cap of {} cosets", self.0)
    }
}

impl std::error::Error for CapHit {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            source,
            b,
            construction,
            decolor,
            c0,
            out,
            dot,
        } => commands::build(&source, b.as_deref(), construction, decolor, c0.as_deref(), out, dot),
        Command::Group {
            source,
            b,
            homogeneous,
            word,
            cap,
            presentation_out,
            cosets_out,
            report,
        } => commands::group(commands::GroupArgs {
            source,
            b,
            homogeneous,
            word,
            cap,
            presentation_out,
            cosets_out,
            report,
        }),
        Command::Cert {
            mode,
            source,
            b,
            b1,
            b2,
            rep,
            rep_file,
            construction,
            lift,
            c0,
            tol,
            seed,
            cap,
            out,
            report,
        } => commands::cert(commands::CertArgs {
            mode,
            source,
            b,
            b1,
            b2,
            rep,
            rep_file,
            construction,
            lift,
            c0,
            tol,
            seed,
            cap,
            out,
            report,
        }),
        Command::Iso {
            first,
            second,
            map_out,
            check,
        } => commands::iso(&first, &second, map_out, check),
        Command::Aut { graph, out } => commands::aut(&graph, out),
        Command::Solve { source, b } => commands::solve(&source, b.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<CapHit>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
