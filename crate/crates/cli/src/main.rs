//! `forge`: build groups and families, verify quadrangles, derive planes,
//! extract subquadrangles and run the catalogue suites.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit status: 0 success, 1 a verification failed, 2 usage or malformed
/// input, 3 a budget ran out.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

pub fn usage(message: impl Into<String>) -> anyhow::Error {
    Exit { code: 2, message: message.into() }.into()
}

#[derive(Parser, Debug)]
#[command(name = "forge", version, about = "Kantor families, elation quadrangles and their planes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Node budget for searches
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (1 runs everything sequentially)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (or directory for bundles); stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Group catalogue file for suites
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Write the built-in catalogues as JSON files into --out (default: .)
    #[arg(long)]
    pub seed_doc: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Groups
    #[command(subcommand)]
    Group(GroupCmd),
    /// Kantor families
    #[command(subcommand)]
    Kantor(KantorCmd),
    /// Generalized quadrangles
    #[command(subcommand)]
    Gq(GqCmd),
    /// Perps, regularity and symmetries on the quadrangle of a family
    #[command(subcommand)]
    Reg(RegCmd),
    /// Affine planes
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Subquadrangles from subplanes
    #[command(subcommand)]
    Subgq(SubgqCmd),
    /// Catalogue suites
    #[command(subcommand)]
    Suite(SuiteCmd),
    /// Reports
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Build a group from a spec such as E2^3, Heis3, C4xC2, D8, Q8, C9:C3(4)
    Build { spec: String },
}

#[derive(Subcommand, Debug)]
pub enum KantorCmd {
    /// Check the four axioms; exit 1 with a witness on failure
    Verify { family: PathBuf },
    /// Frohardt classification of every pair
    Classify { family: PathBuf },
    /// Exhaustive search in a group (spec or group file)
    Search {
        #[arg(long)]
        group: String,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        r#type: Vec<usize>,
        #[arg(long)]
        require_stgq: bool,
        #[arg(long)]
        require_case: Option<u8>,
        #[arg(long)]
        max_families: Option<usize>,
    },
    /// A built-in family: e8, heis3, or conic4
    Builtin { name: String },
}

#[derive(Subcommand, Debug)]
pub enum GqCmd {
    /// The coset geometry of a family
    Build { family: PathBuf },
    /// Verify a geometry file; exit 1 with a witness on failure
    Verify { geometry: PathBuf },
    /// Benson's congruence for the elation maps of a family, or the table
    Benson {
        family: Option<PathBuf>,
        /// Print the (t+1)(s+1) + st ≡ st + 1 (mod s+t) table up to this bound
        #[arg(long)]
        table: Option<usize>,
    },
    /// Isomorphism between two geometry files
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
pub struct GqSource {
    /// Family file; its coset quadrangle is used
    #[arg(long, conflicts_with = "geometry")]
    pub family: Option<PathBuf>,
    /// Geometry file
    #[arg(long)]
    pub geometry: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RegCmd {
    /// {S}^⊥ for points (or lines with --lines)
    Perp {
        #[command(flatten)]
        src: GqSource,
        #[arg(long)]
        lines: bool,
        #[arg(required = true)]
        ids: Vec<usize>,
    },
    /// Is {X, Y} regular
    Pair {
        #[command(flatten)]
        src: GqSource,
        #[arg(long)]
        lines: bool,
        x: usize,
        y: usize,
    },
    /// Is X regular
    Point {
        #[command(flatten)]
        src: GqSource,
        #[arg(long)]
        lines: bool,
        x: usize,
    },
    /// Symmetries about X within the elation group
    Symmetry {
        family: PathBuf,
        #[arg(long)]
        lines: bool,
        #[arg(default_value_t = 0)]
        x: usize,
    },
    /// Property (*) at the elation point
    Star {
        family: PathBuf,
        #[arg(long)]
        line: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlaneCmd {
    /// The plane at the elation point of a family's quadrangle
    Derive { family: PathBuf },
    /// The plane of the first spread of PG(2h-1, q)
    FromSpread {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
    /// Subplanes of order r through the base point of a family's plane
    Subplanes {
        family: PathBuf,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SubgqCmd {
    /// Induced subquadrangles for every subplane of the given order
    Extract {
        #[arg(long)]
        parent: Option<PathBuf>,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        subplane_order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    /// No type-(t,t) family is in Frohardt's case (3)
    Frohardt {
        #[arg(long)]
        t: usize,
    },
    /// Skew-translation families with even t live in elementary abelian groups
    Evensq {
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Combine suite reports
    Merge {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = e.downcast_ref::<Exit>().map_or(1, |x| x.code);
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
