mod battery;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasiherm_core::gf::prime_power;
use quasiherm_core::invariants::tables::Formulas;
use quasiherm_core::{Error, Field, GroupKind, Space};

use crate::output::{Format, Header, Report};

/// Default largest q accepted without --max-q.
const DEFAULT_MAX_Q: u32 = 7;

#[derive(Parser, Debug)]
#[command(name = "quasiherm", version, about = "Exact computations on the Hermitian Veronese curve of PG(3, q^2)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for the parallel sweeps.
    #[arg(long, env = "QUASIHERM_THREADS", global = true)]
    threads: Option<usize>,

    /// Raise the bound on q (sweeps grow like q^12).
    #[arg(long, default_value_t = DEFAULT_MAX_Q, global = true)]
    max_q: u32,

    /// Expectations to check against: as printed, or with the
    /// discrepancies found by exhaustive computation corrected.
    #[arg(long, value_enum, default_value_t = FormulaArg::Printed, global = true)]
    formulas: FormulaArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    Printed,
    Corrected,
}

impl FormulaArg {
    fn get(self) -> Formulas {
        match self {
            FormulaArg::Printed => Formulas::Printed,
            FormulaArg::Corrected => Formulas::Corrected,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FormulaArg::Printed => "printed",
            FormulaArg::Corrected => "corrected",
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct QArg {
    /// Odd prime power q; the space is PG(3, q^2).
    #[arg(long)]
    q: u32,
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    /// SE, H1E or SH2 for an orbit union; H for the Hermitian surface.
    #[arg(long, visible_alias = "set", default_value = "SH2")]
    pub kind: String,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    K,
    G,
    Gp,
}

impl GroupArg {
    fn get(self) -> GroupKind {
        match self {
            GroupArg::K => GroupKind::K,
            GroupArg::G => GroupKind::G,
            GroupArg::Gp => GroupKind::GPrime,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LinesWhat {
    /// Lines contained in a quasi-Hermitian set against the orbit-union prediction.
    Census,
    /// Extended sublines of the Baer subgeometry.
    Sublines,
    /// The families L and L_k.
    Special,
    /// Largest intersections of lines with S_j and E_k.
    Bounds,
    /// Orbits of G on lines (q <= 5).
    Orbits,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Construction {
    V1,
    V2,
    V3,
    /// Line-census signatures of all constructions.
    Signatures,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum QuadricArg {
    Elliptic,
    Hyperbolic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field constants and every element of GF(q^2).
    FieldInfo(QArg),
    /// Counts and polarity checks for PG(3, q^2).
    Geometry {
        #[command(flatten)]
        q: QArg,
        /// Accepted for compatibility; counts are always printed.
        #[arg(long)]
        counts: bool,
    },
    /// Sizes of the named surfaces.
    Surfaces {
        #[command(flatten)]
        q: QArg,
        /// One surface (H, Q+, Sigma, O, S:j, E:k); all when omitted.
        #[arg(long, visible_alias = "id", conflicts_with = "list")]
        surface: Option<String>,
        /// Every surface, with pairwise intersections of the S and E families.
        #[arg(long)]
        list: bool,
    },
    /// Point orbits of K, G or G' with stabilizer orders.
    Orbits {
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, ignore_case = true, default_value_t = GroupArg::K)]
        group: GroupArg,
    },
    /// Plane distributions over the point orbits.
    Tables {
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, ignore_case = true, default_value_t = GroupArg::K)]
        group: GroupArg,
    },
    /// Plane spectrum of an orbit union.
    VerifyQuasi {
        #[command(flatten)]
        q: QArg,
        #[command(flatten)]
        set: SetArgs,
        /// Every admissible orbit union for this q.
        #[arg(long)]
        all: bool,
    },
    /// Line censuses and line families.
    Lines {
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, ignore_case = true, default_value_t = LinesWhat::Census)]
        what: LinesWhat,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Counts of Y_j for one pair (i, j) or for all pairs.
    Yj {
        #[command(flatten)]
        q: QArg,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
    },
    /// Rank and type census of the net of quadrics in PG(7, q).
    NetCensus {
        #[command(flatten)]
        q: QArg,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
    },
    /// The known quasi-Hermitian constructions.
    Known {
        #[command(flatten)]
        q: QArg,
        #[arg(long, visible_alias = "kind", value_enum, ignore_case = true)]
        construction: Construction,
        #[arg(long, default_value_t = 1)]
        z: u32,
        /// Field element as xi^k or an integer in the polynomial basis.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = QuadricArg::Elliptic)]
        quadric: QuadricArg,
    },
    /// Orbits of the 6x6 action on the Klein quadric.
    Klein {
        #[command(flatten)]
        q: QArg,
        /// One value of omega; all when omitted.
        #[arg(long, conflicts_with = "census")]
        omega: Option<String>,
        /// Every value of omega with coverage of the Klein quadric.
        #[arg(long)]
        census: bool,
    },
    /// Parameters of the strongly regular graph of a set.
    Srg {
        #[command(flatten)]
        q: QArg,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = quasiherm_core::srg::DEFAULT_PAIRS)]
        pairs: usize,
        #[arg(long, default_value_t = quasiherm_core::srg::DEFAULT_DEGREE_SAMPLES)]
        degree_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Count common neighbours for every pair (q = 3 only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Weight distribution of the code of a set.
    CodeWeights {
        #[command(flatten)]
        q: QArg,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Every check for this q, as a pass/fail matrix.
    Report(QArg),
}

impl Command {
    fn q(&self) -> u32 {
        match self {
            Command::FieldInfo(a) | Command::Report(a) => a.q,
            Command::Geometry { q, .. }
            | Command::Surfaces { q, .. }
            | Command::Orbits { q, .. }
            | Command::Tables { q, .. }
            | Command::VerifyQuasi { q, .. }
            | Command::Lines { q, .. }
            | Command::Yj { q, .. }
            | Command::NetCensus { q, .. }
            | Command::Known { q, .. }
            | Command::Klein { q, .. }
            | Command::Srg { q, .. }
            | Command::CodeWeights { q, .. } => q.q,
        }
    }
}

/// Errors that mean the request was malformed rather than that a
/// computation disagreed with its expectation.
fn is_usage(e: &Error) -> bool {
    !matches!(e, Error::SingularMatrix | Error::ZeroInverse | Error::ZeroVector)
}

fn build_space(q: u32, max_q: u32) -> Result<Space, Error> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if max_q > DEFAULT_MAX_Q && q > DEFAULT_MAX_Q {
        eprintln!("warning: q = {q} is above the default bound {DEFAULT_MAX_Q}; sweeps may take a long time");
    }
    Ok(Space::new(Field::with_bound(p, e, max_q)?))
}

fn run(cli: &Cli, space: &Space) -> Result<(String, serde_json::Value, Vec<quasiherm_core::invariants::Check>), Error> {
    let src = cli.formulas.get();
    match &cli.command {
        Command::FieldInfo(_) => commands::field_info(space),
        Command::Geometry { .. } => commands::geometry(space),
        Command::Surfaces { surface, .. } => commands::surfaces(space, surface.as_deref()),
        Command::Orbits { group, .. } => commands::orbits(space, group.get()),
        Command::Tables { group, .. } => commands::tables(space, group.get(), src),
        Command::VerifyQuasi { set, all: false, .. } => commands::verify_quasi(space, set),
        Command::VerifyQuasi { all: true, .. } => commands::verify_quasi_all(space),
        Command::Lines { what, set, .. } => commands::lines(space, *what, set, src),
        Command::Yj { i, j, .. } => commands::yj(space, *i, *j, src),
        Command::NetCensus { i, j, .. } => commands::net_census(space, *i, *j, src),
        Command::Known { construction, z, alpha, beta, quadric, .. } => {
            commands::known(space, *construction, *z, alpha.as_deref(), beta.as_deref(), *quadric, src)
        }
        Command::Klein { omega, .. } => commands::klein(space, omega.as_deref()),
        Command::Srg { set, pairs, degree_samples, seed, exhaustive, .. } => {
            commands::srg(space, set, *pairs, *degree_samples, *seed, *exhaustive)
        }
        Command::CodeWeights { set, .. } => commands::code_weights(space, set),
        Command::Report(_) => battery::report(space, src),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let space = match build_space(cli.command.q(), cli.max_q) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &space) {
        Ok((command, result, checks)) => {
            let report = Report { header: Header::new(&space, cli.formulas.name()), command, result, checks };
            print!("{}", report.render(cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
