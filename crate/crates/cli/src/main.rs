//! `lowcell`: affine Hecke algebras, Kazhdan–Lusztig data, Steinberg's basis
//! and the lowest-cell ring `J_0` from the command line.
//!
//! Exit status: 0 on success, 1 when a verification reports a mismatch,
//! 2 on usage or input errors.

mod commands;
mod config;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Basis, Format, RunConfig, TypeTag};

#[derive(Parser, Debug)]
#[command(
    name = "lowcell",
    version,
    about = "Exact computations on the lowest two-sided cell"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Root datum: A1, A2, A3, or affine A1~, A2~, A3~.
    #[arg(long = "type", global = true, default_value = "A1~")]
    type_tag: TypeTag,
    /// Length bound for balls in the affine Weyl group.
    #[arg(long, global = true, default_value_t = 6)]
    ball: usize,
    /// Bound on the coordinates of chi in J_0 grids.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
    chi_bound: i64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true, alias = "out")]
    output: Option<PathBuf>,
    /// Directory for cached structure-constant tables.
    #[arg(long, global = true, env = "LOWCELL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kazhdan–Lusztig polynomials, structure constants, a-function.
    Hecke {
        #[command(subcommand)]
        cmd: HeckeCmd,
    },
    /// Representation ring of the finite group.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Steinberg's basis and its pairing with the dual family.
    Steinberg {
        #[command(subcommand)]
        cmd: SteinbergCmd,
    },
    /// The ring J_0 and the map phi_0.
    J0 {
        #[command(subcommand)]
        cmd: J0Cmd,
    },
    /// Run every verification suite for the configured type and ball.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// P_{y,w}.
    Kl {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// h_{x,y,z} for all z.
    Hconst {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t = Basis::Signed)]
        basis: Basis,
    },
    /// a(w), searched over the ball.
    Afn {
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Decompose V(lhs) (x) V(rhs).
    Tensor {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

#[derive(Subcommand, Debug)]
enum SteinbergCmd {
    /// The |W| x |W| matrix <F_w, G_v>.
    Pairing,
}

#[derive(Subcommand, Debug)]
enum J0Cmd {
    /// t_lhs * t_rhs for indices "(u,chi,v)".
    Mult {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Compare Hecke-side and representation-side structure constants.
    CheckGamma {
        #[arg(long, value_enum, default_value_t = Basis::Signed)]
        basis: Basis,
    },
    /// phi_0(C_w) and its matrix.
    Phi0 {
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = Basis::Signed)]
        basis: Basis,
    },
}

/// Outcome of a successful run.
pub enum Status {
    Ok,
    VerificationFailed,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let g = cli.global;
    if let Some(n) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    let cfg = RunConfig {
        type_tag: g.type_tag,
        ball: g.ball,
        chi_bound: g.chi_bound,
        cache_dir: g.cache_dir,
        output: g.output,
        format: g.format,
    };
    match cli.command {
        Command::Hecke { cmd } => match cmd {
            HeckeCmd::Kl { y, w } => commands::hecke_kl(&cfg, &y, &w),
            HeckeCmd::Hconst { x, y, basis } => commands::hecke_hconst(&cfg, &x, &y, basis.into()),
            HeckeCmd::Afn { w } => commands::hecke_afn(&cfg, &w),
        },
        Command::Rep {
            cmd: RepCmd::Tensor { lhs, rhs },
        } => commands::rep_tensor(&cfg, &lhs, &rhs),
        Command::Steinberg {
            cmd: SteinbergCmd::Pairing,
        } => commands::steinberg_pairing(&cfg),
        Command::J0 { cmd } => match cmd {
            J0Cmd::Mult { lhs, rhs } => commands::j0_mult(&cfg, &lhs, &rhs),
            J0Cmd::CheckGamma { basis } => commands::j0_check_gamma(&cfg, basis.into()),
            J0Cmd::Phi0 { w, basis } => commands::j0_phi0(&cfg, &w, basis.into()),
        },
        Command::VerifyAll => suites::verify_all(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
