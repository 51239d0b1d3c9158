//! `propcalc`: verification pipelines over exact rational props.

mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use commands::{Built, Outcome, PipelineArgs};
use propcalc::pdiagramprops::PiFault;

#[derive(Parser)]
#[command(name = "propcalc", version, about = "Exact checks for props in chain complexes")]
struct Cli {
    /// Truncate input props to total arity m+n ≤ BOUND.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Write the command's artifact (or its report) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit timings so reports are byte-identical across runs.
    #[arg(long, global = true)]
    canonical: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Fault {
    #[default]
    None,
    SbarSign,
    DropSbar,
}

impl From<Fault> for PiFault {
    fn from(f: Fault) -> PiFault {
        match f {
            Fault::None => PiFault::None,
            Fault::SbarSign => PiFault::SbarUpperSign,
            Fault::DropSbar => PiFault::DropSbarUpper,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    /// `End_𝒴(P)` over `P` along `π`.
    Yp,
}

#[derive(Subcommand)]
enum Command {
    /// Parse any input file and check its invariants.
    Validate {
        path: PathBuf,
        /// Prop for algebras and presentations.
        #[arg(long)]
        prop: Option<PathBuf>,
    },
    /// Homology of a complex.
    Homology {
        #[arg(long)]
        complex: PathBuf,
    },
    /// The factorization X → Z⊗X → X⊕X and its verdicts.
    PathObject {
        #[arg(long)]
        complex: PathBuf,
    },
    /// End_{Z(P)}.
    BuildZp {
        #[arg(long)]
        prop: PathBuf,
    },
    /// End_{𝒵(P)}.
    BuildCalzp {
        #[arg(long)]
        prop: PathBuf,
    },
    /// End_{𝒴(P)}.
    BuildYp {
        #[arg(long)]
        prop: PathBuf,
        #[arg(long, value_enum, default_value_t = Fault::None, hide = true)]
        pi_fault: Fault,
    },
    /// π: End_{𝒴(P)} → P componentwise.
    CheckPi {
        #[arg(long)]
        prop: PathBuf,
        /// Deliberately corrupt the 𝒴 pullback.
        #[arg(long, value_enum, default_value_t = Fault::None)]
        pi_fault: Fault,
    },
    /// The dual pushout-product map for all m, n ≤ MAX.
    PushoutProduct {
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
    /// Lift id_P through π.
    Lift {
        #[arg(long)]
        prop: PathBuf,
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "yp")]
        target: Target,
        #[arg(long, value_enum, default_value_t = Fault::None)]
        pi_fault: Fault,
    },
    /// The zigzag X₀ ← Z(X) → X₁ induced by a saved lift.
    Zigzag {
        #[arg(long)]
        lift: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Axioms, constructions, π, lift and zigzag end to end.
    Pipeline {
        #[arg(long)]
        prop: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Fault::None)]
        pi_fault: Fault,
    },
}

fn threads() -> Result<()> {
    if let Ok(v) = std::env::var("PROPCALC_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("PROPCALC_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(Outcome, u8)> {
    threads()?;
    let b = cli.bound;
    let want = cli.out.is_some();
    let out = match &cli.command {
        Command::Validate { path, prop } => return Ok((commands::validate(path, prop.as_deref(), b)?, 2)),
        Command::Homology { complex } => commands::homology_cmd(complex)?,
        Command::PathObject { complex } => commands::path_object_cmd(complex)?,
        Command::BuildZp { prop } => commands::build_cmd(Built::Zp, prop, b, PiFault::None, want)?,
        Command::BuildCalzp { prop } => commands::build_cmd(Built::CalZp, prop, b, PiFault::None, want)?,
        Command::BuildYp { prop, pi_fault } => commands::build_cmd(Built::Yp, prop, b, (*pi_fault).into(), want)?,
        Command::CheckPi { prop, pi_fault } => commands::check_pi_cmd(prop, b, (*pi_fault).into())?,
        Command::PushoutProduct { max } => commands::pushout_product_cmd(*max)?,
        Command::Lift { prop, presentation, target: Target::Yp, pi_fault } => {
            commands::lift_cmd(prop, presentation.as_deref(), b, (*pi_fault).into())?
        }
        Command::Zigzag { lift, algebra } => commands::zigzag_cmd(lift, algebra)?,
        Command::Pipeline { prop, algebra, presentation, pi_fault } => commands::pipeline(&PipelineArgs {
            prop: prop.clone(),
            algebra: algebra.clone(),
            presentation: presentation.clone(),
            bound: b,
            fault: (*pi_fault).into(),
        })?,
    };
    Ok((out, 1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, fail_code)) => {
            let text = outcome.report.render(cli.canonical);
            if let Some(path) = &cli.out {
                let body = outcome.artifact.as_deref().unwrap_or(&text);
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{text}");
            eprint!("{}", outcome.report.summary());
            if outcome.report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(fail_code)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
