use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use posettop::cli::{self, LoopAction, LoopArgs, MineArgs, Report, RunConfig, Source, Theory};
use posettop::cubical::DEFAULT_CUBE_CAP;
use posettop::Result;

#[derive(Parser)]
#[command(name = "posettop", version, about = "Cubical and simplicial homology and discrete homotopy of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// poset file (JSON, or `x < y` lines)
    #[arg(short, long, conflicts_with = "builtin", global = true)]
    input: Option<PathBuf>,
    /// chain{n}, fence{p}, circle4, sphere6, max5 or qcube{n}
    #[arg(long, global = true)]
    builtin: Option<String>,
    #[arg(long, default_value_t = cli::DEFAULT_MAX_DIM, global = true)]
    max_dim: usize,
    /// maximum number of nondegenerate cubes per dimension
    #[arg(long, default_value_t = DEFAULT_CUBE_CAP, global = true)]
    cap: usize,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, env = "POSETTOP_THREADS", global = true)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum TheoryArg {
    Cube,
    Simpl,
    Both,
}

#[derive(ValueEnum, Clone, Copy)]
enum ActionArg {
    Validate,
    Hurewicz,
    Reduce,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and torsion per degree
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "both")]
        theory: TheoryArg,
        /// also write the boundary matrices as MatrixMarket files here
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
    },
    /// The map psi_* from cubical to simplicial homology per degree
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Validate a loop, apply the Hurewicz map, or search for a null-homotopy
    Loop {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        action: ActionArg,
        /// e.g. "b > d < a > c < b", or the JSON loop form
        literal: String,
        #[arg(long)]
        basepoint: Option<String>,
        /// radius of the loops searched (default: max(3, loop radius))
        #[arg(long)]
        radius_cap: Option<usize>,
        #[arg(long, default_value_t = cli::DEFAULT_STEP_CAP)]
        step_cap: usize,
    },
    /// Search random posets for degrees where the two homologies differ
    Mine {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        size: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// builtin posets checked after the random trials
        #[arg(long)]
        plant: Vec<String>,
        #[arg(long, default_value_t = cli::DEFAULT_SHRINK_BUDGET)]
        shrink_budget: usize,
    },
    /// Print a builtin poset as JSON
    Gen { name: String },
}

impl Common {
    fn config(&self) -> RunConfig {
        let source = match (&self.input, &self.builtin) {
            (Some(p), _) => Some(Source::File(p.clone())),
            (None, Some(b)) => Some(Source::Builtin(b.clone())),
            (None, None) => None,
        };
        let format = match self.format {
            FormatArg::Text => cli::Format::Text,
            FormatArg::Json => cli::Format::Json,
        };
        RunConfig { source, max_dim: self.max_dim, cap: self.cap, format, seed: self.seed, threads: self.threads }
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Homology { common, theory, dump_matrices } => {
            let config = common.config();
            let theory = match theory {
                TheoryArg::Cube => Theory::Cube,
                TheoryArg::Simpl => Theory::Simpl,
                TheoryArg::Both => Theory::Both,
            };
            if let Some(dir) = dump_matrices {
                for path in cli::dump_boundaries(&config, &dir)? {
                    log::info!("wrote {}", path.display());
                }
            }
            cli::with_threads(config.threads, || cli::cmd_homology(&config, theory))?.map(|r| r.render(config.format))
        }
        Command::Compare { common } => {
            let config = common.config();
            cli::with_threads(config.threads, || cli::cmd_compare(&config))?.map(|r| r.render(config.format))
        }
        Command::Loop { common, action, literal, basepoint, radius_cap, step_cap } => {
            let config = common.config();
            let action = match action {
                ActionArg::Validate => LoopAction::Validate,
                ActionArg::Hurewicz => LoopAction::Hurewicz,
                ActionArg::Reduce => LoopAction::Reduce,
            };
            let args = LoopArgs { action, literal, basepoint, radius_cap, step_cap };
            cli::with_threads(config.threads, || cli::cmd_loop(&config, &args))?.map(|r| r.render(config.format))
        }
        Command::Mine { common, trials, size, density, plant, shrink_budget } => {
            let config = common.config();
            let args = MineArgs { trials, size, density, plant, shrink_budget };
            cli::with_threads(config.threads, || cli::cmd_mine(&config, &args))?.map(|r| r.render(config.format))
        }
        Command::Gen { name } => cli::cmd_gen(&name),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
