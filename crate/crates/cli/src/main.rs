use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use rzs_core::bench::{run_bench, BenchConfig};
use rzs_core::problem::{parse_problem, GameKind};
use rzs_core::solver::{MoveOrdering, SearchBudget, SolverConfig, Status};

#[derive(Parser)]
#[command(name = "rzs", version, about = "Relevance-zone search for Go life-and-death and Hex problems")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RulesArg {
    Go,
    Killall,
    Hex,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Node budget.
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
    /// Depth limit in plies.
    #[arg(long, default_value_t = 64)]
    max_depth: u32,
    /// Move ordering: lex, liberty, or file:<path> with a priors list.
    #[arg(long, default_value = "lex")]
    ordering: String,
    /// Whether the AND-player may pass (Go only).
    #[arg(long, value_enum, default_value = "on")]
    pass_and: OnOff,
    /// Deepen the depth limit one ply at a time.
    #[arg(long)]
    iterative: bool,
    /// Skip the immediate-win / threat probe before the ordering policy.
    #[arg(long)]
    no_probe: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem file (SGF or Hex text).
    Solve {
        file: PathBuf,
        /// Override the game read from the file.
        #[arg(long, value_enum)]
        rules: Option<RulesArg>,
        /// Plain depth-first search without must-play pruning.
        #[arg(long)]
        no_rzs: bool,
        /// Write the proof tree (or the run header, if unproven) here.
        #[arg(long)]
        proof_out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Solve every problem in a directory under several configurations.
    Bench {
        dir: PathBuf,
        /// Comma-separated configurations: rzs, plain.
        #[arg(long, default_value = "plain,rzs", value_delimiter = ',')]
        configs: Vec<String>,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Add wall-clock times (makes the report run-dependent).
        #[arg(long)]
        times: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn ordering(arg: &str) -> Result<MoveOrdering> {
    Ok(match arg {
        "lex" => MoveOrdering::Lexicographic,
        "liberty" => MoveOrdering::LibertyPressure,
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                bail!("unknown ordering `{other}` (expected lex, liberty or file:<path>)");
            };
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            MoveOrdering::parse_priors(&text).with_context(|| format!("reading {path}"))?
        }
    })
}

fn solver_config(a: &SearchArgs) -> Result<SolverConfig> {
    Ok(SolverConfig {
        budget: SearchBudget {
            max_nodes: a.max_nodes,
            max_depth: a.max_depth,
            deadline: None,
        },
        ordering: ordering(&a.ordering)?,
        rzs: true,
        probe: !a.no_probe,
        iterative: a.iterative,
    })
}

fn solve(file: &Path, rules: Option<RulesArg>, no_rzs: bool, proof_out: Option<&Path>, a: &SearchArgs) -> Result<Status> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut spec = parse_problem(&text).with_context(|| format!("parsing {}", file.display()))?;
    for w in &spec.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(r) = rules {
        let game = match r {
            RulesArg::Go => GameKind::Go,
            RulesArg::Killall => GameKind::KillAll,
            RulesArg::Hex => GameKind::Hex,
        };
        if (game == GameKind::Hex) != (spec.game == GameKind::Hex) {
            bail!("--rules {} does not fit a {} problem file", game.name(), spec.game.name());
        }
        spec.game = game;
    }
    let inst = spec.instance(matches!(a.pass_and, OnOff::On))?;
    let mut cfg = solver_config(a)?;
    if no_rzs {
        cfg = cfg.plain();
    }
    let res = inst.solve(&cfg);
    print!("{}", inst.board().render(res.rz.as_ref()));
    println!(
        "{} nodes={} rz_size={}",
        res.status,
        res.stats.nodes,
        res.rz.map_or(0, |z| z.len())
    );
    if res.status == Status::Fail {
        println!("note: FAIL holds under the no-repetition rule (ko and superko are not modelled)");
    }
    if let Some(path) = proof_out {
        std::fs::write(path, inst.proof_text(&cfg, &res))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(res.status)
}

fn bench(dir: &Path, configs: &[String], report: Option<&Path>, times: bool, a: &SearchArgs) -> Result<bool> {
    let base = solver_config(a)?;
    let configs = configs
        .iter()
        .map(|c| BenchConfig::named(c.trim(), &base))
        .collect::<rzs_core::Result<Vec<_>>>()?;
    let rep = run_bench(dir, &configs, matches!(a.pass_and, OnOff::On))?;
    let text = rep.render(times);
    print!("{text}");
    if let Some(path) = report {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    for (f, why) in &rep.skipped {
        eprintln!("warning: skipped {f}: {why}");
    }
    Ok(rep.skipped.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Command::Solve {
            file,
            rules,
            no_rzs,
            proof_out,
            search,
        } => solve(file, *rules, *no_rzs, proof_out.as_deref(), search).map(|s| match s {
            Status::Unknown => ExitCode::from(2),
            _ => ExitCode::SUCCESS,
        }),
        Command::Bench {
            dir,
            configs,
            report,
            times,
            search,
        } => bench(dir, configs, report.as_deref(), *times, search).map(|clean| {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
