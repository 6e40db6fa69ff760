use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cwj_gen::cachesim::{diff_traces, parse_script, simulate, summarize, trace_tsv, Mode};
use cwj_gen::cli::load_universe;

#[derive(Clone, Copy, ValueEnum)]
enum SimMode {
    Raw,
    Lazy,
    Eager,
}

impl From<SimMode> for Mode {
    fn from(m: SimMode) -> Mode {
        match m {
            SimMode::Raw => Mode::Raw,
            SimMode::Lazy => Mode::Lazy,
            SimMode::Eager => Mode::Eager,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

/// Counts the JNI calls a script makes through the generated wrappers.
#[derive(Parser)]
#[command(name = "cwj-sim")]
struct Args {
    /// ':'-separated directories, class files and fixtures.
    #[arg(long = "classpath", visible_alias = "cp", default_value = ".")]
    classpath: String,
    #[arg(long, value_enum, default_value = "lazy")]
    mode: SimMode,
    #[arg(long, default_value_t = 2)]
    iterations: usize,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Also run this script (in --against-mode) and print the difference as JSON.
    #[arg(long)]
    against: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "raw")]
    against_mode: SimMode,
    script: PathBuf,
}

fn run(args: Args) -> Result<(), String> {
    let classpath: Vec<PathBuf> = args
        .classpath
        .split(':')
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
        .collect();
    let universe = load_universe(&classpath).map_err(|e| e.to_string())?;
    let load = |path: &PathBuf| {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        parse_script(&text).map_err(|e| format!("{}: {e}", path.display()))
    };
    let trace = simulate(&universe, &load(&args.script)?, args.mode.into(), args.iterations)
        .map_err(|e| format!("{}: {e}", args.script.display()))?;
    if let Some(other) = &args.against {
        let base = simulate(&universe, &load(other)?, args.against_mode.into(), args.iterations)
            .map_err(|e| format!("{}: {e}", other.display()))?;
        let diff = diff_traces(&base, &trace).map_err(|e| e.to_string())?;
        println!("{}", serde_json::to_string_pretty(&diff).map_err(|e| e.to_string())?);
        return Ok(());
    }
    match args.format {
        Format::Tsv => print!("{}", trace_tsv(&trace)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&summarize(&trace)).map_err(|e| e.to_string())?
        ),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cwj-sim: {e}");
            ExitCode::FAILURE
        }
    }
}
