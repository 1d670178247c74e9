//! The `bingo` command line.
//!
//! Exit codes: 0 on success, 1 when a verification finds a violation, 2 for
//! usage and input errors. Results go to stdout, diagnostics to stderr.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closure::closure;
use crate::constructions::{
    catalog, catalog_board, check_extremal_trace, construct_with_plan, RingPlan, RingWidth,
    CATALOG_NAMES,
};
use crate::grid::{parse_board, render_board, BoardSize, CellSet, RenderStyle, MAX_SIDE};
use crate::laws::{check_closure_laws, check_extension_oracle, check_laws, SetMap};
use crate::search::{
    bound_sweep, lemma1_sweep, max_depth_exhaustive_with_progress, max_depth_sampled, Scope,
    SearchConfig, SweepMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bingo", version, about = "Bingo line-completion closure on n x n boards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closure of a board.
    Closure {
        #[command(flatten)]
        board: BoardArg,
        /// Print the full trace document instead of the closed board.
        #[arg(long)]
        json: bool,
    },
    /// Print the depth of a board.
    Depth {
        #[command(flatten)]
        board: BoardArg,
    },
    /// Print the closure trace of a board.
    Trace {
        #[command(flatten)]
        board: BoardArg,
        #[arg(long, value_enum, default_value_t = TraceFormat::Ascii)]
        format: TraceFormat,
        /// Draw occupied cells as `•`.
        #[arg(long)]
        pretty: bool,
    },
    /// List or show the reference boards.
    Catalog {
        #[arg(long, conflicts_with = "show")]
        list: bool,
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
        /// Show the expected step labels.
        #[arg(long, requires = "show")]
        labels: bool,
    },
    /// Build a verified spanning board of depth 2N.
    Construct {
        #[arg(long = "n", value_name = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = RingWidthArg::Auto)]
        ring_width: RingWidthArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Search for the maximum depth on side N.
    Search(SearchArgs),
    /// Run one of the verification sweeps.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_name = "K")]
        n_max: Option<usize>,
        #[arg(long, value_name = "K", default_value_t = 100_000)]
        sample: u64,
        #[arg(long, value_name = "S", default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct BoardArg {
    /// Board file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub board: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["exhaustive", "sample"])))]
pub struct SearchArgs {
    #[arg(long = "n", value_name = "N")]
    pub n: usize,
    #[arg(long)]
    pub exhaustive: bool,
    /// Permit the 2^25-board search at n = 5.
    #[arg(long, requires = "exhaustive")]
    pub allow_large: bool,
    #[arg(long, value_name = "K")]
    pub sample: Option<u64>,
    #[arg(long, value_name = "S", requires = "sample")]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ScopeArg::All)]
    pub scope: ScopeArg,
    #[arg(long, value_name = "T")]
    pub threads: Option<usize>,
    #[arg(long)]
    pub no_symmetry: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TraceFormat {
    Ascii,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RingWidthArg {
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScopeArg {
    All,
    Spanning,
    Nonspanning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Bounds,
    Constructions,
    Laws,
}

/// Outcome of a subcommand: an exit code, or a usage error message.
type Outcome = Result<i32, String>;

/// Parse `argv` (including the program name) and run it.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn read_board(arg: &BoardArg, stdin: &mut dyn Read) -> Result<CellSet, String> {
    let mut text = String::new();
    if arg.board.as_os_str() == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(&arg.board)
            .map_err(|e| format!("reading {}: {e}", arg.board.display()))?;
    }
    let (_, set) = parse_board(&text).map_err(|e| format!("{}: {e}", arg.board.display()))?;
    Ok(set)
}

fn board_size(n: usize) -> Result<BoardSize, String> {
    BoardSize::new(n).map_err(|e| e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| format!("writing output: {e}"))?;
    Ok(EXIT_OK)
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Closure { board, json } => {
            let trace = closure(&read_board(&board, stdin)?);
            if json {
                emit(out, &trace.to_document().to_json())
            } else {
                emit(out, &render_board(&trace.closure, None, RenderStyle::Ascii).map_err(|e| e.to_string())?)
            }
        }
        Command::Depth { board } => {
            let trace = closure(&read_board(&board, stdin)?);
            emit(out, &trace.depth.to_string())
        }
        Command::Trace { board, format, pretty } => {
            let trace = closure(&read_board(&board, stdin)?);
            match format {
                TraceFormat::Json => emit(out, &trace.to_document().to_json()),
                TraceFormat::Ascii => emit(out, &trace.render(style(pretty))),
            }
        }
        Command::Catalog { list: _, show: None, labels: _ } => {
            for board in catalog() {
                writeln!(out, "{board}").map_err(|e| e.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { show: Some(name), labels, .. } => {
            let board = catalog_board(&name).ok_or_else(|| {
                format!("unknown board {name:?}; expected one of {}", CATALOG_NAMES.join(", "))
            })?;
            if labels {
                emit(out, &board.labeled_text(RenderStyle::Ascii))
            } else {
                emit(out, &board.board_text())
            }
        }
        Command::Construct { n, ring_width, json, pretty } => {
            if !(5..=MAX_SIDE).contains(&n) {
                return Err(format!("--n must lie in 5..={MAX_SIDE}, got {n}"));
            }
            let plan = match ring_width {
                RingWidthArg::Auto => RingPlan::Auto,
                RingWidthArg::One => RingPlan::Only(RingWidth::One),
                RingWidthArg::Two => RingPlan::Only(RingWidth::Two),
            };
            match construct_with_plan(n, plan) {
                Ok(board) if json => emit(out, &board.trace().to_document().to_json()),
                Ok(board) => emit(out, &board.labeled_text(style(pretty))),
                Err(e) => {
                    writeln!(err, "construction failed: {e}").map_err(|e| e.to_string())?;
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::Search(args) => search(args, out),
        Command::Verify { suite, n_max, sample, seed } => verify(suite, n_max, sample, seed, out),
    }
}

fn style(pretty: bool) -> RenderStyle {
    if pretty {
        RenderStyle::Pretty
    } else {
        RenderStyle::Ascii
    }
}

fn search(args: SearchArgs, out: &mut dyn Write) -> Outcome {
    let size = board_size(args.n)?;
    if args.threads == Some(0) {
        return Err("--threads must be positive".into());
    }
    let config = SearchConfig {
        scope: match args.scope {
            ScopeArg::All => Scope::All,
            ScopeArg::Spanning => Scope::SpanningOnly,
            ScopeArg::Nonspanning => Scope::NonSpanningOnly,
        },
        use_symmetry: !args.no_symmetry,
        threads: args.threads,
        allow_large: args.allow_large,
        ..Default::default()
    };
    let report = if args.exhaustive {
        let large = args.n > crate::search::EXHAUSTIVE_LIMIT;
        let progress = |done: u64, total: u64| {
            if large && (done.is_multiple_of(32) || done == total) {
                eprintln!("searched {done}/{total} shards");
            }
        };
        max_depth_exhaustive_with_progress(size, &config, &progress)
    } else {
        max_depth_sampled(size, &config, args.sample.unwrap_or(0), args.seed.unwrap_or(0))
    }
    .map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&report.to_document()).map_err(|e| e.to_string())?;
    emit(out, &json)
}

fn verify(suite: Suite, n_max: Option<usize>, sample: u64, seed: u64, out: &mut dyn Write) -> Outcome {
    let default_max = if suite == Suite::Constructions { MAX_SIDE } else { 4 };
    let n_max = n_max.unwrap_or(default_max);
    if !(1..=MAX_SIDE).contains(&n_max) {
        return Err(format!("--n-max must lie in 1..={MAX_SIDE}, got {n_max}"));
    }
    let mut failures = 0usize;
    let mut line = |ok: bool, text: String| -> Result<(), String> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {text}", if ok { "PASS" } else { "FAIL" }).map_err(|e| e.to_string())
    };
    let mode = |n: usize| {
        if n <= crate::search::EXHAUSTIVE_LIMIT {
            SweepMode::Exhaustive
        } else {
            SweepMode::Sampled { samples: sample, seed }
        }
    };
    let describe = |m: SweepMode| match m {
        SweepMode::Exhaustive => "exhaustive".to_string(),
        SweepMode::Sampled { samples, seed } => format!("{samples} samples, seed {seed}"),
    };

    match suite {
        Suite::Bounds => {
            for n in 1..=n_max {
                let size = board_size(n)?;
                let v = bound_sweep(size, mode(n)).map_err(|e| e.to_string())?;
                line(v.is_empty(), format!("bounds n={n} ({}): {} violations", describe(mode(n)), v.len()))?;
            }
        }
        Suite::Lemma1 => {
            for n in 1..=n_max {
                let size = board_size(n)?;
                let v = lemma1_sweep(size, mode(n)).map_err(|e| e.to_string())?;
                line(v.is_empty(), format!("lemma1 n={n} ({}): {} offending closures", describe(mode(n)), v.len()))?;
            }
        }
        Suite::Constructions => {
            for board in catalog() {
                let result = board.verify();
                line(result.is_ok(), format!("catalog {board}"))?;
            }
            for n in 5..=n_max {
                let outcome = construct_with_plan(n, RingPlan::Auto)
                    .map_err(|e| e.to_string())
                    .and_then(|b| check_extremal_trace(&b.trace()));
                match outcome {
                    Ok(()) => line(true, format!("construct n={n}: spanning, depth {}", 2 * n))?,
                    Err(e) => line(false, format!("construct n={n}: {e}"))?,
                }
            }
        }
        Suite::Laws => {
            for n in 1..=n_max {
                let size = board_size(n)?;
                let dep = check_laws(size, SetMap::Dependency, sample.min(10_000), seed);
                // Only on the single-cell board is φ itself expansive.
                line(
                    dep.isotone && dep.expansive == (n == 1),
                    format!("laws n={n}: dependency map isotone={} expansive={}", dep.isotone, dep.expansive),
                )?;
                let step = check_laws(size, SetMap::DolmaticStep, sample.min(10_000), seed);
                line(step.dolmatic, format!("laws n={n}: dolmatic step dolmatic={}", step.dolmatic))?;
                let closure_laws = check_closure_laws(size, sample.min(1000), seed);
                line(
                    closure_laws.holds(),
                    format!("laws n={n}: closure extensive/idempotent/monotone over {} sets", closure_laws.sets_checked),
                )?;
                let (checked, cx) = check_extension_oracle(size, sample.min(500), seed);
                line(cx.is_none(), format!("laws n={n}: subset-union extension agrees on {checked} sets"))?;
            }
        }
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VIOLATION })
}
