use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lct_core::report::{
    build_report, build_resolve_report, build_verify_report, exit_code, render_breakdown,
    render_figure, render_summary, render_table, EvalReport, Method,
};
use lct_core::{evaluate, parse_ideal, GeneralBinomialIdeal, IntVector, LctError};

#[derive(Parser)]
#[command(
    name = "lct",
    version,
    about = "Exact log canonical thresholds of binomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ideal file: a `vars` header line, then one generator per line.
    path: PathBuf,
    /// Emit a JSON record instead of text.
    #[arg(long)]
    json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "LCT_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rays,
    Resolution,
    HowaldStar,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Rays => Method::Rays,
            MethodArg::Resolution => Method::Resolution,
            MethodArg::HowaldStar => Method::HowaldStar,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Global threshold of the ideal.
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "rays")]
        method: MethodArg,
    },
    /// Table of every ray with its value.
    Rays {
        #[command(flatten)]
        common: Common,
        /// Two side-by-side tables: interior rays and boundary rays.
        #[arg(long)]
        figure: bool,
        /// Include the lct* column.
        #[arg(long)]
        star: bool,
    },
    /// Every intermediate quantity at one direction.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Direction as comma-separated nonnegative integers.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Pseudo-resolution trace.
    Resolve {
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check the ray minimum against the resolution (and Howald's
    /// formula for monomial ideals).
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Compute { common, .. }
            | Command::Rays { common, .. }
            | Command::Eval { common, .. }
            | Command::Resolve { common }
            | Command::Verify { common } => common,
        }
    }
}

fn load(path: &PathBuf) -> Result<GeneralBinomialIdeal, (i32, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (2, format!("cannot read {}: {e}", path.display())))?;
    parse_ideal(&text).map_err(|e| (2, format!("{}: {e}", path.display())))
}

fn fail(e: LctError) -> (i32, String) {
    (exit_code(&e), e.to_string())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("records serialize");
    s.push('\n');
    s
}

/// Runs one command, returning its stdout text and exit status.
fn run(cmd: &Command) -> Result<(String, i32), (i32, String)> {
    let common = cmd.common();
    let ideal = load(&common.path)?;
    match cmd {
        Command::Compute { method, .. } => {
            let report = build_report(&ideal, (*method).into(), false).map_err(fail)?;
            let out = if common.json {
                json(&report)
            } else {
                render_summary(&report)
            };
            Ok((out, 0))
        }
        Command::Rays { figure, star, .. } => {
            let report = build_report(&ideal, Method::Rays, *star).map_err(fail)?;
            let out = if common.json {
                json(&report)
            } else if *figure {
                format!("{}\n{}", render_figure(&report), render_summary(&report))
            } else {
                format!("{}\n{}", render_table(&report), render_summary(&report))
            };
            Ok((out, 0))
        }
        Command::Eval { at, .. } => {
            let v: IntVector = at
                .parse()
                .map_err(|e: LctError| (2, format!("--at {at}: {e}")))?;
            let b = evaluate(&ideal.triple(), &v).map_err(|e| (2, format!("--at {at}: {e}")))?;
            let out = if common.json {
                json(&EvalReport::from(&b))
            } else {
                render_breakdown(&b)
            };
            Ok((out, 0))
        }
        Command::Resolve { .. } => {
            let r = build_resolve_report(&ideal).map_err(fail)?;
            if common.json {
                return Ok((json(&r), 0));
            }
            let mut out = String::new();
            for b in &r.blowups {
                out.push_str(&format!(
                    "step {} phase {} target {} center {} + {} -> {} (L,Lp) ({},{}) -> ({},{})\n",
                    b.step,
                    b.phase,
                    b.target,
                    b.center[0],
                    b.center[1],
                    b.new_vertex,
                    b.before[0],
                    b.before[1],
                    b.after[0],
                    b.after[1]
                ));
            }
            let lct = r.lct.to_extended().map_err(fail)?;
            out.push_str(&format!(
                "blow-ups: {}, vertices: {}, cones: {}\nlct = {lct}\nargmin: {}\n",
                r.blowups.len(),
                r.vertices.len(),
                r.cones.len(),
                r.argmin.join(" ")
            ));
            Ok((out, 0))
        }
        Command::Verify { .. } => {
            let r = build_verify_report(&ideal).map_err(fail)?;
            let status = if r.agree { 0 } else { 1 };
            if common.json {
                return Ok((json(&r), status));
            }
            let show = |f: &lct_core::report::Fraction| {
                f.to_extended().map(|x| x.to_string()).unwrap_or_default()
            };
            let mut out = format!(
                "rays:       {}\nresolution: {} ({} blow-ups, {} vertices)\n",
                show(&r.rays),
                show(&r.resolution),
                r.blowups,
                r.vertices
            );
            if let Some(h) = &r.howald {
                out.push_str(&format!("howald:     {}\n", show(h)));
            }
            out.push_str(if r.agree { "agree\n" } else { "DISAGREE\n" });
            Ok((out, status))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("lct: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let result = pool.install(|| run(&cli.command));
    match result {
        Ok((out, status)) => {
            print!("{out}");
            if !common.json {
                eprintln!("time: {:.3} s", start.elapsed().as_secs_f64());
            }
            ExitCode::from(status as u8)
        }
        Err((status, msg)) => {
            eprintln!("lct: {msg}");
            ExitCode::from(status as u8)
        }
    }
}
