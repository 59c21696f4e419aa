use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fdim_core::classifier::{no_prediction, predicted_value, sweep, vertical_sweep, Named, Prediction, SweepReport};
use fdim_core::constructors::{pattern_algebra, pattern_prediction, Poset};
use fdim_core::engine::{faithful_dimension, FaithfulDimResult, MinimizeOptions, Reduction, DEFAULT_BUDGET};
use fdim_core::exact::arith::odd_primes_in;
use fdim_core::lie::{load_algebra, ZLieAlgebra};
use fdim_core::{Error, ErrorKind};

#[derive(Parser)]
#[command(name = "fdim", version, about = "Faithful dimensions of p-groups from nilpotent Lie rings")]
struct Cli {
    /// Point budget before the minimiser switches to sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for sampling mode.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Faithful dimension of an algebra file (or a built-in name such as `lee`).
    Compute {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// Closed form for a pattern algebra; `--check` also runs the engine.
    Pattern {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        check: bool,
    },
    /// Free nilpotent algebra on `n` generators of class `c`.
    Free {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// Free metabelian nilpotent algebra on two generators of class `c`.
    Metabelian {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// A named example: binary_quadratic, binary_cubic, lee, elliptic:A,
    /// heisenberg:K, unitriangular:K, free:N:C, metabelian:C.
    Example {
        #[arg(long)]
        name: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// One row per odd prime in an inclusive range `A..B`.
    Sweep {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_parser = parse_range)]
        primes: (u64, u64),
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// One row per degree in an inclusive range `A..B` at a fixed prime.
    Vertical {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = parse_range)]
        fs: (u64, u64),
    },
    /// Runs the acceptance suite.
    Selftest,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Refusal => 2,
        ErrorKind::Internal => 3,
    }
}

/// An algebra from a file, or from a built-in name when no such file exists.
struct Source {
    algebra: ZLieAlgebra,
    named: Option<Named>,
}

impl Source {
    fn load(arg: &str) -> Result<Source, Error> {
        if !Path::new(arg).exists() {
            if let Ok(named) = Named::from_str(arg) {
                return Ok(Source {
                    algebra: named.algebra()?,
                    named: Some(named),
                });
            }
        }
        let algebra = load_algebra(Path::new(arg)).map_err(|e| with_path(e, arg))?;
        Ok(Source { algebra, named: None })
    }

    fn from_name(named: Named) -> Result<Source, Error> {
        Ok(Source {
            algebra: named.algebra()?,
            named: Some(named),
        })
    }

    fn reduction(&self) -> Reduction {
        self.named.map_or(Reduction::Full, |n| n.reduction())
    }

    fn prediction(&self, p: u64, f: u32) -> Option<Prediction> {
        self.named.and_then(|n| predicted_value(&n, p, f).ok().flatten())
    }
}

fn with_path(e: Error, path: &str) -> Error {
    match e {
        Error::Io(io) => Error::InvalidInput(format!("cannot read {path}: {io}")),
        other => other,
    }
}

fn with_schema(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    serde_json::to_string_pretty(&v).expect("output serializes")
}

fn render_result(r: &FaithfulDimResult, prediction: Option<&Prediction>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("result serializes");
            v["prediction"] = serde_json::to_value(prediction).expect("prediction serializes");
            with_schema(v)
        }
        Format::Csv => {
            let case = prediction.map_or("", |p| p.case.as_str());
            format!(
                "prime,f,q,value,signature,mode,l1,l2,predicted_case\n{},{},{},{},\"{}\",{},{},{},\"{}\"\n",
                r.p,
                r.f,
                r.q,
                r.value,
                r.signature,
                r.mode.as_str(),
                r.l1,
                r.l2,
                case
            )
        }
        Format::Text => {
            let mut out = format!(
                "value      {}\nmode       {}\nsignature  {}\nq          {} (p = {}, f = {})\nl1, l2     {}, {}\n",
                r.value,
                r.mode.as_str(),
                r.signature,
                r.q,
                r.p,
                r.f,
                r.l1,
                r.l2
            );
            if let Some(p) = prediction {
                let verdict = if p.value == r.value { "matches" } else { "DIFFERS" };
                out.push_str(&format!("predicted  {} ({}) {verdict}\n", p.value, p.case));
            }
            out
        }
    }
}

fn render_report(report: &SweepReport, format: Format) -> Result<String, Error> {
    Ok(match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
        Format::Text => {
            let mut out = String::from("prime  f  value  signature  mode  case\n");
            for r in &report.rows {
                let value = r.value.map_or("-".to_string(), |v| v.to_string());
                let sig = r.signature.as_ref().map_or("-".to_string(), |s| s.to_string());
                let tail = r.error.as_deref().unwrap_or(&r.matched_case);
                out.push_str(&format!(
                    "{}  {}  {value}  {sig}  {}  {tail}\n",
                    r.prime,
                    r.f,
                    r.mode.unwrap_or("refused")
                ));
            }
            out
        }
    })
}

fn compute(source: &Source, p: u64, f: u32, opts: &MinimizeOptions, format: Format) -> Result<String, Error> {
    let r = faithful_dimension(&source.algebra, p, f, source.reduction(), opts)?;
    Ok(render_result(&r, source.prediction(p, f).as_ref(), format))
}

fn run(cli: &Cli) -> Result<(String, u8), Error> {
    let opts = MinimizeOptions {
        budget: cli.budget,
        seed: cli.seed,
    };
    let format = cli.format;
    let out = match &cli.command {
        Command::Compute { algebra, p, f } => compute(&Source::load(algebra)?, *p, *f, &opts, format)?,
        Command::Free { n, c, p, f } => compute(&Source::from_name(Named::FreeNilpotent(*n, *c))?, *p, *f, &opts, format)?,
        Command::Metabelian { c, p, f } => compute(&Source::from_name(Named::FreeMetabelian(*c))?, *p, *f, &opts, format)?,
        Command::Example { name, p, f } => compute(&Source::from_name(Named::from_str(name)?)?, *p, *f, &opts, format)?,
        Command::Pattern { poset, p, f, check } => {
            let poset = Poset::load(Path::new(poset)).map_err(|e| with_path(e, poset))?;
            let predicted = pattern_prediction(&poset, *p, *f)?;
            let engine = if *check {
                let r = faithful_dimension(&pattern_algebra(&poset)?, *p, *f, Reduction::Full, &opts)?;
                if r.value != predicted {
                    return Err(Error::Internal(format!(
                        "engine value {} differs from the closed form {predicted}",
                        r.value
                    )));
                }
                Some(r)
            } else {
                None
            };
            match format {
                Format::Json => with_schema(json!({
                    "p": p,
                    "f": f,
                    "extreme_pairs": poset.extreme_pairs(),
                    "prediction": predicted,
                    "engine": engine,
                })),
                Format::Csv => format!(
                    "prime,f,prediction,engine\n{p},{f},{predicted},{}\n",
                    engine.map_or(String::new(), |r| r.value.to_string())
                ),
                Format::Text => {
                    let mut s = format!("prediction {predicted}\n");
                    if let Some(r) = engine {
                        s.push_str(&format!("engine     {} ({}), check passed\n", r.value, r.mode.as_str()));
                    }
                    s
                }
            }
        }
        Command::Sweep { algebra, primes, f } => {
            let source = Source::load(algebra)?;
            let list = odd_primes_in(primes.0, primes.1);
            let report = match source.named {
                Some(n) => sweep(&source.algebra, &list, *f, source.reduction(), &opts, &move |p, f| {
                    predicted_value(&n, p, f)
                }),
                None => sweep(&source.algebra, &list, *f, Reduction::Full, &opts, &no_prediction),
            };
            render_report(&report, format)?
        }
        Command::Vertical { algebra, p, fs } => {
            let source = Source::load(algebra)?;
            let list: Vec<u32> = (fs.0..=fs.1)
                .map(|f| u32::try_from(f).map_err(|_| Error::InvalidInput(format!("degree {f} is too large"))))
                .collect::<Result<_, _>>()?;
            let report = match source.named {
                Some(n) => vertical_sweep(&source.algebra, *p, &list, source.reduction(), &opts, &move |p, f| {
                    predicted_value(&n, p, f)
                }),
                None => vertical_sweep(&source.algebra, *p, &list, Reduction::Full, &opts, &no_prediction),
            };
            render_report(&report, format)?
        }
        Command::Selftest => {
            let mut out = String::new();
            let mut failed = 0;
            for &(id, _, _) in fdim_core::acceptance::CRITERIA.iter() {
                let outcome = fdim_core::acceptance::run_criterion(id).expect("criterion exists");
                failed += usize::from(!outcome.passed);
                out.push_str(&format!("{outcome}\n"));
            }
            return Ok((out, if failed > 0 { 3 } else { 0 }));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok((mut out, code)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
