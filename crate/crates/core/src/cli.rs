//! Command-line front end. Every subcommand prints one artifact on stdout
//! (or into `--output`) and maps library errors onto exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::context::{nucleus, FormalContext};
use crate::cxt::{read_cxt, write_cxt};
use crate::error::{Error, Result};
use crate::order::{dm_completion, FinPoset};
use crate::quantale::{q_nucleus, NucleusMode, QuantaleMatrix};
use crate::report::Report;
use crate::setcat::algebra::{dedupe_algebras, enumerate_algebras, free_algebra, Algebra};
use crate::setcat::extension::loose_extension;
use crate::setcat::presheaf::{all_presheaves, subterminal, yoneda_pre};
use crate::setcat::{
    Ctx, FinCategory, LooseReading, PresheafMonad, Profunctor, Side, TightReading,
};
use crate::verify::{run_suite, VerifyConfig};

#[derive(Parser, Debug)]
#[command(
    name = "nucleus-kit",
    version,
    about = "Nuclei of boolean, quantale-valued and Set-valued matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Largest instance size in sweeps and largest carrier sets.
    #[arg(long, global = true, default_value_t = 5)]
    pub max_size: usize,
    /// Candidate checks allowed per enumeration.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Largest component set in Set-valued constructions [default: 64 for
    /// extend, 131072 for verify].
    #[arg(long, global = true)]
    pub max_set: Option<usize>,
    /// Tolerance for quantale-valued comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps: f64,
    /// Worker threads for sweeps; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include witnesses (maps, failing instances) in the output.
    #[arg(long, global = true)]
    pub witnesses: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Cxt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraSet {
    /// Carriers whose sets have one element or none.
    Subterminal,
    /// Free algebras on representables.
    Free,
    /// All algebras on carriers with sets up to `--carrier-size`, up to iso.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LooseArg {
    Equalizer,
    Square,
    MorphismEqualizer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TightArg {
    Surjective,
    Injective,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Concept lattice of a context (.cxt or JSON).
    Nucleus { input: PathBuf },
    /// Dedekind-MacNeille completion of a poset given as JSON.
    Dm { input: PathBuf },
    /// Run a verification suite and emit its report.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Loose and tight extension cells of a Set-valued profunctor.
    Extend {
        /// Profunctor JSON; categories it omits are taken from `--category`.
        profunctor: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = AlgebraSet::All)]
        algebras: AlgebraSet,
        #[arg(long, default_value_t = 1)]
        carrier_size: usize,
        #[arg(long, value_enum, default_value_t = LooseArg::Equalizer)]
        loose: LooseArg,
        #[arg(long, value_enum, default_value_t = TightArg::Surjective)]
        tight: TightArg,
    },
    /// Fixpoint pairs of a quantale-valued matrix.
    Qnucleus {
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Convert a context between .cxt and JSON (`--format cxt|json`).
    Convert { input: PathBuf },
}

/// Result of a command: the artifact and the exit status it implies.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A context from `.cxt` text or from JSON, by content.
pub fn load_context(path: &Path) -> Result<FormalContext> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        FormalContext::from_json(&v)
    } else {
        read_cxt(&text)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, f: Format) -> Error {
    Error::Config(format!("{cmd} cannot emit {f:?} output").to_lowercase())
}

fn carriers(
    m: &PresheafMonad,
    side: Side,
    which: AlgebraSet,
    size: usize,
    ctx: &mut Ctx,
) -> Result<Vec<Algebra>> {
    let cat = m.base(side).clone();
    let n = cat.num_objects();
    match which {
        AlgebraSet::Free => (0..n)
            .map(|a| free_algebra(m, side, &yoneda_pre(&cat, a), ctx))
            .collect(),
        AlgebraSet::Subterminal => {
            let mut out = Vec::new();
            for s in 0..1u64 << n {
                let support: Vec<bool> = (0..n).map(|i| s >> i & 1 == 1).collect();
                if let Some(x) = subterminal(&cat, &support) {
                    out.extend(enumerate_algebras(m, side, &x, ctx)?);
                }
            }
            Ok(out)
        }
        AlgebraSet::All => {
            let mut out = Vec::new();
            for x in all_presheaves(&cat, size, &mut ctx.budget)? {
                out.extend(enumerate_algebras(m, side, &x, ctx)?);
            }
            dedupe_algebras(m, out, ctx)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    if c.eps.is_nan() || c.eps <= 0.0 {
        return Err(Error::Config("--eps must be positive".into()));
    }
    if c.max_size == 0 || c.budget == 0 || c.max_set == Some(0) {
        return Err(Error::Config(
            "--max-size, --max-set and --budget must be positive".into(),
        ));
    }
    let ok = |text| Ok(Outcome { text, code: 0 });
    match &cli.command {
        Command::Nucleus { input } => {
            let ctx = load_context(input)?;
            let l = nucleus(&ctx);
            match c.format {
                Format::Json => ok(pretty(&l.to_json())),
                Format::Dot => ok(l.to_dot(&ctx)),
                f => Err(unsupported("nucleus", f)),
            }
        }
        Command::Dm { input } => {
            let p = FinPoset::from_json(&read_json(input)?)?;
            let l = dm_completion(&p);
            match c.format {
                Format::Json => ok(pretty(&l.to_json())),
                Format::Dot => ok(l.to_dot()),
                f => Err(unsupported("dm", f)),
            }
        }
        Command::Verify { suite } => {
            if c.format != Format::Json {
                return Err(unsupported("verify", c.format));
            }
            let cfg = VerifyConfig {
                max_size: c.max_size,
                budget: c.budget,
                eps: c.eps,
                ..VerifyConfig::default()
            };
            let cfg = VerifyConfig {
                max_set: c.max_set.unwrap_or(cfg.max_set),
                ..cfg
            };
            let mut report: Report = run_suite(suite, &cfg)?;
            if !c.witnesses {
                report = report.without_witnesses();
            }
            let code = i32::from(!report.pass());
            Ok(Outcome {
                text: pretty(&report.to_json()),
                code,
            })
        }
        Command::Extend {
            profunctor,
            category,
            algebras,
            carrier_size,
            loose,
            tight,
        } => {
            if c.format != Format::Json {
                return Err(unsupported("extend", c.format));
            }
            let cat = category
                .as_deref()
                .map(|p| read_json(p).and_then(|v| FinCategory::from_json(&v)))
                .transpose()?;
            let phi = Profunctor::from_json(&read_json(profunctor)?, cat.as_ref())?;
            let m = PresheafMonad::new(phi);
            let mut ctx = Ctx::new(
                c.max_set.unwrap_or(crate::setcat::presheaf::MAX_SET_SIZE),
                c.budget,
            );
            let rows = carriers(&m, Side::Lower, *algebras, *carrier_size, &mut ctx)?;
            let cols = carriers(&m, Side::Upper, *algebras, *carrier_size, &mut ctx)?;
            let loose = match loose {
                LooseArg::Equalizer => LooseReading::Equalizer,
                LooseArg::Square => LooseReading::Square,
                LooseArg::MorphismEqualizer => LooseReading::MorphismEqualizer,
            };
            let tight = match tight {
                TightArg::Surjective => TightReading::SurjectiveTranspose,
                TightArg::Injective => TightReading::InjectiveTranspose,
            };
            let e = loose_extension(&m, rows, cols, loose, tight, &mut ctx)?;
            ok(pretty(&e.to_json(c.witnesses)))
        }
        Command::Qnucleus { input, max_iter } => {
            if c.format != Format::Json {
                return Err(unsupported("qnucleus", c.format));
            }
            let m = QuantaleMatrix::from_json(&read_json(input)?)?;
            let mode = match m.subcarrier() {
                Some(_) => NucleusMode::Exact {
                    budget: u128::from(c.budget),
                },
                None => NucleusMode::Approximate {
                    eps: c.eps,
                    max_iter: *max_iter,
                },
            };
            let pairs = q_nucleus(&m, mode)?;
            let enc = crate::quantale::encode_vector;
            let pairs: Vec<Value> = pairs
                .iter()
                .map(|p| json!({ "alpha": enc(&p.alpha), "beta": enc(&p.beta) }))
                .collect();
            let mode = if m.subcarrier().is_some() {
                "exact"
            } else {
                "approximate"
            };
            ok(pretty(
                &json!({ "quantale": m.quantale.tag(), "mode": mode, "pairs": pairs }),
            ))
        }
        Command::Convert { input } => {
            let ctx = load_context(input)?;
            match c.format {
                Format::Json => ok(pretty(&ctx.to_json())),
                Format::Cxt => ok(write_cxt(&ctx)),
                f => Err(unsupported("convert", f)),
            }
        }
    }
}

/// Parses `args`, runs the command and returns the exit code; errors go to stderr.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    // reserved; every suite is deterministic
    let _seed = std::env::var("NUCLEUS_KIT_SEED").ok();
    if let Some(j) = cli.common.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return 2;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.common.output {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| e.to_string()),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_have_documented_defaults() {
        let cli = Cli::try_parse_from(["nucleus-kit", "verify", "--suite", "zp"]).unwrap();
        assert_eq!(
            (cli.common.max_size, cli.common.budget, cli.common.eps),
            (5, 10_000_000, 1e-9)
        );
        assert_eq!(cli.common.format, Format::Json);
    }

    #[test]
    fn unknown_suite_exits_two() {
        assert_eq!(run_from(["nucleus-kit", "verify", "--suite", "nope"]), 2);
    }

    #[test]
    fn bad_eps_is_a_config_error() {
        let cli =
            Cli::try_parse_from(["nucleus-kit", "--eps", "0", "verify", "--suite", "zp"]).unwrap();
        assert_eq!(execute(&cli).err().map(|e| e.exit_code()), Some(2));
    }
}
