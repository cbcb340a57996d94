use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sygus::diag::Diagnostic;
use sygus::oracle::{self, InvokeOptions, Resolver, Transcript};
use sygus::session::{desugar, load, SynthState, Transport};
use sygus::verify::{self, DomainSpec, Pins, Response, Semantic, SolveOptions};
use sygus::Options;

const OK: u8 = 0;
const FAILED: u8 = 1;
const INTERNAL: u8 = 3;
const UNKNOWN: u8 = 4;

#[derive(Parser)]
#[command(name = "sygus", version, about = "SyGuS 2.1 toolkit")]
struct Cli {
    /// Print diagnostics as JSON, one object per line.
    #[arg(long, global = true)]
    json: bool,
    /// Accept the documented relaxations (chained comparisons, single-list
    /// oracle-constraint).
    #[arg(long, global = true)]
    permissive: bool,
    /// Leave `distinct` out of the core theory.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Domain {
    /// Integer grid bound.
    #[arg(long, default_value_t = 50)]
    bound: i64,
    /// Random samples per constraint.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluation fuel per point.
    #[arg(long, default_value_t = sygus::eval::DEFAULT_FUEL)]
    fuel: u64,
}

impl Domain {
    fn spec(&self) -> DomainSpec {
        DomainSpec { bound: self.bound, samples: self.samples, seed: self.seed, fuel: self.fuel, ..DomainSpec::default() }
    }
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// Map an oracle name to a command (split on whitespace).
    #[arg(long = "oracle", value_name = "NAME=COMMAND")]
    oracles: Vec<String>,
    /// Per-call limit in seconds.
    #[arg(long, default_value_t = 10)]
    oracle_timeout: u64,
    #[arg(long)]
    keep_oracle_files: bool,
    /// Override the transport declared for each oracle.
    #[arg(long, value_enum, value_name = "KIND")]
    oracle_transport: Option<TransportArg>,
    /// Record the oracle calls to this file.
    #[arg(long, value_name = "FILE")]
    transcript: Option<PathBuf>,
    /// Use recorded oracle calls instead of invoking oracles.
    #[arg(long, value_name = "FILE", conflicts_with = "transcript")]
    replay: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum TransportArg {
    Cli,
    File,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and check a SyGuS file.
    Validate { file: PathBuf },
    /// Print the core form.
    Desugar {
        file: PathBuf,
        /// Also expand macros inside constraints.
        #[arg(long)]
        expand: bool,
    },
    /// Check a solver response.
    Check {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[command(flatten)]
        domain: Domain,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write an SMT-LIB validity query for a response.
    EmitSmt {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Keep only the bases of weight sets with pumps.
        #[arg(long)]
        allow_pump_truncation: bool,
    },
    /// List terms of a grammar by size.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        fun: String,
        #[arg(long)]
        max_size: usize,
        /// Start from this nonterminal instead of the first.
        #[arg(long)]
        nonterminal: Option<String>,
    },
    /// Weight set of a term.
    Weights {
        file: PathBuf,
        #[arg(long)]
        fun: String,
        #[arg(long)]
        keyword: String,
        #[arg(long)]
        term: String,
    },
    /// Enumerative solver.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        #[command(flatten)]
        domain: Domain,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Table-driven oracle for tests.
    OracleStub {
        #[arg(long)]
        table: PathBuf,
        /// Read inputs from the query file given as the only argument.
        #[arg(long)]
        file_mode: bool,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
}

fn report(diags: &[Diagnostic], json: bool) {
    for d in diags {
        if json {
            println!("{}", serde_json::to_string(d).unwrap());
        } else {
            eprintln!("{d}");
        }
    }
}

struct Ctx {
    json: bool,
    opts: Options,
}

impl Ctx {
    /// Load a problem, reporting diagnostics; `None` when it has errors.
    fn load(&self, file: &Path) -> Result<Option<SynthState>> {
        let l = load(&read(file)?, &self.opts);
        report(&l.diagnostics, self.json);
        Ok(l.ok().then_some(l.state))
    }

    fn response(&self, st: &SynthState, file: &Path) -> Result<Option<Response>> {
        match verify::parse_response(&read(file)?, st) {
            Ok(r) => Ok(Some(r)),
            Err(d) => {
                report(&[d], self.json);
                Ok(None)
            }
        }
    }
}

fn pins(st: &SynthState, defs: &[verify::SolutionDef], args: &OracleArgs) -> Result<Option<Pins>> {
    if st.oracles.is_empty() {
        return Ok(None);
    }
    let transcript = match &args.replay {
        Some(p) => Transcript::from_text(&read(p)?, st)?,
        None => {
            let mut res = Resolver::new();
            for m in &args.oracles {
                res.insert_mapping(m).map_err(|e| anyhow!(e))?;
            }
            let opts = InvokeOptions {
                timeout: Duration::from_secs(args.oracle_timeout),
                keep_files: args.keep_oracle_files,
                transport: args.oracle_transport.map(|t| match t {
                    TransportArg::Cli => Transport::CommandLine,
                    TransportArg::File => Transport::File,
                }),
            };
            oracle::collect(st, defs, &res, &opts)?
        }
    };
    if let Some(p) = &args.transcript {
        std::fs::write(p, transcript.to_text(st)).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(Some(transcript.pins(st)))
}

fn verdict_code(s: &Semantic) -> u8 {
    match s {
        Semantic::PassedBounded { .. } => OK,
        Semantic::Refuted { .. } => FAILED,
        Semantic::Unknown(_) => UNKNOWN,
    }
}

fn print_verdict(s: &Semantic, json: bool) {
    if json {
        let (kind, points) = match s {
            Semantic::PassedBounded { points, .. } => ("passed-bounded", Some(*points)),
            Semantic::Refuted { .. } => ("refuted", None),
            Semantic::Unknown(_) => ("unknown", None),
        };
        println!("{}", serde_json::json!({ "verdict": kind, "points": points, "detail": s.to_string() }));
    } else {
        println!("{s}");
    }
}

fn check(ctx: &Ctx, file: &Path, solution: &Path, domain: &Domain, oargs: &OracleArgs) -> Result<u8> {
    let Some(st) = ctx.load(file)? else { return Ok(FAILED) };
    let Some(resp) = ctx.response(&st, solution)? else { return Ok(FAILED) };
    match &resp {
        Response::Fail => {
            println!("unknown: the response is fail");
            return Ok(UNKNOWN);
        }
        Response::Infeasible => {
            println!("unknown: infeasible responses cannot be checked");
            return Ok(UNKNOWN);
        }
        _ => {}
    }
    if let Err(e) = verify::check_syntactic(&st, resp.defs()) {
        if ctx.json {
            println!("{}", serde_json::json!({ "verdict": "syntactic-failure", "detail": e.to_string() }));
        } else {
            println!("syntactic-failure: {e}");
        }
        return Ok(FAILED);
    }
    let pins = pins(&st, resp.defs(), oargs)?;
    let dom = domain.spec();
    let s = match (&resp, &st.objective) {
        (Response::OptSolution(vals, defs), Some(_)) => match verify::check_optimize(&st, vals, defs, &dom, pins.as_ref()) {
            Ok(s) => s,
            Err(d) => {
                report(&[d], ctx.json);
                return Ok(FAILED);
            }
        },
        (Response::OptSolution(..), None) => {
            eprintln!("error: the response carries objective values but the problem has no optimize-synth");
            return Ok(FAILED);
        }
        _ => verify::check_semantic_bounded(&st, resp.defs(), &dom, pins.as_ref(), &[]),
    };
    print_verdict(&s, ctx.json);
    Ok(verdict_code(&s))
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Ctx { json: cli.json, opts: Options { strict: cli.strict, permissive: cli.permissive, ..Options::default() } };
    match cli.cmd {
        Cmd::Validate { file } => Ok(if ctx.load(&file)?.is_some() { OK } else { FAILED }),
        Cmd::Desugar { file, expand } => {
            let Some(st) = ctx.load(&file)? else { return Ok(FAILED) };
            print!("{}", desugar(&st, expand));
            Ok(OK)
        }
        Cmd::Check { file, solution, domain, oracle } => check(&ctx, &file, &solution, &domain, &oracle),
        Cmd::EmitSmt { file, solution, output, allow_pump_truncation } => {
            let Some(st) = ctx.load(&file)? else { return Ok(FAILED) };
            let Some(resp) = ctx.response(&st, &solution)? else { return Ok(FAILED) };
            match verify::emit_smt(&st, resp.defs(), allow_pump_truncation) {
                Ok(text) => {
                    match output {
                        Some(p) => std::fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?,
                        None => print!("{text}"),
                    }
                    Ok(OK)
                }
                Err(d) => {
                    report(&[d], ctx.json);
                    Ok(FAILED)
                }
            }
        }
        Cmd::Enumerate { file, fun, max_size, nonterminal } => {
            let Some(st) = ctx.load(&file)? else { return Ok(FAILED) };
            let rs = st.fun(&fun).and_then(|f| f.rules.as_ref()).ok_or_else(|| anyhow!("`{fun}` has no grammar"))?;
            let y = nonterminal.unwrap_or_else(|| rs.start().to_string());
            if rs.nt_index(&y).is_none() {
                return Err(anyhow!("`{y}` is not a nonterminal of `{fun}`"));
            }
            let e = rs.enumerate(&y, max_size);
            for t in &e.terms {
                println!("{t}");
            }
            if e.sampled {
                eprintln!("note: constant classes were sampled; the list is partial");
            }
            Ok(OK)
        }
        Cmd::Weights { file, fun, keyword, term } => {
            let Some(st) = ctx.load(&file)? else { return Ok(FAILED) };
            let rs = st.fun(&fun).and_then(|f| f.rules.as_ref()).ok_or_else(|| anyhow!("`{fun}` has no grammar"))?;
            let e = sygus::reader::read_one(&term).map_err(|e| anyhow!("bad term: {e}"))?;
            let t = sygus::syntax::parse_term(&e).map_err(|d| anyhow!("bad term: {}", d.message))?;
            let kw = if keyword.starts_with(':') { keyword } else { format!(":{keyword}") };
            println!("{}", rs.weight_sets(&kw, &t));
            Ok(OK)
        }
        Cmd::Solve { file, max_size, timeout, domain, oracle } => {
            let Some(st) = ctx.load(&file)? else { return Ok(FAILED) };
            let pins = pins(&st, &[], &oracle)?;
            let opts = SolveOptions { max_size, budget: Duration::from_secs(timeout), dom: domain.spec() };
            let r = verify::solve_enumerative(&st, &opts, pins.as_ref());
            print!("{r}");
            Ok(if r == Response::Fail { UNKNOWN } else { OK })
        }
        Cmd::OracleStub { table, file_mode, args } => {
            let (code, out, err) = oracle::stub::stub_main(&read(&table)?, file_mode, &args);
            print!("{out}");
            eprint!("{err}");
            Ok(code as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INTERNAL)
        }
    }
}
