//! External oracles: process invocation over the command-line and
//! query-file transports, instantiation of templates, transcripts.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::eval::{beta, expand_macros, substitute, value_from_sexpr, Value};
use crate::reader::{read_all, SExpr};
use crate::session::{OracleBinding, OracleKind, SynthState, Transport};
use crate::syntax::Term;
use crate::verify::{domain, interp_for, Pins, SolutionDef};

pub mod stub;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("cannot resolve oracle `{0}` to an executable")]
    Resolve(String),
    #[error("cannot start oracle `{0}`: {1}")]
    Spawn(String, String),
    #[error("oracle `{name}` exited with status {status}{}", if .stderr.is_empty() { String::new() } else { format!(": {}", .stderr.trim()) })]
    Exit { name: String, status: String, stderr: String },
    #[error("oracle `{0}` timed out after {1:?}")]
    Timeout(String, Duration),
    #[error("oracle `{0}` replied with an unparsable tuple: {1}")]
    Parse(String, String),
    #[error("oracle `{0}` replied with a value of the wrong sort: {1}")]
    Sort(String, String),
    #[error("oracle `{0}`: {1}")]
    Io(String, String),
    #[error("transcript: {0}")]
    Transcript(String),
}

/// Maps oracle names to argument vectors.
#[derive(Debug, Clone, Default)]
pub struct Resolver {
    map: HashMap<String, Vec<String>>,
}

impl Resolver {
    pub fn new() -> Resolver {
        Resolver::default()
    }

    /// Bind `name` to a command, split on whitespace.
    pub fn insert(&mut self, name: &str, command: &str) {
        self.map.insert(name.to_string(), command.split_whitespace().map(str::to_string).collect());
    }

    /// Parse a `name=command` mapping.
    pub fn insert_mapping(&mut self, spec: &str) -> Result<(), String> {
        match spec.split_once('=') {
            Some((n, c)) if !n.is_empty() && !c.trim().is_empty() => {
                self.insert(n, c);
                Ok(())
            }
            _ => Err(format!("expected NAME=COMMAND, found `{spec}`")),
        }
    }

    pub fn resolve(&self, name: &str) -> Result<Vec<String>, OracleError> {
        if let Some(cmd) = self.map.get(name) {
            return Ok(cmd.clone());
        }
        if Path::new(name).is_file() {
            return Ok(vec![name.to_string()]);
        }
        if !name.contains('/') {
            if let Some(paths) = std::env::var_os("PATH") {
                for dir in std::env::split_paths(&paths) {
                    let p: PathBuf = dir.join(name);
                    if p.is_file() {
                        return Ok(vec![p.to_string_lossy().into_owned()]);
                    }
                }
            }
        }
        Err(OracleError::Resolve(name.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct InvokeOptions {
    pub timeout: Duration,
    pub keep_files: bool,
    /// Use this transport regardless of the binding's attributes.
    pub transport: Option<Transport>,
}

impl Default for InvokeOptions {
    fn default() -> InvokeOptions {
        InvokeOptions { timeout: Duration::from_secs(10), keep_files: false, transport: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCall {
    pub binding: OracleBinding,
    pub inputs: Vec<Value>,
    pub outputs: Vec<Value>,
    pub raw_request: String,
    pub raw_reply: String,
}

pub fn print_tuple(vs: &[Value]) -> String {
    let parts: Vec<String> = vs.iter().map(Value::to_string).collect();
    format!("({})", parts.join(" "))
}

fn run(name: &str, argv: &[String], timeout: Duration) -> Result<String, OracleError> {
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| OracleError::Spawn(name.to_string(), e.to_string()))?;
    let mut out = child.stdout.take().unwrap();
    let mut err = child.stderr.take().unwrap();
    let reader = std::thread::spawn(move || {
        let mut s = Vec::new();
        let _ = out.read_to_end(&mut s);
        s
    });
    let err_reader = std::thread::spawn(move || {
        let mut s = Vec::new();
        let _ = err.read_to_end(&mut s);
        s
    });
    let start = Instant::now();
    let status = loop {
        match child.try_wait() {
            Ok(Some(st)) => break st,
            Ok(None) if start.elapsed() > timeout => {
                let _ = child.kill();
                let _ = child.wait();
                return Err(OracleError::Timeout(name.to_string(), timeout));
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(2)),
            Err(e) => return Err(OracleError::Io(name.to_string(), e.to_string())),
        }
    };
    let stdout = reader.join().unwrap_or_default();
    let stderr = err_reader.join().unwrap_or_default();
    if !status.success() {
        return Err(OracleError::Exit {
            name: name.to_string(),
            status: status.code().map_or_else(|| "signal".to_string(), |c| c.to_string()),
            stderr: String::from_utf8_lossy(&stderr).into_owned(),
        });
    }
    String::from_utf8(stdout).map_err(|_| OracleError::Parse(name.to_string(), "reply is not UTF-8".into()))
}

/// Parse a reply `(w₁ … wₘ)` against the binding's output sorts.
pub fn parse_reply(binding: &OracleBinding, reply: &str, state: &SynthState) -> Result<Vec<Value>, OracleError> {
    let name = &binding.oracle;
    let items = read_all(reply).map_err(|e| OracleError::Parse(name.clone(), e.to_string()))?;
    let [SExpr::List { items: ws, .. }] = items.as_slice() else {
        return Err(OracleError::Parse(name.clone(), format!("expected one tuple, found `{}`", reply.trim())));
    };
    if ws.len() != binding.outputs.len() {
        return Err(OracleError::Parse(
            name.clone(),
            format!("expected {} values, found {}", binding.outputs.len(), ws.len()),
        ));
    }
    ws.iter()
        .zip(&binding.outputs)
        .map(|(w, v)| value_from_sexpr(w, &v.sort, &state.sig).map_err(|d| OracleError::Sort(name.clone(), d.message)))
        .collect()
}

/// Run the oracle of `binding` on `inputs`.
pub fn invoke(
    binding: &OracleBinding,
    inputs: &[Value],
    state: &SynthState,
    resolver: &Resolver,
    opts: &InvokeOptions,
) -> Result<OracleCall, OracleError> {
    let name = &binding.oracle;
    let mut argv = resolver.resolve(name)?;
    let transport = opts.transport.unwrap_or(binding.transport);
    let raw_request;
    let mut _dir = None;
    match transport {
        Transport::CommandLine => {
            let args: Vec<String> = inputs.iter().map(Value::to_string).collect();
            raw_request = args.join(" ");
            argv.extend(args);
        }
        Transport::File => {
            raw_request = print_tuple(inputs);
            let dir = tempfile::Builder::new()
                .prefix("sygus-oracle")
                .tempdir()
                .map_err(|e| OracleError::Io(name.clone(), e.to_string()))?;
            let path = dir.path().join(format!("{name}.query").replace('/', "_"));
            std::fs::write(&path, &raw_request).map_err(|e| OracleError::Io(name.clone(), e.to_string()))?;
            argv.push(path.to_string_lossy().into_owned());
            if opts.keep_files {
                let _ = dir.keep();
            } else {
                _dir = Some(dir);
            }
        }
    }
    let raw_reply = run(name, &argv, opts.timeout)?;
    let outputs = parse_reply(binding, &raw_reply, state)?;
    Ok(OracleCall { binding: binding.clone(), inputs: inputs.to_vec(), outputs, raw_request, raw_reply })
}

fn inline_funs(t: &Term, funs: &BTreeMap<String, (Vec<String>, Term)>) -> Term {
    match t {
        Term::App(id, args) => {
            let args: Vec<Term> = args.iter().map(|a| inline_funs(a, funs)).collect();
            match id.as_simple().and_then(|n| funs.get(n)) {
                Some((ps, body)) => beta(ps, body, &args),
                None => Term::App(id.clone(), args),
            }
        }
        Term::Annot(inner, a) => Term::Annot(Box::new(inline_funs(inner, funs)), a.clone()),
        Term::Exists(vs, b) => Term::Exists(vs.clone(), Box::new(inline_funs(b, funs))),
        Term::Forall(vs, b) => Term::Forall(vs.clone(), Box::new(inline_funs(b, funs))),
        Term::Let(bs, b) => Term::Let(
            bs.iter().map(|(x, v)| (x.clone(), inline_funs(v, funs))).collect(),
            Box::new(inline_funs(b, funs)),
        ),
        _ => t.clone(),
    }
}

/// The template with inputs and outputs replaced by the call's values.
/// Function values are beta-reduced into their applications.
pub fn instantiate(call: &OracleCall) -> Term {
    let b = &call.binding;
    let mut first = BTreeMap::new();
    let mut funs = BTreeMap::new();
    for (v, x) in b.inputs.iter().chain(&b.outputs).zip(call.inputs.iter().chain(&call.outputs)) {
        match x {
            Value::Fun { params, body } => {
                funs.insert(v.name.clone(), (params.iter().map(|p| p.name.clone()).collect(), body.clone()));
                // Bare occurrences keep the lambda text; they only serve display.
                first.insert(v.name.clone(), x.to_term());
            }
            _ => {
                first.insert(v.name.clone(), x.to_term());
            }
        }
    }
    let t = if funs.is_empty() { b.template.clone() } else { inline_funs(&b.template, &funs) };
    substitute(&t, &first)
}

/// For the binding of a `declare-oracle-fun`, the oracle function name.
pub fn oracle_function<'a>(binding: &'a OracleBinding, state: &SynthState) -> Option<&'a str> {
    if binding.kind != OracleKind::Assume || binding.outputs.len() != 1 {
        return None;
    }
    let Term::App(eq, args) = &binding.template else { return None };
    if eq.as_simple() != Some("=") || args.len() != 2 {
        return None;
    }
    let name = match &args[0] {
        Term::App(f, _) | Term::Ident(f) => f.as_simple()?,
        _ => return None,
    };
    (state.oracle_vars.contains(name) && args[1] == Term::sym(&binding.outputs[0].name)).then_some(name)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub calls: Vec<OracleCall>,
}

impl Transcript {
    /// Tables for oracle functions plus instantiated constraints and
    /// assumptions. An oracle-function call with a function-valued input
    /// contributes its table entry only.
    pub fn pins(&self, state: &SynthState) -> Pins {
        let mut pins = Pins::default();
        for call in &self.calls {
            if let Some(f) = oracle_function(&call.binding, state) {
                pins.tables.entry(f.to_string()).or_default().insert(call.inputs.clone(), call.outputs[0].clone());
                if call.inputs.iter().any(|v| matches!(v, Value::Fun { .. })) {
                    continue;
                }
            }
            let t = instantiate(call);
            match call.binding.kind {
                OracleKind::Constraint => pins.constraints.push(t),
                OracleKind::Assume => pins.assumptions.push(t),
            }
        }
        pins
    }

    /// One `(call k (v…) (w…))` line per call, `k` indexing `state.oracles`.
    pub fn to_text(&self, state: &SynthState) -> String {
        let mut out = String::new();
        for call in &self.calls {
            let k = state.oracles.iter().position(|b| *b == call.binding).unwrap_or(usize::MAX);
            out.push_str(&format!("(call {k} {} {})\n", print_tuple(&call.inputs), print_tuple(&call.outputs)));
        }
        out
    }

    pub fn from_text(text: &str, state: &SynthState) -> Result<Transcript, OracleError> {
        let bad = |m: String| OracleError::Transcript(m);
        let items = read_all(text).map_err(|e| bad(e.to_string()))?;
        let mut calls = Vec::new();
        for item in &items {
            let Some([head, k, ins, outs]) = item.as_list() else { return Err(bad(format!("bad entry `{item}`"))) };
            if !head.is_symbol("call") {
                return Err(bad(format!("bad entry `{item}`")));
            }
            let k: usize = k.text().and_then(|t| t.parse().ok()).ok_or_else(|| bad(format!("bad index `{k}`")))?;
            let binding = state.oracles.get(k).ok_or_else(|| bad(format!("no oracle binding {k}")))?;
            let read = |e: &SExpr, vars: &[crate::syntax::SortedVar]| -> Result<Vec<Value>, OracleError> {
                let vs = e.as_list().filter(|l| l.len() == vars.len()).ok_or_else(|| bad(format!("bad tuple `{e}`")))?;
                vs.iter().zip(vars).map(|(v, x)| value_from_sexpr(v, &x.sort, &state.sig).map_err(|d| bad(d.message))).collect()
            };
            let inputs = read(ins, &binding.inputs)?;
            let outputs = read(outs, &binding.outputs)?;
            calls.push(OracleCall {
                binding: binding.clone(),
                raw_request: print_tuple(&inputs),
                raw_reply: print_tuple(&outputs),
                inputs,
                outputs,
            });
        }
        Ok(Transcript { calls })
    }
}

/// Ground applications of `f` in `t` whose arguments contain no universal
/// variables.
fn ground_apps(t: &Term, f: &str, state: &SynthState, out: &mut Vec<Vec<Term>>) {
    match t {
        Term::App(id, args) => {
            let universal: HashSet<&str> = state.vars.iter().map(|v| v.name.as_str()).collect();
            if id.as_simple() == Some(f) && args.iter().all(|a| a.free_symbols().iter().all(|s| !universal.contains(s.as_str()))) {
                out.push(args.clone());
            }
            args.iter().for_each(|a| ground_apps(a, f, state, out));
        }
        Term::Annot(inner, _) => ground_apps(inner, f, state, out),
        Term::Exists(_, b) | Term::Forall(_, b) => ground_apps(b, f, state, out),
        Term::Let(bs, b) => {
            bs.iter().for_each(|(_, v)| ground_apps(v, f, state, out));
            ground_apps(b, f, state, out);
        }
        _ => {}
    }
}

const FIRST_ORDER_QUERIES: usize = 8;

/// Input tuples the toolkit asks each binding about. Oracle functions are
/// queried at every ground application in the conjecture; function-sorted
/// inputs take the candidate solution; other inputs range over a small grid.
fn queries(binding: &OracleBinding, state: &SynthState, defs: &[SolutionDef]) -> Vec<Vec<Value>> {
    let it = interp_for(state, defs, 10_000, None);
    if let Some(f) = oracle_function(binding, state) {
        let mut apps = Vec::new();
        for t in state.constraints.iter().chain(&state.assumptions) {
            ground_apps(&expand_macros(t, &state.sig), f, state, &mut apps);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for args in apps {
            if let Ok(vs) = args.iter().map(|a| it.eval(a, &[])).collect::<Result<Vec<_>, _>>() {
                if seen.insert(vs.clone()) {
                    out.push(vs);
                }
            }
        }
        return out;
    }
    let mut columns = Vec::new();
    for v in &binding.inputs {
        if v.sort.as_arrow().is_some() {
            let cand = defs.iter().find(|d| {
                let ps: Vec<_> = d.params.iter().map(|p| p.sort.clone()).collect();
                crate::syntax::Sort::arrow(ps, d.ret.clone()) == v.sort
            });
            match cand {
                Some(d) => columns.push(vec![Value::Fun { params: d.params.clone(), body: d.body.clone() }]),
                None => return Vec::new(),
            }
        } else {
            match domain::grid(&v.sort, 2, &state.sig) {
                Some(g) => columns.push(g),
                None => return Vec::new(),
            }
        }
    }
    let mut out = vec![Vec::new()];
    for col in columns {
        out = out
            .into_iter()
            .flat_map(|pre| col.iter().map(move |x| [pre.clone(), vec![x.clone()]].concat()))
            .take(FIRST_ORDER_QUERIES)
            .collect();
    }
    out
}

/// Query every binding once per input tuple and record the calls.
pub fn collect(
    state: &SynthState,
    defs: &[SolutionDef],
    resolver: &Resolver,
    opts: &InvokeOptions,
) -> Result<Transcript, OracleError> {
    let mut t = Transcript::default();
    for b in &state.oracles {
        for inputs in queries(b, state, defs) {
            t.calls.push(invoke(b, &inputs, state, resolver, opts)?);
        }
    }
    Ok(t)
}
