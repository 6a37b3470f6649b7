use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use mws::bounds::{self, lower_bound, lower_bound_prop_a};
use mws::code::{ENUMERATION_LIMIT, MATERIALIZE_LIMIT};
use mws::construct::{self, AlgebraicOptions, AlgebraicRun, ConstructError};
use mws::io::{self, IoError};
use mws::{
    code_from_system, make_field, mws_via_characters, system_from_code, theta, CodeError, FieldSpec, GfError,
    LinearCode, PgError, ProjectiveSystem, RepetitionVector,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::{BoundsArgs, Cli, Command, ConstructArgs, Format, Method, Mode, SpectrumArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Infeasible(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PgError> for CliError {
    fn from(e: PgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::TooLargeToEnumerate { .. } | CodeError::TooLongToMaterialize(_) => {
                CliError::Infeasible(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::VerificationFailed(_) => CliError::Verification(e.to_string()),
            ConstructError::Gf(e) => e.into(),
            ConstructError::Code(e) => e.into(),
            _ => CliError::Infeasible(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Human-readable lines plus a JSON summary.
struct Report {
    lines: Vec<String>,
    json: Value,
}

impl Report {
    fn emit(&self, to_stderr: bool) {
        let text = format!("{}\n{}", self.lines.join("\n"), self.json);
        if to_stderr {
            eprintln!("{text}");
        } else {
            println!("{text}");
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Construct(args) => construct(args, cli.verbose),
        Command::Verify(args) => verify(args, cli.verbose),
        Command::Bounds(args) => bounds(args),
        Command::Spectrum(args) => spectrum(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn field(q: u64) -> Result<FieldSpec> {
    Ok(make_field(q)?)
}

enum Built {
    System(ProjectiveSystem),
    Code(LinearCode),
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Geometric => "geometric",
        Method::K2 => "k2",
        Method::Fano => "fano",
        Method::Pg23 => "pg23",
        Method::Triangle => "triangle",
        Method::Lift => "lift",
        Method::Algebraic => "algebraic",
    }
}

fn parse_override(s: &str) -> Result<(usize, RepetitionVector)> {
    let bad = || CliError::Input(format!("override {s:?} is not of the form K=R1,R2,..."));
    let (k, r) = s.split_once('=').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let r: Vec<u64> = r
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok((k, RepetitionVector::new(r)?))
}

/// Checks that a method with a fixed parameter was not given a different one.
fn fixed(name: &str, given: Option<u64>, value: u64, method: Method) -> Result<u64> {
    match given {
        Some(v) if v != value => Err(CliError::Input(format!(
            "--method {} needs {name} = {value}, got {v}",
            method_name(method)
        ))),
        _ => Ok(value),
    }
}

fn require<T>(v: Option<T>, flag: &str, method: Method) -> Result<T> {
    v.ok_or_else(|| CliError::Input(format!("--method {} needs {flag}", method_name(method))))
}

fn algebraic_details(run: &AlgebraicRun) -> Vec<String> {
    run.states
        .iter()
        .map(|s| match &s.step {
            Some(step) => format!(
                "  k={} n={} normals={} (X1 {}, X2 {}) r={:?} R={} T={}",
                s.dim,
                s.code.n(),
                step.normal_count,
                step.x1_count,
                step.x2_count,
                step.r.entries(),
                step.r.total(),
                step.t_max
            ),
            None => format!("  k={} n={}", s.dim, s.code.n()),
        })
        .collect()
}

fn construct(args: &ConstructArgs, verbose: bool) -> Result<()> {
    let method = args.method;
    let k_given = args.k.map(|k| k as u64);
    let mut details = Vec::new();
    let built = match method {
        Method::Geometric => {
            let f = field(require(args.q, "--q", method)?)?;
            Built::System(construct::geometric(&f, require(args.k, "--k", method)?)?)
        }
        Method::K2 => {
            fixed("k", k_given, 2, method)?;
            Built::System(construct::optimal_k2(&field(require(args.q, "--q", method)?)?)?)
        }
        Method::Fano => {
            fixed("q", args.q, 2, method)?;
            fixed("k", k_given, 3, method)?;
            Built::System(construct::fano_732()?)
        }
        Method::Pg23 => {
            fixed("q", args.q, 3, method)?;
            fixed("k", k_given, 3, method)?;
            Built::System(construct::plane_3233()?)
        }
        Method::Triangle => {
            fixed("k", k_given, 3, method)?;
            Built::System(construct::triangle_3d(&field(require(args.q, "--q", method)?)?)?)
        }
        Method::Lift => match &args.input {
            Some(path) => {
                let sys = io::read_system(&read(path)?)?;
                if let Some(q) = args.q {
                    fixed("q", Some(q), sys.q() as u64, method)?;
                }
                fixed("k", k_given, sys.k() as u64 + 1, method)?;
                let t = args.t.unwrap_or_else(|| construct::minimal_exponent(sys.q(), sys.n()));
                details.push(format!("  lifted with t={t}"));
                Built::System(construct::lift(&sys, t)?)
            }
            None => {
                if args.t.is_some() {
                    return Err(CliError::Input("--t needs --in; the chain picks t itself".into()));
                }
                let f = field(require(args.q, "--q", method)?)?;
                let chain = construct::lift_chain(&f, args.k.unwrap_or(4))?;
                details.extend(chain.iter().map(|s| format!("  k={} n={}", s.k(), s.n())));
                Built::System(chain.into_iter().last().expect("nonempty chain"))
            }
        },
        Method::Algebraic => {
            let f = field(require(args.q, "--q", method)?)?;
            let overrides: BTreeMap<usize, RepetitionVector> = args
                .overrides
                .iter()
                .map(|s| parse_override(s))
                .collect::<Result<_>>()?;
            let options = AlgebraicOptions {
                overrides,
                shorten_last: args.shorten,
                repeat_final: false,
            };
            let run = construct::algebraic(&f, require(args.k, "--k", method)?, &options)?;
            details = algebraic_details(&run);
            Built::Code(run.code)
        }
    };

    let (sys, code) = match built {
        Built::System(s) => (Some(s), None),
        Built::Code(c) => (system_from_code(&c).ok(), Some(c)),
    };
    let format = args
        .format
        .unwrap_or(if code.is_some() { Format::Matrix } else { Format::System });
    let text = match format {
        Format::System => io::write_system(sys.as_ref().expect("constructions are nondegenerate")),
        Format::Matrix => match &code {
            Some(c) => io::write_matrix(c),
            None => io::write_matrix(&code_from_system(sys.as_ref().expect("system present"))?),
        },
    };
    let (q, k, n) = match (&sys, &code) {
        (Some(s), _) => (s.q(), s.k(), s.n().clone()),
        (None, Some(c)) => (c.q(), c.k(), BigUint::from(c.n())),
        (None, None) => unreachable!("a construction produced nothing"),
    };
    let mws = match (&sys, &code) {
        (Some(s), _) => mws_via_characters(s).mws,
        (None, Some(c)) => c.is_mws()?,
        (None, None) => unreachable!(),
    };
    if !mws {
        return Err(CliError::Verification("constructed code is not MWS".into()));
    }

    if let Some(path) = &args.out {
        fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    } else {
        print!("{text}");
    }
    let mut lines = vec![
        format!("method: {}", method_name(method)),
        format!("q={q} k={k} n={n}"),
        format!("MWS: {mws}, n={n}"),
    ];
    if verbose {
        lines.extend(details);
    }
    let report = Report {
        lines,
        json: json!({
            "command": "construct",
            "method": method_name(method),
            "q": q,
            "k": k,
            "n": n.to_string(),
            "format": match format { Format::Matrix => "matrix", Format::System => "system" },
            "mws": mws,
            "out": args.out.as_ref().map(|p| p.display().to_string()),
        }),
    };
    report.emit(args.out.is_none());
    Ok(())
}

/// A file's contents as whichever representations are available.
struct Loaded {
    sys: Option<ProjectiveSystem>,
    code: Option<LinearCode>,
    kind: &'static str,
}

fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let sys = io::read_system(&text)?;
        let code = match code_from_system(&sys) {
            Ok(c) => Some(c),
            Err(CodeError::TooLongToMaterialize(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(Loaded {
            sys: Some(sys),
            code,
            kind: "system",
        })
    } else {
        let code = io::read_matrix(&text)?;
        Ok(Loaded {
            sys: system_from_code(&code).ok(),
            code: Some(code),
            kind: "matrix",
        })
    }
}

fn verify(args: &VerifyArgs, verbose: bool) -> Result<()> {
    let loaded = load(&args.input)?;
    let (q, k, n) = match (&loaded.sys, &loaded.code) {
        (Some(s), _) => (s.q(), s.k(), s.n().clone()),
        (None, Some(c)) => (c.q(), c.k(), BigUint::from(c.n())),
        (None, None) => unreachable!(),
    };
    let th = theta(q, k as i64 - 1);
    let enumerable = |c: &LinearCode| c.representative_count() <= BigUint::from(ENUMERATION_LIMIT);
    let words_ok = loaded.code.as_ref().is_some_and(enumerable);
    let chars_ok = loaded.sys.is_some();
    let (use_words, use_chars) = match args.mode {
        None => (words_ok, chars_ok),
        Some(Mode::Codewords) => (true, false),
        Some(Mode::Characters) => (false, true),
        Some(Mode::Both) => (true, true),
    };
    if use_words && !words_ok {
        return Err(CliError::Infeasible(
            "codeword enumeration is out of reach for this code".into(),
        ));
    }
    if use_chars && !chars_ok {
        return Err(CliError::Infeasible(
            "the code has a zero column, so it has no projective system".into(),
        ));
    }
    if !use_words && !use_chars {
        return Err(CliError::Infeasible("neither engine can handle this input".into()));
    }

    let mut lines = vec![format!("input: {} file, q={q} k={k} n={n}", loaded.kind)];
    let mut json = json!({ "command": "verify", "q": q, "k": k, "n": n.to_string(), "theta": th.to_string() });

    let word_set: Option<BTreeSet<BigUint>> = if use_words {
        let c = loaded.code.as_ref().expect("checked");
        Some(c.weight_set()?.into_iter().map(BigUint::from).collect())
    } else {
        None
    };
    let char_report = use_chars.then(|| mws_via_characters(loaded.sys.as_ref().expect("checked")));
    let char_set: Option<BTreeSet<BigUint>> = char_report.as_ref().map(|r| r.weights.iter().cloned().collect());

    let distinct = char_set.as_ref().or(word_set.as_ref()).map_or(0, BTreeSet::len);
    let mws = BigUint::from(distinct) == th;
    if let (Some(a), Some(b)) = (&word_set, &char_set) {
        if a != b {
            return Err(CliError::Verification(
                "the two engines disagree on the weight set".into(),
            ));
        }
        lines.push("engines: codewords and characters agree".into());
    }
    let engines: Vec<&str> = [(use_words, "codewords"), (use_chars, "characters")]
        .iter()
        .filter(|e| e.0)
        .map(|e| e.1)
        .collect();
    lines.push(format!("weights: {distinct}/{th} distinct, MWS: {mws}"));
    json["engines"] = json!(engines);
    json["distinct_weights"] = json!(distinct);
    json["mws"] = json!(mws);
    if verbose {
        if let Some(set) = char_set.as_ref().or(word_set.as_ref()) {
            let ws: Vec<String> = set.iter().map(BigUint::to_string).collect();
            lines.push(format!("  weight set: {}", ws.join(" ")));
        }
    }

    let props = match &loaded.code {
        Some(c) if BigUint::from(c.q()).pow(c.k() as u32) <= BigUint::from(ENUMERATION_LIMIT) => {
            Some((c.property_a()?, c.property_b()?))
        }
        _ => None,
    };
    match props {
        Some((a, b)) => {
            lines.push(format!("property (A): {a}, property (B): {b}"));
            json["property_a"] = json!(a);
            json["property_b"] = json!(b);
        }
        None => {
            lines.push("property (A)/(B): skipped, too many codewords".into());
            json["property_a"] = Value::Null;
            json["property_b"] = Value::Null;
        }
    }

    let lb = lower_bound(q, k);
    lines.push(format!("lower bound: n >= {lb}: {}", n >= lb));
    json["lower_bound"] = json!(lb.to_string());
    if let Some((true, _)) = props {
        let lba = lower_bound_prop_a(q, k);
        lines.push(format!("lower bound with (A): n >= {lba}: {}", n >= lba));
        json["lower_bound_prop_a"] = json!(lba.to_string());
    }
    Report { lines, json }.emit(false);
    if mws {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{distinct} of {th} possible weights")))
    }
}

fn bounds(args: &BoundsArgs) -> Result<()> {
    let f = field(args.q)?;
    if args.k < 1 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    let report = bounds::report(f.q(), args.k);
    let json = report.to_json();
    let lines = json
        .as_object()
        .expect("object")
        .iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(key, v)| format!("{key} = {}", v.as_str().map_or_else(|| v.to_string(), str::to_string)))
        .collect();
    Report {
        lines,
        json: json!({ "command": "bounds", "report": json }),
    }
    .emit(false);
    Ok(())
}

fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let loaded = load(&args.input)?;
    let code = loaded
        .code
        .ok_or_else(|| CliError::Infeasible(format!("the code is longer than {MATERIALIZE_LIMIT}")))?;
    let a = code.weight_spectrum()?;
    let q = code.q() as u64;
    let mut lines = vec![format!("q={} k={} n={}", code.q(), code.k(), code.n())];
    let mut entries = serde_json::Map::new();
    for (w, &count) in a.iter().enumerate().filter(|(w, &c)| *w > 0 && c > 0) {
        lines.push(format!("A_{w} = {count}"));
        entries.insert(w.to_string(), json!(count));
    }
    let divisible = a.iter().skip(1).all(|&c| c % (q - 1) == 0);
    let total: u64 = a.iter().skip(1).sum();
    let expected = q.pow(code.k() as u32) - 1;
    lines.push(format!("every A_i divisible by q-1: {divisible}"));
    lines.push(format!("sum of A_i = {total} (q^k - 1 = {expected})"));
    Report {
        lines,
        json: json!({
            "command": "spectrum",
            "q": q,
            "k": code.k(),
            "n": code.n(),
            "spectrum": entries,
            "divisible": divisible,
            "total": total,
        }),
    }
    .emit(false);
    if divisible && total == expected {
        Ok(())
    } else {
        Err(CliError::Verification(
            "weight distribution fails its identities".into(),
        ))
    }
}
