use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::file::{parse, rational_mod_p, Domain, IdealFile, ParseError};
use zprimdec::fielddec::{primdec_field, FactorField};
use zprimdec::gb::GbCoeff;
use zprimdec::ideals::{intersect, intersect_all, quotient_ideal, saturation, Ideal};
use zprimdec::numth::{BigRat, FpElem};
use zprimdec::poly::{QPoly, VarMask, ZPoly};
use zprimdec::zdec::{self, Branch, Decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Irredundant primary decomposition
    Decompose,
    /// Reduced Gröbner basis under the file's ordering
    Gb,
    /// Saturation I : J^∞
    Sat,
    /// Intersection I ∩ J
    Intersect,
    /// Ideal quotient I : J
    Quotient,
    /// Decompose, then check the result and print the report
    Verify,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "zprimdec", version, about = "Primary decomposition of polynomial ideals over the integers")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Ideal description file, or `-` for standard input
    pub file: PathBuf,
    /// Worker threads for the per-prime tasks
    #[arg(short = 'j', long, env = "ZPRIMDEC_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every randomized step
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
    /// Check the decomposition; exit status 1 if a check fails
    #[arg(long)]
    pub verify: bool,
    /// Show separators, multipliers and exponents used
    #[arg(long)]
    pub trace: bool,
    /// Ideals to operate on (default: the first one or two in the file)
    #[arg(long = "ideal", value_name = "NAME")]
    pub ideals: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Compute(#[from] zprimdec::Error),
    #[error("verification failed")]
    Verification { output: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            _ => 2,
        }
    }
}

/// Parses the arguments, runs, writes to the given streams and returns the
/// exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let source = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let source = match source {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "zprimdec: cannot read {}: {e}", args.file.display());
            return 2;
        }
    };
    match execute(&args, &source) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(CliError::Verification { output }) => {
            let _ = out.write_all(output.as_bytes());
            let _ = writeln!(err, "zprimdec: verification failed");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "zprimdec: {e}");
            e.exit_code()
        }
    }
}

/// Runs `args.command` on the file text and returns what to print.
pub fn execute(args: &Args, source: &str) -> Result<String, CliError> {
    let file = parse(source)?;
    let arity = match args.command {
        Command::Decompose | Command::Gb | Command::Verify => 1,
        _ => 2,
    };
    let names: Vec<String> = if args.ideals.is_empty() {
        file.ideals.iter().take(arity).map(|i| i.name.clone()).collect()
    } else {
        args.ideals.clone()
    };
    if names.len() != arity {
        return Err(CliError::Usage(format!("{:?} needs {arity} ideal(s), got {}", args.command, names.len())));
    }
    let operands = names
        .iter()
        .map(|n| file.ideal(n).map(|i| i.gens.clone()).ok_or_else(|| CliError::Usage(format!("no ideal named '{n}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    match file.domain {
        Domain::Integer => {
            let conv = |g: &QPoly| -> ZPoly { g.map_coeffs((), |c: &BigRat| c.to_integer()) };
            let ops: Vec<Ideal<_>> = operands.iter().map(|gs| Ideal::new((), file.vars.len(), gs.iter().map(conv))).collect();
            if matches!(args.command, Command::Decompose | Command::Verify) {
                return decompose_z(args, &file, &ops[0]);
            }
            algebra(args, &file, &ops)
        }
        Domain::Rational => {
            let ops: Vec<Ideal<BigRat>> =
                operands.iter().map(|gs| Ideal::new(Default::default(), file.vars.len(), gs.iter().cloned())).collect();
            dispatch_field(args, &file, &ops)
        }
        Domain::ModP(p) => {
            let conv = |g: &QPoly| g.map_coeffs(p, |c: &BigRat| rational_mod_p(c, p));
            let ops: Vec<Ideal<FpElem>> = operands.iter().map(|gs| Ideal::new(p, file.vars.len(), gs.iter().map(conv))).collect();
            dispatch_field(args, &file, &ops)
        }
    }
}

fn dispatch_field<F: FactorField>(args: &Args, file: &IdealFile, ops: &[Ideal<F>]) -> Result<String, CliError> {
    if matches!(args.command, Command::Decompose | Command::Verify) {
        decompose_field(args, file, &ops[0])
    } else {
        algebra(args, file, ops)
    }
}

fn render<C: GbCoeff>(i: &Ideal<C>, vars: &[String]) -> Vec<String> {
    if i.is_zero() {
        return vec!["0".into()];
    }
    i.gb().elements().iter().map(|g| g.display(vars).to_string()).collect()
}

fn angle(gens: &[String]) -> String {
    format!("<{}>", gens.join(", "))
}

fn algebra<C: GbCoeff>(args: &Args, file: &IdealFile, ops: &[Ideal<C>]) -> Result<String, CliError> {
    let v = &file.vars;
    let gens: Vec<String> = match args.command {
        Command::Gb => {
            let basis = ops[0].gb_with(file.ordering);
            if basis.is_zero_ideal() {
                vec!["0".into()]
            } else {
                basis.elements().iter().map(|g| g.display(v).to_string()).collect()
            }
        }
        Command::Intersect => render(&intersect(&ops[0], &ops[1]), v),
        Command::Quotient => render(&quotient_ideal(&ops[0], &ops[1])?, v),
        Command::Sat => {
            if ops[1].is_zero() {
                return Err(CliError::Usage("saturation by the zero ideal".into()));
            }
            let parts = ops[1].gb().elements().iter().map(|h| saturation(&ops[0], h)).collect::<Result<Vec<_>, _>>()?;
            render(&intersect_all(&parts).expect("nonempty"), v)
        }
        Command::Decompose | Command::Verify => unreachable!("handled by the decomposition paths"),
    };
    if args.json {
        let v = serde_json::json!({ "command": format!("{:?}", args.command).to_lowercase(), "ideal": gens });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
    }
    Ok(gens.iter().map(|g| format!("{g}\n")).collect())
}

#[derive(Serialize)]
struct JsonProvenance {
    branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<u32>,
    worker: usize,
    seed: u64,
}

#[derive(Serialize)]
struct JsonComponent {
    primary: Vec<String>,
    prime: Vec<String>,
    provenance: JsonProvenance,
}

#[derive(Serialize)]
struct JsonExtraction {
    prime: String,
    independent: Vec<String>,
    separator: String,
    multiplier: String,
}

#[derive(Serialize, Default)]
struct JsonStats {
    rounds: usize,
    remainder_exponents: Vec<u32>,
    rational_exponents: Vec<u32>,
    extractions: Vec<JsonExtraction>,
}

#[derive(Serialize)]
struct JsonDecomposition {
    input: Vec<String>,
    components: Vec<JsonComponent>,
    verified: bool,
    stats: JsonStats,
}

fn var_names(u: VarMask, vars: &[String]) -> Vec<String> {
    u.indices().map(|i| vars[i].clone()).collect()
}

fn input_gens<C: GbCoeff>(i: &Ideal<C>, vars: &[String]) -> Vec<String> {
    if i.gens().is_empty() {
        return vec!["0".into()];
    }
    i.gens().iter().map(|g| g.display(vars).to_string()).collect()
}

fn decompose_z(args: &Args, file: &IdealFile, ideal: &Ideal<zprimdec::numth::BigInt>) -> Result<String, CliError> {
    let v = &file.vars;
    let check = args.verify || args.command == Command::Verify;
    let opts = zdec::Options { jobs: args.jobs.max(1), seed: args.seed, verify: false, ..zdec::Options::default() };
    let mut d: Decomposition = zdec::primdec(ideal, &opts)?;
    let report = check.then(|| zdec::verify(&d));
    d.verified = report.as_ref().is_some_and(|r| r.passed());

    let json = JsonDecomposition {
        input: input_gens(ideal, v),
        components: d
            .components
            .iter()
            .map(|c| {
                let (branch, prime, exponent) = match &c.provenance.branch {
                    Branch::Rational => ("rational".to_string(), None, None),
                    Branch::Prime { p, nu } => ("prime".to_string(), Some(p.to_string()), Some(*nu)),
                };
                JsonComponent {
                    primary: render(&c.q, v),
                    prime: render(&c.p, v),
                    provenance: JsonProvenance { branch, prime, exponent, worker: c.provenance.worker, seed: c.provenance.seed },
                }
            })
            .collect(),
        verified: d.verified,
        stats: JsonStats {
            rounds: d.stats.rounds,
            remainder_exponents: d.stats.remainder_exponents.clone(),
            rational_exponents: d.stats.rational_exponents.clone(),
            extractions: d
                .stats
                .extractions
                .iter()
                .map(|t| JsonExtraction {
                    prime: t.prime.to_string(),
                    independent: var_names(t.independent, v),
                    separator: t.separator.display(v).to_string(),
                    multiplier: t.multiplier.display(v).to_string(),
                })
                .collect(),
        },
    };

    let mut out = String::new();
    if args.json {
        out = format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"));
    } else {
        writeln!(out, "input: {}", angle(&json.input)).unwrap();
        for (k, c) in json.components.iter().enumerate() {
            writeln!(out, "Q{} = {}", k + 1, angle(&c.primary)).unwrap();
            writeln!(out, "P{} = {}", k + 1, angle(&c.prime)).unwrap();
            if args.trace {
                let from = match (&c.provenance.prime, c.provenance.exponent) {
                    (Some(p), Some(e)) => format!("prime {p}^{e}"),
                    _ => "rational".to_string(),
                };
                writeln!(out, "  from {from}, worker {}, seed {}", c.provenance.worker, c.provenance.seed).unwrap();
            }
        }
        if args.trace {
            writeln!(out, "trace:").unwrap();
            for t in &json.stats.extractions {
                writeln!(
                    out,
                    "  extract p = {}, u = {{{}}}: s = {}, h = {}",
                    t.prime,
                    t.independent.join(", "),
                    t.separator,
                    t.multiplier
                )
                .unwrap();
            }
            for m in &json.stats.remainder_exponents {
                writeln!(out, "  remainder m = {m}").unwrap();
            }
            for m in &json.stats.rational_exponents {
                writeln!(out, "  rational contraction m = {m}").unwrap();
            }
            for (label, t) in &d.stats.branch_times {
                writeln!(out, "  time {label}: {:.3} ms", t.as_secs_f64() * 1e3).unwrap();
            }
        }
    }
    if let Some(r) = &report {
        if !args.json {
            for c in &r.checks {
                writeln!(out, "check {}: {}", c.name, if c.passed { "ok" } else { "FAILED" }).unwrap();
            }
            for n in &r.notes {
                writeln!(out, "note: {n}").unwrap();
            }
            writeln!(out, "verified: {}", if r.passed() { "yes" } else { "no" }).unwrap();
        }
        if !r.passed() {
            return Err(CliError::Verification { output: out });
        }
    }
    Ok(out)
}

fn decompose_field<F: FactorField>(args: &Args, file: &IdealFile, ideal: &Ideal<F>) -> Result<String, CliError> {
    let v = &file.vars;
    let comps = primdec_field(ideal, args.seed)?;
    let check = args.verify || args.command == Command::Verify;
    let mut failures = Vec::new();
    if check {
        let meet = intersect_all(comps.iter().map(|c| &c.q)).expect("a proper ideal has a component");
        if !meet.equals(ideal) {
            failures.push("recomposition".to_string());
        }
        for (k, c) in comps.iter().enumerate() {
            if !c.p.contains_ideal(&c.q) {
                failures.push(format!("containment[{k}]"));
            }
            let witnessed = c.p.gb().elements().iter().all(|g| (1..=zdec::RADICAL_WITNESS_BOUND).any(|e| c.q.contains(&g.pow(e))));
            if !witnessed {
                failures.push(format!("radical[{k}]"));
            }
        }
    }
    let verified = check && failures.is_empty();
    let components: Vec<JsonComponent> = comps
        .iter()
        .map(|c| JsonComponent {
            primary: render(&c.q, v),
            prime: render(&c.p, v),
            provenance: JsonProvenance { branch: "field".into(), prime: None, exponent: None, worker: 0, seed: args.seed },
        })
        .collect();
    let mut out = String::new();
    if args.json {
        let json = JsonDecomposition { input: input_gens(ideal, v), components, verified, stats: JsonStats::default() };
        out = format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"));
    } else {
        writeln!(out, "input: {}", angle(&input_gens(ideal, v))).unwrap();
        for (k, c) in components.iter().enumerate() {
            writeln!(out, "Q{} = {}", k + 1, angle(&c.primary)).unwrap();
            writeln!(out, "P{} = {}", k + 1, angle(&c.prime)).unwrap();
        }
        if check {
            for f in &failures {
                writeln!(out, "check {f}: FAILED").unwrap();
            }
            writeln!(out, "verified: {}", if verified { "yes" } else { "no" }).unwrap();
        }
    }
    if check && !verified {
        return Err(CliError::Verification { output: out });
    }
    Ok(out)
}
