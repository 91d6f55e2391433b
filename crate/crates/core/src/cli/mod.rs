//! The `reslat` command line. [`run`] does all the work and returns the exit
//! code with the text for stdout, so tests can drive it in-process.

mod hasse;
mod input;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    bounded_iso_check, classify, eval, AlgebraJson, Algebra, Certificate, CheckReport, Element,
    Label, Strategy, DEFAULT_BOUND,
};
use crate::constructions::{
    in_slice, lift, mv_closure, product_closure, remark_filter_of_double, triple_product,
    verify_decomposition, verify_external_join, verify_main_theorem,
};
use crate::error::{Error, Result};
use crate::structure::{all_filters, is_maximal_filter_witnessed, maximal_filters, radical, Filter};
use crate::term::{parse_builder, parse_equation, parse_term, Signature};

pub use hasse::covers;
pub use input::{resolve, Input, InputSummary};

/// Default DOT file for `hasse`.
pub const DEFAULT_DOT: &str = "hasse.dot";

/// Sampled elements searched when `eval` looks up a symbolic element by name.
const NAME_SEARCH: usize = 1024;

#[derive(Parser, Debug)]
#[command(name = "reslat", version, about = "Residuated lattice workbench")]
struct Cli {
    /// Checking strategy; defaults to exhaustive for finite inputs and
    /// bounded otherwise.
    #[arg(long, global = true, value_enum)]
    strategy: Option<StrategyArg>,
    /// Elements sampled per variable under the bounded strategy.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    /// Output file: the DOT file for `hasse`, the algebra for `construct`,
    /// the report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Class the input must (or with a leading `!`, must not) belong to.
    #[arg(long, global = true)]
    expect: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Bounded,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructKind {
    Lift,
    MvClosure,
    Triple,
    ProductClosure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    Decomposition,
    ExternalJoin,
    Main,
    Remark,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class labels and per-axiom reports.
    Classify { input: String },
    /// Filters of a finite algebra.
    Filters {
        input: String,
        /// Only the maximal filters.
        #[arg(long)]
        maximal: bool,
        /// Also the radical (the only option for certified symbolic input).
        #[arg(long)]
        radical: bool,
    },
    /// Builds an algebra and verifies it.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        input: String,
    },
    /// Checks one of the structure theorems.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        input: String,
    },
    /// Writes the Hasse diagram as DOT.
    Hasse { input: String },
    /// Evaluates a term at named elements.
    Eval {
        input: String,
        term: String,
        elements: Vec<String>,
    },
    /// Parses a term, an equation or a builder expression.
    Parse {
        text: String,
        #[arg(long, conflicts_with = "builder")]
        equation: bool,
        #[arg(long)]
        builder: bool,
        /// Parse in the 0-free signature.
        #[arg(long)]
        zero_free: bool,
    },
}

/// Exit code and stdout of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<InputSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<Strategy>,
    bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    status: &'static str,
    exit: i32,
}

/// What a command produced before it is wrapped into a [`Report`].
struct Done {
    input: Option<InputSummary>,
    strategy: Option<Strategy>,
    result: Value,
    refuted: bool,
    /// Whether `--out` was consumed by the command itself.
    wrote_out: bool,
}

impl Done {
    fn new(input: &Input, strategy: Option<Strategy>, result: Value, refuted: bool) -> Self {
        Done {
            input: Some(input.summary()),
            strategy,
            result,
            refuted,
            wrote_out: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.render().to_string(),
                };
            }
            let report = Report {
                command: echo,
                input: None,
                strategy: None,
                bound: DEFAULT_BOUND,
                result: None,
                error: Some(e.render().to_string().trim_end().to_string()),
                status: "error",
                exit: 2,
            };
            return Outcome {
                code: 2,
                stdout: render(&report),
            };
        }
    };
    let bound = cli.bound;
    let out = cli.out.clone();
    let (report, wrote_out) = match dispatch(&cli) {
        Ok(done) => {
            let code = i32::from(done.refuted);
            (
                Report {
                    command: echo,
                    input: done.input,
                    strategy: done.strategy,
                    bound,
                    result: Some(done.result),
                    error: None,
                    status: if done.refuted { "refuted" } else { "pass" },
                    exit: code,
                },
                done.wrote_out,
            )
        }
        Err(e) => (
            Report {
                command: echo,
                input: None,
                strategy: None,
                bound,
                result: None,
                error: Some(e.to_string()),
                status: "error",
                exit: 2,
            },
            false,
        ),
    };
    let text = render(&report);
    match out {
        Some(path) if !wrote_out && report.exit != 2 => match std::fs::write(&path, &text) {
            Ok(()) => Outcome {
                code: report.exit,
                stdout: String::new(),
            },
            Err(e) => {
                let failed = Report {
                    result: None,
                    error: Some(format!("cannot write {}: {e}", path.display())),
                    status: "error",
                    exit: 2,
                    ..report
                };
                Outcome {
                    code: 2,
                    stdout: render(&failed),
                }
            }
        },
        _ => Outcome {
            code: report.exit,
            stdout: text,
        },
    }
}

fn strategy_for(cli: &Cli, alg: &Algebra) -> Result<Strategy> {
    match cli.strategy {
        None => Ok(Strategy::for_algebra(alg, cli.bound)),
        Some(StrategyArg::Bounded) => Ok(Strategy::Bounded(cli.bound)),
        Some(StrategyArg::Exhaustive) if alg.is_finite() => Ok(Strategy::Exhaustive),
        Some(StrategyArg::Exhaustive) => Err(Error::StrategyMismatch(format!(
            "exhaustive strategy needs a finite carrier, {} is symbolic",
            alg.name()
        ))),
    }
}

fn dispatch(cli: &Cli) -> Result<Done> {
    match &cli.command {
        Command::Classify { input } => cmd_classify(cli, &resolve(input)?),
        Command::Filters {
            input,
            maximal,
            radical,
        } => cmd_filters(cli, &resolve(input)?, *maximal, *radical),
        Command::Construct { kind, input } => cmd_construct(cli, *kind, &resolve(input)?),
        Command::Verify { theorem, input } => cmd_verify(cli, *theorem, &resolve(input)?),
        Command::Hasse { input } => cmd_hasse(cli, &resolve(input)?),
        Command::Eval {
            input,
            term,
            elements,
        } => cmd_eval(&resolve(input)?, term, elements),
        Command::Parse {
            text,
            equation,
            builder,
            zero_free,
        } => cmd_parse(text, *equation, *builder, *zero_free),
    }
}

#[derive(Serialize)]
struct Expectation {
    label: Label,
    expected: bool,
    holds: bool,
}

fn cmd_classify(cli: &Cli, input: &Input) -> Result<Done> {
    let expectations = cli
        .expect
        .iter()
        .map(|raw| match raw.strip_prefix('!') {
            Some(rest) => Ok((rest.parse::<Label>()?, false)),
            None => Ok((raw.parse::<Label>()?, true)),
        })
        .collect::<Result<Vec<_>>>()?;
    let strategy = strategy_for(cli, &input.algebra)?;
    let c = classify(&input.algebra, strategy)?;
    let checked: Vec<Expectation> = expectations
        .into_iter()
        .map(|(label, expected)| Expectation {
            label,
            expected,
            holds: c.has(label),
        })
        .collect();
    let refuted = checked.iter().any(|e| e.expected != e.holds);
    let result = json!({
        "labels": c.labels,
        "expectations": checked,
        "reports": c.reports,
    });
    Ok(Done::new(input, Some(strategy), result, refuted))
}

fn filter_names(fs: &[Filter]) -> Vec<Vec<String>> {
    fs.iter()
        .map(|f| f.names().expect("finite filter"))
        .collect()
}

fn cmd_filters(cli: &Cli, input: &Input, maximal: bool, want_radical: bool) -> Result<Done> {
    let alg = &input.algebra;
    if !alg.is_finite() {
        if !want_radical || maximal {
            return Err(Error::Symbolic(format!(
                "{}: filters can only be listed for finite algebras; \
                 --radical alone works on certified constructions",
                alg.name()
            )));
        }
        let rad = radical(alg)?;
        let sample: Vec<String> = alg
            .sample(cli.bound)
            .iter()
            .filter(|x| rad.contains(x))
            .map(|x| alg.render(x))
            .collect();
        let result = json!({
            "radical": { "label": rad.label(), "sampled_members": sample },
        });
        return Ok(Done::new(input, Some(Strategy::Bounded(cli.bound)), result, false));
    }
    let list = if maximal {
        maximal_filters(alg)?
    } else {
        all_filters(alg)?
    };
    let mut result = json!({
        "maximal_only": maximal,
        "count": list.len(),
        "filters": filter_names(&list),
    });
    if want_radical {
        result["radical"] = to_value(&radical(alg)?.names());
    }
    Ok(Done::new(input, Some(Strategy::Exhaustive), result, false))
}

/// One child per class certificate of `alg`, passing when `classify` agrees.
fn certificate_checks(alg: &Algebra, strategy: Strategy) -> Result<(Vec<CheckReport>, Value)> {
    let c = classify(alg, strategy)?;
    let mut children = Vec::new();
    for cert in alg.certificates() {
        let Certificate::Class(label) = cert else {
            continue;
        };
        let subject = format!("certificate {label}");
        children.push(if c.has(*label) {
            CheckReport::passing(subject, strategy, 1)
        } else {
            let failing: Vec<&str> = c
                .reports
                .iter()
                .filter(|r| r.is_refuted())
                .map(|r| r.subject.as_str())
                .collect();
            CheckReport::refuted(subject, strategy, Vec::new(), failing.join("; "))
        });
    }
    Ok((children, to_value(&c.labels)))
}

fn algebra_file(alg: &Algebra) -> Result<Value> {
    Ok(if alg.is_finite() {
        to_value(&AlgebraJson::from_algebra(alg)?)
    } else {
        let certs: Vec<String> = alg.certificates().iter().map(|c| c.to_string()).collect();
        json!({ "builder": alg.name(), "certificates": certs })
    })
}

fn cmd_construct(cli: &Cli, kind: ConstructKind, input: &Input) -> Result<Done> {
    let src = &input.algebra;
    let (alg, mut children, extra) = match kind {
        ConstructKind::Lift => (lift(src)?, Vec::new(), Value::Null),
        ConstructKind::MvClosure => {
            let alg = mv_closure(src)?;
            let strategy = strategy_for(cli, &alg)?;
            let bound = match src.finite() {
                Some(v) => v.len(),
                None => cli.bound,
            };
            let mut children = Vec::new();
            let slice = match alg.elements() {
                Some(els) => {
                    let members: Vec<Element> =
                        els.iter().filter(|x| in_slice(x)).cloned().collect();
                    Filter::from_elements(&alg, &members)?
                }
                None => Filter::from_predicate(&alg, "slice", std::sync::Arc::new(in_slice)),
            };
            children.push(slice.validate(strategy)?);
            children.push(is_maximal_filter_witnessed(&alg, &slice, strategy, None)?);
            // Symbolic slices are predicates; their images are checked in the
            // whole closure instead.
            let target = match slice.elements() {
                Some(_) => slice.as_algebra()?,
                None => alg.clone(),
            };
            let mut iso = bounded_iso_check(
                src,
                &target,
                &|x: &Element| Element::mv(x.clone(), true),
                bound,
            )?;
            iso.subject = format!("slice isomorphic to {}", src.name());
            children.push(iso);
            (alg, children, Value::Null)
        }
        ConstructKind::Triple => {
            let ej = input.join.as_ref().ok_or_else(|| {
                Error::Invalid("triple needs an input of the form B:maxfilterN:C".into())
            })?;
            let strategy = strategy_for(cli, &input.algebra)?;
            let alg = triple_product(ej, strategy)?.renamed(src.name(), &[]);
            let report = verify_external_join(ej, strategy)?;
            (alg, vec![report], json!({ "join": ej.label() }))
        }
        ConstructKind::ProductClosure => {
            let pc = product_closure(src)?;
            let strategy = strategy_for(cli, src)?;
            let mut children = vec![verify_main_theorem(src, strategy)?];
            let trivial_g = pc.gs.finite().map(|v| v.len()) == Some(1);
            if trivial_g {
                // G(S) = {1}: P(S) is the lifting of S.
                let target = lift(src)?;
                let one = pc.gs.one();
                let map = move |x: &Element| match x {
                    Element::Triple(b, c) if **b == Element::mv(one.clone(), true) => {
                        Element::lifted((**c).clone())
                    }
                    _ => Element::bottom(),
                };
                let mut iso = bounded_iso_check(&pc.algebra, &target, &map, cli.bound)?;
                iso.subject = format!("{} isomorphic to {}", pc.algebra.name(), target.name());
                children.push(iso);
            }
            let summary = json!({
                "g": pc.gs.elements().map(|e| e.iter().map(|x| pc.gs.render(x)).collect::<Vec<_>>()),
                "c": pc.cs.name(),
                "b": pc.bs.name(),
                "join": pc.join.label(),
            });
            (pc.algebra, children, summary)
        }
    };
    let strategy = strategy_for(cli, &alg)?;
    let (certs, labels) = certificate_checks(&alg, strategy)?;
    children.splice(0..0, certs);
    let verification = CheckReport::all(format!("construct {}", alg.name()), strategy, children);
    let refuted = verification.is_refuted();
    let file = algebra_file(&alg)?;
    let mut result = json!({
        "algebra": alg.name(),
        "finite": alg.is_finite(),
        "size": alg.finite().map(|v| v.len()),
        "labels": labels,
        "verification": verification,
    });
    if !extra.is_null() {
        result["details"] = extra;
    }
    let mut done = Done::new(input, Some(strategy), result, refuted);
    if let Some(path) = &cli.out {
        write_file(path, &(serde_json::to_string_pretty(&file).expect("json") + "\n"))?;
        done.result["written"] = json!(path.display().to_string());
        done.wrote_out = true;
    } else {
        done.result["output"] = file;
    }
    Ok(done)
}

fn cmd_verify(cli: &Cli, theorem: Theorem, input: &Input) -> Result<Done> {
    let alg = &input.algebra;
    let strategy = strategy_for(cli, alg)?;
    let report = match theorem {
        Theorem::Decomposition => verify_decomposition(alg, strategy)?,
        Theorem::Main => verify_main_theorem(alg, strategy)?,
        Theorem::Remark => remark_filter_of_double(alg, strategy)?,
        Theorem::ExternalJoin => {
            let ej = input.join.as_ref().ok_or_else(|| {
                Error::Invalid("external-join needs an input of the form B:maxfilterN:C".into())
            })?;
            verify_external_join(ej, strategy)?
        }
    };
    let refuted = report.is_refuted();
    Ok(Done::new(input, Some(strategy), to_value(&report), refuted))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn cmd_hasse(cli: &Cli, input: &Input) -> Result<Done> {
    let alg = &input.algebra;
    let (elements, truncated) = match alg.elements() {
        Some(els) => (els.to_vec(), None),
        None => (alg.sample(cli.bound), Some(cli.bound)),
    };
    let (dot, edges) = hasse::dot(alg, &elements, truncated);
    let path = cli.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_DOT));
    write_file(&path, &dot)?;
    let result = json!({
        "dot": path.display().to_string(),
        "nodes": elements.len(),
        "edges": edges,
        "truncated_at": truncated,
    });
    let strategy = match truncated {
        Some(n) => Strategy::Bounded(n),
        None => Strategy::Exhaustive,
    };
    let mut done = Done::new(input, Some(strategy), result, false);
    done.wrote_out = true;
    Ok(done)
}

fn cmd_eval(input: &Input, term: &str, names: &[String]) -> Result<Done> {
    let alg = &input.algebra;
    let t = parse_term(term, alg.signature())?;
    let env = names
        .iter()
        .map(|n| {
            alg.element_by_name(n, NAME_SEARCH).ok_or_else(|| {
                Error::Invalid(format!("no element named {n:?} in {}", alg.name()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let value = eval(alg, &t, &env)?;
    let result = json!({
        "term": t.to_string(),
        "environment": names,
        "value": alg.render(&value),
    });
    Ok(Done::new(input, None, result, false))
}

fn cmd_parse(text: &str, equation: bool, builder: bool, zero_free: bool) -> Result<Done> {
    let sig = if zero_free {
        Signature::ZERO_FREE
    } else {
        Signature::FULL
    };
    let result = if builder {
        let e = parse_builder(text)?;
        e.validate()?;
        json!({ "kind": "builder", "printed": e.to_string() })
    } else if equation {
        let e = parse_equation(text, sig)?;
        json!({
            "kind": "equation",
            "signature": sig.to_string(),
            "printed": e.to_string(),
            "variables": e.variables,
        })
    } else {
        let t = parse_term(text, sig)?;
        json!({
            "kind": "term",
            "signature": sig.to_string(),
            "printed": t.to_string(),
            "variables": t.arity(),
        })
    };
    Ok(Done {
        input: None,
        strategy: None,
        result,
        refuted: false,
        wrote_out: false,
    })
}
