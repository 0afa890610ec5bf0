//! Command dispatch. Every command returns a [`Report`]; input problems
//! surface as [`CliError`] and become error reports with exit code 2.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use syscons_core::ifl::If;
use syscons_core::random::SystemParams;
use syscons_core::spec_flow::Specification;
use syscons_core::systems::{
    find_strictness_witness, formal_fusion, formal_minimal_cover, formal_pointwise_leq, formal_system_consequence,
    fusion, minimal_cover, pointwise_leq, system_consequence, WitnessBounds,
};
use syscons_core::{Bound, Institution, LanguageMorphism};

use crate::document::{load, Built, Loaded, SystemDocument, SystemKind};
use crate::error::CliError;
use crate::report::{Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Load the system and check every edge.
    Validate,
    /// Close every node theory on its own.
    Consequence,
    /// The unclosed union of the flowed node theories at the core.
    Fuse,
    /// Every node theory replaced by what the fused system forces there.
    SysConsequence,
    /// Whether a sentence holds at a node of the fused system.
    Entails,
    /// Compare two systems over the same shape.
    Order,
    /// Search random IF systems for a node where restricting before fusing
    /// loses a sentence. FILE is a JSON search configuration.
    SearchWitness,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Consequence => "consequence",
            Command::Fuse => "fuse",
            Command::SysConsequence => "sys-consequence",
            Command::Entails => "entails",
            Command::Order => "order",
            Command::SearchWitness => "search-witness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "syscons",
    version,
    about = "Consequence for systems of logics over a shape graph"
)]
pub struct Args {
    pub command: Command,
    pub file: PathBuf,
    /// Bound on enumerated structures; overrides the document option.
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict the output (or the entailment query) to one node.
    #[arg(long)]
    pub node: Option<String>,
    #[arg(long)]
    pub sentence: Option<String>,
    /// Decide `entails` against the node theory alone.
    #[arg(long)]
    pub local: bool,
    /// The system to compare against in `order`.
    #[arg(long)]
    pub against: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Append wall-clock time; output is then no longer reproducible.
    #[arg(long)]
    pub timing: bool,
}

/// Runs one command and renders its report.
pub fn execute(args: &Args) -> (String, i32) {
    let start = Instant::now();
    let mut report = run(args).unwrap_or_else(|e| Report::error(args.command.name(), e.to_string()));
    if args.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    (text, report.status.exit_code())
}

fn reject(flag: bool, name: &str, command: Command) -> Result<(), CliError> {
    if flag {
        return Err(CliError::Usage(format!(
            "`{name}` does not apply to `{}`",
            command.name()
        )));
    }
    Ok(())
}

pub fn run(args: &Args) -> Result<Report, CliError> {
    let c = args.command;
    if c != Command::Entails {
        reject(args.local, "--local", c)?;
        reject(args.sentence.is_some(), "--sentence", c)?;
    }
    if c != Command::Order {
        reject(args.against.is_some(), "--against", c)?;
    }
    if c != Command::SearchWitness {
        reject(args.seed.is_some(), "--seed", c)?;
    }
    if matches!(
        c,
        Command::Validate | Command::Fuse | Command::Order | Command::SearchWitness
    ) {
        reject(args.node.is_some(), "--node", c)?;
    }
    if c == Command::SearchWitness {
        return search_witness(&args.file, args.seed, args.bound);
    }
    let doc = SystemDocument::read(&args.file)?;
    let loaded = load(&doc, args.bound)?;
    let against = match &args.against {
        None => None,
        Some(path) => {
            // Both systems are compared under the same bound.
            let bound = match &loaded {
                Loaded::If(b) => b.bound,
                Loaded::Folf(b) => b.bound,
            };
            Some(load(&SystemDocument::read(path)?, Some(bound.get()))?)
        }
    };
    match (loaded, against) {
        (Loaded::If(b), None) => dispatch(args, &b, None, "if"),
        (Loaded::Folf(b), None) => dispatch(args, &b, None, "folf"),
        (Loaded::If(b), Some(Loaded::If(o))) => dispatch(args, &b, Some(&o), "if"),
        (Loaded::Folf(b), Some(Loaded::Folf(o))) => dispatch(args, &b, Some(&o), "folf"),
        _ => Err(CliError::Invalid("--against uses a different institution".into())),
    }
}

fn dispatch<I: Institution>(
    args: &Args,
    b: &Built<I>,
    against: Option<&Built<I>>,
    name: &str,
) -> Result<Report, CliError> {
    let mut r = Report::new(args.command.name());
    r.institution = Some(name.to_string());
    r.bound = Some(b.bound.get());
    r.set(
        "level",
        match b.system {
            SystemKind::Semantic(_) => "semantic",
            SystemKind::Formal(_) => "formal",
        },
    );
    let nodes = selected_nodes(b, args.node.as_deref())?;
    match args.command {
        Command::Validate => {
            r.set("nodes", b.shape().node_count());
            r.set("edges verified", b.shape().edges().len());
        }
        Command::Consequence => {
            let e = b.engine();
            for i in nodes {
                push_theory(&mut r, b, i, &e.consequence(b.spec(i))?);
            }
        }
        Command::Fuse => {
            let e = b.engine();
            let fused = match &b.system {
                SystemKind::Semantic(is) => {
                    let l = fusion(&e, is)?;
                    r.set("core structure", l.structure().to_string());
                    l.spec().clone()
                }
                SystemKind::Formal(fs) => formal_fusion(&e, fs)?,
            };
            r.set("core language", fused.language().to_string());
            r.set("closed", e.is_closed(&fused)?);
            r.theory(
                "core",
                fused.language().to_string(),
                fused.sentences().iter().map(|s| s.to_string()),
            );
        }
        Command::SysConsequence => {
            let e = b.engine();
            let specs: Vec<Specification<I>> = match &b.system {
                SystemKind::Semantic(is) => system_consequence(&e, is)?
                    .logics()
                    .iter()
                    .map(|l| l.spec().clone())
                    .collect(),
                SystemKind::Formal(fs) => formal_system_consequence(&e, fs)?.specs().to_vec(),
            };
            for i in nodes {
                push_theory(&mut r, b, i, &specs[i]);
            }
        }
        Command::Entails => entails(args, b, &mut r)?,
        Command::Order => order(args, b, against, &mut r)?,
        Command::SearchWitness => unreachable!("handled before loading"),
    }
    Ok(r)
}

fn selected_nodes<I: Institution>(b: &Built<I>, node: Option<&str>) -> Result<Vec<usize>, CliError> {
    match node {
        None => Ok((0..b.shape().node_count()).collect()),
        Some(id) => b
            .shape()
            .node_index(id)
            .map(|i| vec![i])
            .ok_or_else(|| CliError::Reference(format!("--node refers to unknown node `{id}`"))),
    }
}

fn push_theory<I: Institution>(r: &mut Report, b: &Built<I>, i: usize, t: &Specification<I>) {
    r.theory(
        &b.shape().nodes()[i],
        t.language().to_string(),
        t.sentences().iter().map(|s| s.to_string()),
    );
}

fn entails<I: Institution>(args: &Args, b: &Built<I>, r: &mut Report) -> Result<(), CliError> {
    let node = args
        .node
        .as_deref()
        .ok_or_else(|| CliError::Usage("`entails` needs --node".into()))?;
    let text = args
        .sentence
        .as_deref()
        .ok_or_else(|| CliError::Usage("`entails` needs --sentence".into()))?;
    let i = selected_nodes(b, Some(node))?[0];
    let e = b.engine();
    let t = b.spec(i);
    let s = b
        .inst
        .parse_sentence(t.language(), text)
        .map_err(|err| CliError::context("--sentence", err))?;
    r.set("node", node);
    r.set("sentence", s.to_string());
    let (scope, report) = if args.local {
        ("local", e.entails(t, &s)?)
    } else {
        let (fused, iota): (Specification<I>, LanguageMorphism<I::Language>) = match &b.system {
            SystemKind::Semantic(is) => {
                let ch = minimal_cover(&b.inst, &is.underlying())?;
                let iota = b.inst.struc_language(&ch.components[i]).clone();
                (fusion(&e, is)?.spec().clone(), iota)
            }
            SystemKind::Formal(fs) => {
                let ch = formal_minimal_cover(&b.inst, fs)?;
                (formal_fusion(&e, fs)?, ch.components[i].clone())
            }
        };
        let image = b.inst.translate(&iota, &s);
        r.set("translated", image.to_string());
        ("system", e.entails(&fused, &image)?)
    };
    r.set("scope", scope);
    r.set("holds", report.holds);
    if let Some(m) = report.witness {
        r.status = Status::Violation;
        r.diagnostics.push(format!("counter-model: {m}"));
    }
    Ok(())
}

fn order<I: Institution>(args: &Args, b: &Built<I>, other: Option<&Built<I>>, r: &mut Report) -> Result<(), CliError> {
    let path = args
        .against
        .as_deref()
        .ok_or_else(|| CliError::Usage("`order` needs --against FILE".into()))?;
    let other = other.expect("loaded with --against");
    if b.inst != other.inst {
        return Err(CliError::Invalid("--against has a different sentence universe".into()));
    }
    let e = b.engine();
    let (leq, geq, entails, entailed) = match (&b.system, &other.system) {
        (SystemKind::Semantic(x), SystemKind::Semantic(y)) => (
            pointwise_leq(&e, x, y)?,
            pointwise_leq(&e, y, x)?,
            pointwise_leq(&e, &system_consequence(&e, x)?, y)?,
            pointwise_leq(&e, &system_consequence(&e, y)?, x)?,
        ),
        (SystemKind::Formal(x), SystemKind::Formal(y)) => (
            formal_pointwise_leq(&e, x, y)?,
            formal_pointwise_leq(&e, y, x)?,
            formal_pointwise_leq(&e, &formal_system_consequence(&e, x)?, y)?,
            formal_pointwise_leq(&e, &formal_system_consequence(&e, y)?, x)?,
        ),
        _ => {
            return Err(CliError::Invalid(
                "cannot compare a semantic system with a formal one".into(),
            ))
        }
    };
    r.set("against", path.display().to_string());
    r.set("pointwise below", leq);
    r.set("pointwise above", geq);
    r.set("entails against", entails);
    r.set("entailed by against", entailed);
    if !entails {
        r.status = Status::Violation;
        r.diagnostics
            .push("the system does not entail the --against system".into());
    }
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessConfig {
    seed: Option<u64>,
    attempts: Option<usize>,
    max_nodes: Option<usize>,
    max_types: Option<usize>,
    max_edges: Option<usize>,
    max_extra_instances: Option<usize>,
    max_sentences: Option<usize>,
    bound: Option<usize>,
}

fn search_witness(path: &Path, seed: Option<u64>, bound: Option<usize>) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let cfg: WitnessConfig = serde_json::from_str(&text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let d = WitnessBounds::default();
    let bounds = WitnessBounds {
        params: SystemParams {
            max_nodes: cfg.max_nodes.unwrap_or(d.params.max_nodes),
            max_types: cfg.max_types.unwrap_or(d.params.max_types),
            max_edges: cfg.max_edges.unwrap_or(d.params.max_edges),
            max_extra_instances: cfg.max_extra_instances.unwrap_or(d.params.max_extra_instances),
            max_sentences: cfg.max_sentences.unwrap_or(d.params.max_sentences),
        },
        attempts: cfg.attempts.unwrap_or(d.attempts),
    };
    let seed = seed.or(cfg.seed).unwrap_or(0);
    let bound = Bound::new(bound.or(cfg.bound).unwrap_or(Bound::DEFAULT.get()))?;
    let inst = If::default();
    let e = syscons_core::spec_flow::Engine::new(&inst, bound);

    let mut r = Report::new(Command::SearchWitness.name());
    r.institution = Some("if".into());
    r.bound = Some(bound.get());
    r.set("seed", seed);
    r.set("attempts", bounds.attempts);
    match find_strictness_witness(&e, seed, bounds)? {
        None => {
            r.set("found", false);
            r.status = Status::Violation;
            r.diagnostics
                .push(format!("no witness within {} attempts", bounds.attempts));
        }
        Some(w) => {
            r.set("found", true);
            r.set("attempt", w.attempt);
            r.set("node", w.node.clone());
            r.set("sentence", w.sentence.to_string());
            for (id, l) in w.system.shape().nodes().iter().zip(w.system.logics()) {
                r.theory(
                    id,
                    l.language().to_string(),
                    l.spec().sentences().iter().map(|s| s.to_string()),
                );
                r.diagnostics.push(format!("structure at {id}: {}", l.structure()));
            }
            for edge in w.system.shape().edges() {
                let (s, t) = (
                    &w.system.shape().nodes()[edge.source],
                    &w.system.shape().nodes()[edge.target],
                );
                r.diagnostics.push(format!("edge {}: {s} -> {t}", edge.id));
            }
        }
    }
    Ok(r)
}
