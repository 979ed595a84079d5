//! The `ordinal` command line.
//!
//! Every subcommand produces a JSON report (the canonical form) and a text
//! view of the same data. Exit codes: 0 when every check passes, 1 when a
//! check found violations (the report is still written), 2 for usage and
//! input errors.

mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::information::{
    common_refinement, mutual_information, partition_entropy, AtomDistribution,
};
use crate::poset::{
    boolean_lattice, divisor_lattice, is_lattice, partition_lattice, to_dot, ConsistencyReport,
    ElementId, Lattice, LatticeCertificate, Partition, Poset, PosetDocument,
};
use crate::spacetime::{
    causal_grid_poset, check_synchronized, decompose, interval_pair, interval_pair_unchecked,
    project, Scene,
};
use crate::valuation::{
    check_bivaluation_sum_rule, check_chain_rule, check_context_product_rule, check_diamond_lemma,
    check_normalization, check_sum_rule, BiValuation, Rule, RuleReport, ValuationDocument,
    ValuationMode, DEFAULT_TOLERANCE,
};
use table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ordinal",
    version,
    about = "Posets, lattices, valuation audits and causal-order intervals"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, check and export posets.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Audit valuation rules.
    #[command(subcommand)]
    Rules(RulesCommand),
    /// Entropy and mutual information of partitions.
    #[command(subcommand)]
    Info(InfoCommand),
    /// Projections, synchronization and intervals in a scene.
    #[command(subcommand)]
    Spacetime(SpacetimeCommand),
}

#[derive(Subcommand, Debug)]
enum PosetCommand {
    /// Lattice certificate, bounds, irreducibles and consistency audit.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hasse diagram in DOT.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a poset document.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Subsets of the atoms under inclusion.
    Boolean {
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
    },
    /// Partitions of the atoms under refinement.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
    },
    /// Divisors of n under divisibility.
    Divisors {
        #[arg(long)]
        n: u64,
    },
    /// The n-by-n integer grid under the causal order.
    Grid {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum RulesCommand {
    /// Audit a valuation against the selected rules.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("valuation").required(true).args(["atoms", "values"]))]
struct AuditArgs {
    /// Poset file. Defaults to the `poset` path inside the valuation file.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Valuation file giving one value per join-irreducible.
    #[arg(long)]
    atoms: Option<PathBuf>,
    /// Valuation file giving one value per element.
    #[arg(long)]
    values: Option<PathBuf>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "sum,chain,diamond,context,bisum,normalization"
    )]
    rules: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum InfoCommand {
    /// Entropy of one partition.
    Entropy {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Entropies and mutual information of two partitions.
    Mutual {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
enum SpacetimeCommand {
    /// Project events onto chains.
    Project {
        #[arg(long)]
        scene: PathBuf,
        /// Defaults to every event.
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
        /// Defaults to every chain.
        #[arg(long, value_delimiter = ',')]
        chains: Vec<String>,
    },
    /// Check that the chain pairs of the given frames are synchronized.
    Sync {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "rest")]
        frames: Vec<String>,
        /// Index range `lo,hi` checked on both chains.
        #[arg(long, value_delimiter = ',', default_values_t = [0, 100])]
        range: Vec<i64>,
    },
    /// Interval between two events in each frame.
    Interval {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        events: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "rest")]
        frames: Vec<String>,
        /// Skip the synchronization check.
        #[arg(long)]
        unchecked: bool,
    },
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` (or `--output`) and diagnostics to `err`. Returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let body = outcome.body.render(cli.format);
            let written = match &cli.output {
                Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) if outcome.passed => EXIT_OK,
                Ok(()) => EXIT_VIOLATIONS,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

struct Outcome {
    body: Body,
    passed: bool,
}

enum Body {
    Report { json: String, text: String },
    Raw(String),
}

impl Body {
    fn report<T: Serialize>(value: &T, text: String) -> Self {
        let mut json = serde_json::to_string_pretty(value).expect("reports serialize");
        json.push('\n');
        Body::Report { json, text }
    }

    fn render(self, format: Format) -> String {
        match (self, format) {
            (Body::Report { json, .. }, Format::Json) => json,
            (Body::Report { text, .. }, Format::Text) => text,
            (Body::Raw(s), _) => s,
        }
    }
}

type CliResult = Result<Outcome, String>;

fn dispatch(cmd: &Command) -> CliResult {
    match cmd {
        Command::Poset(PosetCommand::Check { input }) => poset_check(input),
        Command::Poset(PosetCommand::ExportDot { input }) => Ok(Outcome {
            body: Body::Raw(to_dot(&load_poset(input)?)),
            passed: true,
        }),
        Command::Poset(PosetCommand::Gen(g)) => poset_gen(g),
        Command::Rules(RulesCommand::Audit(a)) => rules_audit(a),
        Command::Info(InfoCommand::Entropy { dist, partition }) => info_entropy(dist, partition),
        Command::Info(InfoCommand::Mutual { dist, a, b }) => info_mutual(dist, a, b),
        Command::Spacetime(SpacetimeCommand::Project {
            scene,
            events,
            chains,
        }) => spacetime_project(scene, events, chains),
        Command::Spacetime(SpacetimeCommand::Sync {
            scene,
            frames,
            range,
        }) => spacetime_sync(scene, frames, range),
        Command::Spacetime(SpacetimeCommand::Interval {
            scene,
            events,
            frames,
            unchecked,
        }) => spacetime_interval(scene, events, frames, *unchecked),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_poset(path: &Path) -> Result<Poset, String> {
    let doc: PosetDocument = parse_json(path)?;
    doc.build().map_err(|e| format!("{}: {e}", path.display()))
}

fn strings(ids: &[ElementId]) -> String {
    ids.iter()
        .map(ElementId::as_str)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct CheckReport {
    elements: usize,
    covers: usize,
    certificate: LatticeCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    bottom: Option<ElementId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    top: Option<ElementId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    join_irreducibles: Option<Vec<ElementId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meet_irreducibles: Option<Vec<ElementId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistency: Option<ConsistencyReport>,
}

fn poset_check(input: &Path) -> CliResult {
    let poset = load_poset(input)?;
    let certificate = is_lattice(&poset);
    let mut report = CheckReport {
        elements: poset.len(),
        covers: poset.covers().count(),
        certificate: certificate.clone(),
        bottom: None,
        top: None,
        join_irreducibles: None,
        meet_irreducibles: None,
        consistency: None,
    };
    let mut t = Table::new();
    t.row(["elements", &report.elements.to_string()]);
    t.row(["covers", &report.covers.to_string()]);
    let passed = if certificate.is_lattice {
        let l = Lattice::new(poset).map_err(|e| e.to_string())?;
        let consistency = l.consistency_report();
        t.row(["lattice", "yes"]);
        t.row(["bottom", l.bottom().as_str()]);
        t.row(["top", l.top().as_str()]);
        t.row(["join-irreducibles", &strings(&l.join_irreducibles())]);
        t.row(["meet-irreducibles", &strings(&l.meet_irreducibles())]);
        t.row([
            "consistency",
            &format!(
                "{} ({} pairs, {} violations)",
                if consistency.passed() { "pass" } else { "fail" },
                consistency.checked,
                consistency.violations.len()
            ),
        ]);
        report.bottom = Some(l.bottom().clone());
        report.top = Some(l.top().clone());
        report.join_irreducibles = Some(l.join_irreducibles());
        report.meet_irreducibles = Some(l.meet_irreducibles());
        let ok = consistency.passed();
        report.consistency = Some(consistency);
        ok
    } else {
        let (x, y) = certificate
            .witness
            .clone()
            .expect("non-lattice has a witness");
        let kind = certificate
            .missing
            .expect("non-lattice names the missing bound");
        t.row([
            "lattice",
            &format!("no: `{x}` and `{y}` have no unique {kind}"),
        ]);
        false
    };
    Ok(Outcome {
        body: Body::report(&report, t.render()),
        passed,
    })
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn poset_gen(g: &GenCommand) -> CliResult {
    let poset = match g {
        GenCommand::Boolean { atoms } => {
            boolean_lattice(&refs(atoms)).map_err(|e| e.to_string())?
        }
        GenCommand::Partition { atoms } => {
            partition_lattice(&refs(atoms)).map_err(|e| e.to_string())?
        }
        GenCommand::Divisors { n } => divisor_lattice(*n).map_err(|e| e.to_string())?,
        GenCommand::Grid { n } => causal_grid_poset(*n).map_err(|e| e.to_string())?,
    };
    let doc = PosetDocument::from(&poset);
    let mut text = format!("elements\t{}\n", strings(poset.elements()));
    for (a, b) in &doc.covers {
        text.push_str(&format!("cover\t{a}\t{b}\n"));
    }
    Ok(Outcome {
        body: Body::report(&doc, text),
        passed: true,
    })
}

#[derive(Serialize)]
struct AuditReport {
    elements: usize,
    mode: ValuationMode,
    tolerance: f64,
    passed: bool,
    reports: Vec<RuleReport>,
}

fn rules_audit(a: &AuditArgs) -> CliResult {
    let (path, mode) = match (&a.atoms, &a.values) {
        (Some(p), None) => (p, ValuationMode::Atoms),
        (None, Some(p)) => (p, ValuationMode::Total),
        _ => return Err("give exactly one of --atoms and --values".into()),
    };
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(format!("tolerance must be non-negative, got {}", a.tol));
    }
    let mut rules = Vec::new();
    for name in &a.rules {
        let rule: Rule = name.trim().parse()?;
        if rule == Rule::Product {
            return Err(
                "the product rule needs a lattice product and its factor valuations; \
                 it is available from the library only"
                    .into(),
            );
        }
        if !rules.contains(&rule) {
            rules.push(rule);
        }
    }
    let doc: ValuationDocument = parse_json(path)?;
    let poset_path = match (&a.poset, &doc.poset) {
        (Some(p), _) => p.clone(),
        (None, Some(rel)) => path.parent().unwrap_or(Path::new("")).join(rel),
        (None, None) => return Err(format!("{}: no poset given", path.display())),
    };
    let lattice = Lattice::new(load_poset(&poset_path)?)
        .map_err(|e| format!("{}: {e}", poset_path.display()))?;
    let v = doc
        .build(&lattice, mode)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let w = BiValuation::from_valuation(&v);
    let reports: Vec<RuleReport> = rules
        .iter()
        .map(|rule| match rule {
            Rule::Sum => check_sum_rule(&v, a.tol),
            Rule::Chain => check_chain_rule(&w, a.tol),
            Rule::Diamond => check_diamond_lemma(&w, a.tol),
            Rule::Context => check_context_product_rule(&w, a.tol),
            Rule::Bisum => check_bivaluation_sum_rule(&w, a.tol),
            Rule::Normalization => check_normalization(&w, a.tol),
            Rule::Product => unreachable!("rejected above"),
        })
        .collect();
    let passed = reports.iter().all(RuleReport::passed);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "rule\t{}\t{}\tchecked={}\tskipped={}\tmax_residual={}\n",
            r.rule,
            if r.passed() { "pass" } else { "fail" },
            r.checked,
            r.skipped,
            r.max_residual
        ));
        for v in &r.violations {
            text.push_str(&v.to_text_line(r.rule));
            text.push('\n');
        }
    }
    let report = AuditReport {
        elements: lattice.len(),
        mode,
        tolerance: a.tol,
        passed,
        reports,
    };
    Ok(Outcome {
        body: Body::report(&report, text),
        passed,
    })
}

fn load_dist(path: &Path) -> Result<AtomDistribution, String> {
    parse_json(path)
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e| format!("partition `{s}`: {e}"))
}

#[derive(Serialize)]
struct EntropyReport {
    partition: String,
    entropy: f64,
}

fn info_entropy(dist: &Path, partition: &str) -> CliResult {
    let d = load_dist(dist)?;
    let p = parse_partition(partition)?;
    let entropy = partition_entropy(&p, &d).map_err(|e| e.to_string())?;
    let report = EntropyReport {
        partition: p.to_string(),
        entropy,
    };
    let text = format!("H({})\t{}\n", report.partition, entropy);
    Ok(Outcome {
        body: Body::report(&report, text),
        passed: true,
    })
}

#[derive(Serialize)]
struct MutualReport {
    a: String,
    b: String,
    joint: String,
    #[serde(rename = "H_A")]
    h_a: f64,
    #[serde(rename = "H_B")]
    h_b: f64,
    #[serde(rename = "H_joint")]
    h_joint: f64,
    #[serde(rename = "I")]
    mutual_information: f64,
}

fn info_mutual(dist: &Path, a: &str, b: &str) -> CliResult {
    let d = load_dist(dist)?;
    let (pa, pb) = (parse_partition(a)?, parse_partition(b)?);
    let joint = common_refinement(&pa, &pb).map_err(|e| e.to_string())?;
    let r = mutual_information(&pa, &pb, &d).map_err(|e| e.to_string())?;
    let report = MutualReport {
        a: pa.to_string(),
        b: pb.to_string(),
        joint: joint.to_string(),
        h_a: r.h_a,
        h_b: r.h_b,
        h_joint: r.h_joint,
        mutual_information: r.mutual_information,
    };
    let mut t = Table::new();
    t.row(["H_A", &report.a, &r.h_a.to_string()]);
    t.row(["H_B", &report.b, &r.h_b.to_string()]);
    t.row(["H_joint", &report.joint, &r.h_joint.to_string()]);
    t.row(["I", "", &r.mutual_information.to_string()]);
    Ok(Outcome {
        body: Body::report(&report, t.render()),
        passed: true,
    })
}

fn load_scene(path: &Path) -> Result<Scene, String> {
    Scene::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct ProjectionRow {
    event: String,
    chain: String,
    index: i64,
    label: String,
}

fn spacetime_project(scene: &Path, events: &[String], chains: &[String]) -> CliResult {
    let scene = load_scene(scene)?;
    let events: Vec<String> = if events.is_empty() {
        scene.events().iter().map(|(id, _)| id.clone()).collect()
    } else {
        events.to_vec()
    };
    let chains: Vec<String> = if chains.is_empty() {
        scene.chains().iter().map(|c| c.id().to_owned()).collect()
    } else {
        chains.to_vec()
    };
    let mut rows = Vec::new();
    let mut t = Table::new();
    t.row(["event", "chain", "index", "label"]);
    for e in &events {
        let ev = scene.event(e).map_err(|x| x.to_string())?;
        for c in &chains {
            let chain = scene.chain(c).map_err(|x| x.to_string())?;
            let index = project(ev, chain).map_err(|x| format!("event `{e}`: {x}"))?;
            let label = (crate::Rational::from_integer(index as i128) * chain.tick()).to_string();
            t.row([e.as_str(), c.as_str(), &index.to_string(), &label]);
            rows.push(ProjectionRow {
                event: e.clone(),
                chain: c.clone(),
                index,
                label,
            });
        }
    }
    Ok(Outcome {
        body: Body::report(&rows, t.render()),
        passed: true,
    })
}

#[derive(Serialize)]
struct SyncRow {
    frame: String,
    p: String,
    q: String,
    range: [i64; 2],
    synchronized: bool,
}

fn spacetime_sync(scene: &Path, frames: &[String], range: &[i64]) -> CliResult {
    let scene = load_scene(scene)?;
    let [lo, hi] = <[i64; 2]>::try_from(range).map_err(|_| "--range takes lo,hi".to_owned())?;
    if lo > hi {
        return Err(format!("empty range {lo},{hi}"));
    }
    let mut rows = Vec::new();
    let mut t = Table::new();
    t.row(["frame", "p", "q", "range", "synchronized"]);
    for name in frames {
        let f = scene.frame(name).map_err(|e| e.to_string())?;
        let synchronized =
            check_synchronized(f.p, f.q, lo..=hi).map_err(|e| format!("frame `{name}`: {e}"))?;
        t.row([
            name.as_str(),
            f.p.id(),
            f.q.id(),
            &format!("{lo}..={hi}"),
            if synchronized { "yes" } else { "no" },
        ]);
        rows.push(SyncRow {
            frame: name.clone(),
            p: f.p.id().to_owned(),
            q: f.q.id().to_owned(),
            range: [lo, hi],
            synchronized,
        });
    }
    let passed = rows.iter().all(|r| r.synchronized);
    Ok(Outcome {
        body: Body::report(&rows, t.render()),
        passed,
    })
}

#[derive(Serialize)]
struct IntervalRow {
    frame: String,
    p: String,
    q: String,
    dp: String,
    dq: String,
    dt: String,
    dx: String,
    ds2: String,
}

#[derive(Serialize)]
struct IntervalReport {
    from: String,
    to: String,
    invariant: bool,
    frames: Vec<IntervalRow>,
}

fn spacetime_interval(
    scene: &Path,
    events: &[String],
    frames: &[String],
    unchecked: bool,
) -> CliResult {
    let scene = load_scene(scene)?;
    let [from, to] = <[&String; 2]>::try_from(events.iter().collect::<Vec<_>>())
        .map_err(|_| "--events takes exactly two event ids".to_owned())?;
    let (e1, e2) = (
        scene.event(from).map_err(|e| e.to_string())?,
        scene.event(to).map_err(|e| e.to_string())?,
    );
    let mut rows = Vec::new();
    let mut squares = Vec::new();
    let mut t = Table::new();
    t.row(["frame", "p", "q", "dp", "dq", "dt", "dx", "ds2"]);
    for name in frames {
        let f = scene.frame(name).map_err(|e| e.to_string())?;
        let ip = if unchecked {
            interval_pair_unchecked(e1, e2, f.p, f.q)
        } else {
            interval_pair(e1, e2, f.p, f.q)
        }
        .map_err(|e| format!("frame `{name}`: {e}"))?;
        let (dt, dx) = decompose(&ip);
        squares.push(ip.ds2());
        let row = IntervalRow {
            frame: name.clone(),
            p: f.p.id().to_owned(),
            q: f.q.id().to_owned(),
            dp: ip.dp.to_string(),
            dq: ip.dq.to_string(),
            dt: dt.to_string(),
            dx: dx.to_string(),
            ds2: ip.ds2().to_string(),
        };
        t.row([
            &row.frame, &row.p, &row.q, &row.dp, &row.dq, &row.dt, &row.dx, &row.ds2,
        ]);
        rows.push(row);
    }
    let invariant = squares.windows(2).all(|w| w[0] == w[1]);
    let report = IntervalReport {
        from: from.clone(),
        to: to.clone(),
        invariant,
        frames: rows,
    };
    let mut text = t.render();
    text.push_str(if invariant {
        "ds2 agrees across frames\n"
    } else {
        "ds2 differs across frames\n"
    });
    Ok(Outcome {
        body: Body::report(&report, text),
        passed: invariant,
    })
}
