//! Command-line front end. `run` parses arguments, does the work, and returns
//! the rendered output with an exit code: 0 pass, 1 a check failed, 2 usage
//! or model error, 3 undecidable in the requested window.

use crate::conjectures::{
    diagonal_identity_check, duality_check, expected_table, green_predicate, hilbert_diagonal_check, is_natural,
    np_property, ConjectureError, Family,
};
use crate::curves::sym_map_rank;
use crate::koszul::{betti_diagram_with, BettiDiagram, BettiOptions};
use crate::models::{build_model, field_for, split_witness, BuiltModel, BundleChoice, ModelSpec};
use crate::report::{PredicateResult, Redraw, RunReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "syzygy", version, about = "Koszul cohomology and Betti tables of curve models over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Prime for the base field; defaults to 1000003 or the first suitable prime.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads for the rank computations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include per-strand wall times in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a Betti table.
    Betti(ModelArgs),
    /// Test a conjectural property on a computed table.
    Check(CheckArgs),
    /// Print a predicted Betti table.
    Expected(ExpectedArgs),
    /// Certify the explicit syzygy of a split line bundle.
    Witness(WitnessArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    TwistedCubic,
    RationalNodal,
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BundleArg {
    Canonical,
    Paracanonical,
    Twist,
    AdjointCanonical,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long, value_enum)]
    pub bundle: Option<BundleArg>,
    /// Torsion order of a paracanonical bundle.
    #[arg(long, default_value_t = 2)]
    pub level: u32,
    /// Degree of a twist bundle, or of the plane curve.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Number of nodes of a plane curve.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub pmax: Option<usize>,
    #[arg(long)]
    pub qmax: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Green,
    PrymGreen,
    Natural,
    Np,
    Duality,
    Diagonal,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub kind: CheckKind,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Clifford index for `green`; the general value is used if omitted.
    #[arg(long)]
    pub cliff: Option<usize>,
    /// The `p` of property (N_p).
    #[arg(long, default_value_t = 1)]
    pub p: usize,
}

#[derive(Args, Debug)]
pub struct ExpectedArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub genus: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SplitModel {
    /// `O(d1) ⊗ O(d2)` on `P^1`.
    P1Split,
    /// Two bundles on a one-nodal rational curve of genus 1.
    Genus1Split,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, value_enum, default_value_t = SplitModel::P1Split)]
    pub model: SplitModel,
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub d2: usize,
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn usage(msg: impl Into<String>) -> Self {
        Output { stdout: String::new(), stderr: msg.into(), code: 2 }
    }
}

struct Rendered {
    text: String,
    json: String,
    code: i32,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            return if code == 0 {
                Output { stdout: msg, stderr: String::new(), code }
            } else {
                Output::usage(msg)
            };
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let rendered = match &cli.command {
        Command::Betti(m) => betti(&cli, m),
        Command::Check(c) => check(&cli, c),
        Command::Expected(e) => expected(e),
        Command::Witness(w) => witness(&cli, w),
    };
    let r = match rendered {
        Ok(r) => r,
        Err(msg) => return Output::usage(format!("error: {msg}\n")),
    };
    let body = match cli.format {
        Format::Table => r.text,
        Format::Json => r.json + "\n",
        Format::Both => format!("{}\n{}\n", r.text, r.json),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Output { stdout: String::new(), stderr: String::new(), code: r.code },
            Err(e) => Output::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Output { stdout: body, stderr: String::new(), code: r.code },
    }
}

fn resolve(m: &ModelArgs, default: BundleArg, p_for_np: usize) -> Result<ModelSpec, String> {
    let bundle = m.bundle.unwrap_or(default);
    let kind = m.model.unwrap_or(if bundle == BundleArg::AdjointCanonical { ModelKind::Plane } else { ModelKind::RationalNodal });
    match kind {
        ModelKind::TwistedCubic => Ok(ModelSpec::TwistedCubic),
        ModelKind::Plane => {
            if !matches!(m.bundle, None | Some(BundleArg::AdjointCanonical | BundleArg::Canonical)) {
                return Err("plane curves are embedded by the adjoint-canonical system only".into());
            }
            Ok(ModelSpec::Plane { degree: m.degree.unwrap_or(5), nodes: m.nodes.unwrap_or(1) })
        }
        ModelKind::RationalNodal => {
            let genus = m.genus.unwrap_or(5);
            let bundle = match bundle {
                BundleArg::Canonical => BundleChoice::Canonical,
                BundleArg::Paracanonical => BundleChoice::Paracanonical { level: m.level },
                BundleArg::Twist => BundleChoice::Twist { degree: m.degree.unwrap_or(2 * genus + 1 + p_for_np) },
                BundleArg::AdjointCanonical => return Err("adjoint-canonical needs --model plane".into()),
            };
            Ok(ModelSpec::RationalNodal { genus, bundle })
        }
    }
}

struct Computed {
    model: BuiltModel,
    diagram: BettiDiagram,
    report: RunReport,
}

fn compute(cli: &Cli, command: &str, spec: ModelSpec, m: &ModelArgs, check_complex: bool) -> Result<Computed, String> {
    let q_req = m.qmax.unwrap_or(if spec == ModelSpec::TwistedCubic { 2 } else { 3 });
    let model = build_model(spec, cli.prime, cli.seed, q_req).map_err(|e| e.to_string())?;
    let (p_def, _) = model.default_window();
    let p_max = m.pmax.unwrap_or(p_def);
    let run = betti_diagram_with(&model.module, p_max, q_req, &BettiOptions { check_complex })
        .map_err(|e| e.to_string())?;
    let mut report = RunReport::new(command, spec.describe(), model.field.prime(), cli.seed, model.num_vars());
    report.seed_used = model.seed_used;
    report.redraws = model.redraws.iter().map(|(s, r)| Redraw { seed: *s, reason: r.clone() }).collect();
    let dims: Vec<i64> = (0..=q_req + 1).map(|d| model.module.dim(d as i64) as i64).collect();
    report.set_diagram(&run.diagram, &dims);
    report.notes.push(format!(
        "vanishing and nonvanishing witnessed over F_{}(seed {}), not claimed in characteristic 0",
        model.field.prime(),
        model.seed_used
    ));
    report.audits.insert("normality".into(), serde_json::to_value(&model.audit.entries).expect("audit serializes"));
    if check_complex {
        report.audits.insert("complex".into(), json!(run.all_complexes_hold()));
        let r = if run.all_complexes_hold() {
            PredicateResult::pass(format!("d∘d = 0 on {} strands", run.complex_checks.len()))
        } else {
            let (p, q, _) = *run.complex_checks.iter().find(|c| !c.2).expect("a failing strand");
            PredicateResult::fail(Some((p, q as usize)), "d∘d != 0")
        };
        report.predicate("complex", r);
    }
    let h = hilbert_diagonal_check(&run.diagram, &dims, false);
    report.predicate("hilbert", PredicateResult::from_outcome(&h));
    if cli.timings {
        report.timings = Some(run.timings.clone());
    }
    Ok(Computed { model, diagram: run.diagram, report })
}

fn finish(report: RunReport) -> Rendered {
    Rendered { text: report.to_text(), json: report.to_json(), code: report.exit_code() }
}

fn betti(cli: &Cli, m: &ModelArgs) -> Result<Rendered, String> {
    let spec = resolve(m, BundleArg::Canonical, 1)?;
    Ok(finish(compute(cli, "betti", spec, m, true)?.report))
}

/// Clifford index of a general member of the model's family.
fn general_cliff(spec: &ModelSpec) -> usize {
    match *spec {
        ModelSpec::Plane { degree, .. } => degree.saturating_sub(4),
        ModelSpec::RationalNodal { genus, .. } => (genus - 1) / 2,
        ModelSpec::TwistedCubic => 0,
    }
}

fn check(cli: &Cli, c: &CheckArgs) -> Result<Rendered, String> {
    let default = match c.kind {
        CheckKind::PrymGreen => BundleArg::Paracanonical,
        CheckKind::Np | CheckKind::Diagonal => BundleArg::Twist,
        _ => BundleArg::Canonical,
    };
    let spec = resolve(&c.model, default, c.p)?;
    let canonical_only = matches!(c.kind, CheckKind::Green | CheckKind::Duality);
    if canonical_only && !spec.is_canonical() {
        return Err(format!("{:?} applies to canonical models", c.kind).to_lowercase());
    }
    if c.kind == CheckKind::PrymGreen
        && !matches!(spec, ModelSpec::RationalNodal { bundle: BundleChoice::Paracanonical { .. }, .. })
    {
        return Err("prym-green needs a paracanonical bundle".into());
    }
    let Computed { model, diagram, mut report } = compute(cli, "check", spec, &c.model, false)?;
    let g = model.genus;
    match c.kind {
        CheckKind::Green => {
            let cliff = c.cliff.unwrap_or_else(|| general_cliff(&spec));
            report.notes.push(format!("Clifford index {cliff}"));
            report.predicate("green", PredicateResult::from_result(green_predicate(&diagram, cliff)));
        }
        CheckKind::PrymGreen => {
            let family = Family::for_genus(false, g);
            let expected = expected_table(family, g).map_err(|e| e.to_string())?.diagram;
            report.predicate("prym-green", compare_tables(&diagram, &expected));
            let l = model.bundle.as_ref().expect("curve models carry their bundle");
            let n = l.h0();
            let (src, dst) = (n * (n + 1) / 2, l.expected_h0(2));
            let rank = sym_map_rank(l, 2).map_err(|e| e.to_string())?;
            let detail = format!("Sym^2 H0(L) -> H0(L^2) is {src} -> {dst} of rank {rank}");
            report.predicate(
                "sym2",
                if rank == src.min(dst) { PredicateResult::pass(detail) } else { PredicateResult::fail(None, detail) },
            );
            report.predicate("natural", PredicateResult::from_result(is_natural(&diagram)));
        }
        CheckKind::Natural => {
            report.predicate("natural", PredicateResult::from_result(is_natural(&diagram)));
        }
        CheckKind::Np => {
            report.predicate("np", PredicateResult::from_result(np_property(&diagram, &model.audit, c.p)));
        }
        CheckKind::Duality => {
            report.predicate("duality", PredicateResult::from_outcome(&duality_check(&diagram, g)));
        }
        CheckKind::Diagonal => {
            let r = if spec.is_canonical() {
                // special bundle: compare alternating diagonals with the Hilbert function instead
                let h = model.hilbert_function(diagram.p_max + diagram.q_max);
                let complete = diagram.p_max + 2 >= model.num_vars() && diagram.q_max >= 3;
                PredicateResult::from_outcome(&hilbert_diagonal_check(&diagram, &h, complete))
            } else {
                PredicateResult::from_result(diagonal_identity_check(&diagram, model.degree, g))
            };
            report.predicate("diagonal", r);
        }
    }
    Ok(finish(report))
}

/// Entry-by-entry comparison over the common window.
fn compare_tables(computed: &BettiDiagram, expected: &BettiDiagram) -> PredicateResult {
    for p in 0..=computed.p_max.min(expected.p_max) {
        for q in 0..=computed.q_max.min(expected.q_max) {
            let (a, b) = (computed.at(p, q), expected.at(p, q));
            if a != b {
                return PredicateResult::fail(Some((p, q)), format!("b_{{{p},{q}}} = {a}, expected {b}"));
            }
        }
    }
    PredicateResult::pass("computed table equals the predicted one")
}

fn expected(e: &ExpectedArgs) -> Result<Rendered, String> {
    let t = expected_table(e.family, e.genus).map_err(|err| match err {
        ConjectureError::ParityMismatch { .. } | ConjectureError::GenusTooSmall { .. } => err.to_string(),
        other => format!("formula error: {other}"),
    })?;
    let mut text = format!("{} genus {} (degree {})\n", t.family, t.genus, t.degree);
    text += &t.diagram.to_text();
    for f in &t.formulas {
        text += &format!("b_{{{},{}}} = {} = {}\n", f.p, f.q, f.formula, f.value);
    }
    let json = serde_json::to_string_pretty(&json!({
        "family": t.family,
        "genus": t.genus,
        "degree": t.degree,
        "betti": t.diagram.triples().into_iter().map(|(p, q, b)| [p as u64, q as u64, b]).collect::<Vec<_>>(),
        "formulas": t.formulas,
    }))
    .expect("tables serialize");
    Ok(Rendered { text, json, code: 0 })
}

fn witness(cli: &Cli, w: &WitnessArgs) -> Result<Rendered, String> {
    let genus = match w.model {
        SplitModel::P1Split => 0,
        SplitModel::Genus1Split => 1,
    };
    let s = split_witness(genus, w.d1, w.d2, cli.prime, cli.seed).map_err(|e| e.to_string())?;
    let prime = field_for(cli.prime, 1).map_err(|e| e.to_string())?.prime();
    let x = &s.witness;
    let mut text = format!(
        "L = L1 ⊗ L2 with deg L1 = {}, deg L2 = {} on a genus-{genus} curve (p = {prime}, seed = {})\n",
        w.d1, w.d2, s.seed_used
    );
    text += &format!("witness in K_{{{},1}}: r1 = {}, r2 = {}\n", x.p, x.r1, x.r2);
    text += &format!("cocycle: {}  coboundary: {}\n", x.cocycle, x.coboundary);
    text += &format!("b_{{{},1}} >= 1 (computed b_{{{},1}} = {})\n", x.p, x.p, s.koszul_dim);
    if let Some(r) = s.quadric_rank {
        text += &format!("quadric rank: {r}\n");
    }
    let json = serde_json::to_string_pretty(&json!({
        "model": if genus == 0 { "p1-split" } else { "genus1-split" },
        "prime": prime,
        "seed": cli.seed,
        "seed_used": s.seed_used,
        "d1": w.d1,
        "d2": w.d2,
        "p": x.p,
        "r1": x.r1,
        "r2": x.r2,
        "cocycle": x.cocycle,
        "coboundary": x.coboundary,
        "lower_bound": 1,
        "koszul_dim": s.koszul_dim,
        "quadric_rank": s.quadric_rank,
    }))
    .expect("witness serializes");
    Ok(Rendered { text, json, code: if x.certified() { 0 } else { 1 } })
}
