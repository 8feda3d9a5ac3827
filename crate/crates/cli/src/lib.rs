//! The `cklab` command line: argument parsing, input loading and report rendering.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use cklab_core::corpus;
use cklab_core::dynamics::WitnessSpec;
use cklab_core::ktheory::pv_presentation;
use cklab_core::lattice::{ideal_of, IdealKind, IdealScope};
use cklab_core::report::{analyze, AnalysisReport, CoreDims, WitnessSummary};
use cklab_core::symbolic::beta_apply;
use cklab_core::verifier::{
    build_rep, check_beta, check_ck, check_inner_witness, gauge_expectation, random_core_samples, BetaReport,
    CkReport, FormalSum, WitnessReport,
};
use cklab_core::{core_dims, enumerate_lattice, inner_witness, CoreElement, Cycle, Error, Fingerprint, Graph, Path};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Parser)]
#[command(name = "cklab", version, about = "Invariants of graph C*-algebras and their core endomorphism")]
pub struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every decision procedure in one report
    Analyze {
        input: String,
        /// Largest n for which core block sizes are listed
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Hereditary saturated sets and their ideals
    Lattice { input: String },
    /// K0 and K1 with the presentation they come from
    Ktheory { input: String },
    /// Block sizes of the core up to level n
    Core {
        input: String,
        #[arg(long)]
        depth: u32,
    },
    /// Numerical checks on the truncated path-space representation
    Verify {
        input: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Inner implementing isometry for an entryless cycle
    Witness {
        input: String,
        /// Comma-separated edge ids in traversal order
        #[arg(long, value_delimiter = ',')]
        cycle: Vec<String>,
        #[arg(long)]
        depth: usize,
        /// Also check the witness numerically
        #[arg(long)]
        check: bool,
    },
    /// List the built-in graphs
    Corpus,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolated(_) => 2,
        Error::AssertionFailure(_) => 3,
        _ => 1,
    }
}

/// Reads a graph from a file, or from the corpus when prefixed with `corpus:`.
pub fn load_graph(input: &str) -> Result<Graph, Error> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return corpus::lookup(name);
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{input}`: {e}")))?;
    Graph::parse(&text)
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool, render: impl FnOnce(&T) -> String) -> Result<String, Error> {
    if pretty {
        Ok(render(value))
    } else {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::AssertionFailure(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn execute(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Analyze { input, depth } => {
            let g = load_graph(input)?;
            emit(&analyze(&g, *depth)?, cli.pretty, render_analysis)
        }
        Command::Lattice { input } => {
            let g = load_graph(input)?;
            emit(&lattice_doc(&g)?, cli.pretty, render_lattice)
        }
        Command::Ktheory { input } => {
            let g = load_graph(input)?;
            emit(&ktheory_doc(&g)?, cli.pretty, render_ktheory)
        }
        Command::Core { input, depth } => {
            let g = load_graph(input)?;
            emit(&core_doc(&g, *depth)?, cli.pretty, render_core)
        }
        Command::Verify { input, depth, samples, seed } => {
            let g = load_graph(input)?;
            emit(&verify_doc(&g, *depth, *samples, *seed)?, cli.pretty, render_verify)
        }
        Command::Witness { input, cycle, depth, check } => {
            let g = load_graph(input)?;
            emit(&witness_doc(&g, cycle, *depth, *check)?, cli.pretty, render_witness)
        }
        Command::Corpus => emit(&corpus_doc(), cli.pretty, render_corpus),
    }
}

#[derive(Debug, Serialize)]
pub struct IdealDoc {
    pub set: Vec<String>,
    pub scope: IdealScope,
    pub core_ideal: String,
    pub algebra_ideal: String,
}

#[derive(Debug, Serialize)]
pub struct LatticeDoc {
    pub input_hash: Fingerprint,
    pub count: usize,
    pub hasse: Vec<(usize, usize)>,
    pub ideals: Vec<IdealDoc>,
}

fn lattice_doc(g: &Graph) -> Result<LatticeDoc, Error> {
    let lattice = enumerate_lattice(g);
    let ideals = lattice
        .elements()
        .iter()
        .map(|h| {
            let core = ideal_of(g, h, IdealKind::BetaInvariantIdealOfCore)?;
            let full = ideal_of(g, h, IdealKind::GaugeInvariantIdealOfCstarE)?;
            Ok(IdealDoc {
                set: h.names(g),
                scope: core.scope,
                core_ideal: core.generators,
                algebra_ideal: full.generators,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(LatticeDoc {
        input_hash: g.fingerprint(),
        count: lattice.len(),
        hasse: lattice.hasse_edges(),
        ideals,
    })
}

#[derive(Debug, Serialize)]
pub struct KTheoryDoc {
    pub input_hash: Fingerprint,
    pub k0: cklab_core::AbelianGroupPresentation,
    pub k1: cklab_core::AbelianGroupPresentation,
    pub matrix: cklab_core::IntMatrix,
    pub smith_diagonal: Vec<String>,
    pub narrative: Vec<String>,
}

fn ktheory_doc(g: &Graph) -> Result<KTheoryDoc, Error> {
    let p = pv_presentation(g)?;
    Ok(KTheoryDoc {
        input_hash: g.fingerprint(),
        smith_diagonal: p.snf.diagonal().iter().map(ToString::to_string).collect(),
        narrative: p.narrative.lines().map(str::to_string).collect(),
        matrix: p.matrix,
        k0: p.ktheory.k0,
        k1: p.ktheory.k1,
    })
}

#[derive(Debug, Serialize)]
pub struct CoreDoc {
    pub input_hash: Fingerprint,
    pub depth: u32,
    pub dims: Vec<CoreDims>,
    pub beta_of_unit: Vec<String>,
}

fn core_doc(g: &Graph, depth: u32) -> Result<CoreDoc, Error> {
    let dims = (0..=depth)
        .map(|n| CoreDims {
            n,
            blocks: core_dims(g, n)
                .into_iter()
                .map(|(v, k)| (g.vertex_name(v).to_string(), k.to_string()))
                .collect(),
        })
        .collect();
    let beta_one = beta_apply(g, &CoreElement::unit(g))?;
    Ok(CoreDoc {
        input_hash: g.fingerprint(),
        depth,
        dims,
        beta_of_unit: beta_one.display(g).lines().map(str::to_string).collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct GaugeDoc {
    pub sums_checked: usize,
    pub exact: bool,
    pub idempotent: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub input_hash: Fingerprint,
    pub depth: usize,
    pub dimension: usize,
    pub seed: u64,
    pub samples: usize,
    pub ck: CkReport,
    pub beta: BetaReport,
    pub gauge: GaugeDoc,
    pub passed: bool,
}

fn verify_doc(g: &Graph, depth: usize, samples: usize, seed: u64) -> Result<VerifyDoc, Error> {
    if depth < 2 {
        return Err(Error::InvalidArgument("verify needs --depth >= 2".into()));
    }
    let rep = build_rep(g, depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = random_core_samples(g, samples, (depth - 2).min(2), &mut rng)?;
    let ck = check_ck(&rep);
    let beta = check_beta(&rep, &xs)?;
    // formal sums: each sample plus a shifted copy of nonzero gauge degree
    let (mut exact, mut idempotent) = (true, true);
    for x in &xs {
        let mut f: FormalSum = x.terms().map(|t| ((t.left, t.right), t.coeff)).collect();
        let shifted: Vec<_> = x
            .terms()
            .filter_map(|t| {
                let e = *g.out_edges(t.left.range(g)).first()?;
                let left = Path::compose(g, &Path::edge(g, e), &t.left)?;
                (left.len() <= depth).then_some(((left, t.right), t.coeff))
            })
            .collect();
        f.extend(shifted);
        let e = gauge_expectation(&rep, &f)?;
        exact &= &e == x;
        let again: FormalSum = e.terms().map(|t| ((t.left, t.right), t.coeff)).collect();
        idempotent &= gauge_expectation(&rep, &again)? == e;
    }
    Ok(VerifyDoc {
        input_hash: g.fingerprint(),
        depth,
        dimension: rep.dim(),
        seed,
        samples: xs.len(),
        passed: ck.passed && beta.passed && exact && idempotent,
        ck,
        beta,
        gauge: GaugeDoc { sums_checked: xs.len(), exact, idempotent },
    })
}

#[derive(Debug, Serialize)]
pub struct WitnessTermDoc {
    pub left: String,
    pub right: String,
    pub kappa: String,
    pub coeff: String,
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub input_hash: Fingerprint,
    pub cycle: Vec<String>,
    pub base: String,
    pub depth: usize,
    pub power: usize,
    pub terms: Vec<WitnessTermDoc>,
    /// `sum κ^{-1}` per right factor, as exact rationals.
    pub right_factor_sums: Vec<(String, String)>,
    pub check: Option<WitnessCheckDoc>,
}

#[derive(Debug, Serialize)]
pub struct WitnessCheckDoc {
    pub rep_depth: usize,
    pub samples: Vec<String>,
    pub report: WitnessReport,
}

fn witness_doc(g: &Graph, ids: &[String], depth: usize, check: bool) -> Result<WitnessDoc, Error> {
    let cycle = Cycle::from_ids(g, ids)?;
    let w: WitnessSpec = inner_witness(g, &cycle, depth)?;
    let check = if check {
        // diagonal samples P_base and S_α S_α^*
        let alpha = cycle.as_path(g);
        let samples = vec![
            CoreElement::vertex_projection(g, w.base),
            CoreElement::matrix_unit(g, alpha.clone(), alpha)?,
        ];
        let rep_depth = depth + 2 * w.power();
        let rep = build_rep(g, rep_depth)?;
        let report = check_inner_witness(&rep, &w, &samples)?;
        Some(WitnessCheckDoc {
            rep_depth,
            samples: samples.iter().map(|s| s.display(g)).collect(),
            report,
        })
    } else {
        None
    };
    Ok(WitnessDoc {
        input_hash: g.fingerprint(),
        cycle: cycle.ids(g),
        base: g.vertex_name(w.base).to_string(),
        depth,
        power: w.power(),
        terms: w
            .terms
            .iter()
            .map(|t| WitnessTermDoc {
                left: t.left.display(g),
                right: t.right.display(g),
                kappa: t.kappa.to_string(),
                coeff: t.coeff.to_string(),
            })
            .collect(),
        right_factor_sums: w
            .right_factor_sums()
            .into_iter()
            .map(|(p, q)| (p.display(g), q.to_string()))
            .collect(),
        check,
    })
}

#[derive(Debug, Serialize)]
pub struct CorpusItem {
    pub name: String,
    pub provenance: String,
    pub input_hash: Fingerprint,
    pub text: String,
}

fn corpus_doc() -> Vec<CorpusItem> {
    corpus::corpus()
        .into_iter()
        .map(|e| CorpusItem {
            input_hash: e.graph.fingerprint(),
            text: e.graph.to_text(),
            provenance: e.provenance.to_string(),
            name: e.name,
        })
        .collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph {} ({} vertices, {} edges)", r.input_hash, r.graph.vertices.len(), r.graph.edges.len());
    let _ = writeln!(s, "sources: {}", set(&r.validation.sources));
    let elements: Vec<String> = r.lattice.elements.iter().map(|e| set(e)).collect();
    let _ = writeln!(s, "lattice ({}): {}", r.lattice.count, elements.join(" "));
    match &r.condition_l.entryless_cycle {
        None => {
            let _ = writeln!(s, "condition (L): yes");
        }
        Some(c) => {
            let _ = writeln!(s, "condition (L): no, entryless cycle [{}]", c.join(","));
        }
    }
    let _ = writeln!(s, "Connes spectrum: {:?}", r.spectrum.value);
    let _ = writeln!(s, "weakly properly outer: {}", yes(r.weakly_properly_outer));
    let witness = match &r.simplicity.witness {
        None => String::new(),
        Some(WitnessSummary::HereditarySaturatedSet(h)) => format!(", witness H = {}", set(h)),
        Some(WitnessSummary::EntrylessCycle(c)) => format!(", witness cycle [{}]", c.join(",")),
    };
    let _ = writeln!(s, "simple: {}{witness}", yes(r.simplicity.simple));
    let _ = writeln!(s, "purely infinite simple: {}", yes(r.pure_infiniteness.purely_infinite_simple));
    let _ = writeln!(s, "β(1) = 1: {}", yes(r.beta_unitary));
    let _ = writeln!(s, "K0 = {}, K1 = {}", r.ktheory.k0, r.ktheory.k1);
    for d in &r.core_dims {
        let blocks: Vec<String> = d.blocks.iter().map(|(v, k)| format!("{v}:{k}")).collect();
        let _ = writeln!(s, "core level {}: {}", d.n, blocks.join(" "));
    }
    s
}

fn render_lattice(d: &LatticeDoc) -> String {
    let mut s = format!("{} hereditary saturated sets\n", d.count);
    for (i, ideal) in d.ideals.iter().enumerate() {
        let _ = writeln!(s, "[{i}] {} {:?}: {}", set(&ideal.set), ideal.scope, ideal.core_ideal);
    }
    let covers: Vec<String> = d.hasse.iter().map(|(a, b)| format!("{a}<{b}")).collect();
    let _ = writeln!(s, "covers: {}", covers.join(" "));
    s
}

fn render_ktheory(d: &KTheoryDoc) -> String {
    let mut s = format!("K0 = {}\nK1 = {}\n", d.k0, d.k1);
    for line in &d.narrative {
        let _ = writeln!(s, "  {line}");
    }
    s
}

fn render_core(d: &CoreDoc) -> String {
    let mut s = String::new();
    for dims in &d.dims {
        let blocks: Vec<String> = dims.blocks.iter().map(|(v, k)| format!("{v}:{k}")).collect();
        let _ = writeln!(s, "level {}: {}", dims.n, blocks.join(" "));
    }
    let _ = writeln!(s, "β(1) =");
    for t in &d.beta_of_unit {
        let _ = writeln!(s, "  {t}");
    }
    s
}

fn render_verify(d: &VerifyDoc) -> String {
    let mut s = format!("N = {}, dimension {}, {} samples (seed {})\n", d.depth, d.dimension, d.samples, d.seed);
    let _ = writeln!(s, "CK1 interior: {:e}", d.ck.ck1_interior);
    let _ = writeln!(s, "CK2 interior: {:e} (boundary {:e})", d.ck.ck2_interior, d.ck.ck2_boundary);
    let _ = writeln!(s, "T*T - 1 interior: {:e}", d.ck.isometry_interior);
    let _ = writeln!(s, "β(x) = TxT*: max {:e}", d.beta.max_deviation);
    let _ = writeln!(s, "gauge expectation exact: {}, idempotent: {}", yes(d.gauge.exact), yes(d.gauge.idempotent));
    let _ = writeln!(s, "passed: {}", yes(d.passed));
    s
}

fn render_witness(d: &WitnessDoc) -> String {
    let mut s = format!("cycle [{}] at {}, depth {}, V implements β^{}\n", d.cycle.join(","), d.base, d.depth, d.power);
    for t in &d.terms {
        let _ = writeln!(s, "  {} * S[{}] S*[{}]", t.coeff, t.left, t.right);
    }
    if let Some(c) = &d.check {
        let _ = writeln!(
            s,
            "check at N = {}: ‖V*V - 1‖ = {:e}, max ‖VzV* - β^n(z)‖ = {:e}",
            c.rep_depth, c.report.isometry_deviation, c.report.max_sample_deviation
        );
    }
    s
}

fn render_corpus(items: &Vec<CorpusItem>) -> String {
    let mut s = String::new();
    for item in items {
        let _ = writeln!(s, "{:<14} {}", item.name, item.provenance);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("cklab").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["analyze", "corpus:o(2)"]).code, 0);
        assert_eq!(run_args(&["analyze", "/nonexistent.graph"]).code, 1);
        assert_eq!(run_args(&["frobnicate"]).code, 1);
        assert_eq!(run_args(&["analyze", "corpus:nope"]).code, 1);
        assert_eq!(run_args(&["witness", "corpus:o(2)", "--cycle", "a", "--depth", "2"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn sinks_exit_with_two() {
        let dir = std::env::temp_dir().join(format!("cklab-sink-{}", std::process::id()));
        std::fs::write(&dir, "a: v > w\n").unwrap();
        let out = run_args(&["analyze", dir.to_str().unwrap()]);
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(out.code, 2, "{}", out.stderr);
        assert!(out.stderr.contains("sink"));
    }

    #[test]
    fn analyze_json_fields() {
        let out = run_args(&["analyze", "corpus:example5"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["simplicity"]["simple"], false);
        assert_eq!(v["simplicity"]["witness"]["value"][0], "v");
        assert_eq!(v["ktheory"]["k0"]["group"], "Z");
    }

    #[test]
    fn verify_passes_on_corpus() {
        for name in ["o(2)", "example4", "example5", "single_loop"] {
            let out = run_args(&["verify", &format!("corpus:{name}"), "--depth", "4", "--samples", "5"]);
            assert_eq!(out.code, 0, "{}", out.stderr);
            let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
            assert_eq!(v["passed"], true, "{name}");
        }
    }

    #[test]
    fn witness_check_runs() {
        let out = run_args(&["witness", "corpus:plain_2_cycle", "--cycle", "e1,e2", "--depth", "3", "--check"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["check"]["report"]["passed"], true);
        assert_eq!(v["right_factor_sums"][0][1], "1");
    }
}
