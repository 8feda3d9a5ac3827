//! Built-in graphs: the Cuntz algebras, the two-vertex examples, and the
//! cyclic graphs presenting crossed products of UHF algebras.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub provenance: &'static str,
    pub graph: Graph,
}

fn loop_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("e{i}")).collect()
    }
}

/// One vertex with `n` loops: `C*(E) = O_n`.
pub fn cuntz(n: usize) -> Graph {
    let names = loop_names(n);
    let edges: Vec<(&str, &str, &str)> = names.iter().map(|e| (e.as_str(), "v", "v")).collect();
    Graph::new(&["v"], &edges).expect("valid graph")
}

/// Two parallel edges `v -> w` and one edge `w -> v`.
pub fn example4() -> Graph {
    Graph::new(&["v", "w"], &[("a", "v", "w"), ("b", "v", "w"), ("c", "w", "v")])
        .expect("valid graph")
}

/// A source `v` feeding a loop: `f: v -> w`, `e: w -> w`.
pub fn example5() -> Graph {
    Graph::parse_text("f: v > w\ne: w > w").expect("valid graph")
}

pub fn single_loop() -> Graph {
    Graph::new(&["v"], &[("e", "v", "v")]).expect("valid graph")
}

pub fn plain_two_cycle() -> Graph {
    Graph::new(&["v", "w"], &[("e1", "v", "w"), ("e2", "w", "v")]).expect("valid graph")
}

/// Vertices `v1..vn` on a cycle, with `m` parallel edges `v_i -> v_{i+1}`.
pub fn cyclic(n: usize, m: usize) -> Graph {
    assert!(n >= 1 && m >= 1, "cyclic graph needs n, m >= 1");
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for k in 1..=m {
            edges.push((
                format!("e{}_{k}", i + 1),
                vertices[i].clone(),
                vertices[(i + 1) % n].clone(),
            ));
        }
    }
    Graph::new(&vertices, &edges).expect("valid graph")
}

/// The listed corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    let entry = |name: &str, provenance: &'static str, graph: Graph| CorpusEntry {
        name: name.to_string(),
        provenance,
        graph,
    };
    vec![
        entry("o(2)", "Cuntz algebra O_2: one vertex with two loops", cuntz(2)),
        entry("o(3)", "Cuntz algebra O_3: one vertex with three loops", cuntz(3)),
        entry("o(5)", "Cuntz algebra O_5: one vertex with five loops", cuntz(5)),
        entry(
            "example4",
            "two edges v -> w and one edge w -> v; β and β^2 behave differently",
            example4(),
        ),
        entry(
            "example5",
            "a source feeding a loop; {v} is a proper hereditary saturated set",
            example5(),
        ),
        entry("single_loop", "one vertex with one loop: C(T)", single_loop()),
        entry("plain_2_cycle", "a two-cycle without entries", plain_two_cycle()),
        entry(
            "cycle(2,2)",
            "cyclic UHF crossed product with n = 2, m = 2; stably O_4",
            cyclic(2, 2),
        ),
    ]
}

fn parse_args(s: &str, arity: usize) -> Option<Vec<usize>> {
    let inner = s.strip_suffix(')')?;
    let args: Vec<usize> = inner
        .split(',')
        .map(|x| x.trim().parse().ok())
        .collect::<Option<_>>()?;
    (args.len() == arity).then_some(args)
}

/// Resolves a corpus name, including the parametric `o(n)` and `cycle(n,m)`.
pub fn lookup(name: &str) -> Result<Graph> {
    let name = name.trim();
    if let Some(e) = corpus().into_iter().find(|e| e.name == name) {
        return Ok(e.graph);
    }
    let unknown = || Error::InvalidArgument(format!("unknown corpus graph `{name}`"));
    if let Some(rest) = name.strip_prefix("o(") {
        let args = parse_args(rest, 1).ok_or_else(unknown)?;
        if args[0] == 0 {
            return Err(unknown());
        }
        return Ok(cuntz(args[0]));
    }
    if let Some(rest) = name.strip_prefix("cycle(") {
        let args = parse_args(rest, 2).ok_or_else(unknown)?;
        if args[0] == 0 || args[1] == 0 {
            return Err(unknown());
        }
        return Ok(cyclic(args[0], args[1]));
    }
    Err(unknown())
}

/// A random graph without sinks on `1..=max_vertices` vertices: every vertex
/// gets one to `max_out` out-edges with uniformly chosen ranges.
pub fn random_no_sink_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_out: usize) -> Graph {
    assert!(max_vertices >= 1 && max_out >= 1);
    let n = rng.random_range(1..=max_vertices);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for (i, src) in vertices.iter().enumerate() {
        for k in 0..rng.random_range(1..=max_out) {
            let rng_v = &vertices[rng.random_range(0..n)];
            edges.push((format!("e{i}_{k}"), src.clone(), rng_v.clone()));
        }
    }
    Graph::new(&vertices, &edges).expect("valid graph")
}
