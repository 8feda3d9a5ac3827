#![allow(dead_code)]

use cklab_core::Graph;
use proptest::prelude::*;

/// Graphs without sinks: `n` vertices, each with one to `max_out` out-edges.
pub fn no_sink_graph(max_vertices: usize, max_out: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(0..n, 1..=max_out), n)
        })
        .prop_map(|targets| {
            let n = targets.len();
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for (i, ts) in targets.iter().enumerate() {
                for (k, &t) in ts.iter().enumerate() {
                    edges.push((format!("e{i}_{k}"), vertices[i].clone(), vertices[t].clone()));
                }
            }
            Graph::new(&vertices, &edges).unwrap()
        })
}

/// Arbitrary graphs, sinks allowed.
pub fn any_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices)
        .prop_flat_map(move |n| proptest::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |es| (n, es)))
        .prop_map(|(n, es)| {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, String)> = es
                .iter()
                .enumerate()
                .map(|(k, &(s, r))| (format!("e{k}"), vertices[s].clone(), vertices[r].clone()))
                .collect();
            Graph::new(&vertices, &edges).unwrap()
        })
}
