mod common;

use std::collections::BTreeSet;

use cklab_core::lattice::{is_hereditary_saturated, IdealKind};
use cklab_core::{enumerate_lattice, hs_closure, ideal_of, vertex_set_of, Graph, VertexIx};
use proptest::prelude::*;

fn subset(g: &Graph, mask: u32) -> BTreeSet<VertexIx> {
    g.vertices().filter(|v| mask >> v.0 & 1 == 1).collect()
}

fn brute_force(g: &Graph) -> BTreeSet<BTreeSet<VertexIx>> {
    (0u32..1 << g.vertex_count())
        .map(|m| subset(g, m))
        .filter(|s| is_hereditary_saturated(g, s).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn closure_is_extensive_monotone_idempotent(g in common::any_graph(7, 12), a in any::<u32>(), b in any::<u32>()) {
        let x = subset(&g, a);
        let y: BTreeSet<VertexIx> = x.union(&subset(&g, b)).copied().collect();
        let cx = hs_closure(&g, &x).unwrap();
        let cy = hs_closure(&g, &y).unwrap();
        prop_assert!(x.is_subset(cx.vertices()));
        prop_assert!(cx.vertices().is_subset(cy.vertices()));
        prop_assert_eq!(hs_closure(&g, cx.vertices()).unwrap(), cx.clone());
        prop_assert!(is_hereditary_saturated(&g, cx.vertices()).unwrap());
    }

    #[test]
    fn lattice_matches_brute_force(g in common::any_graph(9, 14)) {
        let lattice = enumerate_lattice(&g);
        let found: BTreeSet<BTreeSet<VertexIx>> =
            lattice.elements().iter().map(|h| h.vertices().clone()).collect();
        prop_assert_eq!(found.len(), lattice.len());
        prop_assert_eq!(found, brute_force(&g));
    }

    #[test]
    fn join_and_meet_are_lattice_operations(g in common::no_sink_graph(6, 2)) {
        let l = enumerate_lattice(&g);
        for a in 0..l.len() {
            for b in 0..l.len() {
                let (j, m) = (l.join(a, b), l.meet(a, b));
                let (ea, eb) = (l.elements()[a].vertices(), l.elements()[b].vertices());
                prop_assert!(ea.is_subset(l.elements()[j].vertices()) && eb.is_subset(l.elements()[j].vertices()));
                prop_assert!(l.elements()[m].vertices().is_subset(ea) && l.elements()[m].vertices().is_subset(eb));
                prop_assert_eq!(l.join(a, b), l.join(b, a));
            }
        }
    }

    #[test]
    fn ideal_round_trip(g in common::no_sink_graph(6, 3)) {
        for h in enumerate_lattice(&g).elements() {
            for kind in [IdealKind::BetaInvariantIdealOfCore, IdealKind::GaugeInvariantIdealOfCstarE] {
                let ideal = ideal_of(&g, h, kind).unwrap();
                prop_assert_eq!(&vertex_set_of(&g, &ideal).unwrap(), h);
            }
        }
    }

    #[test]
    fn simple_implies_two_element_lattice(g in common::no_sink_graph(6, 3)) {
        if cklab_core::is_simple(&g).unwrap().simple {
            prop_assert_eq!(enumerate_lattice(&g).len(), 2);
        }
    }
}

#[test]
fn lattice_of_twelve_vertices_matches_brute_force() {
    // a chain of twelve loops, each feeding the next
    let mut text = String::new();
    for i in 0..12 {
        text.push_str(&format!("l{i}: v{i} > v{i}\n"));
        if i + 1 < 12 {
            text.push_str(&format!("f{i}: v{i} > v{}\n", i + 1));
        }
    }
    let g = Graph::parse_text(&text).unwrap();
    let found: BTreeSet<BTreeSet<VertexIx>> =
        enumerate_lattice(&g).elements().iter().map(|h| h.vertices().clone()).collect();
    assert_eq!(found, brute_force(&g));
    assert_eq!(found.len(), 13);
}
