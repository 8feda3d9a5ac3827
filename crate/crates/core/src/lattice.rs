//! Hereditary saturated vertex sets and the ideals they parametrize.
//!
//! A set `H` is hereditary when `r(e) ∈ H` forces `s(e) ∈ H`, and saturated
//! when every vertex `v` with `1 <= |r^{-1}(v)|` and `s(r^{-1}(v)) ⊆ H` lies
//! in `H`. Sources are excluded from the saturation rule.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Fingerprint, Graph, VertexIx};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HereditarySaturatedSet {
    vertices: BTreeSet<VertexIx>,
    fingerprint: Fingerprint,
}

impl HereditarySaturatedSet {
    pub fn vertices(&self) -> &BTreeSet<VertexIx> {
        &self.vertices
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexIx) -> bool {
        self.vertices.contains(&v)
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        g.vertex_names(&self.vertices)
    }

    /// `{a,b}` in vertex order.
    pub fn display(&self, g: &Graph) -> String {
        format!("{{{}}}", self.names(g).join(","))
    }

    /// Ordering used throughout: size, then the sorted vertex indices.
    fn sort_key(&self) -> (usize, Vec<VertexIx>) {
        (self.vertices.len(), self.vertices.iter().copied().collect())
    }
}

fn check_members(g: &Graph, set: &BTreeSet<VertexIx>) -> Result<()> {
    match set.iter().find(|v| v.0 >= g.vertex_count()) {
        Some(v) => Err(Error::UnknownVertex(format!("#{}", v.0))),
        None => Ok(()),
    }
}

pub fn resolve_vertices<S: AsRef<str>>(g: &Graph, names: &[S]) -> Result<BTreeSet<VertexIx>> {
    names.iter().map(|n| g.vertex(n.as_ref())).collect()
}

fn hereditary(g: &Graph, set: &BTreeSet<VertexIx>) -> bool {
    g.edges()
        .all(|e| !set.contains(&g.range(e)) || set.contains(&g.source(e)))
}

fn saturated(g: &Graph, set: &BTreeSet<VertexIx>) -> bool {
    g.vertices().all(|v| {
        set.contains(&v)
            || g.in_degree(v) == 0
            || !g.in_edges(v).iter().all(|&e| set.contains(&g.source(e)))
    })
}

pub fn is_hereditary_saturated(g: &Graph, set: &BTreeSet<VertexIx>) -> Result<bool> {
    check_members(g, set)?;
    Ok(hereditary(g, set) && saturated(g, set))
}

/// Least hereditary saturated superset.
pub fn hs_closure(g: &Graph, set: &BTreeSet<VertexIx>) -> Result<HereditarySaturatedSet> {
    check_members(g, set)?;
    let mut h = set.clone();
    loop {
        let mut changed = false;
        // hereditary: pull in sources of edges landing in H, transitively
        let mut stack: Vec<VertexIx> = h.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for &e in g.in_edges(v) {
                if h.insert(g.source(e)) {
                    stack.push(g.source(e));
                    changed = true;
                }
            }
        }
        for v in g.vertices() {
            if !h.contains(&v)
                && g.in_degree(v) > 0
                && g.in_edges(v).iter().all(|&e| h.contains(&g.source(e)))
            {
                h.insert(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(HereditarySaturatedSet {
        vertices: h,
        fingerprint: g.fingerprint(),
    })
}

/// Wraps an already hereditary saturated set, rejecting anything else.
pub fn hereditary_saturated(g: &Graph, set: BTreeSet<VertexIx>) -> Result<HereditarySaturatedSet> {
    if !is_hereditary_saturated(g, &set)? {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not hereditary and saturated",
            g.vertex_names(&set)
        )));
    }
    Ok(HereditarySaturatedSet {
        vertices: set,
        fingerprint: g.fingerprint(),
    })
}

/// The complete lattice of hereditary saturated sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    elements: Vec<HereditarySaturatedSet>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn elements(&self) -> &[HereditarySaturatedSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn index_of(&self, h: &HereditarySaturatedSet) -> Option<usize> {
        self.elements.iter().position(|x| x == h)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() <= 2
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let below = |a: usize, b: usize| {
            a != b && self.elements[a].vertices.is_subset(&self.elements[b].vertices)
        };
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if below(a, b) && !(0..n).any(|c| below(a, c) && below(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Smallest nontrivial element, if any.
    pub fn smallest_nontrivial(&self, g: &Graph) -> Option<&HereditarySaturatedSet> {
        self.elements
            .iter()
            .find(|h| !h.is_empty() && h.len() < g.vertex_count())
    }
}

/// All hereditary saturated sets, as the join-closure of the singleton closures and `∅`.
pub fn enumerate_lattice(g: &Graph) -> Lattice {
    let empty = HereditarySaturatedSet {
        vertices: BTreeSet::new(),
        fingerprint: g.fingerprint(),
    };
    let generators: Vec<HereditarySaturatedSet> = g
        .vertices()
        .map(|v| hs_closure(g, &BTreeSet::from([v])).expect("vertex of g"))
        .collect();

    let mut seen: BTreeSet<BTreeSet<VertexIx>> = BTreeSet::new();
    seen.insert(empty.vertices.clone());
    let mut frontier = vec![empty.clone()];
    let mut all = vec![empty];
    while let Some(h) = frontier.pop() {
        for gen in &generators {
            if gen.vertices.is_subset(&h.vertices) {
                continue;
            }
            let union: BTreeSet<VertexIx> = h.vertices.union(&gen.vertices).copied().collect();
            let joined = hs_closure(g, &union).expect("vertices of g");
            if seen.insert(joined.vertices.clone()) {
                frontier.push(joined.clone());
                all.push(joined);
            }
        }
    }
    all.sort_by_key(HereditarySaturatedSet::sort_key);

    let index: BTreeMap<BTreeSet<VertexIx>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, h)| (h.vertices.clone(), i))
        .collect();
    let n = all.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let union: BTreeSet<VertexIx> =
                all[a].vertices.union(&all[b].vertices).copied().collect();
            let j = hs_closure(g, &union).expect("vertices of g");
            join[a][b] = index[&j.vertices];
            let inter: BTreeSet<VertexIx> = all[a]
                .vertices
                .intersection(&all[b].vertices)
                .copied()
                .collect();
            meet[a][b] = *index
                .get(&inter)
                .expect("intersection of hereditary saturated sets is hereditary saturated");
        }
    }
    Lattice {
        elements: all,
        join,
        meet,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdealKind {
    /// The gauge-invariant ideal `K_H` of `C*(E)`.
    GaugeInvariantIdealOfCstarE,
    /// The `β_E`-invariant ideal `I_H = K_H ∩ C*(E)^γ` of the core.
    BetaInvariantIdealOfCore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdealScope {
    Zero,
    Proper,
    Whole,
}

/// Symbolic description of the ideal attached to a hereditary saturated set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDescriptor {
    pub set: HereditarySaturatedSet,
    pub kind: IdealKind,
    pub scope: IdealScope,
    pub generators: String,
}

pub fn ideal_of(g: &Graph, h: &HereditarySaturatedSet, kind: IdealKind) -> Result<IdealDescriptor> {
    g.check_fingerprint(h.fingerprint)?;
    let set = h.display(g);
    let generators = match kind {
        IdealKind::BetaInvariantIdealOfCore => {
            format!("closure of span of F_n(v), v ∈ {set}, n ≥ 0")
        }
        IdealKind::GaugeInvariantIdealOfCstarE => {
            format!("closure of span of S_η S_ν*, η, ν ∈ E*, s(η) = s(ν) ∈ {set}")
        }
    };
    let scope = if h.is_empty() {
        IdealScope::Zero
    } else if h.len() == g.vertex_count() {
        IdealScope::Whole
    } else {
        IdealScope::Proper
    };
    Ok(IdealDescriptor {
        set: h.clone(),
        kind,
        scope,
        generators,
    })
}

/// `H_I = {v : P_v ∈ I}`.
///
/// Membership of `P_v` is decided from the generating projections by the
/// Cuntz-Krieger relations alone: `P_{s(e)} = S_e^* P_{r(e)} S_e` puts `s(e)`
/// in whenever `r(e)` is, and `P_v = sum_{r(e)=v} S_e S_e^*` puts a
/// non-source `v` in once every `P_{s(e)}` is.
pub fn vertex_set_of(g: &Graph, ideal: &IdealDescriptor) -> Result<HereditarySaturatedSet> {
    g.check_fingerprint(ideal.set.fingerprint)?;
    let mut members: BTreeSet<VertexIx> = ideal.set.vertices.clone();
    loop {
        let before = members.len();
        for e in g.edges() {
            if members.contains(&g.range(e)) {
                members.insert(g.source(e));
            }
        }
        for v in g.vertices() {
            if g.in_degree(v) > 0 && g.in_edges(v).iter().all(|&e| members.contains(&g.source(e))) {
                members.insert(v);
            }
        }
        if members.len() == before {
            break;
        }
    }
    Ok(HereditarySaturatedSet {
        vertices: members,
        fingerprint: g.fingerprint(),
    })
}
