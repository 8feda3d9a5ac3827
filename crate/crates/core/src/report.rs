//! The combined analysis of a graph, as one serializable document.

use serde::Serialize;

use crate::dynamics::{
    beta_unitary_report, condition_l, connes_spectrum_report, is_purely_infinite_simple, is_simple,
    weakly_properly_outer, PureInfiniteness, SimplicityWitness, SpectrumReport,
};
use crate::error::{Error, Result};
use crate::graph::{validate, Fingerprint, Graph, GraphDocument, ValidationReport};
use crate::ktheory::{graph_ktheory, AbelianGroupPresentation};
use crate::lattice::enumerate_lattice;
use crate::symbolic::core_dims;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub count: usize,
    pub elements: Vec<Vec<String>>,
    /// Covering pairs, as indices into `elements`.
    pub hasse: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionLSummary {
    pub holds: bool,
    pub entryless_cycle: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum WitnessSummary {
    HereditarySaturatedSet(Vec<String>),
    EntrylessCycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicitySummary {
    pub simple: bool,
    pub lattice_trivial: bool,
    pub condition_l: bool,
    pub witness: Option<WitnessSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTheorySummary {
    pub k0: AbelianGroupPresentation,
    pub k1: AbelianGroupPresentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreDims {
    pub n: u32,
    /// `(vertex, k_{n,v})` with the counts as decimal strings.
    pub blocks: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub input_hash: Fingerprint,
    pub graph: GraphDocument,
    pub validation: ValidationReport,
    pub lattice: LatticeSummary,
    pub condition_l: ConditionLSummary,
    pub spectrum: SpectrumReport,
    pub weakly_properly_outer: bool,
    pub simplicity: SimplicitySummary,
    pub pure_infiniteness: PureInfiniteness,
    pub beta_unitary: bool,
    pub ktheory: KTheorySummary,
    pub core_dims: Vec<CoreDims>,
}

impl AnalysisReport {
    /// Cross-checks that must hold between the independently computed fields.
    pub fn check_consistency(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::AssertionFailure(format!("inconsistent report: {m}")));
        if self.simplicity.simple && self.lattice.count != 2 {
            return fail("simple graph with a nontrivial lattice");
        }
        if self.simplicity.simple != (self.simplicity.lattice_trivial && self.condition_l.holds) {
            return fail("simplicity disagrees with lattice and condition (L)");
        }
        if self.condition_l.holds != self.weakly_properly_outer
            || self.condition_l.holds != (self.spectrum.value == crate::dynamics::SpectrumValue::Full)
        {
            return fail("condition (L), outerness and spectrum disagree");
        }
        if self.condition_l.holds == self.condition_l.entryless_cycle.is_some() {
            return fail("condition (L) witness mismatch");
        }
        if self.pure_infiniteness.purely_infinite_simple != self.simplicity.simple {
            return fail("pure infiniteness must equal simplicity for graphs without sinks");
        }
        if self.simplicity.simple == self.simplicity.witness.is_some() {
            return fail("simplicity witness mismatch");
        }
        if !self.validation.hypotheses_ok {
            return fail("report produced for a graph with sinks");
        }
        Ok(())
    }
}

/// Runs every decision procedure on `g`; core dimensions are listed for `n = 0..=core_depth`.
pub fn analyze(g: &Graph, core_depth: u32) -> Result<AnalysisReport> {
    let validation = validate(g);
    g.require_no_sinks()?;
    let lattice = enumerate_lattice(g);
    let l = condition_l(g)?;
    let simplicity = is_simple(g)?;
    let kt = graph_ktheory(g)?;
    let report = AnalysisReport {
        tool_version: TOOL_VERSION.to_string(),
        input_hash: g.fingerprint(),
        graph: g.to_document(),
        validation,
        lattice: LatticeSummary {
            count: lattice.len(),
            elements: lattice.elements().iter().map(|h| h.names(g)).collect(),
            hasse: lattice.hasse_edges(),
        },
        condition_l: ConditionLSummary {
            holds: l.holds,
            entryless_cycle: l.witness.map(|c| c.ids(g)),
        },
        spectrum: connes_spectrum_report(g)?,
        weakly_properly_outer: weakly_properly_outer(g)?,
        simplicity: SimplicitySummary {
            simple: simplicity.simple,
            lattice_trivial: simplicity.lattice_trivial,
            condition_l: simplicity.condition_l,
            witness: simplicity.witness.map(|w| match w {
                SimplicityWitness::Ideal(h) => WitnessSummary::HereditarySaturatedSet(h.names(g)),
                SimplicityWitness::Cycle(c) => WitnessSummary::EntrylessCycle(c.ids(g)),
            }),
        },
        pure_infiniteness: is_purely_infinite_simple(g)?,
        beta_unitary: beta_unitary_report(g)?,
        ktheory: KTheorySummary { k0: kt.k0, k1: kt.k1 },
        core_dims: (0..=core_depth)
            .map(|n| CoreDims {
                n,
                blocks: core_dims(g, n)
                    .into_iter()
                    .map(|(v, k)| (g.vertex_name(v).to_string(), k.to_string()))
                    .collect(),
            })
            .collect(),
    };
    report.check_consistency()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_reports_are_consistent() {
        for entry in corpus::corpus() {
            let r = analyze(&entry.graph, 3).unwrap();
            assert_eq!(r.core_dims.len(), 4, "{}", entry.name);
        }
    }

    #[test]
    fn example5_report() {
        let r = analyze(&corpus::example5(), 2).unwrap();
        assert!(!r.simplicity.simple);
        assert_eq!(
            r.simplicity.witness,
            Some(WitnessSummary::HereditarySaturatedSet(vec!["v".into()]))
        );
        assert_eq!(r.lattice.count, 3);
        assert_eq!(r.validation.sources, vec!["v"]);
    }

    #[test]
    fn inconsistency_is_caught() {
        let mut r = analyze(&corpus::cuntz(2), 1).unwrap();
        r.lattice.count = 3;
        assert!(matches!(r.check_consistency(), Err(Error::AssertionFailure(_))));
    }

    #[test]
    fn sinks_are_rejected() {
        let g = Graph::parse_text("a: v > w").unwrap();
        assert!(matches!(analyze(&g, 1), Err(Error::HypothesisViolated(_))));
    }
}
