//! Decisions about the dynamical system `(C*(E)^γ, β_E)`.
//!
//! For a finite graph without sinks the following coincide: every cycle has
//! an entry (condition (L)), the Connes spectrum of `β_E` is the whole
//! circle, and `β_E` is weakly properly outer. Simplicity of
//! `C*(E) ≅ C*(E)^γ ×_{β_E} N` adds the requirement that the lattice of
//! hereditary saturated sets be trivial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_cycles_upto, find_entryless_cycle, paths_from, Cycle, Graph, Path, VertexIx};
use crate::lattice::{enumerate_lattice, HereditarySaturatedSet};
use crate::scalar::Surd;
use crate::symbolic::{beta_apply, ck2_equal, CoreElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionL {
    pub holds: bool,
    /// An entryless cycle when the condition fails.
    pub witness: Option<Cycle>,
}

pub fn condition_l(g: &Graph) -> Result<ConditionL> {
    let witness = find_entryless_cycle(g)?;
    Ok(ConditionL {
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumValue {
    Full,
    ProperClosedSubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub value: SpectrumValue,
    pub justification: String,
}

/// Connes spectrum of `β_E`, reported only as full or proper.
pub fn connes_spectrum_report(g: &Graph) -> Result<SpectrumReport> {
    let l = condition_l(g)?;
    Ok(if l.holds {
        SpectrumReport {
            value: SpectrumValue::Full,
            justification: "every cycle has an entry (condition (L)), which for a graph \
                            without sinks is equivalent to T(β_E) = T"
                .to_string(),
        }
    } else {
        let cycle = l.witness.expect("witness when (L) fails");
        SpectrumReport {
            value: SpectrumValue::ProperClosedSubgroup,
            justification: format!(
                "the cycle [{}] has no entry, so condition (L) fails and T(β_E) is a \
                 proper closed subgroup of T (not computed)",
                cycle.ids(g).join(",")
            ),
        }
    })
}

/// `β_E` is weakly properly outer exactly when condition (L) holds.
pub fn weakly_properly_outer(g: &Graph) -> Result<bool> {
    Ok(condition_l(g)?.holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityWitness {
    Ideal(HereditarySaturatedSet),
    Cycle(Cycle),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityDecision {
    pub simple: bool,
    pub lattice_trivial: bool,
    pub condition_l: bool,
    pub witness: Option<SimplicityWitness>,
}

pub fn is_simple(g: &Graph) -> Result<SimplicityDecision> {
    let l = condition_l(g)?;
    let lattice = enumerate_lattice(g);
    let nontrivial = lattice.smallest_nontrivial(g).cloned();
    let witness = match (nontrivial, l.witness) {
        (Some(h), _) => Some(SimplicityWitness::Ideal(h)),
        (None, Some(c)) => Some(SimplicityWitness::Cycle(c)),
        (None, None) => None,
    };
    Ok(SimplicityDecision {
        simple: lattice.is_trivial() && l.holds,
        lattice_trivial: lattice.is_trivial(),
        condition_l: l.holds,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureInfiniteness {
    pub purely_infinite_simple: bool,
    pub simple: bool,
    pub has_cycle: bool,
    pub justification: String,
}

/// Purely infinite simple means simple and containing a cycle. A finite graph
/// without sinks always contains one, which is asserted here rather than assumed.
pub fn is_purely_infinite_simple(g: &Graph) -> Result<PureInfiniteness> {
    let simple = is_simple(g)?.simple;
    let has_cycle = !all_cycles_upto(g, g.vertex_count()).is_empty();
    if !has_cycle {
        return Err(Error::AssertionFailure(
            "a finite graph without sinks must contain a cycle".into(),
        ));
    }
    Ok(PureInfiniteness {
        purely_infinite_simple: simple && has_cycle,
        simple,
        has_cycle,
        justification: "a simple graph algebra is purely infinite exactly when the graph \
                        contains a cycle; finite graphs without sinks always do"
            .to_string(),
    })
}

/// One summand `κ^{-1/2} S_{η γ} S_{γ α}^*` of the inner implementing isometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTerm {
    pub gamma: Path,
    pub eta: Path,
    pub left: Path,
    pub right: Path,
    pub kappa: BigInt,
    pub coeff: Surd,
}

/// Truncation of the isometry `V` with `V z V^* = β_E^n(z)` on the ideal of an
/// entryless cycle of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub cycle: Cycle,
    pub depth: usize,
    pub base: VertexIx,
    pub terms: Vec<WitnessTerm>,
}

impl WitnessSpec {
    pub fn power(&self) -> usize {
        self.cycle.len()
    }

    /// `sum_i κ_i^{-1}` over terms sharing each right factor.
    pub fn right_factor_sums(&self) -> BTreeMap<Path, BigRational> {
        let mut sums: BTreeMap<Path, BigRational> = BTreeMap::new();
        for t in &self.terms {
            *sums.entry(t.right.clone()).or_insert_with(BigRational::zero) +=
                BigRational::new(BigInt::one(), t.kappa.clone());
        }
        sums
    }

    pub fn as_element(&self, g: &Graph) -> String {
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{} * S[{}] S*[{}]",
                    t.coeff,
                    t.left.display(g),
                    t.right.display(g)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Paths `γ` leaving `base` that never come back to it, with `|γ| <= depth`.
///
/// Because the cycle has no entry, any path returning to the base has just
/// run through the whole cycle; restricting to non-returning paths makes the
/// terms `S_γ S_{γα}^*` distinct partial isometries with orthogonal ranges.
pub(crate) fn non_returning_paths(g: &Graph, base: VertexIx, depth: usize) -> Vec<Path> {
    let mut out = vec![Path::vertex(base)];
    let mut layer = vec![Path::vertex(base)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &layer {
            for &e in g.out_edges(p.range(g)) {
                if g.range(e) == base {
                    continue;
                }
                let q = Path::compose(g, &Path::edge(g, e), p).expect("composable");
                next.push(q);
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn inner_witness(g: &Graph, cycle: &Cycle, depth: usize) -> Result<WitnessSpec> {
    g.require_no_sinks()?;
    if let Some(v) = cycle.entry(g) {
        return Err(Error::CycleHasEntry(g.vertex_name(v).to_string()));
    }
    let n = cycle.len();
    if depth < n {
        return Err(Error::DepthTooSmall { depth, len: n });
    }
    let base = cycle.base(g);
    let alpha = cycle.as_path(g);
    let mut terms = Vec::new();
    for gamma in non_returning_paths(g, base, depth) {
        let right = Path::compose(g, &gamma, &alpha).expect("α ends at the base");
        for eta in paths_from(g, gamma.range(g), n) {
            let kappa: u64 = eta
                .edges()
                .iter()
                .map(|&f| g.out_degree(g.source(f)) as u64)
                .product();
            terms.push(WitnessTerm {
                left: Path::compose(g, &eta, &gamma).expect("s(η) = r(γ)"),
                right: right.clone(),
                coeff: Surd::inv_sqrt(kappa),
                kappa: BigInt::from(kappa),
                gamma: gamma.clone(),
                eta,
            });
        }
    }
    Ok(WitnessSpec {
        cycle: cycle.clone(),
        depth,
        base,
        terms,
    })
}

/// Whether `β_E(1) = 1`, decided by comparing `β_E(sum_v P_v)` with the unit
/// modulo the second Cuntz-Krieger relation.
pub fn beta_unitary_report(g: &Graph) -> Result<bool> {
    g.require_no_sinks()?;
    let one = CoreElement::unit(g);
    let image = beta_apply(g, &one)?;
    ck2_equal(g, &image, &one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn condition_l_examples() {
        assert!(condition_l(&corpus::cuntz(2)).unwrap().holds);
        let loop1 = corpus::single_loop();
        let l = condition_l(&loop1).unwrap();
        assert!(!l.holds);
        assert_eq!(l.witness.unwrap().ids(&loop1), vec!["e"]);
        assert!(condition_l(&corpus::example5()).unwrap().holds);
    }

    #[test]
    fn spectrum_and_outerness() {
        assert_eq!(connes_spectrum_report(&corpus::cuntz(2)).unwrap().value, SpectrumValue::Full);
        assert_eq!(
            connes_spectrum_report(&corpus::single_loop()).unwrap().value,
            SpectrumValue::ProperClosedSubgroup
        );
        assert_eq!(connes_spectrum_report(&corpus::example4()).unwrap().value, SpectrumValue::Full);
        assert!(weakly_properly_outer(&corpus::cuntz(2)).unwrap());
        assert!(!weakly_properly_outer(&corpus::single_loop()).unwrap());
        assert!(!weakly_properly_outer(&corpus::plain_two_cycle()).unwrap());
    }

    #[test]
    fn simplicity_examples() {
        for n in [2, 3, 5] {
            let d = is_simple(&corpus::cuntz(n)).unwrap();
            assert!(d.simple && d.witness.is_none());
        }
        let g = corpus::example5();
        let d = is_simple(&g).unwrap();
        assert!(!d.simple && d.condition_l && !d.lattice_trivial);
        match d.witness {
            Some(SimplicityWitness::Ideal(h)) => assert_eq!(h.names(&g), vec!["v"]),
            other => panic!("unexpected witness {other:?}"),
        }
        let g = corpus::single_loop();
        let d = is_simple(&g).unwrap();
        assert!(!d.simple && d.lattice_trivial);
        assert!(matches!(d.witness, Some(SimplicityWitness::Cycle(_))));
    }

    #[test]
    fn pure_infiniteness_examples() {
        assert!(is_purely_infinite_simple(&corpus::cuntz(2)).unwrap().purely_infinite_simple);
        assert!(!is_purely_infinite_simple(&corpus::example5()).unwrap().purely_infinite_simple);
        assert!(is_purely_infinite_simple(&corpus::example4()).unwrap().purely_infinite_simple);
        let sink = Graph::parse_text("a: v > w").unwrap();
        assert!(matches!(is_purely_infinite_simple(&sink), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn witness_on_single_loop() {
        let g = corpus::single_loop();
        let c = Cycle::from_ids(&g, &["e"]).unwrap();
        let w = inner_witness(&g, &c, 3).unwrap();
        assert_eq!(w.as_element(&g), "1 * S[e] S*[e]");
        assert!(w.terms.iter().all(|t| t.kappa == BigInt::one()));
    }

    #[test]
    fn witness_on_two_cycle() {
        let g = corpus::plain_two_cycle();
        let c = Cycle::from_ids(&g, &["e1", "e2"]).unwrap();
        let w = inner_witness(&g, &c, 4).unwrap();
        assert_eq!(g.vertex_name(w.base), "v");
        assert_eq!(w.as_element(&g), "1 * S[e2.e1] S*[e2.e1]\n1 * S[e1.e2.e1] S*[e1.e2.e1]");
        assert_eq!(
            w.terms.iter().map(|t| g.vertex_name(t.gamma.range(&g))).collect::<Vec<_>>(),
            vec!["v", "w"]
        );
    }

    #[test]
    fn witness_preconditions() {
        let g = corpus::cuntz(2);
        let c = Cycle::from_ids(&g, &["a"]).unwrap();
        assert_eq!(inner_witness(&g, &c, 3), Err(Error::CycleHasEntry("v".into())));
        let g = corpus::plain_two_cycle();
        let c = Cycle::from_ids(&g, &["e1", "e2"]).unwrap();
        assert_eq!(inner_witness(&g, &c, 1), Err(Error::DepthTooSmall { depth: 1, len: 2 }));
    }

    #[test]
    fn beta_unitary_examples() {
        assert!(beta_unitary_report(&corpus::single_loop()).unwrap());
        assert!(beta_unitary_report(&corpus::plain_two_cycle()).unwrap());
        assert!(!beta_unitary_report(&corpus::cuntz(2)).unwrap());
        assert!(!beta_unitary_report(&corpus::example4()).unwrap());
        // out-degree one everywhere, but v is a source
        assert!(!beta_unitary_report(&corpus::example5()).unwrap());
    }
}
