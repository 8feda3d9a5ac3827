//! Structural invariants of graph C*-algebras `C*(E)` and of the core
//! endomorphism `β_E`, computed from a finite directed multigraph.

pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod intmatrix;
pub mod ktheory;
pub mod lattice;
pub mod report;
pub mod scalar;
pub mod smith;
pub mod symbolic;
pub mod verifier;

pub use dynamics::{
    beta_unitary_report, condition_l, connes_spectrum_report, inner_witness, is_purely_infinite_simple,
    is_simple, weakly_properly_outer, SimplicityDecision, SimplicityWitness, SpectrumReport, SpectrumValue,
    WitnessSpec, WitnessTerm,
};
pub use error::{Error, Result};
pub use graph::{validate, Cycle, EdgeIx, Fingerprint, Graph, Path, ValidationReport, VertexIx};
pub use intmatrix::IntMatrix;
pub use ktheory::{cyclic_uhf_ktheory, graph_ktheory, pv_presentation, AbelianGroupPresentation, KTheory};
pub use lattice::{enumerate_lattice, hs_closure, ideal_of, vertex_set_of, HereditarySaturatedSet, IdealKind, Lattice};
pub use report::{analyze, AnalysisReport};
pub use scalar::Surd;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use symbolic::{adjoint, beta_apply, beta_power, core_dims, multiply, CoreElement, PathPairTerm};
pub use verifier::{build_rep, check_beta, check_ck, check_inner_witness, evaluate, gauge_expectation, TruncatedRep};
