//! Core library for constructing and analysing finite connected graphs that
//! are locally arc-transitive of valence {3, 4} and have trivial edge kernel.
//!
//! The pipeline goes: finitely presented amalgams ([`amalgams`]) → low-index
//! normal subgroup search on the universal groups ([`lins`]) → coset graphs
//! ([`graphs`]) → symmetry analysis ([`symmetry`]) → census assembly and
//! comparison against the reference table ([`census`]). Supporting machinery
//! lives in [`fpgroup`] (words, presentations, coset enumeration, abelian
//! invariants), [`perm`]/[`permgroup`] (permutations, stabiliser chains,
//! small-group identification) and [`subdouble`] (subdivisions and subdivided
//! doubles of cubic graphs).

pub mod amalgams;
pub mod census;
pub mod fpgroup;
pub mod graphs;
pub mod lins;
pub mod perm;
pub mod permgroup;
pub mod subdouble;
pub mod symmetry;

pub use amalgams::{builtin_amalgams, Amalgam, Side, ValidationReport};
pub use census::{
    compare_csv_text, compare_with_reference, emit, max_index_for, params_of, reference_rows,
    row_params, run_census, run_census_with, CensusError, CensusOptions, CensusRecord, CensusRun,
    ComparisonReport, ParamRow, ReferenceRow,
};
pub use fpgroup::{CosetTable, Presentation, Word};
pub use graphs::{coset_graph, fixture, graph_stats, Graph, GraphStats};
pub use lins::QuotientRecord;
pub use perm::Permutation;
pub use permgroup::{GroupFingerprint, PermGroup};
pub use subdouble::{
    recognize_unworthy, subdivided_double, subdivision, RecognitionResult, SubdoubleError,
};
pub use symmetry::{are_isomorphic, canonical_form, symmetry_report, CanonicalForm, SymmetryReport};
