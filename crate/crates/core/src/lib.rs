//! Finite Lorentzian metric spaces.
//!
//! A library for constructing, validating and comparing finite (and finitely
//! sampled) Lorentzian metric spaces: the defining axioms and derived
//! relations, bounded-region quotients, explicit time functions, chain/length
//! machinery, the canonical quasi-metric, and Gromov-Hausdorff convergence
//! probing via quasi-correspondence search.
//!
//! Everything operates on immutable values; no function mutates its
//! arguments, so spaces and relations can be shared freely across threads.

pub mod chains;
pub mod gh;
pub mod io;
pub mod models;
pub mod quasimetric;
pub mod regions;
pub mod relation;
pub mod rng;
pub mod seq;
pub mod space;
pub mod timefn;
pub mod timesep;

pub use chains::{
    chain_length, check_length_property, dcheck, is_maximal_chain, maximal_chain_between,
    validate_chain, Chain, ChainError, ChainMode,
};
pub use gh::{
    certify_gh_convergence, compose_qc, distortion, isomorphism_search, restrict_qc, search_qc,
    transpose_qc, verify_qc, CertifyOutcome, CertifyVerdict, GhError, GhSchedule,
    QuasiCorrespondence, SearchOutcome,
};
pub use models::{
    antichain, chain, from_link_dag, from_link_weights, halfline_space, minkowski_distance,
    realline_space, sample_diamond, DiamondSample, LineSample, ModelError, SampleMode,
    SpacetimePoint,
};
pub use quasimetric::{
    kuratowski_gamma, quasi_metric_p, quasi_metric_pair, verify_qm_properties, QmReport,
    QuasiMetricPair,
};
pub use regions::{
    nesting_check, quotient, reconstruct, spacelike_kernel, QuotientSpace, RegionError,
};
pub use relation::{
    causality, check_causal_properties, chronology, chronology_eps, hull, is_generating,
    CausalReport, GeneratingReport, Relation, RelationError, RelationKind,
};
pub use seq::{truncation, SeqError, SequencedSpace, Truncation};
pub use space::{
    boundaries, validate_axioms, AxiomReport, Boundaries, Check, FiniteLorentzSpace, SpaceError,
    DEFAULT_TOL,
};
pub use timefn::{
    affine_normalize, time_function, time_function_family, TimeFunction, TimeFunctionFamily,
    TimefnError,
};
pub use timesep::{from_time_separation, to_time_separation, TimeSepError, TimeSeparation};
