//! clone-forge: a finite universal algebra engine.
//!
//! Computes truncated clones of finite algebras, centralizer (commutant)
//! clones, commutation of algebra pairs, and the classification lattice of
//! commutative / contracommutative / saturated / balanced algebras, with
//! exact counterexample witnesses throughout. A built-in library provides
//! module, affine and pointed-module presentations over small rigs and the
//! semilattice family, and a batch CLI drives everything with deterministic
//! reports.

pub mod clone;
pub mod commutant;
pub mod document;
pub mod error;
pub mod library;
pub mod ops;
pub mod pairs;
pub mod report;
pub mod selfcheck;

pub use clone::{
    clone_contains, clone_equal, clone_equal_witness, clone_subset, clone_subset_witness,
    generate_clone, presentation_from_clone, reduce_generators, AlgebraPresentation,
    ArityProfile, DerivationTerm, GeneratedClone, LayerDiff, TruncatedClone, DEFAULT_OP_CAP,
};
pub use commutant::{
    algebras_commute, centralizer_layer, classify, commutant_clone, commute_check,
    double_commutant, Classification, Commutation, CommuteWitness, Strategy,
};
pub use error::{Error, Result};
pub use ops::{decode_tuple, encode_tuple, superpose, Carrier, Element, FiniteOp};
pub use pairs::{
    central_inclusion_check, lcom, make_bifold, pair_status, rcom, transport_bifold, AlgebraPair,
    CentralInclusionReport, PairStatus,
};
