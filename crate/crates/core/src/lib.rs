//! Exact coloring of mixed hypergraphs and bi-hypergraphs: a backtracking
//! decision procedure, named constructions, structural analysis, and
//! isomorphism-free enumeration with persistent verdicts.

pub mod analysis;
pub mod bitset;
pub mod coloring;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod random;
pub mod solver;

pub use bitset::VertexSet;
pub use coloring::{is_proper, is_properly_colored_c, is_properly_colored_d, Coloring};
pub use constructions::{
    make_fano, make_hk, make_knlm, make_muc, ConstructionSpec, Family,
};
pub use error::{Error, Result};
pub use hypergraph::{BiHypergraph, Edge, MixedHypergraph};
pub use solver::{
    brute_force_oracle, decide_colorable, enumerate_proper_colorings, upper_chromatic_number,
    ChiBar, Status, Verdict,
};
