//! Sufficient conditions, partition witnesses, vertex identification and
//! structural predicates.

mod bounds;
mod identify;
mod structure;
mod witness;

pub use bounds::{
    all_bounds, degree_bound, handshake_min_degree, lll_incidence_bound, lll_size_bound,
    max_edge_incidence, BoundReport, Comparison, Conclusion, EPSILON,
};
pub use identify::{identify, Identification};
pub use structure::{
    contains_k533, is_connected, is_minimal_uncolorable, is_two_edge_connected, reduction_applies,
    MinimalityCertificate,
};
pub use witness::{
    complement_pair_witness, few_parts_witness, partition_witness, singleton_part_witness,
    PartitionCheck,
};
