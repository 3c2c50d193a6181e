//! Isomorph-free generation, canonical forms, parallel sweeps and the
//! persistent verdict store.

mod canon;
mod certificate;
mod orderly;
mod store;
mod sweep;

pub use canon::{
    canonical_form, canonical_labeling, content_hash, is_canonical, CanonicalForm,
    CANON_MAX_VERTICES,
};
pub use certificate::{m3_sweep_specs, verify_m3, Certificate, CertificateStatus, CertificateStep};
pub use orderly::OrderlyTree;
pub use store::{SweepMeta, VerdictRecord, VerdictStore, TOOL_VERSION};
pub use sweep::{
    binomial, enumerate_bihypergraphs, run_sweep, Filter, Predicate, SweepFailure, SweepSpec,
    SweepSummary,
};
