//! Hypergeometric monodromy triples over finite fields and the classification
//! of the group they generate.

mod bfs;
mod classify;
mod forms;
mod goursat;
mod triple;

pub use bfs::{bfs_closure, bfs_group_order, bfs_product_order, BfsOutcome};
pub use classify::{classify_image, Certificate, ImageClassification, Method, Verdict, DEFAULT_BFS_CAP};
pub use forms::{
    absolutely_irreducible, invariant_bilinear_form, invariant_sesquilinear_form, trace_field, BilinearForm, FormKind,
    SesquilinearForm, TraceField,
};
pub use goursat::{product_goursat_check, psl_order, sl_order, GoursatVerdict, ALTERNATING_COINCIDENCES};
pub use triple::{
    build_companion_pair, build_integral_pair, verify_local_data, LocalCheck, LocalDataReport, MonodromyTriple,
};
