//! Resolution graphs of a maximal singularity: path counts, log
//! Noether-Fano inequalities, the path count inequality and its linear
//! minimisation, with exhaustive enumeration of small graphs.

mod graph;
mod nf;
mod simplex;

pub use graph::{
    enumerate_graphs, path_counts, validate_as, validate_graph, GraphClass, GraphIter, PathCounts, ResolutionGraph,
    Validation, MAX_ENUMERATION_N,
};
pub use nf::{
    nf_evaluate, nf_log_inequality, section54_chain_check, ChainCheck, ChainOutcome, ChainReport, NfInstance, NfReport,
};
pub use simplex::{
    prop52_check, prop52_scan, simplex_min, simplex_scan, Distinguished, Prop52, ScanReport, ScanRow, SimplexReport,
    SimplexScan, Vertex,
};
