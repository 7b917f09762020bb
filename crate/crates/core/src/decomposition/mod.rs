//! Orientations, P- and F-decompositions, independence properties,
//! subnetwork types and the counting bounds built on them.

mod analysis;
mod bounds;
mod fundamental;
mod orientation;
mod partition;

use thiserror::Error;

pub use analysis::{analyze_partition, classify_type, o_decomposition, ClassReport, DecompositionReport, SubnetworkType};
pub use bounds::{
    bounds_report, evaluate_bounds, multistationarity_precheck, BoundCheck, BoundStatus, BoundsInput, Precheck,
};
pub use fundamental::{
    f_decomposition, f_decomposition_with, kernel_dimension, p_decomposition, p_partition_from_kernel,
};
pub use orientation::{
    default_orientation, enumerate_orientations, l_o_matrix, orientation_count, Orientation,
};
pub use partition::{
    is_refinement, linkage_partition, parse_partition, species_partition, PartitionKind, ReactionPartition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("{r_rev} reversible pairs give more orientations than the cap of {cap}")]
    TooManyOrientations { r_rev: usize, cap: u128 },
    #[error("unknown reaction {0}")]
    UnknownReaction(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("partitions cover different reaction sets")]
    GroundSetMismatch,
    #[error("class {class:?} is neither linearly independent nor minimally dependent")]
    Trichotomy { class: Vec<String> },
    #[error("kinetics are not reactant-determined; apply a CF-RI+ transform first")]
    NotReactantDetermined,
}
