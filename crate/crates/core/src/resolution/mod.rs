//! Clusters of infinitely near points and plane curve germ invariants.

pub mod cluster;
pub mod colength;
pub mod germ;

pub use cluster::{euclid_multiplicities, foliation_cluster, Cluster, InfinitelyNearPoint};
pub use germ::{
    equisingular, germ_milnor, germ_mult_sequence, germ_tjurina, is_nodal, type_check_s, type_check_s_along, Germ,
    Nodal, TypeCheck,
};
