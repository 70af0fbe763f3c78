//! Finite-group computation engine for prime-partition structure.
//!
//! Groups are small permutation groups held as full Cayley tables. On top of
//! that sit the subgroup lattice, Hall subgroups relative to a partition of
//! the primes, dispersive normal towers, subnormality (ordinary and relative
//! to a partition), and a sweep harness that checks structural claims across
//! a whole catalog of groups and reports any counterexample.

pub mod analysis;
pub mod bitset;
pub mod catalog;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod properties;
pub mod sigma;
pub mod subnormal;
pub mod sweep;

pub use analysis::{
    analyze_report, CaseAnalysis, ChainReport, CheckReport, DispersiveWitnessReport, Flags,
    TheoremStatus, VerdictReport, WitnessBundle,
};
pub use bitset::BitSet;
pub use catalog::{
    builtin_catalog, load_catalog, prime_partitions, realize_entry, resolve_entry, CatalogEntry,
    LoadedCatalog,
};
pub use group::{
    classify_p_group, core_in, direct_product, generated_subgroup, group_from_cycles,
    group_from_generators, is_nilpotent, is_normal_in, is_permutable, make_family, product_set,
    quotient_group, subgroup_group, CayleyGroup, ElementSet, NamedFamilySpec, PGroupClass,
};
pub use lattice::{
    enumerate_subgroups, enumerate_subgroups_with_cap, is_soluble, ChiefSeries, SubgroupLattice,
};
pub use perm::{parse_permutation, Permutation};
pub use properties::{group_suite, partition_suite, GroupStudy, QuotientStudy};
pub use sigma::{
    complete_hall_sets, hall_subgroups, has_sylow_tower, is_sigma_dispersive, is_sigma_group,
    is_sigma_nilpotent, is_sigma_soluble, parse_partition, sigma_bases, verify_dispersive_witness,
    ClassId, DispersiveWitness, HallSet, SigmaPartition,
};
pub use subnormal::{
    is_irreducible_pair, is_subnormal, normal_closure, verify_subnormal_witness, StepKind,
    SubnormalWitness, SubnormalityContext,
};
pub use sweep::{run_sweep, PartitionScope, Scope, SweepConfig, SweepOutcome};

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("bad permutation: {0}")]
    BadPermutation(String),

    #[error("bad group construction: {0}")]
    BadGroup(String),

    #[error("mismatched groups: {0}")]
    GroupMismatch(String),

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("group too large: order {order} exceeds cap {cap} for {context}")]
    TooLarge {
        order: u64,
        cap: u64,
        context: &'static str,
    },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("bad argument: {0}")]
    BadArg(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
