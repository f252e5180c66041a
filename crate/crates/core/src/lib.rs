//! Exact computation of h(G), the number of strictly increasing chains of
//! subgroups ending at G, for small finite groups given by Cayley tables.
//!
//! h(G) equals the number of distinct fuzzy subgroups of G up to the usual
//! level-set equivalence, which is what makes the count worth cross-checking:
//! the published closed forms for several dihedral and abelian 2-group
//! families disagree with each other and with the lattice itself. This crate
//! computes the lattice and the count exactly and evaluates the published
//! formulas as printed, so the disagreements become reportable findings
//! instead of folklore.
//!
//! The pipeline: parse a spec string like `"D16 x C16"` ([`parse_spec`]),
//! realize it as a Cayley table ([`realize`]), enumerate the full subgroup
//! lattice ([`enumerate_subgroups`]), then count chains by dynamic
//! programming over the lattice, by the inclusion-exclusion recurrence over
//! maximal subgroups, or both ([`fuzzy_subgroup_count`]).

mod bitset;
mod chains;
mod error;
pub mod fixtures;
pub mod formulas;
mod group;
mod lattice;
mod spec;

pub use bitset::SubgroupSet;
pub use chains::{
    count_chains_dp, count_chains_ie, fuzzy_subgroup_count, ChainCount, CountMethod, CountOutcome,
};
pub use error::{Error, Result};
pub use group::Group;
pub use lattice::{closure, enumerate_subgroups, LatticeDump, SubgroupLattice};
pub use spec::{canonicalize, parse_spec, realize, realize_spec, Factor, Family, GroupExpr};

/// Version stamp recorded in caches and reports; bump on any change that can
/// alter a computed value.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Resource caps. Everything here guards memory or runtime, not correctness;
/// hitting a cap is a loud error, never a wrong answer.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest group order a spec may realize (Cayley table is order^2 entries).
    pub max_order: usize,
    /// Subgroup count at which lattice enumeration gives up.
    pub max_subgroups: usize,
    /// Most maximal subgroups the inclusion-exclusion expansion will accept
    /// (the expansion walks 2^t subsets).
    pub max_ie_maximals: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 1024,
            max_subgroups: 100_000,
            max_ie_maximals: 20,
        }
    }
}
