/// Work limits for the exhaustive operations.
///
/// Every brute-force routine checks its cost against one of these fields before
/// starting and fails with `GuardExceeded` instead of running for hours.
/// [`Limits::unlimited`] lifts the configurable limits; structural caps (word-sized
/// masks for enumeration, `k <= 64`) still apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest union of a collection searched exhaustively for a separator/splitter.
    pub max_union: usize,
    /// Largest ground set enumerated as a full power set (`2^k` sweeps).
    pub max_power_set_k: usize,
    /// Budget of predicate evaluations for collection enumerations.
    pub max_evaluations: u128,
    /// Ground-set limits for `is_n_splitting` with n = 1, 2, 3.
    pub max_nsplit_k: [usize; 3],
    /// Largest cube dimension for canonical forms.
    pub max_canonical_dim: usize,
    /// Largest cube dimension for orbit censuses.
    pub max_census_dim: usize,
    /// Largest ground set on which explicit counterexample families are materialized.
    pub max_materialize_k: usize,
    /// Exact-search limits: separating, n-separating, splitting, n-splitting.
    pub max_search_k_sep: usize,
    pub max_search_k_nsep: usize,
    pub max_search_k_split: usize,
    pub max_search_k_nsplit: usize,
    /// Largest number of tasks tracked by the randomized builders.
    pub max_tasks: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_union: 24,
            max_power_set_k: 24,
            max_evaluations: 100_000_000,
            max_nsplit_k: [20, 10, 6],
            max_canonical_dim: 5,
            max_census_dim: 4,
            max_materialize_k: 12,
            max_search_k_sep: 10,
            max_search_k_nsep: 8,
            max_search_k_split: 8,
            max_search_k_nsplit: 6,
            max_tasks: 20_000_000,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_union: 63,
            max_power_set_k: 63,
            max_evaluations: u128::MAX,
            max_nsplit_k: [63, 63, 63],
            max_canonical_dim: 12,
            max_census_dim: 12,
            max_materialize_k: 63,
            max_search_k_sep: 63,
            max_search_k_nsep: 63,
            max_search_k_split: 63,
            max_search_k_nsplit: 63,
            max_tasks: u128::MAX,
        }
    }
}
