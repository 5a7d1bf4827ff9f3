//! Bipartite degree-sequence realization over degree intervals.
//!
//! Given two interval sequences `(L1; L2)` prescribing per-vertex degree
//! ranges on the two sides of a bipartite graph, this crate decides and
//! constructs realizations of concrete degree pairs, evaluates
//! sufficient/necessary/exact conditions for *every* valid pair inside the
//! intervals to be bigraphic ("forcibly bigraphic"), constructs non-bigraphic
//! witness pairs when the necessary condition fails, and cross-validates all
//! of those criteria against an exhaustive brute-force oracle at desk scale.

#![forbid(unsafe_code)]

pub mod cli;
pub mod gale_ryser;
pub mod interval_criteria;
pub mod oracle;
pub mod report;
pub mod sums;
pub mod types;

pub use gale_ryser::{is_bigraphic, realize, BipartiteRealization, NotBigraphic};
pub use interval_criteria::{
    check_exact, check_existence, check_necessary, check_sufficient, necessity_witness,
    ConstructionTag, ExactReport, NotApplicable, Witness, WitnessError,
};
pub use oracle::{
    brute_forcibly, enumerate_pairs, gen_instance, validate, BudgetExceeded, Finding, ForciblyKind,
    ForciblyVerdict, GenMode, GroundTruth, PairEnumerator, Predictions, TheoremTag,
    ValidationRecord,
};
pub use report::{CheckReport, Family, SeqTag, SortPerm, Verdict, Violation};
pub use sums::{min_sum_prefixes, prefix_sums_desc, sort_desc_with_perm, sum_min};
pub use types::{DegreePair, DomainError, IntervalPair, IntervalSequence, MAX_LEN, MAX_VALUE};
