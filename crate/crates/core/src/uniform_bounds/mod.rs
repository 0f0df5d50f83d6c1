//! Bounds on `k` for homogeneous systems `(C^d)^{⊗N}`.

pub mod alpha;
pub mod lp;
pub mod ranges;
pub mod recurrence;
pub mod tables;
pub mod verdict;

pub use alpha::{
    alpha_closed_form, alpha_oracle, alpha_oracle_vector, alpha_vector, first_sign_violation,
    AlphaCoefficient,
};
pub use lp::{shadow_lp_bound, shadow_lp_feasible};
pub use ranges::{
    conjecture_formula, conjecture_scan, qutrit_range_formula, qutrit_sign_facts, ConjectureRow,
    SignFact,
};
pub use recurrence::{bundled_specs, verify_recurrence, RecurrenceReport, RecurrenceSpec};
pub use tables::{compress, diff_bound_table, BoundTable, BoundTableDiff, RangeCell};
pub use verdict::{
    bound_range, k_upper_bound, qubit_shadow_bound, scott_condition, AmeNonexistenceTable,
    BoundVerdict, Provenance,
};
