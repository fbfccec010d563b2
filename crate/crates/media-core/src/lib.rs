//! Media: deterministic transition systems whose tokens come in reversing
//! pairs and whose states are connected by straight paths.
//!
//! The crate provides the core types ([`Medium`], [`Orientation`],
//! [`SetFamily`]), verification, example generators, reset sequences,
//! shortest paths and complements, closed-orientation testing and search,
//! black-box state enumeration, and brute-force reference oracles.

pub mod blackbox;
pub mod family;
pub mod generators;
pub mod io;
pub mod medium;
pub mod oracles;
pub mod orientations;
pub mod paths;
pub mod twosat;
pub mod verify;

pub use blackbox::{
    black_box_reset_sequence, set_family_oracle, wrap_explicit, BlackBoxError, BlackBoxMedium,
    OpaqueState, StateEnumerator,
};
pub use family::{
    from_well_graded_family, isomorphism_witness, positive_content_family, FamilyError, SetFamily,
};
pub use generators::{
    acyclic_orientation_medium, binary_tree_height_medium, binary_tree_medium,
    downward_closed_medium, independent_set_medium, permutation_medium,
    topological_ordering_medium, GeneratorError,
};
pub use io::{
    lengths_from_json, lengths_to_json, medium_from_json, medium_to_json, orientation_from_json,
    orientation_to_json, FormatError,
};
pub use medium::{
    ContentSet, LengthFunction, Medium, MediumError, MediumStats, Message, Orientation, State,
    Token, TokenTable,
};
pub use oracles::{
    brute_axiom_check, brute_closed_scan, brute_content, brute_distances, brute_is_closed,
    brute_shortest_reset,
};
pub use orientations::{
    canonical_message, find_closed_orientation, find_violating_triple, is_closed,
    positive_effective_count, violating_triple_by_subsequence, OrientationError, ViolatingTriple,
};
pub use paths::{
    all_complementary_pairs, all_pairs_shortest_paths, complement_of, content_dag,
    distances_to_state, reset_sequence, single_source_distances, straight_path, ApspTable,
    ResetResult, NO_TOKEN,
};
pub use twosat::{Lit, TwoSat};
pub use verify::{verify, VerifyReport, Violation};
