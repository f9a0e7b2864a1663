//! Finite lattices, set-valued monotone maps, and the fixed-point structure
//! they induce, plus exact-rational supermodular games solved through both a
//! brute-force route and a best-response fixed-point route.
//!
//! Everything here is exact and deterministic: orders are explicit boolean
//! matrices, bounds come from precomputed tables, payoffs are rationals, and
//! the randomized suites derive every trial from a seeded shift-register
//! stream so reports reproduce byte for byte.

mod bits;

pub mod correspondence;
pub mod doc;
pub mod fixpoint;
pub mod game;
pub mod generate;
pub mod lattice;
pub mod poset;
pub mod report;
pub mod rng;
pub mod subset;
pub mod suite;

pub use correspondence::{is_ascending, is_v_ascending, AscendingReport, Correspondence, CorrespondenceError};
pub use doc::{CorrespondenceDoc, DocError, GameDoc, LatticeDoc, LatticeRef};
pub use fixpoint::{
    check_theorem_hypotheses, fixed_points_brute, greatest_fixed_point, induced_complete,
    least_fixed_point_via_min_selection, least_fixed_point_via_prefixed_points, sup_of_fixed_subset,
    verify_fix_complete, FixTheorem, FixedPointSet, LfpMethod, SupVariant,
};
pub use game::{
    affine_transformed, aggregate_argmax, build_game, check_increasing_differences,
    check_supermodular, format_rational, gen_game, nash_brute, nash_via_fixpoint, parse_rational,
    run_game_suite, topkis_box_game, verify_nash_lattice, EquilibriumSet, Game, GameError,
    GameGenConfig, GameSuiteReport, Rational,
};
pub use generate::{gen_correspondence, gen_lattice, GenError, GeneratorConfig, LatticeStrategy, TargetClass, DEFAULT_SEED};
pub use lattice::{FiniteLattice, SubsetView};
pub use poset::{is_join_complete, verify_join_complete_lemma, BoundKind, OrderError, Poset};
pub use report::{CheckReport, Direction, TheoremOutcome};
pub use subset::{is_chain_subcomplete, is_subcomplete, is_sublattice, veinott_check};
pub use suite::{
    generate_trial, run_theorem_suite, search_counterexample, CounterexampleWitness, DroppedHypothesis,
    InstanceWitness, TrialReport,
};
