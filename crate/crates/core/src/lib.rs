//! Fast Gelfand-Tsetlin Fourier transform on the Johnson graph `J(n, k)`.
//!
//! The change of basis from delta functions to the Gelfand-Tsetlin basis of
//! the functions on k-subsets factors into `n - 1` sparse orthogonal matrices
//! with at most two nonzeros per column. This crate builds those factors
//! ([`planner`]), applies them ([`transform`]) and exposes the combinatorics
//! they are indexed by ([`word`], [`tableau`], [`label`], [`rs`]).

pub mod dims;
pub mod error;
pub mod format;
pub mod label;
pub mod plan_io;
pub mod planner;
pub mod rs;
pub mod tableau;
pub mod transform;
pub mod verify;
pub mod word;

pub use dims::{binomial, irrep_dim, MemBudget, ProblemDims};
pub use error::{Error, Result};
pub use label::{label_index, related, BasisLabel, Frame, LevelIndex};
pub use plan_io::{load_plan, plan_from_json, plan_to_json, save_plan};
pub use planner::{build_plan, build_plan_with, group_blocks, predecessors, Block, FactorPlan, PlannerConfig};
pub use rs::{rs_path, rs_step, RsState};
pub use tableau::{admissible_shapes, enumerate_tableaux, Tableau, TwoRowShape};
pub use transform::{apply_forward, apply_inverse, project, weights, FunctionVector, GtVector, OpCounter, Tolerances};
pub use word::{enumerate_points, enumerate_tails, johnson_distance, subset_of_word, word_of_subset, Letter, Word};
