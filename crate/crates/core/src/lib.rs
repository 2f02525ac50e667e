//! A generic engine for axiomatic rewriting systems.
//!
//! Rewriting paths are rewritten by oriented permutation tiles. The engine
//! normalises paths to a canonical standard form, decides permutation
//! equivalence, splits paths into external and internal parts, and computes
//! cones of head-rewriting paths. Two instances ship with it: the
//! λ-calculus ([`lambda`]) and first-order term rewriting with overlapping
//! rules ([`trs`]).

pub mod analysis;
pub mod ancestor;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod lambda;
pub mod memo;
pub mod oracle;
pub mod path;
pub mod serial;
pub mod system;
pub mod tile;
pub mod trace;
pub mod trs;

pub use ancestor::AncestorFunction;
pub use engine::{CanonicalStandardForm, EngineConfig, TileSite};
pub use error::{ArsError, Result};
pub use path::{compose_paths, RedexStep, RewritingPath};
pub use system::{OrientationPolicy, Relation, Residuals, RewritingSystem};
pub use tile::{PermutationTile, TileApplication};
pub use trace::StandardisationTrace;
