//! Fiberwise analysis of finitely generated invariant subspaces.
//!
//! The library represents a finitely generated multiplication- or
//! translation-invariant space by the values of its generators on a weighted
//! fiber grid. Global questions — supremum cosine angles, closedness of
//! sums, frame bounds, sampling-operator injectivity — reduce to per-fiber
//! linear algebra, and every fiberwise answer can be cross-validated against
//! a dense brute-force oracle on a finite cyclic group.

pub mod error;
pub mod fiber;
pub mod gramian;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod subspace;
pub mod transforms;

pub use error::{Error, Result};
pub use fiber::{AngleProfile, ClosednessReport, FiberAngleRow, FiberGrid, FiberedGeneratorSet};
pub use gramian::{GeneratorFiber, GramianKind, GramianMatrix};
pub use sampling::{InjectivityReport, SamplingInstance, UnionReport, UnionVerdict};
pub use subspace::{RankTolerance, Subspace};
pub use transforms::{FiniteGroupPair, FourierProfile, ZakArray};
