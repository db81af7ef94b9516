//! Exact genus-0 Gromov–Witten numbers of projective spaces and the curve
//! counts assembled from them: cuspidal curves in `P^n`, triple-pointed and
//! tacnodal curves in `P^2` and `P^3`.
//!
//! All computation goes through an [`Engine`], which owns the memo tables.

mod descendant;
mod engine;
mod error;
mod exact;
mod node;
mod primary;
mod singular;

pub use descendant::{jfunction_onepoint, TrrPair};
pub use engine::{Engine, EngineStats};
pub use error::{Error, Result};
pub use exact::{
    binomial, constraint_distributions, positive_compositions, ConstraintTuple, ExactScalar,
    InvariantKey, Separation,
};
pub use node::{
    diagonal_weights, symmetric_expand, MulticomponentSpace, NodeClassSpec, PlanarAggregates,
    PsiFlavor,
};
pub use primary::{dimension_gate, WdvvPivot};
pub use singular::{
    CountQuery, CountResult, CuspRoute, LinearClass, MergeCoefficient, NodeFamilyClass,
    PlanarLemma, Singularity,
};
