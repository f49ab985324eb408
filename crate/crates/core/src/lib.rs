//! Invariants of mixed and supermixed quiver representations: doubled
//! quivers and closed paths, exact polynomial arithmetic, generators and
//! multilinear invariants, a Lie algebra oracle, and the reduction of
//! supermixed spaces to mixed ones.

pub mod algebra;
pub mod invariant;
pub mod oracle;
pub mod perm;
pub mod quiver;
pub mod supermixed;
pub mod words;
