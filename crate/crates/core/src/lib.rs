//! Exact diameter-bound machinery for polytopes and simplicial complexes.

pub mod bounds;
pub mod cli;
pub mod exact;
pub mod geometry;
pub mod tables;
pub mod verify;
