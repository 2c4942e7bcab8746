//! Exact products of two dihedral groups of odd degree.

pub mod classify;
pub mod group;
pub mod oracle;
pub mod theorem;
