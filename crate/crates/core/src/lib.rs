//! Linear constraint systems over F₂, their colored graphs and solution
//! groups, and magic-unitary certificates built from group representations.
//!
//! The pipeline runs `f2` → `graphs` → `decolor` for graph constructions,
//! `fpgroups` → `reps` → `qcert` for certificates, and `graphiso` for
//! classical isomorphism and automorphism checks.

pub mod decolor;
pub mod f2;
pub mod graphs;
pub mod fpgroups;
pub mod reps;
pub mod qcert;
pub mod graphiso;
