//! coqkit: exact computational tools for cyclically ordered quivers.
//!
//! A *cyclically ordered quiver* (COQ) is a 2-acyclic quiver together with a
//! cyclic ordering of its vertices. This crate implements, in exact integer
//! and rational arithmetic:
//!
//! - quiver mutation and structural predicates ([`quiver`]);
//! - cyclic orderings, winding numbers, wiggles, and the reconstruction of
//!   orderings from prescribed winding numbers ([`cyclic`], [`ordering`]);
//! - proper vertices, proper mutations, and total-properness verification
//!   ([`proper`]);
//! - unipotent companions and their congruence invariants: cosquares,
//!   reciprocal characteristic polynomials, polynomial minor lattices,
//!   Frobenius forms, and explicit congruence witnesses ([`invariants`]);
//! - a signed braid group action on unipotent companions and on linearly
//!   ordered quivers ([`braid`]);
//! - breadth-first exploration of mutation classes, proper mutation classes,
//!   forkless parts, and invariant collision scans ([`explore`]).

pub mod braid;
pub mod cyclic;
pub mod error;
pub mod explore;
pub mod graph;
pub mod invariants;
pub mod lp;
pub mod matrix;
pub mod ordering;
pub mod poly;
pub mod proper;
pub mod quiver;

pub use cyclic::{Coq, CyclicOrdering, WindingSignature, Wiggle};
pub use error::{Error, Result};
pub use graph::{Cycle, SimpleGraph, DEFAULT_CYCLE_CAP};
pub use matrix::IMat;
pub use poly::IntPoly;
pub use quiver::Quiver;
