//! Lattice polytopes spanned by the signed columns of a regular matroid
//! representation.
//!
//! A full-rank integer matrix M whose maximal minors all lie in
//! {-1, 0, 1} represents a regular matroid; the convex hull of the
//! columns of [M | -M] is a reflexive, terminal, centrally symmetric
//! lattice polytope whose combinatorics is governed by the cuts and
//! flows of M. This crate computes:
//!
//! - cut and flow lattices, signed circuits, and bounded cut/flow
//!   enumeration ([`cuts`]),
//! - facets with certified normals, lattice point counts of the
//!   polytope and its polar, and the Ehrhart h*-vector and gamma-vector
//!   ([`polytope`]),
//! - the Graver basis of the doubled matrix, a squarefree Groebner
//!   basis of the toric ideal, and the induced unimodular triangulation
//!   ([`toric`]),
//! - explicit lattice equivalences between the polytopes of any two
//!   representations of the same matroid ([`equivalence`]).
//!
//! Matrices of graphs enter through [`matroid::Graph`]; the signed
//! incidence matrix of a connected graph is the standard source of
//! examples.

pub mod cuts;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod polytope;
pub mod toric;

pub use cuts::{SignedVector, VectorKind};
pub use equivalence::SignedPermutation;
pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use matroid::{Graph, RegularRep};
pub use polytope::{FacetCert, Polytope, Side};
pub use toric::{Binomial, MonomialOrder, Triangulation};
