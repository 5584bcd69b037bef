//! Flag simplicial complexes and the combinatorics of their h-polynomials:
//! f/h/gamma vectors, stellar edge moves, homology-based Cohen-Macaulay
//! certification, double-suspension remainder decompositions and Boolean
//! decomposition search.

pub mod boolean;
pub mod canon;
pub mod catalog;
pub mod cm;
pub mod complex;
pub mod decomposition;
pub mod homology;
pub mod moves;
pub mod rng;
pub mod search;
pub mod vectors;
pub mod verify;

pub use complex::{Face, Graph, SimplicialComplex, VertexId};
pub use vectors::{GammaVector, Polynomial};
