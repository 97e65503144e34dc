//! Squares of plane graphs: rotation-system embeddings, graph squares,
//! exact clique search, the triple characterization of big cliques in
//! squares, and the supporting degeneracy/coloring machinery.

pub mod big_clique;
pub mod clique_core;
pub mod generators;
pub mod plane_graph;
pub mod square_ops;
pub mod structure_checks;

pub use plane_graph::{CycleSpec, FaceWalk, PlaneGraph, PlaneGraphError, VertexId};
pub use square_ops::{square_of_plane, SimpleGraph};
