//! Exact computations in graph operads and graph complexes.

pub mod cohomology;
pub mod complexes;
pub mod ger;
pub mod gra;
pub mod graphs;
pub mod qlinalg;
