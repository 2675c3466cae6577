//! Construction, verification and census of cusped hyperbolic 3-manifolds that
//! bound geometrically, built from right-angled polytopes by colorings and
//! graph-prescribed gluings.

pub mod blocks;
pub mod census;
pub mod complex;
pub mod coxeter;
pub mod geometry;
pub mod graphs;
pub mod kernel;
