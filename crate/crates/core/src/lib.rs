pub mod checks;
pub mod exactgeom;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod planar;
pub mod polytope;
pub mod statespace;
