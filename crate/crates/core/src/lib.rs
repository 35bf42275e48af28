//! Intersection homology and blown-up intersection cohomology of filtered
//! simplicial complexes, computed exactly over `Z` and `F_p`.

pub mod algebra;
pub mod blowup;
pub mod chains;
pub mod complex;
pub mod corpus;
pub mod extint;
pub mod products;
pub mod subdivision;
