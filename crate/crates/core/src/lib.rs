//! Combinatorial and topological invariants of moduli spaces of geometric
//! graphs: rigid isotopy classes on the line, exact generating-function
//! counts, Euler-characteristic recounts through the discriminant, Poincare
//! polynomials and Floer numbers for small graphs, quadratic-form index
//! decompositions, asymptotic bounds, and explicit families of pairwise
//! non-isomorphic geometric graphs.

pub mod bounds;
pub mod euler;
pub mod family;
pub mod graphs;
pub mod line;
pub mod poincare;
pub mod quadrics;
pub mod realize;
pub mod series;
pub mod verify;
