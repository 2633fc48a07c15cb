pub mod linalg;
pub mod polytope;
pub mod cayley;
pub mod geometric;
pub mod groebner;
pub mod algebraic;
pub mod harness;
