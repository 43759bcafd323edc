//! Exact symbolic toolkit for the contact projective geometry of
//! sp(2n+2): operator realizations on polynomial-valued symplectic
//! spinors, singular vectors in generalized Verma modules, and the dual
//! equivariant differential operators, all over Q(i).

pub mod dual;
pub mod fischer;
pub mod liealg;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod singular;
pub mod verma;
pub mod weyl;
