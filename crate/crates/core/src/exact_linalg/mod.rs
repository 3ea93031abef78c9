//! Exact arithmetic over Q and GF(p): matrices, Kronecker products, rank
//! factorization and generalized inverses.

mod field;
mod ginverse;
mod matrix;

pub use field::FieldSpec;
pub use ginverse::{
    enumerate_ginverses, inner_inverses, rank_factorization, reflexive_ginverse, solve_affine,
    AffineSolution, DEFAULT_SOLUTION_CAP,
};
pub use matrix::Matrix;
