//! Exact rational geometry: linear algebra, linear programming, polytopes, lattices.

mod lattice;
mod linalg;
mod lp;
mod polytope;

pub use lattice::{saturated_kernel, Lattice};
pub use linalg::{
    affine_dimension, format_q, parse_q, primitive_integer, q, q_to_f64, q_to_i64, qr, QMat,
    QVec, Q,
};
pub use lp::{LinearProgram, LpOutcome, Relation, VarKind};
pub use polytope::{solve_mixed_system, HullPosition, PolytopeQ, RayInterval, RaySlice};
