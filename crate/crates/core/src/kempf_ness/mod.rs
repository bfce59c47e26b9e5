//! The Kempf-Ness functional: torus representations and matrix conjugation.

mod conjugation;
mod torus;

pub use conjugation::{
    hermitian_traceless_basis, kn_conjugation_eval, moment_map_conjugation, CMat,
    ConjugationEval,
};
pub use torus::{
    kn_eval, kn_minimize, KnEval, KnProblem, KnResult, KnStatus, DEFAULT_TOL, MAX_ITERATIONS,
};
