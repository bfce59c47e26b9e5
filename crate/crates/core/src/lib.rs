pub mod error;
pub mod exact_geometry;
pub mod graded_kuranishi;
pub mod kempf_ness;
pub mod problem;
pub mod shb_model;
pub mod stability;
pub mod stratify;
pub mod torus_rep;

pub use error::{Error, Result};
