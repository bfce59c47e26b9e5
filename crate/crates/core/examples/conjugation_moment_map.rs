//! Moment map of the conjugation action on matrices and a finite-difference check of
//! the Kempf-Ness gradient.

use nalgebra::DMatrix;
use num_complex::Complex64;
use torus_strata::kempf_ness::{hermitian_traceless_basis, kn_conjugation_eval, moment_map_conjugation};

fn main() -> torus_strata::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let phi = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.5), c(2.0, 0.0), c(0.0, 0.0)]);
    let mu = moment_map_conjugation(&phi)?;
    println!("moment map:\n{mu:.4}");

    let g = DMatrix::from_element(2, 2, c(0.0, 0.0));
    let eval = kn_conjugation_eval(&phi, &g)?;
    let h = 1e-5;
    for v in hermitian_traceless_basis(2) {
        let plus = kn_conjugation_eval(&phi, &(&g + &v * c(h, 0.0)))?.value;
        let minus = kn_conjugation_eval(&phi, &(&g - &v * c(h, 0.0)))?.value;
        println!(
            "direction pairing {:+.6}, finite difference {:+.6}",
            eval.pairing(&v)?,
            (plus - minus) / (2.0 * h)
        );
    }
    Ok(())
}
