use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

/// `[phi, phi^dagger]`.
pub fn moment_map_conjugation(phi: &CMat) -> Result<CMat> {
    square(phi)?;
    let adj = phi.adjoint();
    Ok(phi * &adj - &adj * phi)
}

/// Value of `g -> ||e^g phi e^{-g}||^2` at a hermitian `g`, with what is needed to pair
/// its derivative against directions.
#[derive(Debug, Clone)]
pub struct ConjugationEval {
    pub value: f64,
    g: CMat,
    /// `[phi, A^{-1} phi^dagger A] A^{-1}` with `A = e^{2g}`.
    kernel: CMat,
}

impl ConjugationEval {
    /// Directional derivative along a hermitian direction `v`:
    /// `Re tr([phi, A^{-1} phi^dagger A] A^{-1} v_g)` where `v_g = d/dt e^{2(g + t v)}`.
    pub fn pairing(&self, v: &CMat) -> Result<f64> {
        let n = self.g.nrows();
        if v.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.nrows(),
            });
        }
        let vg = exp_derivative(&(&self.g * Complex64::new(2.0, 0.0)), &(v * Complex64::new(2.0, 0.0)));
        Ok((&self.kernel * vg).trace().re)
    }

    /// The traceless hermitian `G` with `pairing(v) = Re tr(G v)` for every traceless
    /// hermitian `v`.
    pub fn gradient(&self) -> Result<CMat> {
        let n = self.g.nrows();
        let mut out = CMat::zeros(n, n);
        for e in hermitian_traceless_basis(n) {
            out += &e * Complex64::new(self.pairing(&e)?, 0.0);
        }
        Ok(out)
    }
}

/// Evaluates the conjugation Kempf-Ness functional at `g`.
pub fn kn_conjugation_eval(phi: &CMat, g: &CMat) -> Result<ConjugationEval> {
    let n = square(phi)?;
    if g.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.nrows(),
        });
    }
    check_hermitian_traceless(g)?;
    let two = Complex64::new(2.0, 0.0);
    let a = (g * two).exp();
    let a_inv = (g * -two).exp();
    let conj = &a_inv * phi.adjoint() * &a;
    let kernel = (phi * &conj - &conj * phi) * &a_inv;
    // ||e^g phi e^{-g}||^2 = tr(phi A^{-1} phi^dagger A)
    let value = (phi * &conj).trace().re;
    Ok(ConjugationEval {
        value,
        g: g.clone(),
        kernel,
    })
}

/// Orthonormal basis of traceless hermitian `n x n` matrices under `Re tr(XY)`.
pub fn hermitian_traceless_basis(n: usize) -> Vec<CMat> {
    let mut out = Vec::new();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            let mut re = CMat::zeros(n, n);
            re[(i, j)] = Complex64::new(s, 0.0);
            re[(j, i)] = Complex64::new(s, 0.0);
            out.push(re);
            let mut im = CMat::zeros(n, n);
            im[(i, j)] = Complex64::new(0.0, -s);
            im[(j, i)] = Complex64::new(0.0, s);
            out.push(im);
        }
    }
    for k in 1..n {
        // diag(1, ..., 1, -k, 0, ...) normalized
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut d = CMat::zeros(n, n);
        for i in 0..k {
            d[(i, i)] = Complex64::new(1.0 / norm, 0.0);
        }
        d[(k, k)] = Complex64::new(-(k as f64) / norm, 0.0);
        out.push(d);
    }
    out
}

/// `d/dt e^{x + t y}` at `t = 0`, read off the upper right block of the exponential of
/// `[[x, y], [0, x]]`.
fn exp_derivative(x: &CMat, y: &CMat) -> CMat {
    let n = x.nrows();
    let mut big = CMat::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(x);
    big.view_mut((n, n), (n, n)).copy_from(x);
    big.view_mut((0, n), (n, n)).copy_from(y);
    big.exp().view((0, n), (n, n)).into_owned()
}

fn square(m: &CMat) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    Ok(m.nrows())
}

fn check_hermitian_traceless(g: &CMat) -> Result<()> {
    let scale = 1.0 + g.norm();
    if (g - g.adjoint()).norm() > 1e-12 * scale || g.trace().norm() > 1e-12 * scale {
        return Err(Error::InvalidArgument(
            "direction must be traceless hermitian".into(),
        ));
    }
    Ok(())
}
