use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_geometry::{saturated_kernel, Lattice};
use crate::stability::{classify_weights, Certificate, Stability};
use crate::torus_rep::RepVector;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 500;

/// Kempf-Ness data of a vector in a torus representation: the effective weights and the
/// squared norms `||v_lambda||^2` of the corresponding weight components.
#[derive(Debug, Clone, PartialEq)]
pub struct KnProblem {
    rank: usize,
    weights: Vec<Vec<i64>>,
    norms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnEval {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnStatus {
    Converged,
    FlatDirections,
    Diverging,
    Failure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnResult {
    pub status: KnStatus,
    /// The minimizer orthogonal to the flat directions. For diverging problems, the
    /// starting point of the descent ray (the origin).
    pub minimizer: Vec<f64>,
    /// Minimum value; for diverging problems the limit along the descent ray.
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub flat_space: Option<Lattice>,
    /// Integer direction along which the functional decreases to its infimum without
    /// attaining it.
    pub descent_ray: Option<Vec<i64>>,
}

impl KnProblem {
    pub fn new(rank: usize, weights: Vec<Vec<i64>>, norms: Vec<f64>) -> Result<Self> {
        if weights.len() != norms.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                got: norms.len(),
            });
        }
        for w in &weights {
            if w.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: w.len(),
                });
            }
        }
        if norms.iter().any(|n| !(n.is_finite() && *n >= 0.0)) {
            return Err(Error::InvalidArgument(
                "squared norms must be finite and nonnegative".into(),
            ));
        }
        Ok(KnProblem {
            rank,
            weights,
            norms,
        })
    }

    pub fn from_vector(v: &RepVector) -> Self {
        let (weights, norms) = v.weight_norms().into_iter().unzip();
        KnProblem {
            rank: v.rep().rank(),
            weights,
            norms,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    fn effective_weights(&self) -> Vec<Vec<i64>> {
        let mut w: Vec<Vec<i64>> = self
            .weights
            .iter()
            .zip(&self.norms)
            .filter(|(_, n)| **n > 0.0)
            .map(|(w, _)| w.clone())
            .collect();
        w.sort();
        w.dedup();
        w
    }
}

/// `sum ||v_l||^2 e^{2<l,x>}` with its gradient and hessian.
pub fn kn_eval(p: &KnProblem, x: &[f64]) -> Result<KnEval> {
    if x.len() != p.rank {
        return Err(Error::DimensionMismatch {
            expected: p.rank,
            got: x.len(),
        });
    }
    let mut value = 0.0;
    let mut gradient = DVector::zeros(p.rank);
    let mut hessian = DMatrix::zeros(p.rank, p.rank);
    for (w, n) in p.weights.iter().zip(&p.norms) {
        let l = DVector::from_iterator(p.rank, w.iter().map(|&c| c as f64));
        let term = n * (2.0 * l.dot(&DVector::from_column_slice(x))).exp();
        value += term;
        gradient.axpy(2.0 * term, &l, 1.0);
        hessian.ger(4.0 * term, &l, &l, 1.0);
    }
    Ok(KnEval {
        value,
        gradient,
        hessian,
    })
}

/// Minimizes the Kempf-Ness functional.
///
/// The stability class decides the outcome first: non-polystable vectors get a
/// descent ray from the exact separating cocharacter, and only polystable ones are
/// minimized numerically, on the span of their weights.
pub fn kn_minimize(p: &KnProblem, tol: f64) -> Result<KnResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let weights = p.effective_weights();
    let class = classify_weights(p.rank, &weights)?;
    match class.class {
        Stability::Unstable | Stability::SemistableNotPolystable => {
            let Certificate::Destabilizing { cocharacter, .. } = class.certificate else {
                return Err(Error::Internal("missing destabilizing cocharacter".into()));
            };
            let ray: Vec<i64> = cocharacter.iter().map(|c| -c).collect();
            let (mut value, mut grad) = (0.0, DVector::zeros(p.rank));
            for (w, n) in p.weights.iter().zip(&p.norms) {
                if w.iter().zip(&ray).map(|(a, b)| a * b).sum::<i64>() == 0 {
                    value += n;
                    grad += DVector::from_iterator(p.rank, w.iter().map(|&c| 2.0 * n * c as f64));
                }
            }
            Ok(KnResult {
                status: KnStatus::Diverging,
                minimizer: vec![0.0; p.rank],
                value,
                gradient_norm: grad.norm(),
                iterations: 0,
                flat_space: None,
                descent_ray: Some(ray),
            })
        }
        Stability::Stable | Stability::PolystableNotStable => {
            let basis = span_basis(p.rank, &weights);
            let mut out = newton(p, &basis, tol)?;
            if class.class == Stability::PolystableNotStable {
                out.flat_space = Some(saturated_kernel(p.rank, &weights)?);
                if out.status == KnStatus::Converged {
                    out.status = KnStatus::FlatDirections;
                }
            }
            Ok(out)
        }
    }
}

/// Orthonormal basis (as columns) of the real span of the weights.
fn span_basis(rank: usize, weights: &[Vec<i64>]) -> DMatrix<f64> {
    if rank == 0 || weights.is_empty() {
        return DMatrix::zeros(rank, 0);
    }
    let m = DMatrix::from_fn(rank, weights.len(), |i, j| weights[j][i] as f64);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > smax * 1e-10)
        .collect();
    DMatrix::from_fn(rank, keep.len(), |i, j| u[(i, keep[j])])
}

/// Damped Newton on `z -> f(Bz)`, which is strictly convex when the restricted weights
/// contain the origin in their interior.
fn newton(p: &KnProblem, basis: &DMatrix<f64>, tol: f64) -> Result<KnResult> {
    let r = basis.ncols();
    let eval_z = |z: &DVector<f64>| -> Result<(f64, DVector<f64>, DMatrix<f64>)> {
        let x = basis * z;
        let e = kn_eval(p, x.as_slice())?;
        let g = basis.transpose() * &e.gradient;
        let h = basis.transpose() * &e.hessian * basis;
        Ok((e.value, g, h))
    };
    let mut z = DVector::zeros(r);
    let mut iterations = 0;
    loop {
        let (f, g, h) = eval_z(&z)?;
        let gnorm = (basis * &g).norm();
        if gnorm < tol {
            return Ok(KnResult {
                status: KnStatus::Converged,
                minimizer: (basis * &z).iter().copied().collect(),
                value: f,
                gradient_norm: gnorm,
                iterations,
                flat_space: None,
                descent_ray: None,
            });
        }
        if iterations == MAX_ITERATIONS {
            return Ok(failure(basis * &z, f, gnorm, iterations));
        }
        iterations += 1;
        let step = match h.clone().cholesky() {
            Some(c) => c.solve(&(-&g)),
            None => -&g,
        };
        let slope = g.dot(&step);
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-20 {
            let cand = &z + &step * t;
            let (fc, gc, _) = eval_z(&cand)?;
            // once values agree to rounding, judge the step by the gradient instead
            let flat = (f - fc).abs() <= 1e-12 * f.abs() && (basis * &gc).norm() < gnorm;
            if (fc < f && fc <= f + 1e-4 * t * slope) || flat {
                z = cand;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            // no representable decrease: accept only if a full Newton step is tiny
            let cand = &z + &step;
            if step.norm() <= 1e-14 * (1.0 + z.norm()) {
                z = cand;
            } else {
                return Ok(failure(basis * &z, f, gnorm, iterations));
            }
        }
    }
}

fn failure(x: DVector<f64>, value: f64, gradient_norm: f64, iterations: usize) -> KnResult {
    KnResult {
        status: KnStatus::Failure,
        minimizer: x.iter().copied().collect(),
        value,
        gradient_norm,
        iterations,
        flat_space: None,
        descent_ray: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(weights: &[i64], norms: &[f64]) -> KnProblem {
        KnProblem::new(1, weights.iter().map(|&w| vec![w]).collect(), norms.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let e = kn_eval(&problem(&[1, -1], &[1.0, 1.0]), &[0.0]).unwrap();
        assert_eq!(e.value, 2.0);
        assert_eq!(e.gradient[0], 0.0);
        assert_eq!(e.hessian[(0, 0)], 8.0);

        let x = -(2f64.ln()) / 2.0;
        let e = kn_eval(&problem(&[1, -1], &[4.0, 1.0]), &[x]).unwrap();
        assert!((e.value - 4.0).abs() < 1e-12);
        assert!(e.gradient[0].abs() < 1e-12);

        let flat = KnProblem::new(2, vec![vec![0, 0]], vec![3.0]).unwrap();
        let e = kn_eval(&flat, &[1.5, -0.5]).unwrap();
        assert_eq!(e.value, 3.0);
        assert_eq!(e.gradient.norm(), 0.0);
    }

    #[test]
    fn minimize_examples() {
        let r = kn_minimize(&problem(&[1, -1], &[4.0, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(r.status, KnStatus::Converged);
        assert!((r.minimizer[0] + 2f64.ln() / 2.0).abs() < 1e-8);
        assert!((r.value - 4.0).abs() < 1e-8);

        let r = kn_minimize(&problem(&[1, -1], &[1.0, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(r.status, KnStatus::Converged);
        assert_eq!(r.minimizer, vec![0.0]);
        assert_eq!(r.value, 2.0);

        let r = kn_minimize(&problem(&[1, 2], &[1.0, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(r.status, KnStatus::Diverging);
        assert_eq!(r.descent_ray, Some(vec![-1]));
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn polystable_reports_flat_directions() {
        let p = KnProblem::new(2, vec![vec![1, 0], vec![-1, 0]], vec![2.0, 8.0]).unwrap();
        let r = kn_minimize(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.status, KnStatus::FlatDirections);
        assert_eq!(r.flat_space.unwrap().basis(), &[vec![0, 1]]);
        // 2 e^{2x} + 8 e^{-2x} is minimal at e^{4x} = 4
        assert!((r.minimizer[0] - 4f64.ln() / 4.0).abs() < 1e-9);
        assert!(r.minimizer[1].abs() < 1e-12);
        assert!((r.value - 8.0).abs() < 1e-9);
    }

    #[test]
    fn semistable_diverges_to_face_value() {
        let p = KnProblem::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]], vec![1.0, 1.0, 5.0])
            .unwrap();
        let r = kn_minimize(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.status, KnStatus::Diverging);
        assert_eq!(r.descent_ray, Some(vec![0, -1]));
        assert_eq!(r.value, 2.0);
    }
}
