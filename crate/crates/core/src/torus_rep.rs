//! Torus representations as sums of weight-labeled coordinate lines.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_geometry::{Lattice, QVec};

/// One coordinate line of a representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightLine {
    pub label: String,
    /// Character of the torus `G`.
    pub weight: Vec<i64>,
    /// Weight of the extra `C*` factor on graded representations.
    pub rho: Option<i64>,
    /// Squared norm of a unit amplitude on this line.
    pub scale: f64,
}

impl WeightLine {
    pub fn new(label: impl Into<String>, weight: Vec<i64>) -> Self {
        WeightLine {
            label: label.into(),
            weight,
            rho: None,
            scale: 1.0,
        }
    }

    pub fn graded(label: impl Into<String>, weight: Vec<i64>, rho: i64) -> Self {
        WeightLine {
            rho: Some(rho),
            ..WeightLine::new(label, weight)
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn full_weight(&self) -> Weight {
        Weight {
            ell: self.weight.clone(),
            rho: self.rho,
        }
    }
}

/// A weight of `G` (or of `G x C*` when `rho` is present).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub ell: Vec<i64>,
    pub rho: Option<i64>,
}

/// A representation of a rank-`k` torus, optionally times `C*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    rank: usize,
    graded: bool,
    lines: Vec<WeightLine>,
}

impl Representation {
    pub fn new(rank: usize, lines: Vec<WeightLine>) -> Result<Self> {
        let graded = lines.first().map(|l| l.rho.is_some()).unwrap_or(false);
        let mut seen = HashSet::new();
        for l in &lines {
            if l.weight.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: l.weight.len(),
                });
            }
            if l.rho.is_some() != graded {
                return Err(Error::InvalidArgument(format!(
                    "line `{}`: graded and ungraded lines mixed",
                    l.label
                )));
            }
            if !(l.scale.is_finite() && l.scale > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "line `{}`: norm scale must be positive",
                    l.label
                )));
            }
            if !seen.insert(l.label.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate label `{}`",
                    l.label
                )));
            }
        }
        Ok(Representation {
            rank,
            graded,
            lines,
        })
    }

    /// Ungraded representation with lines labeled `0, 1, ...`.
    pub fn from_weights(rank: usize, weights: &[Vec<i64>]) -> Result<Self> {
        let lines = weights
            .iter()
            .enumerate()
            .map(|(i, w)| WeightLine::new(i.to_string(), w.clone()))
            .collect();
        Self::new(rank, lines)
    }

    /// Graded representation from `(weight, rho)` pairs, labeled `0, 1, ...`.
    pub fn from_graded(rank: usize, weights: &[(Vec<i64>, i64)]) -> Result<Self> {
        let lines = weights
            .iter()
            .enumerate()
            .map(|(i, (w, r))| WeightLine::graded(i.to_string(), w.clone(), *r))
            .collect();
        Self::new(rank, lines)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn lines(&self) -> &[WeightLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.lines
            .iter()
            .position(|l| l.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The same lines with each `G`-weight replaced by its pairings against the
    /// cocharacter basis of `h`; the `rho` coordinate is untouched.
    pub fn restrict_weights(&self, h: &Lattice) -> Result<Vec<WeightLine>> {
        if h.ambient_dim() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: h.ambient_dim(),
            });
        }
        Ok(self
            .lines
            .iter()
            .map(|l| WeightLine {
                weight: h.restrict(&l.weight),
                ..l.clone()
            })
            .collect())
    }

    /// The representation of the subtorus `h`.
    pub fn restrict(&self, h: &Lattice) -> Result<Representation> {
        Ok(Representation {
            rank: h.rank(),
            graded: self.graded,
            lines: self.restrict_weights(h)?,
        })
    }

    pub fn zero_vector(self: &Arc<Self>) -> RepVector {
        RepVector {
            rep: Arc::clone(self),
            amps: vec![Complex64::new(0.0, 0.0); self.lines.len()],
        }
    }
}

/// A vector in a torus representation: one complex amplitude per line.
#[derive(Debug, Clone, PartialEq)]
pub struct RepVector {
    rep: Arc<Representation>,
    amps: Vec<Complex64>,
}

impl RepVector {
    pub fn new(rep: Arc<Representation>, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != rep.len() {
            return Err(Error::DimensionMismatch {
                expected: rep.len(),
                got: amps.len(),
            });
        }
        if let Some(i) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "line `{}`: amplitude is not finite",
                rep.lines[i].label
            )));
        }
        Ok(RepVector { rep, amps })
    }

    pub fn from_real(rep: Arc<Representation>, amps: &[f64]) -> Result<Self> {
        Self::new(rep, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Vector with the given amplitudes on the named lines and zero elsewhere.
    pub fn from_labels(rep: Arc<Representation>, amps: &[(&str, Complex64)]) -> Result<Self> {
        let mut out = rep.zero_vector();
        for (label, a) in amps {
            let i = rep.index_of(label)?;
            out.amps[i] = *a;
        }
        Self::new(rep, out.amps)
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == Complex64::new(0.0, 0.0))
    }

    /// Indices of lines carrying a nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        (0..self.amps.len())
            .filter(|&i| self.amps[i] != Complex64::new(0.0, 0.0))
            .collect()
    }

    pub fn effective_weights(&self) -> BTreeSet<Weight> {
        self.support()
            .into_iter()
            .map(|i| self.rep.lines[i].full_weight())
            .collect()
    }

    /// Distinct `G`-parts of the effective weights.
    pub fn effective_g_weights(&self) -> BTreeSet<Vec<i64>> {
        self.support()
            .into_iter()
            .map(|i| self.rep.lines[i].weight.clone())
            .collect()
    }

    /// Squared norm of the weight-space component `v_lambda` for each effective `G`-weight.
    pub fn weight_norms(&self) -> BTreeMap<Vec<i64>, f64> {
        let mut out = BTreeMap::new();
        for i in self.support() {
            let l = &self.rep.lines[i];
            *out.entry(l.weight.clone()).or_insert(0.0) += l.scale * self.amps[i].norm_sqr();
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .zip(&self.rep.lines)
            .map(|(a, l)| l.scale * a.norm_sqr())
            .sum()
    }

    pub fn project(&self, s: &BTreeSet<Weight>) -> RepVector {
        self.keep(|l| s.contains(&l.full_weight()))
    }

    /// Keeps the components on lines satisfying `pred`.
    pub fn keep(&self, pred: impl Fn(&WeightLine) -> bool) -> RepVector {
        let amps = self
            .amps
            .iter()
            .zip(&self.rep.lines)
            .map(|(a, l)| if pred(l) { *a } else { Complex64::new(0.0, 0.0) })
            .collect();
        RepVector {
            rep: Arc::clone(&self.rep),
            amps,
        }
    }

    /// Keeps the components on the given line indices.
    pub fn keep_lines(&self, keep: &BTreeSet<usize>) -> RepVector {
        let amps = (0..self.amps.len())
            .map(|i| if keep.contains(&i) { self.amps[i] } else { Complex64::new(0.0, 0.0) })
            .collect();
        RepVector {
            rep: Arc::clone(&self.rep),
            amps,
        }
    }

    /// Components fixed by the subtorus `h`: `G`-weight pairing to zero with every
    /// cocharacter of `h`. The `C*` weight plays no role.
    pub fn fixed_part(&self, h: &Lattice) -> Result<RepVector> {
        if h.ambient_dim() != self.rep.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rep.rank,
                got: h.ambient_dim(),
            });
        }
        Ok(self.keep(|l| h.restrict(&l.weight).iter().all(|&p| p == 0)))
    }

    /// This vector viewed in the representation of the subtorus `h`.
    pub fn restrict(&self, h: &Lattice) -> Result<RepVector> {
        Ok(RepVector {
            rep: Arc::new(self.rep.restrict(h)?),
            amps: self.amps.clone(),
        })
    }

    /// Exponent of `t` on each effective component under `t -> (x(t), t^sigma)`:
    /// `rho * sigma + <ell, x>`, keyed by label.
    pub fn one_ps_exponents(&self, x: &QVec, sigma: i64) -> Result<BTreeMap<String, i64>> {
        let x = self.integral_cocharacter(x)?;
        Ok(self
            .support()
            .into_iter()
            .map(|i| {
                let l = &self.rep.lines[i];
                (l.label.clone(), line_exponent(l, &x, sigma))
            })
            .collect())
    }

    /// Same as [`one_ps_exponents`](Self::one_ps_exponents) but indexed by line.
    pub fn exponents_by_line(&self, x: &QVec, sigma: i64) -> Result<Vec<Option<i64>>> {
        let x = self.integral_cocharacter(x)?;
        let mut out = vec![None; self.amps.len()];
        for i in self.support() {
            out[i] = Some(line_exponent(&self.rep.lines[i], &x, sigma));
        }
        Ok(out)
    }

    fn integral_cocharacter(&self, x: &QVec) -> Result<Vec<i64>> {
        if x.dim() != self.rep.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rep.rank,
                got: x.dim(),
            });
        }
        x.to_i64()
            .ok_or_else(|| Error::NotIntegral(format!("{x:?}")))
    }

    /// Action of the real torus element `exp(x)`: each amplitude is multiplied by
    /// `e^{<ell, x>}`.
    pub fn act(&self, x: &[f64]) -> Result<RepVector> {
        if x.len() != self.rep.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rep.rank,
                got: x.len(),
            });
        }
        let amps = self
            .amps
            .iter()
            .zip(&self.rep.lines)
            .map(|(a, l)| {
                let p: f64 = l.weight.iter().zip(x).map(|(w, y)| *w as f64 * y).sum();
                a * p.exp()
            })
            .collect();
        Ok(RepVector {
            rep: Arc::clone(&self.rep),
            amps,
        })
    }

    pub fn add(&self, other: &RepVector) -> Result<RepVector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RepVector) -> Result<RepVector> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &RepVector,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<RepVector> {
        if !Arc::ptr_eq(&self.rep, &other.rep) && self.rep != other.rep {
            return Err(Error::InvalidArgument(
                "vectors live in different representations".into(),
            ));
        }
        Ok(RepVector {
            rep: Arc::clone(&self.rep),
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }
}

fn line_exponent(l: &WeightLine, x: &[i64], sigma: i64) -> i64 {
    l.rho.unwrap_or(0) * sigma + l.weight.iter().zip(x).map(|(w, y)| w * y).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::saturated_kernel;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn graded(lines: &[(Vec<i64>, i64)], amps: &[f64]) -> RepVector {
        let rep = Representation::from_graded(lines[0].0.len(), lines).unwrap();
        RepVector::from_real(Arc::new(rep), amps).unwrap()
    }

    #[test]
    fn effective_weights_drop_zero_components() {
        let rep = Arc::new(Representation::from_weights(2, &[vec![1, 0], vec![0, 1]]).unwrap());
        let v = RepVector::from_real(rep.clone(), &[1.0, 0.0]).unwrap();
        let w: Vec<_> = v.effective_g_weights().into_iter().collect();
        assert_eq!(w, vec![vec![1, 0]]);
        assert!(rep.zero_vector().effective_weights().is_empty());

        let twice = Arc::new(Representation::from_weights(1, &[vec![3], vec![3]]).unwrap());
        let v = RepVector::from_real(twice, &[0.0, 2.0]).unwrap();
        assert_eq!(v.effective_weights().len(), 1);
    }

    #[test]
    fn projection_examples() {
        let rep = Arc::new(Representation::from_weights(2, &[vec![1, 0], vec![0, 1]]).unwrap());
        let v = RepVector::from_real(rep, &[1.0, 2.0]).unwrap();
        assert_eq!(v.project(&v.effective_weights()), v);
        assert!(v.project(&BTreeSet::new()).is_zero());
        let s: BTreeSet<_> = [Weight {
            ell: vec![0, 1],
            rho: None,
        }]
        .into_iter()
        .collect();
        assert_eq!(v.project(&s).amplitudes(), &[c(0.0), c(2.0)]);
    }

    #[test]
    fn fixed_part_examples() {
        let v = graded(&[(vec![1], 1), (vec![0], 1)], &[1.0, 1.0]);
        let full = Lattice::full(1);
        assert_eq!(v.fixed_part(&full).unwrap().support(), vec![1]);
        assert_eq!(v.fixed_part(&Lattice::trivial(1)).unwrap(), v);
    }

    #[test]
    fn restriction_examples() {
        let rep = Representation::from_weights(2, &[vec![2, -2], vec![1, 0]]).unwrap();
        let h = saturated_kernel(2, &[vec![1, -1]]).unwrap();
        let r = rep.restrict_weights(&h).unwrap();
        assert_eq!(r[0].weight, vec![0]);
        assert_eq!(r[1].weight, vec![1]);
        assert_eq!(rep.restrict_weights(&Lattice::full(2)).unwrap(), rep.lines());
        assert!(rep
            .restrict_weights(&Lattice::trivial(2))
            .unwrap()
            .iter()
            .all(|l| l.weight.is_empty()));
    }

    #[test]
    fn one_ps_exponent_examples() {
        let v = graded(&[(vec![1], 1), (vec![-1], 2)], &[1.0, 1.0]);
        let e = v.one_ps_exponents(&QVec::from_i64(&[1]), 2).unwrap();
        assert_eq!(e["0"], 3);
        assert_eq!(e["1"], 3);
        let e = v.one_ps_exponents(&QVec::from_i64(&[0]), 1).unwrap();
        assert_eq!((e["0"], e["1"]), (1, 2));
        let half = QVec(vec![crate::exact_geometry::qr(1, 2)]);
        assert!(matches!(v.one_ps_exponents(&half, 1), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn unknown_label_is_rejected() {
        let rep = Arc::new(Representation::from_weights(1, &[vec![1]]).unwrap());
        assert_eq!(
            RepVector::from_labels(rep, &[("nope", c(1.0))]),
            Err(Error::UnknownLabel("nope".into()))
        );
    }

    #[test]
    fn torus_action_rescales_amplitudes() {
        let rep = Arc::new(Representation::from_weights(1, &[vec![1], vec![-2]]).unwrap());
        let v = RepVector::from_real(rep, &[1.0, 1.0]).unwrap();
        let g = v.act(&[0.5]).unwrap();
        assert!((g.amplitudes()[0].re - 0.5f64.exp()).abs() < 1e-15);
        assert!((g.amplitudes()[1].re - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(g.effective_weights(), v.effective_weights());
    }
}
