//! Torus stability of a vector from the convex hull of its effective weights, with
//! exact certificates and a brute-force Hilbert-Mumford scan for cross-checking.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_geometry::{
    primitive_integer, saturated_kernel, solve_mixed_system, HullPosition, Lattice, PolytopeQ,
    QVec, Q,
};
use crate::torus_rep::RepVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Unstable,
    SemistableNotPolystable,
    PolystableNotStable,
    Stable,
}

impl Stability {
    pub fn is_polystable(self) -> bool {
        matches!(self, Stability::Stable | Stability::PolystableNotStable)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Unstable => "unstable",
            Stability::SemistableNotPolystable => "semistable",
            Stability::PolystableNotStable => "polystable",
            Stability::Stable => "stable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// `0 = sum c_i w_i` with every `c_i > 0` and `sum c_i = 1`.
    Interior { coefficients: QVec },
    /// As `Interior`, plus the cocharacters pairing to zero with every weight.
    Flat { coefficients: QVec, flat: Lattice },
    /// Integer cocharacter with `<w, x> = 0` on the weights of `face` and `> 0` on the
    /// rest. `face` is empty for unstable vectors.
    Destabilizing { cocharacter: Vec<i64>, face: Vec<usize> },
}

/// Classification of a vector together with the evidence for it.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityClass {
    pub class: Stability,
    /// Distinct effective `G`-weights, sorted; certificates index into this list.
    pub weights: Vec<Vec<i64>>,
    pub certificate: Certificate,
}

impl StabilityClass {
    /// Re-checks the certificate against the weights with exact arithmetic.
    pub fn verify(&self) -> bool {
        let pair = |w: &[i64], x: &[i64]| -> i64 { w.iter().zip(x).map(|(a, b)| a * b).sum() };
        match (&self.class, &self.certificate) {
            (Stability::Stable, Certificate::Interior { coefficients }) => {
                positive_combination_is_zero(&self.weights, coefficients)
                    && self.rank_of_weights() == self.dim()
            }
            (Stability::PolystableNotStable, Certificate::Flat { coefficients, flat }) => {
                positive_combination_is_zero(&self.weights, coefficients)
                    && !flat.is_trivial()
                    && flat.rank() + self.rank_of_weights() == self.dim()
                    && self
                        .weights
                        .iter()
                        .all(|w| flat.basis().iter().all(|b| pair(w, b) == 0))
            }
            (
                Stability::Unstable | Stability::SemistableNotPolystable,
                Certificate::Destabilizing { cocharacter, face },
            ) => {
                (self.class == Stability::Unstable) == face.is_empty()
                    && face.len() < self.weights.len()
                    && self.weights.iter().enumerate().all(|(i, w)| {
                        let p = pair(w, cocharacter);
                        if face.contains(&i) {
                            p == 0
                        } else {
                            p > 0
                        }
                    })
            }
            _ => false,
        }
    }

    fn dim(&self) -> usize {
        self.weights.first().map(Vec::len).unwrap_or(0)
    }

    fn rank_of_weights(&self) -> usize {
        let rows: Vec<QVec> = self.weights.iter().map(|w| QVec::from_i64(w)).collect();
        crate::exact_geometry::QMat::from_rows(&rows, self.dim())
            .map(|m| m.rank())
            .unwrap_or(0)
    }
}

fn positive_combination_is_zero(weights: &[Vec<i64>], c: &QVec) -> bool {
    if c.dim() != weights.len() || !c.iter().all(|x| x.is_positive()) {
        return false;
    }
    let dim = weights.first().map(Vec::len).unwrap_or(0);
    let mut sum = QVec::zeros(dim);
    for (w, ci) in weights.iter().zip(c.iter()) {
        sum = &sum + &QVec::from_i64(w).scale(ci);
    }
    sum.is_zero() && c.iter().fold(Q::zero(), |a, x| a + x) == crate::exact_geometry::q(1)
}

/// Classifies `v` by the position of the origin in the hull of its effective weights.
pub fn classify(v: &RepVector) -> Result<StabilityClass> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let weights: Vec<Vec<i64>> = v.effective_g_weights().into_iter().collect();
    classify_weights(v.rep().rank(), &weights)
}

/// Classification from a list of distinct weights of a rank-`rank` torus.
pub fn classify_weights(rank: usize, weights: &[Vec<i64>]) -> Result<StabilityClass> {
    if weights.is_empty() {
        return Err(Error::ZeroVector);
    }
    let poly = PolytopeQ::from_i64(weights)?;
    if poly.ambient_dim() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: poly.ambient_dim(),
        });
    }
    let origin = QVec::zeros(rank);
    let position = poly.hull_position(&origin)?;
    let interior_weights = || -> Result<QVec> {
        poly.convex_weights(&origin)?
            .ok_or_else(|| Error::Internal("origin in hull but no convex weights".into()))
    };
    let (class, certificate) = match position {
        HullPosition::Interior => (
            Stability::Stable,
            Certificate::Interior {
                coefficients: interior_weights()?,
            },
        ),
        HullPosition::RelativeInteriorOnly => (
            Stability::PolystableNotStable,
            Certificate::Flat {
                coefficients: interior_weights()?,
                flat: saturated_kernel(rank, weights)?,
            },
        ),
        HullPosition::OnProperFace | HullPosition::Outside => {
            let face = if position == HullPosition::Outside {
                Vec::new()
            } else {
                poly.minimal_face(&origin)?
            };
            let class = if face.is_empty() {
                Stability::Unstable
            } else {
                Stability::SemistableNotPolystable
            };
            (
                class,
                Certificate::Destabilizing {
                    cocharacter: separating_cocharacter(rank, weights, &face)?,
                    face,
                },
            )
        }
    };
    Ok(StabilityClass {
        class,
        weights: weights.to_vec(),
        certificate,
    })
}

/// Integer `x` vanishing on the weights indexed by `face` and positive on the others.
fn separating_cocharacter(rank: usize, weights: &[Vec<i64>], face: &[usize]) -> Result<Vec<i64>> {
    let mut eqs = Vec::new();
    let mut strict = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        let row = (QVec::from_i64(w), Q::zero());
        if face.contains(&i) {
            eqs.push(row);
        } else {
            strict.push(row);
        }
    }
    let x = solve_mixed_system(rank, &eqs, &strict)?
        .ok_or_else(|| Error::Internal("no separating cocharacter for a boundary point".into()))?;
    primitive_integer(&x)
        .into_iter()
        .map(|b| i64::try_from(b).map_err(|_| Error::Internal("cocharacter overflow".into())))
        .collect()
}

/// Scans `[-B, B]^k` for a nonzero integer `x` with `<w, x> >= 0` on every effective
/// weight. Coordinates run through `0, 1, -1, 2, -2, ...`, the first coordinate
/// outermost, and the first hit is returned.
pub fn destabilizer_bruteforce(v: &RepVector, box_bound: i64) -> Option<Vec<i64>> {
    let weights: Vec<Vec<i64>> = v.effective_g_weights().into_iter().collect();
    destabilizer_bruteforce_weights(v.rep().rank(), &weights, box_bound)
}

pub fn destabilizer_bruteforce_weights(
    rank: usize,
    weights: &[Vec<i64>],
    box_bound: i64,
) -> Option<Vec<i64>> {
    if rank == 0 || box_bound < 1 {
        return None;
    }
    let order: Vec<i64> = std::iter::once(0)
        .chain((1..=box_bound).flat_map(|n| [n, -n]))
        .collect();
    let mut prefix = vec![0i64; rank - 1];
    scan(weights, &order, box_bound, &mut prefix, 0)
}

fn scan(
    weights: &[Vec<i64>],
    order: &[i64],
    bound: i64,
    prefix: &mut Vec<i64>,
    depth: usize,
) -> Option<Vec<i64>> {
    if depth == prefix.len() {
        return last_coordinate(weights, bound, prefix);
    }
    for &c in order {
        prefix[depth] = c;
        if let Some(x) = scan(weights, order, bound, prefix, depth + 1) {
            return Some(x);
        }
    }
    None
}

/// With all but the last coordinate fixed, the admissible last coordinates form an
/// integer interval; return its first element in scan order.
fn last_coordinate(weights: &[Vec<i64>], bound: i64, prefix: &[i64]) -> Option<Vec<i64>> {
    let k = prefix.len();
    let (mut lo, mut hi) = (-bound, bound);
    for w in weights {
        let a: i64 = w[..k].iter().zip(prefix).map(|(x, y)| x * y).sum();
        let b = w[k];
        // need a + b t >= 0
        match b.signum() {
            0 if a < 0 => return None,
            0 => {}
            1 => lo = lo.max((-a).div_euclid(b) + i64::from((-a).rem_euclid(b) != 0)),
            _ => hi = hi.min(a.div_euclid(-b)),
        }
    }
    if lo > hi {
        return None;
    }
    let prefix_zero = prefix.iter().all(|&c| c == 0);
    let t = if lo <= 0 && 0 <= hi {
        if !prefix_zero {
            0
        } else if hi >= 1 {
            1
        } else if lo <= -1 {
            -1
        } else {
            return None;
        }
    } else if lo > 0 {
        lo
    } else {
        hi
    };
    let mut x = prefix.to_vec();
    x.push(t);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::qr;
    use crate::torus_rep::Representation;
    use std::sync::Arc;

    fn vector(rank: usize, weights: &[Vec<i64>]) -> RepVector {
        let rep = Arc::new(Representation::from_weights(rank, weights).unwrap());
        RepVector::from_real(rep, &vec![1.0; weights.len()]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let s = classify(&vector(1, &[vec![1], vec![-1]])).unwrap();
        assert_eq!(s.class, Stability::Stable);
        assert_eq!(
            s.certificate,
            Certificate::Interior {
                coefficients: QVec(vec![qr(1, 2), qr(1, 2)])
            }
        );
        assert!(s.verify());

        let p = classify(&vector(2, &[vec![1, 0], vec![-1, 0]])).unwrap();
        assert_eq!(p.class, Stability::PolystableNotStable);
        assert!(p.verify());

        let u = classify(&vector(1, &[vec![1]])).unwrap();
        assert_eq!(u.class, Stability::Unstable);
        assert!(u.verify());
    }

    #[test]
    fn destabilizer_points_into_the_weights() {
        let u = classify(&vector(1, &[vec![-4], vec![-2]])).unwrap();
        assert_eq!(
            u.certificate,
            Certificate::Destabilizing {
                cocharacter: vec![-1],
                face: vec![]
            }
        );
        assert!(u.verify());
    }

    #[test]
    fn semistable_certificate_vanishes_on_face() {
        let s = classify(&vector(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]])).unwrap();
        assert_eq!(s.class, Stability::SemistableNotPolystable);
        let Certificate::Destabilizing { cocharacter, face } = &s.certificate else {
            panic!()
        };
        assert_eq!(cocharacter, &vec![0, 1]);
        assert_eq!(face.len(), 2);
        assert!(s.verify());
    }

    #[test]
    fn zero_vector_is_rejected() {
        let rep = Arc::new(Representation::from_weights(1, &[vec![1]]).unwrap());
        assert_eq!(classify(&rep.zero_vector()), Err(Error::ZeroVector));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(destabilizer_bruteforce(&vector(1, &[vec![1], vec![-1]]), 5), None);
        assert_eq!(destabilizer_bruteforce(&vector(1, &[vec![1], vec![2]]), 1), Some(vec![1]));
        assert_eq!(
            destabilizer_bruteforce(&vector(2, &[vec![1, 0], vec![-1, 0]]), 1),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn bruteforce_respects_scan_order() {
        // only x <= 0 works, so the first hit is -1
        assert_eq!(
            destabilizer_bruteforce_weights(1, &[vec![-1], vec![-3]], 4),
            Some(vec![-1])
        );
        // first coordinate forced to 0, second forced positive and at least 2/3
        assert_eq!(
            destabilizer_bruteforce_weights(2, &[vec![1, 0], vec![-1, 0], vec![0, 3]], 4),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn trivial_torus_is_stable() {
        let s = classify_weights(0, &[vec![]]).unwrap();
        assert_eq!(s.class, Stability::Stable);
    }
}
