//! Polytopes in V-representation and the LP-backed queries the stability and
//! stratification code needs.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{affine_dimension, check_dim, QVec, Q};
use super::lp::{LinearProgram, LpOutcome, Relation, VarKind};
use crate::error::{Error, Result};

/// Convex hull of a finite, nonempty set of rational points. Generators need not
/// be vertices and may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeQ {
    generators: Vec<QVec>,
    ambient_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HullPosition {
    /// Topological interior of the full ambient space.
    Interior,
    /// Relative interior of a lower-dimensional hull.
    RelativeInteriorOnly,
    /// Relative boundary.
    OnProperFace,
    Outside,
}

/// The positive part of a coordinate ray meeting a polytope.
#[derive(Debug, Clone, PartialEq)]
pub enum RaySlice {
    Empty,
    Interval(RayInterval),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayInterval {
    pub lower: Q,
    pub upper: Q,
    /// Convex weights on the generators realizing the endpoint. `None` for the
    /// lower end when the slice reaches down to the (excluded) origin.
    pub lower_weights: Option<QVec>,
    pub upper_weights: QVec,
}

impl RayInterval {
    pub fn is_closed(&self) -> bool {
        self.lower_weights.is_some()
    }
}

impl PolytopeQ {
    pub fn new(generators: Vec<QVec>) -> Result<Self> {
        let ambient_dim = generators.first().ok_or(Error::EmptyPolytope)?.dim();
        for g in &generators {
            check_dim(ambient_dim, g.dim())?;
        }
        Ok(PolytopeQ {
            generators,
            ambient_dim,
        })
    }

    pub fn from_i64(points: &[Vec<i64>]) -> Result<Self> {
        Self::new(points.iter().map(|p| QVec::from_i64(p)).collect())
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dimension(&self) -> usize {
        affine_dimension(&self.generators).expect("nonempty")
    }

    /// Indices of the generators on the unique face whose relative interior contains `q`.
    ///
    /// A generator lies on that face iff it carries positive weight in some convex
    /// representation of `q`; the union of all such supports is found with one LP over
    /// the cone `{mu >= 0 : sum mu_i (g_i - q) = 0}` by maximizing `sum min(mu_i, 1)`.
    pub fn minimal_face(&self, q: &QVec) -> Result<Vec<usize>> {
        check_dim(self.ambient_dim, q.dim())?;
        let n = self.generators.len();
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, 2 * n);
        for d in 0..self.ambient_dim {
            let terms: Vec<(usize, Q)> = self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (i, &g[d] - &q[d]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            lp.add_sparse(&terms, Relation::Eq, Q::zero());
        }
        for i in 0..n {
            lp.add_sparse(&[(n + i, Q::one()), (i, -Q::one())], Relation::Le, Q::zero());
            lp.add_sparse(&[(n + i, Q::one())], Relation::Le, Q::one());
        }
        let mut obj = QVec::zeros(2 * n);
        for i in 0..n {
            obj[n + i] = Q::one();
        }
        let LpOutcome::Optimal { x, .. } = lp.maximize(&obj)? else {
            return Err(Error::Internal("bounded face LP was not optimal".into()));
        };
        let face: Vec<usize> = (0..n).filter(|&i| x[n + i].is_positive()).collect();
        if face.is_empty() {
            Err(Error::OutsideHull)
        } else {
            Ok(face)
        }
    }

    pub fn hull_position(&self, q: &QVec) -> Result<HullPosition> {
        let face = match self.minimal_face(q) {
            Ok(f) => f,
            Err(Error::OutsideHull) => return Ok(HullPosition::Outside),
            Err(e) => return Err(e),
        };
        if face.len() < self.generators.len() {
            return Ok(HullPosition::OnProperFace);
        }
        if self.dimension() == self.ambient_dim {
            Ok(HullPosition::Interior)
        } else {
            Ok(HullPosition::RelativeInteriorOnly)
        }
    }

    /// Convex weights expressing `q`, chosen to maximize the smallest weight. All
    /// weights are positive exactly when `q` lies in the relative interior.
    pub fn convex_weights(&self, q: &QVec) -> Result<Option<QVec>> {
        check_dim(self.ambient_dim, q.dim())?;
        let n = self.generators.len();
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, n);
        let s = lp.add_var(VarKind::Free);
        self.add_combination_rows(&mut lp, q);
        for i in 0..n {
            lp.add_sparse(&[(i, Q::one()), (s, -Q::one())], Relation::Ge, Q::zero());
        }
        let mut obj = QVec::zeros(n + 1);
        obj[s] = Q::one();
        Ok(match lp.maximize(&obj)? {
            LpOutcome::Optimal { x, .. } => Some(QVec(x.0[..n].to_vec())),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => {
                return Err(Error::Internal("max-min weight LP unbounded".into()))
            }
        })
    }

    /// Exact interval of `rho > 0` with `rho * e_axis` in the polytope.
    pub fn ray_intersect(&self, axis: usize) -> Result<RaySlice> {
        if axis >= self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: axis + 1,
            });
        }
        let n = self.generators.len();
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, n);
        for d in (0..self.ambient_dim).filter(|&d| d != axis) {
            let terms: Vec<(usize, Q)> = self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g[d].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            lp.add_sparse(&terms, Relation::Eq, Q::zero());
        }
        let all: Vec<(usize, Q)> = (0..n).map(|i| (i, Q::one())).collect();
        lp.add_sparse(&all, Relation::Eq, Q::one());
        let obj: QVec = self.generators.iter().map(|g| g[axis].clone()).collect();

        let (hi_w, hi) = match lp.maximize(&obj)? {
            LpOutcome::Optimal { x, value } => (x, value),
            LpOutcome::Infeasible => return Ok(RaySlice::Empty),
            LpOutcome::Unbounded => return Err(Error::Internal("ray LP unbounded".into())),
        };
        if !hi.is_positive() {
            return Ok(RaySlice::Empty);
        }
        let LpOutcome::Optimal { x: lo_w, value: lo } = lp.minimize(&obj)? else {
            return Err(Error::Internal("ray LP lost feasibility".into()));
        };
        Ok(RaySlice::Interval(if lo.is_positive() {
            RayInterval {
                lower: lo,
                upper: hi,
                lower_weights: Some(lo_w),
                upper_weights: hi_w,
            }
        } else {
            RayInterval {
                lower: Q::zero(),
                upper: hi,
                lower_weights: None,
                upper_weights: hi_w,
            }
        }))
    }

    /// `sum w_i g_i`, for checking certificates.
    pub fn combine(&self, weights: &QVec) -> Result<QVec> {
        check_dim(self.generators.len(), weights.dim())?;
        let mut out = QVec::zeros(self.ambient_dim);
        for (w, g) in weights.iter().zip(&self.generators) {
            if !w.is_zero() {
                out = &out + &g.scale(w);
            }
        }
        Ok(out)
    }

    /// True when `weights` is a convex combination of the generators equal to `q`.
    pub fn verify_convex_weights(&self, weights: &QVec, q: &QVec) -> bool {
        weights.dim() == self.generators.len()
            && weights.iter().all(|w| !w.is_negative())
            && weights.iter().fold(Q::zero(), |a, w| a + w) == Q::one()
            && self.combine(weights).map(|p| &p == q).unwrap_or(false)
    }

    fn add_combination_rows(&self, lp: &mut LinearProgram, q: &QVec) {
        let n = self.generators.len();
        for d in 0..self.ambient_dim {
            let terms: Vec<(usize, Q)> = self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g[d].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            lp.add_sparse(&terms, Relation::Eq, q[d].clone());
        }
        let all: Vec<(usize, Q)> = (0..n).map(|i| (i, Q::one())).collect();
        lp.add_sparse(&all, Relation::Eq, Q::one());
    }
}

/// Finds a rational point with `a.x = b` for every equality and `a.x > b` for every
/// strict inequality, or `None` when the system is infeasible.
///
/// The strict rows are shifted by a common slack `eps` which is maximized (capped at
/// one); with `eps` fixed at its optimum, coordinates are then fixed one at a time at
/// their smallest attainable absolute value. The result depends only on the input.
pub fn solve_mixed_system(
    dim: usize,
    equalities: &[(QVec, Q)],
    strict: &[(QVec, Q)],
) -> Result<Option<QVec>> {
    for (a, _) in equalities.iter().chain(strict) {
        check_dim(dim, a.dim())?;
    }
    // vars: x (free, dim), eps, t (|x| bounds, dim)
    let eps = dim;
    let mut lp = LinearProgram::with_vars(VarKind::Free, dim);
    lp.add_var(VarKind::NonNegative);
    for _ in 0..dim {
        lp.add_var(VarKind::NonNegative);
    }
    let width = 2 * dim + 1;
    let row = |a: &QVec, extra: &[(usize, Q)]| {
        let mut v = QVec::zeros(width);
        for (i, c) in a.iter().enumerate() {
            v[i] = c.clone();
        }
        for (i, c) in extra {
            v[*i] += c;
        }
        v
    };
    for (a, b) in equalities {
        lp.add_constraint(row(a, &[]), Relation::Eq, b.clone())?;
    }
    for (a, b) in strict {
        lp.add_constraint(row(a, &[(eps, -Q::one())]), Relation::Ge, b.clone())?;
    }
    lp.add_sparse(&[(eps, Q::one())], Relation::Le, Q::one());
    for i in 0..dim {
        let t = dim + 1 + i;
        lp.add_sparse(&[(t, Q::one()), (i, -Q::one())], Relation::Ge, Q::zero());
        lp.add_sparse(&[(t, Q::one()), (i, Q::one())], Relation::Ge, Q::zero());
    }

    let best_eps = match lp.maximize(&QVec::unit(width, eps))? {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => return Err(Error::Internal("capped slack unbounded".into())),
    };
    if !strict.is_empty() && !best_eps.is_positive() {
        return Ok(None);
    }
    lp.add_sparse(&[(eps, Q::one())], Relation::Eq, best_eps);
    let mut x = QVec::zeros(dim);
    for i in 0..dim {
        let t = dim + 1 + i;
        let LpOutcome::Optimal { x: sol, .. } = lp.minimize(&QVec::unit(width, t))? else {
            return Err(Error::Internal("coordinate fixing LP not optimal".into()));
        };
        x[i] = sol[i].clone();
        lp.add_sparse(&[(i, Q::one())], Relation::Eq, x[i].clone());
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qr};

    fn poly(points: &[Vec<i64>]) -> PolytopeQ {
        PolytopeQ::from_i64(points).unwrap()
    }

    #[test]
    fn hull_position_examples() {
        let tri = poly(&[vec![1, 0], vec![-1, 1], vec![0, -1]]);
        assert_eq!(tri.hull_position(&QVec::from_i64(&[0, 0])).unwrap(), HullPosition::Interior);
        let seg = poly(&[vec![1, 0], vec![-1, 0]]);
        assert_eq!(
            seg.hull_position(&QVec::from_i64(&[0, 0])).unwrap(),
            HullPosition::RelativeInteriorOnly
        );
        let far = poly(&[vec![1, 0], vec![2, 0]]);
        assert_eq!(far.hull_position(&QVec::from_i64(&[0, 0])).unwrap(), HullPosition::Outside);
        assert_eq!(
            tri.hull_position(&QVec(vec![q(0), qr(1, 2)])).unwrap(),
            HullPosition::OnProperFace
        );
    }

    #[test]
    fn hull_position_dimension_mismatch() {
        let tri = poly(&[vec![1, 0], vec![-1, 1], vec![0, -1]]);
        assert!(matches!(
            tri.hull_position(&QVec::from_i64(&[0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn barycentric_weights_of_triangle() {
        // a(1,0) + b(-1,1) + c(0,-1) = 0, a+b+c = 1  =>  a = b = c = 1/3
        let tri = poly(&[vec![1, 0], vec![-1, 1], vec![0, -1]]);
        let w = tri.convex_weights(&QVec::from_i64(&[0, 0])).unwrap().unwrap();
        assert_eq!(w, QVec(vec![qr(1, 3), qr(1, 3), qr(1, 3)]));
    }

    #[test]
    fn minimal_face_examples() {
        let tri = poly(&[vec![1, 0], vec![-1, 1], vec![0, -1]]);
        assert_eq!(tri.minimal_face(&QVec::from_i64(&[0, 0])).unwrap(), vec![0, 1, 2]);
        let seg = poly(&[vec![1, 1], vec![-1, 2]]);
        assert_eq!(seg.minimal_face(&QVec(vec![q(0), qr(3, 2)])).unwrap(), vec![0, 1]);
        assert_eq!(seg.minimal_face(&QVec::from_i64(&[1, 1])).unwrap(), vec![0]);
        assert_eq!(seg.minimal_face(&QVec::from_i64(&[5, 5])), Err(Error::OutsideHull));
    }

    #[test]
    fn ray_intersect_examples() {
        let seg = poly(&[vec![1, 1], vec![-1, 2]]);
        let RaySlice::Interval(iv) = seg.ray_intersect(1).unwrap() else { panic!() };
        assert_eq!((iv.lower.clone(), iv.upper.clone()), (qr(3, 2), qr(3, 2)));

        let tri = poly(&[vec![1, 1], vec![-1, 1], vec![0, 2]]);
        let RaySlice::Interval(iv) = tri.ray_intersect(1).unwrap() else { panic!() };
        assert_eq!((iv.lower.clone(), iv.upper.clone()), (q(1), q(2)));
        // endpoint certificates re-verify exactly
        let lo = tri.combine(iv.lower_weights.as_ref().unwrap()).unwrap();
        assert_eq!(lo, QVec::from_i64(&[0, 1]));
        assert!(tri.verify_convex_weights(&iv.upper_weights, &QVec::from_i64(&[0, 2])));

        let miss = poly(&[vec![1, 1], vec![2, 1]]);
        assert_eq!(miss.ray_intersect(1).unwrap(), RaySlice::Empty);
    }

    #[test]
    fn ray_touching_origin_is_open_below() {
        let seg = poly(&[vec![0, -1], vec![0, 2]]);
        let RaySlice::Interval(iv) = seg.ray_intersect(1).unwrap() else { panic!() };
        assert!(!iv.is_closed());
        assert_eq!(iv.upper, q(2));
    }

    #[test]
    fn mixed_system_examples() {
        // 1 + x = 3/2, 2 - x = 3/2
        let eqs = vec![
            (QVec::from_i64(&[1]), qr(1, 2)),
            (QVec::from_i64(&[-1]), qr(-1, 2)),
        ];
        assert_eq!(
            solve_mixed_system(1, &eqs, &[]).unwrap(),
            Some(QVec(vec![qr(1, 2)]))
        );
        // x = 0 and x > 0
        let eqs = vec![(QVec::from_i64(&[1]), q(0))];
        let strict = vec![(QVec::from_i64(&[1]), q(0))];
        assert_eq!(solve_mixed_system(1, &eqs, &strict).unwrap(), None);
        // x > 0, -x > -1
        let strict = vec![
            (QVec::from_i64(&[1]), q(0)),
            (QVec::from_i64(&[-1]), q(-1)),
        ];
        assert_eq!(
            solve_mixed_system(1, &[], &strict).unwrap(),
            Some(QVec(vec![qr(1, 2)]))
        );
    }

    #[test]
    fn mixed_system_unbounded_directions_pick_small_coordinates() {
        // x1 > 0 only: eps caps at 1 -> x1 = 1, x2 free -> 0
        let strict = vec![(QVec::from_i64(&[1, 0]), q(0))];
        assert_eq!(
            solve_mixed_system(2, &[], &strict).unwrap(),
            Some(QVec::from_i64(&[1, 0]))
        );
    }
}
