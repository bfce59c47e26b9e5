//! Finite-dimensional Kuranishi maps on graded three-term complexes
//! `C^0 -> C^1 -> C^2` with a symmetric bracket `C^1 x C^1 -> C^2`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Singular values of the Laplacian below this fraction of the largest are zero.
const RANK_TOL: f64 = 1e-11;
/// Smallest kept singular value ratio before the Green's operator is flagged.
pub const CONDITION_WARNING: f64 = 1e-8;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// One grade of the complex.
#[derive(Debug, Clone, PartialEq)]
pub struct GradePiece {
    /// `C^0_j -> C^1_j`.
    pub d0: CMat,
    /// `C^1_j -> C^2_j`.
    pub d1: CMat,
    /// Gram matrices of the inner products on `C^0_j`, `C^1_j`, `C^2_j`.
    pub h0: CMat,
    pub h1: CMat,
    pub h2: CMat,
}

impl GradePiece {
    /// Standard inner products on all three spaces.
    pub fn euclidean(d0: CMat, d1: CMat) -> Self {
        let (n0, n1, n2) = (d0.ncols(), d0.nrows(), d1.nrows());
        GradePiece {
            d0,
            d1,
            h0: CMat::identity(n0, n0),
            h1: CMat::identity(n1, n1),
            h2: CMat::identity(n2, n2),
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d0.ncols(), self.d1.ncols(), self.d1.nrows())
    }
}

/// Structure constants of the bracket from grades `(w1, w2)`, `w1 <= w2`: output
/// coordinate `k` of `B(u, v)` is `u^T M_k v`.
pub type BracketTensor = Vec<CMat>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GreenStatus {
    Ok,
    /// The smallest nonzero singular value of the Laplacian is tiny relative to the largest.
    IllConditioned { ratio: f64 },
}

/// Green's operator `Gamma` and harmonic projector `P` on one grade of `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenPiece {
    pub gamma: CMat,
    pub harmonic: CMat,
    pub laplacian: CMat,
    pub status: GreenStatus,
}

/// A validated graded complex, with adjoints and Green's operators precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedComplex {
    min_grade: i32,
    pieces: Vec<GradePiece>,
    bracket: BTreeMap<(i32, i32), BracketTensor>,
    d1_adjoint: Vec<CMat>,
    green: Vec<GreenPiece>,
}

/// An element of `C^1` (or `C^2`), one coefficient vector per grade.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceVector {
    pub min_grade: i32,
    pub parts: Vec<CVec>,
}

impl SliceVector {
    pub fn grade(&self, w: i32) -> Option<&CVec> {
        usize::try_from(w - self.min_grade)
            .ok()
            .and_then(|i| self.parts.get(i))
    }

    /// Supported in grades `> 0`.
    pub fn is_positive(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, p)| self.min_grade + i as i32 > 0 || p.iter().all(|z| *z == c(0.0)))
    }

    pub fn norm(&self) -> f64 {
        self.parts.iter().map(|p| p.norm_squared()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &SliceVector) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a - b).collect(),
        }
    }

    /// `t . w = sum_j t^j w_j`.
    pub fn scaled(&self, t: Complex64) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(i, p)| p * t.powi(self.min_grade + i as i32))
                .collect(),
        }
    }

    /// Zeroes every grade above `w`.
    pub fn truncated(&self, w: i32) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self
                .parts
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    if self.min_grade + i as i32 <= w {
                        p.clone()
                    } else {
                        CVec::zeros(p.len())
                    }
                })
                .collect(),
        }
    }
}

impl GradedComplex {
    pub fn new(
        min_grade: i32,
        pieces: Vec<GradePiece>,
        bracket: BTreeMap<(i32, i32), BracketTensor>,
    ) -> Result<Self> {
        let max_grade = min_grade + pieces.len() as i32 - 1;
        for (idx, p) in pieces.iter().enumerate() {
            let w = min_grade + idx as i32;
            let (n0, n1, n2) = p.dims();
            if p.d0.nrows() != n1 {
                return Err(invalid(w, "d0 and d1 disagree on dim C^1"));
            }
            for (h, n, name) in [(&p.h0, n0, "h0"), (&p.h1, n1, "h1"), (&p.h2, n2, "h2")] {
                if h.shape() != (n, n) {
                    return Err(invalid(w, &format!("{name} has the wrong shape")));
                }
                if (h - h.adjoint()).norm() > 1e-12 * (1.0 + h.norm())
                    || (n > 0 && h.clone().cholesky().is_none())
                {
                    return Err(invalid(w, &format!("{name} is not positive definite")));
                }
            }
            let dd = &p.d1 * &p.d0;
            if dd.norm() > 1e-12 * (1.0 + p.d1.norm() * p.d0.norm()) {
                return Err(invalid(w, "d1 d0 != 0"));
            }
        }
        let dim1 = |w: i32| pieces[(w - min_grade) as usize].dims().1;
        let dim2 = |w: i32| pieces[(w - min_grade) as usize].dims().2;
        for (&(w1, w2), t) in &bracket {
            let in_range = |w: i32| (min_grade..=max_grade).contains(&w);
            if w1 > w2 || !in_range(w1) || !in_range(w2) || !in_range(w1 + w2) {
                return Err(Error::InvalidArgument(format!(
                    "bracket block ({w1}, {w2}) is not grade additive within the range"
                )));
            }
            if t.len() != dim2(w1 + w2) {
                return Err(Error::InvalidArgument(format!(
                    "bracket block ({w1}, {w2}) has {} outputs, expected {}",
                    t.len(),
                    dim2(w1 + w2)
                )));
            }
            for m in t {
                if m.shape() != (dim1(w1), dim1(w2)) {
                    return Err(Error::InvalidArgument(format!(
                        "bracket block ({w1}, {w2}) has a misshapen slice"
                    )));
                }
                if w1 == w2 && (m - m.transpose()).norm() > 1e-12 * (1.0 + m.norm()) {
                    return Err(Error::InvalidArgument(format!(
                        "bracket block ({w1}, {w1}) is not symmetric"
                    )));
                }
            }
        }
        let d1_adjoint: Vec<CMat> = pieces.iter().map(adjoint_d1).collect();
        let green = pieces
            .iter()
            .zip(&d1_adjoint)
            .map(|(p, adj)| green_piece(p, adj))
            .collect();
        Ok(GradedComplex {
            min_grade,
            pieces,
            bracket,
            d1_adjoint,
            green,
        })
    }

    pub fn min_grade(&self) -> i32 {
        self.min_grade
    }

    pub fn max_grade(&self) -> i32 {
        self.min_grade + self.pieces.len() as i32 - 1
    }

    pub fn grades(&self) -> std::ops::RangeInclusive<i32> {
        self.min_grade..=self.max_grade()
    }

    pub fn pieces(&self) -> &[GradePiece] {
        &self.pieces
    }

    pub fn total_dim(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| {
                let (a, b, c) = p.dims();
                a + b + c
            })
            .sum()
    }

    fn idx(&self, w: i32) -> usize {
        (w - self.min_grade) as usize
    }

    pub fn zero_c1(&self) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self.pieces.iter().map(|p| CVec::zeros(p.dims().1)).collect(),
        }
    }

    pub fn zero_c2(&self) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self.pieces.iter().map(|p| CVec::zeros(p.dims().2)).collect(),
        }
    }

    /// Checks that `v` has the shape of an element of `C^1`.
    pub fn check_c1(&self, v: &SliceVector) -> Result<()> {
        if v.min_grade != self.min_grade || v.parts.len() != self.pieces.len() {
            return Err(Error::InvalidArgument("grade range mismatch".into()));
        }
        for (p, piece) in v.parts.iter().zip(&self.pieces) {
            if p.len() != piece.dims().1 {
                return Err(Error::DimensionMismatch {
                    expected: piece.dims().1,
                    got: p.len(),
                });
            }
        }
        Ok(())
    }

    pub fn green(&self) -> &[GreenPiece] {
        &self.green
    }

    pub fn d1(&self, u: &SliceVector) -> SliceVector {
        SliceVector {
            min_grade: self.min_grade,
            parts: self.pieces.iter().zip(&u.parts).map(|(p, x)| &p.d1 * x).collect(),
        }
    }

    /// `B(u, v)`, collecting every pair of grades that sums into the range.
    pub fn bracket(&self, u: &SliceVector, v: &SliceVector) -> SliceVector {
        let mut out = self.zero_c2();
        for (&(w1, w2), t) in &self.bracket {
            let k = self.idx(w1 + w2);
            let (a1, b2) = (&u.parts[self.idx(w1)], &v.parts[self.idx(w2)]);
            let (a2, b1) = (&u.parts[self.idx(w2)], &v.parts[self.idx(w1)]);
            for (o, m) in t.iter().enumerate() {
                let mut s = (a1.transpose() * m * b2)[(0, 0)];
                if w1 != w2 {
                    s += (b1.transpose() * m * a2)[(0, 0)];
                }
                out.parts[k][o] += s;
            }
        }
        out
    }

    /// Grade `w` part of `1/2 B(u, u)`, using only grades of `u` below `w` when `u` is
    /// supported in positive grades.
    fn half_square_at(&self, u: &SliceVector, w: i32) -> CVec {
        let mut out = CVec::zeros(self.pieces[self.idx(w)].dims().2);
        for (&(w1, w2), t) in self.bracket.range((self.min_grade, i32::MIN)..) {
            if w1 + w2 != w {
                continue;
            }
            let (a, b) = (&u.parts[self.idx(w1)], &u.parts[self.idx(w2)]);
            // symmetric: B(u,u)_w = sum over ordered pairs, so 1/2 of it counts w1 != w2 once
            let factor = if w1 == w2 { 0.5 } else { 1.0 };
            for (o, m) in t.iter().enumerate() {
                out[o] += (a.transpose() * m * b)[(0, 0)] * c(factor);
            }
        }
        out
    }

    /// `d1^* Gamma` applied grade-wise to an element of `C^2`.
    fn correction(&self, w: i32, y: &CVec) -> CVec {
        let i = self.idx(w);
        &self.d1_adjoint[i] * (&self.green[i].gamma * y)
    }
}

fn invalid(w: i32, msg: &str) -> Error {
    Error::InvalidArgument(format!("grade {w}: {msg}"))
}

/// `d1^* = H1^{-1} d1^dagger H2`.
fn adjoint_d1(p: &GradePiece) -> CMat {
    let rhs = p.d1.adjoint() * &p.h2;
    if p.h1.nrows() == 0 {
        return rhs;
    }
    p.h1.clone().cholesky().expect("validated").solve(&rhs)
}

/// Pseudoinverse of `Delta = d1 d1^*`, self-adjoint for the `H2` inner product, computed
/// in `H2`-orthonormal coordinates.
fn green_piece(p: &GradePiece, d1_adj: &CMat) -> GreenPiece {
    let n = p.h2.nrows();
    let laplacian = &p.d1 * d1_adj;
    if n == 0 {
        return GreenPiece {
            gamma: CMat::zeros(0, 0),
            harmonic: CMat::zeros(0, 0),
            laplacian,
            status: GreenStatus::Ok,
        };
    }
    let l = p.h2.clone().cholesky().expect("validated").l();
    let l_adj = l.adjoint();
    let l_adj_inv = l_adj
        .clone()
        .try_inverse()
        .expect("Cholesky factor is invertible");
    let tilde = &l_adj * &laplacian * &l_adj_inv;
    let tilde = (&tilde + tilde.adjoint()) * c(0.5);
    let svd = tilde.svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let smax = svd.singular_values.max();
    let mut pinv = CMat::zeros(n, n);
    let mut smallest_kept = f64::INFINITY;
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if smax > 0.0 && s > smax * RANK_TOL {
            smallest_kept = smallest_kept.min(s);
            pinv += vt.row(k).adjoint() * u.column(k).adjoint() * c(1.0 / s);
        }
    }
    let gamma = &l_adj_inv * pinv * &l_adj;
    let harmonic = CMat::identity(n, n) - &gamma * &laplacian;
    let ratio = if smallest_kept.is_finite() { smallest_kept / smax } else { 1.0 };
    let status = if ratio < CONDITION_WARNING {
        GreenStatus::IllConditioned { ratio }
    } else {
        GreenStatus::Ok
    };
    GreenPiece {
        gamma,
        harmonic,
        laplacian,
        status,
    }
}

/// Per-grade Green's operators; warnings are carried in each piece's status.
pub fn greens_operator(cx: &GradedComplex) -> &[GreenPiece] {
    cx.green()
}

/// Largest relative residual of `Gamma Delta + P = I` over the grades.
pub fn green_identity_residual(cx: &GradedComplex) -> f64 {
    cx.green
        .iter()
        .map(|g| {
            let n = g.gamma.nrows();
            let r = &g.gamma * &g.laplacian + &g.harmonic - CMat::identity(n, n);
            r.norm() / (n.max(1) as f64).sqrt()
        })
        .fold(0.0, f64::max)
}

/// `kappa(u) = u + d1^* Gamma(1/2 B(u, u))`.
pub fn kuranishi_forward(cx: &GradedComplex, u: &SliceVector) -> Result<SliceVector> {
    cx.check_c1(u)?;
    let mut out = u.clone();
    for w in cx.grades() {
        let y = cx.half_square_at(u, w);
        out.parts[cx.idx(w)] += cx.correction(w, &y);
    }
    Ok(out)
}

/// Solves `kappa(u) = x` for `x` in positive grades, one grade at a time:
/// `u_w = x_w - (d1^* Gamma(1/2 sum_{w1 + w2 = w} B(u_w1, u_w2)))_w`.
pub fn kuranishi_inverse_graded(cx: &GradedComplex, x: &SliceVector) -> Result<SliceVector> {
    cx.check_c1(x)?;
    if !x.is_positive() {
        return Err(Error::InvalidArgument(
            "input must be supported in positive grades".into(),
        ));
    }
    let mut u = cx.zero_c1();
    for w in cx.grades().filter(|&w| w > 0) {
        let y = cx.half_square_at(&u, w);
        let i = cx.idx(w);
        u.parts[i] = &x.parts[i] - cx.correction(w, &y);
    }
    Ok(u)
}

/// `k(x) = 1/2 P B(x, x)`.
pub fn obstruction(cx: &GradedComplex, x: &SliceVector) -> Result<SliceVector> {
    cx.check_c1(x)?;
    let mut out = cx.zero_c2();
    for w in cx.grades() {
        let i = cx.idx(w);
        out.parts[i] = &cx.green[i].harmonic * cx.half_square_at(x, w);
    }
    Ok(out)
}

/// Relative residual of `d1 u + 1/2 B(u, u) = d1 kappa(u) + 1/2 P B(u, u)`.
pub fn obstruction_identity_residual(cx: &GradedComplex, u: &SliceVector) -> Result<f64> {
    let half = |v: SliceVector| SliceVector {
        min_grade: v.min_grade,
        parts: v.parts.into_iter().map(|p| p * c(0.5)).collect(),
    };
    let lhs_b = half(cx.bracket(u, u));
    let lhs = SliceVector {
        min_grade: cx.min_grade,
        parts: cx.d1(u).parts.iter().zip(&lhs_b.parts).map(|(a, b)| a + b).collect(),
    };
    let k = kuranishi_forward(cx, u)?;
    let ob = obstruction(cx, u)?;
    let rhs = SliceVector {
        min_grade: cx.min_grade,
        parts: cx.d1(&k).parts.iter().zip(&ob.parts).map(|(a, b)| a + b).collect(),
    };
    Ok(lhs.sub(&rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE))
}

/// Parameters of [`random_complex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomComplexParams {
    pub grades: i32,
    pub max_c0: usize,
    pub max_c1: usize,
    pub max_c2: usize,
    /// Probability (in percent) that a bracket structure constant is nonzero.
    pub bracket_density: u32,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            grades: 4,
            max_c0: 2,
            max_c1: 5,
            max_c2: 4,
            bracket_density: 40,
        }
    }
}

/// A random complex in grades `1..=grades` with exact integer differentials: `d0` lands
/// in a block that `d1` kills, and both are then conjugated by an integer unimodular
/// change of basis of `C^1`. Inner products are random positive definite perturbations
/// of the identity and the bracket is a sparse random symmetric integer tensor.
pub fn random_complex<R: Rng>(rng: &mut R, params: &RandomComplexParams) -> GradedComplex {
    let mut pieces = Vec::new();
    for _ in 0..params.grades {
        let n0 = rng.random_range(0..=params.max_c0);
        let n1 = rng.random_range(n0.max(1)..=params.max_c1.max(n0.max(1)));
        let n2 = rng.random_range(1..=params.max_c2);
        let r0 = rng.random_range(0..=n0.min(n1));
        // C^1 = A (image of d0, dim r0) + rest; d1 vanishes on A
        let mut d0 = DMatrix::<i64>::zeros(n1, n0);
        for i in 0..r0 {
            for j in 0..n0 {
                d0[(i, j)] = rng.random_range(-2..=2);
            }
            d0[(i, i)] = rng.random_range(1..=2);
        }
        let mut d1 = DMatrix::<i64>::zeros(n2, n1);
        for i in 0..n2 {
            for j in r0..n1 {
                if rng.random_bool(0.6) {
                    d1[(i, j)] = rng.random_range(-2..=2);
                }
            }
        }
        let (u, u_inv) = unimodular(rng, n1);
        let d0 = &u * d0;
        let d1 = d1 * &u_inv;
        pieces.push(GradePiece {
            d0: to_complex(&d0),
            d1: to_complex(&d1),
            h0: random_metric(rng, n0),
            h1: random_metric(rng, n1),
            h2: random_metric(rng, n2),
        });
    }
    let mut bracket = BTreeMap::new();
    for w1 in 1..=params.grades {
        for w2 in w1..=params.grades - w1 {
            let (a, b, o) = (
                pieces[(w1 - 1) as usize].dims().1,
                pieces[(w2 - 1) as usize].dims().1,
                pieces[(w1 + w2 - 1) as usize].dims().2,
            );
            let tensor: BracketTensor = (0..o)
                .map(|_| {
                    let mut m = CMat::zeros(a, b);
                    for i in 0..a {
                        for j in 0..b {
                            if (w1 != w2 || i <= j) && rng.random_range(0..100) < params.bracket_density {
                                let v = c(rng.random_range(-3..=3) as f64);
                                m[(i, j)] = v;
                                if w1 == w2 {
                                    m[(j, i)] = v;
                                }
                            }
                        }
                    }
                    m
                })
                .collect();
            bracket.insert((w1, w2), tensor);
        }
    }
    GradedComplex::new(1, pieces, bracket).expect("generator produces valid complexes")
}

/// Strictly upper triangular `n x n` matrices graded by superdiagonal, bracket
/// `XY + YX`, `C^0 = 0` and `d1` a diagonal 0/1/2 scaling of each superdiagonal.
pub fn nilpotent_triangular<R: Rng>(rng: &mut R, n: usize) -> GradedComplex {
    let grades = n.saturating_sub(1).max(1);
    let mut pieces = Vec::new();
    for j in 1..=grades {
        let dim = n.saturating_sub(j);
        let d1 = CMat::from_diagonal(&CVec::from_fn(dim, |_, _| c(rng.random_range(0..=2) as f64)));
        pieces.push(GradePiece::euclidean(CMat::zeros(dim, 0), d1));
    }
    // coordinate p of grade j is the entry (p, p + j)
    let mut bracket = BTreeMap::new();
    for j1 in 1..=grades {
        for j2 in j1..=grades {
            if j1 + j2 > grades {
                continue;
            }
            let (a, b, o) = (n - j1, n - j2, n - j1 - j2);
            let mut t: BracketTensor = vec![CMat::zeros(a, b); o];
            for p in 0..o {
                // (XY)_{p, p+j1+j2} = X_{p, p+j1} Y_{p+j1, p+j1+j2}; (YX) similarly
                t[p][(p, p + j1)] += c(1.0);
                t[p][(p + j2, p)] += c(1.0);
            }
            if j1 == j2 {
                for m in &mut t {
                    *m = (&*m + m.transpose()) * c(0.5);
                }
            }
            bracket.insert((j1 as i32, j2 as i32), t);
        }
    }
    GradedComplex::new(1, pieces, bracket).expect("nilpotent model is valid")
}

/// Random element of `C^1` supported in positive grades.
pub fn random_slice_vector<R: Rng>(rng: &mut R, cx: &GradedComplex) -> SliceVector {
    let mut v = cx.zero_c1();
    for (i, p) in v.parts.iter_mut().enumerate() {
        if cx.min_grade + i as i32 > 0 {
            for z in p.iter_mut() {
                *z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
    }
    v
}

fn to_complex(m: &DMatrix<i64>) -> CMat {
    m.map(|v| c(v as f64))
}

fn random_metric<R: Rng>(rng: &mut R, n: usize) -> CMat {
    let a = CMat::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))
    });
    CMat::identity(n, n) + &a * a.adjoint() * c(0.5)
}

/// A random product of elementary integer column operations and its exact inverse.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (DMatrix<i64>, DMatrix<i64>) {
    let mut u = DMatrix::<i64>::identity(n, n);
    let mut inv = DMatrix::<i64>::identity(n, n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
        // u <- u (I + f E_ij), inv <- (I - f E_ij) inv
        for r in 0..n {
            let v = u[(r, i)];
            u[(r, j)] += f * v;
        }
        for col in 0..n {
            let v = inv[(j, col)];
            inv[(i, col)] -= f * v;
        }
    }
    (u, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(a: &SliceVector, b: &SliceVector) -> f64 {
        a.sub(b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn unimodular_pair_is_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (u, inv) = unimodular(&mut rng, 5);
        assert_eq!(u * inv, DMatrix::<i64>::identity(5, 5));
    }

    #[test]
    fn zero_differential_gives_zero_green() {
        let p = GradePiece::euclidean(CMat::zeros(2, 0), CMat::zeros(3, 2));
        let cx = GradedComplex::new(1, vec![p], BTreeMap::new()).unwrap();
        let g = &greens_operator(&cx)[0];
        assert_eq!(g.gamma, CMat::zeros(3, 3));
        assert_eq!(g.harmonic, CMat::identity(3, 3));
    }

    #[test]
    fn invertible_laplacian_inverts() {
        let d1 = CMat::from_row_slice(2, 2, &[c(2.0), c(0.0), c(1.0), c(1.0)]);
        let p = GradePiece::euclidean(CMat::zeros(2, 0), d1.clone());
        let cx = GradedComplex::new(1, vec![p], BTreeMap::new()).unwrap();
        let g = &greens_operator(&cx)[0];
        let inv = (&d1 * d1.adjoint()).try_inverse().unwrap();
        assert!((&g.gamma - inv).norm() < 1e-12);
        assert!(g.harmonic.norm() < 1e-12);
    }

    #[test]
    fn random_green_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let cx = random_complex(&mut rng, &RandomComplexParams::default());
            assert!(green_identity_residual(&cx) < 1e-9);
        }
    }

    #[test]
    fn d1_d0_must_vanish() {
        let p = GradePiece::euclidean(
            CMat::from_row_slice(1, 1, &[c(1.0)]),
            CMat::from_row_slice(1, 1, &[c(1.0)]),
        );
        assert!(GradedComplex::new(1, vec![p], BTreeMap::new()).is_err());
    }

    #[test]
    fn trivial_bracket_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cx0 = random_complex(&mut rng, &RandomComplexParams::default());
        let cx = GradedComplex::new(1, cx0.pieces().to_vec(), BTreeMap::new()).unwrap();
        let x = random_slice_vector(&mut rng, &cx);
        assert_eq!(kuranishi_forward(&cx, &x).unwrap(), x);
        assert_eq!(kuranishi_inverse_graded(&cx, &x).unwrap(), x);
        assert!(obstruction(&cx, &x).unwrap().norm() == 0.0);
    }

    #[test]
    fn round_trip_and_lowest_grade() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let cx = random_complex(&mut rng, &RandomComplexParams::default());
            let x = random_slice_vector(&mut rng, &cx);
            let u = kuranishi_inverse_graded(&cx, &x).unwrap();
            assert_eq!(u.grade(1), x.grade(1));
            assert!(rel(&kuranishi_forward(&cx, &u).unwrap(), &x) < 1e-9);
            assert!(obstruction_identity_residual(&cx, &u).unwrap() < 1e-9);
        }
    }

    #[test]
    fn equivariance_under_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cx = random_complex(&mut rng, &RandomComplexParams::default());
        let u = random_slice_vector(&mut rng, &cx);
        for t in [c(2.0), c(0.5), Complex64::new(0.0, 1.0)] {
            let lhs = kuranishi_forward(&cx, &u.scaled(t)).unwrap();
            let rhs = kuranishi_forward(&cx, &u).unwrap().scaled(t);
            assert!(rel(&lhs, &rhs) < 1e-9);
            let lhs = kuranishi_inverse_graded(&cx, &u.scaled(t)).unwrap();
            let rhs = kuranishi_inverse_graded(&cx, &u).unwrap().scaled(t);
            assert!(rel(&lhs, &rhs) < 1e-9);
        }
    }

    #[test]
    fn inverse_is_local_in_grade() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cx = random_complex(&mut rng, &RandomComplexParams::default());
        let x = random_slice_vector(&mut rng, &cx);
        let full = kuranishi_inverse_graded(&cx, &x).unwrap();
        for w in 1..=cx.max_grade() {
            let part = kuranishi_inverse_graded(&cx, &x.truncated(w)).unwrap();
            for v in 1..=w {
                assert_eq!(part.grade(v), full.grade(v));
            }
        }
    }

    #[test]
    fn nilpotent_model_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cx = nilpotent_triangular(&mut rng, 5);
        let x = random_slice_vector(&mut rng, &cx);
        let u = kuranishi_inverse_graded(&cx, &x).unwrap();
        assert!(rel(&kuranishi_forward(&cx, &u).unwrap(), &x) < 1e-9);
    }

    #[test]
    fn nilpotent_bracket_is_anticommutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cx = nilpotent_triangular(&mut rng, 4);
        // X = E_01 (grade 1, coordinate 0), Y = E_12 (grade 1, coordinate 1)
        let mut x = cx.zero_c1();
        x.parts[0][0] = c(1.0);
        let mut y = cx.zero_c1();
        y.parts[0][1] = c(1.0);
        let b = cx.bracket(&x, &y);
        // XY + YX = E_02, grade 2 coordinate 0
        assert_eq!(b.parts[1][0], c(1.0));
        assert_eq!(b.norm(), 1.0);
    }
}
