//! Saturated integer sublattices and integer kernels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A saturated sublattice of `Z^n` given by a basis in row Hermite normal form, so two
/// lattices are equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    /// The whole of `Z^n`.
    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice {
            ambient_dim: n,
            basis,
        }
    }

    pub fn trivial(n: usize) -> Self {
        Lattice {
            ambient_dim: n,
            basis: Vec::new(),
        }
    }

    /// Saturation of the span of `vectors`.
    pub fn saturation_of(n: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        // (v^perp)^perp, both taken over the integers
        let perp = saturated_kernel(n, vectors)?;
        saturated_kernel(n, &perp.basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Pairings `<w, b>` of a character against each basis cocharacter.
    pub fn restrict(&self, w: &[i64]) -> Vec<i64> {
        self.basis
            .iter()
            .map(|b| b.iter().zip(w).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// `sum_i y_i b_i` for coordinates `y` in this basis.
    pub fn lift(&self, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ambient_dim];
        for (c, b) in y.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Sublattice of `self` given by integer coordinate vectors relative to this basis.
    pub fn sublattice(&self, coords: &Lattice) -> Result<Lattice> {
        if coords.ambient_dim != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coords.ambient_dim,
            });
        }
        let rows: Vec<Vec<i128>> = coords
            .basis
            .iter()
            .map(|y| self.lift(y).into_iter().map(i128::from).collect())
            .collect();
        Ok(Lattice {
            ambient_dim: self.ambient_dim,
            basis: to_i64(hermite_rows(rows, self.ambient_dim))?,
        })
    }

    /// True when `x` lies in the lattice.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.ambient_dim {
            return false;
        }
        let mut rest: Vec<i128> = x.iter().map(|&v| i128::from(v)).collect();
        // basis is in echelon form with positive pivots
        for b in &self.basis {
            let p = b.iter().position(|&v| v != 0).expect("nonzero basis row");
            let bp = i128::from(b[p]);
            if rest[p] % bp != 0 {
                return false;
            }
            let m = rest[p] / bp;
            for (r, v) in rest.iter_mut().zip(b) {
                *r -= m * i128::from(*v);
            }
        }
        rest.iter().all(|&v| v == 0)
    }
}

/// Basis of the integer kernel `{x in Z^dim : <w, x> = 0 for all w}`.
///
/// The kernel is read off from a unimodular column reduction of the weight matrix, so it
/// is saturated automatically; the basis is then put in Hermite normal form.
pub fn saturated_kernel(dim: usize, weights: &[Vec<i64>]) -> Result<Lattice> {
    for w in weights {
        if w.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: w.len(),
            });
        }
    }
    let m = weights.len();
    // columns of [A; I], stored column-major
    let mut cols: Vec<Vec<i128>> = (0..dim)
        .map(|j| {
            let mut c: Vec<i128> = weights.iter().map(|w| i128::from(w[j])).collect();
            c.extend((0..dim).map(|i| i128::from(i == j)));
            c
        })
        .collect();
    let mut pivot = 0;
    for r in 0..m {
        if pivot == dim {
            break;
        }
        // gcd-reduce row r across columns pivot..dim into column `pivot`
        loop {
            let nonzero: Vec<usize> = (pivot..dim).filter(|&j| cols[j][r] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&j| cols[j][r].abs())
                .expect("nonempty");
            cols.swap(pivot, best);
            if nonzero.len() == 1 {
                pivot += 1;
                break;
            }
            for j in pivot + 1..dim {
                let f = cols[j][r] / cols[pivot][r];
                if f != 0 {
                    for i in 0..m + dim {
                        let v = cols[pivot][i];
                        cols[j][i] = cols[j][i].checked_sub(f * v).ok_or_else(overflow)?;
                    }
                }
            }
        }
    }
    let kernel: Vec<Vec<i128>> = cols[pivot..].iter().map(|c| c[m..].to_vec()).collect();
    Ok(Lattice {
        ambient_dim: dim,
        basis: to_i64(hermite_rows(kernel, dim))?,
    })
}

fn overflow() -> Error {
    Error::Internal("integer overflow in lattice reduction".into())
}

fn to_i64(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>> {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| i64::try_from(v).map_err(|_| overflow()))
                .collect()
        })
        .collect()
}

/// Row Hermite normal form of linearly independent rows: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
fn hermite_rows(mut rows: Vec<Vec<i128>>, n: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            let Some(&best) = nonzero.iter().min_by_key(|&&i| rows[i][c].abs()) else {
                break;
            };
            rows.swap(r, best);
            if nonzero.len() == 1 {
                break;
            }
            for i in r + 1..rows.len() {
                let f = rows[i][c] / rows[r][c];
                if f != 0 {
                    for j in 0..n {
                        let v = rows[r][j];
                        rows[i][j] -= f * v;
                    }
                }
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            rows[r].iter_mut().for_each(|v| *v = -*v);
        }
        let p = rows[r][c];
        for i in 0..r {
            let f = rows[i][c].div_euclid(p);
            if f != 0 {
                for j in 0..n {
                    let v = rows[r][j];
                    rows[i][j] -= f * v;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}
