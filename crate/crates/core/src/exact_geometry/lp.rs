//! Exact rational linear programming: a dense two-phase primal simplex with
//! Bland's anti-cycling rule.

use num_traits::{One, Signed, Zero};

use super::linalg::{check_dim, QVec, Q};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: QVec,
    relation: Relation,
    rhs: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: QVec, value: Q },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&QVec, &Q)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

/// A linear program over named variable slots.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    vars: Vec<VarKind>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vars(kind: VarKind, n: usize) -> Self {
        LinearProgram {
            vars: vec![kind; n],
            constraints: Vec::new(),
        }
    }

    pub fn add_var(&mut self, kind: VarKind) -> usize {
        self.vars.push(kind);
        // widen existing rows
        for c in &mut self.constraints {
            c.coeffs.0.push(Q::zero());
        }
        self.vars.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn add_constraint(&mut self, coeffs: QVec, relation: Relation, rhs: Q) -> Result<()> {
        check_dim(self.vars.len(), coeffs.dim())?;
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    /// Adds a constraint given as sparse `(index, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Q)], relation: Relation, rhs: Q) {
        let mut coeffs = QVec::zeros(self.vars.len());
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn minimize(&self, objective: &QVec) -> Result<LpOutcome> {
        check_dim(self.vars.len(), objective.dim())?;
        Ok(self.solve_standard(objective))
    }

    pub fn maximize(&self, objective: &QVec) -> Result<LpOutcome> {
        check_dim(self.vars.len(), objective.dim())?;
        Ok(match self.solve_standard(&-objective) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        })
    }

    pub fn feasible_point(&self) -> Option<QVec> {
        match self.solve_standard(&QVec::zeros(self.vars.len())) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Rewrites into `min c.y, A y = b, y >= 0, b >= 0` and runs the simplex.
    fn solve_standard(&self, objective: &QVec) -> LpOutcome {
        // column layout: for each original var one column (plus a second for free vars),
        // then one slack per inequality.
        let mut col_of = Vec::with_capacity(self.vars.len());
        let mut ncols = 0;
        for kind in &self.vars {
            col_of.push(ncols);
            ncols += match kind {
                VarKind::NonNegative => 1,
                VarKind::Free => 2,
            };
        }
        let structural = ncols;
        let n_slack = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        ncols += n_slack;

        let m = self.constraints.len();
        let mut a = vec![vec![Q::zero(); ncols]; m];
        let mut b = vec![Q::zero(); m];
        let mut slack = structural;
        for (i, c) in self.constraints.iter().enumerate() {
            for (v, kind) in self.vars.iter().enumerate() {
                let coef = &c.coeffs[v];
                if coef.is_zero() {
                    continue;
                }
                a[i][col_of[v]] = coef.clone();
                if *kind == VarKind::Free {
                    a[i][col_of[v] + 1] = -coef.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    a[i][slack] = Q::one();
                    slack += 1;
                }
                Relation::Ge => {
                    a[i][slack] = -Q::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            b[i] = c.rhs.clone();
            if b[i].is_negative() {
                b[i] = -b[i].clone();
                a[i].iter_mut().for_each(|x| *x = -x.clone());
            }
        }
        let mut cost = vec![Q::zero(); ncols];
        for (v, kind) in self.vars.iter().enumerate() {
            cost[col_of[v]] = objective[v].clone();
            if *kind == VarKind::Free {
                cost[col_of[v] + 1] = -objective[v].clone();
            }
        }

        let y = match simplex_standard(a, b, &cost) {
            StandardOutcome::Optimal(y) => y,
            StandardOutcome::Infeasible => return LpOutcome::Infeasible,
            StandardOutcome::Unbounded => return LpOutcome::Unbounded,
        };
        let x: QVec = self
            .vars
            .iter()
            .enumerate()
            .map(|(v, kind)| match kind {
                VarKind::NonNegative => y[col_of[v]].clone(),
                VarKind::Free => &y[col_of[v]] - &y[col_of[v] + 1],
            })
            .collect();
        let value = objective.dot(&x).expect("dimensions checked");
        LpOutcome::Optimal { x, value }
    }
}

enum StandardOutcome {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    reduced: Vec<Q>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
            self.rhs[i] -= &prhs * &f;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (x, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Q]) {
        let mut reduced = cost.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &cost[bv];
            if cb.is_zero() {
                continue;
            }
            for (x, t) in reduced.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *x -= cb * t;
                }
            }
        }
        self.reduced = reduced;
    }

    /// Bland's rule iterations; `allowed` masks columns that may enter.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][enter];
                if !t.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / t;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

fn simplex_standard(a: Vec<Vec<Q>>, b: Vec<Q>, cost: &[Q]) -> StandardOutcome {
    let m = a.len();
    let n = cost.len();
    // phase one: artificial column n+i for row i
    let rows: Vec<Vec<Q>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        rhs: b,
        basis: (n..n + m).collect(),
        reduced: Vec::new(),
    };
    let mut phase1 = vec![Q::zero(); n + m];
    phase1[n..].iter_mut().for_each(|x| *x = Q::one());
    t.set_objective(&phase1);
    t.optimize(n + m);
    let infeasibility: Q = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bv, _)| bv >= n)
        .fold(Q::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        return StandardOutcome::Infeasible;
    }
    // drive artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    for row in &mut t.rows {
        row.truncate(n);
    }
    t.reduced.truncate(n);
    t.set_objective(cost);
    if !t.optimize(n) {
        return StandardOutcome::Unbounded;
    }
    let mut y = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        y[bv] = t.rhs[i].clone();
    }
    StandardOutcome::Optimal(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::linalg::{q, qr};

    #[test]
    fn small_lp_optimum() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, 2);
        lp.add_constraint(QVec::from_i64(&[1, 2]), Relation::Le, q(4)).unwrap();
        lp.add_constraint(QVec::from_i64(&[3, 1]), Relation::Le, q(6)).unwrap();
        let out = lp.maximize(&QVec::from_i64(&[1, 1])).unwrap();
        let (x, v) = out.optimal().unwrap();
        assert_eq!(*v, qr(14, 5));
        assert_eq!(x, &QVec(vec![qr(8, 5), qr(6, 5)]));
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x s.t. x - y = -3, y >= 1 (y free) -> x = -2
        let mut lp = LinearProgram::with_vars(VarKind::Free, 2);
        lp.add_constraint(QVec::from_i64(&[1, -1]), Relation::Eq, q(-3)).unwrap();
        lp.add_constraint(QVec::from_i64(&[0, 1]), Relation::Ge, q(1)).unwrap();
        let out = lp.minimize(&QVec::from_i64(&[1, 0])).unwrap();
        assert_eq!(out.optimal().unwrap().1, &q(-2));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, 1);
        lp.add_constraint(QVec::from_i64(&[1]), Relation::Le, q(-1)).unwrap();
        assert_eq!(lp.minimize(&QVec::from_i64(&[1])).unwrap(), LpOutcome::Infeasible);

        let lp = LinearProgram::with_vars(VarKind::Free, 1);
        assert_eq!(lp.minimize(&QVec::from_i64(&[1])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_redundant_rows() {
        // duplicated equality row must be dropped after phase one
        let mut lp = LinearProgram::with_vars(VarKind::NonNegative, 2);
        lp.add_constraint(QVec::from_i64(&[1, 1]), Relation::Eq, q(1)).unwrap();
        lp.add_constraint(QVec::from_i64(&[2, 2]), Relation::Eq, q(2)).unwrap();
        let out = lp.minimize(&QVec::from_i64(&[1, -1])).unwrap();
        assert_eq!(out.optimal().unwrap().1, &q(-1));
    }
}
