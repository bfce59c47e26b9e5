//! The stratification procedure for a stable vector in a graded torus representation:
//! a chain of stabilizer tori, weight subsets peeled off along faces of sheared weight
//! polytopes, and a one-parameter subgroup `(x, sigma)` with an integer degree ladder.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_geometry::{
    affine_dimension, format_q, q, q_to_i64, saturated_kernel, solve_mixed_system, Lattice,
    PolytopeQ, QVec, RaySlice, Q,
};
use crate::kempf_ness::{kn_minimize, KnProblem, KnResult, DEFAULT_TOL};
use crate::stability::{classify, classify_weights, Certificate, Stability};
use crate::torus_rep::{RepVector, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifyOptions {
    /// `sigma` is this multiple of the smallest admissible value.
    pub sigma_multiple: i64,
}

impl Default for StratifyOptions {
    fn default() -> Self {
        StratifyOptions { sigma_multiple: 1 }
    }
}

/// Data produced by one iteration. Components of `u` are referred to by line index.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    /// `G_n` as a sublattice of the cocharacters of `G`.
    pub torus: Lattice,
    /// Lines of `u_n` fixed by `G_n`.
    pub nu: Vec<usize>,
    /// The weight subset `S_n`.
    pub weights: BTreeSet<Weight>,
    /// Lines of `P_{S_n}(u)`.
    pub lines: Vec<usize>,
    /// Points of the sheared, projected hull `C_n`.
    pub hull_points: Vec<QVec>,
    /// Indices into `hull_points` spanning the face `F_n`.
    pub face: Vec<usize>,
    pub c: Q,
    pub c_upper: Q,
    /// Convex weights on `hull_points` realizing `(0, c)`.
    pub c_certificate: QVec,
    /// `x_n`, in cocharacter coordinates of `G`.
    pub x: QVec,
    /// `dim C_n == dim q_n(C_n)`.
    pub equal_dimension: bool,
    /// Class of `P_{S_n}(u)` under `G_n`.
    pub restricted_class: Stability,
    /// `d_n = c_n sigma`.
    pub d: i64,
    /// `(line, d_nj)` for the components of `nu_n`.
    pub nu_exponents: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratifyResult {
    pub rank: usize,
    pub x: Vec<i64>,
    pub sigma: i64,
    /// `sum_n x_n` before clearing denominators.
    pub x_rational: QVec,
    /// `G_0 ⊃ G_1 ⊃ ... ⊃ G_k`, the last one trivial.
    pub tori: Vec<Lattice>,
    pub stages: Vec<Stage>,
    /// Lines of the residual `u_k`.
    pub residual: Vec<usize>,
    /// `(line, e_j)` for the residual components.
    pub residual_exponents: Vec<(usize, i64)>,
}

impl StratifyResult {
    pub fn k(&self) -> usize {
        self.stages.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.stages.iter().map(|s| s.d).collect()
    }

    /// `phi_j = sum_{i <= j} nu_i + sum_{i < j} P_{S_i}(u)` as line indices.
    pub fn phi_lines(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.stages[..=j]
            .iter()
            .flat_map(|s| s.nu.iter().copied())
            .chain(self.stages[..j].iter().flat_map(|s| s.lines.iter().copied()))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Runs the iteration on a `G`-stable `u` whose effective lines all have `rho >= 1`.
pub fn stratify(u: &RepVector, options: &StratifyOptions) -> Result<StratifyResult> {
    let rep = u.rep();
    if !rep.is_graded() {
        return Err(Error::InvalidArgument(
            "stratification needs a graded representation".into(),
        ));
    }
    if options.sigma_multiple < 1 {
        return Err(Error::InvalidArgument("sigma multiple must be >= 1".into()));
    }
    for i in u.support() {
        let line = &rep.lines()[i];
        if line.rho.unwrap_or(0) < 1 {
            return Err(Error::InvalidArgument(format!(
                "line `{}`: rho must be >= 1",
                line.label
            )));
        }
    }
    let class = classify(u)?;
    if class.class != Stability::Stable {
        let detail = match &class.certificate {
            Certificate::Destabilizing { cocharacter, .. } => {
                format!("{}, destabilizing cocharacter {:?}", class.class.as_str(), cocharacter)
            }
            Certificate::Flat { flat, .. } => {
                format!("{}, flat directions {:?}", class.class.as_str(), flat.basis())
            }
            Certificate::Interior { .. } => class.class.as_str().to_string(),
        };
        return Err(Error::NotStable(detail));
    }

    let k = rep.rank();
    let lines = rep.lines();
    let mut remaining: BTreeSet<usize> = u.support().into_iter().collect();
    let mut torus = Lattice::full(k);
    let mut tori = vec![torus.clone()];
    let mut x_sum = QVec::zeros(k);
    let mut c_prev = Q::zero();
    let mut raw = Vec::new();

    while !torus.is_trivial() {
        let n = raw.len();
        if n > k {
            return Err(Error::Internal("stage count exceeded torus rank".into()));
        }
        let r = torus.rank();
        let nu: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| torus.restrict(&lines[i].weight).iter().all(|&p| p == 0))
            .collect();
        for i in &nu {
            remaining.remove(i);
        }
        // sheared and projected points of the weights of u - phi_n
        let mut point_of_line: BTreeMap<usize, QVec> = BTreeMap::new();
        for &i in &remaining {
            let l = &lines[i];
            let mut p: QVec = torus.restrict(&l.weight).into_iter().map(q).collect();
            let shear = QVec::from_i64(&l.weight).dot(&x_sum)?;
            p.0.push(q(l.rho.unwrap_or(0)) + shear);
            point_of_line.insert(i, p);
        }
        let points: Vec<QVec> = point_of_line
            .values()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if points.is_empty() {
            return Err(Error::RayEmpty { stage: n });
        }
        let hull = PolytopeQ::new(points.clone())?;
        let RaySlice::Interval(iv) = hull.ray_intersect(r)? else {
            return Err(Error::RayEmpty { stage: n });
        };
        let c_cert = match iv.lower_weights {
            Some(w) if iv.lower > c_prev => w,
            _ => {
                return Err(Error::NonIncreasing {
                    stage: n,
                    previous: format_q(&c_prev),
                    current: format_q(&iv.lower),
                })
            }
        };
        let c = iv.lower.clone();
        let mut target = QVec::zeros(r + 1);
        target[r] = c.clone();
        let face = hull.minimal_face(&target)?;
        let face_points: BTreeSet<&QVec> = face.iter().map(|&f| &points[f]).collect();

        let stage_lines: Vec<usize> = point_of_line
            .iter()
            .filter(|(_, p)| face_points.contains(p))
            .map(|(&i, _)| i)
            .collect();
        let s: BTreeSet<Weight> = stage_lines.iter().map(|&i| lines[i].full_weight()).collect();

        let restricted: Vec<Vec<i64>> = stage_lines
            .iter()
            .map(|&i| torus.restrict(&lines[i].weight))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let restricted_class = classify_weights(r, &restricted)?.class;
        if !restricted_class.is_polystable() {
            return Err(Error::Internal(format!(
                "stage {n}: projected face is {} under the current torus",
                restricted_class.as_str()
            )));
        }

        // <m, y> = c - rho' on the face, > c - rho' off it
        let mut eqs = BTreeSet::new();
        let mut strict = BTreeSet::new();
        for (f, p) in points.iter().enumerate() {
            let m = QVec(p.0[..r].to_vec());
            let rhs = &c - &p[r];
            if face.contains(&f) {
                eqs.insert((m, rhs));
            } else {
                strict.insert((m, rhs));
            }
        }
        let eqs: Vec<_> = eqs.into_iter().collect();
        let strict: Vec<_> = strict.into_iter().collect();
        let y = solve_mixed_system(r, &eqs, &strict)?
            .ok_or_else(|| Error::Internal(format!("stage {n}: face equations infeasible")))?;
        let mut x_n = QVec::zeros(k);
        for (yj, b) in y.iter().zip(torus.basis()) {
            x_n = &x_n + &QVec::from_i64(b).scale(yj);
        }
        x_sum = &x_sum + &x_n;

        let projected: Vec<QVec> = points.iter().map(|p| QVec(p.0[..r].to_vec())).collect();
        let equal_dimension = affine_dimension(&points) == affine_dimension(&projected);

        let next = torus.sublattice(&saturated_kernel(r, &restricted)?)?;
        for i in &stage_lines {
            remaining.remove(i);
        }
        raw.push(Stage {
            torus: torus.clone(),
            nu,
            weights: s,
            lines: stage_lines,
            hull_points: points,
            face,
            c: c.clone(),
            c_upper: iv.upper,
            c_certificate: c_cert,
            x: x_n,
            equal_dimension,
            restricted_class,
            d: 0,
            nu_exponents: Vec::new(),
        });
        c_prev = c;
        if next.rank() >= torus.rank() {
            return Err(Error::Internal(format!("stage {n}: stabilizer did not shrink")));
        }
        torus = next;
        tori.push(torus.clone());
    }

    let mut den = x_sum.denominator_lcm();
    for st in &raw {
        den = den.lcm(st.c.denom());
    }
    let sigma_q = Q::from_integer(den * BigInt::from(options.sigma_multiple));
    let sigma = q_to_i64(&sigma_q).ok_or_else(|| Error::Internal("sigma overflow".into()))?;
    let x_q = x_sum.scale(&sigma_q);
    let x = x_q
        .to_i64()
        .ok_or_else(|| Error::Internal("cocharacter overflow".into()))?;
    let exps = u.exponents_by_line(&x_q, sigma)?;
    let exp = |i: usize| exps[i].expect("support line");

    for st in &mut raw {
        st.d = q_to_i64(&(&st.c * &sigma_q)).ok_or_else(|| Error::Internal("degree overflow".into()))?;
        st.nu_exponents = st.nu.iter().map(|&i| (i, exp(i))).collect();
    }
    let residual: Vec<usize> = remaining.into_iter().collect();
    let residual_exponents = residual.iter().map(|&i| (i, exp(i))).collect();
    Ok(StratifyResult {
        rank: k,
        x,
        sigma,
        x_rational: x_sum,
        tori,
        stages: raw,
        residual,
        residual_exponents,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &'static str, failures: Vec<String>) {
        self.checks.push(Check {
            name,
            passed: failures.is_empty(),
            detail: failures.join("; "),
        });
    }
}

/// Independently recomputes every exponent of `u` under `(x, sigma)` and checks the
/// degree ladder, the bounds on `nu` and residual exponents, fixedness, the torus chain
/// and that the pieces partition the support of `u`.
pub fn verify_decomposition(result: &StratifyResult, u: &RepVector) -> VerificationReport {
    let mut report = VerificationReport { checks: Vec::new() };
    let lines = u.rep().lines();
    let pair = |w: &[i64], b: &[i64]| -> i64 { w.iter().zip(b).map(|(a, c)| a * c).sum() };
    let k = result.k();

    let mut f = Vec::new();
    if result.sigma < 1 {
        f.push(format!("sigma = {}", result.sigma));
    }
    if QVec::from_i64(&result.x) != result.x_rational.scale(&q(result.sigma)) {
        f.push("x differs from sigma * sum x_n".into());
    }
    let stage_sum = result
        .stages
        .iter()
        .fold(QVec::zeros(result.rank), |a, s| &a + &s.x);
    if stage_sum != result.x_rational {
        f.push("sum of stage cocharacters differs from recorded total".into());
    }
    report.push("cocharacter", f);

    let exps = match u.exponents_by_line(&QVec::from_i64(&result.x), result.sigma) {
        Ok(e) => e,
        Err(e) => {
            report.push("exponents_computable", vec![e.to_string()]);
            return report;
        }
    };
    let exp = |i: usize| exps.get(i).copied().flatten();

    let mut f = Vec::new();
    let mut prev_d = 0;
    let mut prev_c = Q::zero();
    for (n, st) in result.stages.iter().enumerate() {
        if st.d <= prev_d {
            f.push(format!("d_{n} = {} is not above {prev_d}", st.d));
        }
        if st.c <= prev_c || !st.c.is_positive() {
            f.push(format!("c_{n} = {} is not above {}", format_q(&st.c), format_q(&prev_c)));
        }
        if Q::from_integer(BigInt::from(st.d)) != &st.c * q(result.sigma) {
            f.push(format!("d_{n} != c_{n} sigma"));
        }
        prev_d = st.d;
        prev_c = st.c.clone();
    }
    report.push("degree_ladder", f);

    let mut f = Vec::new();
    for (n, st) in result.stages.iter().enumerate() {
        if st.lines.is_empty() {
            f.push(format!("S_{n} is empty"));
        }
        for &i in &st.lines {
            match exp(i) {
                Some(e) if e == st.d => {}
                other => f.push(format!("line {} at stage {n}: exponent {other:?}, d = {}", lines[i].label, st.d)),
            }
        }
    }
    report.push("stage_exponents", f);

    let mut f = Vec::new();
    for (n, st) in result.stages.iter().enumerate() {
        let lower = if n == 0 { 0 } else { result.stages[n - 1].d };
        for &(i, recorded) in &st.nu_exponents {
            match exp(i) {
                Some(e) if e == recorded && e > lower => {}
                other => f.push(format!(
                    "nu line {} at stage {n}: exponent {other:?} (recorded {recorded}), bound {lower}",
                    lines[i].label
                )),
            }
        }
        if st.nu_exponents.iter().map(|p| p.0).collect::<Vec<_>>() != st.nu {
            f.push(format!("nu exponents at stage {n} do not cover nu"));
        }
    }
    report.push("nu_exponent_bounds", f);

    let mut f = Vec::new();
    let lower = result.stages.last().map(|s| s.d).unwrap_or(0);
    for &(i, recorded) in &result.residual_exponents {
        match exp(i) {
            Some(e) if e == recorded && e > lower => {}
            other => f.push(format!(
                "residual line {}: exponent {other:?} (recorded {recorded}), bound {lower}",
                lines[i].label
            )),
        }
    }
    if result.residual_exponents.iter().map(|p| p.0).collect::<Vec<_>>() != result.residual {
        f.push("residual exponents do not cover the residual".into());
    }
    report.push("residual_exponent_bounds", f);

    let mut f = Vec::new();
    for (n, st) in result.stages.iter().enumerate() {
        for &i in &st.nu {
            if st.torus.basis().iter().any(|b| pair(&lines[i].weight, b) != 0) {
                f.push(format!("nu line {} not fixed by G_{n}", lines[i].label));
            }
        }
        if let Some(next) = result.tori.get(n + 1) {
            for &i in &st.lines {
                if next.basis().iter().any(|b| pair(&lines[i].weight, b) != 0) {
                    f.push(format!("line {} of S_{n} not fixed by G_{}", lines[i].label, n + 1));
                }
            }
        }
    }
    report.push("fixedness", f);

    let mut f = Vec::new();
    if result.tori.len() != k + 1 {
        f.push(format!("{} tori for {k} stages", result.tori.len()));
    }
    if result.tori.first().map(|t| t != &Lattice::full(result.rank)).unwrap_or(true) {
        f.push("G_0 is not the whole torus".into());
    }
    if !result.tori.last().map(Lattice::is_trivial).unwrap_or(false) {
        f.push("last torus is not trivial".into());
    }
    for w in result.tori.windows(2) {
        if w[1].rank() >= w[0].rank() || !w[1].basis().iter().all(|b| w[0].contains(b)) {
            f.push("torus chain is not strictly decreasing".into());
        }
    }
    for (st, t) in result.stages.iter().zip(&result.tori) {
        if &st.torus != t {
            f.push("stage torus differs from chain".into());
        }
    }
    if k > result.rank + 1 {
        f.push(format!("{k} stages for rank {}", result.rank));
    }
    report.push("torus_chain", f);

    let mut f = Vec::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let pieces = result
        .stages
        .iter()
        .flat_map(|s| s.nu.iter().chain(&s.lines))
        .chain(&result.residual);
    for &i in pieces {
        *seen.entry(i).or_insert(0) += 1;
    }
    let support: Vec<usize> = u.support();
    if seen.keys().copied().collect::<Vec<_>>() != support || seen.values().any(|&m| m != 1) {
        f.push("pieces do not partition the support of u".into());
    }
    for (n, st) in result.stages.iter().enumerate() {
        let from_weights: Vec<usize> = support
            .iter()
            .copied()
            .filter(|&i| st.weights.contains(&lines[i].full_weight()))
            .filter(|i| !result.stages[..n].iter().any(|p| p.lines.contains(i) || p.nu.contains(i)))
            .filter(|i| !st.nu.contains(i))
            .collect();
        if from_weights != st.lines {
            f.push(format!("lines of S_{n} do not match its weights"));
        }
    }
    report.push("decomposition", f);

    let mut f = Vec::new();
    for (n, st) in result.stages.iter().enumerate() {
        let weights: Vec<Vec<i64>> = st
            .lines
            .iter()
            .map(|&i| st.torus.restrict(&lines[i].weight))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        match classify_weights(st.torus.rank(), &weights) {
            Ok(c) if c.class.is_polystable() && c.class == st.restricted_class => {}
            other => f.push(format!("P_S{n}(u) under G_{n}: {other:?}")),
        }
        let distinct: BTreeSet<&QVec> = st.face.iter().map(|&j| &st.hull_points[j]).collect();
        if distinct.len() < 2 {
            f.push(format!("F_{n} is a vertex"));
        }
        let mut target = QVec::zeros(st.torus.rank() + 1);
        target[st.torus.rank()] = st.c.clone();
        let poly = PolytopeQ::new(st.hull_points.clone());
        if !poly.map(|p| p.verify_convex_weights(&st.c_certificate, &target)).unwrap_or(false) {
            f.push(format!("c_{n} certificate does not reproduce (0, c_{n})"));
        }
        if st.equal_dimension && (n + 1 != k || !result.residual.is_empty()) {
            f.push(format!("stage {n} has equal dimensions but u_{} != 0", n + 1));
        }
    }
    report.push("stage_geometry", f);
    report
}

/// Kempf-Ness minimizer of `P_{S_n}(u)` under `G_n` for every stage.
pub fn stage_kn_minimizers(result: &StratifyResult, u: &RepVector) -> Result<Vec<KnResult>> {
    result
        .stages
        .iter()
        .map(|st| {
            let piece = u.keep_lines(&st.lines.iter().copied().collect());
            let restricted = piece.restrict(&st.torus)?;
            kn_minimize(&KnProblem::from_vector(&restricted), DEFAULT_TOL)
        })
        .collect()
}

/// `u - phi_j` as a vector, for filtration checks.
pub fn without_phi(result: &StratifyResult, u: &RepVector, j: usize) -> RepVector {
    let phi: BTreeSet<usize> = result.phi_lines(j).into_iter().collect();
    u.keep_lines(&(0..u.amplitudes().len()).filter(|i| !phi.contains(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geometry::qr;
    use crate::kempf_ness::KnStatus;
    use crate::torus_rep::Representation;
    use std::sync::Arc;

    fn graded(rank: usize, lines: &[(Vec<i64>, i64)], amps: &[f64]) -> RepVector {
        let rep = Representation::from_graded(rank, lines).unwrap();
        RepVector::from_real(Arc::new(rep), amps).unwrap()
    }

    #[test]
    fn worked_example_two_lines() {
        let u = graded(1, &[(vec![1], 1), (vec![-1], 2)], &[1.0, 1.0]);
        let r = stratify(&u, &StratifyOptions::default()).unwrap();
        assert_eq!(r.k(), 1);
        assert_eq!(r.stages[0].c, qr(3, 2));
        assert_eq!(r.stages[0].x, QVec(vec![qr(1, 2)]));
        assert_eq!((r.sigma, r.x.clone(), r.degrees()), (2, vec![1], vec![3]));
        assert!(r.residual.is_empty());
        assert!(r.stages[0].equal_dimension);
        let e = u.one_ps_exponents(&QVec::from_i64(&r.x), r.sigma).unwrap();
        assert!(e.values().all(|&v| v == 3));
        assert!(verify_decomposition(&r, &u).all_passed());
    }

    #[test]
    fn worked_example_with_fixed_component() {
        let u = graded(1, &[(vec![0], 1), (vec![1], 1), (vec![-1], 3)], &[1.0, 1.0, 1.0]);
        let r = stratify(&u, &StratifyOptions::default()).unwrap();
        let st = &r.stages[0];
        assert_eq!(st.nu, vec![0]);
        assert_eq!(st.c, q(2));
        assert_eq!((r.sigma, r.x.clone(), st.d), (1, vec![1], 2));
        assert_eq!(st.nu_exponents, vec![(0, 1)]);
        assert!(verify_decomposition(&r, &u).all_passed());
    }

    #[test]
    fn trivial_torus_gives_empty_chain() {
        let u = graded(0, &[(vec![], 1), (vec![], 3)], &[1.0, 2.0]);
        let r = stratify(&u, &StratifyOptions::default()).unwrap();
        assert_eq!(r.k(), 0);
        assert_eq!((r.sigma, r.x.len()), (1, 0));
        assert_eq!(r.residual_exponents, vec![(0, 1), (1, 3)]);
        assert!(verify_decomposition(&r, &u).all_passed());
    }

    #[test]
    fn tampered_degree_is_caught() {
        let u = graded(1, &[(vec![1], 1), (vec![-1], 2)], &[1.0, 1.0]);
        let mut r = stratify(&u, &StratifyOptions::default()).unwrap();
        r.stages[0].d -= 1;
        let report = verify_decomposition(&r, &u);
        assert!(!report.all_passed());
        assert!(report.failures().iter().any(|c| c.name == "stage_exponents"));
    }

    #[test]
    fn unstable_input_is_rejected() {
        let u = graded(1, &[(vec![1], 1), (vec![2], 2)], &[1.0, 1.0]);
        assert!(matches!(
            stratify(&u, &StratifyOptions::default()),
            Err(Error::NotStable(_))
        ));
    }

    #[test]
    fn rho_zero_is_rejected() {
        let u = graded(1, &[(vec![1], 0), (vec![-1], 2)], &[1.0, 1.0]);
        assert!(matches!(
            stratify(&u, &StratifyOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sigma_multiple_scales_everything() {
        let u = graded(1, &[(vec![1], 1), (vec![-1], 2)], &[1.0, 1.0]);
        let r = stratify(&u, &StratifyOptions { sigma_multiple: 3 }).unwrap();
        assert_eq!((r.sigma, r.x.clone(), r.degrees()), (6, vec![3], vec![9]));
        assert!(verify_decomposition(&r, &u).all_passed());
    }

    #[test]
    fn two_stage_example() {
        // rank 2: the first face only involves the first coordinate, leaving a rank-1
        // stabilizer for the second stage
        let u = graded(
            2,
            &[
                (vec![1, 0], 1),
                (vec![-1, 0], 1),
                (vec![0, 1], 2),
                (vec![0, -1], 3),
            ],
            &[1.0; 4],
        );
        let r = stratify(&u, &StratifyOptions::default()).unwrap();
        assert_eq!(r.k(), 2);
        assert!(verify_decomposition(&r, &u).all_passed(), "{:?}", verify_decomposition(&r, &u));
        assert_eq!(r.tori[1].rank(), 1);
    }

    #[test]
    fn stage_minimizer_of_worked_example() {
        let u = graded(1, &[(vec![1], 1), (vec![-1], 2)], &[2.0, 1.0]);
        let r = stratify(&u, &StratifyOptions::default()).unwrap();
        let m = stage_kn_minimizers(&r, &u).unwrap();
        assert_eq!(m[0].status, KnStatus::Converged);
        assert!((m[0].minimizer[0] + 2f64.ln() / 2.0).abs() < 1e-8);
    }
}
