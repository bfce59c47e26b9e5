//! Index bookkeeping for polystable systems of Hodge bundles: block data, the
//! automorphism torus, the graded positive slice, partitions and their dimensions,
//! Riemann-Roch bounds, the cyclic Higgs field and the conformal degree table.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_geometry::{saturated_kernel, Lattice};
use crate::stability::{classify, StabilityClass};
use crate::torus_rep::{RepVector, Representation, WeightLine};

pub const MAX_PARTITION_BLOCKS: usize = 8;

/// One stable summand, split into its Hodge pieces `E_1, ..., E_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableBlock {
    pub ranks: Vec<i64>,
    pub degrees: Vec<i64>,
}

impl StableBlock {
    pub fn new(ranks: Vec<i64>, degrees: Vec<i64>) -> Result<Self> {
        let b = StableBlock { ranks, degrees };
        b.validate()?;
        Ok(b)
    }

    /// A single Hodge piece of rank `r` and degree zero.
    pub fn bundle(rank: i64) -> Self {
        StableBlock {
            ranks: vec![rank],
            degrees: vec![0],
        }
    }

    pub fn hodge_length(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self) -> i64 {
        self.ranks.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.ranks.len();
        if l == 0 {
            return Err(Error::InvalidArgument("block has no Hodge pieces".into()));
        }
        if self.degrees.len() != l {
            return Err(Error::DimensionMismatch {
                expected: l,
                got: self.degrees.len(),
            });
        }
        if self.ranks.iter().any(|&r| r < 1) {
            return Err(Error::InvalidArgument("Hodge ranks must be >= 1".into()));
        }
        if self.degrees.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidArgument("block degrees must sum to 0".into()));
        }
        if l > 1 && !(self.degrees[0] > 0 && self.degrees[l - 1] < 0) {
            return Err(Error::InvalidArgument(
                "first Hodge degree must be > 0 and last < 0 when the length exceeds 1".into(),
            ));
        }
        Ok(())
    }
}

/// Which Hodge index difference grades `Hom(E_a, E_b)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingConvention {
    /// grade `a - b`; the Higgs field has grade `-1`.
    #[default]
    Default,
    /// grade `b - a`.
    Flipped,
}

impl GradingConvention {
    pub fn grade(self, a: usize, b: usize) -> i64 {
        let d = a as i64 - b as i64;
        match self {
            GradingConvention::Default => d,
            GradingConvention::Flipped => -d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShbSpec {
    pub genus: i64,
    pub blocks: Vec<StableBlock>,
}

impl ShbSpec {
    pub fn new(genus: i64, blocks: Vec<StableBlock>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidArgument("genus must be >= 2".into()));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("at least one block is required".into()));
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(ShbSpec { genus, blocks })
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn rank(&self) -> i64 {
        self.blocks.iter().map(StableBlock::rank).sum()
    }

    pub fn block_ranks(&self) -> Vec<i64> {
        self.blocks.iter().map(StableBlock::rank).collect()
    }

    /// Blocks pairwise distinct as data.
    pub fn is_abelian(&self) -> bool {
        self.blocks.iter().collect::<BTreeSet<_>>().len() == self.blocks.len()
    }

    fn require_abelian(&self) -> Result<()> {
        if self.is_abelian() {
            Ok(())
        } else {
            Err(Error::NonAbelian)
        }
    }
}

/// The automorphism torus `{xi in (C*)^k : prod xi_i^{r_i} = 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationTorus {
    pub relation: Vec<i64>,
    pub lattice: Lattice,
}

impl RelationTorus {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Restriction of the character `e_i - e_j` (0-based block indices).
    pub fn restrict_difference(&self, i: usize, j: usize) -> Vec<i64> {
        let mut w = vec![0; self.relation.len()];
        w[i] += 1;
        w[j] -= 1;
        self.lattice.restrict(&w)
    }

    /// Cocharacter of `(C*)^k` from coordinates in the torus basis.
    pub fn lift(&self, x: &[i64]) -> Vec<i64> {
        self.lattice.lift(x)
    }
}

pub fn automorphism_torus(shb: &ShbSpec) -> Result<RelationTorus> {
    shb.require_abelian()?;
    let relation = shb.block_ranks();
    let lattice = saturated_kernel(relation.len(), &[relation.clone()])?;
    Ok(RelationTorus { relation, lattice })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Beta,
    Phi,
}

/// The component of type `kind` in `Hom(E^i_a, E^j_b)`, indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexClass {
    pub kind: ClassKind,
    pub i: usize,
    pub a: usize,
    pub j: usize,
    pub b: usize,
}

impl IndexClass {
    pub fn label(&self) -> String {
        let t = match self.kind {
            ClassKind::Beta => "beta",
            ClassKind::Phi => "phi",
        };
        format!("{t}:{},{},{},{}", self.i, self.a, self.j, self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceRep {
    pub torus: RelationTorus,
    pub rep: Arc<Representation>,
    /// One class per line of `rep`, in the same order.
    pub classes: Vec<IndexClass>,
    pub convention: GradingConvention,
}

/// All index classes with positive `C*` weight, as lines of a graded representation of
/// the automorphism torus.
pub fn positive_slice_rep(shb: &ShbSpec, convention: GradingConvention) -> Result<SliceRep> {
    let torus = automorphism_torus(shb)?;
    let mut lines = Vec::new();
    let mut classes = Vec::new();
    for kind in [ClassKind::Beta, ClassKind::Phi] {
        for (i, bi) in shb.blocks.iter().enumerate() {
            for a in 1..=bi.hodge_length() {
                for (j, bj) in shb.blocks.iter().enumerate() {
                    for b in 1..=bj.hodge_length() {
                        let grade = convention.grade(a, b);
                        let rho = match kind {
                            ClassKind::Beta => grade,
                            ClassKind::Phi => grade + 1,
                        };
                        if rho < 1 {
                            continue;
                        }
                        let class = IndexClass {
                            kind,
                            i: i + 1,
                            a,
                            j: j + 1,
                            b,
                        };
                        lines.push(WeightLine::graded(
                            class.label(),
                            torus.restrict_difference(i, j),
                            rho,
                        ));
                        classes.push(class);
                    }
                }
            }
        }
    }
    let rep = Arc::new(Representation::new(torus.rank(), lines)?);
    Ok(SliceRep {
        torus,
        rep,
        classes,
        convention,
    })
}

/// `(r^2 - 1)(g - 1)`.
pub fn expected_dim_central_locus(r: i64, g: i64) -> i64 {
    (r * r - 1) * (g - 1)
}

/// A partition of the block indices `0..k` into nonempty parts, each sorted, parts
/// ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionP {
    pub parts: Vec<Vec<usize>>,
}

impl PartitionP {
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    fn block_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionDim {
    pub dim: i64,
    pub expected: i64,
    /// `dim < expected`; always expected for proper partitions.
    pub strictly_smaller: bool,
}

/// `sum_parts (r_part^2 - 1)(g - 1)` compared with the full expected dimension.
pub fn partition_dim(p: &PartitionP, block_ranks: &[i64], g: i64) -> Result<PartitionDim> {
    if p.block_count() != block_ranks.len() || p.parts.iter().flatten().any(|&i| i >= block_ranks.len()) {
        return Err(Error::InvalidArgument(
            "partition does not cover the blocks".into(),
        ));
    }
    let dim = p
        .parts
        .iter()
        .map(|part| {
            let r: i64 = part.iter().map(|&i| block_ranks[i]).sum();
            expected_dim_central_locus(r, g)
        })
        .sum();
    let expected = expected_dim_central_locus(block_ranks.iter().sum(), g);
    Ok(PartitionDim {
        dim,
        expected,
        strictly_smaller: dim < expected,
    })
}

/// The partitions of the blocks, identified up to permuting equal blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionPoset {
    /// Representative partitions; the trivial partition comes first.
    pub partitions: Vec<PartitionP>,
    /// Block type of each index; equal blocks share a type.
    types: Vec<usize>,
}

impl PartitionPoset {
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// `P > P'`: the parts of `P'` can be grouped so the groups union to the parts of `P`.
    pub fn greater(&self, p: usize, p_prime: usize) -> bool {
        if p == p_prime {
            return false;
        }
        let big: Vec<BTreeMap<usize, usize>> = self.partitions[p]
            .parts
            .iter()
            .map(|part| self.type_counts(part))
            .collect();
        let mut small: Vec<BTreeMap<usize, usize>> = self.partitions[p_prime]
            .parts
            .iter()
            .map(|part| self.type_counts(part))
            .collect();
        if small.len() <= big.len() {
            return false;
        }
        small.sort_by_key(|m| std::cmp::Reverse(m.values().sum::<usize>()));
        let mut remaining = big;
        assign(&small, 0, &mut remaining)
    }

    /// All pairs `(p, p')` with `P > P'`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.partitions.len();
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.greater(p, q))
            .collect()
    }

    fn type_counts(&self, part: &[usize]) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &i in part {
            *m.entry(self.types[i]).or_insert(0) += 1;
        }
        m
    }
}

fn assign(
    small: &[BTreeMap<usize, usize>],
    idx: usize,
    remaining: &mut Vec<BTreeMap<usize, usize>>,
) -> bool {
    if idx == small.len() {
        return remaining.iter().all(|m| m.values().all(|&c| c == 0));
    }
    let part = &small[idx];
    for r in 0..remaining.len() {
        if part.iter().all(|(t, c)| remaining[r].get(t).copied().unwrap_or(0) >= *c) {
            for (t, c) in part {
                *remaining[r].get_mut(t).expect("checked") -= c;
            }
            let ok = assign(small, idx + 1, remaining);
            for (t, c) in part {
                *remaining[r].get_mut(t).expect("checked") += c;
            }
            if ok {
                return true;
            }
        }
    }
    false
}

/// Enumerates set partitions of the blocks by restricted growth strings, dropping those
/// that coincide after permuting equal blocks.
pub fn partitions_with_order(shb: &ShbSpec) -> Result<PartitionPoset> {
    let k = shb.k();
    if k > MAX_PARTITION_BLOCKS {
        return Err(Error::CapExceeded(format!(
            "{k} blocks, at most {MAX_PARTITION_BLOCKS} supported"
        )));
    }
    let types: Vec<usize> = shb
        .blocks
        .iter()
        .map(|b| shb.blocks.iter().position(|c| c == b).expect("present"))
        .collect();
    let mut seen = BTreeSet::new();
    let mut partitions = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let blocks = rgs.iter().max().map(|m| m + 1).unwrap_or(0);
        let mut parts = vec![Vec::new(); blocks];
        for (i, &p) in rgs.iter().enumerate() {
            parts[p].push(i);
        }
        let mut key: Vec<Vec<usize>> = parts
            .iter()
            .map(|part| {
                let mut t: Vec<usize> = part.iter().map(|&i| types[i]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        key.sort();
        if seen.insert(key) {
            partitions.push(PartitionP { parts });
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    Ok(PartitionPoset { partitions, types })
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    let k = rgs.len();
    for i in (1..k).rev() {
        let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            for v in &mut rgs[i + 1..] {
                *v = 0;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RrBound {
    pub bound: i64,
    /// `bound > 0`, guaranteed whenever `deg <= 0`.
    pub positive: bool,
}

/// Lower bound for `h^1` of a bundle of degree `deg` built from ranks `r1`, `r2`:
/// `h^1 = h^0 - deg + r1 r2 (g - 1) >= max(0, -deg + r1 r2 (g - 1))`.
pub fn rr_h1_lower_bound(r1: i64, r2: i64, deg: i64, g: i64) -> Result<RrBound> {
    if r1 < 1 || r2 < 1 || g < 2 {
        return Err(Error::InvalidArgument("need r1, r2 >= 1 and g >= 2".into()));
    }
    let bound = (-deg + r1 * r2 * (g - 1)).max(0);
    Ok(RrBound {
        bound,
        positive: bound > 0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicPhi {
    pub vector: RepVector,
    pub verdict: StabilityClass,
    /// Riemann-Roch bound for `Hom(E^i_{l_i}, E^{i+1}_1)`, one per block.
    pub rr_bounds: Vec<RrBound>,
}

/// The Higgs field `sum_i phi_i` with `phi_i: E^i_{l_i} -> E^{i+1}_1` (cyclically), on
/// which `xi` acts by `xi_{i+1} / xi_i`.
pub fn cyclic_phi_weights(shb: &ShbSpec) -> Result<CyclicPhi> {
    let torus = automorphism_torus(shb)?;
    let k = shb.k();
    if k < 2 {
        return Err(Error::InvalidArgument("cyclic Higgs field needs k >= 2".into()));
    }
    let mut lines = Vec::new();
    let mut rr_bounds = Vec::new();
    for i in 0..k {
        let next = (i + 1) % k;
        lines.push(WeightLine::new(
            format!("phi_{}", i + 1),
            torus.restrict_difference(next, i),
        ));
        let (src, dst) = (&shb.blocks[i], &shb.blocks[next]);
        let l = src.hodge_length() - 1;
        // deg(A^dual B) = rk A deg B - rk B deg A with A = E^{i+1}_1, B = E^i_{l_i}
        let deg = dst.ranks[0] * src.degrees[l] - src.ranks[l] * dst.degrees[0];
        rr_bounds.push(rr_h1_lower_bound(dst.ranks[0], src.ranks[l], deg, shb.genus)?);
    }
    let rep = Arc::new(Representation::new(torus.rank(), lines)?);
    let vector = RepVector::from_real(rep, &vec![1.0; k])?;
    let verdict = classify(&vector)?;
    Ok(CyclicPhi {
        vector,
        verdict,
        rr_bounds,
    })
}

/// Exponents `2 sigma grade(a, b) + 2 chi_i(x) - 2 chi_j(x)` of the rescaled metric on
/// every `Hom(E^i_a, E^j_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformalDegreeTable {
    pub sigma: i64,
    pub x: Vec<i64>,
    pub convention: GradingConvention,
    /// Keyed by 1-based `(i, a, j, b)`.
    pub entries: BTreeMap<(usize, usize, usize, usize), i64>,
}

impl ConformalDegreeTable {
    pub fn degree(&self, i: usize, a: usize, j: usize, b: usize) -> Option<i64> {
        self.entries.get(&(i, a, j, b)).copied()
    }

    /// Classes of degree exactly `d`.
    pub fn q_d(&self, d: i64) -> Vec<(usize, usize, usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, &v)| v == d)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Membership of a class in the filtration piece of degree `>= d`.
    pub fn in_filtration(&self, class: (usize, usize, usize, usize), d: i64) -> bool {
        self.entries.get(&class).is_some_and(|&v| v >= d)
    }
}

/// `x` is a cocharacter of the ambient `(C*)^k`.
pub fn conformal_degree_table(
    shb: &ShbSpec,
    x: &[i64],
    sigma: i64,
    convention: GradingConvention,
) -> Result<ConformalDegreeTable> {
    if x.len() != shb.k() {
        return Err(Error::DimensionMismatch {
            expected: shb.k(),
            got: x.len(),
        });
    }
    if sigma < 1 {
        return Err(Error::InvalidArgument("sigma must be >= 1".into()));
    }
    let mut entries = BTreeMap::new();
    for (i, bi) in shb.blocks.iter().enumerate() {
        for a in 1..=bi.hodge_length() {
            for (j, bj) in shb.blocks.iter().enumerate() {
                for b in 1..=bj.hodge_length() {
                    let d = 2 * sigma * convention.grade(a, b) + 2 * x[i] - 2 * x[j];
                    entries.insert((i + 1, a, j + 1, b), d);
                }
            }
        }
    }
    Ok(ConformalDegreeTable {
        sigma,
        x: x.to_vec(),
        convention,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::Stability;

    fn bundles(ranks: &[i64]) -> ShbSpec {
        // distinct blocks of equal rank get distinct Hodge data through the length
        ShbSpec::new(2, ranks.iter().map(|&r| StableBlock::bundle(r)).collect()).unwrap()
    }

    #[test]
    fn automorphism_torus_examples() {
        let t = automorphism_torus(&bundles(&[1, 2])).unwrap();
        assert_eq!(t.rank(), 1);
        let blocks = vec![
            StableBlock::bundle(1),
            StableBlock::new(vec![1, 1], vec![1, -1]).unwrap(),
            StableBlock::bundle(2),
        ];
        let t = automorphism_torus(&ShbSpec::new(2, blocks).unwrap()).unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.relation, vec![1, 2, 2]);
        let single = automorphism_torus(&bundles(&[3])).unwrap();
        assert_eq!(single.rank(), 0);
    }

    #[test]
    fn equal_blocks_are_not_abelian() {
        assert_eq!(automorphism_torus(&bundles(&[1, 1])), Err(Error::NonAbelian));
    }

    #[test]
    fn block_validation() {
        assert!(StableBlock::new(vec![1, 1], vec![0, 0]).is_err());
        assert!(StableBlock::new(vec![1, 1], vec![-1, 1]).is_err());
        assert!(StableBlock::new(vec![1], vec![1]).is_err());
        assert!(StableBlock::new(vec![1, 2, 1], vec![2, 0, -2]).is_ok());
    }

    #[test]
    fn hitchin_section_deformation_is_positive() {
        let shb = ShbSpec::new(2, vec![StableBlock::new(vec![1, 1], vec![1, -1]).unwrap()]).unwrap();
        let s = positive_slice_rep(&shb, GradingConvention::Default).unwrap();
        let class = IndexClass {
            kind: ClassKind::Phi,
            i: 1,
            a: 2,
            j: 1,
            b: 1,
        };
        let idx = s.classes.iter().position(|c| *c == class).unwrap();
        assert_eq!(s.rep.lines()[idx].rho, Some(2));
        assert!(s.rep.lines().iter().all(|l| l.rho.unwrap() >= 1));
    }

    #[test]
    fn expected_dimension_values() {
        assert_eq!(expected_dim_central_locus(2, 2), 3);
        assert_eq!(expected_dim_central_locus(3, 2), 8);
        assert_eq!(expected_dim_central_locus(2, 3), 6);
    }

    #[test]
    fn partition_counts_follow_bell_numbers() {
        let two = ShbSpec::new(2, vec![StableBlock::bundle(1), StableBlock::bundle(2)]).unwrap();
        let p = partitions_with_order(&two).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.partitions[0].is_trivial());
        assert_eq!(p.order_pairs(), vec![(0, 1)]);

        let three = ShbSpec::new(
            2,
            vec![StableBlock::bundle(1), StableBlock::bundle(2), StableBlock::bundle(3)],
        )
        .unwrap();
        let p = partitions_with_order(&three).unwrap();
        assert_eq!(p.len(), 5);
        // trivial > 3 two-part partitions > singletons, plus trivial > singletons
        assert_eq!(p.order_pairs().len(), 3 + 3 + 1);

        let one = ShbSpec::new(2, vec![StableBlock::bundle(2)]).unwrap();
        assert_eq!(partitions_with_order(&one).unwrap().len(), 1);
    }

    #[test]
    fn repeated_blocks_are_deduplicated() {
        let p = partitions_with_order(&bundles(&[1, 1, 1])).unwrap();
        // integer partitions of 3
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn partition_dimension_examples() {
        let single = PartitionP {
            parts: vec![vec![0], vec![1]],
        };
        let d = partition_dim(&single, &[1, 1], 2).unwrap();
        assert_eq!((d.dim, d.expected, d.strictly_smaller), (0, 3, true));
        let trivial = PartitionP {
            parts: vec![vec![0, 1]],
        };
        let d = partition_dim(&trivial, &[1, 1], 2).unwrap();
        assert_eq!((d.dim, d.strictly_smaller), (3, false));
        let p = PartitionP {
            parts: vec![vec![0, 1], vec![2]],
        };
        assert_eq!(partition_dim(&p, &[1, 1, 1], 2).unwrap().dim, 3);
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(rr_h1_lower_bound(1, 1, 0, 2).unwrap(), RrBound { bound: 1, positive: true });
        assert_eq!(rr_h1_lower_bound(2, 1, -1, 2).unwrap().bound, 3);
        assert_eq!(rr_h1_lower_bound(2, 3, 6, 2).unwrap(), RrBound { bound: 0, positive: false });
    }

    #[test]
    fn cyclic_phi_examples() {
        let c = cyclic_phi_weights(&ShbSpec::new(2, vec![StableBlock::bundle(1), StableBlock::new(vec![1, 1], vec![1, -1]).unwrap()]).unwrap()).unwrap();
        let w: Vec<_> = c.vector.effective_g_weights().into_iter().collect();
        assert_eq!(w, vec![vec![-3], vec![3]]);
        assert_eq!(c.verdict.class, Stability::Stable);

        let c = cyclic_phi_weights(&bundles(&[1, 2])).unwrap();
        assert_eq!(c.verdict.class, Stability::Stable);
        assert!(c.rr_bounds.iter().all(|b| b.positive));
    }

    #[test]
    fn degree_table_properties() {
        let shb = ShbSpec::new(
            2,
            vec![
                StableBlock::new(vec![1, 1], vec![1, -1]).unwrap(),
                StableBlock::bundle(2),
            ],
        )
        .unwrap();
        let t = conformal_degree_table(&shb, &[2, -1], 3, GradingConvention::Default).unwrap();
        assert_eq!(t.degree(1, 2, 1, 2), Some(0));
        for (&(i, a, j, b), &d) in &t.entries {
            for (&(i2, a2, j2, b2), &d2) in &t.entries {
                if (i2, a2) == (j, b) {
                    assert_eq!(d + d2, t.degree(i, a, j2, b2).unwrap());
                }
            }
        }
        let zero = conformal_degree_table(&shb, &[0, 0], 3, GradingConvention::Flipped).unwrap();
        assert_eq!(zero.degree(1, 1, 1, 2), Some(6));
        assert!(zero.in_filtration((1, 1, 1, 2), 6));
        assert!(!zero.in_filtration((1, 2, 1, 1), 0));
    }
}
