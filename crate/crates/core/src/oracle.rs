//! Explicit small matroids given by a full rank table.
//!
//! This is the brute-force side of every cross-check: subsets are bitmasks
//! over at most [`MAX_ELEMENTS`] elements and every operation sweeps all of
//! them.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{check_size, Error, Result};
use crate::exact::{binomial, BigInt, BivariatePoly};

/// Hard cap on the ground set of a stored rank table.
pub const MAX_ELEMENTS: usize = 24;
/// Cap for operations that sweep all subsets.
pub const MAX_SWEEP: usize = 22;
/// Cap for the exhaustive axiom check.
pub const MAX_AXIOM_CHECK: usize = 16;

/// Subset of the ground set as a bitmask; bit `e` set means element `e` is present.
pub type Subset = u32;

fn full_set(m: usize) -> Subset {
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// Elements of a subset in increasing order.
pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&e| s >> e & 1 == 1)
}

/// A matroid on `{0, .., m-1}` stored as `rank[S]` for every subset `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOracleMatroid {
    m: usize,
    ranks: Vec<u8>,
}

impl RankOracleMatroid {
    /// Wraps a table of `2^m` ranks in bitmask order. Axioms are not checked here.
    pub fn from_table(m: usize, ranks: Vec<u8>) -> Result<Self> {
        check_size("ground set", m, MAX_ELEMENTS)?;
        if ranks.len() != 1 << m {
            return Err(Error::InvalidParameters(format!(
                "rank table for {m} elements needs {} entries, got {}",
                1usize << m,
                ranks.len()
            )));
        }
        Ok(Self { m, ranks })
    }

    fn from_fn(m: usize, rank: impl Fn(Subset) -> u8) -> Self {
        let ranks = (0..1u32 << m).map(rank).collect();
        Self { m, ranks }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn rank(&self, s: Subset) -> u8 {
        self.ranks[s as usize]
    }

    pub fn full_rank(&self) -> u8 {
        self.rank(full_set(self.m))
    }

    pub fn ground_set(&self) -> Subset {
        full_set(self.m)
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.ranks
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        let r = self.full_rank();
        s & !self.ground_set() == 0 && s.count_ones() == r as u32 && self.rank(s) == r
    }

    /// Normalization, unit increase and submodularity.
    ///
    /// Submodularity is checked in its local form
    /// `r(S+e) + r(S+f) >= r(S+e+f) + r(S)`, which together with unit
    /// increase is equivalent to the global inequality.
    pub fn rank_axioms_check(&self) -> Result<bool> {
        check_size("ground set", self.m, MAX_AXIOM_CHECK)?;
        if self.rank(0) != 0 {
            return Ok(false);
        }
        for s in 0..=self.ground_set() {
            let rs = self.rank(s);
            for e in 0..self.m {
                let se = s | 1 << e;
                if se == s {
                    continue;
                }
                let rse = self.rank(se);
                if rse < rs || rse > rs + 1 {
                    return Ok(false);
                }
                for f in e + 1..self.m {
                    let sf = s | 1 << f;
                    if sf == s {
                        continue;
                    }
                    if u16::from(rse) + u16::from(self.rank(sf)) < u16::from(self.rank(se | sf)) + u16::from(rs) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `sum_S (x-1)^(r(E)-r(S)) (y-1)^(|S|-r(S))`, expanded.
    pub fn subset_expansion_tutte(&self) -> Result<BivariatePoly> {
        check_size("ground set", self.m, MAX_SWEEP)?;
        let full = self.full_rank() as usize;
        // counts[a][b]: subsets with corank a and nullity b
        let mut counts = vec![vec![0u64; self.m + 1]; full + 1];
        for s in 0..=self.ground_set() {
            let rs = self.rank(s) as usize;
            counts[full - rs][s.count_ones() as usize - rs] += 1;
        }
        let mut poly = BivariatePoly::zero();
        for (a, row) in counts.iter().enumerate() {
            for (b, &count) in row.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for i in 0..=a {
                    let ci = signed_binomial(a, i);
                    for j in 0..=b {
                        let c = &ci * signed_binomial(b, j) * count;
                        poly.add_term(c, i as u32, j as u32);
                    }
                }
            }
        }
        Ok(poly)
    }

    /// Bases in ascending bitmask order.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        check_size("ground set", self.m, MAX_SWEEP)?;
        Ok((0..=self.ground_set()).filter(|&s| self.is_basis(s)).collect())
    }

    /// `(loops, coloops)` as bitmasks.
    pub fn loops_coloops(&self) -> Result<(Subset, Subset)> {
        check_size("ground set", self.m, MAX_SWEEP)?;
        let full = self.ground_set();
        let r = self.full_rank();
        let mut loops = 0;
        let mut coloops = 0;
        for e in 0..self.m {
            if self.rank(1 << e) == 0 {
                loops |= 1 << e;
            }
            if self.rank(full & !(1 << e)) + 1 == r {
                coloops |= 1 << e;
            }
        }
        Ok((loops, coloops))
    }

    /// Local basis exchange graph at basis `b`: basis elements on the left,
    /// the rest on the right, `b -- c` iff `B - b + c` is a basis.
    pub fn exchange_graph(&self, basis: Subset) -> Result<ExchangeGraph> {
        check_size("ground set", self.m, MAX_SWEEP)?;
        if !self.is_basis(basis) {
            return Err(Error::NotABasis(basis));
        }
        let left: Vec<usize> = elements(basis).collect();
        let right: Vec<usize> = elements(self.ground_set() & !basis).collect();
        let mut graph = ExchangeGraph::new(left.clone(), right.clone());
        for (li, &b) in left.iter().enumerate() {
            for (ri, &c) in right.iter().enumerate() {
                if self.is_basis((basis & !(1 << b)) | 1 << c) {
                    graph.add_edge(li, ri);
                }
            }
        }
        Ok(graph)
    }
}

fn signed_binomial(n: usize, k: usize) -> BigInt {
    let c = binomial(n as u64, k as i64);
    if (n - k).is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `U_{n,r}`: `rank(S) = min(|S|, r)`.
pub fn uniform_oracle(n: usize, r: usize) -> Result<RankOracleMatroid> {
    check_size("ground set", n, MAX_ELEMENTS)?;
    if r > n {
        return Err(Error::InvalidParameters(format!(
            "rank {r} exceeds ground-set size {n}"
        )));
    }
    Ok(RankOracleMatroid::from_fn(n, |s| s.count_ones().min(r as u32) as u8))
}

/// `k` parallel copies of every element. Copy `c` of element `e` is element
/// `e * k + c`, so copy 0 is the lifted element.
pub fn thicken_matroid(m: &RankOracleMatroid, k: usize) -> Result<RankOracleMatroid> {
    if k == 0 {
        return Err(Error::InvalidParameters(
            "thickening multiplicity must be at least 1".into(),
        ));
    }
    check_size("thickened ground set", m.m * k, MAX_SWEEP)?;
    let class = full_set(k);
    Ok(RankOracleMatroid::from_fn(m.m * k, |s| {
        let support = (0..m.m)
            .filter(|e| s >> (e * k) & class != 0)
            .fold(0, |acc, e| acc | 1 << e);
        m.rank(support)
    }))
}

/// Lifts a subset of `M` to the first copies in `thicken_matroid(M, k)`.
pub fn lift_subset(s: Subset, k: usize) -> Subset {
    elements(s).fold(0, |acc, e| acc | 1 << (e * k))
}

/// `rank*(S) = |S| + r(E - S) - r(E)`.
pub fn dual_matroid(m: &RankOracleMatroid) -> Result<RankOracleMatroid> {
    check_size("ground set", m.m, MAX_SWEEP)?;
    let full = m.ground_set();
    let r = m.full_rank();
    Ok(RankOracleMatroid::from_fn(m.m, |s| {
        (s.count_ones() as u8 + m.rank(full & !s)) - r
    }))
}

/// Disjoint union; `N`'s elements are shifted past `M`'s.
pub fn direct_sum(a: &RankOracleMatroid, b: &RankOracleMatroid) -> Result<RankOracleMatroid> {
    check_size("direct sum ground set", a.m + b.m, MAX_SWEEP)?;
    let low = a.ground_set();
    Ok(RankOracleMatroid::from_fn(a.m + b.m, |s| {
        a.rank(s & low) + b.rank(s >> a.m)
    }))
}

/// Text form: the ground-set size on the first line, then one rank per line
/// in bitmask order.
impl fmt::Display for RankOracleMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.m)?;
        for r in &self.ranks {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for RankOracleMatroid {
    type Err = Error;

    /// Accepts any whitespace between values.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let m: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty rank table".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("ground-set size: {e}")))?;
        check_size("ground set", m, MAX_ELEMENTS)?;
        let ranks = tokens
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|e| Error::Parse(format!("rank value {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(m, ranks)
    }
}

/// Bipartite graph with labelled sides; `adjacency[i]` is the set of right
/// indices joined to left vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    left: Vec<usize>,
    right: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
}

impl ExchangeGraph {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Self {
        let adjacency = vec![FixedBitSet::with_capacity(right.len()); left.len()];
        Self { left, right, adjacency }
    }

    /// `K_{a,b}` with left labels `0..a` and right labels `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new((0..a).collect(), (a..a + b).collect());
        for row in &mut g.adjacency {
            row.insert_range(..);
        }
        g
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        self.adjacency[left].insert(right);
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adjacency[left].contains(right)
    }

    pub fn left_labels(&self) -> &[usize] {
        &self.left
    }

    pub fn right_labels(&self) -> &[usize] {
        &self.right
    }

    pub fn left_degree(&self, left: usize) -> usize {
        self.adjacency[left].count_ones(..)
    }

    pub fn right_degree(&self, right: usize) -> usize {
        self.adjacency.iter().filter(|row| row.contains(right)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|row| row.count_ones(..)).sum()
    }

    pub fn is_complete_bipartite(&self) -> bool {
        self.edge_count() == self.left.len() * self.right.len()
    }

    /// Side-preserving isomorphism test.
    ///
    /// Tries every bijection of the left sides; for a fixed one the right
    /// sides match iff their neighbourhood multisets coincide. Meant for the
    /// small graphs produced by the oracle (left side up to about 9).
    pub fn is_isomorphic(&self, other: &ExchangeGraph) -> bool {
        let (l, r) = (self.left.len(), self.right.len());
        if l != other.left.len() || r != other.right.len() || self.edge_count() != other.edge_count() {
            return false;
        }
        if l > 64 {
            return false;
        }
        let mut ours = self.right_neighbourhoods(&(0..l).collect_vec());
        ours.sort_unstable();
        let mut our_degrees = (0..l).map(|i| self.left_degree(i)).collect_vec();
        our_degrees.sort_unstable();
        let mut their_degrees = (0..l).map(|i| other.left_degree(i)).collect_vec();
        their_degrees.sort_unstable();
        if our_degrees != their_degrees {
            return false;
        }
        (0..l).permutations(l).any(|perm| {
            if (0..l).any(|i| self.left_degree(i) != other.left_degree(perm[i])) {
                return false;
            }
            // Relabel other's left vertex perm[i] as i.
            let mut inverse = vec![0; l];
            for (i, &p) in perm.iter().enumerate() {
                inverse[p] = i;
            }
            let mut theirs = other.right_neighbourhoods(&inverse);
            theirs.sort_unstable();
            theirs == ours
        })
    }

    /// For each right vertex, its left neighbourhood as a bitmask, with left
    /// vertex `i` renamed to `rename[i]`.
    fn right_neighbourhoods(&self, rename: &[usize]) -> Vec<u64> {
        (0..self.right.len())
            .map(|c| {
                self.adjacency
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row.contains(c))
                    .fold(0u64, |acc, (i, _)| acc | 1 << rename[i])
            })
            .collect()
    }
}

/// Effect of 2-thickening on an exchange graph: every left vertex gains a
/// pendant right neighbour and every right vertex gains a twin.
///
/// Labels follow the numbering of [`thicken_matroid`] with `k = 2`: a vertex
/// labelled `e` keeps label `2e`, its twin or pendant is `2e + 1`.
pub fn thicken_exchange_graph(h: &ExchangeGraph) -> ExchangeGraph {
    let left = h.left.iter().map(|&b| 2 * b).collect_vec();
    let mut right = Vec::with_capacity(2 * h.right.len() + h.left.len());
    for &c in &h.right {
        right.push(2 * c);
        right.push(2 * c + 1);
    }
    let pendants_from = right.len();
    right.extend(h.left.iter().map(|&b| 2 * b + 1));

    let mut out = ExchangeGraph::new(left, right);
    for (i, row) in h.adjacency.iter().enumerate() {
        for c in row.ones() {
            out.add_edge(i, 2 * c);
            out.add_edge(i, 2 * c + 1);
        }
        out.add_edge(i, pendants_from + i);
    }
    out
}
