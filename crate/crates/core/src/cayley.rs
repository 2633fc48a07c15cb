//! Weighted Cayley graphs of `Z^n / relations` and the brute-force metric
//! oracle: distances by uniform-cost search, the functions
//! `phi_{y,z}(x) = d(x,y) - d(x,z)`, geodesic checks and valuation limits.
//!
//! Distances are measured from the group origin and translated: in an
//! abelian group `d(a, b) = d(0, b - a)`. Weights are scaled to integers by
//! their common denominator so the search runs on `u128` keys; results are
//! handed back as exact rationals.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{column_hermite_form, column_pivots, smith_normal_form, IntMatrix};

pub type Q = BigRational;
pub type Element = Vec<i64>;

/// Default cap on the number of group elements a single search may settle.
pub const DEFAULT_NODE_BUDGET: usize = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {index} has non-positive weight {weight}")]
    NonPositiveWeight { index: usize, weight: Q },
    #[error("generator set marked symmetric but -{0:?} with equal weight is missing")]
    NotSymmetric(Vec<i64>),
    #[error("generators do not generate the group: cokernel has free rank {free_rank} and torsion {torsion:?}")]
    NotGenerating { free_rank: usize, torsion: Vec<BigInt> },
    #[error("unknown beyond budget: search radius {radius} exhausted")]
    BudgetExceeded { radius: Q },
    #[error("node budget of {0} elements exhausted")]
    NodeBudgetExceeded(usize),
    #[error("scaled weights overflow")]
    Overflow,
    #[error("empty generator multiset")]
    EmptyMultiset,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("phi_(y, gamma_0) increased along the walk at step {step}: input is not a geodesic")]
    MonotonicityViolation { step: usize },
}

/// `Z^n` modulo the lattice spanned by the relation columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    rank: usize,
    relations: IntMatrix,
    // nonzero columns of the column Hermite form and their pivot rows
    reducers: Vec<(usize, Vec<i64>)>,
}

impl GroupSpec {
    pub fn free(rank: usize) -> Self {
        GroupSpec { rank, relations: IntMatrix::zeros(rank, 0), reducers: vec![] }
    }

    /// `relations` are relator vectors (columns of the relation matrix).
    pub fn new(rank: usize, relations: &[Vec<i64>]) -> Result<Self, CayleyError> {
        if let Some(r) = relations.iter().find(|r| r.len() != rank) {
            return Err(CayleyError::DimensionMismatch { expected: rank, got: r.len() });
        }
        let rel = IntMatrix::from_columns(rank, relations);
        let (h, _) = column_hermite_form(&rel);
        let reducers = column_pivots(&h)
            .into_iter()
            .enumerate()
            .map(|(j, p)| (p, h.column(j).iter().map(|x| x.to_i64().expect("relation entries fit i64")).collect()))
            .collect();
        Ok(GroupSpec { rank, relations: rel, reducers })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.reducers.is_empty()
    }

    /// Canonical representative of `x` modulo the relation lattice.
    pub fn canonicalize(&self, x: &[i64]) -> Result<Element, CayleyError> {
        if x.len() != self.rank {
            return Err(CayleyError::DimensionMismatch { expected: self.rank, got: x.len() });
        }
        let mut v = x.to_vec();
        self.reduce_in_place(&mut v);
        Ok(v)
    }

    fn reduce_in_place(&self, v: &mut [i64]) {
        for (p, col) in &self.reducers {
            let q = Integer::div_floor(&v[*p], &col[*p]);
            if q != 0 {
                for (vi, ci) in v.iter_mut().zip(col) {
                    *vi -= q * ci;
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vector: Vec<i64>,
    pub weight: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
    symmetric: bool,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Generator>, symmetric: bool) -> Result<Self, CayleyError> {
        let n = generators.first().map_or(0, |g| g.vector.len());
        for (i, g) in generators.iter().enumerate() {
            if g.vector.len() != n {
                return Err(CayleyError::DimensionMismatch { expected: n, got: g.vector.len() });
            }
            if !g.weight.is_positive() {
                return Err(CayleyError::NonPositiveWeight { index: i, weight: g.weight.clone() });
            }
        }
        if symmetric {
            for g in &generators {
                let neg: Vec<i64> = g.vector.iter().map(|x| -x).collect();
                if !generators.iter().any(|h| h.vector == neg && h.weight == g.weight) {
                    return Err(CayleyError::NotSymmetric(g.vector.clone()));
                }
            }
        }
        Ok(GeneratorSet { generators, symmetric })
    }

    /// Unit-weight generators.
    pub fn unit(vectors: &[Vec<i64>], symmetric: bool) -> Result<Self, CayleyError> {
        Self::new(vectors.iter().map(|v| Generator { vector: v.clone(), weight: Q::one() }).collect(), symmetric)
    }

    /// `S ∪ -S`: each generator is followed by its negative (unless already present).
    pub fn symmetrized(generators: Vec<Generator>) -> Result<Self, CayleyError> {
        let mut out: Vec<Generator> = Vec::new();
        for g in generators {
            let neg = Generator { vector: g.vector.iter().map(|x| -x).collect(), weight: g.weight.clone() };
            if !out.contains(&g) {
                out.push(g);
            }
            if !out.contains(&neg) {
                out.push(neg);
            }
        }
        Self::new(out, true)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.generators.iter().map(|g| g.vector.clone()).collect()
    }

    pub fn weights(&self) -> Vec<Q> {
        self.generators.iter().map(|g| g.weight.clone()).collect()
    }

    pub fn has_equal_weights(&self) -> bool {
        self.generators.windows(2).all(|w| w[0].weight == w[1].weight)
    }

    /// Generator matrix with the generators as columns.
    pub fn matrix(&self, rank: usize) -> IntMatrix {
        IntMatrix::from_columns(rank, &self.vectors())
    }

    /// Checks that the generators together with the relations span `Z^n`.
    pub fn check_generates(&self, group: &GroupSpec) -> Result<(), CayleyError> {
        if let Some(g) = self.generators.iter().find(|g| g.vector.len() != group.rank()) {
            return Err(CayleyError::DimensionMismatch { expected: group.rank(), got: g.vector.len() });
        }
        let stacked = self.matrix(group.rank()).hconcat(group.relations());
        let diag = smith_normal_form(&stacked).diagonal();
        let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
        let free_rank = group.rank() - nonzero.len();
        let torsion: Vec<BigInt> = nonzero.into_iter().filter(|d| !d.is_one()).collect();
        if free_rank == 0 && torsion.is_empty() {
            Ok(())
        } else {
            Err(CayleyError::NotGenerating { free_rank, torsion })
        }
    }
}

/// The Cayley graph of `(G, S)`; never materialized.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: GroupSpec,
    generators: GeneratorSet,
    scale: BigInt,
    steps: Vec<u128>,
}

impl CayleyGraph {
    pub fn new(group: GroupSpec, generators: GeneratorSet) -> Result<Self, CayleyError> {
        generators.check_generates(&group)?;
        let scale = generators.generators().iter().fold(BigInt::one(), |acc, g| acc.lcm(g.weight.denom()));
        let steps = generators
            .generators()
            .iter()
            .map(|g| (g.weight.numer() * (&scale / g.weight.denom())).to_u128().ok_or(CayleyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CayleyGraph { group, generators, scale, steps })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Weight of generator `i` in scaled integer units.
    pub fn step_weight(&self, i: usize) -> u128 {
        self.steps[i]
    }

    pub fn to_rational(&self, scaled: i128) -> Q {
        Q::new(BigInt::from(scaled), self.scale.clone())
    }

    pub fn to_scaled(&self, q: &Q) -> Option<u128> {
        let v = q * Q::from_integer(self.scale.clone());
        v.floor().to_integer().to_u128()
    }

    pub fn canonicalize(&self, x: &[i64]) -> Result<Element, CayleyError> {
        self.group.canonicalize(x)
    }

    /// `x + s_i`, canonicalized.
    pub fn step(&self, x: &[i64], i: usize) -> Element {
        let mut v: Vec<i64> = x.iter().zip(&self.generators.generators()[i].vector).map(|(a, b)| a + b).collect();
        self.group.reduce_in_place(&mut v);
        v
    }

    pub fn sub(&self, b: &[i64], a: &[i64]) -> Element {
        let mut v: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        self.group.reduce_in_place(&mut v);
        v
    }

    /// Group element reached from `base` by the given multiset of generators.
    pub fn apply_counts(&self, base: &[i64], counts: &[u32]) -> Element {
        let mut v = base.to_vec();
        for (g, &c) in self.generators.generators().iter().zip(counts) {
            for (vi, gi) in v.iter_mut().zip(&g.vector) {
                *vi += gi * c as i64;
            }
        }
        self.group.reduce_in_place(&mut v);
        v
    }

    pub fn counts_weight(&self, counts: &[u32]) -> u128 {
        counts.iter().zip(&self.steps).map(|(&c, &w)| c as u128 * w).sum()
    }

    /// Exact distance from `x` to `y`, or `BudgetExceeded` if it exceeds `budget`.
    pub fn distance(&self, x: &[i64], y: &[i64], budget: &Q) -> Result<Q, CayleyError> {
        let x = self.canonicalize(x)?;
        let y = self.canonicalize(y)?;
        let target = self.sub(&y, &x);
        let limit = self.to_scaled(budget).ok_or(CayleyError::Overflow)?;
        let mut best: HashMap<Element, u128> = HashMap::new();
        let mut heap = BinaryHeap::new();
        let origin = vec![0; self.rank()];
        best.insert(origin.clone(), 0);
        heap.push(Reverse((0u128, origin)));
        let mut settled = 0usize;
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > limit {
                break;
            }
            if best.get(&v).is_some_and(|&b| b < d) {
                continue;
            }
            if v == target {
                return Ok(self.to_rational(d as i128));
            }
            settled += 1;
            if settled > DEFAULT_NODE_BUDGET {
                return Err(CayleyError::NodeBudgetExceeded(DEFAULT_NODE_BUDGET));
            }
            for i in 0..self.steps.len() {
                let w = self.step(&v, i);
                let nd = d + self.steps[i];
                if nd <= limit && best.get(&w).is_none_or(|&b| nd < b) {
                    best.insert(w.clone(), nd);
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        Err(CayleyError::BudgetExceeded { radius: budget.clone() })
    }

    pub fn ball(&self, radius: &Q) -> Result<BallIndex<'_>, CayleyError> {
        BallIndex::build(self, radius, DEFAULT_NODE_BUDGET)
    }
}

/// All elements within `radius` of the origin with their exact distances and
/// the last generator on one shortest path.
#[derive(Clone, Debug)]
pub struct BallIndex<'g> {
    graph: &'g CayleyGraph,
    radius: u128,
    dist: HashMap<Element, u128>,
    last_step: HashMap<Element, usize>,
}

impl<'g> BallIndex<'g> {
    pub fn build(graph: &'g CayleyGraph, radius: &Q, node_budget: usize) -> Result<Self, CayleyError> {
        let limit = graph.to_scaled(radius).ok_or(CayleyError::Overflow)?;
        let mut dist: HashMap<Element, u128> = HashMap::new();
        let mut last_step = HashMap::new();
        let mut heap = BinaryHeap::new();
        let origin = vec![0; graph.rank()];
        heap.push(Reverse((0u128, origin, usize::MAX)));
        while let Some(Reverse((d, v, via))) = heap.pop() {
            if dist.contains_key(&v) {
                continue;
            }
            dist.insert(v.clone(), d);
            if via != usize::MAX {
                last_step.insert(v.clone(), via);
            }
            if dist.len() > node_budget {
                return Err(CayleyError::NodeBudgetExceeded(node_budget));
            }
            for i in 0..graph.steps.len() {
                let nd = d + graph.steps[i];
                if nd > limit {
                    continue;
                }
                let w = graph.step(&v, i);
                if !dist.contains_key(&w) {
                    heap.push(Reverse((nd, w, i)));
                }
            }
        }
        Ok(BallIndex { graph, radius: limit, dist, last_step })
    }

    pub fn graph(&self) -> &'g CayleyGraph {
        self.graph
    }

    pub fn radius(&self) -> Q {
        self.graph.to_rational(self.radius as i128)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Elements of the ball with their scaled distances, sorted.
    pub fn elements(&self) -> Vec<(Element, u128)> {
        let mut v: Vec<(Element, u128)> = self.dist.iter().map(|(k, &d)| (k.clone(), d)).collect();
        v.sort();
        v
    }

    /// Scaled distance from the origin to canonical element `v`.
    pub fn origin_distance(&self, v: &[i64]) -> Option<u128> {
        self.dist.get(v).copied()
    }

    /// Scaled distance from `x` to `y`.
    pub fn scaled(&self, x: &[i64], y: &[i64]) -> Result<u128, CayleyError> {
        let diff = self.graph.sub(y, x);
        self.dist.get(&diff).copied().ok_or_else(|| CayleyError::BudgetExceeded { radius: self.radius() })
    }

    pub fn distance(&self, x: &[i64], y: &[i64]) -> Result<Q, CayleyError> {
        let x = self.graph.canonicalize(x)?;
        let y = self.graph.canonicalize(y)?;
        Ok(self.graph.to_rational(self.scaled(&x, &y)? as i128))
    }

    /// `phi_{y,z}(x) = d(y, x) - d(z, x)` in scaled units.
    ///
    /// For symmetric generator sets `d(y, x) = d(x, y)` and this is the usual
    /// `d(x,y) - d(x,z)`. For digraphs distances are measured towards `x`,
    /// which is the orientation in which limits along forward walks exist.
    pub fn phi_scaled(&self, y: &[i64], z: &[i64], x: &[i64]) -> Result<i128, CayleyError> {
        Ok(self.scaled(y, x)? as i128 - self.scaled(z, x)? as i128)
    }

    pub fn phi(&self, y: &[i64], z: &[i64], x: &[i64]) -> Result<Q, CayleyError> {
        let (y, z, x) = (self.graph.canonicalize(y)?, self.graph.canonicalize(z)?, self.graph.canonicalize(x)?);
        Ok(self.graph.to_rational(self.phi_scaled(&y, &z, &x)?))
    }

    /// Generator multiset (as counts) of one shortest path from the origin to `v`.
    pub fn shortest_word(&self, v: &[i64]) -> Option<Vec<u32>> {
        let mut counts = vec![0u32; self.graph.generators.len()];
        let mut cur = v.to_vec();
        self.dist.get(&cur)?;
        while let Some(&i) = self.last_step.get(&cur) {
            counts[i] += 1;
            let back: Vec<i64> = self.graph.generators.generators()[i].vector.iter().map(|x| -x).collect();
            cur = self.graph.step_by(&cur, &back);
        }
        Some(counts)
    }

    /// True iff every sub-walk of `base, base+s_{i_1}, ...` is a shortest path.
    pub fn is_geodesic(&self, base: &[i64], steps: &[usize]) -> Result<bool, CayleyError> {
        let base = self.graph.canonicalize(base)?;
        let mut points = vec![base];
        let mut prefix = vec![0u128];
        for &i in steps {
            if i >= self.graph.steps.len() {
                return Err(CayleyError::BadGenerator(i));
            }
            points.push(self.graph.step(points.last().unwrap(), i));
            prefix.push(prefix.last().unwrap() + self.graph.steps[i]);
        }
        for e in 0..points.len() {
            for f in e + 1..points.len() {
                if self.scaled(&points[e], &points[f])? != prefix[f] - prefix[e] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the sum of the multiset `counts` can be reached more cheaply
    /// than the multiset's own weight.
    pub fn minimality_violation(&self, counts: &[u32]) -> Result<bool, CayleyError> {
        if counts.iter().all(|&c| c == 0) {
            return Err(CayleyError::EmptyMultiset);
        }
        let origin = vec![0; self.graph.rank()];
        let target = self.graph.apply_counts(&origin, counts);
        Ok(self.scaled(&origin, &target)? < self.graph.counts_weight(counts))
    }

    /// Walks `gamma` for `horizon_blocks` repetitions of its block and reports
    /// the last value of `phi_{y,z}` along it.
    ///
    /// Both `phi_{y,gamma_0}` and `phi_{z,gamma_0}` must be nonincreasing along
    /// a geodesic; a rise is reported as an error.
    pub fn estimate_valuation(
        &self,
        gamma: &Geodesic,
        y: &[i64],
        z: &[i64],
        horizon_blocks: usize,
        window: Option<usize>,
    ) -> Result<ValuationEstimate, CayleyError> {
        let y = self.graph.canonicalize(y)?;
        let z = self.graph.canonicalize(z)?;
        let start = gamma.point(self.graph, 0);
        let window = match window {
            Some(w) => w,
            None => {
                let min_step = self.graph.steps.iter().copied().min().unwrap_or(1).max(1);
                let spread = self.scaled(&y, &start)? + self.scaled(&z, &start)?;
                spread.div_ceil(min_step) as usize + gamma.block.len()
            }
        };
        let total = gamma.prefix.len() + horizon_blocks * gamma.block.len();
        let mut values = Vec::with_capacity(total + 1);
        let mut prev_y = i128::MAX;
        let mut prev_z = i128::MAX;
        for (i, p) in gamma.walk(self.graph).take(total + 1).enumerate() {
            let dy = self.phi_scaled(&y, &start, &p)?;
            let dz = self.phi_scaled(&z, &start, &p)?;
            if dy > prev_y || dz > prev_z {
                return Err(CayleyError::MonotonicityViolation { step: i });
            }
            prev_y = dy;
            prev_z = dz;
            values.push(dy - dz);
        }
        let last = *values.last().expect("walk has at least its base point");
        let stabilized = values.len() >= window && values[values.len() - window..].iter().all(|&v| v == last);
        Ok(ValuationEstimate { value: self.graph.to_rational(last), stabilized, horizon: total, window })
    }
}

impl CayleyGraph {
    fn step_by(&self, x: &[i64], delta: &[i64]) -> Element {
        let mut v: Vec<i64> = x.iter().zip(delta).map(|(a, b)| a + b).collect();
        self.group.reduce_in_place(&mut v);
        v
    }
}

/// A walk `base, then prefix steps, then block steps repeated forever`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geodesic {
    pub base: Element,
    pub prefix: Vec<usize>,
    pub block: Vec<usize>,
}

impl Geodesic {
    pub fn new(base: Element, block: Vec<usize>) -> Self {
        Geodesic { base, prefix: vec![], block }
    }

    /// Step taken from point `i` to point `i + 1`.
    pub fn step_at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.block[(i - self.prefix.len()) % self.block.len()]
        }
    }

    pub fn walk<'a>(&'a self, graph: &'a CayleyGraph) -> impl Iterator<Item = Element> + 'a {
        let mut cur = graph.canonicalize(&self.base).expect("base has the group's rank");
        let mut i = 0usize;
        std::iter::from_fn(move || {
            let out = cur.clone();
            if self.block.is_empty() && i >= self.prefix.len() {
                return (i == self.prefix.len()).then(|| {
                    i += 1;
                    out
                });
            }
            cur = graph.step(&cur, self.step_at(i));
            i += 1;
            Some(out)
        })
    }

    pub fn point(&self, graph: &CayleyGraph, i: usize) -> Element {
        self.walk(graph).nth(i).expect("walk long enough")
    }

    /// The first `len` steps.
    pub fn steps(&self, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.step_at(i)).collect()
    }

    /// Generator counts of one block.
    pub fn block_counts(&self, generators: usize) -> Vec<u32> {
        let mut c = vec![0; generators];
        for &i in &self.block {
            c[i] += 1;
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationEstimate {
    pub value: Q,
    /// Whether the value was constant over the final `window` evaluations.
    pub stabilized: bool,
    /// Number of steps walked.
    pub horizon: usize,
    pub window: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example1() -> CayleyGraph {
        CayleyGraph::new(GroupSpec::free(2), GeneratorSet::unit(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], true).unwrap())
            .unwrap()
    }

    pub(crate) fn example2() -> CayleyGraph {
        CayleyGraph::new(GroupSpec::free(1), GeneratorSet::unit(&[vec![1], vec![-1], vec![8], vec![-8]], true).unwrap())
            .unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn canonicalize_examples() {
        let z2 = GroupSpec::free(2);
        assert_eq!(z2.canonicalize(&[3, -2]).unwrap(), vec![3, -2]);
        let g = GroupSpec::new(2, &[vec![0, 5]]).unwrap();
        assert_eq!(g.canonicalize(&[1, 7]).unwrap(), vec![1, 2]);
        assert_eq!(g.canonicalize(&[0, 0]).unwrap(), vec![0, 0]);
        assert_eq!(g.canonicalize(&[1, -3]).unwrap(), vec![1, 2]);
        assert!(matches!(g.canonicalize(&[1]), Err(CayleyError::DimensionMismatch { .. })));
    }

    #[test]
    fn distance_examples() {
        let g1 = example1();
        assert_eq!(g1.distance(&[0, 0], &[1, 1], &q(10)).unwrap(), q(2));
        let g2 = example2();
        assert_eq!(g2.distance(&[0], &[7], &q(10)).unwrap(), q(2));
        assert_eq!(g2.distance(&[0], &[4], &q(10)).unwrap(), q(4));
        assert!(matches!(g2.distance(&[0], &[4], &q(3)), Err(CayleyError::BudgetExceeded { .. })));
    }

    #[test]
    fn weighted_distance_is_rational() {
        let gens = vec![
            Generator { vector: vec![1], weight: Q::new(3.into(), 2.into()) },
            Generator { vector: vec![-1], weight: Q::new(3.into(), 2.into()) },
            Generator { vector: vec![2], weight: q(2) },
            Generator { vector: vec![-2], weight: q(2) },
        ];
        let g = CayleyGraph::new(GroupSpec::free(1), GeneratorSet::new(gens, true).unwrap()).unwrap();
        assert_eq!(g.distance(&[0], &[3], &q(10)).unwrap(), Q::new(7.into(), 2.into()));
        assert_eq!(g.distance(&[0], &[4], &q(10)).unwrap(), q(4));
    }

    #[test]
    fn phi_examples() {
        let g = example1();
        let ball = g.ball(&q(30)).unwrap();
        assert_eq!(ball.phi(&[2, 3], &[2, 3], &[5, -1]).unwrap(), q(0));
        let (a, b) = (vec![1, 2], vec![-2, 0]);
        assert_eq!(ball.phi(&a, &b, &a).unwrap(), -ball.distance(&a, &b).unwrap());
        assert_eq!(ball.phi(&[0, 0], &[1, 0], &[5, 5]).unwrap(), q(1));
    }

    #[test]
    fn geodesic_examples() {
        let g = example1();
        let ball = g.ball(&q(10)).unwrap();
        assert!(ball.is_geodesic(&[0, 0], &[0, 2, 0, 2]).unwrap());
        assert!(!ball.is_geodesic(&[0, 0], &[0, 1]).unwrap());
        let g2 = example2();
        let ball2 = g2.ball(&q(10)).unwrap();
        assert!(!ball2.is_geodesic(&[0], &[0; 5]).unwrap());
        assert!(ball2.is_geodesic(&[0], &[0; 4]).unwrap());
    }

    #[test]
    fn minimality_examples() {
        let g = example1();
        let ball = g.ball(&q(10)).unwrap();
        assert!(ball.minimality_violation(&[1, 1, 0, 0]).unwrap());
        assert!(!ball.minimality_violation(&[1, 0, 1, 0]).unwrap());
        assert_eq!(ball.minimality_violation(&[0, 0, 0, 0]), Err(CayleyError::EmptyMultiset));
        let g2 = example2();
        let ball2 = g2.ball(&q(10)).unwrap();
        assert!(ball2.minimality_violation(&[5, 0, 0, 0]).unwrap());
        assert!(!ball2.minimality_violation(&[4, 0, 0, 0]).unwrap());
    }

    #[test]
    fn valuation_along_diagonal_staircase() {
        let g = example1();
        let ball = g.ball(&q(140)).unwrap();
        let gamma = Geodesic::new(vec![0, 0], vec![0, 2]);
        for (x, y) in [(0, 0), (3, -2), (-4, 5)] {
            let est = ball.estimate_valuation(&gamma, &[x, y], &[x + 1, y], 50, None).unwrap();
            assert!(est.stabilized);
            assert_eq!(est.value, q(1));
            let est = ball.estimate_valuation(&gamma, &[x, y], &[x, y + 1], 50, None).unwrap();
            assert_eq!(est.value, q(1));
        }
    }

    #[test]
    fn valuation_along_vertical_line() {
        let g = example1();
        let ball = g.ball(&q(80)).unwrap();
        for k in [-2i64, 0, 3] {
            let gamma = Geodesic::new(vec![k, 0], vec![2]);
            for x in -4..5 {
                let est = ball.estimate_valuation(&gamma, &[x, 1], &[x + 1, 1], 50, None).unwrap();
                assert!(est.stabilized);
                assert_eq!(est.value, q(if x < k { 1 } else { -1 }), "k={k} x={x}");
            }
        }
    }

    #[test]
    fn valuation_in_example_two_is_antisymmetric_between_directions() {
        let g = example2();
        let ball = g.ball(&q(80)).unwrap();
        let up = Geodesic::new(vec![3], vec![2]);
        let down = Geodesic::new(vec![3], vec![3]);
        let f_up = ball.estimate_valuation(&up, &[3], &[11], 50, None).unwrap();
        let f_down = ball.estimate_valuation(&down, &[3], &[11], 50, None).unwrap();
        assert!(f_up.stabilized && f_down.stabilized);
        // d(3 + 8n, 3) - d(3 + 8n, 11) = n - (n - 1)
        assert_eq!(f_up.value, q(1));
        assert_eq!(f_down.value, -q(1));
    }

    #[test]
    fn non_geodesic_walk_is_rejected() {
        let g = example2();
        let ball = g.ball(&q(80)).unwrap();
        let gamma = Geodesic::new(vec![0], vec![0]);
        assert!(matches!(
            ball.estimate_valuation(&gamma, &[5], &[0], 20, None),
            Err(CayleyError::MonotonicityViolation { .. })
        ));
    }

    #[test]
    fn not_generating() {
        let err = CayleyGraph::new(GroupSpec::free(1), GeneratorSet::unit(&[vec![2], vec![-2]], true).unwrap()).unwrap_err();
        assert_eq!(err, CayleyError::NotGenerating { free_rank: 0, torsion: vec![BigInt::from(2)] });
    }

    #[test]
    fn torsion_group_distances() {
        // Z x Z/5 with generators (±1, 0), (0, ±1)
        let group = GroupSpec::new(2, &[vec![0, 5]]).unwrap();
        let gens = GeneratorSet::unit(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], true).unwrap();
        let g = CayleyGraph::new(group, gens).unwrap();
        assert_eq!(g.distance(&[0, 0], &[0, 4], &q(10)).unwrap(), q(1));
        assert_eq!(g.distance(&[0, 0], &[2, 3], &q(10)).unwrap(), q(4));
    }

    #[test]
    fn shortest_words_have_distance_weight() {
        let g = example2();
        let ball = g.ball(&q(6)).unwrap();
        for (v, d) in ball.elements() {
            let w = ball.shortest_word(&v).unwrap();
            assert_eq!(g.counts_weight(&w), d);
            assert_eq!(g.apply_counts(&[0], &w), v);
        }
    }

    #[test]
    fn symmetry_flag_is_checked() {
        assert!(matches!(GeneratorSet::unit(&[vec![1], vec![8]], true), Err(CayleyError::NotSymmetric(_))));
        let s = GeneratorSet::symmetrized(vec![
            Generator { vector: vec![1], weight: q(1) },
            Generator { vector: vec![8], weight: q(1) },
        ])
        .unwrap();
        assert_eq!(s.vectors(), vec![vec![1], vec![-1], vec![8], vec![-8]]);
    }
}
