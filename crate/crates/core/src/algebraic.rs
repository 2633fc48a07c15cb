//! Standard pairs of an initial ideal and the boundary points they code.
//!
//! A standard pair `(M, T)` is a maximal family `M * k[T]` of standard
//! monomials. A boundary point is written `N * D^∞`: a base monomial `N`
//! and a nonempty direction `D`, lying under some standard pair.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cayley::{CayleyGraph, Element, Geodesic};
pub use crate::groebner::MonomialIdeal;
use crate::groebner::Monomial;

/// Default cap on candidate `(M, T)` pairs examined.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error("standard pair search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("too many variables for subset enumeration: {0}")]
    TooManyVariables(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardPair {
    pub base: Monomial,
    /// Sorted variable indices.
    pub free: Vec<usize>,
}

impl StandardPair {
    /// Whether `m = base * (monomial supported on free)`.
    pub fn covers(&self, m: &Monomial) -> bool {
        pair_covers(self, m)
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.free.iter().map(|i| format!("x{i}")).collect();
        write!(f, "({}, {{{}}})", self.base, t.join(","))
    }
}

impl fmt::Debug for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn pair_covers(pair: &StandardPair, m: &Monomial) -> bool {
    pair.base.divides(m) && m.div(&pair.base).support().iter().all(|v| pair.free.binary_search(v).is_ok())
}

fn admissible(ideal: &MonomialIdeal, base: &Monomial, free: &[usize]) -> bool {
    !ideal.generators().iter().any(|g| g.without(free).divides(base))
}

/// All standard pairs of `ideal`, sorted.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Result<Vec<StandardPair>, AlgebraicError> {
    standard_pairs_with_budget(ideal, DEFAULT_CANDIDATE_BUDGET)
}

pub fn standard_pairs_with_budget(ideal: &MonomialIdeal, budget: u64) -> Result<Vec<StandardPair>, AlgebraicError> {
    let n = ideal.nvars();
    if n > 24 {
        return Err(AlgebraicError::TooManyVariables(n));
    }
    // a maximal pair never has an exponent reaching the largest one among the generators
    let bound: Vec<u32> = (0..n).map(|i| ideal.generators().iter().map(|g| g.0[i]).max().unwrap_or(0)).collect();
    let forced: u32 = (0..n).filter(|&i| bound[i] == 0).fold(0, |acc, i| acc | (1 << i));
    let full = (1u32 << n) - 1;
    let mut needed: u64 = 0;
    for t in 0..=full {
        if t & forced != forced {
            continue;
        }
        let c = (0..n).filter(|i| t >> i & 1 == 0).try_fold(1u64, |acc, i| acc.checked_mul(bound[i] as u64));
        needed = needed.saturating_add(c.unwrap_or(u64::MAX));
    }
    if needed > budget {
        return Err(AlgebraicError::BudgetExceeded { needed, budget });
    }

    let mut out = Vec::new();
    for t in 0..=full {
        if t & forced != forced {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|i| t >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).filter(|i| t >> i & 1 == 0).collect();
        let mut base = Monomial::one(n);
        loop {
            if admissible(ideal, &base, &free) && is_maximal(ideal, &base, &free, &outside) {
                out.push(StandardPair { base: base.clone(), free: free.clone() });
            }
            // odometer over the exponents outside T
            let mut k = 0;
            while k < outside.len() {
                let v = outside[k];
                base.0[v] += 1;
                if base.0[v] < bound[v] {
                    break;
                }
                base.0[v] = 0;
                k += 1;
            }
            if k == outside.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_maximal(ideal: &MonomialIdeal, base: &Monomial, free: &[usize], outside: &[usize]) -> bool {
    outside.iter().all(|&i| {
        let mut bigger: Vec<usize> = free.to_vec();
        bigger.push(i);
        bigger.sort_unstable();
        !admissible(ideal, &base.without(&[i]), &bigger)
    })
}

/// `base * direction^∞`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPointAlg {
    pub base: Monomial,
    pub direction: Vec<usize>,
}

impl BoundaryPointAlg {
    /// The coded geodesic: the base path, then each direction generator in turn, forever.
    pub fn geodesic(&self, graph: &CayleyGraph) -> Geodesic {
        Geodesic::new(self.base_point(graph), self.direction.clone())
    }

    pub fn base_point(&self, graph: &CayleyGraph) -> Element {
        self.base.point(graph)
    }
}

impl fmt::Display for BoundaryPointAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.direction.iter().map(|i| format!("x{i}^inf")).collect();
        if self.base.is_one() {
            write!(f, "{}", d.join("*"))
        } else {
            write!(f, "{}*{}", self.base, d.join("*"))
        }
    }
}

impl fmt::Debug for BoundaryPointAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Infinitely many points `base * free^e * direction^∞`, one per exponent
/// vector `e` on the `free` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryFamily {
    pub base: Monomial,
    pub free: Vec<usize>,
    pub direction: Vec<usize>,
}

impl fmt::Display for BoundaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.base.is_one() {
            parts.push(self.base.to_string());
        }
        parts.extend(self.free.iter().map(|i| format!("x{i}^*")));
        parts.extend(self.direction.iter().map(|i| format!("x{i}^inf")));
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryEnumeration {
    /// Deduplicated points, sorted; free exponents capped.
    pub points: Vec<BoundaryPointAlg>,
    /// Families with at least one free finite exponent.
    pub families: Vec<BoundaryFamily>,
}

impl BoundaryEnumeration {
    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }
}

fn subsets(items: &[usize]) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
    (0u32..1 << items.len()).map(move |mask| {
        let pick = |bit| items.iter().enumerate().filter(move |(k, _)| mask >> k & 1 == bit).map(|(_, &v)| v).collect();
        (pick(1), pick(0))
    })
}

/// Boundary expressions `M * prod t^e_t` with at least one infinite
/// exponent; finite exponents range over `0..=cap`.
pub fn enumerate_boundary(pairs: &[StandardPair], cap: u32) -> BoundaryEnumeration {
    let mut points = BTreeSet::new();
    let mut families = BTreeSet::new();
    for pair in pairs {
        for (direction, finite) in subsets(&pair.free) {
            if direction.is_empty() {
                continue;
            }
            if !finite.is_empty() {
                families.insert(BoundaryFamily { base: pair.base.clone(), free: finite.clone(), direction: direction.clone() });
            }
            let mut base = pair.base.clone();
            loop {
                points.insert(BoundaryPointAlg { base: base.clone(), direction: direction.clone() });
                let mut k = 0;
                while k < finite.len() {
                    let v = finite[k];
                    if base.0[v] - pair.base.0[v] < cap {
                        base.0[v] += 1;
                        break;
                    }
                    base.0[v] = pair.base.0[v];
                    k += 1;
                }
                if k == finite.len() {
                    break;
                }
            }
        }
    }
    BoundaryEnumeration { points: points.into_iter().collect(), families: families.into_iter().collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinctness {
    Distinct,
    NotDistinct,
    /// The cost vector is not generic, so different codes may name the same point.
    Unknown,
}

pub fn points_distinct_generic(p: &BoundaryPointAlg, q: &BoundaryPointAlg, generic: bool) -> Distinctness {
    if p == q {
        Distinctness::NotDistinct
    } else if generic {
        Distinctness::Distinct
    } else {
        Distinctness::Unknown
    }
}

/// A subsequence of standard monomials converging to a boundary point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub pair: usize,
    /// Indices into the input sequence, increasing.
    pub indices: Vec<usize>,
    pub limit: BoundaryPointAlg,
}

fn longest_increasing(values: &[u32]) -> Vec<usize> {
    // O(n^2) is fine for sampled sequences
    let n = values.len();
    let mut len = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            if values[j] < values[i] && len[j] + 1 > len[i] {
                len[i] = len[j] + 1;
                prev[i] = j;
            }
        }
    }
    let Some(mut i) = (0..n).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else { return vec![] };
    let mut out = vec![i];
    while prev[i] != usize::MAX {
        i = prev[i];
        out.push(i);
    }
    out.reverse();
    out
}

/// Passes to a subsequence lying under one standard pair on which every
/// free exponent is either constant or strictly increasing. `None` when no
/// exponent grows (the subsequence stays bounded) or some monomial is not
/// covered by any pair.
pub fn refine_sequence(pairs: &[StandardPair], seq: &[Monomial]) -> Option<Refinement> {
    let owners: Vec<usize> = seq.iter().map(|m| pairs.iter().position(|p| p.covers(m))).collect::<Option<_>>()?;
    let pair = (0..pairs.len()).max_by_key(|&p| (owners.iter().filter(|&&o| o == p).count(), std::cmp::Reverse(p)))?;
    let mut indices: Vec<usize> = (0..seq.len()).filter(|&i| owners[i] == pair).collect();
    let mut base = pairs[pair].base.clone();
    let mut direction = Vec::new();
    for &t in &pairs[pair].free {
        let values: Vec<u32> = indices.iter().map(|&i| seq[i].0[t]).collect();
        let inc = longest_increasing(&values);
        let mut counts = std::collections::BTreeMap::new();
        for &v in &values {
            *counts.entry(v).or_insert(0usize) += 1;
        }
        let (&value, &count) = counts.iter().max_by_key(|(v, c)| (**c, std::cmp::Reverse(**v)))?;
        if count >= inc.len() {
            indices.retain(|&i| seq[i].0[t] == value);
            base.0[t] = value;
        } else {
            indices = inc.into_iter().map(|k| indices[k]).collect();
            base.0[t] = pairs[pair].base.0[t];
            direction.push(t);
        }
    }
    if direction.is_empty() {
        return None;
    }
    Some(Refinement { pair, indices, limit: BoundaryPointAlg { base, direction } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn pair(base: &[u32], free: &[usize]) -> StandardPair {
        StandardPair { base: mono(base), free: free.to_vec() }
    }

    #[test]
    fn single_variable_ideal() {
        let j = MonomialIdeal::new(2, vec![mono(&[1, 0])]);
        assert_eq!(standard_pairs(&j).unwrap(), vec![pair(&[0, 0], &[1])]);
        let e = enumerate_boundary(&standard_pairs(&j).unwrap(), 3);
        assert_eq!(e.points, vec![BoundaryPointAlg { base: mono(&[0, 0]), direction: vec![1] }]);
        assert!(e.is_finite());
    }

    #[test]
    fn example_one_pairs() {
        let j = MonomialIdeal::new(4, vec![mono(&[1, 1, 0, 0]), mono(&[0, 0, 1, 1])]);
        let pairs = standard_pairs(&j).unwrap();
        let mut expected = vec![pair(&[0; 4], &[0, 2]), pair(&[0; 4], &[0, 3]), pair(&[0; 4], &[1, 2]), pair(&[0; 4], &[1, 3])];
        expected.sort();
        assert_eq!(pairs, expected);

        let e = enumerate_boundary(&pairs, 2);
        let a_inf = BoundaryPointAlg { base: mono(&[0; 4]), direction: vec![0] };
        assert_eq!(e.points.iter().filter(|p| **p == a_inf).count(), 1);
        // per pair: 3 + 3 one-direction points and one two-direction point, minus shared corners
        assert_eq!(e.points.len(), 4 * (3 + 3 + 1) - 4);
        assert_eq!(e.families.len(), 8);
    }

    #[test]
    fn coverage_and_maximality() {
        let j = MonomialIdeal::new(3, vec![mono(&[2, 1, 0]), mono(&[0, 2, 1]), mono(&[1, 0, 2])]);
        let pairs = standard_pairs(&j).unwrap();
        let bound = 5u32;
        for a in 0..bound {
            for b in 0..bound {
                for c in 0..bound {
                    let m = mono(&[a, b, c]);
                    let covered = pairs.iter().any(|p| p.covers(&m));
                    assert_eq!(covered, !j.contains(&m), "{m}");
                }
            }
        }
        for p in &pairs {
            for q in &pairs {
                let contained = p != q
                    && p.free.iter().all(|v| q.free.contains(v))
                    && q.base.divides(&p.base)
                    && p.base.div(&q.base).support().iter().all(|v| q.free.contains(v));
                assert!(!contained, "{p} inside {q}");
            }
        }
    }

    #[test]
    fn covers() {
        let p = pair(&[0; 4], &[0, 2]);
        assert!(p.covers(&mono(&[3, 0, 2, 0])));
        assert!(!p.covers(&mono(&[1, 1, 0, 0])));
        let q = pair(&[1, 0, 0, 0, 0, 0, 0, 0], &[4, 6]);
        assert!(q.covers(&mono(&[1, 0, 0, 0, 5, 0, 0, 0])));
    }

    #[test]
    fn distinctness() {
        let p = BoundaryPointAlg { base: mono(&[0; 4]), direction: vec![0] };
        let q = BoundaryPointAlg { base: mono(&[0, 0, 1, 0]), direction: vec![0] };
        assert_eq!(points_distinct_generic(&p, &q, true), Distinctness::Distinct);
        assert_eq!(points_distinct_generic(&p, &q, false), Distinctness::Unknown);
        assert_eq!(points_distinct_generic(&p, &p, true), Distinctness::NotDistinct);
    }

    #[test]
    fn budget_guard() {
        let j = MonomialIdeal::new(3, vec![mono(&[50, 50, 50])]);
        assert!(matches!(standard_pairs_with_budget(&j, 1000), Err(AlgebraicError::BudgetExceeded { .. })));
    }

    #[test]
    fn refinement_picks_growing_exponents() {
        let pairs = vec![pair(&[0; 4], &[0, 2]), pair(&[0; 4], &[1, 3])];
        let seq: Vec<Monomial> = (0..20u32).map(|k| if k % 2 == 0 { mono(&[k, 0, 1, 0]) } else { mono(&[0, k, 0, 0]) }).collect();
        let r = refine_sequence(&pairs, &seq).unwrap();
        assert_eq!(r.pair, 0);
        assert_eq!(r.limit, BoundaryPointAlg { base: mono(&[0, 0, 1, 0]), direction: vec![0] });
        assert_eq!(r.indices.len(), 10);
        assert!(refine_sequence(&pairs, &[mono(&[1, 1, 0, 0])]).is_none());
    }
}

#[cfg(test)]
mod pipeline_tests {
    use super::*;
    use crate::cayley::{Generator, GeneratorSet, GroupSpec, Q};
    use crate::groebner::{buchberger, cayley_ideal, WeightOrder};
    use num_traits::One;

    fn pairs_for(rank: usize, vectors: &[Vec<i64>], perturb: Option<u64>) -> (Vec<StandardPair>, bool) {
        let gens = GeneratorSet::symmetrized(vectors.iter().map(|v| Generator { vector: v.clone(), weight: Q::one() }).collect()).unwrap();
        let ideal = cayley_ideal(&GroupSpec::free(rank), &gens).unwrap();
        let mut order = WeightOrder::unit(gens.len());
        if let Some(d) = perturb {
            order = order.perturbed(d).unwrap();
        }
        let gb = buchberger(&ideal, &order).unwrap();
        (standard_pairs(&gb.initial_ideal()).unwrap(), gb.is_generic())
    }

    #[test]
    fn example_two_has_sixteen_points() {
        let (pairs, generic) = pairs_for(1, &[vec![1], vec![8]], Some(1000));
        assert!(generic);
        let e = enumerate_boundary(&pairs, 3);
        assert!(e.is_finite());
        assert_eq!(e.points.len(), 16);
        let up = e.points.iter().filter(|p| p.direction == vec![2]).count();
        let down = e.points.iter().filter(|p| p.direction == vec![3]).count();
        assert_eq!((up, down), (8, 8));
    }

    #[test]
    fn example_four_pairs() {
        let (pairs, generic) = pairs_for(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]], None);
        assert!(!generic);
        let mut e1 = Monomial::one(8);
        e1.0[0] = 1;
        assert!(pairs.contains(&StandardPair { base: Monomial::one(8), free: vec![4, 6] }), "{pairs:?}");
        assert!(pairs.contains(&StandardPair { base: e1, free: vec![4, 6] }), "{pairs:?}");
    }

    #[test]
    fn example_one_perturbed_pairs() {
        let (pairs, generic) = pairs_for(2, &[vec![1, 0], vec![0, 1]], Some(1000));
        assert!(generic);
        assert_eq!(pairs.len(), 4);
    }
}
