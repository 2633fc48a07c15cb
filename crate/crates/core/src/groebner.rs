//! Binomial Gröbner bases for the lattice ideal of a generator set.
//!
//! Variables are the generators, a monomial is a multiset of generators (a
//! path up to reordering) and the lattice ideal is spanned by the binomials
//! `x^u+ - x^u-` whose two paths end at the same group element. Under a
//! weight order the standard monomials are the cheapest paths, one per group
//! element, provided no element of the reduced basis is a weight tie.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cayley::{CayleyError, CayleyGraph, Element, GeneratorSet, GroupSpec, Q};
use crate::linalg::{hermite_normal_form, integer_kernel, IntMatrix};

/// Default cap on processed S-pairs per completion.
pub const DEFAULT_PAIR_BUDGET: usize = 500_000;

// scaled costs above this bound could overflow monomial weights
const MAX_SCALED_COST: i128 = 1 << 90;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cost {index} is not positive")]
    NonPositiveCost { index: usize },
    #[error("scaled costs do not fit in 90 bits; use a smaller perturbation denominator")]
    Overflow,
    #[error("completion exceeded the budget of {0} S-pairs")]
    BudgetExceeded(usize),
}

/// Exponent vector over the generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; `other` must divide `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Zeroes the exponents of the variables in `vars`.
    pub fn without(&self, vars: &[usize]) -> Monomial {
        let mut m = self.clone();
        for &v in vars {
            m.0[v] = 0;
        }
        m
    }

    /// The group element reached by the path.
    pub fn point(&self, graph: &CayleyGraph) -> Element {
        let counts: Vec<u32> = self.0.clone();
        graph.apply_counts(&vec![0; graph.rank()], &counts)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `lead - trail` with `lead` larger in the order used to build it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl Binomial {
    /// `x^u+ - x^u-`, oriented by `order`; `None` for the zero vector.
    pub fn from_vector(u: &[i64], order: &impl TermOrder) -> Option<Binomial> {
        let plus = Monomial(u.iter().map(|&x| x.max(0) as u32).collect());
        let minus = Monomial(u.iter().map(|&x| (-x).max(0) as u32).collect());
        Self::from_terms(plus, minus, order)
    }

    fn from_terms(a: Monomial, b: Monomial, order: &impl TermOrder) -> Option<Binomial> {
        match order.compare(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    /// Exponent difference `lead - trail`.
    pub fn vector(&self) -> Vec<i64> {
        self.lead.0.iter().zip(&self.trail.0).map(|(&a, &b)| a as i64 - b as i64).collect()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial well-order.
pub trait TermOrder {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering;
}

/// Compares weight rows in turn, then total degree, then lexicographically
/// with `x0` largest. All rows are nonnegative so this is a well-order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MatrixOrder {
    rows: Vec<Vec<i128>>,
}

fn dot(w: &[i128], m: &Monomial) -> i128 {
    w.iter().zip(&m.0).map(|(a, &e)| a * e as i128).sum()
}

fn graded_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

impl TermOrder for MatrixOrder {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for w in &self.rows {
            match dot(w, a).cmp(&dot(w, b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        graded_lex(a, b)
    }
}

/// Cost order: total cost first, graded lexicographic on the generator
/// order to break ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrder {
    costs: Vec<Q>,
    scale: BigInt,
    scaled: Vec<i128>,
}

impl WeightOrder {
    pub fn new(costs: Vec<Q>) -> Result<Self, GroebnerError> {
        if let Some(index) = costs.iter().position(|c| !c.is_positive()) {
            return Err(GroebnerError::NonPositiveCost { index });
        }
        let scale = costs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = costs
            .iter()
            .map(|c| {
                (c.numer() * (&scale / c.denom()))
                    .to_i128()
                    .filter(|&v| v <= MAX_SCALED_COST)
                    .ok_or(GroebnerError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightOrder { costs, scale, scaled })
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(vec![Q::one(); nvars]).expect("unit costs are valid")
    }

    pub fn from_generators(gens: &GeneratorSet) -> Result<Self, GroebnerError> {
        Self::new(gens.weights())
    }

    /// `c + (ε, ε², ε³, ...)` with `ε = 1/denominator`.
    pub fn perturbed(&self, denominator: u64) -> Result<Self, GroebnerError> {
        let eps = Q::new(BigInt::one(), BigInt::from(denominator));
        let mut power = Q::one();
        let costs = self
            .costs
            .iter()
            .map(|c| {
                power = &power * &eps;
                c + &power
            })
            .collect();
        Self::new(costs)
    }

    pub fn nvars(&self) -> usize {
        self.costs.len()
    }

    pub fn costs(&self) -> &[Q] {
        &self.costs
    }

    /// Weight in units of `1 / scale`.
    pub fn scaled_weight(&self, m: &Monomial) -> i128 {
        dot(&self.scaled, m)
    }

    pub fn weight(&self, m: &Monomial) -> Q {
        Q::new(BigInt::from(self.scaled_weight(m)), self.scale.clone())
    }

    pub fn is_tie(&self, b: &Binomial) -> bool {
        self.scaled_weight(&b.lead) == self.scaled_weight(&b.trail)
    }
}

impl TermOrder for WeightOrder {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.scaled_weight(a).cmp(&self.scaled_weight(b)).then_with(|| graded_lex(a, b))
    }
}

/// Basis (rows) of `{u in Z^S : sum u_i s_i = 0 in G}`.
pub fn cayley_lattice(group: &GroupSpec, gens: &GeneratorSet) -> Result<IntMatrix, GroebnerError> {
    gens.check_generates(group)?;
    let k = gens.len();
    let stacked = gens.matrix(group.rank()).hconcat(group.relations());
    let kernel = integer_kernel(&stacked);
    let projected: Vec<Vec<BigInt>> = kernel.columns().into_iter().map(|c| c[..k].to_vec()).collect();
    if projected.is_empty() {
        return Ok(IntMatrix::zeros(0, k));
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&projected));
    let rows: Vec<Vec<BigInt>> = (0..h.rows()).map(|i| h.row(i)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    Ok(if rows.is_empty() { IntMatrix::zeros(0, k) } else { IntMatrix::from_rows(&rows) })
}

/// The saturated lattice ideal: basis of the lattice and a generating set
/// (reduced with respect to graded lex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdeal {
    pub nvars: usize,
    pub basis: IntMatrix,
    pub generators: Vec<Binomial>,
}

fn nf(m: &Monomial, basis: &[Binomial]) -> Monomial {
    let mut m = m.clone();
    while let Some(g) = basis.iter().find(|g| g.lead.divides(&m)) {
        m = m.div(&g.lead).mul(&g.trail);
    }
    m
}

fn reduce(b: &Binomial, basis: &[Binomial], order: &impl TermOrder) -> Option<Binomial> {
    Binomial::from_terms(nf(&b.lead, basis), nf(&b.trail, basis), order)
}

fn s_pair(f: &Binomial, g: &Binomial, order: &impl TermOrder) -> Option<Binomial> {
    let l = f.lead.lcm(&g.lead);
    Binomial::from_terms(l.div(&f.lead).mul(&f.trail), l.div(&g.lead).mul(&g.trail), order)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
fn complete(gens: &[Binomial], order: &impl TermOrder, budget: usize) -> Result<Vec<Binomial>, GroebnerError> {
    let mut basis: Vec<Binomial> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    let push = |b: Binomial, basis: &mut Vec<Binomial>, pairs: &mut Vec<(usize, usize, Monomial)>| {
        let j = basis.len();
        for (i, f) in basis.iter().enumerate() {
            // first criterion: coprime leads reduce to zero
            if !f.lead.is_coprime(&b.lead) {
                pairs.push((i, j, f.lead.lcm(&b.lead)));
            }
        }
        basis.push(b);
    };
    for g in gens {
        if let Some(r) = reduce(&Binomial::from_terms(g.lead.clone(), g.trail.clone(), order).unwrap_or(g.clone()), &basis, order) {
            push(r, &mut basis, &mut pairs);
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > budget {
            return Err(GroebnerError::BudgetExceeded(budget));
        }
        // normal selection: smallest lcm first
        let pick = (0..pairs.len())
            .min_by(|&a, &b| order.compare(&pairs[a].2, &pairs[b].2).then(a.cmp(&b)))
            .expect("nonempty");
        let (i, j, _) = pairs.swap_remove(pick);
        let Some(s) = s_pair(&basis[i], &basis[j], order) else { continue };
        if let Some(r) = reduce(&s, &basis, order) {
            push(r, &mut basis, &mut pairs);
        }
    }
    Ok(interreduce(basis, order))
}

fn interreduce(mut basis: Vec<Binomial>, order: &impl TermOrder) -> Vec<Binomial> {
    basis.sort_by(|a, b| order.compare(&a.lead, &b.lead));
    let mut kept: Vec<Binomial> = Vec::new();
    for b in basis {
        if !kept.iter().any(|k| k.lead.divides(&b.lead)) {
            kept.push(b);
        }
    }
    let leads_only = kept.clone();
    kept.into_iter()
        .map(|b| {
            let others: Vec<Binomial> = leads_only.iter().filter(|o| o.lead != b.lead).cloned().collect();
            Binomial { trail: nf(&b.trail, &others), lead: b.lead }
        })
        .collect()
}

fn unit_variables(basis: &[Binomial], nvars: usize) -> Vec<bool> {
    let mut units = vec![false; nvars];
    for b in basis.iter().filter(|b| b.trail.is_one()) {
        for v in b.lead.support() {
            units[v] = true;
        }
    }
    units
}

fn extend(b: &Binomial) -> Binomial {
    let mut lead = b.lead.clone();
    let mut trail = b.trail.clone();
    lead.0.push(0);
    trail.0.push(0);
    Binomial { lead, trail }
}

/// `I : x_var^∞` by eliminating `t` from `I + <t x_var - 1>`.
fn saturate_variable(basis: &[Binomial], nvars: usize, var: usize, budget: usize) -> Result<Vec<Binomial>, GroebnerError> {
    let mut elim = vec![0i128; nvars + 1];
    elim[nvars] = 1;
    let order = MatrixOrder { rows: vec![elim] };
    let mut gens: Vec<Binomial> = basis.iter().map(extend).collect();
    let mut tx = Monomial::var(nvars + 1, nvars);
    tx.0[var] = 1;
    gens.push(Binomial { lead: tx, trail: Monomial::one(nvars + 1) });
    let full = complete(&gens, &order, budget)?;
    let plain = MatrixOrder { rows: vec![] };
    let kept: Vec<Binomial> = full
        .into_iter()
        .filter(|b| b.lead.0[nvars] == 0 && b.trail.0[nvars] == 0)
        .map(|b| {
            let (mut l, mut t) = (b.lead, b.trail);
            l.0.pop();
            t.0.pop();
            Binomial { lead: l, trail: t }
        })
        .collect();
    complete(&kept, &plain, budget)
}

/// Generators of the saturated lattice ideal of a lattice given by basis rows.
pub fn lattice_ideal_generators(basis: &IntMatrix) -> Result<LatticeIdeal, GroebnerError> {
    lattice_ideal_generators_with_budget(basis, DEFAULT_PAIR_BUDGET)
}

pub fn lattice_ideal_generators_with_budget(basis: &IntMatrix, budget: usize) -> Result<LatticeIdeal, GroebnerError> {
    let nvars = basis.cols();
    let order = MatrixOrder { rows: vec![] };
    let gens: Vec<Binomial> = (0..basis.rows())
        .filter_map(|i| {
            let u: Vec<i64> = basis.row(i).iter().map(|x| x.to_i64().expect("lattice entries fit in i64")).collect();
            Binomial::from_vector(&u, &order)
        })
        .collect();
    let mut current = complete(&gens, &order, budget)?;
    for var in 0..nvars {
        if unit_variables(&current, nvars)[var] {
            continue;
        }
        current = saturate_variable(&current, nvars, var, budget)?;
    }
    Ok(LatticeIdeal { nvars, basis: basis.clone(), generators: current })
}

/// Lattice ideal of `(G, S)`.
pub fn cayley_ideal(group: &GroupSpec, gens: &GeneratorSet) -> Result<LatticeIdeal, GroebnerError> {
    lattice_ideal_generators(&cayley_lattice(group, gens)?)
}

/// Reduced Gröbner basis under a weight order, with every basis element
/// whose two terms cost the same recorded as a genericity witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: WeightOrder,
    elements: Vec<Binomial>,
    ties: Vec<Binomial>,
}

pub fn buchberger(ideal: &LatticeIdeal, order: &WeightOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_budget(ideal, order, DEFAULT_PAIR_BUDGET)
}

pub fn buchberger_with_budget(ideal: &LatticeIdeal, order: &WeightOrder, budget: usize) -> Result<GroebnerBasis, GroebnerError> {
    if order.nvars() != ideal.nvars {
        return Err(GroebnerError::DimensionMismatch { expected: ideal.nvars, got: order.nvars() });
    }
    let elements = complete(&ideal.generators, order, budget)?;
    let ties = elements.iter().filter(|b| order.is_tie(b)).cloned().collect();
    Ok(GroebnerBasis { order: order.clone(), elements, ties })
}

impl GroebnerBasis {
    /// Assembles a basis from given elements without completing it. Meant
    /// for fault injection in validation suites.
    pub fn from_parts(order: WeightOrder, elements: Vec<Binomial>) -> Self {
        let ties = elements.iter().filter(|b| order.is_tie(b)).cloned().collect();
        GroebnerBasis { order, elements, ties }
    }

    pub fn order(&self) -> &WeightOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    /// No element of the reduced basis is a weight tie, i.e. the initial
    /// ideal of the cost vector alone is already monomial.
    pub fn is_generic(&self) -> bool {
        self.ties.is_empty()
    }

    pub fn ties(&self) -> &[Binomial] {
        &self.ties
    }

    pub fn normal_form(&self, m: &Monomial) -> (Monomial, Q) {
        let r = nf(m, &self.elements);
        let w = self.order.weight(&r);
        (r, w)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|g| g.lead.divides(m))
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars(), self.elements.iter().map(|b| b.lead.clone()).collect())
    }

    /// One reduction step at a chosen divisor; `None` when `m` is standard.
    pub fn reduce_step(&self, m: &Monomial, choice: usize) -> Option<Monomial> {
        let divisors: Vec<&Binomial> = self.elements.iter().filter(|g| g.lead.divides(m)).collect();
        let g = divisors.get(choice % divisors.len().max(1))?;
        Some(m.div(&g.lead).mul(&g.trail))
    }
}

/// Monomial ideal by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts the generators.
    pub fn new(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(graded_lex);
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort();
        minimal.reverse();
        MonomialIdeal { nvars, generators: minimal }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

/// All monomials of weight at most `bound`.
pub fn monomials_up_to(order: &WeightOrder, bound: &Q) -> Vec<Monomial> {
    let n = order.nvars();
    let limit = (bound * Q::from_integer(order.scale.clone())).floor().to_integer().to_i128().unwrap_or(i128::MAX);
    let mut out = Vec::new();
    let mut cur = Monomial::one(n);
    fn rec(i: usize, left: i128, cur: &mut Monomial, w: &[i128], out: &mut Vec<Monomial>) {
        if i == cur.0.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0u32;
        let mut left = left;
        loop {
            cur.0[i] = e;
            rec(i + 1, left, cur, w, out);
            left -= w[i];
            if left < 0 {
                break;
            }
            e += 1;
        }
        cur.0[i] = 0;
    }
    if limit >= 0 {
        rec(0, limit, &mut cur, &order.scaled, &mut out);
    }
    out
}

/// Outcome of matching standard monomials against the oracle ball.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StdmonReport {
    pub standard: usize,
    pub ball: usize,
    /// Group elements hit by two standard monomials.
    pub duplicates: Vec<(Element, Monomial, Monomial)>,
    /// Ball elements with no standard monomial.
    pub missing: Vec<Element>,
    /// Standard monomials whose weight differs from the oracle distance.
    pub weight_mismatches: Vec<(Monomial, Q, Option<Q>)>,
}

impl StdmonReport {
    pub fn is_bijection(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty() && self.standard == self.ball
    }

    pub fn weights_agree(&self) -> bool {
        self.weight_mismatches.is_empty()
    }
}

/// Compares the standard monomials of weight `<= bound` with the ball of
/// radius `bound` in `graph`, whose generator weights must be the order's costs.
pub fn check_standard_monomials(graph: &CayleyGraph, gb: &GroebnerBasis, bound: &Q) -> Result<StdmonReport, GroebnerError> {
    if graph.generators().len() != gb.nvars() {
        return Err(GroebnerError::DimensionMismatch { expected: gb.nvars(), got: graph.generators().len() });
    }
    let ball = graph.ball(bound)?;
    let mut report = StdmonReport { ball: ball.len(), ..Default::default() };
    let mut seen: HashMap<Element, Monomial> = HashMap::new();
    for m in monomials_up_to(gb.order(), bound).into_iter().filter(|m| gb.is_standard(m)) {
        report.standard += 1;
        let p = m.point(graph);
        let w = gb.order().weight(&m);
        let d = ball.origin_distance(&p).map(|s| graph.to_rational(s as i128));
        if d.as_ref() != Some(&w) {
            report.weight_mismatches.push((m.clone(), w, d));
        }
        if let Some(prev) = seen.insert(p.clone(), m.clone()) {
            report.duplicates.push((p, prev, m));
        }
    }
    let mut missing: Vec<Element> = ball.elements().into_iter().map(|(e, _)| e).filter(|e| !seen.contains_key(e)).collect();
    missing.sort();
    report.missing = missing;
    report.duplicates.sort();
    Ok(report)
}

/// Generator counts by index, for display.
pub fn exponent_map(m: &Monomial) -> BTreeMap<usize, u32> {
    m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::Generator;

    pub(crate) fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn bin(l: &[u32], t: &[u32]) -> Binomial {
        Binomial { lead: mono(l), trail: mono(t) }
    }

    fn sym(vectors: &[Vec<i64>]) -> GeneratorSet {
        GeneratorSet::symmetrized(vectors.iter().map(|v| Generator { vector: v.clone(), weight: Q::one() }).collect()).unwrap()
    }

    fn square() -> (GroupSpec, GeneratorSet) {
        (GroupSpec::free(2), sym(&[vec![1, 0], vec![0, 1]]))
    }

    fn line() -> (GroupSpec, GeneratorSet) {
        (GroupSpec::free(1), sym(&[vec![1], vec![8]]))
    }

    fn diagonals() -> (GroupSpec, GeneratorSet) {
        (GroupSpec::free(2), sym(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]))
    }

    fn graph_with(group: &GroupSpec, gens: &GeneratorSet, order: &WeightOrder) -> CayleyGraph {
        let g: Vec<Generator> = gens
            .generators()
            .iter()
            .zip(order.costs())
            .map(|(g, c)| Generator { vector: g.vector.clone(), weight: c.clone() })
            .collect();
        CayleyGraph::new(group.clone(), GeneratorSet::new(g, false).unwrap()).unwrap()
    }

    #[test]
    fn lattices() {
        let (g, s) = square();
        let l = cayley_lattice(&g, &s).unwrap();
        assert_eq!(l, IntMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]));
        let (g, s) = line();
        assert_eq!(cayley_lattice(&g, &s).unwrap().rows(), 3);
        let l = cayley_lattice(&GroupSpec::free(1), &sym(&[vec![1]])).unwrap();
        assert_eq!(l, IntMatrix::from_rows(&[vec![1, 1]]));
        let err = cayley_lattice(&GroupSpec::free(1), &sym(&[vec![2]])).unwrap_err();
        assert!(matches!(err, GroebnerError::Cayley(CayleyError::NotGenerating { .. })));
    }

    #[test]
    fn saturated_generators() {
        let (g, s) = square();
        let ideal = cayley_ideal(&g, &s).unwrap();
        let mut gens = ideal.generators.clone();
        gens.sort();
        assert_eq!(gens, vec![bin(&[0, 0, 1, 1], &[0, 0, 0, 0]), bin(&[1, 1, 0, 0], &[0, 0, 0, 0])]);
        let ideal = cayley_ideal(&GroupSpec::free(1), &sym(&[vec![1]])).unwrap();
        assert_eq!(ideal.generators, vec![bin(&[1, 1], &[0, 0])]);
    }

    #[test]
    fn saturation_is_needed_and_basis_independent() {
        // twisted cubic: the two quadrics from the basis miss x0 x3 - x1 x2
        let a = lattice_ideal_generators(&IntMatrix::from_rows(&[vec![1, -2, 1, 0], vec![0, 1, -2, 1]])).unwrap();
        let b = lattice_ideal_generators(&IntMatrix::from_rows(&[vec![1, -2, 1, 0], vec![1, -1, -1, 1]])).unwrap();
        assert_eq!(a.generators, b.generators);
        assert!(a.generators.contains(&bin(&[1, 0, 0, 1], &[0, 1, 1, 0])));
        assert_eq!(a.generators.len(), 3);
    }

    #[test]
    fn example_one_bases() {
        let (g, s) = square();
        let ideal = cayley_ideal(&g, &s).unwrap();
        let unit = WeightOrder::unit(4);
        let gb = buchberger(&ideal, &unit).unwrap();
        assert!(gb.is_generic());
        let pert = unit.perturbed(1000).unwrap();
        let gb = buchberger(&ideal, &pert).unwrap();
        assert!(gb.is_generic());
        assert_eq!(gb.elements().len(), 2);
        assert_eq!(gb.initial_ideal().generators(), &[mono(&[1, 1, 0, 0]), mono(&[0, 0, 1, 1])]);
        let (nfm, w) = gb.normal_form(&mono(&[1, 1, 1, 0]));
        assert_eq!(nfm, mono(&[0, 0, 1, 0]));
        assert_eq!(w, pert.costs()[2]);
        assert_eq!(gb.normal_form(&Monomial::one(4)), (Monomial::one(4), Q::zero()));
    }

    #[test]
    fn example_two_normal_form() {
        let (g, s) = line();
        let ideal = cayley_ideal(&g, &s).unwrap();
        let order = WeightOrder::unit(4).perturbed(1000).unwrap();
        let gb = buchberger(&ideal, &order).unwrap();
        assert!(gb.is_generic());
        let (m, w) = gb.normal_form(&mono(&[7, 0, 0, 0]));
        assert_eq!(m, mono(&[0, 1, 1, 0]));
        assert_eq!(w.floor(), Q::from_integer(2.into()));
        for b in gb.elements() {
            let graph = graph_with(&g, &s, &order);
            assert_eq!(b.lead.point(&graph), b.trail.point(&graph));
        }
    }

    #[test]
    fn example_four_is_not_generic() {
        let (g, s) = diagonals();
        let ideal = cayley_ideal(&g, &s).unwrap();
        let gb = buchberger(&ideal, &WeightOrder::unit(8)).unwrap();
        assert!(!gb.is_generic());
        // e1^2 - e3 e4, both of cost 2
        assert!(gb.ties().contains(&bin(&[2, 0, 0, 0, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 0, 1, 0])));
        let pert = buchberger(&ideal, &WeightOrder::unit(8).perturbed(1000).unwrap()).unwrap();
        assert!(pert.is_generic());
    }

    #[test]
    fn standard_monomials_match_the_ball() {
        for (g, s) in [square(), line(), diagonals()] {
            let ideal = cayley_ideal(&g, &s).unwrap();
            let order = WeightOrder::unit(s.len()).perturbed(1000).unwrap();
            let gb = buchberger(&ideal, &order).unwrap();
            let graph = graph_with(&g, &s, &order);
            let report = check_standard_monomials(&graph, &gb, &Q::from_integer(4.into())).unwrap();
            assert!(report.is_bijection(), "{report:?}");
            assert!(report.weights_agree());
        }
    }

    #[test]
    fn dropping_an_element_breaks_the_bijection() {
        let (g, s) = square();
        let order = WeightOrder::unit(4).perturbed(1000).unwrap();
        let gb = buchberger(&cayley_ideal(&g, &s).unwrap(), &order).unwrap();
        let broken = GroebnerBasis::from_parts(order.clone(), gb.elements()[1..].to_vec());
        let graph = graph_with(&g, &s, &order);
        let report = check_standard_monomials(&graph, &broken, &Q::from_integer(3.into())).unwrap();
        assert!(!report.is_bijection());
    }

    #[test]
    fn monomial_ideal_minimalizes() {
        let j = MonomialIdeal::new(2, vec![mono(&[1, 1]), mono(&[1, 0]), mono(&[2, 0])]);
        assert_eq!(j.generators(), &[mono(&[1, 0])]);
        assert!(j.contains(&mono(&[3, 2])));
        assert!(!j.contains(&mono(&[0, 5])));
        assert_eq!(j.to_string(), "<x0>");
    }

    #[test]
    fn weight_enumeration() {
        let order = WeightOrder::unit(2);
        assert_eq!(monomials_up_to(&order, &Q::from_integer(2.into())).len(), 6);
        assert_eq!(monomials_up_to(&order, &Q::new(1.into(), 2.into())).len(), 1);
    }
}
