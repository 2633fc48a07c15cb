//! Instance files, the boundary pipelines behind the command line, their
//! JSON reports and the validation suite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebraic::{
    enumerate_boundary, standard_pairs_with_budget, AlgebraicError, BoundaryEnumeration, StandardPair,
    DEFAULT_CANDIDATE_BUDGET,
};
use crate::cayley::{
    BallIndex, CayleyError, CayleyGraph, Element, Generator, GeneratorSet, Geodesic, GroupSpec, Q, DEFAULT_NODE_BUDGET,
};
use crate::geometric::{torsion_is_uniform, BoundaryPointGeo, GeometricBoundary, GeometricError};
use crate::groebner::{
    buchberger_with_budget, cayley_lattice, check_standard_monomials, lattice_ideal_generators_with_budget,
    monomials_up_to, GroebnerBasis, GroebnerError, LatticeIdeal, WeightOrder, DEFAULT_PAIR_BUDGET,
};
use crate::linalg::QuotientGroup;
use crate::polytope::{Face, Polytope};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid instance JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid instance: {0}")]
    Schema(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error(transparent)]
    Cayley(CayleyError),
    #[error(transparent)]
    Geometric(GeometricError),
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error(transparent)]
    Algebraic(AlgebraicError),
}

impl HarnessError {
    /// Process exit code: 3 for an inapplicable route, 4 for an exhausted budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Inapplicable(_) => 3,
            HarnessError::Geometric(GeometricError::NotApplicable(_) | GeometricError::OriginNotInterior) => 3,
            HarnessError::Cayley(e) | HarnessError::Groebner(GroebnerError::Cayley(e)) if is_budget(e) => 4,
            HarnessError::Groebner(GroebnerError::BudgetExceeded(_)) => 4,
            HarnessError::Algebraic(AlgebraicError::BudgetExceeded { .. }) => 4,
            _ => 1,
        }
    }
}

fn is_budget(e: &CayleyError) -> bool {
    matches!(e, CayleyError::BudgetExceeded { .. } | CayleyError::NodeBudgetExceeded(_))
}

impl From<CayleyError> for HarnessError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::NotGenerating { free_rank, torsion } => {
                HarnessError::Schema(format!("generator set does not generate the group, cokernel {}", group_name(free_rank, &torsion)))
            }
            e => HarnessError::Cayley(e),
        }
    }
}

impl From<GeometricError> for HarnessError {
    fn from(e: GeometricError) -> Self {
        HarnessError::Geometric(e)
    }
}

impl From<GroebnerError> for HarnessError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Cayley(c) => c.into(),
            e => HarnessError::Groebner(e),
        }
    }
}

impl From<AlgebraicError> for HarnessError {
    fn from(e: AlgebraicError) -> Self {
        HarnessError::Algebraic(e)
    }
}

/// `Z^r ⊕ Z/d1 ⊕ ...`, or `0` for the trivial group.
pub fn group_name(free_rank: usize, torsion: &[BigInt]) -> String {
    let mut parts: Vec<String> = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn quotient_name(q: &QuotientGroup) -> String {
    group_name(q.free_rank(), q.invariant_factors())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    schema: u32,
    group: GroupFile,
    generators: Vec<GeneratorFile>,
    #[serde(default)]
    symmetrize: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    directed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    rank: usize,
    #[serde(default)]
    relations: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    v: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<String>,
}

/// A group with weighted generators, as read from an instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub rank: usize,
    pub relations: Vec<Vec<i64>>,
    /// Generators as listed in the file.
    pub listed: Vec<Generator>,
    pub symmetrize: bool,
    pub directed: bool,
    pub group: GroupSpec,
    /// The generating set actually used (after symmetrization).
    pub generators: GeneratorSet,
}

/// Parses a weight written as an integer, a decimal or a fraction.
pub fn parse_weight(text: &str) -> Option<Q> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let (n, d): (BigInt, BigInt) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        return (!d.is_zero()).then(|| Q::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let f: BigInt = frac.parse().ok()?;
        let f = if negative { -f } else { f };
        return Some(Q::new(int * &scale + f, scale));
    }
    t.parse::<BigInt>().ok().map(Q::from_integer)
}

fn format_weight(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Instance {
    pub fn new(
        rank: usize,
        relations: Vec<Vec<i64>>,
        listed: Vec<Generator>,
        symmetrize: bool,
        directed: bool,
    ) -> Result<Self, HarnessError> {
        for (i, g) in listed.iter().enumerate() {
            if g.vector.len() != rank {
                return Err(HarnessError::Schema(format!(
                    "generators[{i}].v has length {}, group rank is {rank}",
                    g.vector.len()
                )));
            }
        }
        for (i, r) in relations.iter().enumerate() {
            if r.len() != rank {
                return Err(HarnessError::Schema(format!("group.relations[{i}] has length {}, group rank is {rank}", r.len())));
            }
        }
        if listed.is_empty() {
            return Err(HarnessError::Schema("generators: at least one generator is required".into()));
        }
        let group = GroupSpec::new(rank, &relations)?;
        let generators = if symmetrize {
            GeneratorSet::symmetrized(listed.clone())
        } else {
            GeneratorSet::new(listed.clone(), !directed)
        }
        .map_err(|e| match e {
            CayleyError::NotSymmetric(v) => HarnessError::Schema(format!(
                "generator set is not symmetric (missing the negative of {v:?}); set \"symmetrize\" or \"directed\""
            )),
            e => e.into(),
        })?;
        generators.check_generates(&group)?;
        Ok(Instance { rank, relations, listed, symmetrize, directed, group, generators })
    }

    /// Free group `Z^rank` with unit-weight generators, symmetrized.
    pub fn unit(rank: usize, vectors: &[Vec<i64>]) -> Result<Self, HarnessError> {
        let listed = vectors.iter().map(|v| Generator { vector: v.clone(), weight: Q::one() }).collect();
        Self::new(rank, vec![], listed, true, false)
    }

    pub fn graph(&self) -> CayleyGraph {
        CayleyGraph::new(self.group.clone(), self.generators.clone()).expect("validated at construction")
    }

    /// The Cayley graph with the same generators and the given costs.
    pub fn graph_with_costs(&self, costs: &[Q]) -> Result<CayleyGraph, HarnessError> {
        let gens = self
            .generators
            .generators()
            .iter()
            .zip(costs)
            .map(|(g, c)| Generator { vector: g.vector.clone(), weight: c.clone() })
            .collect();
        let symmetric = self.generators.is_symmetric() && costs.windows(2).all(|w| w[0] == w[1]);
        Ok(CayleyGraph::new(self.group.clone(), GeneratorSet::new(gens, symmetric)?)?)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            schema: SCHEMA,
            group: GroupFile { rank: self.rank, relations: self.relations.clone() },
            generators: self
                .listed
                .iter()
                .map(|g| GeneratorFile { v: g.vector.clone(), w: Some(format_weight(&g.weight)) })
                .collect(),
            symmetrize: self.symmetrize,
            directed: self.directed,
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

/// Parses and validates an instance. The second component lists notes
/// about defaults that were applied.
pub fn parse_instance(text: &str) -> Result<(Instance, Vec<String>), HarnessError> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| HarnessError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
    if file.schema != SCHEMA {
        return Err(HarnessError::Schema(format!("schema: expected {SCHEMA}, got {}", file.schema)));
    }
    let mut notes = Vec::new();
    let mut listed = Vec::new();
    for (i, g) in file.generators.into_iter().enumerate() {
        let weight = match &g.w {
            None => {
                notes.push(format!("generators[{i}].w missing, defaulting to 1"));
                Q::one()
            }
            Some(w) => parse_weight(w)
                .ok_or_else(|| HarnessError::Schema(format!("generators[{i}].w: cannot parse {w:?} as a rational")))?,
        };
        listed.push(Generator { vector: g.v, weight });
    }
    let inst = Instance::new(file.group.rank, file.group.relations, listed, file.symmetrize, file.directed)?;
    Ok((inst, notes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Geometric,
    Algebraic,
    Both,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Denominator `D` of the cost perturbation `ε = 1/D`; `None` keeps the costs.
    pub perturb: Option<u64>,
    /// Weight bound of the validation window.
    pub window: Q,
    /// Cap on free exponents and free coset coordinates when listing points.
    pub caps: u32,
    /// Node budget of oracle searches.
    pub node_budget: usize,
    /// Budget on S-pairs per completion.
    pub pair_budget: usize,
    pub candidate_budget: u64,
    /// Number of boundary-point pairs whose separation is checked against the oracle.
    pub corroborate: usize,
    /// Fault injection: drop this element from the Gröbner basis before validating.
    pub drop_basis_element: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            perturb: None,
            window: Q::from_integer(6.into()),
            caps: 2,
            node_budget: DEFAULT_NODE_BUDGET,
            pair_budget: DEFAULT_PAIR_BUDGET,
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            corroborate: 12,
            drop_basis_element: None,
        }
    }
}

// ---------------------------------------------------------------- reports

fn big_json(x: &BigInt) -> Value {
    x.to_i64().map(Value::from).unwrap_or_else(|| Value::from(x.to_string()))
}

fn q_str(q: &BigRational) -> String {
    format_weight(q)
}

fn int_vec(p: &crate::polytope::RationalPoint) -> Vec<i64> {
    p.0.iter().map(|x| x.to_integer().to_i64().expect("generators are integral")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub free_rank: usize,
    pub torsion: Vec<Value>,
    pub name: String,
}

impl QuotientReport {
    fn of(q: &QuotientGroup) -> Self {
        QuotientReport {
            free_rank: q.free_rank(),
            torsion: q.invariant_factors().iter().map(big_json).collect(),
            name: quotient_name(q),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeoPointReport {
    pub base: Vec<i64>,
    pub coset: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub node: String,
    pub face: FaceReport,
    pub generators_on_face: Vec<usize>,
    pub quotient: QuotientReport,
    pub points: Value,
    pub points_sampled: Vec<GeoPointReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetReport {
    pub normal: Vec<String>,
    pub offset: String,
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub schema: u32,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<FacetReport>,
    pub faces_by_dim: Vec<usize>,
    pub origin_interior: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricSection {
    pub orbit_count: usize,
    pub total_points: Value,
    pub torsion_uniform: bool,
    pub interior: QuotientReport,
    pub orbits: Vec<OrbitReport>,
    pub poset: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgPointReport {
    pub code: String,
    pub base: Vec<u32>,
    pub direction: Vec<usize>,
    pub base_point: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicSection {
    pub costs: Vec<String>,
    pub perturbation: Option<u64>,
    pub generic: bool,
    pub reliable: bool,
    pub ties: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub initial_ideal: Vec<String>,
    pub standard_pairs: Vec<String>,
    pub point_count: usize,
    pub points: Vec<AlgPointReport>,
    pub families: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconciliationRow {
    pub face: Vec<Vec<i64>>,
    pub orbit: String,
    pub orbit_size: Value,
    pub algebraic_points: usize,
    pub distinct_geometric_images: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Corroboration {
    pub first: String,
    pub second: String,
    pub function: String,
    pub predicted: String,
    pub observed: [String; 2],
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub schema: u32,
    pub route: Route,
    pub geometric: Option<GeometricSection>,
    pub algebraic: Option<AlgebraicSection>,
    pub reconciliation: Vec<ReconciliationRow>,
    pub corroborations: Vec<Corroboration>,
    pub discrepancies: Vec<String>,
    pub notes: Vec<String>,
}

impl BoundaryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn face_vectors(poly: &Polytope, face: &Face) -> Vec<Vec<i64>> {
    face.vertices.iter().map(|&v| int_vec(&poly.vertices()[v])).collect()
}

/// DOT node name of an orbit: its face's vertex list.
fn node_name(vertices: &[Vec<i64>]) -> String {
    let parts: Vec<String> = vertices
        .iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(","))
}

const INTERIOR_NODE: &str = "interior";

pub fn hull_report(inst: &Instance) -> Result<HullReport, HarnessError> {
    let points: Vec<_> = inst.generators.vectors().iter().map(|v| crate::polytope::RationalPoint::from_ints(v)).collect();
    let poly = crate::polytope::convex_hull(&points).map_err(GeometricError::from)?;
    Ok(HullReport {
        schema: SCHEMA,
        dim: poly.dim(),
        vertices: poly.vertices().iter().map(int_vec).collect(),
        facets: poly
            .facets()
            .iter()
            .map(|f| FacetReport {
                normal: f.normal.iter().map(q_str).collect(),
                offset: q_str(&f.offset),
                vertices: f.vertices.iter().map(|&v| int_vec(&poly.vertices()[v])).collect(),
            })
            .collect(),
        faces_by_dim: poly.face_lattice().count_by_dim(),
        origin_interior: poly.origin_is_interior(),
    })
}

pub fn geometric_section(geo: &GeometricBoundary, caps: u32) -> GeometricSection {
    let poly = geo.polytope();
    let lattice = geo.lattice();
    let names: Vec<String> = lattice.faces.iter().map(|f| node_name(&face_vectors(poly, f))).collect();
    let orbits = geo
        .orbits()
        .iter()
        .map(|o| {
            let face = &lattice.faces[o.face];
            OrbitReport {
                node: names[o.face].clone(),
                face: FaceReport { vertices: face_vectors(poly, face), dim: face.dim },
                generators_on_face: o.on_face.clone(),
                quotient: QuotientReport::of(&o.quotient),
                points: o.quotient.order().map(|n| big_json(&n)).unwrap_or_else(|| Value::from("infinite")),
                points_sampled: geo
                    .sample_points(o.face, caps)
                    .into_iter()
                    .map(|p| GeoPointReport { base: p.base, coset: p.coset.to_string() })
                    .collect(),
            }
        })
        .collect();
    let poset = geo
        .closure_covers()
        .into_iter()
        .map(|(a, b)| [a.map_or(INTERIOR_NODE.to_string(), |a| names[a].clone()), names[b].clone()])
        .collect();
    GeometricSection {
        orbit_count: geo.orbits().len(),
        total_points: geo.total_points().map(|n| big_json(&n)).unwrap_or_else(|| Value::from("infinite")),
        torsion_uniform: torsion_is_uniform(&geo.torsion_profile()),
        interior: QuotientReport::of(geo.interior_quotient()),
        orbits,
        poset,
    }
}

/// Everything the algebraic route computes.
#[derive(Clone, Debug)]
pub struct AlgebraicRun {
    pub order: WeightOrder,
    pub ideal: LatticeIdeal,
    pub basis: GroebnerBasis,
    pub pairs: Vec<StandardPair>,
    pub enumeration: BoundaryEnumeration,
}

pub fn weight_order(inst: &Instance, perturb: Option<u64>) -> Result<WeightOrder, HarnessError> {
    let order = WeightOrder::from_generators(&inst.generators)?;
    Ok(match perturb {
        Some(d) => order.perturbed(d)?,
        None => order,
    })
}

pub fn run_algebraic(inst: &Instance, opts: &Options) -> Result<AlgebraicRun, HarnessError> {
    let order = weight_order(inst, opts.perturb)?;
    let lattice = cayley_lattice(&inst.group, &inst.generators)?;
    let ideal = lattice_ideal_generators_with_budget(&lattice, opts.pair_budget)?;
    let basis = buchberger_with_budget(&ideal, &order, opts.pair_budget)?;
    let pairs = standard_pairs_with_budget(&basis.initial_ideal(), opts.candidate_budget)?;
    let enumeration = enumerate_boundary(&pairs, opts.caps);
    Ok(AlgebraicRun { order, ideal, basis, pairs, enumeration })
}

pub fn algebraic_section(run: &AlgebraicRun, graph: &CayleyGraph, perturb: Option<u64>) -> AlgebraicSection {
    let generic = run.basis.is_generic();
    AlgebraicSection {
        costs: run.order.costs().iter().map(q_str).collect(),
        perturbation: perturb,
        generic,
        reliable: generic,
        ties: run.basis.ties().iter().map(ToString::to_string).collect(),
        groebner_basis: run.basis.elements().iter().map(ToString::to_string).collect(),
        initial_ideal: run.basis.initial_ideal().generators().iter().map(ToString::to_string).collect(),
        standard_pairs: run.pairs.iter().map(ToString::to_string).collect(),
        point_count: run.enumeration.points.len(),
        points: run
            .enumeration
            .points
            .iter()
            .map(|p| AlgPointReport {
                code: p.to_string(),
                base: p.base.0.clone(),
                direction: p.direction.clone(),
                base_point: p.base_point(graph),
            })
            .collect(),
        families: run.enumeration.families.iter().map(ToString::to_string).collect(),
    }
}

/// Maps every listed algebraic point to its geometric point and compares
/// the counts face by face.
pub fn reconcile(geo: &GeometricBoundary, run: &AlgebraicRun, graph: &CayleyGraph) -> (Vec<ReconciliationRow>, Vec<String>) {
    let mut discrepancies = Vec::new();
    let mut by_face: BTreeMap<usize, (usize, BTreeSet<BoundaryPointGeo>)> = BTreeMap::new();
    let mut images: BTreeMap<(usize, crate::linalg::CosetLabel), String> = BTreeMap::new();
    for p in &run.enumeration.points {
        match geo.classify(&p.direction, &p.base_point(graph)) {
            Ok(g) => {
                let key = (g.face, g.coset.clone());
                if let Some(prev) = images.get(&key) {
                    discrepancies.push(format!("{prev} and {p} code the same geometric point"));
                } else {
                    images.insert(key, p.to_string());
                }
                let e = by_face.entry(g.face).or_default();
                e.0 += 1;
                e.1.insert(BoundaryPointGeo { base: vec![], ..g });
            }
            Err(err) => discrepancies.push(format!("{p}: {err}")),
        }
    }
    let poly = geo.polytope();
    let mut rows = Vec::new();
    for o in geo.orbits() {
        let (count, set) = by_face.remove(&o.face).unwrap_or_default();
        let size = o.quotient.order();
        let agrees = match &size {
            Some(n) => BigInt::from(count) == *n && BigInt::from(set.len()) == *n,
            None => count == set.len() && count > 0,
        };
        if !agrees {
            discrepancies.push(format!(
                "face {}: {} orbit points, {count} algebraic points with {} distinct images",
                node_name(&face_vectors(poly, &geo.lattice().faces[o.face])),
                size.as_ref().map_or("infinitely many".to_string(), ToString::to_string),
                set.len()
            ));
        }
        rows.push(ReconciliationRow {
            face: face_vectors(poly, &geo.lattice().faces[o.face]),
            orbit: quotient_name(&o.quotient),
            orbit_size: size.map(|n| big_json(&n)).unwrap_or_else(|| Value::from("infinite")),
            algebraic_points: count,
            distinct_geometric_images: set.len(),
            agrees,
        });
    }
    (rows, discrepancies)
}

/// A ball large enough to evaluate `phi_{y,z}` along the first
/// `horizon_blocks` blocks of every geodesic in `walks`.
pub fn oracle_ball<'g>(
    graph: &'g CayleyGraph,
    walks: &[&Geodesic],
    anchors: &[Element],
    horizon_blocks: usize,
    node_budget: usize,
) -> Result<BallIndex<'g>, CayleyError> {
    let mut radius = Q::zero();
    let far = Q::from_integer(1_000_000.into());
    for w in walks {
        let start = w.point(graph, 0);
        let steps = w.prefix.len() + horizon_blocks * w.block.len();
        let walk_len: u128 = w.steps(steps).iter().map(|&i| graph.step_weight(i)).sum();
        for a in anchors {
            let r = graph.distance(a, &start, &far)? + graph.to_rational(walk_len as i128);
            if r > radius {
                radius = r;
            }
        }
    }
    BallIndex::build(graph, &radius, node_budget)
}

/// Checks separation certificates for sampled pairs of distinct points on the oracle.
pub fn corroborate_geometric(
    geo: &GeometricBoundary,
    graph: &CayleyGraph,
    caps: u32,
    limit: usize,
    horizon_blocks: usize,
    node_budget: usize,
) -> Result<Vec<Corroboration>, HarnessError> {
    let mut sample: Vec<BoundaryPointGeo> = Vec::new();
    for o in geo.orbits() {
        sample.extend(geo.sample_points(o.face, caps.min(1)).into_iter().take(2));
    }
    let mut certs = Vec::new();
    'outer: for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            if certs.len() >= limit {
                break 'outer;
            }
            certs.push((i, j, geo.separation_certificate(&sample[i], &sample[j])?));
        }
    }
    let walks: Vec<&Geodesic> = certs.iter().flat_map(|(_, _, c)| [&c.geodesics.0, &c.geodesics.1]).collect();
    let anchors: Vec<Element> = certs.iter().flat_map(|(_, _, c)| [c.y.clone(), c.z.clone()]).collect();
    let ball = oracle_ball(graph, &walks, &anchors, horizon_blocks, node_budget)?;
    let mut out = Vec::new();
    for (i, j, c) in certs {
        let a = ball.estimate_valuation(&c.geodesics.0, &c.y, &c.z, horizon_blocks, None)?;
        let b = ball.estimate_valuation(&c.geodesics.1, &c.y, &c.z, horizon_blocks, None)?;
        let describe = |p: &BoundaryPointGeo| {
            format!("{} + {}", node_name(&face_vectors(geo.polytope(), &geo.lattice().faces[p.face])), p.coset)
        };
        let (hi, lo) = match c.larger {
            crate::geometric::Larger::First => ("first", "second"),
            crate::geometric::Larger::Second => ("second", "first"),
        };
        out.push(Corroboration {
            first: describe(&sample[i]),
            second: describe(&sample[j]),
            function: format!("phi_{{{:?},{:?}}}", c.y, c.z),
            predicted: format!("{hi} >= {}, {lo} <= {}", c.larger_at_least, c.smaller_at_most),
            observed: [q_str(&a.value), q_str(&b.value)],
            ok: a.stabilized && b.stabilized && c.accepts(&a.value, &b.value),
        });
    }
    Ok(out)
}

pub fn cmd_boundary(inst: &Instance, route: Route, opts: &Options) -> Result<BoundaryReport, HarnessError> {
    let graph = inst.graph();
    let mut report = BoundaryReport {
        schema: SCHEMA,
        route,
        geometric: None,
        algebraic: None,
        reconciliation: vec![],
        corroborations: vec![],
        discrepancies: vec![],
        notes: vec![],
    };
    let geo = match route {
        Route::Geometric | Route::Both => {
            let geo = GeometricBoundary::from_graph(&graph).map_err(|e| match e {
                GeometricError::NotApplicable(m) => HarnessError::Inapplicable(format!("geometric route: {m}")),
                GeometricError::OriginNotInterior => {
                    HarnessError::Inapplicable("geometric route: the origin is not interior to conv(S)".into())
                }
                e => e.into(),
            })?;
            report.geometric = Some(geometric_section(&geo, opts.caps));
            if !report.geometric.as_ref().unwrap().torsion_uniform {
                report.notes.push("orbit quotients of faces of equal dimension differ in torsion".into());
            }
            if opts.corroborate > 0 {
                let c = corroborate_geometric(&geo, &graph, opts.caps, opts.corroborate, 12, opts.node_budget)?;
                for x in c.iter().filter(|x| !x.ok) {
                    report.discrepancies.push(format!("separation of {} and {} not observed", x.first, x.second));
                }
                report.corroborations = c;
            }
            Some(geo)
        }
        Route::Algebraic => None,
    };
    if matches!(route, Route::Algebraic | Route::Both) {
        let run = run_algebraic(inst, opts)?;
        let section = algebraic_section(&run, &graph, opts.perturb);
        if !section.generic {
            report.notes.push(format!(
                "cost vector is not generic (ties: {}); distinct codes may name the same boundary point, counts are unreliable",
                section.ties.join(", ")
            ));
        }
        report.algebraic = Some(section);
        if let Some(geo) = &geo {
            let (rows, disc) = reconcile(geo, &run, &graph);
            report.reconciliation = rows;
            if run.basis.is_generic() {
                report.discrepancies.extend(disc);
            } else {
                report.notes.extend(disc.into_iter().map(|d| format!("expected without genericity: {d}")));
            }
        }
    }
    Ok(report)
}

/// Closure order of the geometric route as a DOT digraph.
pub fn export_dot(section: &GeometricSection) -> String {
    let mut out = String::from("digraph closure {\n");
    let _ = writeln!(out, "  \"{INTERIOR_NODE}\" [label=\"interior\\n{}\"];", section.interior.name);
    for o in &section.orbits {
        let _ = writeln!(out, "  \"{}\" [label=\"{}\\n{}\"];", o.node, o.node, o.quotient.name);
    }
    for [a, b] in &section.poset {
        let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
    }
    out.push_str("}\n");
    out
}

// ------------------------------------------------------------- validation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Budget,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub schema: u32,
    pub window: String,
    pub generic: bool,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn check<F>(name: &str, f: F) -> CheckResult
where
    F: FnOnce() -> Result<(bool, String), HarnessError>,
{
    match f() {
        Ok((ok, detail)) => CheckResult {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        },
        Err(e) if e.exit_code() == 4 => CheckResult { name: name.into(), status: CheckStatus::Budget, detail: e.to_string() },
        Err(HarnessError::Inapplicable(m)) => CheckResult { name: name.into(), status: CheckStatus::Skipped, detail: m },
        Err(e) => CheckResult { name: name.into(), status: CheckStatus::Fail, detail: e.to_string() },
    }
}

/// Deterministic pseudo-random stream for sampling triples.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Runs the invariant suites within a weight window.
pub fn cmd_validate(inst: &Instance, opts: &Options) -> Result<ValidationReport, HarnessError> {
    let mut checks = Vec::new();
    let run = run_algebraic(inst, opts)?;
    let mut basis = run.basis.clone();
    if let Some(k) = opts.drop_basis_element {
        let mut elements = basis.elements().to_vec();
        if k < elements.len() {
            elements.remove(k);
        }
        basis = GroebnerBasis::from_parts(run.order.clone(), elements);
    }
    let generic = basis.is_generic();
    let weighted = inst.graph_with_costs(run.order.costs())?;
    let window = opts.window.clone();

    let stdmon = check_standard_monomials(&weighted, &basis, &window);
    checks.push(check("standard monomials biject with the ball", || {
        let r = stdmon.clone()?;
        Ok((
            r.is_bijection(),
            format!(
                "{} standard monomials, {} ball elements, {} duplicates, {} missing",
                r.standard,
                r.ball,
                r.duplicates.len(),
                r.missing.len()
            ),
        ))
    }));
    checks.push(check("normal form weight equals oracle distance", || {
        let r = stdmon.clone()?;
        let graph = &weighted;
        let ball = graph.ball(&window)?;
        let mut bad = r.weight_mismatches.len();
        let mut seen = 0usize;
        for m in monomials_up_to(basis.order(), &window) {
            let (nf, w) = basis.normal_form(&m);
            let p = m.point(graph);
            let d = ball.origin_distance(&p).map(|s| graph.to_rational(s as i128));
            if nf.point(graph) != p || d.as_ref() != Some(&w) {
                bad += 1;
            }
            seen += 1;
        }
        Ok((bad == 0, format!("{seen} monomials reduced, {bad} mismatches")))
    }));

    let graph = inst.graph();
    checks.push(check("phi cocycle, antisymmetry and bound", || {
        let radius = &window * Q::from_integer(2.into());
        let ball = graph.ball(&radius)?;
        let inner = graph.ball(&(&window / Q::from_integer(2.into())))?;
        let pts: Vec<Element> = inner.elements().into_iter().map(|(e, _)| e).collect();
        let mut rng = SplitMix(0x5eed);
        let mut bad = 0;
        let trials = 1000;
        for _ in 0..trials {
            let (w, y, z, x) = (
                &pts[rng.below(pts.len())],
                &pts[rng.below(pts.len())],
                &pts[rng.below(pts.len())],
                &pts[rng.below(pts.len())],
            );
            let wy = ball.phi_scaled(w, y, x)?;
            let yz = ball.phi_scaled(y, z, x)?;
            let wz = ball.phi_scaled(w, z, x)?;
            let zy = ball.phi_scaled(z, y, x)?;
            let dyz = ball.scaled(y, z)? as i128;
            let dzy = ball.scaled(z, y)? as i128;
            if wy + yz != wz || yz != -zy || yz > dyz || yz < -dzy {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{trials} random triples, {bad} violations")))
    }));

    checks.push(check("phi monotone along standard-pair geodesics", || {
        let mut walks = Vec::new();
        for p in run.enumeration.points.iter().take(40) {
            walks.push(p.geodesic(&graph));
        }
        let horizon = 6;
        let refs: Vec<&Geodesic> = walks.iter().collect();
        let anchors: Vec<Element> = vec![vec![0; inst.rank], graph.canonicalize(&inst.generators.vectors()[0])?];
        let ball = oracle_ball(&graph, &refs, &anchors, horizon, opts.node_budget)?;
        let mut bad = 0;
        let mut not_geodesic = 0;
        for w in &walks {
            let steps = w.steps(horizon * w.block.len());
            if !ball.is_geodesic(&w.base, &steps)? {
                not_geodesic += 1;
                continue;
            }
            for y in &anchors {
                if ball.estimate_valuation(w, y, &anchors[0], horizon, Some(1)).is_err() {
                    bad += 1;
                }
            }
        }
        let ok = bad == 0 && (not_geodesic == 0 || !generic);
        Ok((ok, format!("{} walks, {not_geodesic} not geodesic for the instance costs, {bad} rises", walks.len())))
    }));

    checks.push(check("closure operator laws", || {
        let geo = GeometricBoundary::from_graph(&graph)
            .map_err(|e| HarnessError::Inapplicable(e.to_string()))?;
        let n = geo.lattice().len();
        let mut bad = 0;
        for f in 0..n {
            let cl = geo.closure_faces(Some(f));
            if !cl.contains(&f) {
                bad += 1;
            }
            for &g in &cl {
                if !geo.closure_faces(Some(g)).iter().all(|h| cl.contains(h)) {
                    bad += 1;
                }
            }
            for g in 0..n {
                let reversed = geo.lattice().leq(f, g) == geo.closure_faces(Some(g)).iter().all(|h| cl.contains(h));
                if !reversed {
                    bad += 1;
                }
            }
        }
        let counts: Vec<String> = geo
            .orbits()
            .iter()
            .map(|o| format!("{}:{}", node_name(&face_vectors(geo.polytope(), &geo.lattice().faces[o.face])), quotient_name(&o.quotient)))
            .collect();
        Ok((bad == 0, format!("{n} orbits, {bad} violations; {}", counts.join(" "))))
    }));

    checks.push(check("standard pairs cover exactly the standard monomials", || {
        let ideal = basis.initial_ideal();
        let mut bad = 0;
        let mut seen = 0;
        for m in monomials_up_to(basis.order(), &window) {
            seen += 1;
            let covered = run.pairs.iter().any(|p| p.covers(&m));
            if covered == ideal.contains(&m) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{seen} monomials, {} pairs, {bad} violations", run.pairs.len())))
    }));

    let passed = checks.iter().all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped));
    Ok(ValidationReport { schema: SCHEMA, window: q_str(&window), generic, checks, passed })
}

/// Oracle distance between two elements, as a reduced fraction string.
pub fn cmd_distance(inst: &Instance, x: &[i64], y: &[i64], budget: &Q) -> Result<Q, HarnessError> {
    Ok(inst.graph().distance(x, y, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{"schema":1,"group":{"rank":2,"relations":[]},"generators":[{"v":[1,0],"w":"1"},{"v":[0,1],"w":"1"}],"symmetrize":true}"#;
    const LINE: &str = r#"{"schema":1,"group":{"rank":1,"relations":[]},"generators":[{"v":[1]},{"v":[8]}],"symmetrize":true}"#;

    #[test]
    fn parse_example_one() {
        let (inst, notes) = parse_instance(SQUARE).unwrap();
        assert_eq!(inst.generators.len(), 4);
        assert!(inst.generators.has_equal_weights());
        assert!(notes.is_empty());
        let (_, notes) = parse_instance(LINE).unwrap();
        assert_eq!(notes.len(), 2);
    }

    #[test]
    fn round_trip() {
        for text in [SQUARE, LINE] {
            let (inst, _) = parse_instance(text).unwrap();
            let (again, notes) = parse_instance(&inst.to_json()).unwrap();
            assert_eq!(inst, again);
            assert!(notes.is_empty());
        }
    }

    #[test]
    fn parse_errors() {
        let bad = r#"{"schema":1,"group":{"rank":1},"generators":[{"v":[2]}],"symmetrize":true}"#;
        let err = parse_instance(bad).unwrap_err();
        assert!(err.to_string().contains("does not generate"), "{err}");
        assert!(err.to_string().contains("Z/2"), "{err}");
        let err = parse_instance(r#"{"schema":1,"group":{"rank":1},"generators":[{"w":"1"}]}"#).unwrap_err();
        assert!(matches!(err, HarnessError::Json { line: 1, .. }), "{err}");
        assert!(err.to_string().contains("`v`"));
        let err = parse_instance(r#"{"schema":1,"group":{"rank":2},"generators":[{"v":[1]}]}"#).unwrap_err();
        assert!(err.to_string().contains("generators[0].v"));
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("3/2"), Some(Q::new(3.into(), 2.into())));
        assert_eq!(parse_weight("1.25"), Some(Q::new(5.into(), 4.into())));
        assert_eq!(parse_weight("-0.5"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_weight("7"), Some(Q::from_integer(7.into())));
        assert_eq!(parse_weight("x"), None);
        assert_eq!(parse_weight("1/0"), None);
    }

    #[test]
    fn boundary_reports() {
        let (line, _) = parse_instance(LINE).unwrap();
        let r = cmd_boundary(&line, Route::Geometric, &Options::default()).unwrap();
        let g = r.geometric.as_ref().unwrap();
        assert_eq!(g.orbit_count, 2);
        assert_eq!(g.total_points, Value::from(16));
        assert!(r.discrepancies.is_empty(), "{:?}", r.discrepancies);
        assert!(!r.corroborations.is_empty());
        let dot = export_dot(g);
        assert_eq!(dot.matches("label=").count(), 3);

        let (square, _) = parse_instance(SQUARE).unwrap();
        let opts = Options { perturb: Some(1000), ..Options::default() };
        let r = cmd_boundary(&square, Route::Both, &opts).unwrap();
        assert!(r.discrepancies.is_empty(), "{:?}", r.discrepancies);
        assert!(r.reconciliation.iter().all(|row| row.agrees));
        assert_eq!(export_dot(r.geometric.as_ref().unwrap()).matches("label=").count(), 9);
        assert_eq!(r.to_json(), cmd_boundary(&square, Route::Both, &opts).unwrap().to_json());
    }

    #[test]
    fn weighted_instances_refuse_the_geometric_route() {
        let text = r#"{"schema":1,"group":{"rank":1},"generators":[{"v":[1],"w":"1"},{"v":[8],"w":"3"}],"symmetrize":true}"#;
        let (inst, _) = parse_instance(text).unwrap();
        let err = cmd_boundary(&inst, Route::Geometric, &Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(cmd_boundary(&inst, Route::Algebraic, &Options::default()).is_ok());
    }

    #[test]
    fn validation_and_fault_injection() {
        let (square, _) = parse_instance(SQUARE).unwrap();
        let opts = Options { window: Q::from_integer(4.into()), ..Options::default() };
        let r = cmd_validate(&square, &opts).unwrap();
        assert!(r.passed, "{}", r.to_json());
        let broken = Options { drop_basis_element: Some(0), ..opts };
        let r = cmd_validate(&square, &broken).unwrap();
        assert!(!r.passed);
        assert_eq!(r.checks[0].status, CheckStatus::Fail);
    }
}
