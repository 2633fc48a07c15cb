//! Exact rational convex hulls and face lattices.
//!
//! Facets are found by trying every hyperplane through `n` affinely
//! independent input points and keeping those with all points on one side.
//! That is quadratic-ish in the number of subsets, which is fine for the
//! handful of generators this crate is meant for.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("no points given")]
    Empty,
    #[error("point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("points are not full-dimensional: affine span has dimension {affine_dim} in R^{ambient}")]
    Degenerate { affine_dim: usize, ambient: usize },
    #[error("vertex set {0:?} is not a face of the polytope")]
    NotAFace(Vec<usize>),
    #[error("point lies outside the polytope")]
    Outside,
    #[error("point is not in the relative interior of the face")]
    NotInRelativeInterior,
    #[error("the origin is not an interior point of the polytope")]
    OriginNotInterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Q>);

impl RationalPoint {
    pub fn from_ints(v: &[i64]) -> Self {
        RationalPoint(v.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint(vec![Q::zero(); n])
    }

    pub fn sub(&self, other: &Self) -> Vec<Q> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// Mean of a nonempty list of points.
    pub fn average<'a>(points: impl IntoIterator<Item = &'a RationalPoint>) -> Option<RationalPoint> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut acc = first.0.clone();
        let mut count = 1u64;
        for p in it {
            for (a, b) in acc.iter_mut().zip(&p.0) {
                *a += b;
            }
            count += 1;
        }
        let c = Q::from_integer(BigInt::from(count));
        Some(RationalPoint(acc.into_iter().map(|a| a / &c).collect()))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(ToString::to_string).join(","))
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A linear functional `omega` with `omega(x) = 1` on a face and `< 1` on
/// the rest of the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportingFunctional {
    pub covector: Vec<Q>,
}

impl SupportingFunctional {
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.covector, x)
    }
}

/// Inequality `normal . x <= offset`, tight on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Q>,
    pub offset: Q,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RationalPoint>,
    facets: Vec<Facet>,
}

/// A nonempty face, identified by the sorted indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn contains_face(&self, other: &Face) -> bool {
        other.vertices.iter().all(|v| self.vertices.binary_search(v).is_ok())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary(Face),
}

/// Reduced row echelon form over Q; returns the pivot columns.
fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Basis of the right nullspace of the matrix with the given rows.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

fn affine_dim(points: &[&RationalPoint]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => rank(&rest.iter().map(|p| p.sub(first)).collect::<Vec<_>>()),
    }
}

/// Scales so the first nonzero entry has absolute value one.
fn normalize(v: Vec<Q>) -> Vec<Q> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            v.iter().map(|x| x / &s).collect()
        }
        None => v,
    }
}

pub fn convex_hull(points: &[RationalPoint]) -> Result<Polytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::Empty)?;
    let n = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != n) {
        return Err(PolytopeError::DimensionMismatch { expected: n, got: bad.dim() });
    }
    let distinct: Vec<RationalPoint> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let refs: Vec<&RationalPoint> = distinct.iter().collect();
    let ad = affine_dim(&refs);
    if ad < n || n == 0 {
        return Err(PolytopeError::Degenerate { affine_dim: ad, ambient: n });
    }

    // candidate hyperplanes (normal, offset) through n affinely independent points
    let mut hyperplanes: BTreeMap<Vec<Q>, (Vec<Q>, Q)> = BTreeMap::new();
    for subset in (0..distinct.len()).combinations(n) {
        let rows: Vec<Vec<Q>> = subset
            .iter()
            .map(|&i| {
                let mut r = distinct[i].0.clone();
                r.push(-Q::one());
                r
            })
            .collect();
        let ns = nullspace(&rows, n + 1);
        if ns.len() != 1 {
            continue;
        }
        let mut h = ns.into_iter().next().unwrap();
        let offset = h.pop().unwrap();
        let normal = h;
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let sides: Vec<Q> = distinct.iter().map(|p| dot(&normal, &p.0) - &offset).collect();
        let (normal, offset) = if sides.iter().all(|s| !s.is_positive()) {
            (normal, offset)
        } else if sides.iter().all(|s| !s.is_negative()) {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            continue;
        };
        let mut key = normal.clone();
        key.push(offset.clone());
        let key = normalize(key);
        hyperplanes.entry(key).or_insert((normal, offset));
    }

    let tight_at = |p: &RationalPoint| -> Vec<&Vec<Q>> {
        hyperplanes.values().filter(|(a, b)| dot(a, &p.0) == *b).map(|(a, _)| a).collect()
    };
    let vertices: Vec<RationalPoint> = distinct
        .iter()
        .filter(|p| rank(&tight_at(p).into_iter().cloned().collect::<Vec<_>>()) == n)
        .cloned()
        .collect();

    let mut facets: Vec<Facet> = hyperplanes
        .into_values()
        .map(|(normal, offset)| {
            let vs = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| dot(&normal, &v.0) == offset)
                .map(|(i, _)| i)
                .collect();
            Facet { normal, offset, vertices: vs }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(Polytope { dim: n, vertices, facets })
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_index(&self, p: &RationalPoint) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    fn check_dim(&self, x: &RationalPoint) -> Result<(), PolytopeError> {
        if x.dim() != self.dim {
            return Err(PolytopeError::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        Ok(())
    }

    fn make_face(&self, vertices: Vec<usize>) -> Face {
        let pts: Vec<&RationalPoint> = vertices.iter().map(|&i| &self.vertices[i]).collect();
        let dim = affine_dim(&pts);
        Face { vertices, dim }
    }

    /// Facets whose hyperplane contains every vertex of `face`.
    fn facets_containing<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Facet> + 'a {
        self.facets
            .iter()
            .filter(move |f| face.vertices.iter().all(|v| f.vertices.binary_search(v).is_ok()))
    }

    /// Looks up the face with exactly these vertices.
    pub fn face(&self, vertices: &[usize]) -> Result<Face, PolytopeError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() || vs.iter().any(|&v| v >= self.vertices.len()) {
            return Err(PolytopeError::NotAFace(vs));
        }
        let candidate = Face { vertices: vs.clone(), dim: 0 };
        let mut closure: Option<BTreeSet<usize>> = None;
        for f in self.facets_containing(&candidate) {
            let s: BTreeSet<usize> = f.vertices.iter().copied().collect();
            closure = Some(match closure {
                None => s,
                Some(c) => c.intersection(&s).copied().collect(),
            });
        }
        match closure {
            Some(c) if c.iter().copied().eq(vs.iter().copied()) => Ok(self.make_face(vs)),
            _ => Err(PolytopeError::NotAFace(vs)),
        }
    }

    pub fn face_of_points(&self, points: &[RationalPoint]) -> Result<Face, PolytopeError> {
        let idx: Option<Vec<usize>> = points.iter().map(|p| self.vertex_index(p)).collect();
        self.face(&idx.ok_or(PolytopeError::NotAFace(vec![]))?)
    }

    /// Inequality `a . x <= b` with equality on `P` exactly along `face`: the
    /// sum of the facet inequalities containing it.
    pub fn face_inequality(&self, face: &Face) -> (Vec<Q>, Q) {
        let mut a = vec![Q::zero(); self.dim];
        let mut b = Q::zero();
        for f in self.facets_containing(face) {
            // scale each facet so it contributes equally regardless of normalization
            let s = if f.offset.is_zero() { Q::one() } else { f.offset.abs().recip() };
            for (ai, ni) in a.iter_mut().zip(&f.normal) {
                *ai += ni * &s;
            }
            b += &f.offset * &s;
        }
        (a, b)
    }

    pub fn supporting_functional(&self, face: &Face) -> Result<SupportingFunctional, PolytopeError> {
        if !self.origin_is_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        let face = self.face(&face.vertices)?;
        let (a, b) = self.face_inequality(&face);
        Ok(SupportingFunctional { covector: a.into_iter().map(|x| x / &b).collect() })
    }

    pub fn locate(&self, x: &RationalPoint) -> Result<Location, PolytopeError> {
        self.check_dim(x)?;
        let mut tight: Option<BTreeSet<usize>> = None;
        for f in &self.facets {
            let v = dot(&f.normal, &x.0);
            if v > f.offset {
                return Err(PolytopeError::Outside);
            }
            if v == f.offset {
                let s: BTreeSet<usize> = f.vertices.iter().copied().collect();
                tight = Some(match tight {
                    None => s,
                    Some(t) => t.intersection(&s).copied().collect(),
                });
            }
        }
        Ok(match tight {
            None => Location::Interior,
            Some(t) => Location::Boundary(self.make_face(t.into_iter().collect())),
        })
    }

    /// Smallest face whose relative interior contains `x`, or `Interior`.
    pub fn smallest_face_containing(&self, x: &RationalPoint) -> Result<Location, PolytopeError> {
        self.locate(x)
    }

    /// Coefficients `c_i > 0` summing to one, one per vertex of `face` (all of
    /// `P` when `None`), with `sum c_i v_i = x`.
    ///
    /// For every vertex `v` the ray from `v` through `x` leaves the face at a
    /// point `y` of a smaller face; writing `x` between `v` and `y` and
    /// recursing gives a combination that is positive on `v`. The average of
    /// these over all vertices is positive everywhere.
    pub fn positive_combination(&self, face: Option<&Face>, x: &RationalPoint) -> Result<Vec<Q>, PolytopeError> {
        let location = self.locate(x)?;
        let target: Vec<usize> = match face {
            None => {
                if location != Location::Interior {
                    return Err(PolytopeError::NotInRelativeInterior);
                }
                (0..self.vertices.len()).collect()
            }
            Some(f) => {
                if location != Location::Boundary(self.face(&f.vertices)?) {
                    return Err(PolytopeError::NotInRelativeInterior);
                }
                f.vertices.clone()
            }
        };
        let by_vertex = self.combination_over(&target, x);
        Ok(target.iter().map(|v| by_vertex[v].clone()).collect())
    }

    fn combination_over(&self, target: &[usize], x: &RationalPoint) -> BTreeMap<usize, Q> {
        let mut total: BTreeMap<usize, Q> = target.iter().map(|&v| (v, Q::zero())).collect();
        if let [only] = target {
            total.insert(*only, Q::one());
            return total;
        }
        let share = Q::from_integer(BigInt::from(target.len())).recip();
        for &v in target {
            let origin = &self.vertices[v];
            let dir = x.sub(origin);
            let lambda = self
                .facets
                .iter()
                .filter_map(|f| {
                    let rate = dot(&f.normal, &dir);
                    rate.is_positive().then(|| (&f.offset - dot(&f.normal, &origin.0)) / rate)
                })
                .min()
                .expect("ray from a vertex through a relative interior point must leave the polytope");
            let y = RationalPoint(origin.0.iter().zip(&dir).map(|(o, d)| o + d * &lambda).collect());
            let sub = match self.locate(&y).expect("exit point lies on the boundary") {
                Location::Boundary(f) => f,
                Location::Interior => unreachable!("exit point of a ray is never interior"),
            };
            let t = lambda.recip();
            *total.get_mut(&v).unwrap() += (Q::one() - &t) * &share;
            for (w, c) in self.combination_over(&sub.vertices, &y) {
                *total.entry(w).or_insert_with(Q::zero) += c * &t * &share;
            }
        }
        total
    }

    pub fn face_lattice(&self) -> FaceLattice {
        let mut sets: BTreeSet<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
        let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for f in &self.facets {
                let inter: Vec<usize> = s.iter().copied().filter(|v| f.vertices.binary_search(v).is_ok()).collect();
                if !inter.is_empty() && sets.insert(inter.clone()) {
                    frontier.push(inter);
                }
            }
        }
        let mut faces: Vec<Face> = sets.into_iter().map(|s| self.make_face(s)).collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        let mut covers = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for (j, b) in faces.iter().enumerate() {
                if b.dim == a.dim + 1 && b.contains_face(a) {
                    covers.push((i, j));
                }
            }
        }
        FaceLattice { faces, covers }
    }
}

/// Points of `points` lying on `face`, i.e. where its supporting functional
/// equals one. This can be more than the face's vertices.
pub fn s_points_on_face(polytope: &Polytope, face: &Face, points: &[RationalPoint]) -> Vec<usize> {
    let (a, b) = polytope.face_inequality(face);
    points.iter().enumerate().filter(|(_, p)| dot(&a, &p.0) == b).map(|(i, _)| i).collect()
}

/// Proper nonempty faces ordered by dimension then vertex list; the empty
/// face and `P` itself are the implicit bottom and top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// `(i, j)`: face `i` is a facet of face `j`.
    pub covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.faces.iter().position(|f| f.vertices == face.vertices)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.faces[j].contains_face(&self.faces[i])
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let max = self.faces.iter().map(|f| f.dim).max().map_or(0, |d| d + 1);
        let mut out = vec![0; max];
        for f in &self.faces {
            out[f.dim] += 1;
        }
        out
    }
}
