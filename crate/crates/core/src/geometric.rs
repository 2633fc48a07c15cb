//! Boundary of the Cayley compactification of `Z^n` with unit-weight
//! generators, read off the polytope `P = conv(S)`.
//!
//! Every proper face `F` of `P` carries one orbit of boundary points, and
//! those points are the cosets of `H_F`, the subgroup generated by the
//! generators lying on `F`. A geodesic is classified by the face whose
//! relative interior holds the average of its direction, and by the coset of
//! its base. The closure of the orbit of `F` is the union of the orbits of
//! the faces containing `F`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cayley::{CayleyGraph, Element, Geodesic};
use crate::linalg::{quotient, CosetLabel, IntMatrix, QuotientGroup};
use crate::polytope::{convex_hull, s_points_on_face, FaceLattice, Location, Polytope, PolytopeError, RationalPoint, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometricError {
    #[error("geometric route not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("the generators do not positively span: the origin is not interior to conv(S)")]
    OriginNotInterior,
    #[error("direction averages to an interior point of conv(S): not a geodesic direction")]
    NotGeodesicDirection,
    #[error("empty direction")]
    EmptyDirection,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("face {to} does not contain face {from}")]
    NotContained { from: usize, to: usize },
    #[error("the two boundary points are equal")]
    PointsEqual,
    #[error("base has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// One orbit of the `Z^n` action: a proper face with its quotient `Z^n / H_F`.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Index into the face lattice.
    pub face: usize,
    /// Generators lying on the face (indices into the generator list).
    pub on_face: Vec<usize>,
    pub quotient: QuotientGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPointGeo {
    pub face: usize,
    pub coset: CosetLabel,
    /// Some base point of a geodesic representing this boundary point.
    pub base: Element,
}

/// Which of the two compared points takes the larger value on the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Larger {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationKind {
    /// `vertex` lies on the face of the larger point only.
    DifferentFaces { vertex: usize },
    /// Same face; the supporting functional differs on the two bases.
    SameFaceShifted,
    /// Same face and same functional value; bases in different cosets.
    SameFaceLevel,
}

/// A function `phi_{y,z}` whose limits differ along the two points, with the
/// predicted bounds on those limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub y: Element,
    pub z: Element,
    pub kind: SeparationKind,
    pub larger: Larger,
    pub larger_at_least: i64,
    pub smaller_at_most: i64,
    /// Geodesics along which the predictions hold (first point, second point).
    pub geodesics: (Geodesic, Geodesic),
}

impl SeparationCertificate {
    /// Whether observed limits (first point, second point) agree with the prediction.
    pub fn accepts(&self, first: &Q, second: &Q) -> bool {
        let (hi, lo) = match self.larger {
            Larger::First => (first, second),
            Larger::Second => (second, first),
        };
        *hi >= Q::from_integer(self.larger_at_least.into()) && *lo <= Q::from_integer(self.smaller_at_most.into()) && hi > lo
    }
}

#[derive(Clone, Debug)]
pub struct GeometricBoundary {
    rank: usize,
    generators: Vec<Vec<i64>>,
    points: Vec<RationalPoint>,
    polytope: Polytope,
    lattice: FaceLattice,
    orbits: Vec<Orbit>,
    interior: QuotientGroup,
}

impl GeometricBoundary {
    /// Builds the orbit structure for `Z^n` with generators `vectors`
    /// (all of equal weight).
    pub fn new(rank: usize, vectors: &[Vec<i64>]) -> Result<Self, GeometricError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != rank) {
            return Err(GeometricError::DimensionMismatch { expected: rank, got: v.len() });
        }
        let points: Vec<RationalPoint> = vectors.iter().map(|v| RationalPoint::from_ints(v)).collect();
        let polytope = convex_hull(&points)?;
        if !polytope.origin_is_interior() {
            return Err(GeometricError::OriginNotInterior);
        }
        let lattice = polytope.face_lattice();
        let orbits = lattice
            .faces
            .iter()
            .enumerate()
            .map(|(i, face)| {
                let on_face = s_points_on_face(&polytope, face, &points);
                let cols: Vec<Vec<i64>> = on_face.iter().map(|&j| vectors[j].clone()).collect();
                let quotient = quotient(rank, &IntMatrix::from_columns(rank, &cols)).expect("columns have the ambient rank");
                Orbit { face: i, on_face, quotient }
            })
            .collect();
        let interior = quotient(rank, &IntMatrix::zeros(rank, 0)).expect("empty sublattice");
        Ok(GeometricBoundary { rank, generators: vectors.to_vec(), points, polytope, lattice, orbits, interior })
    }

    /// Applicability checks for a full Cayley graph: free group, equal weights.
    pub fn from_graph(graph: &CayleyGraph) -> Result<Self, GeometricError> {
        if !graph.group().is_free() {
            return Err(GeometricError::NotApplicable("the group has relations; use the algebraic route".into()));
        }
        if !graph.generators().has_equal_weights() {
            return Err(GeometricError::NotApplicable("generator weights differ; use the algebraic route".into()));
        }
        Self::new(graph.rank(), &graph.generators().vectors())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// `O_∅`: the group itself.
    pub fn interior_quotient(&self) -> &QuotientGroup {
        &self.interior
    }

    pub fn face_vertices(&self, face: usize) -> Vec<&RationalPoint> {
        self.lattice.faces[face].vertices.iter().map(|&v| &self.polytope.vertices()[v]).collect()
    }

    /// Generator indices of the vertices of `face`.
    pub fn face_generators(&self, face: usize) -> Vec<usize> {
        self.face_vertices(face)
            .into_iter()
            .map(|v| self.points.iter().position(|p| p == v).expect("vertices are generators"))
            .collect()
    }

    pub fn face_index_of_generators(&self, gens: &[usize]) -> Result<usize, GeometricError> {
        let pts: Vec<RationalPoint> = gens
            .iter()
            .map(|&g| self.points.get(g).cloned().ok_or(GeometricError::BadGenerator(g)))
            .collect::<Result<_, _>>()?;
        let face = self.polytope.face_of_points(&pts)?;
        Ok(self.lattice.index_of(&face).expect("every face is in the lattice"))
    }

    fn label(&self, face: usize, base: &[i64]) -> Result<CosetLabel, GeometricError> {
        self.orbits[face]
            .quotient
            .coset_label_i64(base)
            .map_err(|_| GeometricError::DimensionMismatch { expected: self.rank, got: base.len() })
    }

    fn point_on(&self, face: usize, base: &[i64]) -> Result<BoundaryPointGeo, GeometricError> {
        Ok(BoundaryPointGeo { face, coset: self.label(face, base)?, base: base.to_vec() })
    }

    /// Boundary point of a geodesic whose direction is the multiset
    /// `direction` (generator indices, repetitions allowed) based at `base`.
    pub fn classify(&self, direction: &[usize], base: &[i64]) -> Result<BoundaryPointGeo, GeometricError> {
        if direction.is_empty() {
            return Err(GeometricError::EmptyDirection);
        }
        if base.len() != self.rank {
            return Err(GeometricError::DimensionMismatch { expected: self.rank, got: base.len() });
        }
        let pts: Vec<&RationalPoint> = direction
            .iter()
            .map(|&g| self.points.get(g).ok_or(GeometricError::BadGenerator(g)))
            .collect::<Result<_, _>>()?;
        let avg = RationalPoint::average(pts).expect("nonempty");
        match self.polytope.smallest_face_containing(&avg)? {
            Location::Interior => Err(GeometricError::NotGeodesicDirection),
            Location::Boundary(face) => {
                let idx = self.lattice.index_of(&face).expect("every face is in the lattice");
                self.point_on(idx, base)
            }
        }
    }

    /// Classifies `base + prefix + block^∞` (the base is taken after the prefix).
    pub fn classify_geodesic(&self, graph: &CayleyGraph, gamma: &Geodesic) -> Result<BoundaryPointGeo, GeometricError> {
        let base = gamma.point(graph, gamma.prefix.len());
        self.classify(&gamma.block, &base)
    }

    pub fn points_equal(&self, p: &BoundaryPointGeo, q: &BoundaryPointGeo) -> bool {
        p.face == q.face && p.coset == q.coset
    }

    /// Faces `G ⊇ F`; every proper face when `face` is `None` (the interior orbit).
    pub fn closure_faces(&self, face: Option<usize>) -> Vec<usize> {
        match face {
            None => (0..self.lattice.len()).collect(),
            Some(f) => (0..self.lattice.len()).filter(|&g| self.lattice.leq(f, g)).collect(),
        }
    }

    /// Covering relation of the closure order on orbits: `(None, Some(v))` for
    /// the interior orbit below each vertex orbit, then the face lattice covers.
    pub fn closure_covers(&self) -> Vec<(Option<usize>, usize)> {
        let mut out: Vec<(Option<usize>, usize)> = self
            .lattice
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dim == 0)
            .map(|(i, _)| (None, i))
            .collect();
        out.extend(self.lattice.covers.iter().map(|&(a, b)| (Some(a), b)));
        out
    }

    /// Keeps the base and enlarges the face `G ⊆ F`.
    pub fn natural_map(&self, p: &BoundaryPointGeo, target: usize) -> Result<BoundaryPointGeo, GeometricError> {
        if target >= self.lattice.len() || !self.lattice.leq(p.face, target) {
            return Err(GeometricError::NotContained { from: p.face, to: target });
        }
        self.point_on(target, &p.base)
    }

    /// The canonical geodesic of a point: its base followed by the vertices
    /// of its face, repeated.
    pub fn canonical_geodesic(&self, p: &BoundaryPointGeo) -> Geodesic {
        Geodesic::new(p.base.clone(), self.face_generators(p.face))
    }

    /// One point per coset, free coordinates limited to `[-cap, cap]`.
    pub fn sample_points(&self, face: usize, cap: u32) -> Vec<BoundaryPointGeo> {
        let q = &self.orbits[face].quotient;
        q.sample_labels(cap)
            .into_iter()
            .map(|label| {
                let base: Element = q.representative(&label).iter().map(|x| x.to_i64().expect("small representative")).collect();
                BoundaryPointGeo { face, coset: label, base }
            })
            .collect()
    }

    /// Number of boundary points, `None` if some orbit is infinite.
    pub fn total_points(&self) -> Option<BigInt> {
        self.orbits.iter().map(|o| o.quotient.order()).sum()
    }

    fn omega(&self, face: usize) -> crate::polytope::SupportingFunctional {
        self.polytope
            .supporting_functional(&self.lattice.faces[face])
            .expect("origin is interior")
    }

    /// A function separating two distinct boundary points.
    pub fn separation_certificate(&self, p: &BoundaryPointGeo, q: &BoundaryPointGeo) -> Result<SeparationCertificate, GeometricError> {
        if self.points_equal(p, q) {
            return Err(GeometricError::PointsEqual);
        }
        if p.face != q.face {
            let only_in = |a: usize, b: usize| {
                let fb = &self.lattice.faces[b];
                self.lattice.faces[a].vertices.iter().copied().find(|v| fb.vertices.binary_search(v).is_err())
            };
            // phi_{eta_0, eta_0 + v}: equals 1 along the face holding v, < 1 on the other
            let (larger, vertex, other) = match only_in(p.face, q.face) {
                Some(v) => (Larger::First, v, q),
                None => (Larger::Second, only_in(q.face, p.face).expect("distinct faces"), p),
            };
            let gen = self.points.iter().position(|s| *s == self.polytope.vertices()[vertex]).expect("vertex is a generator");
            let y = other.base.clone();
            let z: Element = y.iter().zip(&self.generators[gen]).map(|(a, b)| a + b).collect();
            return Ok(SeparationCertificate {
                y,
                z,
                kind: SeparationKind::DifferentFaces { vertex: gen },
                larger,
                larger_at_least: 1,
                smaller_at_most: 0,
                geodesics: (self.canonical_geodesic(p), self.canonical_geodesic(q)),
            });
        }

        // same face: move the lower base forward until the functional values
        // differ by less than one, then compare with phi_{upper, lower}
        let omega = self.omega(p.face);
        let value = |b: &[i64]| omega.eval(&RationalPoint::from_ints(b).0);
        let (wp, wq) = (value(&p.base), value(&q.base));
        let (low, high, larger) = if wp <= wq { (p, q, Larger::First) } else { (q, p, Larger::Second) };
        let gap = (value(&high.base) - value(&low.base)).floor().to_integer().to_usize().expect("small gap");
        let lead = self.face_generators(p.face)[0];
        let mut low_geo = self.canonical_geodesic(low);
        low_geo.prefix = vec![lead; gap];
        let shifted: Element = low.base.iter().zip(&self.generators[lead]).map(|(b, s)| b + s * gap as i64).collect();
        let strict = value(&high.base) > value(&shifted);
        let high_geo = self.canonical_geodesic(high);
        let geodesics = match larger {
            Larger::First => (low_geo, high_geo),
            Larger::Second => (high_geo, low_geo),
        };
        Ok(SeparationCertificate {
            y: high.base.clone(),
            z: shifted,
            kind: if strict { SeparationKind::SameFaceShifted } else { SeparationKind::SameFaceLevel },
            larger,
            larger_at_least: 0,
            smaller_at_most: if strict { -1 } else { 0 },
            geodesics,
        })
    }

    /// Faces whose quotient has a different number of torsion cosets than
    /// the others of the same dimension. Useful to spot irregular boundaries.
    pub fn torsion_profile(&self) -> Vec<(usize, BigInt)> {
        self.orbits
            .iter()
            .map(|o| (self.lattice.faces[o.face].dim, o.quotient.invariant_factors().iter().product::<BigInt>()))
            .collect()
    }
}

/// Whether all torsion orders of faces of each dimension agree.
pub fn torsion_is_uniform(profile: &[(usize, BigInt)]) -> bool {
    profile.iter().all(|(d, t)| profile.iter().filter(|(e, _)| e == d).all(|(_, u)| u == t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{GeneratorSet, GroupSpec};
    use num_traits::One;

    fn square() -> GeometricBoundary {
        GeometricBoundary::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap()
    }

    fn line() -> GeometricBoundary {
        GeometricBoundary::new(1, &[vec![1], vec![-1], vec![8], vec![-8]]).unwrap()
    }

    fn hexagon() -> GeometricBoundary {
        GeometricBoundary::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![2, 2], vec![-2, -2]]).unwrap()
    }

    #[test]
    fn orbits_of_example_one() {
        let g = square();
        assert_eq!(g.orbits().len(), 8);
        for o in g.orbits() {
            let dim = g.lattice().faces[o.face].dim;
            if dim == 0 {
                assert_eq!(o.quotient.free_rank(), 1);
                assert!(o.quotient.invariant_factors().is_empty());
            } else {
                assert!(o.quotient.is_trivial());
            }
        }
        assert_eq!(g.interior_quotient().free_rank(), 2);
    }

    #[test]
    fn orbits_of_example_two() {
        let g = line();
        assert_eq!(g.orbits().len(), 2);
        for o in g.orbits() {
            assert_eq!(o.quotient.order(), Some(BigInt::from(8)));
        }
        assert_eq!(g.total_points(), Some(BigInt::from(16)));
    }

    #[test]
    fn orbits_of_example_three() {
        let g = hexagon();
        assert_eq!(g.orbits().len(), 12);
        let v22 = g.face_index_of_generators(&[4]).unwrap();
        let q = &g.orbits()[v22].quotient;
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.invariant_factors(), &[BigInt::from(2)]);
        let e = g.face_index_of_generators(&[4, 2]).unwrap();
        assert_eq!(g.orbits()[e].quotient.order(), Some(BigInt::from(2)));
        let e = g.face_index_of_generators(&[0, 3]).unwrap();
        assert!(g.orbits()[e].quotient.is_trivial());
        assert!(!torsion_is_uniform(&g.torsion_profile()));
        assert!(torsion_is_uniform(&square().torsion_profile()));
    }

    #[test]
    fn origin_must_be_interior() {
        let err = GeometricBoundary::new(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GeometricError::OriginNotInterior);
    }

    #[test]
    fn weighted_graphs_are_not_applicable() {
        let gens = vec![
            crate::cayley::Generator { vector: vec![1], weight: Q::one() },
            crate::cayley::Generator { vector: vec![-1], weight: Q::one() },
            crate::cayley::Generator { vector: vec![8], weight: Q::from_integer(3.into()) },
            crate::cayley::Generator { vector: vec![-8], weight: Q::from_integer(3.into()) },
        ];
        let graph = CayleyGraph::new(GroupSpec::free(1), GeneratorSet::new(gens, true).unwrap()).unwrap();
        assert!(matches!(GeometricBoundary::from_graph(&graph), Err(GeometricError::NotApplicable(_))));
    }

    #[test]
    fn classify_examples() {
        let g = square();
        let edge = g.face_index_of_generators(&[0, 2]).unwrap();
        let p = g.classify(&[0, 2, 2, 0, 0], &[0, 0]).unwrap();
        assert_eq!(p.face, edge);
        assert!(p.coset.is_identity());
        let q = g.classify(&[0, 2], &[5, -7]).unwrap();
        assert!(g.points_equal(&p, &q));

        let vert = g.face_index_of_generators(&[2]).unwrap();
        let a = g.classify(&[2], &[3, 0]).unwrap();
        let b = g.classify(&[2], &[3, 9]).unwrap();
        let c = g.classify(&[2], &[4, 0]).unwrap();
        assert_eq!(a.face, vert);
        assert!(g.points_equal(&a, &b));
        assert!(!g.points_equal(&a, &c));

        assert_eq!(g.classify(&[0, 1], &[0, 0]), Err(GeometricError::NotGeodesicDirection));
    }

    #[test]
    fn equality_examples() {
        let g2 = line();
        let p3 = g2.classify(&[2], &[3]).unwrap();
        let p11 = g2.classify(&[2], &[11]).unwrap();
        let p4 = g2.classify(&[2], &[4]).unwrap();
        assert!(g2.points_equal(&p3, &p11));
        assert!(!g2.points_equal(&p3, &p4));

        let g3 = hexagon();
        let a = g3.classify(&[4], &[0, 0]).unwrap();
        let b = g3.classify(&[4], &[1, 1]).unwrap();
        assert!(!g3.points_equal(&a, &b));
    }

    #[test]
    fn closure_examples() {
        let g = square();
        let v = g.face_index_of_generators(&[0]).unwrap();
        let mut expected = vec![
            v,
            g.face_index_of_generators(&[0, 2]).unwrap(),
            g.face_index_of_generators(&[0, 3]).unwrap(),
        ];
        expected.sort();
        assert_eq!(g.closure_faces(Some(v)), expected);
        let e = g.face_index_of_generators(&[0, 2]).unwrap();
        assert_eq!(g.closure_faces(Some(e)), vec![e]);
        assert_eq!(g.closure_faces(None).len(), 8);
        assert_eq!(g.closure_covers().len(), 4 + 8);
    }

    #[test]
    fn natural_maps() {
        let g = square();
        let v = g.classify(&[0], &[0, 7]).unwrap();
        let e = g.face_index_of_generators(&[0, 2]).unwrap();
        let img = g.natural_map(&v, e).unwrap();
        assert!(img.coset.is_identity());
        assert_eq!(g.natural_map(&v, v.face).unwrap(), v);
        let other = g.face_index_of_generators(&[1, 2]).unwrap();
        assert!(matches!(g.natural_map(&v, other), Err(GeometricError::NotContained { .. })));

        let g3 = hexagon();
        let p = g3.classify(&[4], &[0, 1]).unwrap();
        let edge = g3.face_index_of_generators(&[4, 2]).unwrap();
        let img = g3.natural_map(&p, edge).unwrap();
        // fibre over the image: bases differing by H_F = <(2,2),(0,1)>
        let shifted = g3.classify(&[4], &[2, 5]).unwrap();
        assert!(!g3.points_equal(&p, &shifted));
        assert!(g3.points_equal(&img, &g3.natural_map(&shifted, edge).unwrap()));
        let off = g3.classify(&[4], &[1, 1]).unwrap();
        assert!(!g3.points_equal(&img, &g3.natural_map(&off, edge).unwrap()));
    }

    #[test]
    fn certificates() {
        let g = square();
        let p = g.classify(&[0], &[0, 0]).unwrap();
        let q = g.classify(&[0, 2], &[0, 0]).unwrap();
        let cert = g.separation_certificate(&p, &q).unwrap();
        assert_eq!(cert.kind, SeparationKind::DifferentFaces { vertex: 2 });
        assert_eq!(cert.larger, Larger::Second);
        assert_eq!(g.separation_certificate(&p, &p), Err(GeometricError::PointsEqual));

        let g2 = line();
        let a = g2.classify(&[2], &[3]).unwrap();
        let b = g2.classify(&[2], &[4]).unwrap();
        let cert = g2.separation_certificate(&a, &b).unwrap();
        assert_eq!((cert.y.clone(), cert.z.clone()), (vec![4], vec![3]));
        assert_eq!(cert.kind, SeparationKind::SameFaceShifted);
        assert_eq!(cert.larger, Larger::First);
    }
}
