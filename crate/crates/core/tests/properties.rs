use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cayley_compact::algebraic::{standard_pairs, MonomialIdeal};
use cayley_compact::cayley::{BallIndex, CayleyGraph, Q};
use cayley_compact::geometric::GeometricBoundary;
use cayley_compact::groebner::{buchberger, cayley_ideal, GroebnerBasis, Monomial, WeightOrder};
use cayley_compact::harness::Instance;
use cayley_compact::linalg::{hermite_normal_form, integer_kernel, quotient, smith_normal_form, to_big, IntMatrix};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..13, c), r))
}

fn is_unit(m: &IntMatrix) -> bool {
    let d = m.determinant();
    d == BigInt::one() || d == -BigInt::one()
}

fn hexagon() -> Instance {
    Instance::unit(2, &[vec![1, 0], vec![0, 1], vec![2, 2]]).unwrap()
}

fn diagonals() -> Instance {
    Instance::unit(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap()
}

thread_local! {
    static HEX: &'static CayleyGraph = Box::leak(Box::new(hexagon().graph()));
    static HEX_BALL: &'static BallIndex<'static> =
        HEX.with(|g| Box::leak(Box::new(g.ball(&Q::from_integer(14.into())).unwrap())));
    static HEX_GB: &'static GroebnerBasis = {
        let inst = hexagon();
        let order = WeightOrder::unit(inst.generators.len()).perturbed(1000).unwrap();
        Box::leak(Box::new(buchberger(&cayley_ideal(&inst.group, &inst.generators).unwrap(), &order).unwrap()))
    };
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_unimodular_and_divisible(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(is_unit(&s.u) && is_unit(&s.v));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hermite_form_is_unimodular_and_canonical(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(&u * &a, h.clone());
        prop_assert!(is_unit(&u));
        let (h2, _) = hermite_normal_form(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn kernel_is_annihilated_with_full_rank(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let k = integer_kernel(&a);
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.cols() + smith_normal_form(&a).rank(), a.cols());
    }

    #[test]
    fn coset_labels_ignore_the_sublattice(
        cols in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 0..4),
        x in prop::collection::vec(-20i64..21, 3),
        coeffs in prop::collection::vec(-3i64..4, 4),
    ) {
        let h = IntMatrix::from_columns(3, &cols);
        let q = quotient(3, &h).unwrap();
        let mut shifted = x.clone();
        for (c, k) in cols.iter().zip(&coeffs) {
            for (s, v) in shifted.iter_mut().zip(c) {
                *s += k * v;
            }
        }
        let label = q.coset_label_i64(&x).unwrap();
        prop_assert_eq!(q.coset_label_i64(&shifted).unwrap(), label.clone());
        prop_assert_eq!(q.coset_label(&q.representative(&label)).unwrap(), label);
        prop_assert_eq!(q.coset_label(&to_big(&[0, 0, 0])).unwrap().is_identity(), true);
    }

    #[test]
    fn phi_is_a_bounded_antisymmetric_cocycle(w in point(), y in point(), z in point(), x in point(), g in point()) {
        HEX_BALL.with(|ball| {
            let phi = |a: &[i64], b: &[i64], c: &[i64]| ball.phi(a, b, c).unwrap();
            prop_assert_eq!(phi(&w, &y, &x) + phi(&y, &z, &x), phi(&w, &z, &x));
            prop_assert_eq!(phi(&y, &z, &x), -phi(&z, &y, &x));
            prop_assert!(phi(&y, &z, &x) <= ball.distance(&y, &z).unwrap());
            let add = |a: &[i64]| -> Vec<i64> { a.iter().zip(&g).map(|(p, q)| p + q).collect() };
            prop_assert_eq!(phi(&add(&y), &add(&z), &add(&x)), phi(&y, &z, &x));
            Ok(())
        })?;
    }

    #[test]
    fn normal_forms_do_not_depend_on_reduction_choices(
        exps in prop::collection::vec(0u32..4, 6),
        choices in prop::collection::vec(0usize..8, 64),
    ) {
        HEX_GB.with(|gb| {
            let m = Monomial(exps.clone());
            let mut cur = m.clone();
            let mut i = 0;
            while let Some(next) = gb.reduce_step(&cur, choices[i % choices.len()]) {
                cur = next;
                i += 1;
                prop_assert!(i < 10_000);
            }
            prop_assert_eq!(cur, gb.normal_form(&m).0);
            Ok(())
        })?;
    }

    #[test]
    fn standard_pairs_cover_exactly_the_standard_monomials(
        gens in prop::collection::vec(prop::collection::vec(0u32..3, 4), 1..5),
        probe in prop::collection::vec(prop::collection::vec(0u32..4, 4), 40),
    ) {
        let gens: Vec<Monomial> = gens.into_iter().map(Monomial).filter(|m| !m.is_one()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = MonomialIdeal::new(4, gens);
        let pairs = standard_pairs(&ideal).unwrap();
        for m in probe.into_iter().map(Monomial) {
            let covered = pairs.iter().filter(|p| p.covers(&m)).count();
            prop_assert_eq!(covered > 0, !ideal.contains(&m));
        }
        // pairs are pairwise incomparable
        for a in &pairs {
            for b in &pairs {
                if a == b { continue; }
                let inside = a.free.iter().all(|v| b.free.contains(v))
                    && b.base.divides(&a.base)
                    && a.base.div(&b.base).support().iter().all(|v| b.free.contains(v));
                prop_assert!(!inside);
            }
        }
    }
}

#[test]
fn natural_maps_compose_and_closures_are_order_reversing() {
    for inst in [hexagon(), diagonals()] {
        let geo = GeometricBoundary::from_graph(&inst.graph()).unwrap();
        let lattice = geo.lattice();
        let n = lattice.len();
        for f in 0..n {
            let above: Vec<usize> = (0..n).filter(|&g| lattice.leq(f, g)).collect();
            for p in geo.sample_points(f, 2) {
                for &g in &above {
                    let pg = geo.natural_map(&p, g).unwrap();
                    for &k in above.iter().filter(|&&k| lattice.leq(g, k)) {
                        let direct = geo.natural_map(&p, k).unwrap();
                        assert!(geo.points_equal(&geo.natural_map(&pg, k).unwrap(), &direct));
                    }
                }
            }
            let cl: BTreeSet<usize> = geo.closure_faces(Some(f)).into_iter().collect();
            for g in 0..n {
                let clg: BTreeSet<usize> = geo.closure_faces(Some(g)).into_iter().collect();
                assert_eq!(lattice.leq(f, g), clg.is_subset(&cl));
            }
        }
        let interior: BTreeSet<usize> = geo.closure_faces(None).into_iter().collect();
        assert_eq!(interior.len(), n);
    }
}
