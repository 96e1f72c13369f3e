use std::collections::BTreeSet;

use proptest::prelude::*;

use coble::config::{covariant_vector, enumerate_structures, genericity_check, Factor, PointConfig};
use coble::covariants::coble_basis;
use coble::lattice::{Lattice, LatticeVector, WeylElement};
use coble::poly::{determinant, int, mat_mul, rank, Polynomial, PolyRing, RatMatrix, Rational, TChart};

fn to_points(raw: &[[i64; 3]]) -> Vec<[Rational; 3]> {
    raw.iter().map(|p| [int(p[0]), int(p[1]), int(p[2])]).collect()
}

fn generic(points: &[[Rational; 3]]) -> Option<PointConfig> {
    let c = PointConfig::rational(points).ok()?;
    genericity_check(&c).ok()?.is_generic().then_some(c)
}

/// Exponent e with structure ↦ det(g)^e under g; triples carry det(g), sextics det(Sym² g) = det(g)^4.
fn det_exponent(d: i64) -> BTreeSet<u32> {
    enumerate_structures(d)
        .unwrap()
        .iter()
        .map(|s| s.factors.iter().map(|f| if matches!(f, Factor::Triple(_)) { 1 } else { 4 }).sum())
        .collect()
}

/// Weight of point i in a structure; sextic factors use squared coordinates.
fn point_weights(d: i64, i: usize) -> BTreeSet<u32> {
    enumerate_structures(d)
        .unwrap()
        .iter()
        .map(|s| {
            s.factors
                .iter()
                .filter(|f| f.indices().contains(&i))
                .map(|f| if matches!(f, Factor::Triple(_)) { 1 } else { 2 })
                .sum()
        })
        .collect()
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-6i64..=6), n)
}

fn matrix_strategy() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-3i64..=3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projective_covariance(d in 3i64..=4, raw in point_strategy(6), g in matrix_strategy()) {
        let n = (9 - d) as usize;
        let pts = to_points(&raw[..n]);
        let gm: RatMatrix = g.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let det = determinant(&gm);
        prop_assume!(det != int(0));
        let Some(c) = generic(&pts) else { return Err(TestCaseError::reject("degenerate")) };
        let moved: Vec<[Rational; 3]> = pts
            .iter()
            .map(|p| {
                let v = mat_mul(&gm, &p.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
                [v[0][0].clone(), v[1][0].clone(), v[2][0].clone()]
            })
            .collect();
        let c2 = PointConfig::rational(&moved).unwrap();
        let e = det_exponent(d);
        prop_assert_eq!(e.len(), 1);
        let factor = num_traits::pow(det, *e.iter().next().unwrap() as usize);
        let a = covariant_vector(&c, d).unwrap();
        let b = covariant_vector(&c2, d).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert_eq!(&(x * &factor), y);
        }
    }

    #[test]
    fn point_rescaling(d in 3i64..=4, raw in point_strategy(6), which in 0usize..6, lambda in prop::sample::select(vec![-3i64, -2, 2, 3, 5])) {
        let n = (9 - d) as usize;
        let i = which % n;
        let pts = to_points(&raw[..n]);
        let Some(c) = generic(&pts) else { return Err(TestCaseError::reject("degenerate")) };
        let mut scaled = pts.clone();
        scaled[i] = scaled[i].clone().map(|x| x * int(lambda));
        let w = point_weights(d, i + 1);
        prop_assert_eq!(w.len(), 1);
        let factor = num_traits::pow(int(lambda), *w.iter().next().unwrap() as usize);
        let a = covariant_vector(&c, d).unwrap();
        let b = covariant_vector(&PointConfig::rational(&scaled).unwrap(), d).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert_eq!(&(x * &factor), y);
        }
    }

    #[test]
    fn weyl_words_permute_covariants(d in 3i64..=4, word in prop::collection::vec(0usize..6, 0..10), pick in 0usize..40, g in 0usize..6) {
        let (rc, space) = coble_basis(d).unwrap();
        let subs = rc.chart.simple_substitutions();
        let known: BTreeSet<Vec<usize>> = space.covariants.iter().map(|c| rc.multiset_key(&c.factors)).collect();
        for c in &space.covariants {
            let mut images = Vec::new();
            for &r in &c.factors {
                let mut f = rc.form(r).clone();
                for &g in &word {
                    f = subs[g % subs.len()].apply(&f);
                }
                let root = rc.root_of_form(&f);
                prop_assert!(root.is_some());
                images.push(root.unwrap());
            }
            prop_assert!(known.contains(&rc.multiset_key(&images)));
        }
        let c = &space.covariants[pick % space.covariants.len()];
        let s = &subs[g % subs.len()];
        let image = s.apply(&c.poly);
        let product = rc.product(&c.factors);
        let sign = if c.poly == product { int(1) } else { int(-1) };
        let factors: Vec<Polynomial> = c.factors.iter().map(|&r| rc.form(r).clone()).collect();
        prop_assert_eq!(&image, &s.apply_product(&factors).scale(&sign));
        prop_assert!(space.covariants.iter().any(|k| k.poly == image.canonical_sign().unwrap()));
    }

    #[test]
    fn weyl_elements_are_isometries_fixing_k(d in 2i64..=5, word in prop::collection::vec(0usize..7, 0..12), v in prop::collection::vec(-3i64..=3, 8), u in prop::collection::vec(-3i64..=3, 8)) {
        let lattice = Lattice::new(d).unwrap();
        let rank = lattice.simple_roots().len();
        let mut w = WeylElement::identity(&lattice);
        for &g in &word {
            w = w.compose(&WeylElement::simple(&lattice, g % rank));
        }
        let dim = lattice.dim();
        let x = LatticeVector(v[..dim].to_vec());
        let y = LatticeVector(u[..dim].to_vec());
        prop_assert_eq!(lattice.pairing(&w.apply(&x), &w.apply(&y)), lattice.pairing(&x, &y));
        let k = lattice.canonical_class();
        prop_assert_eq!(w.apply(&k), k.clone());
        prop_assert_eq!(w.compose(&w.inverse()).m, WeylElement::identity(&lattice).m);
    }

    #[test]
    fn weyl_substitution_is_a_ring_map(word in prop::collection::vec(0usize..6, 1..6), a in prop::collection::vec(-4i64..=4, 6), b in prop::collection::vec(-4i64..=4, 6)) {
        let chart = TChart::for_degree(3).unwrap();
        let subs = chart.simple_substitutions();
        let ring = chart.ring();
        let p = Polynomial::linear(ring, &a.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let q = &Polynomial::linear(ring, &b.iter().map(|&x| int(x)).collect::<Vec<_>>()).pow(2) + &Polynomial::from_int(ring, 1);
        let mut lhs = &p * &q;
        let (mut p2, mut q2) = (p.clone(), q.clone());
        for &g in &word {
            let s = &subs[g % subs.len()];
            lhs = s.apply(&lhs);
            p2 = s.apply(&p2);
            q2 = s.apply(&q2);
        }
        prop_assert_eq!(lhs, &p2 * &q2);
    }

    #[test]
    fn evaluation_is_multiplicative(a in prop::collection::vec(-5i64..=5, 4), b in prop::collection::vec(-5i64..=5, 4), x in prop::collection::vec(-7i64..=7, 3)) {
        let ring = PolyRing::t_vars(3);
        let lin = |c: &[i64]| &Polynomial::linear(&ring, &c[..3].iter().map(|&v| int(v)).collect::<Vec<_>>()) + &Polynomial::from_int(&ring, c[3]);
        let (p, q) = (lin(&a).pow(2), lin(&b));
        let pt: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        prop_assert_eq!((&p * &q).evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
        prop_assert_eq!((&p + &q).evaluate(&pt), p.evaluate(&pt) + q.evaluate(&pt));
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).exact_divide(&q), Some(p.clone()));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::array::uniform4(prop::array::uniform4(-4i64..=4)), b in prop::array::uniform4(prop::array::uniform4(-4i64..=4))) {
        let m = |x: &[[i64; 4]; 4]| -> RatMatrix { x.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect() };
        let (ma, mb) = (m(&a), m(&b));
        let prod = mat_mul(&ma, &mb);
        prop_assert_eq!(determinant(&prod), determinant(&ma) * determinant(&mb));
        let full = determinant(&ma) != int(0);
        prop_assert_eq!(rank(&ma) == 4, full);
        let mut dup = ma.clone();
        dup[3] = dup[0].clone();
        prop_assert!(rank(&dup) <= 3);
    }
}
