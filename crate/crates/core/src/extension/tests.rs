use super::*;
use crate::abelian::FinAbGroup;
use crate::cohomology::{apply_differential, is_cohomologous, CochainComplex, Cohomology};
use crate::group::catalog::{cyclic, elementary_abelian, sym};
use crate::groupoid::twisted_rep_count;

fn module(q: &FiniteGroup, factors: &[u64], gen_images: &dyn Fn(usize) -> Vec<Vec<i64>>) -> CoeffModule {
    let a = FinAbGroup::new(factors.to_vec()).unwrap();
    CoeffModule::new(q.clone(), a, q.elements().map(gen_images).collect()).unwrap()
}

/// `(Q, A, band)` with `|Q|, |A| ≤ 4`.
fn battery() -> Vec<CoeffModule> {
    let z2 = cyclic(2).unwrap();
    let v4 = elementary_abelian(2, 2).unwrap();
    vec![
        CoeffModule::mu(z2.clone(), 2),
        module(&z2, &[3], &|g| vec![vec![if g == 0 { 1 } else { 2 }]]),
        CoeffModule::mu(z2.clone(), 4),
        module(&z2, &[4], &|g| vec![vec![if g == 0 { 1 } else { 3 }]]),
        module(&z2, &[2, 2], &|g| if g == 0 { vec![vec![1, 0], vec![0, 1]] } else { vec![vec![0, 1], vec![1, 0]] }),
        CoeffModule::mu(v4, 2),
        CoeffModule::mu(cyclic(3).unwrap(), 3),
        CoeffModule::mu(cyclic(4).unwrap(), 2),
    ]
}

fn classes(band: &CoeffModule) -> (Cohomology, Vec<Cochain>) {
    let h = Cohomology::compute(&BarComplex::finite(band), 2, 1).unwrap();
    let reps = h.classes().iter().map(|c| h.representative(c)).collect();
    (h, reps)
}

#[test]
fn known_totals() {
    let z2 = cyclic(2).unwrap();
    let b = CoeffModule::mu(z2.clone(), 2);
    let (_, reps) = classes(&b);
    let nontrivial = build_extension(&b, &reps[1]).unwrap();
    assert!(nontrivial.total.is_isomorphic(&cyclic(4).unwrap()));
    let split = build_extension(&b, &reps[0]).unwrap();
    assert!(split.total.is_isomorphic(&elementary_abelian(2, 2).unwrap()));
    let inv = module(&z2, &[3], &|g| vec![vec![if g == 0 { 1 } else { 2 }]]);
    let e = build_extension(&inv, &Cochain::zero(2, 1, 3)).unwrap();
    assert!(e.total.is_isomorphic(&sym(3).unwrap()));
    let z3 = CoeffModule::mu(cyclic(3).unwrap(), 3);
    let bad = BarComplex::finite(&z3).cochain_from_fn(2, 3, |t| vec![(t == [1, 1]) as i64]);
    assert!(matches!(build_extension(&z3, &bad), Err(crate::Error::NotCocycle { .. })));
}

#[test]
fn factor_set_round_trip() {
    for band in battery() {
        let bar = BarComplex::finite(&band);
        let (h, reps) = classes(&band);
        for eta in &reps {
            let e = build_extension(&band, eta).unwrap();
            let f = e.recover_cocycle().unwrap();
            assert!(is_cohomologous(&bar, eta, &f).unwrap().is_some());
            assert_eq!(h.classify(&f).unwrap(), h.classify(eta).unwrap());
        }
    }
}

#[test]
fn classes_biject_with_extensions() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
    for band in battery() {
        let bar = BarComplex::finite(&band);
        let (_, reps) = classes(&band);
        let exts: Vec<ExtensionDatum> = reps.iter().map(|r| build_extension(&band, r).unwrap()).collect();
        for (i, a) in exts.iter().enumerate() {
            for (j, b) in exts.iter().enumerate() {
                let eq = extension_equivalence(a, b).unwrap();
                assert_eq!(eq.is_some(), i == j, "{} classes {i} {j}", band.coeffs.describe());
            }
            // a coboundary shift gives an equivalent extension
            let beta = bar.random_cochain(1, 1, &mut rng);
            let db = apply_differential(&bar, &beta).unwrap();
            let shifted = crate::cohomology::complex::difference(&bar.kinds(2), &reps[i], &db).unwrap();
            let e2 = build_extension(&band, &shifted).unwrap();
            assert!(extension_equivalence(a, &e2).unwrap().is_some());
        }
    }
}

#[test]
fn twisted_group_algebra_centers() {
    let s3 = sym(3).unwrap();
    let t = twisted_group_algebra(&s3, &Cochain::zero(2, 25, 6)).unwrap();
    assert_eq!(center_dimension(&t).unwrap(), 3);
    assert!(associativity_violation(&t).is_none());
    let z4 = cyclic(4).unwrap();
    let t = twisted_group_algebra(&z4, &Cochain::zero(2, 9, 4)).unwrap();
    assert_eq!(center_dimension(&t).unwrap(), 4);

    let v4 = elementary_abelian(2, 2).unwrap();
    let h = Cohomology::compute(&BarComplex::cx(&v4), 2, 1).unwrap();
    let schur = h.representative(&[1]);
    let t = twisted_group_algebra(&v4, &schur).unwrap();
    assert!(associativity_violation(&t).is_none());
    assert_eq!(center_dimension(&t).unwrap(), 1);

    // on a cyclic group every twist is a coboundary
    let bar = BarComplex::cx(&z4);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2);
    let b = bar.random_cochain(1, 8, &mut rng);
    let phi = apply_differential(&bar, &b).unwrap();
    let t = twisted_group_algebra(&z4, &phi).unwrap();
    assert_eq!(center_dimension(&t).unwrap(), 4);
    assert!(is_cohomologous(&bar, &phi, &Cochain::zero(2, 9, 8)).unwrap().is_some());
    let not = bar.cochain_from_fn(2, 4, |t| vec![(t == [1, 1]) as i64]);
    assert!(twisted_group_algebra(&z4, &not).is_err());
}

fn swap_two_of_three() -> GroupAction {
    GroupAction::new(cyclic(2).unwrap(), 3, &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap()
}

#[test]
fn graded_algebra_examples() {
    let triv = crate::group::catalog::trivial();
    let band = GroupAction::trivial(triv, 3);
    let c = Cochain::zero(2, 0, 1);
    let r = build_graded_algebra(&band, &[1, 2, 3], &c).unwrap();
    assert_eq!(r.dim(), 14);
    assert_eq!(center_dimension(&r).unwrap(), 3);

    for p in [2usize, 3] {
        let zp = cyclic(p).unwrap();
        let fixed = GroupAction::trivial(zp.clone(), p);
        let c = Cochain::zero(2, (p - 1) * (p - 1) * p, p as u64);
        let r = build_graded_algebra(&fixed, &vec![1; p], &c).unwrap();
        assert_eq!((r.dim(), center_dimension(&r).unwrap()), (p * p, p * p));
        // a regular band on p points gives a full matrix algebra instead
        let regular = GroupAction::regular(zp);
        let r = build_graded_algebra(&regular, &vec![1; p], &c).unwrap();
        assert_eq!((r.dim(), center_dimension(&r).unwrap()), (p * p, 1));
    }

    let v4 = elementary_abelian(2, 2).unwrap();
    let point = GroupAction::trivial(v4.clone(), 1);
    let h = Cohomology::compute(&BarComplex::cx(&v4), 2, 1).unwrap();
    let r = build_graded_algebra(&point, &[1], &h.representative(&[1])).unwrap();
    let t = twisted_group_algebra(&v4, &h.representative(&[1])).unwrap();
    assert_eq!(center_dimension(&r).unwrap(), 1);
    assert_eq!(structure_constants_json(&r)["products"], structure_constants_json(&t)["products"]);
}

#[test]
fn graded_algebras_are_strongly_graded_and_associative() {
    let actions = vec![
        swap_two_of_three(),
        GroupAction::regular(elementary_abelian(2, 2).unwrap()),
        GroupAction::trivial(elementary_abelian(2, 2).unwrap(), 2),
    ];
    for a in actions {
        let bar = crate::groupoid::function_complex(&a);
        let h = Cohomology::compute(&bar, 2, 1).unwrap();
        for coords in h.classes() {
            let c = h.representative(&coords);
            for dims in [vec![1; a.set_size()], (0..a.set_size()).map(|x| 1 + x % 2).collect()] {
                let r = build_graded_algebra(&a, &dims, &c).unwrap();
                assert!(r.strong_grading_defects().is_empty());
                assert!(associativity_violation(&r).is_none());
                let g = extension_to_gerbe(&r).unwrap();
                assert_eq!(center_dimension(&r).unwrap(), twisted_rep_count(&g).total);
                let back = gerbe_to_extension(&g, Some(&dims)).unwrap();
                assert!(is_cohomologous(&bar, &back.cocycle, &c).unwrap().is_some());
                assert_eq!(center_dimension(&back).unwrap(), center_dimension(&r).unwrap());
            }
        }
    }
}

#[test]
fn group_algebra_of_extension() {
    let v4 = elementary_abelian(2, 2).unwrap();
    let band = CoeffModule::mu(v4, 2);
    let (_, reps) = classes(&band);
    let mut seen = std::collections::BTreeSet::new();
    for eta in &reps {
        let e = build_extension(&band, eta).unwrap();
        let r = e.group_algebra().unwrap();
        assert_eq!(r.dim(), 8);
        assert!(associativity_violation(&r).is_none());
        let k = center_dimension(&r).unwrap();
        assert_eq!(k, e.total.conjugacy_classes().len());
        assert_eq!(twisted_rep_count(&extension_to_gerbe(&r).unwrap()).total, k);
        seen.insert(k);
    }
    // abelian totals have 8 classes, D4 and Q8 have 5
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![5, 8]);
}

#[test]
fn cyclic_quotients_give_trivial_gerbes() {
    for p in [2usize, 3] {
        let zp = cyclic(p).unwrap();
        let band = CoeffModule::mu(zp, p as u64);
        let (_, reps) = classes(&band);
        let e = build_extension(&band, &reps[1]).unwrap();
        assert!(e.total.is_isomorphic(&cyclic(p * p).unwrap()));
        let r = e.group_algebra().unwrap();
        let g = extension_to_gerbe(&r).unwrap();
        assert!(g.class.iter().all(|&x| x == 0));
        assert!(r.band.is_trivial());
        assert_eq!(center_dimension(&r).unwrap(), p * p);
    }
}
