use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cohomology::{apply_differential, is_cocycle};
use crate::group::catalog::{cyclic, dihedral, elementary_abelian, sym};
use crate::group::act_orbits;

fn natural_s3() -> GroupAction {
    let g = sym(3).unwrap();
    let perms: Vec<Vec<usize>> =
        g.elements().map(|i| g.label(i).chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).collect();
    GroupAction::new(g, 3, &perms).unwrap()
}

fn point(g: FiniteGroup) -> GroupAction {
    GroupAction::trivial(g, 1)
}

/// `r^i s^j` acts on square vertices by `v ↦ i + (-1)^j v`.
fn d4_vertices() -> GroupAction {
    GroupAction::from_fn(dihedral(4).unwrap(), 4, |g, v| {
        let (i, j) = (g % 4, g / 4);
        let w = if j == 0 { v } else { (4 - v) % 4 };
        (w + i) % 4
    })
    .unwrap()
}

/// Generator of `Z/4` swaps `0↔1` and `2↔3`.
fn z4_swapped_pairs() -> GroupAction {
    GroupAction::from_fn(cyclic(4).unwrap(), 4, |g, v| if g % 2 == 1 { v ^ 1 } else { v }).unwrap()
}

/// `(Z/2)^3` acting through its first coordinate on two points.
fn z2cubed_on_two() -> GroupAction {
    GroupAction::from_fn(elementary_abelian(2, 3).unwrap(), 2, |g, v| v ^ (g & 1)).unwrap()
}

fn battery() -> Vec<GroupAction> {
    let v4 = elementary_abelian(2, 2).unwrap();
    vec![
        natural_s3(),
        GroupAction::regular(v4.clone()),
        d4_vertices(),
        z4_swapped_pairs(),
        point(v4.clone()),
        GroupAction::trivial(v4, 2),
        z2cubed_on_two(),
        GroupAction::new(cyclic(2).unwrap(), 3, &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap(),
    ]
}

#[test]
fn groupoid_shapes() {
    let s3 = build_action_groupoid(&natural_s3());
    assert_eq!(s3.num_arrows(), 18);
    assert_eq!(s3.components(), 1);
    let g = build_action_groupoid(&point(sym(3).unwrap()));
    assert_eq!((g.objects(), g.num_arrows()), (1, 6));
    let g = build_action_groupoid(&GroupAction::trivial(cyclic(3).unwrap(), 4));
    assert_eq!(g.components(), 4);
}

#[test]
fn transport_commutes_with_differentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in battery() {
        let gd = build_action_groupoid(&a);
        let bar = function_complex(&a);
        let nerve = NerveComplex::new(gd.clone());
        for n in 0..3 {
            for _ in 0..10 {
                let c = bar.random_cochain(n, 12, &mut rng);
                let t = to_groupoid_cochain(&gd, &bar, &c).unwrap();
                assert_eq!(from_groupoid_cochain(&gd, &bar, &t).unwrap(), c);
                let lhs = to_groupoid_cochain(&gd, &bar, &apply_differential(&bar, &c).unwrap()).unwrap();
                let rhs = apply_differential(&nerve, &t).unwrap();
                assert_eq!(lhs, rhs, "{} degree {n}", a.group().name());
                let dd = apply_differential(&nerve, &rhs).unwrap();
                assert!(dd.is_zero());
            }
        }
    }
}

#[test]
fn degree_zero_transport() {
    let a = natural_s3();
    let gd = build_action_groupoid(&a);
    let bar = function_complex(&a);
    let f = Cochain { degree: 0, modulus: 6, values: vec![1, 2, 5] };
    assert_eq!(to_groupoid_cochain(&gd, &bar, &f).unwrap().values, vec![1, 2, 5]);
    let wrong = BarComplex::cx(a.group());
    assert!(to_groupoid_cochain(&gd, &wrong, &f).is_err());
}

#[test]
fn counting_theorem_on_battery() {
    for a in battery() {
        let gd = build_action_groupoid(&a);
        let r = gerbe_bijection_check(&gd).unwrap();
        assert!(r.holds(), "{}: {r:?}", a.group().name());
    }
}

#[test]
fn known_groupoid_h2() {
    let v4 = elementary_abelian(2, 2).unwrap();
    let h = groupoid_cohomology(&build_action_groupoid(&point(v4.clone())), 2).unwrap();
    assert_eq!(h.structure(), &FinAbGroupAlias::cyclic(2));
    let h = groupoid_cohomology(&build_action_groupoid(&natural_s3()), 2).unwrap();
    assert_eq!(h.order(), 1);
    let h = groupoid_cohomology(&build_action_groupoid(&GroupAction::trivial(v4, 2)), 2).unwrap();
    assert_eq!(h.structure(), &FinAbGroupAlias::new(vec![2, 2]).unwrap());
}

use crate::abelian::FinAbGroup as FinAbGroupAlias;

/// Every permutation of `0..k` of order dividing `m`.
fn cyclic_actions(m: usize, k: usize) -> Vec<GroupAction> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..k).filter(|x| !p.contains(x)).map(|x| [p.clone(), vec![x]].concat()).collect::<Vec<_>>())
            .collect();
    }
    let g = cyclic(m).unwrap();
    perms
        .into_iter()
        .filter_map(|p| {
            let pow = |e: usize, x: usize| (0..e).fold(x, |y, _| p[y]);
            GroupAction::from_fn(g.clone(), k, pow).ok()
        })
        .collect()
}

#[test]
fn cyclic_groups_carry_only_trivial_gerbes() {
    for m in 2..=4 {
        for k in 1..=3 {
            for a in cyclic_actions(m, k) {
                let gd = build_action_groupoid(&a);
                let h = groupoid_cohomology(&gd, 2).unwrap();
                assert_eq!(h.order(), 1, "Z/{m} on {k} points");
                let c = h.representative(&[]);
                let count = twisted_rep_count(&gerbe_decompose(&gd, &h, &c).unwrap());
                assert!(count.per_orbit.iter().all(|&(_, reg, all)| reg == all));
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let v4 = elementary_abelian(2, 2).unwrap();
    let gd = build_action_groupoid(&point(v4));
    let h = groupoid_cohomology(&gd, 2).unwrap();
    let trivial = gerbe_decompose(&gd, &h, &h.representative(&[0])).unwrap();
    assert!(trivial.orbits.iter().all(|o| o.class.iter().all(|&x| x == 0)));
    assert_eq!(twisted_rep_count(&trivial).total, 4);
    let schur = gerbe_decompose(&gd, &h, &h.representative(&[1])).unwrap();
    assert_eq!(schur.orbits.len(), 1);
    assert_eq!(schur.orbits[0].class, vec![1]);
    assert_eq!(twisted_rep_count(&schur).total, 1);

    let gd = build_action_groupoid(&natural_s3());
    let h = groupoid_cohomology(&gd, 2).unwrap();
    let d = gerbe_decompose(&gd, &h, &h.representative(&[])).unwrap();
    // one orbit with stabilizer Z/2, untwisted: 2 simples
    assert_eq!(twisted_rep_count(&d).total, 2);
}

#[test]
fn untwisted_count_is_class_count() {
    for a in battery() {
        let gd = build_action_groupoid(&a);
        let h = groupoid_cohomology(&gd, 2).unwrap();
        let d = gerbe_decompose(&gd, &h, &h.representative(&vec![0; h.structure().rank()])).unwrap();
        let expected: usize = act_orbits(&a).iter().map(|o| o.stabilizer.as_group(a.group()).conjugacy_classes().len()).sum();
        assert_eq!(twisted_rep_count(&d).total, expected);
    }
}

#[test]
fn representative_choice_gives_conjugate_classes() {
    let a = z2cubed_on_two();
    let gd = build_action_groupoid(&a);
    let h = groupoid_cohomology(&gd, 2).unwrap();
    let nerve = NerveComplex::new(gd.clone());
    let q = a.group();
    for coords in h.classes() {
        let c = h.representative(&coords);
        let d = gerbe_decompose(&gd, &h, &c).unwrap();
        let o = &d.orbits[0];
        let (x, y) = (o.points[0], o.points[1]);
        let t = q.elements().find(|&g| a.act(g, x) == y).unwrap();
        // restriction at y pulled back along h ↦ t h t⁻¹
        let bar = BarComplex::cx(&o.stabilizer_group);
        let mem = &o.stabilizer;
        let phi_y = bar.cochain_from_fn(2, c.modulus, |u| {
            vec![nerve.value(&c, y, &[q.conj(t, mem[u[0]]), q.conj(t, mem[u[1]])]) as i64]
        });
        assert!(is_cocycle(&bar, &phi_y).unwrap());
        let hx = Cohomology::compute(&bar, 2, c.modulus).unwrap();
        assert_eq!(hx.classify(&phi_y).unwrap(), o.class);
    }
}

#[test]
fn regular_classes_are_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in [elementary_abelian(2, 2).unwrap(), dihedral(4).unwrap(), elementary_abelian(2, 3).unwrap()] {
        let bar = BarComplex::cx(&g);
        let h = Cohomology::compute(&bar, 2, 1).unwrap();
        for coords in h.classes() {
            let phi = h.representative(&coords);
            let b = bar.random_cochain(1, phi.modulus, &mut rng);
            let db = apply_differential(&bar, &b).unwrap();
            let shifted = crate::cohomology::complex::difference(&bar.kinds(2), &phi, &db).unwrap();
            assert_eq!(regular_classes(&g, &phi), regular_classes(&g, &shifted));
        }
    }
}
