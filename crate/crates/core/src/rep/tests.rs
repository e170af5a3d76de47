use super::*;
use crate::group::catalog;

fn dims(g: &crate::FiniteGroup) -> Vec<usize> {
    character_table(g).unwrap().dims
}

#[test]
fn small_tables() {
    assert_eq!(dims(&catalog::sym(3).unwrap()), vec![1, 1, 2]);
    assert_eq!(dims(&catalog::dihedral(4).unwrap()), vec![1, 1, 1, 1, 2]);
    assert_eq!(dims(&catalog::quaternion8()), vec![1, 1, 1, 1, 2]);
    assert_eq!(dims(&catalog::alt4()), vec![1, 1, 1, 3]);
    assert_eq!(dims(&catalog::sym(4).unwrap()), vec![1, 1, 2, 3, 3]);
    assert_eq!(dims(&catalog::cyclic(5).unwrap()), vec![1; 5]);
}

#[test]
fn cyclic_values_are_roots_of_unity() {
    let g = catalog::cyclic(6).unwrap();
    let t = character_table(&g).unwrap();
    for i in 0..6 {
        for x in 0..6 {
            let m = &t.multiplicities[i][t.class_of(x)];
            assert_eq!(m.iter().sum::<u32>(), 1);
        }
    }
    // the characters are distinct homomorphisms
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..6 {
        let pos = t.multiplicities[i][t.class_of(1)].iter().position(|&m| m == 1).unwrap();
        seen.insert(pos);
    }
    assert_eq!(seen.len(), 6);
}

#[test]
fn orthogonality_across_catalog() {
    let groups = [
        catalog::dihedral(3).unwrap(),
        catalog::dihedral(5).unwrap(),
        catalog::dihedral(6).unwrap(),
        catalog::heisenberg(3).unwrap(),
        catalog::abelian(&[2, 4]).unwrap(),
        catalog::elementary_abelian(2, 3).unwrap(),
        catalog::direct_product(&catalog::sym(3).unwrap(), &catalog::cyclic(2).unwrap()).unwrap(),
        catalog::direct_product(&catalog::alt4(), &catalog::cyclic(2).unwrap()).unwrap(),
    ];
    for g in &groups {
        let t = character_table(g).unwrap();
        assert!(t.orthogonality_holds());
        assert_eq!(t.dims.iter().map(|d| d * d).sum::<usize>(), g.order());
        assert_eq!(t.num_irreps(), g.conjugacy_classes().len());
    }
}

#[test]
fn s3_two_dim_character() {
    let g = catalog::sym(3).unwrap();
    let t = character_table(&g).unwrap();
    let vals: Vec<i64> = (0..3)
        .map(|k| t.value(2, k).as_integer().unwrap().try_into().unwrap())
        .collect();
    // classes ordered by least member: e, transpositions, 3-cycles
    let mut by_size: Vec<(usize, i64)> = t.class_sizes.iter().copied().zip(vals).collect();
    by_size.sort();
    assert_eq!(by_size, vec![(1, 2), (2, -1), (3, 0)]);
}

fn sub(g: &crate::FiniteGroup, members: &[usize]) -> crate::SubgroupDatum {
    crate::SubgroupDatum::new(g, members).unwrap()
}

fn center(g: &crate::FiniteGroup) -> crate::SubgroupDatum {
    crate::SubgroupDatum::center(g)
}

/// Normal subgroup generated by the given elements.
fn generated(g: &crate::FiniteGroup, gens: &[usize]) -> crate::SubgroupDatum {
    crate::SubgroupDatum::generated(g, gens).unwrap()
}

fn v4_in_s4(g: &crate::FiniteGroup) -> crate::SubgroupDatum {
    // identity plus the three double transpositions
    let members: Vec<usize> = g
        .elements()
        .filter(|&x| {
            let l = g.label(x);
            let fixed = l.chars().enumerate().filter(|(i, c)| c.to_digit(10) == Some(*i as u32)).count();
            fixed == 4 || (fixed == 0 && g.element_order(x) == 2)
        })
        .collect();
    sub(g, &members)
}

#[test]
fn irrep_matrices_meet_tolerance() {
    for g in [catalog::sym(3).unwrap(), catalog::quaternion8(), catalog::alt4(), catalog::sym(4).unwrap()] {
        let t = character_table(&g).unwrap();
        let m = irrep_matrices(&g, &t, 7).unwrap();
        for (i, d) in m.defects.iter().enumerate() {
            assert!(d.max() <= MATRIX_TOL, "{} irrep {i}: {d:?}", g.name());
            assert_eq!(m.dim(i), t.dims[i]);
        }
    }
}

#[test]
fn s3_sign_and_standard() {
    let g = catalog::sym(3).unwrap();
    let t = character_table(&g).unwrap();
    let m = irrep_matrices(&g, &t, 0).unwrap();
    for x in g.elements() {
        assert!((m.get(0, x)[(0, 0)] - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let sign = m.get(1, x)[(0, 0)].re;
        let expected = if g.element_order(x) == 2 { -1.0 } else { 1.0 };
        assert!((sign - expected).abs() < 1e-12);
        let tr = m.get(2, x).trace().re;
        let expected = match g.element_order(x) {
            1 => 2.0,
            2 => 0.0,
            _ => -1.0,
        };
        assert!((tr - expected).abs() < 1e-9);
    }
}

#[test]
fn same_seed_same_matrices() {
    let g = catalog::sym(4).unwrap();
    let t = character_table(&g).unwrap();
    let a = irrep_matrices(&g, &t, 3).unwrap();
    let b = irrep_matrices(&g, &t, 3).unwrap();
    assert_eq!(a.reps, b.reps);
}

#[test]
fn q_action_examples() {
    let s3 = catalog::sym(3).unwrap();
    let a3 = generated(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
    let act = q_action_on_irreps(&s3, &a3).unwrap();
    assert_eq!(act.permutation(1), vec![0, 2, 1]);

    let d4 = catalog::dihedral(4).unwrap();
    let rot = sub(&d4, &[0, 1, 2, 3]);
    let act = q_action_on_irreps(&d4, &rot).unwrap();
    let t = character_table(&catalog::cyclic(4).unwrap()).unwrap();
    // faithful characters of Z/4 are the two of order 4
    let faithful: Vec<usize> = (0..4).filter(|&i| t.multiplicities[i][t.class_of(1)][1] == 1 || t.multiplicities[i][t.class_of(1)][3] == 1).collect();
    assert_eq!(faithful.len(), 2);
    assert_eq!(act.act(1, faithful[0]), faithful[1]);
    assert_eq!(act.act(1, 0), 0);

    let z = center(&d4);
    assert!(q_action_on_irreps(&d4, &z).unwrap().is_trivial());
}

fn battery() -> Vec<(crate::FiniteGroup, crate::SubgroupDatum)> {
    let s3 = catalog::sym(3).unwrap();
    let a3 = generated(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
    let d4 = catalog::dihedral(4).unwrap();
    let rot = sub(&d4, &[0, 1, 2, 3]);
    let zd4 = center(&d4);
    let q8 = catalog::quaternion8();
    let zq8 = center(&q8);
    let z4 = catalog::cyclic(4).unwrap();
    let z2 = sub(&z4, &[0, 2]);
    let a4 = catalog::alt4();
    let v4a = generated(&a4, &a4.elements().filter(|&x| a4.element_order(x) == 2).collect::<Vec<_>>());
    let s4 = catalog::sym(4).unwrap();
    let v4s = v4_in_s4(&s4);
    vec![(s3, a3), (d4.clone(), rot), (d4, zd4), (q8, zq8), (z4, z2), (a4, v4a), (s4, v4s)]
}

#[test]
fn frules_battery() {
    for (g, k) in battery() {
        let r = frules_check(&g, &k, 11).unwrap();
        assert!(r.holds(), "{} over {}: {r:?}", g.name(), k.order());
    }
}

#[test]
fn d4_center_has_one_projective_orbit() {
    let d4 = catalog::dihedral(4).unwrap();
    let r = frules_check(&d4, &center(&d4), 0).unwrap();
    assert_eq!(r.line, "5 = 4 + 1");
    assert_eq!(r.orbits[0].dims_over, vec![1, 1, 1, 1]);
    assert_eq!(r.orbits[1].dims_over, vec![2]);
    let d = clifford_gerbe_extract(&d4, &center(&d4), 0).unwrap();
    assert!(d.orbits[0].class.iter().all(|&c| c == 0));
    assert!(d.orbits[1].class.iter().any(|&c| c != 0));
}

#[test]
fn s3_and_cyclic_classes_trivial() {
    let s3 = catalog::sym(3).unwrap();
    let a3 = generated(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
    let r = frules_check(&s3, &a3, 0).unwrap();
    assert_eq!(r.line, "3 = 2 + 1");
    for (g, k) in [(s3.clone(), a3), (catalog::cyclic(4).unwrap(), sub(&catalog::cyclic(4).unwrap(), &[0, 2]))] {
        let d = clifford_gerbe_extract(&g, &k, 0).unwrap();
        assert!(d.orbits.iter().all(|o| o.class.iter().all(|&c| c == 0)));
    }
}

#[test]
fn whole_group_is_one_orbit_per_irrep() {
    for g in [catalog::sym(3).unwrap(), catalog::quaternion8()] {
        let r = frules_check(&g, &crate::SubgroupDatum::whole(&g), 0).unwrap();
        assert!(r.holds());
        assert_eq!(r.total, r.irreps);
    }
}

#[test]
fn extracted_classes_do_not_depend_on_seed() {
    for (g, k) in battery() {
        let a = clifford_gerbe_extract(&g, &k, 1).unwrap();
        let b = clifford_gerbe_extract(&g, &k, 99).unwrap();
        for (x, y) in a.orbits.iter().zip(&b.orbits) {
            assert_eq!(x.class, y.class);
            assert_eq!(x.commutator_pairing, y.commutator_pairing);
            assert!(x.phase_error <= PHASE_TOL && x.rounding_error <= PHASE_TOL);
        }
    }
}
