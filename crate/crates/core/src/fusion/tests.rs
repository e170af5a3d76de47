use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rep_ext::all_cochains;
use super::*;
use crate::abelian::CoeffModule;
use crate::cohomology::{apply_differential, Cohomology};
use crate::extension::{build_extension, extension_from_normal};
use crate::group::catalog::{abelian, alt4, cyclic, dihedral, elementary_abelian, sym};

fn sub(g: &FiniteGroup, members: &[usize]) -> SubgroupDatum {
    SubgroupDatum::new(g, members).unwrap()
}

fn omega_from(g: &FiniteGroup, modulus: u64, f: impl Fn(usize, usize, usize) -> i64) -> Cochain {
    BarComplex::cx(g).cochain_from_fn(3, modulus, |t| vec![f(t[0], t[1], t[2])])
}

/// `Z/n` with trivial action, or with inversion when `invert` is set.
fn band(q: &FiniteGroup, n: u64, invert: bool) -> CoeffModule {
    let action = q
        .elements()
        .map(|x| vec![vec![if invert && x != 0 { -1 } else { 1 }]])
        .collect();
    CoeffModule::new(q.clone(), FinAbGroup::cyclic(n), action).unwrap()
}

fn ext_z2(f: u64) -> ExtensionDatum {
    let q = cyclic(2).unwrap();
    let b = band(&q, 2, false);
    let c = BarComplex::finite(&b).cochain_from_fn(2, 1, |_| vec![f as i64]);
    build_extension(&b, &c).unwrap()
}

fn ell_z2(ext: &ExtensionDatum, v: u64) -> Cochain {
    let dm = crate::abelian::dual_group(&ext.band.coeffs, Some(&ext.band)).unwrap().action.unwrap();
    BarComplex::finite(&dm).cochain_from_fn(2, 1, |_| vec![v as i64])
}

fn zero_c(q: &FiniteGroup) -> Cochain {
    Cochain::zero(3, BarComplex::cx(q).num_tuples(3), 1)
}

#[test]
fn pentagon_examples() {
    let z2 = cyclic(2).unwrap();
    assert!(pentagon_check(&PointedFusionDatum::trivial(z2.clone())).holds);
    let w = omega_from(&z2, 2, |a, b, c| (a * b * c) as i64);
    assert!(pentagon_check(&PointedFusionDatum::new(z2.clone(), w).unwrap()).holds);
    // a single nonzero value at a generic triple breaks the pentagon
    let z3 = cyclic(3).unwrap();
    let bad = omega_from(&z3, 3, |a, b, c| i64::from(a == 1 && b == 2 && c == 1));
    let r = pentagon_check(&PointedFusionDatum::new(z3.clone(), bad.clone()).unwrap());
    assert!(!r.holds);
    let [a, b, c, d] = r.witness.unwrap();
    let bar = BarComplex::cx(&z3);
    let dw = apply_differential(&bar, &bad).unwrap();
    assert_ne!(bar.value(&dw, &[a, b, c, d])[0], 0);
}

#[test]
fn pentagon_agrees_with_cocycle_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [cyclic(3).unwrap(), elementary_abelian(2, 2).unwrap(), sym(3).unwrap()] {
        let bar = BarComplex::cx(&g);
        let h = Cohomology::compute(&bar, 3, 1).unwrap();
        let mut samples: Vec<Cochain> = h.classes().iter().map(|c| h.representative(c)).collect();
        for _ in 0..6 {
            samples.push(bar.random_cochain(3, 6, &mut rng));
        }
        for w in samples {
            let d = PointedFusionDatum::new(g.clone(), w.clone()).unwrap();
            assert_eq!(pentagon_check(&d).holds, is_cocycle(&bar, &w).unwrap());
        }
    }
}

#[test]
fn embedding_depends_on_restricted_class() {
    let z4 = cyclic(4).unwrap();
    let bar = BarComplex::cx(&z4);
    let h = Cohomology::compute(&bar, 3, 1).unwrap();
    assert_eq!(h.structure().factors(), &[4]);
    let k = sub(&z4, &[0, 2]);
    let mut seen = [false, false];
    for m in 0..4u64 {
        let d = PointedFusionDatum::new(z4.clone(), h.representative(&[m])).unwrap();
        match embed_vec_k(&d, &k).unwrap() {
            Embedding::Embedded(e) => {
                seen[0] = true;
                assert_eq!(m % 2, 0);
                let (kb, res) = restrict_to(&d, &k);
                let de = apply_differential(&kb, &e.eta).unwrap();
                assert!(add_cx(&de, &neg_cx(&res)).is_zero());
            }
            Embedding::Obstructed { class, .. } => {
                seen[1] = true;
                assert_eq!(m % 2, 1);
                assert_eq!(class, vec![1]);
            }
        }
    }
    assert_eq!(seen, [true, true]);
    let trivial = SubgroupDatum::trivial(&z4);
    let d = PointedFusionDatum::new(z4.clone(), h.representative(&[1])).unwrap();
    let e = embed_vec_k(&d, &trivial).unwrap();
    assert!(e.eta().unwrap().values.is_empty());
    let e = embed_vec_k(&PointedFusionDatum::trivial(z4.clone()), &k).unwrap();
    assert!(e.eta().unwrap().is_zero());
}

#[test]
fn phi_f_split_is_zero_and_z4_is_not() {
    let split = phi_f_construct(&ext_z2(0)).unwrap();
    assert!(split.is_cocycle && split.datum.omega.is_zero());
    assert!(split.semidirect.is_isomorphic(&elementary_abelian(2, 2).unwrap()));
    let z4 = phi_f_construct(&ext_z2(1)).unwrap();
    assert!(z4.is_cocycle);
    assert!(!z4.is_trivial_class());
    let bar = BarComplex::cx(&z4.semidirect);
    let zero = Cochain::zero(3, bar.num_tuples(3), 2);
    assert!(is_cohomologous(&bar, &z4.datum.omega, &zero).unwrap().is_none());
}

#[test]
fn phi_f_cocycle_over_battery() {
    let z2 = cyclic(2).unwrap();
    let v4 = elementary_abelian(2, 2).unwrap();
    let z3 = cyclic(3).unwrap();
    let cases = [band(&z2, 2, false), band(&z2, 4, false), band(&z2, 4, true), band(&v4, 2, false), band(&z3, 3, false)];
    for b in cases {
        let bar = BarComplex::finite(&b);
        let h2 = Cohomology::compute(&bar, 2, 1).unwrap();
        let zero = Cochain::zero(2, bar.num_tuples(2) * bar.coeffs.rank(), 1);
        let base = build_extension(&b, &zero).unwrap();
        let mut classes = std::collections::BTreeMap::new();
        for f in all_cochains(&bar, 2, 1 << 12).unwrap() {
            if !is_cocycle(&bar, &f).unwrap() {
                continue;
            }
            let p = phi_f_with(&base, &f).unwrap();
            assert!(p.is_cocycle, "{}: {:?}", b.coeffs.describe(), f.values);
            // the class of φ_f depends only on [f]
            let key = h2.classify(&f).unwrap();
            let prev = classes.entry(key).or_insert_with(|| p.class.clone());
            assert_eq!(*prev, p.class);
        }
    }
}

#[test]
fn phi_f_coboundary_shift_has_explicit_witness() {
    let ext = ext_z2(1);
    let b = &ext.band;
    let bar = BarComplex::finite(b);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = phi_f_construct(&ext).unwrap();
    let a = &b.coeffs;
    let na = a.order() as usize;
    for _ in 0..4 {
        let beta = bar.random_cochain(1, 1, &mut rng);
        let db = apply_differential(&bar, &beta).unwrap();
        let f2 = Cochain { values: ext.cocycle.values.iter().zip(&db.values).map(|(x, y)| (x + y) % 2).collect(), ..ext.cocycle.clone() };
        let shifted = phi_f_with(&ext, &f2).unwrap();
        assert_eq!(shifted.class, base.class);
        // φ_{f+dβ} − φ_f = dψ with ψ(x, y) = χ_x(β(q_y))
        let sb = BarComplex::cx(&base.semidirect);
        let elems = a.elements();
        let psi = sb.cochain_from_fn(2, a.exponent(), |t| {
            vec![crate::abelian::dual::pairing(a, &elems[t[0] % na], &bar.value(&beta, &[t[1] / na])) as i64]
        });
        let dpsi = apply_differential(&sb, &psi).unwrap();
        let diff = add_cx(&shifted.datum.omega, &neg_cx(&base.datum.omega));
        let plus = add_cx(&diff, &dpsi);
        let minus = add_cx(&diff, &neg_cx(&dpsi));
        assert!(plus.is_zero() || minus.is_zero());
    }
}

#[test]
fn alpha_vanishes_in_basic_cases() {
    let d4 = dihedral(4).unwrap();
    let v4 = sub(&d4, &[0, 2, 4, 6]);
    let r = conjugation_cocycle_alpha(&PointedFusionDatum::trivial(d4.clone()).graded(v4.clone(), None).unwrap()).unwrap();
    assert!(r.verified() && r.is_zero());
    // ω inflated from the generator of H^3(Z/2) on D4/V4
    let proj = |x: usize| usize::from(!v4.contains(x));
    let w = omega_from(&d4, 2, |a, b, c| (proj(a) * proj(b) * proj(c)) as i64);
    let d = PointedFusionDatum::new(d4.clone(), w).unwrap().graded(v4.clone(), None).unwrap();
    assert!(pentagon_check(&d).holds);
    let r = conjugation_cocycle_alpha(&d).unwrap();
    assert!(r.verified() && r.is_zero());
    assert_eq!(r.structure.order(), 2);
    // cyclic kernels have H^2 = 0
    let z4 = cyclic(4).unwrap();
    let h = Cohomology::compute(&BarComplex::cx(&z4), 3, 1).unwrap();
    let d = PointedFusionDatum::new(z4.clone(), h.representative(&[2])).unwrap().graded(sub(&z4, &[0, 2]), None).unwrap();
    let r = conjugation_cocycle_alpha(&d).unwrap();
    assert!(r.verified() && r.is_zero() && r.structure.order() == 1);
}

#[test]
fn alpha_rejects_untrivialized_restriction() {
    let z4 = cyclic(4).unwrap();
    let h = Cohomology::compute(&BarComplex::cx(&z4), 3, 1).unwrap();
    let d = PointedFusionDatum::new(z4.clone(), h.representative(&[1])).unwrap().graded(sub(&z4, &[0, 2]), None).unwrap();
    assert!(conjugation_cocycle_alpha(&d).is_err());
}

#[test]
fn rep_extension_products() {
    let q = cyclic(2).unwrap();
    let split = ext_z2(0);
    let z4 = ext_z2(1);
    let v4 = elementary_abelian(2, 2).unwrap();
    let c4 = cyclic(4).unwrap();
    let plain = build_rep_extension(&split, &ell_z2(&split, 0), &zero_c(&q)).unwrap();
    assert!(plain.datum().unwrap().dual_total().is_isomorphic(&v4));
    // split with twist ↔ nonsplit untwisted, and Z/4 pairs with itself
    for (ext, ell, expect) in [(&split, 1, &c4), (&z4, 0, &v4), (&z4, 1, &c4)] {
        let l = ell_z2(ext, ell);
        let c = solve_c(ext, &l).unwrap().expect("H^4(Z/2, C^x) = 0");
        let r = build_rep_extension(ext, &l, &c).unwrap();
        let d = r.datum().expect("associative");
        assert!(d.dual_total().is_isomorphic(expect));
    }
}

#[test]
fn rep_extension_violations() {
    // ℓ with dℓ ≠ 0 on Z/3
    let z3 = cyclic(3).unwrap();
    let b = band(&z3, 2, false);
    let zero = Cochain::zero(2, BarComplex::finite(&b).num_tuples(2), 1);
    let ext = build_extension(&b, &zero).unwrap();
    let dm = crate::abelian::dual_group(&b.coeffs, Some(&b)).unwrap().action.unwrap();
    let ell = BarComplex::finite(&dm).cochain_from_fn(2, 1, |t| vec![i64::from(t == [1, 1])]);
    assert!(matches!(build_rep_extension(&ext, &ell, &zero_c(&z3)).unwrap(), RepExtension::ObjectViolation { .. }));
    // c = i at (1,1,1) on Z/2 fails the scalar pentagon
    let q = cyclic(2).unwrap();
    let split = ext_z2(0);
    let c = omega_from(&q, 4, |_, _, _| 1);
    match build_rep_extension(&split, &ell_z2(&split, 0), &c).unwrap() {
        RepExtension::ScalarViolation { quadruple } => assert!(quadruple.iter().all(|&x| x != 0)),
        other => panic!("expected a scalar violation, got {other:?}"),
    }
}

#[test]
fn untwisted_dual_matches_phi_f() {
    for f in [0, 1] {
        let ext = ext_z2(f);
        let q = ext.quotient().clone();
        let r = build_rep_extension(&ext, &ell_z2(&ext, 0), &zero_c(&q)).unwrap();
        let d = r.datum().unwrap();
        let p = phi_f_construct(&ext).unwrap();
        let a = &ext.band.coeffs;
        let na = a.order() as usize;
        let dm = &d.dual_band;
        // (χ, q) ↦ (q, q⁻¹·χ)
        let map: Vec<usize> = (0..d.dual_total().order())
            .map(|x| {
                let (chi, qx) = (a.element(x % na), x / na);
                a.index(&dm.act(q.inv(qx), &chi)) + na * qx
            })
            .collect();
        assert!(d.dual_total().is_hom_to(&p.semidirect, &map));
        let tb = BarComplex::cx(d.dual_total());
        let pulled = tb.pullback(&BarComplex::cx(&p.semidirect), &map, &p.datum.omega);
        assert_eq!(pulled.values, d.dual.omega.values);
    }
}

#[test]
fn dual_of_dual_returns_the_datum() {
    let q = cyclic(2).unwrap();
    for (f, ell) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let ext = ext_z2(f);
        let l = ell_z2(&ext, ell);
        let c = solve_c(&ext, &l).unwrap().unwrap();
        let c = add_cx(&c, &omega_from(&q, 2, |_, _, _| 1));
        let r = build_rep_extension(&ext, &l, &c).unwrap();
        let d = r.datum().unwrap();
        let (base2, l2, c2) = dual_datum(d).unwrap();
        let r2 = build_rep_extension(&base2, &l2, &c2).unwrap();
        let d2 = r2.datum().expect("dual datum is associative");
        let (base3, l3, c3) = dual_datum(d2).unwrap();
        assert_eq!(base3.cocycle, ext.cocycle);
        assert_eq!(base3.band.action, ext.band.action);
        assert_eq!(l3.values, l.values);
        let qb = BarComplex::cx(&q);
        let back = add_cx(&c3, &neg_cx(&c));
        let zero = Cochain::zero(3, back.values.len(), 1);
        assert!(is_cohomologous(&qb, &back, &zero).unwrap().is_some(), "({f},{ell})");
    }
}

#[test]
fn rep_extension_counts() {
    let expect = [(0, 4), (1, 2)];
    for (f, n) in expect {
        let ext = ext_z2(f);
        let c = count_rep_extensions(&ext).unwrap();
        assert_eq!(c.classes, n, "f = {f}: {c:?}");
        let (ker, coker) = sequence_count(&ext).unwrap();
        assert_eq!(ker * coker, n);
    }
    // Z/2 by V4 with trivial action
    let v4 = elementary_abelian(2, 2).unwrap();
    let b = band(&v4, 2, false);
    let zero = Cochain::zero(2, BarComplex::finite(&b).num_tuples(2), 1);
    let ext = build_extension(&b, &zero).unwrap();
    let c = count_rep_extensions(&ext).unwrap();
    let (ker, coker) = sequence_count(&ext).unwrap();
    assert_eq!(c.classes, ker * coker);
}

#[test]
fn extension_from_normal_round_trips() {
    let d4 = dihedral(4).unwrap();
    let s3 = sym(3).unwrap();
    let a4 = alt4();
    for (g, k) in [(d4.clone(), sub(&d4, &[0, 1, 2, 3])), (s3.clone(), SubgroupDatum::derived(&s3)), (a4.clone(), SubgroupDatum::derived(&a4))] {
        let (ext, iso) = extension_from_normal(&g, &k).unwrap();
        assert!(g.is_hom_to(&ext.total, &iso));
        assert_eq!(ext.kernel_order(), k.order());
    }
}

#[test]
fn orthogonal_groups() {
    let o2 = orthogonal_form_group(&FinAbGroup::cyclic(2)).unwrap();
    assert_eq!(o2.order, 2);
    assert_eq!(o2.block_diagonal_order, 1);
    assert_eq!(o2.block_lower_order, 1);
    let o3 = orthogonal_form_group(&FinAbGroup::cyclic(3)).unwrap();
    assert_eq!(o3.block_diagonal_order, 2);
    assert_eq!(o3.order, 4);
    let v4 = orthogonal_form_group(&FinAbGroup::new(vec![2, 2]).unwrap()).unwrap();
    // Aut(V4) = S3 on the diagonal, H^2(V4) ⋊ Aut(V4) below it
    assert_eq!(v4.block_diagonal_order, 6);
    assert_eq!(v4.block_lower_order, 12);
    assert_eq!(v4.order, 72);
    assert!(v4.group.is_some());
}

#[test]
fn diagram_battery() {
    let z4 = cyclic(4).unwrap();
    let v4 = abelian(&[2, 2]).unwrap();
    let d4 = dihedral(4).unwrap();
    let s3 = sym(3).unwrap();
    let cases = [
        (z4.clone(), sub(&z4, &[0, 2])),
        (v4.clone(), sub(&v4, &[0, 1])),
        (d4.clone(), sub(&d4, &[0, 1, 2, 3])),
        (s3.clone(), SubgroupDatum::derived(&s3)),
    ];
    for (g, k) in cases {
        let r = exact_diagram(&g, &k).unwrap();
        assert!(r.holds(), "{} / {}: {:?}", g.name(), k.order(), r.failures());
    }
}

#[test]
fn diagram_with_nonzero_alpha() {
    let d4 = dihedral(4).unwrap();
    let r = exact_diagram(&d4, &sub(&d4, &[0, 2, 4, 6])).unwrap();
    assert!(r.holds(), "{:?}", r.failures());
    assert_eq!(r.h2_kernel_order, 2);
    assert_eq!(r.relative.relative.order(), 4);
    assert_eq!((r.derivations, r.principal), (2, 1));
    // α is onto the non-principal derivation
    assert_eq!(r.alpha_kernel, 2);
    assert_eq!(r.rep_extension_count, Some(2));
}
