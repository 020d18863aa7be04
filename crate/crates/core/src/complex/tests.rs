use super::*;
use crate::abgrp::FgMod;
use crate::fincat::{bi_exterior_quotient, trivial_structure, CatBuilder};
use crate::fixtures::*;
use proptest::prelude::*;

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `C_n` acting on `Z/m` through `g ↦ g^k` multiplication by `u^k`.
fn cyclic_action(n: usize, m: i64, u: i64) -> (FinCat, ContraFun) {
    let cat = cyclic_group(n);
    let md = FgMod::cyclic(m);
    let mors = cat
        .morphisms()
        .map(|f| {
            let k = cat.mor_name(f).trim_start_matches('g').parse::<u32>().unwrap_or(0);
            ModHom::scalar(&md, &BigInt::from(u.pow(k)))
        })
        .collect();
    let f = ContraFun::new(&cat, vec![md; 1], mors).unwrap();
    (cat, f)
}

fn z_negation() -> (FinCat, ContraFun) {
    let cat = cyclic_group(2);
    let z = FgMod::free(1);
    let mors = cat.morphisms().map(|f| ModHom::scalar(&z, &BigInt::from(if cat.is_identity(f) { 1 } else { -1 }))).collect();
    let f = ContraFun::new(&cat, vec![z], mors).unwrap();
    (cat, f)
}

fn groupoid2() -> FinCat {
    let mut b = CatBuilder::new();
    let x = b.object("X");
    let y = b.object("Y");
    let ix = b.morphism("id_X", x, x);
    let iy = b.morphism("id_Y", y, y);
    let f = b.morphism("f", x, y);
    let g = b.morphism("f'", y, x);
    b.identity(x, ix);
    b.identity(y, iy);
    for (h, k, r) in [(iy, iy, iy), (ix, ix, ix), (f, ix, f), (iy, f, f), (g, iy, g), (ix, g, g), (g, f, ix), (f, g, iy)] {
        b.compose(h, k, r);
    }
    b.build().unwrap()
}

#[test]
fn chain_counts() {
    let p = poset2();
    assert_eq!(enumerate_chains(&p, 0, 4).unwrap().len(), 2);
    assert_eq!(enumerate_chains(&p, 1, 4).unwrap().len(), 3);
    assert_eq!(enumerate_chains(&cyclic_group(2), 2, 4).unwrap().len(), 4);
    assert!(matches!(enumerate_chains(&p, 5, 4), Err(Error::Limit(_))));
}

#[test]
fn faces_of_small_chains() {
    let c = chain3();
    let f = c.mor_by_name("X<Y").unwrap();
    let g = c.mor_by_name("Y<Z").unwrap();
    let one = Chain::from_arrows(&c, &[f]).unwrap();
    assert_eq!(one.face(&c, 0).unwrap(), Chain::point(c.obj_by_name("Y").unwrap()));
    let two = Chain::from_arrows(&c, &[f, g]).unwrap();
    assert_eq!(two.face(&c, 1).unwrap().arrows, vec![c.mor_by_name("X<Z").unwrap()]);
    assert!(two.face(&c, 3).is_err());
    assert!(Chain::from_arrows(&c, &[g, f]).is_err());
}

#[test]
fn simplicial_identities() {
    for cat in [chain3(), cyclic_group(3), klein_four()] {
        for n in 2..=3 {
            for r in enumerate_chains(&cat, n, 4).unwrap() {
                for j in 1..=n {
                    for i in 0..j {
                        let a = r.face(&cat, j).unwrap().face(&cat, i).unwrap();
                        let b = r.face(&cat, i).unwrap().face(&cat, j - 1).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn dd_vanishes_on_fixtures() {
    let (fm, z) = fusion_s4_marked();
    let (c2, neg) = cyclic_action(2, 4, -1);
    let p = poset2();
    let cases = vec![
        (p.clone(), ContraFun::constant(&p, &FgMod::free(1))),
        (c2, neg),
        (fm.cat, z),
        (chain3(), ContraFun::constant(&chain3(), &FgMod::from_orders(&[0, 3]))),
    ];
    for (cat, f) in cases {
        let sc = StandardComplex::new(&cat, &f, 4, 4).unwrap();
        for n in 0..=2 {
            sc.check_dd(n).unwrap();
        }
    }
}

#[test]
fn poset_differential_matches_nerve() {
    let p = poset2();
    let sc = StandardComplex::new(&p, &ContraFun::constant(&p, &FgMod::free(1)), 1, 4).unwrap();
    let x = sc.space(0).index_of(&Chain::point(p.obj_by_name("X").unwrap())).unwrap();
    let a = sc.basis_cochain(0, x, 0);
    let d = sc.differential(&a);
    let indicator = |o: ObjId| if o == p.obj_by_name("X").unwrap() { 1 } else { 0 };
    for (i, r) in sc.space(1).chains.iter().enumerate() {
        let expect = indicator(r.objs[1]) - indicator(r.objs[0]);
        assert_eq!(d.values[i], bi(&[expect]), "at {}", r.describe(&p));
    }
}

#[test]
fn decomposition_cases() {
    let p = poset2();
    let sc = StandardComplex::new(&p, &ContraFun::constant(&p, &FgMod::free(1)), 2, 4).unwrap();
    let orbits = sc.g_stable_decomposition(2, &p.identities(), false);
    assert_eq!(orbits.len(), sc.space(2).len());
    assert!(orbits.iter().all(|o| o.automorphisms.is_empty()));

    let m = grp_c2_marked();
    let sc = StandardComplex::new(&m.cat, &ContraFun::constant(&m.cat, &FgMod::free(1)), 0, 4).unwrap();
    let orbits = sc.g_stable_decomposition(0, &m.g, false);
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0].automorphisms, vec![m.cat.mor_by_name("g1").unwrap()]);

    let gp = groupoid2();
    let sc = StandardComplex::new(&gp, &ContraFun::constant(&gp, &FgMod::free(1)), 1, 4).unwrap();
    assert_eq!(sc.g_stable_decomposition(0, &gp.all_isos(), false).len(), 1);
    assert_eq!(sc.g_stable_decomposition(1, &gp.all_isos(), false).len(), 1);
}

#[test]
fn orbit_transports_are_natural_isomorphisms() {
    let (fm, z) = fusion_s4_marked();
    let g = fm.cat.all_isos();
    let sc = StandardComplex::new(&fm.cat, &z, 2, 4).unwrap();
    for n in 0..=2 {
        for o in sc.g_stable_decomposition(n, &g, false) {
            let rep = &sc.space(n).chains[o.rep];
            for &(j, c) in &o.members {
                let q = &sc.space(n).chains[j];
                assert_eq!(fm.cat.src(c), q.start());
                assert_eq!(fm.cat.dst(c), rep.start());
                // Extend c to a full natural isomorphism by transporting along the arrows.
                let mut comps = vec![c];
                let mut ok = true;
                for i in 1..=n {
                    let want = fm.cat.hom(q.objs[i], rep.objs[i]).iter().copied().find(|&x| {
                        g.contains(x) && fm.cat.comp(x, q.arrows[i - 1]) == fm.cat.comp(rep.arrows[i - 1], comps[i - 1])
                    });
                    match want {
                        Some(x) => comps.push(x),
                        None => ok = false,
                    }
                }
                assert!(ok);
                let iso = ChainIso { src: q.clone(), dst: rep.clone(), components: comps };
                assert_eq!(iso.violation(&fm.cat, &g), None);
            }
        }
    }
}

#[test]
fn stable_modules_in_degree_zero() {
    let m = grp_c2_marked();
    let (c2, neg) = z_negation();
    let sc = StandardComplex::new(&c2, &neg, 0, 4).unwrap();
    assert!(sc.stable_module(0, &m.g, false).unwrap().module.is_trivial());
    let triv = ContraFun::constant(&c2, &FgMod::free(1));
    let sc = StandardComplex::new(&c2, &triv, 0, 4).unwrap();
    assert_eq!(sc.stable_module(0, &m.g, false).unwrap().module.iso_type().to_string(), "Z");
    let sc = StandardComplex::new(&c2, &triv, 2, 4).unwrap();
    let full = sc.space(2).module(&triv);
    assert_eq!(sc.stable_module(2, &c2.identities(), false).unwrap().module.iso_type(), full.iso_type());
}

#[test]
fn poset_cohomology() {
    let p = poset2();
    let f = ContraFun::constant(&p, &FgMod::free(1));
    assert_eq!(stable_cohomology(&p, &p.identities(), &f, 0, 4).unwrap().iso_type().to_string(), "Z");
    assert!(stable_cohomology(&p, &p.identities(), &f, 1, 4).unwrap().is_trivial());
    assert!(stable_cohomology(&p, &p.identities(), &f, 2, 4).unwrap().is_trivial());
}

/// `|Z^1| / |B^1|` by enumerating every stable cochain.
fn brute_force_h1_order(sc: &StableComplex) -> usize {
    let c = &sc.complex;
    let z1: Vec<Vec<BigInt>> = sc.stable[1]
        .module
        .elements()
        .unwrap()
        .into_iter()
        .filter(|x| c.differential(&c.embed(&sc.stable[1], x)).is_zero(c.space(2), &c.functor))
        .collect();
    let mut b1: Vec<Vec<BigInt>> = sc.stable[0]
        .module
        .elements()
        .unwrap()
        .into_iter()
        .map(|x| c.stable_coords(&sc.stable[1], &c.differential(&c.embed(&sc.stable[0], &x))).unwrap())
        .map(|v| sc.stable[1].module.reduce(&v))
        .collect();
    b1.sort();
    b1.dedup();
    z1.len() / b1.len()
}

#[test]
fn group_cohomology_of_c2() {
    let (c2, neg4) = cyclic_action(2, 4, -1);
    // With G trivial the standard complex is the bar complex of C2.
    let sc = StableComplex::new(&c2, &c2.identities(), &neg4, 3, 4).unwrap();
    assert_eq!(sc.cohomology(0).unwrap().iso_type().to_string(), "Z/2");
    assert_eq!(sc.cohomology(1).unwrap().iso_type().to_string(), "Z/2");
    assert_eq!(brute_force_h1_order(&sc), 2);

    // Crossed homomorphisms C2 -> Z/4 modulo principal ones.
    let crossed = (0..4).filter(|&x| (x + (4 - x)) % 4 == 0).count();
    let principal: std::collections::BTreeSet<i64> = (0..4).map(|x: i64| (-x - x).rem_euclid(4)).collect();
    assert_eq!(crossed / principal.len(), 2);

    let triv = ContraFun::constant(&c2, &FgMod::free(1));
    assert!(stable_cohomology(&c2, &c2.identities(), &triv, 1, 4).unwrap().is_trivial());
    assert_eq!(stable_cohomology(&c2, &c2.identities(), &triv, 2, 4).unwrap().iso_type().to_string(), "Z/2");
}

#[test]
fn full_g_stability_collapses_one_object_groups() {
    // Every chain over an abelian one-object group is G-isomorphic to every
    // other chain of its degree, so C^n_G is M^G in each degree.
    let m = grp_c2_marked();
    let (c2, neg4) = cyclic_action(2, 4, -1);
    let sc = StableComplex::new(&c2, &m.g, &neg4, 3, 4).unwrap();
    for n in 0..=3 {
        assert_eq!(sc.stable[n].orbits.len(), 1);
        assert_eq!(sc.stable[n].module.iso_type().to_string(), "Z/2");
    }
    assert_eq!(sc.cohomology(0).unwrap().iso_type().to_string(), "Z/2");
    assert!(sc.cohomology(1).unwrap().is_trivial());
    assert_eq!(brute_force_h1_order(&sc), 1);
    let triv = ContraFun::constant(&c2, &FgMod::free(1));
    assert!(stable_cohomology(&c2, &m.g, &triv, 1, 4).unwrap().is_trivial());
}

#[test]
fn representative_choice_does_not_matter() {
    let (fm, z) = fusion_s4_marked();
    let g = fm.cat.all_isos();
    let a = StableComplex::build(&fm.cat, &g, &z, 3, 4, false).unwrap();
    let b = StableComplex::build(&fm.cat, &g, &z, 3, 4, true).unwrap();
    for n in 0..=3 {
        assert_eq!(a.stable[n].module.iso_type(), b.stable[n].module.iso_type());
    }
    for n in 0..=2 {
        assert_eq!(a.cohomology(n).unwrap().iso_type(), b.cohomology(n).unwrap().iso_type());
    }
}

#[test]
fn non_stable_cochain_is_rejected_with_witness() {
    let m = grp_c2_marked();
    let (c2, neg) = cyclic_action(2, 4, -1);
    let sc = StandardComplex::new(&c2, &neg, 1, 4).unwrap();
    let st = sc.stable_module(0, &m.g, false).unwrap();
    let a = sc.basis_cochain(0, 0, 0);
    let err = sc.stable_coords(&st, &a).unwrap_err();
    assert!(err.witness().unwrap().contains("moved by g1"), "{err}");
}

#[test]
fn quotient_identification() {
    let m = grp_c2_marked();
    let c2 = &m.cat;
    let q = bi_exterior_quotient(c2, &[c2.endo(ObjId(0)).to_vec()], &trivial_structure(c2)).unwrap();
    let ta = ContraFun::constant(&q.cat, &FgMod::free(1));
    let a = ta.pull_back(c2, &q.e);
    let base = StableComplex::new(c2, &m.g, &a, 2, 4).unwrap();
    let quot = StableComplex::new(&q.cat, &q.image_set(&m.g), &ta, 2, 4).unwrap();
    for n in 0..=2 {
        let id = identify_quotient_cochains(&base, &quot, &q, n).unwrap();
        assert!(id.is_inverse_pair());
        assert_eq!(base.stable[n].module.iso_type(), quot.stable[n].module.iso_type());
    }
    for n in 0..2 {
        let lo = identify_quotient_cochains(&base, &quot, &q, n).unwrap();
        let hi = identify_quotient_cochains(&base, &quot, &q, n + 1).unwrap();
        assert_eq!(hi.to_base.compose(&quot.diffs[n]), base.diffs[n].compose(&lo.to_base));
    }

    let p = poset2();
    let trivial = Quotient::identity(&p);
    let f = ContraFun::constant(&p, &FgMod::free(1));
    let sc = StableComplex::new(&p, &p.identities(), &f, 1, 4).unwrap();
    let id = identify_quotient_cochains(&sc, &sc, &trivial, 1).unwrap();
    assert_eq!(id.to_base, ModHom::identity(&sc.stable[1].module));
}

#[test]
fn cohomology_table_lists_degrees() {
    let p = poset2();
    let sc = StableComplex::new(&p, &p.identities(), &ContraFun::constant(&p, &FgMod::free(1)), 2, 4).unwrap();
    assert_eq!(cohomology_table(&sc, 1).unwrap(), "degree  H^n\n0       Z\n1       0\n");
}

proptest! {
    #[test]
    fn dd_vanishes_on_random_cochains(n in 1usize..5, m in 2i64..7, u in 1i64..6, seed in proptest::collection::vec(-20i64..20, 64)) {
        prop_assume!(u % m != 0);
        // u must have order dividing n modulo m for the action to be a functor.
        let (cat, f) = cyclic_action(n, m, u);
        prop_assume!(f.validate(&cat).is_empty());
        let sc = StandardComplex::new(&cat, &f, 3, 4).unwrap();
        for deg in 0..=1 {
            let mut a = sc.zero(deg);
            for (i, v) in a.values.iter_mut().enumerate() {
                v[0] = BigInt::from(seed[i % seed.len()]);
            }
            let dd = sc.differential(&sc.differential(&a));
            prop_assert!(dd.is_zero(sc.space(deg + 2), &f));
        }
    }

    #[test]
    fn stable_modules_independent_of_representatives(n in 1usize..5, m in 2i64..7, u in 1i64..6) {
        let (cat, f) = cyclic_action(n, m, u);
        prop_assume!(f.validate(&cat).is_empty());
        let g = cat.all_isos();
        let a = StableComplex::build(&cat, &g, &f, 2, 4, false).unwrap();
        let b = StableComplex::build(&cat, &g, &f, 2, 4, true).unwrap();
        for d in 0..=2 {
            prop_assert_eq!(a.stable[d].module.iso_type(), b.stable[d].module.iso_type());
        }
        prop_assert_eq!(a.cohomology(1).unwrap().iso_type(), b.cohomology(1).unwrap().iso_type());
    }
}
