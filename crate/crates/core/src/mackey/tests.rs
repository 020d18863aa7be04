use num_bigint::BigInt;

use super::*;
use crate::abgrp::{ModHom, Ring};
use crate::fincat::ObjId;
use crate::group::Group;

fn regular(p: usize) -> MackeySystem {
    let gd = GroupData::regular(&Group::cyclic(p), 1).unwrap();
    mackey_system(&transporter_categories(&gd, None).unwrap(), None).unwrap()
}

fn s3_with(p: usize) -> MackeySystem {
    let (g, perms) = Group::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let gen = if p == 2 { vec![1, 0, 2] } else { vec![1, 2, 0] };
    let x = perms.iter().position(|q| *q == gen).unwrap();
    let gd = GroupData::group_biset(&g, g.closure(&[x])).unwrap();
    mackey_system(&transporter_categories(&gd, None).unwrap(), None).unwrap()
}

fn klein_regular() -> MackeySystem {
    let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let g = Group::from_table(table, None).unwrap();
    let gd = GroupData::regular(&g, 1).unwrap();
    mackey_system(&transporter_categories(&gd, None).unwrap(), None).unwrap()
}

#[test]
fn transporter_hom_sets_have_the_expected_sizes() {
    let ms = s3_with(3);
    let tr = &ms.tr;
    let g = &tr.gd.g;
    let all: Vec<usize> = g.elements().collect();
    for r in tr.cat().objects() {
        for q in tr.cat().objects() {
            let n = g.transporter(&tr.subgroups[r.0], &tr.subgroups[q.0], &all).len();
            assert_eq!(tr.cat().hom(r, q).len(), n * tr.gd.p.len());
        }
    }
    assert!(tr.structure_violations().unwrap().is_empty());
    assert!(tr.fusion_quotient().unwrap().cat.is_ordered());
}

#[test]
fn regular_biset_stabilizers_are_diagonals() {
    for p in [2, 3] {
        let ms = regular(p);
        let big = ms.tr.object_of(&ms.tr.gd.p).unwrap();
        let e = ms.tr.gd.g.identity();
        for w in 0..p {
            let st = stabilizer_data(&ms.tr, big, w).unwrap();
            assert_eq!(st.sub, big);
            let g = &ms.tr.gd.g;
            for v in g.elements() {
                let q = g.conj(st.twist, v);
                assert_eq!(ms.tr.gd.bi(q, w, v), w);
            }
        }
        assert_eq!(stabilizer_data(&ms.tr, big, e).unwrap().twist, e);
        let trivial = ms.tr.object_of(&[e]).unwrap();
        assert_eq!(stabilizer_data(&ms.tr, trivial, 0).unwrap().sub, trivial);
    }
}

#[test]
fn non_basic_biset_is_rejected() {
    let g = Group::cyclic(2);
    let gd = GroupData::new(g.clone(), vec![0, 1], 1, vec![vec![0], vec![0]], vec![vec![0], vec![0]]).unwrap();
    let tr = transporter_categories(&gd, None).unwrap();
    let err = mackey_system(&tr, None).unwrap_err();
    assert!(err.to_string().contains("twisted diagonal"), "{err}");
    assert!(err.witness().is_some());
}

#[test]
fn systems_validate() {
    for ms in [regular(2), regular(3), s3_with(2), s3_with(3), klein_regular()] {
        let v = validate_mackey(&ms).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }
}

#[test]
fn identity_square_is_degenerate() {
    let ms = regular(3);
    let qc = ms.system.qcat();
    for q in qc.objects() {
        let sq = special_square(&ms, qc.id(q), qc.id(q)).unwrap();
        assert_eq!(sq.w, vec![ms.tr.gd.g.identity()]);
        assert_eq!(sq.u, vec![q]);
        assert!(sq.commutation_witness(&ms).is_none());
    }
}

#[test]
fn klein_square_counts_double_cosets() {
    let ms = klein_regular();
    let qc = ms.system.qcat();
    let tr = &ms.tr;
    let big = tr.object_of(&tr.gd.p).unwrap();
    let twos: Vec<ObjId> = qc.objects().filter(|&o| ms.order(o) == 2).collect();
    let (r, t) = (twos[0], twos[1]);
    let al = qc.hom(r, big)[0];
    let be = qc.hom(t, big)[0];
    let sq = special_square(&ms, al, be).unwrap();
    let g = &tr.gd.g;
    let mut cosets: Vec<Vec<usize>> =
        g.elements().map(|w| g.double_coset(&tr.subgroups[r.0], w, &tr.subgroups[t.0])).collect();
    cosets.sort();
    cosets.dedup();
    assert_eq!(sq.w.len(), cosets.len());
    assert!(sq.u.iter().all(|&u| ms.order(u) == 1));
    assert!(sq.commutation_witness(&ms).is_none());
}

#[test]
fn special_squares_commute_and_pull_backs_are_universal() {
    for ms in [regular(2), s3_with(2), s3_with(3), klein_regular()] {
        let qc = ms.system.qcat();
        for q in qc.objects() {
            for &a in qc.incoming(q) {
                for &b in qc.incoming(q) {
                    assert!(special_square(&ms, a, b).unwrap().commutation_witness(&ms).is_none());
                }
            }
        }
        let (cones, v) = check_pull_backs(&ms).unwrap();
        assert!(v.is_empty(), "{v:?}");
        assert!(cones > 0);
    }
}

#[test]
fn wrong_representative_is_rejected() {
    let ms = klein_regular();
    let qc = ms.system.qcat();
    let e = ms.tr.gd.g.identity();
    let m = qc.morphisms().find(|&m| !qc.is_identity(m) && qc.src(m) != qc.dst(m)).unwrap();
    let id = qc.id(qc.dst(m));
    assert!(special_square_with(&ms, m, id, e, e).is_ok());
    assert!(special_square_with(&ms, id, id, 5, e).is_err());
    let ms = s3_with(3);
    let qc = ms.system.qcat();
    let big = ms.tr.object_of(&ms.tr.gd.p).unwrap();
    let id = qc.id(big);
    let outside = ms.tr.gd.g.elements().find(|x| !ms.tr.gd.p.contains(x)).unwrap();
    let err = special_square_with(&ms, id, id, outside, ms.tr.gd.g.identity()).unwrap_err();
    assert!(err.witness().unwrap().contains("does not represent"));
}

#[test]
fn constant_complement_is_compatible_and_scaled_one_is_not() {
    let ring = Ring::Modular { p: 3, k: 2 };
    let ms = s3_with(3);
    let c = constant_coefficients(&ms, &ring);
    assert!(check_compatible_complement(&ms, &c.functor, &c.complement).unwrap().is_empty());
    let qc = ms.system.qcat();
    let f = qc.morphisms().find(|&f| ms.order(qc.dst(f)) > ms.order(qc.src(f))).unwrap();
    let mut bad = c.complement.clone();
    bad.on_mor[f.0] = bad.on_mor[f.0].scale(&BigInt::from(2));
    let v = check_compatible_complement(&ms, &c.functor, &bad).unwrap();
    assert!(v.iter().any(|w| w.contains("|Q|/|R|") && w.contains(qc.mor_name(f))), "{v:?}");
}

#[test]
fn center_complement_is_compatible() {
    for p in [2, 3] {
        let ms = regular(p);
        let c = center_coefficients(&ms).unwrap();
        let e = ms.tr.gd.g.identity();
        let one = ms.tr.object_of(&[e]).unwrap();
        assert!(c.functor.obj(one).is_trivial());
        assert!(check_compatible_complement(&ms, &c.functor, &c.complement).unwrap().is_empty());
    }
}

#[test]
fn section_is_a_section_and_independent_of_representatives() {
    for (ms, ring) in [
        (regular(2), Ring::Modular { p: 2, k: 2 }),
        (s3_with(3), Ring::Modular { p: 3, k: 1 }),
        (s3_with(2), Ring::Modular { p: 2, k: 1 }),
    ] {
        let c = constant_coefficients(&ms, &ring);
        let h = crate::homotopy::build_h_functor(&ms.system, &c.functor).unwrap();
        let theta = mackey_section(&ms, &c, &h, &ring, OrbitChoice::Least).unwrap();
        assert!(crate::homotopy::check_section(&ms.system, &c.functor, &h, &theta).unwrap().is_empty());
        assert!(representative_independence(&ms, &c, &h, &ring).unwrap().is_none());
    }
}

#[test]
fn non_unit_scalar_is_rejected() {
    let gd = GroupData::regular(&Group::cyclic(2), 2).unwrap();
    let ms = mackey_system(&transporter_categories(&gd, None).unwrap(), None).unwrap();
    let ring = Ring::Modular { p: 2, k: 1 };
    let c = constant_coefficients(&ms, &ring);
    let h = crate::homotopy::build_h_functor(&ms.system, &c.functor).unwrap();
    let err = mackey_section(&ms, &c, &h, &ring, OrbitChoice::Least).unwrap_err();
    assert!(err.to_string().contains("unit"), "{err}");
    assert!(err.witness().unwrap().contains("change p, k or Ω"));
}

#[test]
fn pipeline_on_cyclic_groups() {
    for p in [2u64, 3] {
        let ms = regular(p as usize);
        let ring = Ring::Modular { p, k: 1 };
        for c in [constant_coefficients(&ms, &ring), center_coefficients(&ms).unwrap()] {
            let rep = verify_mackey(&ms, &c, &ring, 2).unwrap();
            assert!(rep.ok(), "{}", rep.render());
            assert_eq!(rep.cohomology.len(), 3);
        }
    }
}

#[test]
fn pipeline_with_nontrivial_fusion() {
    let ms = s3_with(2);
    let ring = Ring::Modular { p: 2, k: 2 };
    let rep = verify_mackey(&ms, &constant_coefficients(&ms, &ring), &ring, 2).unwrap();
    assert!(rep.ok(), "{}", rep.render());
}

#[test]
fn broken_complement_stops_before_cohomology() {
    let ms = regular(2);
    let ring = Ring::Modular { p: 2, k: 2 };
    let mut c = constant_coefficients(&ms, &ring);
    let qc = ms.system.qcat();
    let f = qc.morphisms().find(|&f| ms.order(qc.dst(f)) > ms.order(qc.src(f))).unwrap();
    c.complement.on_mor[f.0] = ModHom::zero(c.functor.obj(qc.src(f)), c.functor.obj(qc.dst(f)));
    let rep = verify_mackey(&ms, &c, &ring, 2).unwrap();
    assert!(!rep.ok());
    assert!(rep.cohomology.is_empty());
}

#[test]
fn group_files_parse() {
    let text = "group perm\ngen 1 2 0\np-gen [1,2,0]\nomega regular\ncoefficients center\n";
    let (gd, kind) = parse_group_data(text).unwrap();
    assert_eq!((gd.prime, gd.omega, kind), (3, 3, CoefficientKind::Center));
    let text = "group table\nrow 0 1\nrow 1 0\np-gen 1\nomega 2\nact 1 1 0\nright 1 1 0\n";
    let (gd2, _) = parse_group_data(text).unwrap();
    assert_eq!(gd2, GroupData::regular(&Group::cyclic(2), 1).unwrap());
    let bad = "group table\nrow 0 1\nrow 1 0\np-gen 1\nomega 3\nact 1 1 2 0\nright 1 0 1 2\n";
    assert!(parse_group_data(bad).is_err());
    assert!(parse_group_data("group table\nrow 0\nfoo\n").unwrap_err().to_string().contains("line 3"));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(8))]

    #[test]
    fn cyclic_p_groups_contract(p in proptest::sample::select(vec![2u64, 3]), e in 1u32..=2, k in 1u32..=2, center: bool) {
        let gd = GroupData::regular(&Group::cyclic(p.pow(e) as usize), 1).unwrap();
        let ms = mackey_system(&transporter_categories(&gd, None).unwrap(), None).unwrap();
        let ring = if center { Ring::Integers } else { Ring::Modular { p, k } };
        let c = if center { center_coefficients(&ms).unwrap() } else { constant_coefficients(&ms, &ring) };
        let rep = verify_mackey(&ms, &c, &ring, 2).unwrap();
        if center && e > 1 {
            proptest::prop_assert!(rep.checks.iter().any(|c| c.0 == "complement" && !c.1), "{}", rep.render());
        } else {
            proptest::prop_assert!(rep.ok(), "{}", rep.render());
        }
    }
}
