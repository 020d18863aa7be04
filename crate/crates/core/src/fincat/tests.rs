use proptest::prelude::*;

use super::*;
use crate::fixtures::{chain3, cyclic_group, idempotent_monoid, klein_four, poset2};

fn mor(c: &FinCat, name: &str) -> MorId {
    c.mor_by_name(name).unwrap()
}

#[test]
fn poset2_is_valid_ordered_with_final_y() {
    let c = poset2();
    assert!(c.validate().is_empty());
    assert!(c.is_ordered());
    assert_eq!(c.final_object(None), c.obj_by_name("Y"));
    assert_eq!(c.num_morphisms(), 3);
}

#[test]
fn identity_law_violation_is_named() {
    let text = "OBJECTS\nX Y\nMORPHISMS\nidX X X\nidY Y Y\nf X Y\nCOMP\nidX idX idX\nidY idY idY\nidY f f\nf idX idY\nIDENT\nX idX\nY idY\n";
    let err = parse_category(text).unwrap().cat.validate();
    assert!(err.iter().any(|v| v.contains("wrong endpoints")));
    assert!(err.iter().any(|v| v == "identity law at f"), "{err:?}");
}

#[test]
fn corrupted_associativity_names_the_triple() {
    let elems: Vec<String> = ["e", "g1", "g2"].iter().map(|s| s.to_string()).collect();
    let mut bad: Vec<Vec<usize>> = (0..3).map(|g| (0..3).map(|f| (g + f) % 3).collect()).collect();
    bad[1][1] = 0;
    let v = crate::fixtures::monoid("Q", &elems, &bad).validate();
    assert!(v.iter().any(|s| s == "associativity fails at (g1, g1, g2)"), "{v:?}");
}

#[test]
fn corrupted_chain3_entry_detected() {
    let c = chain3();
    let mut text = serialize_category(&MarkedCat::with_defaults(c));
    text = text.replace("Y<Z X<Y X<Z", "Y<Z X<Y X<Y");
    let v = parse_category(&text).unwrap().cat.validate();
    assert!(v.iter().any(|s| s.contains("(Y<Z, X<Y)")), "{v:?}");
}

#[test]
fn missing_composite_reported() {
    let text = "OBJECTS\nX\nMORPHISMS\ni X X\nCOMP\nIDENT\nX i\n";
    let v = parse_category(text).unwrap().cat.validate();
    assert!(v.iter().any(|s| s.contains("missing composition")));
}

#[test]
fn dangling_and_unknown_names_are_parse_errors() {
    let e = parse_category("OBJECTS\nX\nMORPHISMS\nf X Y\n").unwrap_err();
    assert_eq!(e, Error::parse(4, "unknown object `Y`"));
    let e = parse_category("OBJECTS\nX\nBOGUS\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }));
    let e = parse_category("OBJECTS\nX\nMORPHISMS\ni X X\nIDENT\n").unwrap_err();
    assert!(matches!(e, Error::Input(_)));
}

#[test]
fn ordered_examples() {
    assert!(cyclic_group(2).is_ordered());
    assert!(!idempotent_monoid().is_ordered());
}

#[test]
fn ordered_implies_endo_groups() {
    for c in [poset2(), chain3(), cyclic_group(3), klein_four()] {
        assert!(c.is_ordered());
        assert_eq!(c.endo_groups_witness(), None);
    }
}

#[test]
fn a_category_examples() {
    let c = poset2();
    assert!(check_a_category(&c, &c.all_morphisms()).ok());
    let g = cyclic_group(2);
    let r = check_a_category(&g, &g.identities());
    assert!(r.ok(), "{:?}", r.violations);
    let a = MorSet::from_iter(3, [mor(&c, "id_X"), mor(&c, "id_Y")]);
    let r = check_a_category(&c, &a);
    assert!(r.violations.iter().any(|v| v.contains("X<Y")));
}

#[test]
fn a_category_factorization_is_cached() {
    let g = cyclic_group(2);
    let r = check_a_category(&g, &g.identities());
    let g1 = mor(&g, "g1");
    assert_eq!(r.factorization[g1.0], Some((g1, mor(&g, "e"))));
}

#[test]
fn rigidity_violation_detected() {
    // A = {id, g1∘?}: make A contain a non-identity iso but not its inverse's peers.
    let g = cyclic_group(3);
    let a = MorSet::from_iter(3, [mor(&g, "e"), mor(&g, "g1")]);
    let r = check_a_category(&g, &a);
    assert!(!r.ok());
}

#[test]
fn interior_examples() {
    let c = klein_four();
    let q = ObjId(0);
    assert!(check_interior(&c, &trivial_structure(&c)).is_empty());
    let all: Vec<Vec<MorId>> = vec![c.endo(q).to_vec()];
    assert!(check_interior(&c, &all).is_empty());
    let not_group = vec![vec![mor(&c, "a")]];
    assert!(!check_interior(&c, &not_group).is_empty());
}

#[test]
fn interior_transport_failure() {
    // X -> Y with Aut(X) = C2 = {1,s}, Aut(Y) trivial, f∘s = f: I(X) = C2
    // transports, but on X <- Y with s∘f ≠ f it cannot.
    let text = "OBJECTS\nX Y\nMORPHISMS\n1 X X\ns X X\nv Y Y\nf Y X\ng Y X\n\
COMP\n1 1 1\ns 1 s\n1 s s\ns s 1\nv v v\nf v f\ng v g\n1 f f\n1 g g\ns f g\ns g f\n\
IDENT\nX 1\nY v\n";
    let m = parse_category(text).unwrap();
    assert!(m.cat.validate().is_empty());
    let i = vec![vec![mor(&m.cat, "1"), mor(&m.cat, "s")], vec![mor(&m.cat, "v")]];
    assert!(check_interior(&m.cat, &i).is_empty());
    let v = check_cointerior(&m.cat, &i);
    assert!(v.iter().any(|s| s.contains("co-interior transport fails for f")), "{v:?}");
}

#[test]
fn quotient_examples() {
    let c = klein_four();
    let q0 = ObjId(0);
    let sub = |names: &[&str]| c.subgroup_closure(q0, &names.iter().map(|n| mor(&c, n)).collect::<Vec<_>>());
    let q = bi_exterior_quotient(&c, &[sub(&["a"])], &[sub(&["b"])]).unwrap();
    assert_eq!(q.cat.num_morphisms(), 1);
    assert!(q.cat.validate().is_empty());

    let t = bi_exterior_quotient(&c, &trivial_structure(&c), &trivial_structure(&c)).unwrap();
    assert_eq!(t.cat.num_morphisms(), 4);
    assert_eq!(t.e, (0..4).map(MorId).collect::<Vec<_>>());

    let g = cyclic_group(2);
    assert_eq!(g.final_object(None), None);
    let q = bi_exterior_quotient(&g, &[g.endo(ObjId(0)).to_vec()], &trivial_structure(&g)).unwrap();
    assert_eq!(q.cat.num_morphisms(), 1);
    assert_eq!(q.cat.final_object(None), Some(ObjId(0)));
}

#[test]
fn non_centralizing_pair_rejected() {
    // S3 with I = I° = the subgroup of order 2: it does not centralize itself? It does
    // (abelian); use I = <(12)>, I° = <(13)> which do not commute.
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let compose = |g: &[usize; 3], f: &[usize; 3]| [g[f[0]], g[f[1]], g[f[2]]];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|g| perms.iter().map(|f| perms.iter().position(|h| *h == compose(g, f)).unwrap()).collect())
        .collect();
    let names: Vec<String> = (0..6).map(|i| format!("p{i}")).collect();
    let c = crate::fixtures::monoid("Q", &names, &table);
    let i = vec![vec![MorId(0), MorId(1)]];
    let io = vec![vec![MorId(0), MorId(2)]];
    let e = bi_exterior_quotient(&c, &i, &io).unwrap_err();
    assert!(matches!(e, Error::Precondition { .. }));
}

#[test]
fn semidirect_examples() {
    let g = cyclic_group(2);
    let swap = SetFunctor { sizes: vec![2], maps: vec![vec![0, 1], vec![1, 0]] };
    let sd = semidirect_product(&swap, &g).unwrap();
    assert!(sd.cat.validate().is_empty());
    assert_eq!(sd.cat.num_objects(), 2);
    for a in sd.cat.objects() {
        for b in sd.cat.objects() {
            assert_eq!(sd.cat.hom(a, b).len(), 1);
        }
    }
    let pt = semidirect_product(&SetFunctor::constant_point(&g), &g).unwrap();
    assert_eq!(pt.cat.num_morphisms(), 2);
    assert_eq!(pt.cat.num_objects(), 1);

    let c = poset2();
    let s = SetFunctor { sizes: vec![0, 3], maps: vec![vec![], vec![], vec![0, 1, 2]] };
    let sd = semidirect_product(&s, &c).unwrap();
    assert_eq!(sd.cat.num_objects(), 3);
    assert!(sd.cat.validate().is_empty());
}

#[test]
fn non_functorial_set_functor_rejected() {
    let g = cyclic_group(2);
    let s = SetFunctor { sizes: vec![2], maps: vec![vec![1, 0], vec![1, 0]] };
    assert!(!s.validate(&g).is_empty());
    assert!(semidirect_product(&s, &g).is_err());
}

#[test]
fn serialization_round_trip_keeps_validity() {
    for c in [poset2(), chain3(), cyclic_group(3), klein_four(), idempotent_monoid()] {
        let m = MarkedCat::with_defaults(c);
        let text = serialize_category(&m);
        let back = parse_category(&text).unwrap();
        assert!(back.cat.validate().is_empty());
        assert_eq!(serialize_category(&back), text);
    }
}

#[test]
fn markings_parse_with_star_and_generators() {
    let g = cyclic_group(3);
    let full = serialize_category(&MarkedCat::with_defaults(g));
    let mut text = full[..full.find("A\n").unwrap()].to_string();
    text.push_str("A\ne\nG\n*\nINTERIOR\nQ g1\n");
    let m = parse_category(&text).unwrap();
    assert_eq!(m.a.len(), 1);
    assert_eq!(m.g.len(), 3);
    assert_eq!(m.interior[0].len(), 3);
}

proptest! {
    #[test]
    fn quotient_functor_preserves_composition(n in 2usize..7, k in 1usize..4) {
        // C_n modulo the subgroup generated by g^k.
        let c = cyclic_group(n);
        let q0 = ObjId(0);
        let i = vec![c.subgroup_closure(q0, &[MorId(k % n)])];
        let q = bi_exterior_quotient(&c, &i, &trivial_structure(&c)).unwrap();
        prop_assert!(q.cat.validate().is_empty());
        let d = num_integer::gcd(k % n, n);
        let d = if k % n == 0 { n } else { d };
        prop_assert_eq!(q.cat.num_morphisms(), d);
        for f in c.morphisms() {
            for g in c.morphisms() {
                prop_assert_eq!(q.e[c.comp(g, f).0], q.cat.comp(q.e[g.0], q.e[f.0]));
            }
        }
    }

    #[test]
    fn semidirect_object_count_is_fiber_sum(sizes in proptest::collection::vec(0usize..4, 3)) {
        let c = chain3();
        // Constant-ish functor: every arrow sends t to min(t, size of target - 1).
        let mut sizes = sizes;
        for i in 1..3 { if sizes[i] < sizes[i - 1] { sizes[i] = sizes[i - 1]; } }
        let maps = c.morphisms().map(|m| (0..sizes[c.src(m).0]).collect()).collect();
        let s = SetFunctor { sizes: sizes.clone(), maps };
        let sd = semidirect_product(&s, &c).unwrap();
        prop_assert_eq!(sd.cat.num_objects(), sizes.iter().sum::<usize>());
        prop_assert!(sd.cat.validate().is_empty());
    }
}
