//! Small bundled categories and functors used by tests, the acceptance
//! suite and `export-fixtures`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::abgrp::{FgMod, IntMatrix, ModHom};
use crate::fincat::{CatBuilder, FinCat, MarkedCat, MorId, MorSet, ObjId};
use crate::functorlib::ContraFun;
use crate::group::{Group, Subgroup};

/// Poset category on `names` with a unique arrow `i -> j` whenever `leq(i, j)`.
/// Arrows are named `i<j`, identities `id_i`.
pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let n = names.len();
    let mut b = CatBuilder::new();
    let objs: Vec<ObjId> = names.iter().map(|s| b.object(*s)).collect();
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || leq(i, j) {
                let name = if i == j { format!("id_{}", names[i]) } else { format!("{}<{}", names[i], names[j]) };
                arrow[i][j] = Some(b.morphism(name, objs[i], objs[j]));
            }
        }
    }
    for i in 0..n {
        b.identity(objs[i], arrow[i][i].unwrap());
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (arrow[i][j], arrow[j][k], arrow[i][k]) {
                    b.compose(g, f, h);
                }
            }
        }
    }
    b.build().expect("poset fixture")
}

/// One-object category on a monoid given by `table[g][f] = g ∘ f`, with
/// element 0 the identity.
pub fn monoid(obj: &str, elems: &[String], table: &[Vec<usize>]) -> FinCat {
    let mut b = CatBuilder::new();
    let o = b.object(obj);
    let mors: Vec<MorId> = elems.iter().map(|e| b.morphism(e.clone(), o, o)).collect();
    b.identity(o, mors[0]);
    for (g, row) in table.iter().enumerate() {
        for (f, &h) in row.iter().enumerate() {
            b.compose(mors[g], mors[f], mors[h]);
        }
    }
    b.build().expect("monoid fixture")
}

/// The cyclic group `C_n` as a one-object category; element `i` is `g^i`.
pub fn cyclic_group(n: usize) -> FinCat {
    let elems: Vec<String> = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
    monoid("Q", &elems, &table)
}

/// `X -> Y`.
pub fn poset2() -> FinCat {
    poset(&["X", "Y"], |i, j| i <= j)
}

/// `X -> Y -> Z`.
pub fn chain3() -> FinCat {
    poset(&["X", "Y", "Z"], |i, j| i <= j)
}

/// A bottom `e` below `a` and `b`, each below both `c` and `d`. Every
/// morphism is epi, yet `e` factors through both lower bounds of `c, d`.
pub fn bowtie() -> FinCat {
    poset(&["e", "a", "b", "c", "d"], |i, j| i == j || i == 0 || (i < 3 && j >= 3))
}

/// The monoid `{1, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FinCat {
    monoid("Q", &["1".to_string(), "e".to_string()], &[vec![0, 1], vec![1, 1]])
}

/// The Klein four-group `C2 × C2` as a one-object category.
pub fn klein_four() -> FinCat {
    let elems: Vec<String> = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
    let table: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|f| g ^ f).collect()).collect();
    monoid("Q", &elems, &table)
}

/// `GRP(C2)` with `A = {id}` and `G` everything.
pub fn grp_c2_marked() -> MarkedCat {
    let cat = cyclic_group(2);
    let mut m = MarkedCat::with_defaults(cat);
    m.a = m.cat.identities();
    m.g = m.cat.all_isos();
    m
}

/// `GRP(C3)` with `A = {id}` and `G` everything.
pub fn grp_c3_marked() -> MarkedCat {
    let cat = cyclic_group(3);
    let mut m = MarkedCat::with_defaults(cat);
    m.a = m.cat.identities();
    m.g = m.cat.all_isos();
    m
}

/// A marked poset with `A` everything and `G` the identities.
pub fn poset_marked(cat: FinCat) -> MarkedCat {
    MarkedCat::with_defaults(cat)
}


/// Exterior quotient of the fusion category of `g` on the given subgroups:
/// morphisms `R -> Q` are the classes `Q·x·C_G(R)` of `x` with
/// `x R x⁻¹ ⊆ Q`, composed by multiplying representatives. Returns the
/// category with the least representative of each class.
pub fn exterior_fusion(g: &Group, objs: &[(&str, Subgroup)]) -> (FinCat, Vec<usize>) {
    let all = g.whole();
    let mut b = CatBuilder::new();
    let ids: Vec<ObjId> = objs.iter().map(|(n, _)| b.object(*n)).collect();
    let mut reps = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut key: HashMap<(usize, usize, usize), MorId> = HashMap::new();
    let mut ends = Vec::new();
    for (ri, (rn, r)) in objs.iter().enumerate() {
        let c = g.centralizer(r, &all);
        for (qi, (qn, q)) in objs.iter().enumerate() {
            let t = g.transporter(r, q, &all);
            for x in g.double_coset_reps(q, &t, &c) {
                let m = b.morphism(format!("{rn}>{qn}:{}", g.name(x)), ids[ri], ids[qi]);
                let class = g.double_coset(q, x, &c);
                for &y in &class {
                    key.insert((ri, qi, y), m);
                }
                reps.push(x);
                classes.push(class);
                ends.push((ri, qi));
            }
        }
    }
    for (i, _) in objs.iter().enumerate() {
        b.identity(ids[i], key[&(i, i, g.identity())]);
    }
    let n = reps.len();
    for f in 0..n {
        for h in 0..n {
            let (r, q) = ends[f];
            let (q2, t) = ends[h];
            if q == q2 {
                b.compose(MorId(h), MorId(f), key[&(r, t, g.mul(reps[h], reps[f]))]);
            }
        }
    }
    (b.build().expect("exterior fusion category"), reps)
}

/// The center functor `Q ↦ Z(Q)` on an exterior fusion category whose
/// objects are self-centralizing: `c_x: R -> Q` acts by `z ↦ x⁻¹ z x`.
pub fn center_functor(g: &Group, objs: &[(&str, Subgroup)], cat: &FinCat, reps: &[usize]) -> ContraFun {
    let mut bases = Vec::new();
    let mut mods = Vec::new();
    for (_, q) in objs {
        let z = g.center(q);
        let (basis, orders) = g.abelian_basis(&z).expect("centers are abelian");
        let coords = g.abelian_coords(&basis, &orders);
        mods.push(FgMod::from_orders(&orders.iter().map(|&o| o as i64).collect::<Vec<_>>()));
        bases.push((basis, coords));
    }
    let mut on_mor = Vec::new();
    for f in cat.morphisms() {
        let (r, q) = (cat.src(f).0, cat.dst(f).0);
        let x = reps[f.0];
        let cols: Vec<Vec<BigInt>> = bases[q]
            .0
            .iter()
            .map(|&z| {
                let img = g.conj(g.inv(x), z);
                bases[r].1[&img].iter().map(|&c| BigInt::from(c)).collect()
            })
            .collect();
        let m = IntMatrix::from_cols(mods[r].ngens(), &cols);
        on_mor.push(ModHom::new(mods[q].clone(), mods[r].clone(), m).expect("conjugation is a homomorphism"));
    }
    ContraFun::new(cat, mods, on_mor).expect("center functor shape")
}

/// `S4` with its Sylow subgroup `D8` and the normal Klein four-group `V`.
pub fn s4_data() -> (Group, Vec<(&'static str, Subgroup)>) {
    let (g, perms) = Group::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).expect("S4");
    let find = |p: [usize; 4]| perms.iter().position(|q| q.as_slice() == p).unwrap();
    let v = g.closure(&[find([1, 0, 3, 2]), find([2, 3, 0, 1])]);
    let d8 = g.closure(&[find([1, 2, 3, 0]), find([2, 1, 0, 3])]);
    assert_eq!((v.len(), d8.len()), (4, 8));
    (g, vec![("V", v), ("D8", d8)])
}

/// The exterior quotient of the `S4` fusion category on `{V, D8}`, with
/// `A` the image of the `D8`-fusion and `G` the identities.
pub fn fusion_s4_marked() -> (MarkedCat, ContraFun) {
    let (g, objs) = s4_data();
    let (cat, reps) = exterior_fusion(&g, &objs);
    let p = &objs[1].1;
    let z = center_functor(&g, &objs, &cat, &reps);
    let mut m = MarkedCat::with_defaults(cat);
    m.a = MorSet::from_iter(
        m.cat.num_morphisms(),
        m.cat.morphisms().filter(|&f| {
            let (r, q) = (m.cat.src(f).0, m.cat.dst(f).0);
            let c = g.centralizer(&objs[r].1, &g.whole());
            g.double_coset(&objs[q].1, reps[f.0], &c).iter().any(|x| p.binary_search(x).is_ok())
        }),
    );
    (m, z)
}

/// A bundled functor and the stem of the category it lives on.
#[derive(Clone, Debug)]
pub struct BundledFunctor {
    pub name: &'static str,
    pub category: &'static str,
    pub functor: ContraFun,
}

/// Categories shipped as fixture files, by file stem.
pub fn bundled_categories() -> Vec<(&'static str, MarkedCat)> {
    let mut c2_ids = grp_c2_marked();
    c2_ids.g = c2_ids.cat.identities();
    let mut klein = MarkedCat::with_defaults(klein_four());
    klein.a = klein.cat.identities();
    klein.g = klein.cat.all_isos();
    vec![
        ("poset2", poset_marked(poset2())),
        ("chain3", poset_marked(chain3())),
        ("bowtie", poset_marked(bowtie())),
        ("grp_c2", grp_c2_marked()),
        ("grp_c2_bar", c2_ids),
        ("grp_c3", grp_c3_marked()),
        ("klein", klein),
        ("idempotent", MarkedCat::with_defaults(idempotent_monoid())),
        ("fusion_s4", fusion_s4_marked().0),
    ]
}

fn one_object_action(cat: &FinCat, m: &FgMod, act: impl Fn(&str) -> ModHom) -> ContraFun {
    let mors = cat.morphisms().map(|f| act(cat.mor_name(f))).collect();
    ContraFun::new(cat, vec![m.clone()], mors).expect("one-object action")
}

/// Functors shipped as fixture files.
pub fn bundled_functors() -> Vec<BundledFunctor> {
    let cats: HashMap<&str, MarkedCat> = bundled_categories().into_iter().collect();
    let cat = |n: &str| cats[n].cat.clone();
    let z4 = FgMod::cyclic(4);
    let z7 = FgMod::cyclic(7);
    let neg = |c: &FinCat| one_object_action(c, &z4, |n| ModHom::scalar(&z4, &BigInt::from(if n == "g1" { -1 } else { 1 })));
    let double = |c: &FinCat| {
        one_object_action(c, &z7, |n| ModHom::scalar(&z7, &BigInt::from(match n { "g1" => 2, "g2" => 4, _ => 1 })))
    };
    let v2 = FgMod::from_orders(&[2, 2]);
    let swap = ModHom::new(v2.clone(), v2.clone(), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])).expect("swap");
    let z2 = FgMod::free(2);
    let proj = ModHom::new(z2.clone(), z2.clone(), IntMatrix::from_i64(2, 2, &[1, 0, 0, 0])).expect("projection");
    let f = |name, category, functor| BundledFunctor { name, category, functor };
    vec![
        f("z", "poset2", ContraFun::constant(&cat("poset2"), &FgMod::free(1))),
        f("z3", "poset2", ContraFun::constant(&cat("poset2"), &FgMod::cyclic(3))),
        f("z_z3", "chain3", ContraFun::constant(&cat("chain3"), &FgMod::from_orders(&[0, 3]))),
        f("z", "bowtie", ContraFun::constant(&cat("bowtie"), &FgMod::free(1))),
        f("z4_neg", "grp_c2", neg(&cat("grp_c2"))),
        f("z4_neg", "grp_c2_bar", neg(&cat("grp_c2_bar"))),
        f("z", "grp_c2_bar", ContraFun::constant(&cat("grp_c2_bar"), &FgMod::free(1))),
        f("z7_double", "grp_c3", double(&cat("grp_c3"))),
        f("f2sq_swap", "klein", one_object_action(&cat("klein"), &v2, |n| if n == "a" || n == "ab" { swap.clone() } else { ModHom::identity(&v2) })),
        f("z2_proj", "idempotent", one_object_action(&cat("idempotent"), &z2, |n| if n == "e" { proj.clone() } else { ModHom::identity(&z2) })),
        f("center", "fusion_s4", fusion_s4_marked().1),
    ]
}

/// Group files for the transporter pipeline, by file stem.
pub fn bundled_group_files() -> Vec<(&'static str, &'static str)> {
    vec![
        ("c2_regular", "# G = P = C2, Ω = P as a P×P-set\ngroup perm\ngen 1 0\np-gen [1,0]\nomega regular\ncoefficients constant\n"),
        ("c3_regular", "# G = P = C3, Ω = P as a P×P-set\ngroup perm\ngen 1 2 0\np-gen [1,2,0]\nomega regular\ncoefficients constant\n"),
        ("c2_center", "group perm\ngen 1 0\np-gen [1,0]\nomega regular\ncoefficients center\n"),
        ("c3_center", "group perm\ngen 1 2 0\np-gen [1,2,0]\nomega regular\ncoefficients center\n"),
        ("s3_p2", "# G = S3, P = C2, Ω = G\ngroup perm\ngen 1 0 2\ngen 1 2 0\np-gen [1,0,2]\nomega group\n"),
        ("s3_p3", "# G = S3, P = C3, Ω = G\ngroup perm\ngen 1 0 2\ngen 1 2 0\np-gen [1,2,0]\nomega group\n"),
        ("c2_two_copies", "# |Ω|/|P| = 2\ngroup table\nrow 0 1\nrow 1 0\np-gen 1\nomega regular 2\n"),
        ("c2_point", "# a single fixed point: not basic\ngroup table\nrow 0 1\nrow 1 0\np-gen 1\nomega 1\nact 1 0\nright 1 0\n"),
    ]
}
