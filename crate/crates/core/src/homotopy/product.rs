use super::{build_h_functor, HFunctor, HomotopicSystem, SectionData};
use crate::abgrp::{FgMod, ModHom};
use crate::accover::{product_with_p, ProductWithP};
use crate::error::Result;
use crate::fincat::{trivial_structure, MarkedCat, ObjId};
use crate::functorlib::ContraFun;

/// The system `(Ĩ, n, ν)` on a multiplicative category built from `Q ↦ Q × P`,
/// with coefficients `f = ã^ac ∘ m̃_P` and the canonical section.
#[derive(Clone, Debug)]
pub struct DirectProductSystem {
    pub system: HomotopicSystem,
    pub product: ProductWithP,
    pub functor: ContraFun,
    pub h: HFunctor,
    pub theta: SectionData,
}

/// Builds the direct product system over `marked` (whose `I`, `I°` are
/// ignored) for `P` final in `A` and coefficients `at`.
pub fn direct_product_system(marked: &MarkedCat, p: ObjId, at: &ContraFun) -> Result<DirectProductSystem> {
    let cat = &marked.cat;
    let pw = product_with_p(cat, &marked.a, p)?;
    let mut base = marked.clone();
    base.interior = trivial_structure(cat);
    base.cointerior = trivial_structure(cat);
    let system = HomotopicSystem::new(
        base,
        pw.index_functor.clone(),
        |q, i| pw.triples[q.0][i].apex,
        |phi, t| pw.comps[phi.0][t],
        |q, i| pw.triples[q.0][i].to_r,
    )?;
    let functor = at.compose_additive(cat, |q| pw.object(q), |phi| pw.morphism(cat, phi));
    let h = build_h_functor(&system, &functor)?;
    let full: Vec<ModHom> = cat
        .objects()
        .map(|q| {
            let apexes: Vec<ObjId> = pw.triples[q.0].iter().map(|t| t.apex).collect();
            let doms: Vec<FgMod> = apexes.iter().map(|&x| functor.obj(x).clone()).collect();
            let cods: Vec<FgMod> = apexes.iter().map(|&x| at.obj(x).clone()).collect();
            let blocks: Vec<Vec<Option<ModHom>>> = apexes
                .iter()
                .enumerate()
                .map(|(i, &x)| (0..apexes.len()).map(|k| (k == i).then(|| select_identity_block(&pw, at, x))).collect())
                .collect();
            ModHom::from_blocks(&doms, &cods, &blocks)
        })
        .collect();
    let theta = SectionData::from_full(&h, &full);
    Ok(DirectProductSystem { system, product: pw, functor, h, theta })
}

/// The projection `f(Q) = Π_j ã(Q_j) -> ã(Q)` onto the component of `(id_Q, Q, ι_Q)`.
fn select_identity_block(pw: &ProductWithP, at: &ContraFun, q: ObjId) -> ModHom {
    let doms: Vec<FgMod> = pw.triples[q.0].iter().map(|t| at.obj(t.apex).clone()).collect();
    let cods = vec![at.obj(q).clone()];
    let blocks = vec![(0..doms.len()).map(|j| (j == pw.id_index[q.0]).then(|| ModHom::identity(at.obj(q)))).collect()];
    ModHom::from_blocks(&doms, &cods, &blocks)
}
