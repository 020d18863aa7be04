//! Homotopic systems `(I, I°, s, n, ν)`, the functor `H(ã)`, the natural
//! map `Δ_H` and its sections, and the explicit contracting homotopy of the
//! stable standard complex built from them.

mod operator;
mod product;

pub use operator::{interpolated_chain, lift_chain, ContractionReport, HomotopyOperator};
pub use product::{direct_product_system, DirectProductSystem};

use num_bigint::BigInt;

use crate::abgrp::{FgMod, IntMatrix, ModHom, Subquotient, fixed_submodule, format_elem};
use crate::error::{Error, Result};
use crate::fincat::{
    bi_exterior_quotient, check_bi_interior, check_subcategory, semidirect_product, FinCat, MarkedCat, MorId, MorSet,
    ObjId, Quotient, Semidirect, SetFunctor,
};
use crate::functorlib::{check_natural, ContraFun, NatMap};

/// The data `(I, I°, s, n, ν)` over a marked category, together with the
/// bi-exterior quotient `B̃`, its markings `Ã`, `G̃`, and the final object `P`.
///
/// `n` and `ν` are stored per object and morphism of `s ⋊ B`.
#[derive(Clone, Debug)]
pub struct HomotopicSystem {
    pub base: MarkedCat,
    pub quotient: Quotient,
    pub a_tilde: MorSet,
    pub g_tilde: MorSet,
    pub p: ObjId,
    pub s: SetFunctor,
    pub semidirect: Semidirect,
    pub n_obj: Vec<ObjId>,
    pub n_mor: Vec<MorId>,
    pub nu: Vec<MorId>,
}

impl HomotopicSystem {
    /// Assembles a system; `n_obj(Q, s)`, `n_mor(φ, t)` and `nu(Q, s)` give
    /// `n(s, Q)`, `n(t, φ)` and `ν_{(s,Q)}` in the quotient.
    pub fn new(
        base: MarkedCat,
        s: SetFunctor,
        n_obj: impl Fn(ObjId, usize) -> ObjId,
        n_mor: impl Fn(MorId, usize) -> MorId,
        nu: impl Fn(ObjId, usize) -> MorId,
    ) -> Result<HomotopicSystem> {
        let quotient = bi_exterior_quotient(&base.cat, &base.interior, &base.cointerior)?;
        let a_tilde = quotient.image_set(&base.a);
        let g_tilde = quotient.image_set(&base.g);
        let p = quotient
            .cat
            .final_object(Some(&a_tilde))
            .ok_or_else(|| Error::precondition("the quotient of A has a final object", "no final object"))?;
        let semidirect = semidirect_product(&s, &base.cat)?;
        let n_obj = semidirect.objs.iter().map(|&(t, q)| n_obj(q, t)).collect();
        let n_mor = semidirect.mors.iter().map(|&(t, phi)| n_mor(phi, t)).collect();
        let nu = semidirect.objs.iter().map(|&(t, q)| nu(q, t)).collect();
        Ok(HomotopicSystem { base, quotient, a_tilde, g_tilde, p, s, semidirect, n_obj, n_mor, nu })
    }

    pub fn cat(&self) -> &FinCat {
        &self.base.cat
    }

    pub fn qcat(&self) -> &FinCat {
        &self.quotient.cat
    }

    /// The unique `Ã`-morphism from `x` to `P`.
    pub fn to_p(&self, x: ObjId) -> Option<MorId> {
        self.qcat().unique_to(x, self.p, Some(&self.a_tilde))
    }

    /// `p̃ = e ∘ p` on a morphism of `s ⋊ B`.
    pub fn p_tilde(&self, m: MorId) -> MorId {
        self.quotient.e[self.semidirect.forget(m).0]
    }

    fn sd_name(&self, x: ObjId) -> String {
        let (t, q) = self.semidirect.objs[x.0];
        format!("({t}, {})", self.cat().obj_name(q))
    }

    fn sd_mor_name(&self, m: MorId) -> String {
        let (t, phi) = self.semidirect.mors[m.0];
        format!("({t}, {})", self.cat().mor_name(phi))
    }
}

/// Every violated requirement of a homotopic system, with witnesses.
pub fn validate_system(sys: &HomotopicSystem) -> Vec<String> {
    let b = sys.cat();
    let qc = sys.qcat();
    let mut v = Vec::new();
    v.extend(check_subcategory(b, &sys.base.g, true).into_iter().map(|w| format!("G: {w}")));
    v.extend(check_bi_interior(b, &sys.base.interior, &sys.base.cointerior));
    for q in b.objects() {
        for &x in &sys.base.interior[q.0] {
            if !sys.base.a.contains(x) {
                v.push(format!("I({}) is not inside A: {}", b.obj_name(q), b.mor_name(x)));
            }
            for &y in &sys.base.cointerior[q.0] {
                let xy = b.comp(x, y);
                if !sys.base.g.contains(xy) {
                    v.push(format!("I({0})·I°({0}) is not inside G: {1}", b.obj_name(q), b.mor_name(xy)));
                }
            }
        }
    }
    if !qc.is_final(sys.p, Some(&sys.a_tilde)) {
        v.push(format!("{} is not final in the quotient of A", qc.obj_name(sys.p)));
    }
    let sv = sys.s.validate(b);
    if !sv.is_empty() {
        v.extend(sv.into_iter().map(|w| format!("s: {w}")));
        return v;
    }
    let sd = &sys.semidirect.cat;
    if sys.n_obj.len() != sd.num_objects() || sys.n_mor.len() != sd.num_morphisms() || sys.nu.len() != sd.num_objects() {
        v.push("n or ν does not match the semidirect product".into());
        return v;
    }
    for m in sd.morphisms() {
        let nm = sys.n_mor[m.0];
        if qc.src(nm) != sys.n_obj[sd.src(m).0] || qc.dst(nm) != sys.n_obj[sd.dst(m).0] {
            v.push(format!("n{} = {} has the wrong endpoints", sys.sd_mor_name(m), qc.mor_name(nm)));
            continue;
        }
        if !sys.a_tilde.contains(nm) {
            v.push(format!("n{} = {} is not in the quotient of A", sys.sd_mor_name(m), qc.mor_name(nm)));
        }
        let phi = sys.semidirect.forget(m);
        if sys.base.g.contains(phi) && !(sys.g_tilde.contains(nm) && qc.is_iso(nm)) {
            v.push(format!("n{} = {} is not a G̃-isomorphism", sys.sd_mor_name(m), qc.mor_name(nm)));
        }
    }
    if !v.is_empty() {
        return v;
    }
    for x in sd.objects() {
        if !qc.is_identity(sys.n_mor[sd.id(x).0]) {
            v.push(format!("n does not send the identity of {} to an identity", sys.sd_name(x)));
        }
    }
    for f in sd.morphisms() {
        for &g in sd.out_of(sd.dst(f)) {
            let lhs = sys.n_mor[sd.comp(g, f).0];
            let rhs = qc.comp(sys.n_mor[g.0], sys.n_mor[f.0]);
            if lhs != rhs {
                v.push(format!("n is not functorial at ({}, {})", sys.sd_mor_name(g), sys.sd_mor_name(f)));
            }
        }
    }
    for x in sd.objects() {
        let nu = sys.nu[x.0];
        let q = sys.semidirect.objs[x.0].1;
        if qc.src(nu) != sys.n_obj[x.0] || qc.dst(nu) != q {
            v.push(format!("ν at {} = {} has the wrong endpoints", sys.sd_name(x), qc.mor_name(nu)));
        }
    }
    if !v.is_empty() {
        return v;
    }
    for m in sd.morphisms() {
        let (src, dst) = (sd.src(m), sd.dst(m));
        let lhs = qc.comp(sys.nu[dst.0], sys.n_mor[m.0]);
        let rhs = qc.comp(sys.p_tilde(m), sys.nu[src.0]);
        if lhs != rhs {
            v.push(format!(
                "ν is not natural at {}: {} vs {}",
                sys.sd_mor_name(m),
                qc.mor_name(lhs),
                qc.mor_name(rhs)
            ));
        }
    }
    for q in b.objects() {
        for &x in &sys.base.interior[q.0] {
            for &y in &sys.base.cointerior[q.0] {
                let xi = b.comp(x, y);
                for t in 0..sys.s.sizes[q.0] {
                    let nm = sys.n_mor[sys.semidirect.morphism(xi, t).0];
                    if !(sys.g_tilde.contains(nm) && qc.is_iso(nm)) {
                        v.push(format!("n({t}, {}) is not a G̃-isomorphism", b.mor_name(xi)));
                    }
                }
            }
        }
    }
    v
}

/// `H(ã)`: on each object the `I(Q)`-fixed part of `Π_{s ∈ s_Q} ã(n(s, Q))`.
#[derive(Clone, Debug)]
pub struct HFunctor {
    /// `Π_{s ∈ s_Q} ã(n(s, Q))` per object.
    pub full: Vec<FgMod>,
    /// Generator offset of component `s` inside `full[Q]`.
    pub offsets: Vec<Vec<usize>>,
    /// The product map of a morphism, before restriction.
    pub action: Vec<ModHom>,
    pub fixed: Vec<Subquotient>,
    pub functor: ContraFun,
}

impl HFunctor {
    /// Places `x` in component `s` of `full[q]`.
    pub fn inject(&self, q: ObjId, s: usize, x: &[BigInt], into: &mut [BigInt]) {
        let off = self.offsets[q.0][s];
        for (i, xi) in x.iter().enumerate() {
            into[off + i] += xi;
        }
    }

    /// Coordinates in `H(ã)(Q)` of an element of the full product.
    pub fn fixed_coords(&self, q: ObjId, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.fixed[q.0].coords(x)
    }

    /// Inclusion `H(ã)(Q) -> full[Q]`.
    pub fn inclusion(&self, q: ObjId) -> ModHom {
        self.fixed[q.0].inclusion(&self.full[q.0])
    }
}

/// Builds `H(ã)` for a functor `ã` on the quotient.
pub fn build_h_functor(sys: &HomotopicSystem, at: &ContraFun) -> Result<HFunctor> {
    let b = sys.cat();
    if let Some(w) = at.validate(sys.qcat()).into_iter().next() {
        return Err(Error::precondition("coefficient functor on the quotient", w));
    }
    let comp_mods = |q: ObjId| -> Vec<FgMod> {
        (0..sys.s.sizes[q.0]).map(|t| at.obj(sys.n_obj[sys.semidirect.object(q, t).0]).clone()).collect()
    };
    let mut full = Vec::new();
    let mut offsets = Vec::new();
    for q in b.objects() {
        let mods = comp_mods(q);
        let mut off = Vec::new();
        let mut o = 0;
        for m in &mods {
            off.push(o);
            o += m.ngens();
        }
        full.push(FgMod::product(&mods));
        offsets.push(off);
    }
    let mut action = Vec::new();
    for phi in b.morphisms() {
        let (r, q) = (b.src(phi), b.dst(phi));
        let doms = comp_mods(q);
        let cods = comp_mods(r);
        let blocks: Vec<Vec<Option<ModHom>>> = (0..cods.len())
            .map(|t| {
                let target = sys.s.apply(phi, t);
                let nm = sys.n_mor[sys.semidirect.morphism(phi, t).0];
                (0..doms.len()).map(|s| (s == target).then(|| at.mor(nm).clone())).collect()
            })
            .collect();
        action.push(ModHom::from_blocks(&doms, &cods, &blocks));
    }
    let mut fixed = Vec::new();
    for q in b.objects() {
        let gens: Vec<ModHom> = sys.base.interior[q.0].iter().map(|x| action[x.0].clone()).collect();
        fixed.push(fixed_submodule(&full[q.0], &gens)?);
    }
    let mut on_mor = Vec::new();
    for phi in b.morphisms() {
        let (r, q) = (b.src(phi), b.dst(phi));
        let cols: Vec<Vec<BigInt>> = (0..fixed[q.0].ngens())
            .map(|j| {
                let y = action[phi.0].apply(&fixed[q.0].gens.col(j));
                fixed[r.0].coords(&y).ok_or_else(|| {
                    Error::property(
                        "H(ã) maps fixed elements to fixed elements",
                        format!("{} on fixed generator {j}", b.mor_name(phi)),
                    )
                })
            })
            .collect::<Result<_>>()?;
        let dom = fixed[q.0].module();
        let cod = fixed[r.0].module();
        on_mor.push(ModHom::new(dom, cod.clone(), IntMatrix::from_cols(cod.ngens(), &cols))?);
    }
    let functor = ContraFun::new(b, fixed.iter().map(|f| f.module()).collect(), on_mor)?;
    if let Some(w) = functor.validate(b).into_iter().next() {
        return Err(Error::property("H(ã) is a functor", w));
    }
    Ok(HFunctor { full, offsets, action, fixed, functor })
}

/// `ã ∘ e` on the base.
pub fn base_functor(sys: &HomotopicSystem, at: &ContraFun) -> ContraFun {
    at.pull_back(sys.cat(), &sys.quotient.e)
}

/// `Δ_H(ã)_Q(a) = Σ_s ã(ν_{(s,Q)})(a)`, as maps into the full products and
/// into `H(ã)`.
pub fn delta_h(sys: &HomotopicSystem, at: &ContraFun, h: &HFunctor) -> Result<(Vec<ModHom>, NatMap)> {
    let b = sys.cat();
    let mut full_maps = Vec::new();
    let mut comps = Vec::new();
    for q in b.objects() {
        let m = at.obj(q);
        let cols: Vec<Vec<BigInt>> = (0..m.ngens())
            .map(|j| {
                let x = m.basis_elem(j);
                let mut y = h.full[q.0].zero_elem();
                for t in 0..sys.s.sizes[q.0] {
                    let nu = sys.nu[sys.semidirect.object(q, t).0];
                    h.inject(q, t, &at.mor(nu).apply(&x), &mut y);
                }
                h.full[q.0].reduce(&y)
            })
            .collect();
        let full = ModHom::new(m.clone(), h.full[q.0].clone(), IntMatrix::from_cols(h.full[q.0].ngens(), &cols))?;
        let fixed_cols: Vec<Vec<BigInt>> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                h.fixed_coords(q, c).ok_or_else(|| {
                    Error::property("Δ_H lands in H(ã)", format!("generator {j} at {}", b.obj_name(q)))
                })
            })
            .collect::<Result<_>>()?;
        let fm = h.fixed[q.0].module();
        comps.push(ModHom::new(m.clone(), fm.clone(), IntMatrix::from_cols(fm.ngens(), &fixed_cols))?);
        full_maps.push(full);
    }
    let nat = NatMap { components: comps };
    let a = base_functor(sys, at);
    if let Some(w) = check_natural(b, &a, &h.functor, &nat).into_iter().next() {
        return Err(Error::property("Δ_H is natural", w));
    }
    Ok((full_maps, nat))
}

/// Components `θ_Q: H(ã)(Q) -> a(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    pub components: Vec<ModHom>,
}

impl SectionData {
    /// Restricts maps defined on the full products to `H(ã)`.
    pub fn from_full(h: &HFunctor, full: &[ModHom]) -> SectionData {
        SectionData {
            components: full.iter().enumerate().map(|(q, f)| f.compose(&h.inclusion(ObjId(q)))).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> SectionData {
        SectionData { components: self.components.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn as_nat_map(&self) -> NatMap {
        NatMap { components: self.components.clone() }
    }
}

/// Violations of naturality of `θ` and of `θ ∘ Δ_H = id`.
pub fn check_section(sys: &HomotopicSystem, at: &ContraFun, h: &HFunctor, theta: &SectionData) -> Result<Vec<String>> {
    let b = sys.cat();
    let a = base_functor(sys, at);
    if theta.components.len() != b.num_objects() {
        return Ok(vec!["section has the wrong number of components".into()]);
    }
    for q in b.objects() {
        let c = &theta.components[q.0];
        if c.dom() != h.functor.obj(q) || c.cod() != a.obj(q) {
            return Ok(vec![format!("θ at {} has the wrong endpoints", b.obj_name(q))]);
        }
    }
    let mut v = check_natural(b, &h.functor, &a, &theta.as_nat_map());
    let (_, delta) = delta_h(sys, at, h)?;
    for q in b.objects() {
        let comp = theta.components[q.0].compose(&delta.components[q.0]);
        if let Some(j) = comp.first_difference(&ModHom::identity(a.obj(q))) {
            v.push(format!(
                "θ∘Δ_H is not the identity at {}: generator {j} goes to {}",
                b.obj_name(q),
                format_elem(&comp.matrix().col(j))
            ));
        }
    }
    Ok(v)
}
