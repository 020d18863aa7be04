//! Contravariant functors to finitely generated abelian groups, natural
//! maps between them, and the additive extension to the additive cover.
//!
//! Text format, one entry per line (`#` starts a comment):
//!
//! ```text
//! OBJ X : Z + Z/4
//! MOR f : 1 0 0 1
//! ```
//!
//! `MOR` lists the matrix of `F(f): F(Q) -> F(R)` for `f: R -> Q` in
//! row-major order. Unlisted morphisms default to the identity when both
//! modules coincide; otherwise the file is rejected.

use std::fmt::Write;

use num_bigint::BigInt;

use crate::abgrp::{FgMod, IntMatrix, ModHom};
use crate::accover::{AcMorphism, AcObject};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};

/// `F(Q)` per object and `F(φ): F(Q) -> F(R)` per morphism `φ: R -> Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContraFun {
    pub on_obj: Vec<FgMod>,
    pub on_mor: Vec<ModHom>,
}

impl ContraFun {
    /// Checks shapes against `cat`; functoriality is left to [`validate`](Self::validate).
    pub fn new(cat: &FinCat, on_obj: Vec<FgMod>, on_mor: Vec<ModHom>) -> Result<ContraFun> {
        if on_obj.len() != cat.num_objects() || on_mor.len() != cat.num_morphisms() {
            return Err(Error::input("functor data does not match the category size"));
        }
        for f in cat.morphisms() {
            let h = &on_mor[f.0];
            if h.dom() != &on_obj[cat.dst(f).0] || h.cod() != &on_obj[cat.src(f).0] {
                return Err(Error::input(format!("value on {} has the wrong endpoints", cat.mor_name(f))));
            }
        }
        Ok(ContraFun { on_obj, on_mor })
    }

    /// `Q ↦ M`, every morphism to the identity.
    pub fn constant(cat: &FinCat, m: &FgMod) -> ContraFun {
        ContraFun { on_obj: vec![m.clone(); cat.num_objects()], on_mor: vec![ModHom::identity(m); cat.num_morphisms()] }
    }

    pub fn obj(&self, q: ObjId) -> &FgMod {
        &self.on_obj[q.0]
    }

    pub fn mor(&self, f: MorId) -> &ModHom {
        &self.on_mor[f.0]
    }

    /// Every functoriality violation, naming the composable pair.
    pub fn validate(&self, cat: &FinCat) -> Vec<String> {
        let mut v = Vec::new();
        for q in cat.objects() {
            if self.mor(cat.id(q)) != &ModHom::identity(self.obj(q)) {
                v.push(format!("identity of {} is not sent to the identity", cat.obj_name(q)));
            }
        }
        for f in cat.morphisms() {
            for &g in cat.out_of(cat.dst(f)) {
                let lhs = self.mor(cat.comp(g, f));
                let rhs = self.mor(f).compose(self.mor(g));
                if *lhs != rhs {
                    v.push(format!("functoriality fails at ({}, {})", cat.mor_name(g), cat.mor_name(f)));
                }
            }
        }
        v
    }

    /// `F ∘ e` for a functor `e` given on morphisms, from `base` to the
    /// category of `self`.
    pub fn pull_back(&self, base: &FinCat, e: &[MorId]) -> ContraFun {
        ContraFun {
            on_obj: base.objects().map(|q| self.on_obj[q.0].clone()).collect(),
            on_mor: base.morphisms().map(|f| self.on_mor[e[f.0].0].clone()).collect(),
        }
    }

    /// `Π_i F(Q_i)`.
    pub fn additive_obj(&self, obj: &AcObject) -> FgMod {
        FgMod::product(obj.terms.iter().map(|q| &self.on_obj[q.0]))
    }

    /// The map `Π_i F(Q_i) -> Π_j F(R_j)` whose `j`-component reads the
    /// `f(j)`-component through `F(φ_j)`.
    pub fn additive_mor(&self, m: &AcMorphism) -> ModHom {
        let doms: Vec<FgMod> = m.cod.terms.iter().map(|q| self.on_obj[q.0].clone()).collect();
        let cods: Vec<FgMod> = m.dom.terms.iter().map(|q| self.on_obj[q.0].clone()).collect();
        let blocks: Vec<Vec<Option<ModHom>>> = (0..m.dom.len())
            .map(|j| (0..m.cod.len()).map(|i| (m.index[j] == i).then(|| self.on_mor[m.comps[j].0].clone())).collect())
            .collect();
        ModHom::from_blocks(&doms, &cods, &blocks)
    }

    /// The composite `F^ac ∘ m` for a functor `m` into the additive cover,
    /// given by its object and morphism values.
    pub fn compose_additive(
        &self,
        cat: &FinCat,
        obj: impl Fn(ObjId) -> AcObject,
        mor: impl Fn(MorId) -> AcMorphism,
    ) -> ContraFun {
        ContraFun {
            on_obj: cat.objects().map(|q| self.additive_obj(&obj(q))).collect(),
            on_mor: cat.morphisms().map(|f| self.additive_mor(&mor(f))).collect(),
        }
    }
}

/// Components `η_Q: F(Q) -> F'(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatMap {
    pub components: Vec<ModHom>,
}

impl NatMap {
    pub fn identity(f: &ContraFun) -> NatMap {
        NatMap { components: f.on_obj.iter().map(ModHom::identity).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> NatMap {
        NatMap { components: self.components.iter().map(|h| h.scale(c)).collect() }
    }

    /// `self ∘ first`, componentwise.
    pub fn compose(&self, first: &NatMap) -> NatMap {
        NatMap { components: self.components.iter().zip(&first.components).map(|(a, b)| a.compose(b)).collect() }
    }
}

/// Every naturality square `F'(φ) ∘ η_Q = η_R ∘ F(φ)` that fails, with the
/// morphism and the first offending generator.
pub fn check_natural(cat: &FinCat, src: &ContraFun, dst: &ContraFun, eta: &NatMap) -> Vec<String> {
    let mut v = Vec::new();
    for q in cat.objects() {
        let c = &eta.components[q.0];
        if c.dom() != src.obj(q) || c.cod() != dst.obj(q) {
            v.push(format!("component at {} has the wrong endpoints", cat.obj_name(q)));
        }
    }
    if !v.is_empty() {
        return v;
    }
    for f in cat.morphisms() {
        let (r, q) = (cat.src(f), cat.dst(f));
        let lhs = dst.mor(f).compose(&eta.components[q.0]);
        let rhs = eta.components[r.0].compose(src.mor(f));
        if let Some(j) = lhs.first_difference(&rhs) {
            v.push(format!("naturality square at {} fails on generator {j}", cat.mor_name(f)));
        }
    }
    v
}

pub fn parse_functor(cat: &FinCat, text: &str) -> Result<ContraFun> {
    let mut objs: Vec<Option<FgMod>> = vec![None; cat.num_objects()];
    let mut mats: Vec<Option<(usize, Vec<BigInt>)>> = vec![None; cat.num_morphisms()];
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line.rsplit_once(':').ok_or_else(|| Error::parse(ln, "expected `OBJ name : ...` or `MOR name : ...`"))?;
        let mut h = head.split_whitespace();
        let kind = h.next().unwrap_or("");
        let name = h.next().ok_or_else(|| Error::parse(ln, "missing name"))?;
        if h.next().is_some() {
            return Err(Error::parse(ln, "unexpected token before `:`"));
        }
        match kind {
            "OBJ" => {
                let q = cat.obj_by_name(name).ok_or_else(|| Error::parse(ln, format!("unknown object `{name}`")))?;
                let m = FgMod::parse(body.trim()).map_err(|e| Error::parse(ln, e.to_string()))?;
                if objs[q.0].replace(m).is_some() {
                    return Err(Error::parse(ln, format!("object `{name}` given twice")));
                }
            }
            "MOR" => {
                let f = cat.mor_by_name(name).ok_or_else(|| Error::parse(ln, format!("unknown morphism `{name}`")))?;
                let entries = body
                    .split_whitespace()
                    .map(|t| t.parse::<BigInt>().map_err(|_| Error::parse(ln, format!("bad integer `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if mats[f.0].replace((ln, entries)).is_some() {
                    return Err(Error::parse(ln, format!("morphism `{name}` given twice")));
                }
            }
            other => return Err(Error::parse(ln, format!("unknown entry kind `{other}`"))),
        }
    }
    let on_obj: Vec<FgMod> = objs
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::input(format!("no module given for object `{}`", cat.obj_name(ObjId(i))))))
        .collect::<Result<_>>()?;
    let mut on_mor = Vec::with_capacity(cat.num_morphisms());
    for f in cat.morphisms() {
        let dom = on_obj[cat.dst(f).0].clone();
        let cod = on_obj[cat.src(f).0].clone();
        match mats[f.0].take() {
            None if dom == cod => on_mor.push(ModHom::identity(&dom)),
            None => {
                return Err(Error::input(format!(
                    "no matrix for `{}` and its modules differ, so no identity default applies",
                    cat.mor_name(f)
                )))
            }
            Some((ln, entries)) => {
                let (r, c) = (cod.ngens(), dom.ngens());
                if entries.len() != r * c {
                    return Err(Error::parse(ln, format!("expected {} entries for a {r}x{c} matrix", r * c)));
                }
                let rows = entries.chunks(c.max(1)).take(r).map(|x| x.to_vec()).collect();
                let m = if c == 0 { IntMatrix::zeros(r, 0) } else { IntMatrix::from_rows(r, c, rows) };
                on_mor.push(ModHom::new(dom, cod, m).map_err(|e| Error::parse(ln, e.to_string()))?);
            }
        }
    }
    Ok(ContraFun { on_obj, on_mor })
}

pub fn serialize_functor(cat: &FinCat, f: &ContraFun) -> String {
    let mut s = String::new();
    for q in cat.objects() {
        let _ = writeln!(s, "OBJ {} : {}", cat.obj_name(q), f.obj(q).literal());
    }
    for m in cat.morphisms() {
        let h = f.mor(m);
        let mut entries = Vec::new();
        for r in 0..h.matrix().rows() {
            for c in 0..h.matrix().cols() {
                entries.push(h.matrix().get(r, c).to_string());
            }
        }
        let _ = writeln!(s, "MOR {} : {}", cat.mor_name(m), entries.join(" "));
    }
    s
}
