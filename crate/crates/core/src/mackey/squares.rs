use num_bigint::BigInt;

use super::MackeySystem;
use crate::abgrp::ModHom;
use crate::error::{Error, Result};
use crate::fincat::{MorId, ObjId};
use crate::functorlib::ContraFun;

/// A covariant companion `a°(φ̃): a(R) -> a(Q)` for each `φ̃: R -> Q` of `F̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub on_mor: Vec<ModHom>,
}

/// The square over `α̃: R -> Q`, `β̃: T -> Q` with apex `⊕_w U_w`, where
/// `U_w = w⁻¹ α(R) w ∩ β(T)`, `α_w` is conjugation by `x⁻¹ w` and `β_w`
/// conjugation by `y⁻¹`, for representatives `α = c_x`, `β = c_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSquare {
    pub q: ObjId,
    pub r: ObjId,
    pub t: ObjId,
    pub alpha: MorId,
    pub beta: MorId,
    pub x: usize,
    pub y: usize,
    pub w: Vec<usize>,
    pub u: Vec<ObjId>,
    pub alpha_w: Vec<MorId>,
    pub beta_w: Vec<MorId>,
}

impl SpecialSquare {
    /// `α̃ ∘ α̃_w = β̃ ∘ β̃_w` for every `w`; the first failing `w` otherwise.
    pub fn commutation_witness(&self, ms: &MackeySystem) -> Option<String> {
        let qc = ms.system.qcat();
        (0..self.w.len()).find_map(|i| {
            (qc.comp(self.alpha, self.alpha_w[i]) != qc.comp(self.beta, self.beta_w[i])).then(|| {
                format!(
                    "square ({}, {}) does not commute at w = {}",
                    qc.mor_name(self.alpha),
                    qc.mor_name(self.beta),
                    ms.tr.gd.g.name(self.w[i])
                )
            })
        })
    }
}

fn rep_element(ms: &MackeySystem, m: MorId) -> usize {
    ms.tr.labels[ms.system.quotient.reps[m.0].0].0
}

/// The special square with the stored representatives of `α̃` and `β̃`.
pub fn special_square(ms: &MackeySystem, alpha: MorId, beta: MorId) -> Result<SpecialSquare> {
    special_square_with(ms, alpha, beta, rep_element(ms, alpha), rep_element(ms, beta))
}

/// The special square for chosen representatives `x` of `α̃` and `y` of `β̃`.
pub fn special_square_with(ms: &MackeySystem, alpha: MorId, beta: MorId, x: usize, y: usize) -> Result<SpecialSquare> {
    let qc = ms.system.qcat();
    let tr = &ms.tr;
    let g = &tr.gd.g;
    let e = g.identity();
    let (r, t, q) = (qc.src(alpha), qc.src(beta), qc.dst(alpha));
    if qc.dst(beta) != q {
        return Err(Error::input("special square needs a common target"));
    }
    let fe = &ms.system.quotient.e;
    if x >= g.order() || y >= g.order() {
        return Err(Error::input("representative is not an element of G"));
    }
    for (m, z, src) in [(alpha, x, r), (beta, y, t)] {
        let ok = tr.morphism(src, q, z, e).is_some_and(|b| fe[b.0] == m);
        if !ok {
            return Err(Error::precondition(
                "representatives are group elements in the class",
                format!("{} does not represent {}", g.name(z), qc.mor_name(m)),
            ));
        }
    }
    let qs = &tr.subgroups[q.0];
    let ar = g.conjugate(x, &tr.subgroups[r.0]);
    let bt = g.conjugate(y, &tr.subgroups[t.0]);
    let w = g.double_coset_reps(&ar, qs, &bt);
    let mut u = Vec::new();
    let mut alpha_w = Vec::new();
    let mut beta_w = Vec::new();
    for &wi in &w {
        let conj = g.conjugate(g.inv(wi), &ar);
        let inter: Vec<usize> = conj.into_iter().filter(|h| bt.binary_search(h).is_ok()).collect();
        let uw = tr.object_of(&inter).ok_or_else(|| {
            Error::precondition("the objects are closed under intersections of conjugates", format!("U_w for w = {}", g.name(wi)))
        })?;
        let aw = tr.morphism(uw, r, g.mul(g.inv(x), wi), e).expect("x⁻¹w transports U_w into R");
        let bw = tr.morphism(uw, t, g.inv(y), e).expect("y⁻¹ transports U_w into T");
        u.push(uw);
        alpha_w.push(fe[aw.0]);
        beta_w.push(fe[bw.0]);
    }
    Ok(SpecialSquare { q, r, t, alpha, beta, x, y, w, u, alpha_w, beta_w })
}

/// Every failure of: equal object values and covariant functoriality of
/// `a°`, `a°(φ̃)∘a(φ̃) = |Q|/|R|`, the exchange rule
/// `a(β̃)∘a°(α̃) = Σ_w a°(β̃_w)∘a(α̃_w)` over all special squares, and
/// `a°(φ̃) = a(φ̃⁻¹)` on isomorphisms.
pub fn check_compatible_complement(ms: &MackeySystem, a: &ContraFun, ao: &Complement) -> Result<Vec<String>> {
    let qc = ms.system.qcat();
    let mut v: Vec<String> = a.validate(qc).into_iter().map(|w| format!("a: {w}")).collect();
    if ao.on_mor.len() != qc.num_morphisms() {
        return Err(Error::input("complement has the wrong number of morphisms"));
    }
    for f in qc.morphisms() {
        let h = &ao.on_mor[f.0];
        if h.dom() != a.obj(qc.src(f)) || h.cod() != a.obj(qc.dst(f)) {
            v.push(format!("a° and a differ on objects at {}", qc.mor_name(f)));
        }
    }
    if !v.is_empty() {
        return Ok(v);
    }
    for o in qc.objects() {
        if ao.on_mor[qc.id(o).0] != ModHom::identity(a.obj(o)) {
            v.push(format!("a° is not the identity at {}", qc.obj_name(o)));
        }
    }
    for f in qc.morphisms() {
        for &g in qc.out_of(qc.dst(f)) {
            let gf = qc.comp(g, f);
            if ao.on_mor[gf.0] != ao.on_mor[g.0].compose(&ao.on_mor[f.0]) {
                v.push(format!("a° is not functorial at ({}, {})", qc.mor_name(g), qc.mor_name(f)));
            }
        }
    }
    for f in qc.morphisms() {
        let (r, q) = (qc.src(f), qc.dst(f));
        let idx = BigInt::from(ms.order(q) / ms.order(r));
        if ao.on_mor[f.0].compose(a.mor(f)) != ModHom::scalar(a.obj(q), &idx) {
            v.push(format!("a°(φ)∘a(φ) is not |Q|/|R| = {idx} at {}", qc.mor_name(f)));
        }
        if let Some(inv) = qc.inverse(f) {
            if ao.on_mor[f.0] != *a.mor(inv) {
                v.push(format!("a°(φ) differs from a(φ⁻¹) at {}", qc.mor_name(f)));
            }
        }
    }
    for q in qc.objects() {
        for &al in qc.incoming(q) {
            for &be in qc.incoming(q) {
                let sq = special_square(ms, al, be)?;
                if let Some(w) = sq.commutation_witness(ms) {
                    v.push(w);
                    continue;
                }
                let lhs = a.mor(be).compose(&ao.on_mor[al.0]);
                let mut rhs = ModHom::zero(a.obj(sq.r), a.obj(sq.t));
                for i in 0..sq.w.len() {
                    rhs = rhs.add(&ao.on_mor[sq.beta_w[i].0].compose(a.mor(sq.alpha_w[i])));
                }
                if lhs != rhs {
                    v.push(format!("exchange rule fails on the square ({}, {})", qc.mor_name(al), qc.mor_name(be)));
                }
            }
        }
    }
    Ok(v)
}

/// Builds the `T̃^x` pull-back of every pair `x̃: R -> Q`, `ỹ: T -> Q` with
/// apex `⊕_w (ˣR ∩ ʷʸT)` and legs conjugation by `x⁻¹` and `(wy)⁻¹`,
/// checks its universal property over single-object cones, and checks that
/// its image in `F̃` is the special square up to the isomorphisms `c_w`.
/// Returns the number of cones checked.
pub fn check_pull_backs(ms: &MackeySystem) -> Result<(usize, Vec<String>)> {
    let tr = &ms.tr;
    let g = &tr.gd.g;
    let e = g.identity();
    let tx = tr.interior_quotient()?;
    let c = &tx.cat;
    let fq = &ms.system.quotient;
    let qc = ms.system.qcat();
    let to_f = |m: MorId| fq.e[tx.reps[m.0].0];
    let mut cones = 0;
    let mut v = Vec::new();
    for q in c.objects() {
        let qs = &tr.subgroups[q.0];
        for &xm in c.incoming(q) {
            for &ym in c.incoming(q) {
                let (r, t) = (c.src(xm), c.src(ym));
                let x = tr.labels[tx.reps[xm.0].0].0;
                let y = tr.labels[tx.reps[ym.0].0].0;
                let xr = g.conjugate(x, &tr.subgroups[r.0]);
                let yt = g.conjugate(y, &tr.subgroups[t.0]);
                let ws = g.double_coset_reps(&xr, qs, &yt);
                let mut legs = Vec::new();
                for &w in &ws {
                    let wyt = g.conjugate(g.mul(w, y), &tr.subgroups[t.0]);
                    let inter: Vec<usize> = xr.iter().copied().filter(|h| wyt.binary_search(h).is_ok()).collect();
                    let uw = tr
                        .object_of(&inter)
                        .ok_or_else(|| Error::precondition("objects closed under intersections", g.name(w).to_string()))?;
                    let lx = tx.e[tr.morphism(uw, r, g.inv(x), e).expect("x⁻¹ transports").0];
                    let ly = tx.e[tr.morphism(uw, t, g.inv(g.mul(w, y)), e).expect("(wy)⁻¹ transports").0];
                    if c.comp(xm, lx) != c.comp(ym, ly) {
                        v.push(format!("pull-back square ({}, {}) does not commute", c.mor_name(xm), c.mor_name(ym)));
                    }
                    legs.push((uw, lx, ly));
                }
                for s in c.objects() {
                    for &am in c.hom(s, r) {
                        for &bm in c.hom(s, t) {
                            if c.comp(xm, am) != c.comp(ym, bm) {
                                continue;
                            }
                            cones += 1;
                            let found: usize = legs
                                .iter()
                                .map(|&(uw, lx, ly)| {
                                    c.hom(s, uw).iter().filter(|&&k| c.comp(lx, k) == am && c.comp(ly, k) == bm).count()
                                })
                                .sum();
                            if found != 1 {
                                v.push(format!(
                                    "cone ({}, {}) over ({}, {}) factors {found} times",
                                    c.mor_name(am),
                                    c.mor_name(bm),
                                    c.mor_name(xm),
                                    c.mor_name(ym)
                                ));
                            }
                        }
                    }
                }
                let sq = special_square_with(ms, to_f(xm), to_f(ym), x, y)?;
                if sq.w != ws {
                    v.push(format!("double coset representatives differ on ({}, {})", c.mor_name(xm), c.mor_name(ym)));
                    continue;
                }
                for (i, &(uw, lx, ly)) in legs.iter().enumerate() {
                    let cw = tr.morphism(sq.u[i], uw, ws[i], e).map(|m| fq.e[m.0]);
                    let ok = cw.is_some_and(|cw| {
                        qc.comp(to_f(lx), cw) == sq.alpha_w[i] && qc.comp(to_f(ly), cw) == sq.beta_w[i]
                    });
                    if !ok {
                        v.push(format!(
                            "the image of the pull-back of ({}, {}) is not special at w = {}",
                            c.mor_name(xm),
                            c.mor_name(ym),
                            g.name(ws[i])
                        ));
                    }
                }
            }
        }
    }
    Ok((cones, v))
}
