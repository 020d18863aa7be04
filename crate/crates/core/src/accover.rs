//! The additive cover of a finite category: formal sums, their morphisms,
//! the epimorphism and multiplicativity criteria, strict triples, direct
//! products, pull-backs and the product-with-`P` functor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::{bi_exterior_quotient, trivial_structure, FinCat, MorId, MorSet, ObjId, SetFunctor};

/// A formal direct sum `⊕ Q_i`, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcObject {
    pub terms: Vec<ObjId>,
}

impl AcObject {
    pub fn single(q: ObjId) -> AcObject {
        AcObject { terms: vec![q] }
    }

    pub fn empty() -> AcObject {
        AcObject { terms: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn describe(&self, cat: &FinCat) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|&q| cat.obj_name(q)).collect::<Vec<_>>().join(" + ")
    }
}

/// `(f, φ): ⊕_j R_j -> ⊕_i Q_i` with `φ_j: R_j -> Q_{f(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AcMorphism {
    pub dom: AcObject,
    pub cod: AcObject,
    pub index: Vec<usize>,
    pub comps: Vec<MorId>,
}

impl AcMorphism {
    pub fn identity(cat: &FinCat, obj: &AcObject) -> AcMorphism {
        AcMorphism {
            dom: obj.clone(),
            cod: obj.clone(),
            index: (0..obj.len()).collect(),
            comps: obj.terms.iter().map(|&q| cat.id(q)).collect(),
        }
    }

    /// A base morphism viewed between one-term sums.
    pub fn single(cat: &FinCat, m: MorId) -> AcMorphism {
        AcMorphism {
            dom: AcObject::single(cat.src(m)),
            cod: AcObject::single(cat.dst(m)),
            index: vec![0],
            comps: vec![m],
        }
    }

    pub fn validate(&self, cat: &FinCat) -> Result<()> {
        if self.index.len() != self.dom.len() || self.comps.len() != self.dom.len() {
            return Err(Error::input("ac-morphism has the wrong number of components"));
        }
        for j in 0..self.dom.len() {
            let i = self.index[j];
            let m = self.comps[j];
            if i >= self.cod.len() || cat.src(m) != self.dom.terms[j] || cat.dst(m) != self.cod.terms[i] {
                return Err(Error::input(format!("component {j} of ac-morphism has wrong endpoints")));
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn compose(&self, cat: &FinCat, first: &AcMorphism) -> AcMorphism {
        assert_eq!(first.cod, self.dom, "ac-morphisms not composable");
        AcMorphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            index: first.index.iter().map(|&i| self.index[i]).collect(),
            comps: first.comps.iter().zip(&first.index).map(|(&f, &i)| cat.comp(self.comps[i], f)).collect(),
        }
    }

    pub fn describe(&self, cat: &FinCat) -> String {
        let parts: Vec<String> =
            (0..self.dom.len()).map(|j| format!("{}->{}:{}", j, self.index[j], cat.mor_name(self.comps[j]))).collect();
        format!("[{}]", parts.join(", "))
    }
}

pub fn ac_direct_sum(a: &AcObject, b: &AcObject) -> AcObject {
    AcObject { terms: a.terms.iter().chain(&b.terms).copied().collect() }
}

/// A pair `(φ, φ')` and `ψ` with `φ ∘ ψ = φ' ∘ ψ` but `φ ≠ φ'`, if any.
pub fn epi_witness(cat: &FinCat) -> Option<(MorId, MorId, MorId)> {
    for psi in cat.morphisms() {
        let r = cat.dst(psi);
        let out = cat.out_of(r);
        for (k, &phi) in out.iter().enumerate() {
            for &phi2 in &out[k + 1..] {
                if cat.dst(phi) == cat.dst(phi2) && cat.comp(phi, psi) == cat.comp(phi2, psi) {
                    return Some((phi, phi2, psi));
                }
            }
        }
    }
    None
}

pub fn all_epi(cat: &FinCat) -> bool {
    epi_witness(cat).is_none()
}

/// Divisors of `α: Q -> R`: morphisms `θ': Q -> Q'` with `α' ∘ θ' = α`,
/// paired with the quotient `α/θ' = α'`.
pub fn divisors(cat: &FinCat, alpha: MorId) -> Vec<(MorId, MorId)> {
    let q = cat.src(alpha);
    let r = cat.dst(alpha);
    let mut out = Vec::new();
    for &theta in cat.out_of(q) {
        if let Some(&a2) = cat.hom(cat.dst(theta), r).iter().find(|&&a2| cat.comp(a2, theta) == alpha) {
            out.push((theta, a2));
        }
    }
    out
}

/// `B(T,Q)_α`: morphisms `Q -> T` that do not factor through any
/// non-isomorphism dividing `α`.
pub fn nonextendable(cat: &FinCat, t: ObjId, alpha: MorId) -> Vec<MorId> {
    let q = cat.src(alpha);
    let divs = divisors(cat, alpha);
    cat.hom(q, t)
        .iter()
        .copied()
        .filter(|&beta| {
            !divs.iter().any(|&(theta, _)| {
                !cat.is_iso(theta) && cat.hom(cat.dst(theta), t).iter().any(|&b2| cat.comp(b2, theta) == beta)
            })
        })
        .collect()
}

pub fn is_strict(cat: &FinCat, alpha: MorId, beta: MorId) -> bool {
    nonextendable(cat, cat.dst(beta), alpha).contains(&beta)
}

/// A strict triple `(α', Q', β')` with `α': Q' -> R`, `β': Q' -> T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictTriple {
    pub apex: ObjId,
    pub to_r: MorId,
    pub to_t: MorId,
}

/// All strict triples to `(R, T)`, not reduced modulo equivalence.
pub fn all_strict_triples(cat: &FinCat, r: ObjId, t: ObjId) -> Vec<StrictTriple> {
    let mut v = Vec::new();
    for q in cat.objects() {
        for &a in cat.hom(q, r) {
            let ok = nonextendable(cat, t, a);
            for b in ok {
                v.push(StrictTriple { apex: q, to_r: a, to_t: b });
            }
        }
    }
    v
}

/// The equivalence class of a triple under apex isomorphisms.
pub fn triple_class(cat: &FinCat, s: StrictTriple) -> Vec<StrictTriple> {
    let mut set = BTreeSet::new();
    for &theta in cat.incoming(s.apex).iter().filter(|&&m| cat.is_iso(m)) {
        set.insert(StrictTriple { apex: cat.src(theta), to_r: cat.comp(s.to_r, theta), to_t: cat.comp(s.to_t, theta) });
    }
    set.into_iter().collect()
}

/// One representative per equivalence class of strict triples, the least
/// in (apex, first leg, second leg) order.
pub fn strict_triples(cat: &FinCat, r: ObjId, t: ObjId) -> Vec<StrictTriple> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for s in all_strict_triples(cat, r, t) {
        if seen.contains(&s) {
            continue;
        }
        let class = triple_class(cat, s);
        reps.push(class[0]);
        seen.extend(class);
    }
    reps.sort();
    reps
}

/// Representatives of iso classes of morphisms out of `Q` dividing `α`
/// (`θ_1 ~ θ_2` when `σ ∘ θ_1 = θ_2` for an isomorphism `σ`).
pub fn divisor_classes(cat: &FinCat, alpha: MorId) -> Vec<(MorId, MorId)> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for (theta, quot) in divisors(cat, alpha) {
        if seen.contains(&theta) {
            continue;
        }
        reps.push((theta, quot));
        for &sigma in cat.out_of(cat.dst(theta)) {
            if cat.is_iso(sigma) {
                seen.insert(cat.comp(sigma, theta));
            }
        }
    }
    reps
}

/// Outcome of the multiplicativity check with the first failure found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultReport {
    pub all_epi: bool,
    pub violations: Vec<String>,
    /// Number of `(Q, R, T, α)` quadruples checked.
    pub checked: usize,
}

impl MultReport {
    pub fn ok(&self) -> bool {
        self.all_epi && self.violations.is_empty()
    }
}

/// Checks that every morphism is epi and that for every `(Q, R, T, α)`
/// each `β: Q -> T` lies in exactly one term `B(T,Q')_{α/θ'} ∘ θ'`.
pub fn check_multiplicative(cat: &FinCat) -> MultReport {
    let mut violations = Vec::new();
    let epi = epi_witness(cat);
    if let Some((a, b, c)) = epi {
        violations.push(format!(
            "not all morphisms are epi: {} and {} agree after {}",
            cat.mor_name(a),
            cat.mor_name(b),
            cat.mor_name(c)
        ));
        return MultReport { all_epi: false, violations, checked: 0 };
    }
    let mut checked = 0;
    for alpha in cat.morphisms() {
        let q = cat.src(alpha);
        let classes = divisor_classes(cat, alpha);
        for t in cat.objects() {
            checked += 1;
            let mut count: BTreeMap<MorId, usize> = cat.hom(q, t).iter().map(|&b| (b, 0)).collect();
            for &(theta, quot) in &classes {
                for b2 in nonextendable(cat, t, quot) {
                    *count.entry(cat.comp(b2, theta)).or_default() += 1;
                }
            }
            for (beta, c) in count {
                if c != 1 {
                    violations.push(format!(
                        "{} lies in {c} terms of the decomposition for alpha = {} and T = {}",
                        cat.mor_name(beta),
                        cat.mor_name(alpha),
                        cat.obj_name(t)
                    ));
                }
            }
        }
    }
    MultReport { all_epi: true, violations, checked }
}

/// `R × T` as a sum over strict-triple representatives, with its two
/// structural morphisms.
#[derive(Clone, Debug)]
pub struct Product {
    pub r: ObjId,
    pub t: ObjId,
    pub triples: Vec<StrictTriple>,
    pub obj: AcObject,
    pub to_r: AcMorphism,
    pub to_t: AcMorphism,
}

impl Product {
    fn from_triples(r: ObjId, t: ObjId, triples: Vec<StrictTriple>) -> Product {
        let obj = AcObject { terms: triples.iter().map(|s| s.apex).collect() };
        let n = triples.len();
        let to_r = AcMorphism {
            dom: obj.clone(),
            cod: AcObject::single(r),
            index: vec![0; n],
            comps: triples.iter().map(|s| s.to_r).collect(),
        };
        let to_t = AcMorphism {
            dom: obj.clone(),
            cod: AcObject::single(t),
            index: vec![0; n],
            comps: triples.iter().map(|s| s.to_t).collect(),
        };
        Product { r, t, triples, obj, to_r, to_t }
    }

    /// All `(i, ε)` with `ε: U -> Q'_i` such that both legs recover `(γ, δ)`.
    pub fn factorizations(&self, cat: &FinCat, gamma: MorId, delta: MorId) -> Vec<(usize, MorId)> {
        let u = cat.src(gamma);
        let mut out = Vec::new();
        for (i, s) in self.triples.iter().enumerate() {
            for &eps in cat.hom(u, s.apex) {
                if cat.comp(s.to_r, eps) == gamma && cat.comp(s.to_t, eps) == delta {
                    out.push((i, eps));
                }
            }
        }
        out
    }

    /// Checks existence and uniqueness of factorizations for every cone
    /// from a single object.
    pub fn check_universal(&self, cat: &FinCat) -> Result<usize> {
        let mut cones = 0;
        for u in cat.objects() {
            for &g in cat.hom(u, self.r) {
                for &d in cat.hom(u, self.t) {
                    cones += 1;
                    let f = self.factorizations(cat, g, d);
                    if f.len() != 1 {
                        return Err(Error::property(
                            "direct product universal property",
                            format!("cone ({}, {}) factors {} times", cat.mor_name(g), cat.mor_name(d), f.len()),
                        ));
                    }
                }
            }
        }
        Ok(cones)
    }
}

pub fn direct_product(cat: &FinCat, r: ObjId, t: ObjId) -> Result<Product> {
    let p = Product::from_triples(r, t, strict_triples(cat, r, t));
    p.check_universal(cat)?;
    Ok(p)
}

/// `Q ×_{α,β} R` as the sub-sum of `Q × R` on which the square commutes.
#[derive(Clone, Debug)]
pub struct PullBack {
    pub alpha: MorId,
    pub beta: MorId,
    pub product: Product,
    pub indices: Vec<usize>,
    pub obj: AcObject,
    pub to_q: AcMorphism,
    pub to_r: AcMorphism,
}

impl PullBack {
    /// Checks the universal property over every commuting cone from a single
    /// object; returns the number of cones.
    pub fn check_universal(&self, cat: &FinCat) -> Result<usize> {
        let q = cat.src(self.alpha);
        let r = cat.src(self.beta);
        let mut cones = 0;
        for u in cat.objects() {
            for &g in cat.hom(u, q) {
                for &d in cat.hom(u, r) {
                    if cat.comp(self.alpha, g) != cat.comp(self.beta, d) {
                        continue;
                    }
                    cones += 1;
                    let mut found = 0;
                    for &i in &self.indices {
                        let s = self.product.triples[i];
                        found += cat
                            .hom(u, s.apex)
                            .iter()
                            .filter(|&&e| cat.comp(s.to_r, e) == g && cat.comp(s.to_t, e) == d)
                            .count();
                    }
                    if found != 1 {
                        return Err(Error::property(
                            "pull-back universal property",
                            format!("cone ({}, {}) factors {found} times", cat.mor_name(g), cat.mor_name(d)),
                        ));
                    }
                }
            }
        }
        Ok(cones)
    }
}

pub fn pull_back(cat: &FinCat, alpha: MorId, beta: MorId) -> Result<PullBack> {
    if cat.dst(alpha) != cat.dst(beta) {
        return Err(Error::input("pull-back needs a common target"));
    }
    let product = direct_product(cat, cat.src(alpha), cat.src(beta))?;
    let indices: Vec<usize> = (0..product.triples.len())
        .filter(|&i| {
            let s = product.triples[i];
            cat.comp(alpha, s.to_r) == cat.comp(beta, s.to_t)
        })
        .collect();
    let obj = AcObject { terms: indices.iter().map(|&i| product.triples[i].apex).collect() };
    let n = indices.len();
    let to_q = AcMorphism {
        dom: obj.clone(),
        cod: AcObject::single(cat.src(alpha)),
        index: vec![0; n],
        comps: indices.iter().map(|&i| product.triples[i].to_r).collect(),
    };
    let to_r = AcMorphism {
        dom: obj.clone(),
        cod: AcObject::single(cat.src(beta)),
        index: vec![0; n],
        comps: indices.iter().map(|&i| product.triples[i].to_t).collect(),
    };
    let pb = PullBack { alpha, beta, product, indices, obj, to_q, to_r };
    pb.check_universal(cat)?;
    Ok(pb)
}

/// Multiplicativity of the exterior quotient by `I`, cross-checked against
/// the images of the strict triples of the base.
pub fn exterior_multiplicative(cat: &FinCat, interior: &[Vec<MorId>]) -> Result<MultReport> {
    let q = bi_exterior_quotient(cat, interior, &trivial_structure(cat))?;
    let mut rep = check_multiplicative(&q.cat);
    if !rep.ok() {
        return Ok(rep);
    }
    for r in cat.objects() {
        for t in cat.objects() {
            let base: BTreeSet<StrictTriple> = all_strict_triples(cat, r, t)
                .into_iter()
                .map(|s| StrictTriple { apex: s.apex, to_r: q.e[s.to_r.0], to_t: q.e[s.to_t.0] })
                .collect();
            let quot: BTreeSet<StrictTriple> = all_strict_triples(&q.cat, r, t).into_iter().collect();
            if base != quot {
                let w = base.symmetric_difference(&quot).next().unwrap();
                rep.violations.push(format!(
                    "strict quotient triples to ({}, {}) differ from images of strict triples at ({}, {}, {})",
                    cat.obj_name(r),
                    cat.obj_name(t),
                    q.cat.mor_name(w.to_r),
                    q.cat.obj_name(w.apex),
                    q.cat.mor_name(w.to_t)
                ));
            }
        }
    }
    Ok(rep)
}

/// The functor `Q ↦ Q × P` on a multiplicative category whose `A`-marking
/// has `P` as final object, with triples normalized so that the second leg
/// is the unique `A`-morphism to `P`.
#[derive(Clone, Debug)]
pub struct ProductWithP {
    pub p: ObjId,
    /// The unique `A`-morphism `Q -> P` per object.
    pub iota: Vec<MorId>,
    /// `Ĩ_Q`: normalized triples per object; the first leg is `α̃'`.
    pub triples: Vec<Vec<StrictTriple>>,
    /// Position of `(id_Q, Q, ι_Q)` in `triples[Q]`.
    pub id_index: Vec<usize>,
    /// `Ĩ_φ` as a set functor.
    pub index_functor: SetFunctor,
    /// `φ_j` per morphism and index `j ∈ Ĩ_R`.
    pub comps: Vec<Vec<MorId>>,
}

impl ProductWithP {
    pub fn object(&self, q: ObjId) -> AcObject {
        AcObject { terms: self.triples[q.0].iter().map(|s| s.apex).collect() }
    }

    /// `φ × id_P` as an ac-morphism.
    pub fn morphism(&self, cat: &FinCat, phi: MorId) -> AcMorphism {
        AcMorphism {
            dom: self.object(cat.src(phi)),
            cod: self.object(cat.dst(phi)),
            index: self.index_functor.maps[phi.0].clone(),
            comps: self.comps[phi.0].clone(),
        }
    }

    /// The first projection `Q × P -> Q`.
    pub fn omega(&self, q: ObjId) -> AcMorphism {
        let obj = self.object(q);
        let n = obj.len();
        AcMorphism { dom: obj, cod: AcObject::single(q), index: vec![0; n], comps: self.triples[q.0].iter().map(|s| s.to_r).collect() }
    }

    /// Functoriality of `φ ↦ φ × id_P` and naturality of the first projection.
    pub fn check(&self, cat: &FinCat) -> Vec<String> {
        let mut v = Vec::new();
        for q in cat.objects() {
            if self.morphism(cat, cat.id(q)) != AcMorphism::identity(cat, &self.object(q)) {
                v.push(format!("identity of {} is not sent to the identity", cat.obj_name(q)));
            }
        }
        for f in cat.morphisms() {
            let mf = self.morphism(cat, f);
            let lhs = AcMorphism::single(cat, f).compose(cat, &self.omega(cat.src(f)));
            let rhs = self.omega(cat.dst(f)).compose(cat, &mf);
            if lhs != rhs {
                v.push(format!("first projection not natural at {}", cat.mor_name(f)));
            }
            for &g in cat.out_of(cat.dst(f)) {
                if self.morphism(cat, g).compose(cat, &mf) != self.morphism(cat, cat.comp(g, f)) {
                    v.push(format!("product with P not functorial at ({}, {})", cat.mor_name(g), cat.mor_name(f)));
                }
            }
        }
        v
    }

    /// Condition that `G`-isomorphisms have `G`-isomorphism components.
    pub fn check_g_components(&self, cat: &FinCat, g: &MorSet) -> Vec<String> {
        let mut v = Vec::new();
        for phi in g.iter().filter(|&m| cat.is_iso(m)) {
            for (j, &c) in self.comps[phi.0].iter().enumerate() {
                if !(g.contains(c) && cat.is_iso(c)) {
                    v.push(format!(
                        "component {j} ({}) of {} x id_P is not a G-isomorphism",
                        cat.mor_name(c),
                        cat.mor_name(phi)
                    ));
                }
            }
        }
        v
    }
}

/// Builds `m̃_P`. Requires `cat` multiplicative and `P` final in `a`.
pub fn product_with_p(cat: &FinCat, a: &MorSet, p: ObjId) -> Result<ProductWithP> {
    if !cat.is_final(p, Some(a)) {
        return Err(Error::precondition("P is final in A", format!("{} is not final", cat.obj_name(p))));
    }
    let iota: Vec<MorId> = cat.objects().map(|q| cat.unique_to(q, p, Some(a)).unwrap()).collect();
    let mut triples = Vec::new();
    let mut id_index = Vec::new();
    for q in cat.objects() {
        let reps = strict_triples(cat, q, p);
        let mut normalized = Vec::new();
        for s in reps {
            let class = triple_class(cat, s);
            let mut with_iota = class.iter().copied().filter(|c| c.to_t == iota[c.apex.0]);
            let chosen = match class.iter().copied().find(|c| c.apex == q && c.to_r == cat.id(q) && c.to_t == iota[q.0]) {
                Some(c) => c,
                None => with_iota.next().ok_or_else(|| {
                    Error::precondition(
                        "every strict triple to (Q, P) has a member whose second leg is the A-morphism to P",
                        format!("({}, {}, {})", cat.mor_name(s.to_r), cat.obj_name(s.apex), cat.mor_name(s.to_t)),
                    )
                })?,
            };
            normalized.push(chosen);
        }
        let pos = normalized
            .iter()
            .position(|c| c.apex == q && c.to_r == cat.id(q) && c.to_t == iota[q.0])
            .ok_or_else(|| Error::property("(id_Q, Q, ι_Q) is a strict triple", cat.obj_name(q).to_string()))?;
        triples.push(normalized);
        id_index.push(pos);
    }
    let mut maps = Vec::with_capacity(cat.num_morphisms());
    let mut comps = Vec::with_capacity(cat.num_morphisms());
    for phi in cat.morphisms() {
        let (r, q) = (cat.src(phi), cat.dst(phi));
        let mut idx = Vec::new();
        let mut cs = Vec::new();
        for s in &triples[r.0] {
            let target = cat.comp(phi, s.to_r);
            let mut found = Vec::new();
            for (i, t) in triples[q.0].iter().enumerate() {
                for &c in cat.hom(s.apex, t.apex) {
                    if cat.comp(t.to_r, c) == target && cat.comp(t.to_t, c) == s.to_t {
                        found.push((i, c));
                    }
                }
            }
            if found.len() != 1 {
                return Err(Error::property(
                    "phi x id_P is uniquely determined",
                    format!("{} at apex {}: {} candidates", cat.mor_name(phi), cat.obj_name(s.apex), found.len()),
                ));
            }
            idx.push(found[0].0);
            cs.push(found[0].1);
        }
        maps.push(idx);
        comps.push(cs);
    }
    let index_functor = SetFunctor { sizes: triples.iter().map(|t| t.len()).collect(), maps };
    let m = ProductWithP { p, iota, triples, id_index, index_functor, comps };
    if let Some(w) = m.check(cat).into_iter().next() {
        return Err(Error::property("product with P is a functor with natural first projection", w));
    }
    Ok(m)
}

impl fmt::Display for StrictTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.to_r, self.apex, self.to_t)
    }
}
