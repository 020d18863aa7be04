//! Finite categories given by composition tables, their markings
//! (subcategories and interior structures), bi-exterior quotients and
//! semidirect products with set-valued functors.

mod parse;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{parse_category, serialize_category, MarkedCat};

/// Upper bound on the number of morphisms accepted at load time.
pub const MAX_MORPHISMS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Raw description of a category prior to indexing.
#[derive(Clone, Debug, Default)]
pub struct CatBuilder {
    objs: Vec<String>,
    mors: Vec<(String, usize, usize)>,
    comp: Vec<(usize, usize, usize)>,
    ident: Vec<Option<usize>>,
}

impl CatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.objs.push(name.into());
        self.ident.push(None);
        ObjId(self.objs.len() - 1)
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: ObjId, dst: ObjId) -> MorId {
        self.mors.push((name.into(), src.0, dst.0));
        MorId(self.mors.len() - 1)
    }

    /// Declares `g ∘ f = h`.
    pub fn compose(&mut self, g: MorId, f: MorId, h: MorId) {
        self.comp.push((g.0, f.0, h.0));
    }

    pub fn identity(&mut self, o: ObjId, m: MorId) {
        self.ident[o.0] = Some(m.0);
    }

    pub fn num_morphisms(&self) -> usize {
        self.mors.len()
    }

    pub fn build(self) -> Result<FinCat> {
        if self.mors.len() > MAX_MORPHISMS {
            return Err(Error::Limit(format!(
                "{} morphisms exceed the limit of {MAX_MORPHISMS}",
                self.mors.len()
            )));
        }
        let n = self.objs.len();
        let m = self.mors.len();
        for (name, s, d) in &self.mors {
            if *s >= n || *d >= n {
                return Err(Error::input(format!("morphism `{name}` has a dangling endpoint")));
            }
        }
        let mut ident = Vec::with_capacity(n);
        for (o, id) in self.ident.iter().enumerate() {
            match id {
                Some(i) if *i < m => ident.push(MorId(*i)),
                Some(_) => return Err(Error::input(format!("identity of `{}` is a dangling id", self.objs[o]))),
                None => return Err(Error::input(format!("object `{}` has no identity declared", self.objs[o]))),
            }
        }
        let mut comp = HashMap::new();
        let mut duplicates = Vec::new();
        for &(g, f, h) in &self.comp {
            if g >= m || f >= m || h >= m {
                return Err(Error::input("composition entry refers to a dangling morphism id"));
            }
            if let Some(prev) = comp.insert((MorId(g), MorId(f)), MorId(h)) {
                if prev.0 != h {
                    duplicates.push((g, f));
                }
            }
        }
        if let Some((g, f)) = duplicates.first() {
            return Err(Error::input(format!(
                "composition of `{}` after `{}` declared twice with different results",
                self.mors[*g].0, self.mors[*f].0
            )));
        }
        let src: Vec<ObjId> = self.mors.iter().map(|x| ObjId(x.1)).collect();
        let dst: Vec<ObjId> = self.mors.iter().map(|x| ObjId(x.2)).collect();
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for i in 0..m {
            hom.entry((src[i], dst[i])).or_default().push(MorId(i));
            out[src[i].0].push(MorId(i));
            inc[dst[i].0].push(MorId(i));
        }
        let mut obj_index = HashMap::new();
        for (i, o) in self.objs.iter().enumerate() {
            if obj_index.insert(o.clone(), ObjId(i)).is_some() {
                return Err(Error::input(format!("duplicate object name `{o}`")));
            }
        }
        let mut mor_index = HashMap::new();
        for (i, x) in self.mors.iter().enumerate() {
            if mor_index.insert(x.0.clone(), MorId(i)).is_some() {
                return Err(Error::input(format!("duplicate morphism name `{}`", x.0)));
            }
        }
        let mut cat = FinCat {
            obj_names: self.objs,
            mor_names: self.mors.into_iter().map(|x| x.0).collect(),
            src,
            dst,
            ident,
            comp,
            hom,
            out,
            inc,
            inverse: Vec::new(),
            obj_index,
            mor_index,
        };
        cat.inverse = (0..m).map(|i| cat.find_inverse(MorId(i))).collect();
        Ok(cat)
    }
}

/// A finite category stored as a composition table.
#[derive(Clone, Debug)]
pub struct FinCat {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    dst: Vec<ObjId>,
    ident: Vec<MorId>,
    comp: HashMap<(MorId, MorId), MorId>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    inc: Vec<Vec<MorId>>,
    inverse: Vec<Option<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl FinCat {
    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + Clone {
        (0..self.num_objects()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + Clone {
        (0..self.num_morphisms()).map(MorId)
    }

    pub fn obj_name(&self, o: ObjId) -> &str {
        &self.obj_names[o.0]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m.0]
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.src[m.0]
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.dst[m.0]
    }

    pub fn id(&self, o: ObjId) -> MorId {
        self.ident[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.ident[self.src(m).0] == m
    }

    /// `g ∘ f`, if the table defines it.
    pub fn try_comp(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics when the pair is not composable in a valid category.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        match self.try_comp(g, f) {
            Some(h) => h,
            None => panic!("composition `{}` after `{}` undefined", self.mor_name(g), self.mor_name(f)),
        }
    }

    /// Composite of a path listed in application order (first applied first).
    pub fn comp_path(&self, path: &[MorId]) -> MorId {
        let mut acc = path[0];
        for &m in &path[1..] {
            acc = self.comp(m, acc);
        }
        acc
    }

    /// Morphisms `from -> to`.
    pub fn hom(&self, from: ObjId, to: ObjId) -> &[MorId] {
        self.hom.get(&(from, to)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn out_of(&self, o: ObjId) -> &[MorId] {
        &self.out[o.0]
    }

    pub fn incoming(&self, o: ObjId) -> &[MorId] {
        &self.inc[o.0]
    }

    /// Automorphisms of `o` (the endomorphism set).
    pub fn endo(&self, o: ObjId) -> &[MorId] {
        self.hom(o, o)
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        self.inverse[m.0]
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse[m.0].is_some()
    }

    fn find_inverse(&self, m: MorId) -> Option<MorId> {
        let (s, d) = (self.src(m), self.dst(m));
        self.hom(d, s).iter().copied().find(|&g| {
            self.try_comp(g, m) == Some(self.id(s)) && self.try_comp(m, g) == Some(self.id(d))
        })
    }

    pub fn describe(&self, m: MorId) -> String {
        format!(
            "{}: {} -> {}",
            self.mor_name(m),
            self.obj_name(self.src(m)),
            self.obj_name(self.dst(m))
        )
    }

    /// Every violated category axiom, each naming its witness. Empty iff the
    /// table defines a category.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        for o in self.objects() {
            let i = self.id(o);
            if self.src(i) != o || self.dst(i) != o {
                v.push(format!("identity of {} is not an endomorphism of it", self.obj_name(o)));
            }
        }
        let mut keys: Vec<&(MorId, MorId)> = self.comp.keys().collect();
        keys.sort();
        for &&(g, f) in &keys {
            let h = self.comp[&(g, f)];
            if self.dst(f) != self.src(g) {
                v.push(format!(
                    "composition entry for non-composable pair ({}, {})",
                    self.mor_name(g),
                    self.mor_name(f)
                ));
            } else if self.src(h) != self.src(f) || self.dst(h) != self.dst(g) {
                v.push(format!(
                    "composite {} of ({}, {}) has wrong endpoints",
                    self.mor_name(h),
                    self.mor_name(g),
                    self.mor_name(f)
                ));
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.dst(f)) {
                if self.try_comp(g, f).is_none() {
                    v.push(format!("missing composition ({}, {})", self.mor_name(g), self.mor_name(f)));
                }
            }
        }
        for f in self.morphisms() {
            let (s, d) = (self.src(f), self.dst(f));
            if self.try_comp(f, self.id(s)) != Some(f) || self.try_comp(self.id(d), f) != Some(f) {
                v.push(format!("identity law at {}", self.mor_name(f)));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.dst(f)) {
                let gf = self.comp(g, f);
                for &h in self.out_of(self.dst(g)) {
                    let hg = self.comp(h, g);
                    if self.comp(h, gf) != self.comp(hg, f) {
                        v.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.mor_name(h),
                            self.mor_name(g),
                            self.mor_name(f)
                        ));
                    }
                }
            }
        }
        v
    }

    /// Whether every pair of objects with morphisms both ways is connected
    /// only by isomorphisms.
    pub fn is_ordered(&self) -> bool {
        self.ordered_witness().is_none()
    }

    /// A non-invertible morphism between mutually reachable objects.
    pub fn ordered_witness(&self) -> Option<MorId> {
        for q in self.objects() {
            for r in self.objects() {
                let there = self.hom(r, q);
                if there.is_empty() || self.hom(q, r).is_empty() {
                    continue;
                }
                if let Some(&m) = there.iter().find(|&&m| !self.is_iso(m)) {
                    return Some(m);
                }
            }
        }
        None
    }

    /// Checks group axioms on every endomorphism set.
    pub fn endo_groups_witness(&self) -> Option<String> {
        for o in self.objects() {
            let e = self.endo(o);
            for &a in e {
                if self.inverse(a).map(|i| self.src(i) != o).unwrap_or(true) {
                    return Some(format!("{} has no inverse in End({})", self.mor_name(a), self.obj_name(o)));
                }
                for &b in e {
                    if self.src(self.comp(a, b)) != o {
                        return Some(format!("End({}) not closed", self.obj_name(o)));
                    }
                }
            }
        }
        None
    }

    /// The smallest set of morphisms containing `gens` and all identities
    /// that is closed under composition.
    pub fn closure(&self, gens: impl IntoIterator<Item = MorId>) -> MorSet {
        let mut set = MorSet::empty(self.num_morphisms());
        let mut queue = VecDeque::new();
        for o in self.objects() {
            if set.insert(self.id(o)) {
                queue.push_back(self.id(o));
            }
        }
        for g in gens {
            if set.insert(g) {
                queue.push_back(g);
            }
        }
        let mut members: Vec<MorId> = set.iter().collect();
        while let Some(f) = queue.pop_front() {
            let mut fresh = Vec::new();
            for &g in &members {
                if self.dst(f) == self.src(g) {
                    if let Some(h) = self.try_comp(g, f) {
                        fresh.push(h);
                    }
                }
                if self.dst(g) == self.src(f) {
                    if let Some(h) = self.try_comp(f, g) {
                        fresh.push(h);
                    }
                }
            }
            for h in fresh {
                if set.insert(h) {
                    queue.push_back(h);
                    members.push(h);
                }
            }
        }
        set
    }

    /// Closure of `gens` inside the endomorphisms of `o`, as a sorted list.
    pub fn subgroup_closure(&self, o: ObjId, gens: &[MorId]) -> Vec<MorId> {
        let mut set = BTreeSet::new();
        set.insert(self.id(o));
        let mut frontier: Vec<MorId> = vec![self.id(o)];
        set.extend(gens.iter().copied());
        frontier.extend(gens.iter().copied());
        while let Some(a) = frontier.pop() {
            let cur: Vec<MorId> = set.iter().copied().collect();
            for b in cur {
                for c in [self.comp(a, b), self.comp(b, a)] {
                    if set.insert(c) {
                        frontier.push(c);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn all_morphisms(&self) -> MorSet {
        MorSet::full(self.num_morphisms())
    }

    pub fn all_isos(&self) -> MorSet {
        MorSet::from_iter(self.num_morphisms(), self.morphisms().filter(|&m| self.is_iso(m)))
    }

    pub fn identities(&self) -> MorSet {
        MorSet::from_iter(self.num_morphisms(), self.objects().map(|o| self.id(o)))
    }

    /// The first object `P` with exactly one morphism `Q -> P` (inside
    /// `within`, when given) for every object `Q`.
    pub fn final_object(&self, within: Option<&MorSet>) -> Option<ObjId> {
        self.objects().find(|&p| self.is_final(p, within))
    }

    pub fn is_final(&self, p: ObjId, within: Option<&MorSet>) -> bool {
        self.objects().all(|q| {
            self.hom(q, p).iter().filter(|&&m| within.is_none_or(|w| w.contains(m))).count() == 1
        })
    }

    /// The unique morphism `q -> p` inside `within`.
    pub fn unique_to(&self, q: ObjId, p: ObjId, within: Option<&MorSet>) -> Option<MorId> {
        let c: Vec<MorId> =
            self.hom(q, p).iter().copied().filter(|&m| within.is_none_or(|w| w.contains(m))).collect();
        if c.len() == 1 {
            Some(c[0])
        } else {
            None
        }
    }
}

/// A set of morphism ids stored as a bitmap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorSet {
    bits: Vec<bool>,
}

impl MorSet {
    pub fn empty(n: usize) -> Self {
        MorSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        MorSet { bits: vec![true; n] }
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = MorId>) -> Self {
        let mut s = Self::empty(n);
        for m in it {
            s.insert(m);
        }
        s
    }

    pub fn insert(&mut self, m: MorId) -> bool {
        let was = self.bits[m.0];
        self.bits[m.0] = true;
        !was
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.bits.get(m.0).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = MorId> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| MorId(i))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }
}

/// Subcategory checks for a marking: identities, composition closure and,
/// when `groupoid` is set, invertibility inside the set.
pub fn check_subcategory(cat: &FinCat, set: &MorSet, groupoid: bool) -> Vec<String> {
    let mut v = Vec::new();
    for o in cat.objects() {
        if !set.contains(cat.id(o)) {
            v.push(format!("identity of {} missing from the subcategory", cat.obj_name(o)));
        }
    }
    for f in set.iter() {
        for &g in cat.out_of(cat.dst(f)) {
            if set.contains(g) && !set.contains(cat.comp(g, f)) {
                v.push(format!("subcategory not closed at ({}, {})", cat.mor_name(g), cat.mor_name(f)));
            }
        }
        if groupoid {
            match cat.inverse(f) {
                Some(i) if set.contains(i) => {}
                _ => v.push(format!("{} is not invertible inside the subcategory", cat.mor_name(f))),
            }
        }
    }
    v
}

/// Outcome of the A-category check, with the cached factorizations
/// `φ = ι ∘ φ*` (`φ*` a B-isomorphism, `ι` in A).
#[derive(Clone, Debug)]
pub struct ACategoryReport {
    pub violations: Vec<String>,
    pub factorization: Vec<Option<(MorId, MorId)>>,
}

impl ACategoryReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `cat` is an A-category for the marking `a`: both ordered,
/// every morphism factors as an isomorphism followed by an A-morphism, and
/// isomorphisms that become A-morphisms after an A-morphism lie in A.
pub fn check_a_category(cat: &FinCat, a: &MorSet) -> ACategoryReport {
    let mut violations = check_subcategory(cat, a, false);
    if let Some(m) = cat.ordered_witness() {
        violations.push(format!("category is not ordered: {} is not invertible", cat.describe(m)));
    }
    for q in cat.objects() {
        for r in cat.objects() {
            let there: Vec<MorId> = cat.hom(r, q).iter().copied().filter(|&m| a.contains(m)).collect();
            let back = cat.hom(q, r).iter().any(|&m| a.contains(m));
            if !there.is_empty() && back {
                if let Some(&m) = there.iter().find(|&&m| !cat.is_iso(m) || !a.contains(cat.inverse(m).unwrap())) {
                    violations.push(format!("A is not ordered: {} is not an A-isomorphism", cat.describe(m)));
                }
            }
        }
    }
    let mut factorization = Vec::with_capacity(cat.num_morphisms());
    for phi in cat.morphisms() {
        let r = cat.src(phi);
        let q = cat.dst(phi);
        let found = cat.out_of(r).iter().copied().filter(|&s| cat.is_iso(s)).find_map(|s| {
            cat.hom(cat.dst(s), q).iter().copied().find(|&i| a.contains(i) && cat.comp(i, s) == phi).map(|i| (s, i))
        });
        if found.is_none() {
            violations.push(format!("no factorization iso-then-A for {}", cat.describe(phi)));
        }
        factorization.push(found);
    }
    for tau in cat.morphisms().filter(|&m| cat.is_iso(m) && !a.contains(m)) {
        if let Some(&i) = cat.out_of(cat.dst(tau)).iter().find(|&&i| a.contains(i) && a.contains(cat.comp(i, tau))) {
            violations.push(format!(
                "isomorphism {} is not in A although {} after it is",
                cat.describe(tau),
                cat.mor_name(i)
            ));
        }
    }
    ACategoryReport { violations, factorization }
}

fn check_subgroup(cat: &FinCat, o: ObjId, g: &[MorId], label: &str) -> Vec<String> {
    let mut v = Vec::new();
    let set: BTreeSet<MorId> = g.iter().copied().collect();
    if !set.contains(&cat.id(o)) {
        v.push(format!("{label}({}) lacks the identity", cat.obj_name(o)));
    }
    for &a in g {
        if cat.src(a) != o || cat.dst(a) != o {
            v.push(format!("{label}({}) contains {} which is not an endomorphism", cat.obj_name(o), cat.mor_name(a)));
            return v;
        }
        match cat.inverse(a) {
            Some(i) if set.contains(&i) => {}
            _ => v.push(format!("{label}({}) is not closed under inverses at {}", cat.obj_name(o), cat.mor_name(a))),
        }
        for &b in g {
            if !set.contains(&cat.comp(a, b)) {
                v.push(format!(
                    "{label}({}) is not closed at ({}, {})",
                    cat.obj_name(o),
                    cat.mor_name(a),
                    cat.mor_name(b)
                ));
            }
        }
    }
    v
}

/// Checks `φ ∘ I(R) ⊆ I(Q) ∘ φ` for every morphism `φ: R -> Q`.
pub fn check_interior(cat: &FinCat, interior: &[Vec<MorId>]) -> Vec<String> {
    let mut v = Vec::new();
    for o in cat.objects() {
        v.extend(check_subgroup(cat, o, &interior[o.0], "I"));
    }
    if !v.is_empty() {
        return v;
    }
    for phi in cat.morphisms() {
        let (r, q) = (cat.src(phi), cat.dst(phi));
        for &rho in &interior[r.0] {
            let lhs = cat.comp(phi, rho);
            if !interior[q.0].iter().any(|&chi| cat.comp(chi, phi) == lhs) {
                v.push(format!(
                    "interior transport fails for {} at {}",
                    cat.mor_name(phi),
                    cat.mor_name(rho)
                ));
            }
        }
    }
    v
}

/// The opposite-category version: `I°(Q) ∘ φ ⊆ φ ∘ I°(R)`.
pub fn check_cointerior(cat: &FinCat, cointerior: &[Vec<MorId>]) -> Vec<String> {
    let mut v = Vec::new();
    for o in cat.objects() {
        v.extend(check_subgroup(cat, o, &cointerior[o.0], "I°"));
    }
    if !v.is_empty() {
        return v;
    }
    for phi in cat.morphisms() {
        let (r, q) = (cat.src(phi), cat.dst(phi));
        for &rho in &cointerior[q.0] {
            let lhs = cat.comp(rho, phi);
            if !cointerior[r.0].iter().any(|&chi| cat.comp(phi, chi) == lhs) {
                v.push(format!(
                    "co-interior transport fails for {} at {}",
                    cat.mor_name(phi),
                    cat.mor_name(rho)
                ));
            }
        }
    }
    v
}

/// Interior and co-interior checks plus mutual centralization.
pub fn check_bi_interior(cat: &FinCat, interior: &[Vec<MorId>], cointerior: &[Vec<MorId>]) -> Vec<String> {
    let mut v = check_interior(cat, interior);
    v.extend(check_cointerior(cat, cointerior));
    if !v.is_empty() {
        return v;
    }
    for o in cat.objects() {
        for &a in &interior[o.0] {
            for &b in &cointerior[o.0] {
                if cat.comp(a, b) != cat.comp(b, a) {
                    v.push(format!(
                        "{} and {} do not commute in End({})",
                        cat.mor_name(a),
                        cat.mor_name(b),
                        cat.obj_name(o)
                    ));
                }
            }
        }
    }
    v
}

pub fn trivial_structure(cat: &FinCat) -> Vec<Vec<MorId>> {
    cat.objects().map(|o| vec![cat.id(o)]).collect()
}

/// A quotient category together with the quotient functor.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub cat: FinCat,
    /// Image of each base morphism.
    pub e: Vec<MorId>,
    /// Least base representative of each quotient morphism.
    pub reps: Vec<MorId>,
}

impl Quotient {
    pub fn image_set(&self, set: &MorSet) -> MorSet {
        MorSet::from_iter(self.cat.num_morphisms(), set.iter().map(|m| self.e[m.0]))
    }

    /// The identity quotient.
    pub fn identity(cat: &FinCat) -> Quotient {
        let all: Vec<MorId> = cat.morphisms().collect();
        Quotient { cat: cat.clone(), e: all.clone(), reps: all }
    }
}

/// The bi-exterior quotient with hom-sets `I(Q) \ B(Q,R) / I°(R)`.
pub fn bi_exterior_quotient(cat: &FinCat, interior: &[Vec<MorId>], cointerior: &[Vec<MorId>]) -> Result<Quotient> {
    let v = check_bi_interior(cat, interior, cointerior);
    if let Some(first) = v.first() {
        return Err(Error::precondition("bi-interior structure", first.clone()));
    }
    let mut class_of: Vec<Option<usize>> = vec![None; cat.num_morphisms()];
    let mut reps = Vec::new();
    for phi in cat.morphisms() {
        if class_of[phi.0].is_some() {
            continue;
        }
        let c = reps.len();
        reps.push(phi);
        let (r, q) = (cat.src(phi), cat.dst(phi));
        for &chi in &interior[q.0] {
            for &rho in &cointerior[r.0] {
                let m = cat.comp(chi, cat.comp(phi, rho));
                match class_of[m.0] {
                    None => class_of[m.0] = Some(c),
                    Some(d) if d == c => {}
                    Some(_) => {
                        return Err(Error::property(
                            "double cosets partition the hom-sets",
                            format!("{} lies in two classes", cat.mor_name(m)),
                        ))
                    }
                }
            }
        }
    }
    let e: Vec<usize> = class_of.into_iter().map(|c| c.expect("every morphism classified")).collect();
    let mut b = CatBuilder::new();
    for o in cat.objects() {
        b.object(cat.obj_name(o));
    }
    for &r in &reps {
        b.morphism(cat.mor_name(r), cat.src(r), cat.dst(r));
    }
    for o in cat.objects() {
        b.identity(o, MorId(e[cat.id(o).0]));
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for f in cat.morphisms() {
        for &g in cat.out_of(cat.dst(f)) {
            let h = e[cat.comp(g, f).0];
            let key = (e[g.0], e[f.0]);
            match table.get(&key) {
                None => {
                    table.insert(key, h);
                }
                Some(&h0) if h0 == h => {}
                Some(_) => {
                    return Err(Error::property(
                        "composition is well defined on double cosets",
                        format!("({}, {})", cat.mor_name(g), cat.mor_name(f)),
                    ))
                }
            }
        }
    }
    let mut keys: Vec<_> = table.into_iter().collect();
    keys.sort();
    for ((g, f), h) in keys {
        b.compose(MorId(g), MorId(f), MorId(h));
    }
    let q = b.build()?;
    Ok(Quotient { cat: q, e: e.into_iter().map(MorId).collect(), reps })
}

/// A covariant functor to finite sets: `sizes[Q]` elements over each object,
/// `maps[φ][t]` the image of `t` under `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn constant_point(cat: &FinCat) -> SetFunctor {
        SetFunctor { sizes: vec![1; cat.num_objects()], maps: vec![vec![0]; cat.num_morphisms()] }
    }

    pub fn apply(&self, phi: MorId, t: usize) -> usize {
        self.maps[phi.0][t]
    }

    /// Functoriality violations with witnesses.
    pub fn validate(&self, cat: &FinCat) -> Vec<String> {
        let mut v = Vec::new();
        if self.sizes.len() != cat.num_objects() || self.maps.len() != cat.num_morphisms() {
            v.push("set functor has the wrong number of objects or morphisms".into());
            return v;
        }
        for phi in cat.morphisms() {
            let (r, q) = (cat.src(phi), cat.dst(phi));
            let map = &self.maps[phi.0];
            if map.len() != self.sizes[r.0] || map.iter().any(|&x| x >= self.sizes[q.0]) {
                v.push(format!("map of {} has the wrong shape", cat.mor_name(phi)));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for o in cat.objects() {
            let id = &self.maps[cat.id(o).0];
            if id.iter().enumerate().any(|(i, &x)| i != x) {
                v.push(format!("identity of {} does not act trivially", cat.obj_name(o)));
            }
        }
        for f in cat.morphisms() {
            for &g in cat.out_of(cat.dst(f)) {
                let gf = cat.comp(g, f);
                for t in 0..self.sizes[cat.src(f).0] {
                    if self.apply(gf, t) != self.apply(g, self.apply(f, t)) {
                        v.push(format!(
                            "set functor not functorial at ({}, {}) on element {t}",
                            cat.mor_name(g),
                            cat.mor_name(f)
                        ));
                        break;
                    }
                }
            }
        }
        v
    }
}

/// The semidirect product `s ⋊ B` with its forgetful functor.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub cat: FinCat,
    /// Object `(s, Q)` for each object id.
    pub objs: Vec<(usize, ObjId)>,
    /// Morphism `(t, φ)` for each morphism id.
    pub mors: Vec<(usize, MorId)>,
    index: HashMap<(ObjId, usize), ObjId>,
    mor_index: HashMap<(MorId, usize), MorId>,
}

impl Semidirect {
    pub fn object(&self, q: ObjId, s: usize) -> ObjId {
        self.index[&(q, s)]
    }

    pub fn morphism(&self, phi: MorId, t: usize) -> MorId {
        self.mor_index[&(phi, t)]
    }

    /// The forgetful functor on morphisms.
    pub fn forget(&self, m: MorId) -> MorId {
        self.mors[m.0].1
    }
}

pub fn semidirect_product(s: &SetFunctor, cat: &FinCat) -> Result<Semidirect> {
    if let Some(w) = s.validate(cat).into_iter().next() {
        return Err(Error::precondition("set functor", w));
    }
    let mut b = CatBuilder::new();
    let mut objs = Vec::new();
    let mut index = HashMap::new();
    for q in cat.objects() {
        for t in 0..s.sizes[q.0] {
            let id = b.object(format!("({t},{})", cat.obj_name(q)));
            objs.push((t, q));
            index.insert((q, t), id);
        }
    }
    let mut mors = Vec::new();
    let mut mor_index = HashMap::new();
    for phi in cat.morphisms() {
        let (r, q) = (cat.src(phi), cat.dst(phi));
        for t in 0..s.sizes[r.0] {
            let src = index[&(r, t)];
            let dst = index[&(q, s.apply(phi, t))];
            let id = b.morphism(format!("({t},{})", cat.mor_name(phi)), src, dst);
            mors.push((t, phi));
            mor_index.insert((phi, t), id);
        }
    }
    for q in cat.objects() {
        for t in 0..s.sizes[q.0] {
            b.identity(index[&(q, t)], mor_index[&(cat.id(q), t)]);
        }
    }
    for phi in cat.morphisms() {
        for &psi in cat.out_of(cat.dst(phi)) {
            let comp = cat.comp(psi, phi);
            for t in 0..s.sizes[cat.src(phi).0] {
                let u = s.apply(phi, t);
                b.compose(mor_index[&(psi, u)], mor_index[&(phi, t)], mor_index[&(comp, t)]);
            }
        }
    }
    Ok(Semidirect { cat: b.build()?, objs, mors, index, mor_index })
}

#[cfg(test)]
mod tests;
