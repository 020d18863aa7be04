//! The standard cochain complex `C^n(B, a) = Π_q a(q(0))` over chains of a
//! finite category, its G-stable subcomplex and cohomology.
//!
//! Chains include degenerate ones (identity arrows). A cochain `a` is
//! G-stable when `a_q = a(χ_0)(a_{q'})` for every natural G-isomorphism
//! `χ: q ≅ q'`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::abgrp::{complex_cohomology, fixed_submodule, format_elem, FgMod, IntMatrix, ModHom, Subquotient};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, MorSet, ObjId, Quotient};
use crate::functorlib::ContraFun;

pub const DEFAULT_MAX_DEGREE: usize = 4;
const MAX_CHAINS: usize = 500_000;

/// A functor `Δ_n -> B`: objects `q(0..=n)` and arrows `q(i-1 • i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub objs: Vec<ObjId>,
    pub arrows: Vec<MorId>,
}

impl Chain {
    pub fn point(q: ObjId) -> Chain {
        Chain { objs: vec![q], arrows: Vec::new() }
    }

    /// The chain with the given arrows, which must be composable and nonempty.
    pub fn from_arrows(cat: &FinCat, arrows: &[MorId]) -> Result<Chain> {
        let first = arrows.first().ok_or_else(|| Error::input("a chain needs an arrow or a start object"))?;
        let mut objs = vec![cat.src(*first)];
        for (i, &f) in arrows.iter().enumerate() {
            if cat.src(f) != objs[i] {
                return Err(Error::input(format!("arrows {} and {} are not composable", i, i + 1)));
            }
            objs.push(cat.dst(f));
        }
        Ok(Chain { objs, arrows: arrows.to_vec() })
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn start(&self) -> ObjId {
        self.objs[0]
    }

    /// `q(i • j)` for `i ≤ j`.
    pub fn arrow(&self, cat: &FinCat, i: usize, j: usize) -> MorId {
        assert!(i <= j && j <= self.degree());
        if i == j {
            cat.id(self.objs[i])
        } else {
            cat.comp_path(&self.arrows[i..j])
        }
    }

    /// `q ∘ δ_i`: the chain with vertex `i` removed.
    pub fn face(&self, cat: &FinCat, i: usize) -> Result<Chain> {
        let n = self.degree();
        if n == 0 || i > n {
            return Err(Error::input(format!("face {i} of a degree-{n} chain")));
        }
        let mut objs = self.objs.clone();
        objs.remove(i);
        let mut arrows = self.arrows.clone();
        if i == 0 {
            arrows.remove(0);
        } else if i == n {
            arrows.pop();
        } else {
            let c = cat.comp(arrows[i], arrows[i - 1]);
            arrows.splice(i - 1..=i, [c]);
        }
        Ok(Chain { objs, arrows })
    }

    /// Image under a functor given on morphisms (objects follow the arrows;
    /// `obj` is used for degree 0).
    pub fn map(&self, obj: impl Fn(ObjId) -> ObjId, mor: impl Fn(MorId) -> MorId) -> Chain {
        Chain { objs: self.objs.iter().map(|&o| obj(o)).collect(), arrows: self.arrows.iter().map(|&m| mor(m)).collect() }
    }

    pub fn describe(&self, cat: &FinCat) -> String {
        let mut s = cat.obj_name(self.objs[0]).to_string();
        for (i, &f) in self.arrows.iter().enumerate() {
            s.push_str(&format!(" -{}-> {}", cat.mor_name(f), cat.obj_name(self.objs[i + 1])));
        }
        format!("[{s}]")
    }
}

/// Every chain of degree `n`, ordered by start object then lexicographically
/// by arrow ids.
pub fn enumerate_chains(cat: &FinCat, n: usize, max_degree: usize) -> Result<Vec<Chain>> {
    if n > max_degree {
        return Err(Error::Limit(format!("degree {n} exceeds the cap {max_degree}")));
    }
    let mut out: Vec<Chain> = cat.objects().map(Chain::point).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &out {
            let last = *c.objs.last().expect("chains are nonempty");
            let mut outs = cat.out_of(last).to_vec();
            outs.sort();
            for f in outs {
                let mut d = c.clone();
                d.arrows.push(f);
                d.objs.push(cat.dst(f));
                next.push(d);
            }
            if next.len() > MAX_CHAINS {
                return Err(Error::Limit(format!("more than {MAX_CHAINS} chains in degree {n}")));
            }
        }
        out = next;
    }
    if n > 0 {
        out.sort_by(|a, b| a.arrows.cmp(&b.arrows));
    }
    Ok(out)
}

/// A natural isomorphism between chains of equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainIso {
    pub src: Chain,
    pub dst: Chain,
    pub components: Vec<MorId>,
}

impl ChainIso {
    /// The first failed condition: membership in `g`, endpoints, naturality.
    pub fn violation(&self, cat: &FinCat, g: &MorSet) -> Option<String> {
        let n = self.src.degree();
        if self.dst.degree() != n || self.components.len() != n + 1 {
            return Some("chain isomorphism has the wrong length".into());
        }
        for (i, &c) in self.components.iter().enumerate() {
            if !g.contains(c) || !cat.is_iso(c) {
                return Some(format!("component {i} ({}) is not a G-isomorphism", cat.mor_name(c)));
            }
            if cat.src(c) != self.src.objs[i] || cat.dst(c) != self.dst.objs[i] {
                return Some(format!("component {i} ({}) has the wrong endpoints", cat.mor_name(c)));
            }
        }
        for i in 1..=n {
            let lhs = cat.comp(self.components[i], self.src.arrows[i - 1]);
            let rhs = cat.comp(self.dst.arrows[i - 1], self.components[i - 1]);
            if lhs != rhs {
                return Some(format!("naturality square {} fails", i));
            }
        }
        None
    }
}

/// An element of `C^n`: one value in `a(q(0))` per chain, in chain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<Vec<BigInt>>,
}

impl Cochain {
    pub fn is_zero(&self, space: &ChainSpace, f: &ContraFun) -> bool {
        self.first_nonzero(space, f).is_none()
    }

    pub fn first_nonzero(&self, space: &ChainSpace, f: &ContraFun) -> Option<usize> {
        (0..self.values.len()).find(|&i| !f.obj(space.chains[i].start()).is_zero_elem(&self.values[i]))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }
}

/// The chains of one degree with their face indices into the degree below.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub degree: usize,
    pub chains: Vec<Chain>,
    index: HashMap<Chain, usize>,
    /// `faces[r][i]` is the index of `r ∘ δ_i` one degree down.
    pub faces: Vec<Vec<usize>>,
}

impl ChainSpace {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn index_of(&self, c: &Chain) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn module(&self, f: &ContraFun) -> FgMod {
        FgMod::product(self.chains.iter().map(|c| f.obj(c.start())))
    }
}

/// Chain spaces of degrees `0..=top` over a category with a functor.
#[derive(Clone, Debug)]
pub struct StandardComplex {
    pub cat: FinCat,
    pub functor: ContraFun,
    pub spaces: Vec<ChainSpace>,
}

impl StandardComplex {
    pub fn new(cat: &FinCat, functor: &ContraFun, top: usize, max_degree: usize) -> Result<StandardComplex> {
        if let Some(w) = functor.validate(cat).into_iter().next() {
            return Err(Error::precondition("coefficient functor", w));
        }
        let mut spaces: Vec<ChainSpace> = Vec::new();
        for n in 0..=top {
            let chains = enumerate_chains(cat, n, max_degree)?;
            let index: HashMap<Chain, usize> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
            let faces = if n == 0 {
                vec![Vec::new(); chains.len()]
            } else {
                let below = &spaces[n - 1];
                chains
                    .iter()
                    .map(|c| (0..=n).map(|i| below.index[&c.face(cat, i).expect("face in range")]).collect())
                    .collect()
            };
            spaces.push(ChainSpace { degree: n, chains, index, faces });
        }
        Ok(StandardComplex { cat: cat.clone(), functor: functor.clone(), spaces })
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &ChainSpace {
        &self.spaces[n]
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain {
            degree: n,
            values: self.spaces[n].chains.iter().map(|c| self.functor.obj(c.start()).zero_elem()).collect(),
        }
    }

    /// The basis cochain supported on chain `i` with value generator `k`.
    pub fn basis_cochain(&self, n: usize, i: usize, k: usize) -> Cochain {
        let mut a = self.zero(n);
        a.values[i][k] = BigInt::one();
        a
    }

    /// Every basis cochain of `C^n`, as `(chain index, generator)` pairs.
    pub fn basis(&self, n: usize) -> Vec<(usize, usize)> {
        let sp = &self.spaces[n];
        (0..sp.len()).flat_map(|i| (0..self.functor.obj(sp.chains[i].start()).ngens()).map(move |k| (i, k))).collect()
    }

    /// `d_n(a)_r = a(r(0•1))(a_{r∘δ_0}) + Σ_{i≥1} (-1)^i a_{r∘δ_i}`.
    pub fn differential(&self, a: &Cochain) -> Cochain {
        let n = a.degree;
        assert!(n < self.top(), "differential out of the computed range");
        let up = &self.spaces[n + 1];
        let values = up
            .chains
            .iter()
            .enumerate()
            .map(|(ri, r)| {
                let m = self.functor.obj(r.start());
                let faces = &up.faces[ri];
                let mut v = self.functor.mor(r.arrows[0]).apply(&a.values[faces[0]]);
                for (i, &fi) in faces.iter().enumerate().skip(1) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (x, y) in v.iter_mut().zip(&a.values[fi]) {
                        *x += y * sign;
                    }
                }
                m.reduce(&v)
            })
            .collect();
        Cochain { degree: n + 1, values }
    }

    /// Checks `d_{n+1} ∘ d_n = 0` on every basis cochain of `C^n`.
    pub fn check_dd(&self, n: usize) -> Result<usize> {
        let basis = self.basis(n);
        for &(i, k) in &basis {
            let dd = self.differential(&self.differential(&self.basis_cochain(n, i, k)));
            if let Some(r) = dd.first_nonzero(&self.spaces[n + 2], &self.functor) {
                return Err(Error::property(
                    "d∘d = 0",
                    format!(
                        "basis cochain at {} generator {k} gives {} at {}",
                        self.spaces[n].chains[i].describe(&self.cat),
                        format_elem(&dd.values[r]),
                        self.spaces[n + 2].chains[r].describe(&self.cat)
                    ),
                ));
            }
        }
        Ok(basis.len())
    }

    /// Chain obtained by moving vertex `i` along the isomorphism `g` out of `q(i)`.
    fn moved(&self, q: &Chain, i: usize, g: MorId) -> Chain {
        let cat = &self.cat;
        let mut c = q.clone();
        c.objs[i] = cat.dst(g);
        if i > 0 {
            c.arrows[i - 1] = cat.comp(g, q.arrows[i - 1]);
        }
        if i < q.degree() {
            let inv = cat.inverse(g).expect("G-morphisms are isomorphisms");
            c.arrows[i] = cat.comp(q.arrows[i], inv);
        }
        c
    }

    /// Natural G-isomorphism classes of degree-`n` chains with transport data.
    ///
    /// With `reversed`, orbits are seeded from the highest chain index, giving
    /// a second choice of representatives.
    pub fn g_stable_decomposition(&self, n: usize, g: &MorSet, reversed: bool) -> Vec<RawOrbit> {
        let cat = &self.cat;
        let sp = &self.spaces[n];
        let g_out: Vec<Vec<MorId>> = cat
            .objects()
            .map(|o| {
                let mut v: Vec<MorId> = cat.out_of(o).iter().copied().filter(|&m| g.contains(m) && cat.is_iso(m)).collect();
                v.sort();
                v
            })
            .collect();
        let mut seen: Vec<Option<(usize, MorId)>> = vec![None; sp.len()];
        let mut out = Vec::new();
        let order: Vec<usize> = if reversed { (0..sp.len()).rev().collect() } else { (0..sp.len()).collect() };
        for start in order {
            if seen[start].is_some() {
                continue;
            }
            let oi = out.len();
            let rep_obj = sp.chains[start].start();
            seen[start] = Some((oi, cat.id(rep_obj)));
            let mut members = vec![(start, cat.id(rep_obj))];
            let mut auts: Vec<MorId> = Vec::new();
            let mut queue = VecDeque::from([start]);
            while let Some(qi) = queue.pop_front() {
                let q = &sp.chains[qi];
                let cq = seen[qi].expect("queued chains are seen").1;
                for i in 0..=n {
                    for &m in &g_out[q.objs[i].0] {
                        if cat.is_identity(m) {
                            continue;
                        }
                        let q2 = self.moved(q, i, m);
                        let j = sp.index[&q2];
                        let mu0 = if i == 0 { m } else { cat.id(q.start()) };
                        let mu0_inv = cat.inverse(mu0).expect("isomorphism");
                        match seen[j] {
                            None => {
                                let c = cat.comp(cq, mu0_inv);
                                seen[j] = Some((oi, c));
                                members.push((j, c));
                                queue.push_back(j);
                            }
                            Some((_, cj)) => {
                                let cq_inv = cat.inverse(cq).expect("isomorphism");
                                let s = cat.comp_path(&[cq_inv, mu0, cj]);
                                if !cat.is_identity(s) && !auts.contains(&s) {
                                    auts.push(s);
                                }
                            }
                        }
                    }
                }
            }
            auts.sort();
            members.sort();
            out.push(RawOrbit { rep: start, members, automorphisms: auts });
        }
        out
    }

    /// `C^n_G` as a product over orbit representatives of fixed submodules.
    pub fn stable_module(&self, n: usize, g: &MorSet, reversed: bool) -> Result<StableModule> {
        let raw = self.g_stable_decomposition(n, g, reversed);
        let sp = &self.spaces[n];
        let mut orbits = Vec::new();
        let mut orbit_of = vec![0; sp.len()];
        let mut offsets = Vec::new();
        let mut off = 0;
        for (oi, r) in raw.into_iter().enumerate() {
            let q0 = sp.chains[r.rep].start();
            let m = self.functor.obj(q0);
            let gens: Vec<ModHom> = r.automorphisms.iter().map(|&s| self.functor.mor(s).clone()).collect();
            let fixed = fixed_submodule(m, &gens)?;
            for &(j, _) in &r.members {
                orbit_of[j] = oi;
            }
            offsets.push(off);
            off += fixed.ngens();
            orbits.push(Orbit { rep: r.rep, members: r.members, automorphisms: r.automorphisms, fixed });
        }
        let module = FgMod::product(orbits.iter().map(|o| o.fixed.module()).collect::<Vec<_>>().iter());
        Ok(StableModule { degree: n, orbits, module, offsets, orbit_of })
    }

    /// Witness of the first failure of G-stability of `a`, if any.
    pub fn stability_witness(&self, st: &StableModule, a: &Cochain) -> Option<String> {
        let sp = &self.spaces[a.degree];
        for o in &st.orbits {
            let rep = &sp.chains[o.rep];
            let v = &a.values[o.rep];
            let m = self.functor.obj(rep.start());
            for &s in &o.automorphisms {
                let w = self.functor.mor(s).apply(v);
                if !m.is_zero_elem(&sub(&w, v)) {
                    return Some(format!(
                        "value {} at {} is moved by {}",
                        format_elem(v),
                        rep.describe(&self.cat),
                        self.cat.mor_name(s)
                    ));
                }
            }
            for &(j, c) in &o.members {
                let expect = self.functor.mor(c).apply(v);
                let mj = self.functor.obj(sp.chains[j].start());
                if !mj.is_zero_elem(&sub(&expect, &a.values[j])) {
                    return Some(format!(
                        "value {} at {} differs from the transported value {} from {}",
                        format_elem(&a.values[j]),
                        sp.chains[j].describe(&self.cat),
                        format_elem(&expect),
                        rep.describe(&self.cat)
                    ));
                }
            }
        }
        None
    }

    /// The stable cochain with coordinates `x` in `st.module`.
    pub fn embed(&self, st: &StableModule, x: &[BigInt]) -> Cochain {
        let mut a = self.zero(st.degree);
        for (oi, o) in st.orbits.iter().enumerate() {
            let k = o.fixed.ngens();
            let local = &x[st.offsets[oi]..st.offsets[oi] + k];
            let v = o.fixed.gens.mul_vec(local);
            for &(j, c) in &o.members {
                a.values[j] = self.functor.mor(c).apply(&v);
            }
        }
        a
    }

    /// Coordinates of a stable cochain; fails with a witness otherwise.
    pub fn stable_coords(&self, st: &StableModule, a: &Cochain) -> Result<Vec<BigInt>> {
        if let Some(w) = self.stability_witness(st, a) {
            return Err(Error::property("cochain is G-stable", w));
        }
        let mut out = Vec::with_capacity(st.module.ngens());
        for o in &st.orbits {
            let c = o.fixed.coords(&a.values[o.rep]).expect("fixed values lie in the fixed submodule");
            out.extend(c);
        }
        Ok(out)
    }

    /// `d_n` restricted to stable cochains, with stability of every image checked.
    pub fn stable_differential(&self, src: &StableModule, dst: &StableModule) -> Result<ModHom> {
        let cols: Vec<Vec<BigInt>> = (0..src.module.ngens())
            .map(|j| {
                let a = self.embed(src, &src.module.basis_elem(j));
                let da = self.differential(&a);
                self.stable_coords(dst, &da).map_err(|e| match e {
                    Error::Property { witness, .. } => Error::property(
                        "the differential preserves G-stability",
                        format!("image of stable generator {j}: {witness}"),
                    ),
                    other => other,
                })
            })
            .collect::<Result<_>>()?;
        ModHom::new(src.module.clone(), dst.module.clone(), IntMatrix::from_cols(dst.module.ngens(), &cols))
    }
}

/// An orbit of chains before fixed points are taken.
#[derive(Clone, Debug)]
pub struct RawOrbit {
    pub rep: usize,
    /// `(chain, c)` with `c = χ_0: q(0) -> rep(0)` for some `χ: q ≅ rep`.
    pub members: Vec<(usize, MorId)>,
    /// `χ_0` components generating the natural G-automorphisms of the representative.
    pub automorphisms: Vec<MorId>,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub rep: usize,
    pub members: Vec<(usize, MorId)>,
    pub automorphisms: Vec<MorId>,
    pub fixed: Subquotient,
}

/// `C^n_G` realized as `Π_orbits a(rep(0))^{Aut}`.
#[derive(Clone, Debug)]
pub struct StableModule {
    pub degree: usize,
    pub orbits: Vec<Orbit>,
    pub module: FgMod,
    offsets: Vec<usize>,
    orbit_of: Vec<usize>,
}

impl StableModule {
    pub fn orbit_of(&self, chain: usize) -> usize {
        self.orbit_of[chain]
    }
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The stable subcomplex in degrees `0..=top`, with its differentials.
#[derive(Clone, Debug)]
pub struct StableComplex {
    pub complex: StandardComplex,
    pub g: MorSet,
    pub stable: Vec<StableModule>,
    /// `diffs[n]: C^n_G -> C^{n+1}_G`.
    pub diffs: Vec<ModHom>,
}

impl StableComplex {
    pub fn new(cat: &FinCat, g: &MorSet, f: &ContraFun, top: usize, max_degree: usize) -> Result<StableComplex> {
        Self::build(cat, g, f, top, max_degree, false)
    }

    pub fn build(cat: &FinCat, g: &MorSet, f: &ContraFun, top: usize, max_degree: usize, reversed: bool) -> Result<StableComplex> {
        if let Some(m) = g.iter().find(|&m| !cat.is_iso(m)) {
            return Err(Error::precondition("G consists of isomorphisms", cat.mor_name(m).to_string()));
        }
        let complex = StandardComplex::new(cat, f, top, max_degree)?;
        let stable: Vec<StableModule> = (0..=top).map(|n| complex.stable_module(n, g, reversed)).collect::<Result<_>>()?;
        let diffs = (0..top).map(|n| complex.stable_differential(&stable[n], &stable[n + 1])).collect::<Result<_>>()?;
        Ok(StableComplex { complex, g: g.clone(), stable, diffs })
    }

    /// `H^n` of the stable complex, for `n < top`.
    pub fn cohomology(&self, n: usize) -> Result<FgMod> {
        if n >= self.diffs.len() {
            return Err(Error::input(format!("cohomology in degree {n} needs the complex up to degree {}", n + 1)));
        }
        let d_prev = if n == 0 { ModHom::zero(&FgMod::zero(), &self.stable[0].module) } else { self.diffs[n - 1].clone() };
        Ok(complex_cohomology(&d_prev, &self.diffs[n])?.module())
    }
}

/// `H^n_G(B, a)`.
pub fn stable_cohomology(cat: &FinCat, g: &MorSet, f: &ContraFun, n: usize, max_degree: usize) -> Result<FgMod> {
    if n + 1 > max_degree {
        return Err(Error::Limit(format!("cohomology in degree {n} needs chains of degree {} beyond the cap {max_degree}", n + 1)));
    }
    StableComplex::new(cat, g, f, n + 1, max_degree)?.cohomology(n)
}

/// Mutually inverse maps between `C^n_{G̃}(B̃, ã)` and `C^n_G(B, ã∘e)`.
#[derive(Clone, Debug)]
pub struct QuotientIdentification {
    pub degree: usize,
    pub to_base: ModHom,
    pub to_quotient: ModHom,
}

impl fmt::Display for QuotientIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: {} <-> {}", self.degree, self.to_quotient.dom(), self.to_base.dom())
    }
}

/// Realizes `a_q = a_{e∘q}` in degree `n` between a stable complex over the
/// base and one over the quotient. Every lift of a quotient chain must carry
/// the same base value; a disagreement is reported.
pub fn identify_quotient_cochains(
    base: &StableComplex,
    quot: &StableComplex,
    q: &Quotient,
    n: usize,
) -> Result<QuotientIdentification> {
    let bc = &base.complex;
    let qc = &quot.complex;
    if bc.functor != qc.functor.pull_back(&bc.cat, &q.e) {
        return Err(Error::precondition("the base functor is the pull-back of the quotient functor", "functor data differ"));
    }
    let (bs, qs) = (&bc.spaces[n], &qc.spaces[n]);
    let image: Vec<usize> = bs
        .chains
        .iter()
        .map(|c| qs.index[&c.map(|o| o, |m| q.e[m.0])])
        .collect();
    let (bst, qst) = (&base.stable[n], &quot.stable[n]);
    let to_base_cols: Vec<Vec<BigInt>> = (0..qst.module.ngens())
        .map(|j| {
            let a = qc.embed(qst, &qst.module.basis_elem(j));
            let b = Cochain { degree: n, values: image.iter().map(|&i| a.values[i].clone()).collect() };
            bc.stable_coords(bst, &b)
        })
        .collect::<Result<_>>()?;
    let to_quot_cols: Vec<Vec<BigInt>> = (0..bst.module.ngens())
        .map(|j| {
            let b = bc.embed(bst, &bst.module.basis_elem(j));
            let mut vals: Vec<Option<Vec<BigInt>>> = vec![None; qs.len()];
            for (bi, &qi) in image.iter().enumerate() {
                let m = qc.functor.obj(qs.chains[qi].start());
                match &vals[qi] {
                    None => vals[qi] = Some(b.values[bi].clone()),
                    Some(v) if m.is_zero_elem(&sub(v, &b.values[bi])) => {}
                    Some(_) => {
                        return Err(Error::property(
                            "stable base cochains are constant on lifts",
                            format!("lifts of {} disagree", qs.chains[qi].describe(&qc.cat)),
                        ))
                    }
                }
            }
            let a = Cochain {
                degree: n,
                values: vals.into_iter().map(|v| v.expect("every quotient chain lifts")).collect(),
            };
            qc.stable_coords(qst, &a)
        })
        .collect::<Result<_>>()?;
    let to_base = ModHom::new(qst.module.clone(), bst.module.clone(), IntMatrix::from_cols(bst.module.ngens(), &to_base_cols))?;
    let to_quotient = ModHom::new(bst.module.clone(), qst.module.clone(), IntMatrix::from_cols(qst.module.ngens(), &to_quot_cols))?;
    Ok(QuotientIdentification { degree: n, to_base, to_quotient })
}

impl QuotientIdentification {
    /// Both round trips are identities.
    pub fn is_inverse_pair(&self) -> bool {
        self.to_quotient.compose(&self.to_base) == ModHom::identity(self.to_base.dom())
            && self.to_base.compose(&self.to_quotient) == ModHom::identity(self.to_quotient.dom())
    }
}

/// Tabulated `H^n` for `n = 0..=max`, one line per degree.
pub fn cohomology_table(sc: &StableComplex, max: usize) -> Result<String> {
    let mut s = String::from("degree  H^n\n");
    for n in 0..=max {
        s.push_str(&format!("{n:<7} {}\n", sc.cohomology(n)?.iso_type()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests;
