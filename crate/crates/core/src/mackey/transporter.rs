use std::collections::HashMap;

use super::GroupData;
use crate::error::{Error, Result};
use crate::fincat::{
    bi_exterior_quotient, check_a_category, trivial_structure, CatBuilder, FinCat, MarkedCat, MorId, MorSet, ObjId, Quotient,
};
use crate::group::Subgroup;

/// The transporter category `T` of a [`GroupData`] with morphisms
/// `(x, u): R → Q` for `x ∈ T_G(R, Q)`, `u ∈ P`, and its markings: `A = T_P`,
/// `G` all isomorphisms, `I(Q) = Q×P`, `I°(Q) = C_G(Q)×1`.
#[derive(Clone, Debug)]
pub struct Transporter {
    pub gd: GroupData,
    pub subgroups: Vec<Subgroup>,
    pub marked: MarkedCat,
    /// `(x, u)` for each morphism of `T`.
    pub labels: Vec<(usize, usize)>,
    index: HashMap<(usize, usize, usize, usize), MorId>,
}

struct Built {
    cat: FinCat,
    labels: Vec<(usize, usize)>,
    index: HashMap<(usize, usize, usize, usize), MorId>,
}

fn subgroup_name(gd: &GroupData, subgroups: &[Subgroup], i: usize) -> String {
    let h = &subgroups[i];
    if h.len() == 1 {
        "1".into()
    } else if *h == gd.p {
        "P".into()
    } else {
        format!("Q{i}")
    }
}

fn build(gd: &GroupData, subgroups: &[Subgroup], within: &[usize]) -> Result<Built> {
    let g = &gd.g;
    let mut b = CatBuilder::new();
    let names: Vec<String> = (0..subgroups.len()).map(|i| subgroup_name(gd, subgroups, i)).collect();
    for n in &names {
        b.object(n.clone());
    }
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for (r, rs) in subgroups.iter().enumerate() {
        for (q, qs) in subgroups.iter().enumerate() {
            for x in g.transporter(rs, qs, within) {
                for &u in &gd.p {
                    let m = b.morphism(format!("{}.{}:{}>{}", g.name(x), g.name(u), names[r], names[q]), ObjId(r), ObjId(q));
                    labels.push((x, u));
                    index.insert((r, q, x, u), m);
                }
            }
        }
    }
    let e = g.identity();
    for r in 0..subgroups.len() {
        b.identity(ObjId(r), index[&(r, r, e, e)]);
    }
    let mut srcs: Vec<Vec<MorId>> = vec![Vec::new(); subgroups.len()];
    let mut ends = Vec::with_capacity(labels.len());
    for (&(r, q, _, _), &m) in &index {
        srcs[r].push(m);
        ends.push((m, r, q));
    }
    ends.sort();
    for &(f, _, q) in &ends {
        let (x, u) = labels[f.0];
        let r = ends[f.0].1;
        for &h in &srcs[q] {
            let (y, v) = labels[h.0];
            let s = ends[h.0].2;
            b.compose(h, f, index[&(r, s, g.mul(y, x), g.mul(v, u))]);
        }
    }
    Ok(Built { cat: b.build()?, labels, index })
}

/// Builds `T` on `objects` (default: all subgroups of `P`, by size).
pub fn transporter_categories(gd: &GroupData, objects: Option<Vec<Subgroup>>) -> Result<Transporter> {
    let g = &gd.g;
    let subgroups = match objects {
        None => g.subgroups_of(&gd.p),
        Some(list) => {
            let mut list: Vec<Subgroup> = list
                .into_iter()
                .map(|mut h| {
                    h.sort_unstable();
                    h
                })
                .collect();
            list.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            list.dedup();
            for h in &list {
                if !g.is_subgroup(h) || !h.iter().all(|x| gd.p.binary_search(x).is_ok()) {
                    return Err(Error::input("object is not a subgroup of P"));
                }
                for k in g.subgroups_of(h) {
                    if !list.contains(&k) {
                        return Err(Error::input("the object set is not closed under subgroups"));
                    }
                }
            }
            list
        }
    };
    let built = build(gd, &subgroups, &g.elements().collect::<Vec<_>>())?;
    let cat = built.cat;
    let a = MorSet::from_iter(
        cat.num_morphisms(),
        cat.morphisms().filter(|m| gd.p.binary_search(&built.labels[m.0].0).is_ok()),
    );
    let gm = cat.all_isos();
    let e = g.identity();
    let interior = (0..subgroups.len())
        .map(|q| {
            let qs = &subgroups[q];
            qs.iter().flat_map(|&x| gd.p.iter().map(move |&u| (x, u))).map(|(x, u)| built.index[&(q, q, x, u)]).collect()
        })
        .collect();
    let cointerior = (0..subgroups.len())
        .map(|q| g.centralizer(&subgroups[q], &g.elements().collect::<Vec<_>>()).into_iter().map(|c| built.index[&(q, q, c, e)]).collect())
        .collect();
    let marked = MarkedCat { cat, a, g: gm, interior, cointerior };
    Ok(Transporter { gd: gd.clone(), subgroups, marked, labels: built.labels, index: built.index })
}

impl Transporter {
    pub fn cat(&self) -> &FinCat {
        &self.marked.cat
    }

    pub fn object_of(&self, h: &[usize]) -> Option<ObjId> {
        let mut h = h.to_vec();
        h.sort_unstable();
        self.subgroups.iter().position(|s| *s == h).map(ObjId)
    }

    pub fn morphism(&self, r: ObjId, q: ObjId, x: usize, u: usize) -> Option<MorId> {
        self.index.get(&(r.0, q.0, x, u)).copied()
    }

    /// The category `T_P` on the same objects.
    pub fn t_p(&self) -> Result<FinCat> {
        Ok(build(&self.gd, &self.subgroups, &self.gd.p)?.cat)
    }

    /// `F`: the exterior quotient by `C_G(Q)×P`.
    pub fn fusion_quotient(&self) -> Result<Quotient> {
        let g = &self.gd.g;
        let all: Vec<usize> = g.elements().collect();
        let co: Vec<Vec<MorId>> = (0..self.subgroups.len())
            .map(|q| {
                g.centralizer(&self.subgroups[q], &all)
                    .into_iter()
                    .flat_map(|c| self.gd.p.iter().map(move |&u| (c, u)))
                    .map(|(c, u)| self.index[&(q, q, c, u)])
                    .collect()
            })
            .collect();
        bi_exterior_quotient(self.cat(), &trivial_structure(self.cat()), &co)
    }

    /// `T̃^x`: the exterior quotient by the interior structure `Q×P`.
    pub fn interior_quotient(&self) -> Result<Quotient> {
        bi_exterior_quotient(self.cat(), &self.marked.interior, &trivial_structure(self.cat()))
    }

    /// `F̃`: the bi-exterior quotient by `(Q×P, C_G(Q)×1)`.
    pub fn bi_quotient(&self) -> Result<Quotient> {
        bi_exterior_quotient(self.cat(), &self.marked.interior, &self.marked.cointerior)
    }

    /// Orderedness of `T` and `T_P` and the `T_P`-category axioms for `T`.
    pub fn structure_violations(&self) -> Result<Vec<String>> {
        let mut v = Vec::new();
        if let Some(m) = self.cat().ordered_witness() {
            v.push(format!("T is not ordered at {}", self.cat().mor_name(m)));
        }
        let tp = self.t_p()?;
        if let Some(m) = tp.ordered_witness() {
            v.push(format!("T_P is not ordered at {}", tp.mor_name(m)));
        }
        v.extend(check_a_category(self.cat(), &self.marked.a).violations.into_iter().map(|w| format!("T_P-category: {w}")));
        Ok(v)
    }
}

/// `Q_ω` and the twisting element `t_ω^Q` with `(Q×P)_ω = {(t v t⁻¹, v) : v ∈ Q_ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub sub: ObjId,
    pub twist: usize,
}

/// Computes `(Q×P)_ω` and checks that it is a twisted diagonal realized by
/// an element of `G`.
pub fn stabilizer_data(tr: &Transporter, q: ObjId, w: usize) -> Result<Stabilizer> {
    let gd = &tr.gd;
    let g = &gd.g;
    let qs = &tr.subgroups[q.0];
    let mut pairs = Vec::new();
    for &x in qs {
        for &v in &gd.p {
            if gd.bi(x, w, v) == w {
                pairs.push((x, v));
            }
        }
    }
    let not_basic = |why: String| Error::precondition("Ω is basic: every (Q×P)_ω is a twisted diagonal", why);
    let e = g.identity();
    if let Some(&(x, _)) = pairs.iter().find(|&&(x, v)| v == e && x != e) {
        return Err(not_basic(format!("({}, 1) ∈ (Q×P)_ω for Q = {}, ω = {w}", g.name(x), tr.cat().obj_name(q))));
    }
    let mut sub: Vec<usize> = pairs.iter().map(|&(_, v)| v).collect();
    sub.sort_unstable();
    let obj = tr.object_of(&sub).ok_or_else(|| {
        not_basic(format!("Q_ω for Q = {}, ω = {w} is not among the objects", tr.cat().obj_name(q)))
    })?;
    let twist = g
        .elements()
        .find(|&t| pairs.iter().all(|&(x, v)| g.conj(t, v) == x))
        .ok_or_else(|| not_basic(format!("no t ∈ G twists (Q×P)_ω for Q = {}, ω = {w}", tr.cat().obj_name(q))))?;
    Ok(Stabilizer { sub: obj, twist })
}

/// Stabilizer data for every object and point, indexed `[Q][ω]`.
pub fn all_stabilizers(tr: &Transporter) -> Result<Vec<Vec<Stabilizer>>> {
    tr.cat().objects().map(|q| (0..tr.gd.omega).map(|w| stabilizer_data(tr, q, w)).collect()).collect()
}

/// For every `(x, u): R → Q` and `ω`: `u R_ω u⁻¹ ⊆ Q_{xωu⁻¹}` and
/// `x t_ω^R ≡ t^Q_{xωu⁻¹} u` modulo `C_G(R_ω)`.
pub fn stabilizer_violations(tr: &Transporter, stabs: &[Vec<Stabilizer>]) -> Vec<String> {
    let gd = &tr.gd;
    let g = &gd.g;
    let cat = tr.cat();
    let mut v = Vec::new();
    for m in cat.morphisms() {
        let (x, u) = tr.labels[m.0];
        let (r, q) = (cat.src(m), cat.dst(m));
        for w in 0..gd.omega {
            let w2 = gd.bi(x, w, u);
            let (sr, sq) = (stabs[r.0][w], stabs[q.0][w2]);
            let rw = &tr.subgroups[sr.sub.0];
            let qw = &tr.subgroups[sq.sub.0];
            if !rw.iter().all(|&a| qw.binary_search(&g.conj(u, a)).is_ok()) {
                v.push(format!("u R_ω u⁻¹ is not inside Q_ω' at {}, ω = {w}", cat.mor_name(m)));
                continue;
            }
            let c = g.mul(g.inv(g.mul(sq.twist, u)), g.mul(x, sr.twist));
            if !rw.iter().all(|&a| g.mul(c, a) == g.mul(a, c)) {
                v.push(format!("x t_ω^R and t_ω'^Q u differ outside C_G(R_ω) at {}, ω = {w}", cat.mor_name(m)));
            }
        }
    }
    v
}
