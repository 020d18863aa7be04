//! Transporter categories of a basic `P×P`-set, their homotopic system, special
//! squares, compatible complements and the induced section.

mod coeffs;
mod data;
mod section;
mod squares;
mod transporter;

#[cfg(test)]
mod tests;

pub use coeffs::{center_coefficients, constant_coefficients, Coefficients};
pub use data::{parse_group_data, CoefficientKind, GroupData};
pub use section::{mackey_section, representative_independence, verify_mackey, MackeyReport, OrbitChoice};
pub use squares::{
    check_compatible_complement, check_pull_backs, special_square, special_square_with, Complement, SpecialSquare,
};
pub use transporter::{all_stabilizers, stabilizer_data, stabilizer_violations, transporter_categories, Stabilizer, Transporter};

use crate::error::{Error, Result};
use crate::fincat::{bi_exterior_quotient, MorSet, ObjId, SetFunctor};
use crate::homotopy::{validate_system, HomotopicSystem};

/// The homotopic system on `T` built from the stabilizers of `Ω`.
#[derive(Clone, Debug)]
pub struct MackeySystem {
    pub tr: Transporter,
    pub stabs: Vec<Vec<Stabilizer>>,
    pub system: HomotopicSystem,
}

/// Assembles `(T, I, I°, s, n, ν)` with `s(x, u)(ω) = x·ω·u⁻¹`,
/// `n(ω, R) = R_ω` and `ν_{(ω, Q)}` the class of `(t_ω^Q, 1)`. The marking
/// `G` defaults to all isomorphisms of `T`.
pub fn mackey_system(tr: &Transporter, g_marking: Option<MorSet>) -> Result<MackeySystem> {
    let gd = &tr.gd;
    let e = gd.g.identity();
    let stabs = all_stabilizers(tr)?;
    let mut base = tr.marked.clone();
    if let Some(g) = g_marking {
        base.g = g;
    }
    let cat = &base.cat;
    let s = SetFunctor {
        sizes: vec![gd.omega; cat.num_objects()],
        maps: cat.morphisms().map(|m| {
            let (x, u) = tr.labels[m.0];
            (0..gd.omega).map(|w| gd.bi(x, w, u)).collect()
        }).collect(),
    };
    let quotient = bi_exterior_quotient(cat, &base.interior, &base.cointerior)?;
    let missing = |what: &str| Error::property("the stabilizer data gives morphisms of T", what.to_string());
    let mut n_mor = Vec::new();
    for m in cat.morphisms() {
        let (_, u) = tr.labels[m.0];
        let row = (0..gd.omega)
            .map(|w| {
                let from = stabs[cat.src(m).0][w].sub;
                let to = stabs[cat.dst(m).0][s.maps[m.0][w]].sub;
                tr.morphism(from, to, u, e).map(|x| quotient.e[x.0]).ok_or_else(|| missing(cat.mor_name(m)))
            })
            .collect::<Result<Vec<_>>>()?;
        n_mor.push(row);
    }
    let mut nu = Vec::new();
    for q in cat.objects() {
        let row = (0..gd.omega)
            .map(|w| {
                let st = stabs[q.0][w];
                tr.morphism(st.sub, q, st.twist, e).map(|x| quotient.e[x.0]).ok_or_else(|| missing(cat.obj_name(q)))
            })
            .collect::<Result<Vec<_>>>()?;
        nu.push(row);
    }
    let system = HomotopicSystem::new(
        base,
        s,
        |q, w| stabs[q.0][w].sub,
        |phi, w| n_mor[phi.0][w],
        |q, w| nu[q.0][w],
    )?;
    Ok(MackeySystem { tr: tr.clone(), stabs, system })
}

/// Everything [`validate_system`] checks, plus the structure of `T`, the
/// stabilizer compatibilities and `G ⊇ T_P`-isomorphisms.
pub fn validate_mackey(ms: &MackeySystem) -> Result<Vec<String>> {
    let mut v = ms.tr.structure_violations()?;
    let base = &ms.system.base;
    if let Some(m) = base.a.iter().find(|&m| base.cat.is_iso(m) && !base.g.contains(m)) {
        v.push(format!("the T_P-isomorphism {} is not in G", base.cat.mor_name(m)));
    }
    v.extend(stabilizer_violations(&ms.tr, &ms.stabs));
    v.extend(validate_system(&ms.system));
    Ok(v)
}

impl MackeySystem {
    pub fn order(&self, q: ObjId) -> usize {
        self.tr.subgroups[q.0].len()
    }
}
