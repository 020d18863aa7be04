use std::fmt::Write;

use num_bigint::BigInt;

use super::{check_compatible_complement, check_pull_backs, validate_mackey, Coefficients, MackeySystem};
use crate::abgrp::{FgMod, ModHom, Ring};
use crate::error::{Error, Result};
use crate::fincat::ObjId;
use crate::homotopy::{build_h_functor, check_section, HFunctor, HomotopyOperator, SectionData};

/// Which point of each `Q×P`-orbit on `Ω` represents it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitChoice {
    Least,
    Greatest,
}

fn orbit_representatives(ms: &MackeySystem, q: ObjId, choice: OrbitChoice) -> Vec<usize> {
    let gd = &ms.tr.gd;
    let mut seen = vec![false; gd.omega];
    let mut reps = Vec::new();
    for w in 0..gd.omega {
        if seen[w] {
            continue;
        }
        let mut orbit = Vec::new();
        for &x in &ms.tr.subgroups[q.0] {
            for &u in &gd.p {
                let z = gd.bi(x, w, u);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        reps.push(match choice {
            OrbitChoice::Least => *orbit.iter().min().expect("orbits are nonempty"),
            OrbitChoice::Greatest => *orbit.iter().max().expect("orbits are nonempty"),
        });
    }
    reps
}

/// `θ_Q(Σ a_ω) = (|P|/|Ω|)·Σ_{ω ∈ Γ_Q} a°(ν_{(ω, Q)})(a_ω)`.
pub fn mackey_section(ms: &MackeySystem, coeffs: &Coefficients, h: &HFunctor, ring: &Ring, choice: OrbitChoice) -> Result<SectionData> {
    let gd = &ms.tr.gd;
    let sys = &ms.system;
    let a = &coeffs.functor;
    let c = ring
        .fraction(&BigInt::from(gd.p.len()), &BigInt::from(gd.omega))
        .ok_or_else(|| {
            Error::precondition(
                "|Ω|/|P| is a unit in the coefficient ring",
                format!("|Ω|/|P| = {}/{} over {ring}; change p, k or Ω", gd.omega, gd.p.len()),
            )
        })?;
    let full: Vec<ModHom> = sys
        .cat()
        .objects()
        .map(|q| {
            let gamma = orbit_representatives(ms, q, choice);
            let doms: Vec<FgMod> = (0..gd.omega).map(|w| a.obj(ms.stabs[q.0][w].sub).clone()).collect();
            let cods = vec![a.obj(q).clone()];
            let row = (0..gd.omega)
                .map(|w| {
                    gamma.contains(&w).then(|| {
                        let nu = sys.nu[sys.semidirect.object(q, w).0];
                        coeffs.complement.on_mor[nu.0].scale(&c)
                    })
                })
                .collect();
            ModHom::from_blocks(&doms, &cods, &[row])
        })
        .collect();
    Ok(SectionData::from_full(h, &full))
}

/// The first object where the sections built from least and greatest orbit
/// representatives differ.
pub fn representative_independence(ms: &MackeySystem, coeffs: &Coefficients, h: &HFunctor, ring: &Ring) -> Result<Option<String>> {
    let a = mackey_section(ms, coeffs, h, ring, OrbitChoice::Least)?;
    let b = mackey_section(ms, coeffs, h, ring, OrbitChoice::Greatest)?;
    Ok(ms.system.cat().objects().find(|q| a.components[q.0] != b.components[q.0]).map(|q| {
        format!("θ at {} depends on the orbit representatives", ms.system.cat().obj_name(q))
    }))
}

/// Outcome of the full check on a system and a functor with complement.
#[derive(Clone, Debug, Default)]
pub struct MackeyReport {
    /// `(label, passed, detail)` in order.
    pub checks: Vec<(String, bool, String)>,
    /// `H^n_{G̃}(F̃, a)` for `n = 0..=max_degree`, as computed.
    pub cohomology: Vec<(usize, String)>,
}

impl MackeyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    fn push(&mut self, label: &str, witnesses: &[String], detail: String) -> bool {
        let ok = witnesses.is_empty();
        let d = if ok { detail } else { witnesses[0].clone() };
        self.checks.push((label.to_string(), ok, d));
        ok
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (label, ok, detail) in &self.checks {
            let _ = writeln!(s, "{} {label}: {detail}", if *ok { "PASS" } else { "FAIL" });
        }
        for (n, m) in &self.cohomology {
            let _ = writeln!(s, "H^{n} = {m}");
        }
        s
    }
}

/// Validates the system, the complement and the section, then checks
/// `d h + h d = id` in degrees `0..max_degree` and computes `H^n` by Smith
/// normal form, asserting it vanishes for `1 ≤ n ≤ max_degree`. Stops at the
/// first structural failure.
pub fn verify_mackey(ms: &MackeySystem, coeffs: &Coefficients, ring: &Ring, max_degree: usize) -> Result<MackeyReport> {
    let mut rep = MackeyReport::default();
    let sys = &ms.system;
    let qc = sys.qcat();
    if let Some(q) = qc.objects().find(|&q| !ring.admits(coeffs.functor.obj(q))) {
        return Err(Error::input(format!("a({}) is not a module over {ring}", qc.obj_name(q))));
    }
    let v = validate_mackey(ms)?;
    if !rep.push("system", &v, format!("{} objects, {} morphisms, |Ω| = {}", sys.cat().num_objects(), sys.cat().num_morphisms(), ms.tr.gd.omega)) {
        return Ok(rep);
    }
    let (cones, v) = check_pull_backs(ms)?;
    rep.push("pull-backs", &v, format!("{cones} single-object cones"));
    let v = check_compatible_complement(ms, &coeffs.functor, &coeffs.complement)?;
    if !rep.push("complement", &v, format!("{} morphisms", qc.num_morphisms())) {
        return Ok(rep);
    }
    let h = build_h_functor(sys, &coeffs.functor)?;
    let theta = mackey_section(ms, coeffs, &h, ring, OrbitChoice::Least)?;
    let v = check_section(sys, &coeffs.functor, &h, &theta)?;
    if !rep.push("section", &v, "θ natural and θ∘Δ_H = id".into()) {
        return Ok(rep);
    }
    let v: Vec<String> = representative_independence(ms, coeffs, &h, ring)?.into_iter().collect();
    rep.push("representatives", &v, "θ independent of Γ_Q".into());
    let top = max_degree + 1;
    let op = HomotopyOperator::new(sys, &coeffs.functor, &h, &theta, top, top)?;
    for n in 0..max_degree {
        let r = op.verify_contraction(n)?;
        rep.push(&format!("contraction degree {n}"), &r.failures, format!("{} generators", r.checked));
    }
    for n in 0..=max_degree {
        let m = op.complex.cohomology(n)?;
        let ty = m.iso_type().to_string();
        if n >= 1 {
            let v = if m.is_trivial() { Vec::new() } else { vec![format!("H^{n} = {ty}")] };
            rep.push(&format!("vanishing degree {n}"), &v, "H^n = 0".into());
        }
        rep.cohomology.push((n, ty));
    }
    Ok(rep)
}
