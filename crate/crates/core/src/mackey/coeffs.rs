use num_bigint::BigInt;

use super::{Complement, MackeySystem};
use crate::abgrp::{FgMod, IntMatrix, ModHom, Ring};
use crate::error::{Error, Result};
use crate::fincat::ObjId;
use crate::functorlib::ContraFun;

/// A functor on `F̃` together with its complement.
#[derive(Clone, Debug)]
pub struct Coefficients {
    pub functor: ContraFun,
    pub complement: Complement,
}

/// The ring itself on every object; restrictions are the identity and
/// `a°(φ̃)` is multiplication by the index `|Q|/|R|`.
pub fn constant_coefficients(ms: &MackeySystem, ring: &Ring) -> Coefficients {
    let qc = ms.system.qcat();
    let m = match ring.modulus() {
        None => FgMod::free(1),
        Some(q) => FgMod::new(vec![q]).expect("modulus is positive"),
    };
    let functor = ContraFun::constant(qc, &m);
    let on_mor = qc
        .morphisms()
        .map(|f| ModHom::scalar(&m, &BigInt::from(ms.order(qc.dst(f)) / ms.order(qc.src(f)))))
        .collect();
    Coefficients { functor, complement: Complement { on_mor } }
}

/// `Q ↦ Z(Q)` on self-centralizing objects (`C_G(Q) ≤ Q`) and `0` elsewhere,
/// with `c_x: R -> Q` acting by `z ↦ x⁻¹ z x`. The complement sends `z ∈ Z(R)`
/// to `(x z x⁻¹)^{|Q:R|}`, which needs every self-centralizing object to be
/// abelian. Whether this is a compatible complement depends on the group;
/// for cyclic `P` it is exactly when `|P| = p`.
pub fn center_coefficients(ms: &MackeySystem) -> Result<Coefficients> {
    let tr = &ms.tr;
    let g = &tr.gd.g;
    let qc = ms.system.qcat();
    let all: Vec<usize> = g.elements().collect();
    let mut bases = Vec::new();
    let mut mods = Vec::new();
    for q in qc.objects() {
        let qs = &tr.subgroups[q.0];
        let sc = g.centralizer(qs, &all).iter().all(|c| qs.binary_search(c).is_ok());
        if sc {
            let (basis, orders) = g.abelian_basis(&g.center(qs))?;
            let coords = g.abelian_coords(&basis, &orders);
            mods.push(FgMod::from_orders(&orders.iter().map(|&o| o as i64).collect::<Vec<_>>()));
            bases.push(Some((basis, coords)));
        } else {
            mods.push(FgMod::zero());
            bases.push(None);
        }
    }
    let hom = |from: ObjId, to: ObjId, image: &dyn Fn(usize) -> usize| -> ModHom {
        match (&bases[from.0], &bases[to.0]) {
            (Some((bf, _)), Some((_, ct))) => {
                let cols: Vec<Vec<BigInt>> =
                    bf.iter().map(|&z| ct[&image(z)].iter().map(|&c| BigInt::from(c)).collect()).collect();
                let m = IntMatrix::from_cols(mods[to.0].ngens(), &cols);
                ModHom::new(mods[from.0].clone(), mods[to.0].clone(), m).expect("conjugation is a homomorphism")
            }
            _ => ModHom::zero(&mods[from.0], &mods[to.0]),
        }
    };
    let mut on_mor = Vec::new();
    let mut co = Vec::new();
    for f in qc.morphisms() {
        let (r, q) = (qc.src(f), qc.dst(f));
        let x = tr.labels[ms.system.quotient.reps[f.0].0].0;
        on_mor.push(hom(q, r, &|z| g.conj(g.inv(x), z)));
        if bases[r.0].is_some() && g.center(&tr.subgroups[q.0]).len() != tr.subgroups[q.0].len() {
            return Err(Error::precondition(
                "the center complement needs abelian self-centralizing objects",
                qc.obj_name(q).to_string(),
            ));
        }
        let index = ms.order(q) / ms.order(r);
        co.push(hom(r, q, &|z| {
            let y = g.conj(x, z);
            (0..index).fold(g.identity(), |acc, _| g.mul(acc, y))
        }));
    }
    let functor = ContraFun::new(qc, mods, on_mor)?;
    Ok(Coefficients { functor, complement: Complement { on_mor: co } })
}
