use num_bigint::BigInt;

use super::{HFunctor, HomotopicSystem, SectionData};
use crate::complex::{Chain, Cochain, StableComplex};
use crate::error::{Error, Result};
use crate::fincat::MorId;
use crate::functorlib::ContraFun;

/// `q̂_s`: the lift of a base chain to `s ⋊ B` starting at `s ∈ s_{q(0)}`.
pub fn lift_chain(sys: &HomotopicSystem, q: &Chain, s: usize) -> Chain {
    let sd = &sys.semidirect;
    let mut t = s;
    let mut objs = vec![sd.object(q.objs[0], t)];
    let mut arrows = Vec::with_capacity(q.degree());
    for (i, &f) in q.arrows.iter().enumerate() {
        arrows.push(sd.morphism(f, t));
        t = sys.s.apply(f, t);
        objs.push(sd.object(q.objs[i + 1], t));
    }
    Chain { objs, arrows }
}

/// The chain of degree `n + 1` in the quotient running through
/// `n(q̂(0)), …, n(q̂(ℓ))` and then `q(ℓ), …, q(n)` via `ν_{q̂(ℓ)}`; for
/// `ℓ = n + 1` it ends with the morphism to `P`.
pub fn interpolated_chain(sys: &HomotopicSystem, qhat: &Chain, l: usize) -> Result<Chain> {
    let n = qhat.degree();
    if l > n + 1 {
        return Err(Error::input(format!("interpolation index {l} exceeds {}", n + 1)));
    }
    let mut arrows: Vec<MorId> = qhat.arrows[..l.min(n)].iter().map(|m| sys.n_mor[m.0]).collect();
    if l <= n {
        arrows.push(sys.nu[qhat.objs[l].0]);
        arrows.extend(qhat.arrows[l..].iter().map(|&m| sys.p_tilde(m)));
    } else {
        let last = sys.n_obj[qhat.objs[n].0];
        let to_p = sys.to_p(last).ok_or_else(|| {
            Error::precondition("every object has an A-morphism to P", sys.qcat().obj_name(last).to_string())
        })?;
        arrows.push(to_p);
    }
    Chain::from_arrows(sys.qcat(), &arrows)
}

/// The maps `h^n: C^{n+1}_{G̃}(B̃, ã) -> C^n_{G̃}(B̃, ã)` determined by a
/// section `θ`.
#[derive(Clone, Debug)]
pub struct HomotopyOperator {
    pub sys: HomotopicSystem,
    pub at: ContraFun,
    pub h: HFunctor,
    pub theta: SectionData,
    pub complex: StableComplex,
}

/// Outcome of checking `d_n h^n + h^{n+1} d_{n+1} = id` on a basis of `C^{n+1}_{G̃}`.
#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub degree: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ContractionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn add_into(acc: &mut [BigInt], x: &[BigInt], sign: i32) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b * sign;
    }
}

impl HomotopyOperator {
    /// Builds the stable complex of the quotient in degrees `0..=top`.
    pub fn new(
        sys: &HomotopicSystem,
        at: &ContraFun,
        h: &HFunctor,
        theta: &SectionData,
        top: usize,
        max_degree: usize,
    ) -> Result<HomotopyOperator> {
        let complex = StableComplex::new(sys.qcat(), &sys.g_tilde, at, top, max_degree)?;
        Ok(HomotopyOperator { sys: sys.clone(), at: at.clone(), h: h.clone(), theta: theta.clone(), complex })
    }

    /// `h^n(a)` at the base chain `q`.
    pub fn value_at(&self, a: &Cochain, q: &Chain) -> Result<Vec<BigInt>> {
        let n = q.degree();
        if a.degree != n + 1 {
            return Err(Error::input(format!("h^{n} takes a cochain of degree {}", n + 1)));
        }
        let space = self.complex.complex.space(n + 1);
        let q0 = q.start();
        let full = &self.h.full[q0.0];
        let mut out = self.at.obj(q0).zero_elem();
        for l in 0..=n + 1 {
            let mut b = full.zero_elem();
            for s in 0..self.sys.s.sizes[q0.0] {
                let c = interpolated_chain(&self.sys, &lift_chain(&self.sys, q, s), l)?;
                let idx = space.index_of(&c).ok_or_else(|| {
                    Error::property("interpolated chains are chains of the quotient", c.describe(self.sys.qcat()))
                })?;
                self.h.inject(q0, s, &a.values[idx], &mut b);
            }
            let b = full.reduce(&b);
            let coords = self.h.fixed_coords(q0, &b).ok_or_else(|| {
                Error::property(
                    "the interpolated values lie in H(ã)",
                    format!("ℓ = {l} at {}", q.describe(self.sys.cat())),
                )
            })?;
            let t = self.theta.components[q0.0].apply(&coords);
            add_into(&mut out, &t, if l % 2 == 0 { 1 } else { -1 });
        }
        Ok(self.at.obj(q0).reduce(&out))
    }

    /// The chosen base lift of a quotient chain.
    pub fn lift(&self, q: &Chain) -> Chain {
        q.map(|o| o, |m| self.sys.quotient.reps[m.0])
    }

    /// `h^n(a)` for `a` of degree `n + 1`.
    pub fn apply(&self, a: &Cochain) -> Result<Cochain> {
        let n = a.degree.checked_sub(1).ok_or_else(|| Error::input("h is defined from degree 1"))?;
        let values = self
            .complex
            .complex
            .space(n)
            .chains
            .iter()
            .map(|q| self.value_at(a, &self.lift(q)))
            .collect::<Result<_>>()?;
        Ok(Cochain { degree: n, values })
    }

    /// Chains of degree `n` whose value of `h^n(a)` depends on the base lift,
    /// trying at most `limit` lifts per chain.
    pub fn lift_dependence(&self, a: &Cochain, limit: usize) -> Result<Vec<String>> {
        let n = a.degree - 1;
        let b = self.sys.cat();
        let mut pre: Vec<Vec<MorId>> = vec![Vec::new(); self.sys.qcat().num_morphisms()];
        for m in b.morphisms() {
            pre[self.sys.quotient.e[m.0].0].push(m);
        }
        let mut v = Vec::new();
        for q in &self.complex.complex.space(n).chains {
            let base = self.value_at(a, &self.lift(q))?;
            let m = self.at.obj(q.start());
            let mut choice = vec![0usize; n];
            for _ in 0..limit {
                let arrows: Vec<MorId> = (0..n).map(|i| pre[q.arrows[i].0][choice[i]]).collect();
                let lifted = Chain { objs: q.objs.clone(), arrows };
                let val = self.value_at(a, &lifted)?;
                let diff: Vec<BigInt> = val.iter().zip(&base).map(|(x, y)| x - y).collect();
                if !m.is_zero_elem(&diff) {
                    v.push(format!("{} depends on the lift {}", q.describe(self.sys.qcat()), lifted.describe(b)));
                }
                let mut i = 0;
                while i < n {
                    choice[i] += 1;
                    if choice[i] < pre[q.arrows[i].0].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        Ok(v)
    }

    /// Checks `d_n h^n + h^{n+1} d_{n+1} = id` and G̃-stability of `h^n`
    /// on every generator of `C^{n+1}_{G̃}`.
    pub fn verify_contraction(&self, n: usize) -> Result<ContractionReport> {
        if self.complex.complex.top() < n + 2 {
            return Err(Error::input(format!("degree {n} needs the complex up to degree {}", n + 2)));
        }
        let cx = &self.complex.complex;
        let st = &self.complex.stable[n + 1];
        let mut failures = Vec::new();
        for j in 0..st.module.ngens() {
            let a = cx.embed(st, &st.module.basis_elem(j));
            let ha = self.apply(&a)?;
            if let Some(w) = cx.stability_witness(&self.complex.stable[n], &ha) {
                failures.push(format!("h^{n} of generator {j} is not G-stable: {w}"));
                continue;
            }
            let dh = cx.differential(&ha);
            let hd = self.apply(&cx.differential(&a))?;
            let mut total = dh;
            for (t, x) in total.values.iter_mut().zip(&hd.values) {
                add_into(t, x, 1);
            }
            let diff = total.sub(&a);
            if let Some(i) = diff.first_nonzero(cx.space(n + 1), &self.at) {
                failures.push(format!(
                    "generator {j}: d h + h d differs from the identity at {}",
                    cx.space(n + 1).chains[i].describe(self.sys.qcat())
                ));
            }
        }
        Ok(ContractionReport { degree: n, checked: st.module.ngens(), failures })
    }
}
