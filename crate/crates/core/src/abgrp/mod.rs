//! Finitely generated abelian groups and modules over `Z/p^k`, with exact
//! homomorphism algebra driven by Smith normal form.

mod lattice;
mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use lattice::{kernel_basis, kernel_mod_prime, span_basis, subquotient, Subquotient};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, smith_normal_form_with, Snf};

pub(crate) use lattice::reduce;

/// Coefficient ring: the integers, or `Z/p^k` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Modular { p: u64, k: u32 },
}

impl Ring {
    pub fn parse(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        let rest = s
            .strip_prefix("Zmod:")
            .ok_or_else(|| Error::input(format!("ring must be `Z` or `Zmod:p^k`, got `{s}`")))?;
        let (p, k) = match rest.split_once('^') {
            Some((p, k)) => (p, k),
            None => (rest, "1"),
        };
        let p: u64 = p.trim().parse().map_err(|_| Error::input(format!("bad prime in `{s}`")))?;
        let k: u32 = k.trim().parse().map_err(|_| Error::input(format!("bad exponent in `{s}`")))?;
        if p < 2 || !is_prime(p) {
            return Err(Error::input(format!("`{p}` is not a prime")));
        }
        if k == 0 {
            return Err(Error::input("exponent must be at least 1"));
        }
        Ok(Ring::Modular { p, k })
    }

    /// `p^k` for a modular ring.
    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            Ring::Integers => None,
            Ring::Modular { p, k } => Some(BigInt::from(*p).pow(*k)),
        }
    }

    /// Whether `m` is a module over this ring (killed by `p^k`).
    pub fn admits(&self, m: &FgMod) -> bool {
        match self.modulus() {
            None => true,
            Some(q) => m.orders().iter().all(|o| !o.is_zero() && q.is_multiple_of(o)),
        }
    }

    /// The element `num/den` of the ring, if `den` is invertible.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Option<BigInt> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(den);
        let (n, d) = (num / &g, den / &g);
        match self.modulus() {
            None => {
                if d.abs().is_one() {
                    Some(n * d.signum())
                } else {
                    None
                }
            }
            Some(q) => {
                let inv = mod_inverse(&d, &q)?;
                Some((n * inv).mod_floor(&q))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Modular { p, k } => write!(f, "Zmod:{p}^{k}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Isomorphism type: free rank plus invariant factors `d_1 | d_2 | ...`, each > 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleType {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleType {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finitely generated abelian group presented as `⊕ Z/o_i`, with `o_i = 0`
/// meaning a free summand. Elements are coordinate vectors, reduced modulo
/// the positive orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgMod {
    orders: Vec<BigInt>,
}

impl FgMod {
    pub fn new(orders: Vec<BigInt>) -> Result<FgMod> {
        if orders.iter().any(|o| o.is_negative()) {
            return Err(Error::input("generator orders must be nonnegative"));
        }
        Ok(FgMod { orders })
    }

    pub fn from_orders(orders: &[i64]) -> FgMod {
        FgMod::new(orders.iter().map(|&o| BigInt::from(o)).collect()).expect("nonnegative orders")
    }

    pub fn zero() -> FgMod {
        FgMod { orders: Vec::new() }
    }

    pub fn free(rank: usize) -> FgMod {
        FgMod { orders: vec![BigInt::zero(); rank] }
    }

    pub fn cyclic(order: i64) -> FgMod {
        FgMod::from_orders(&[order])
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn direct_sum(&self, other: &FgMod) -> FgMod {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        FgMod { orders }
    }

    pub fn power(&self, k: usize) -> FgMod {
        FgMod { orders: (0..k).flat_map(|_| self.orders.iter().cloned()).collect() }
    }

    pub fn product<'a>(parts: impl IntoIterator<Item = &'a FgMod>) -> FgMod {
        FgMod { orders: parts.into_iter().flat_map(|m| m.orders.iter().cloned()).collect() }
    }

    /// Relation lattice generators as columns (`o_i e_i` for positive orders).
    pub fn relations(&self) -> IntMatrix {
        let pos: Vec<usize> = (0..self.ngens()).filter(|&i| !self.orders[i].is_zero()).collect();
        let mut m = IntMatrix::zeros(self.ngens(), pos.len());
        for (j, &i) in pos.iter().enumerate() {
            m.set(i, j, self.orders[i].clone());
        }
        m
    }

    pub fn iso_type(&self) -> ModuleType {
        let rank = self.orders.iter().filter(|o| o.is_zero()).count();
        let pos: Vec<BigInt> =
            self.orders.iter().filter(|o| !o.is_zero() && !o.is_one()).cloned().collect();
        let s = smith_normal_form(&IntMatrix::diagonal(&pos));
        let torsion = s.diagonal().into_iter().filter(|d| !d.is_one() && !d.is_zero()).collect();
        ModuleType { rank, torsion }
    }

    pub fn is_isomorphic(&self, other: &FgMod) -> bool {
        self.iso_type() == other.iso_type()
    }

    pub fn is_trivial(&self) -> bool {
        self.iso_type().is_zero()
    }

    /// Number of elements, or `None` if infinite.
    /// The prime `p` when every generator has order `p < 2^32`.
    pub fn elementary_prime(&self) -> Option<u64> {
        let p = self.orders.first()?.to_u64()?;
        let prime = (2..1 << 32).contains(&p) && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        (prime && self.orders.iter().all(|o| o.to_u64() == Some(p))).then_some(p)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.orders.iter().try_fold(BigInt::one(), |acc, o| if o.is_zero() { None } else { Some(acc * o) })
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens(), "element length mismatch");
        v.iter().zip(&self.orders).map(|(x, o)| reduce(x, o)).collect()
    }

    pub fn is_zero_elem(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn zero_elem(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero_elem();
        v[i] = BigInt::one();
        v
    }

    /// Every element of a finite module, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let ords: Vec<u64> = self.orders.iter().map(|o| o.to_u64().filter(|&x| x > 0)).collect::<Option<_>>()?;
        let mut out = vec![Vec::new()];
        for o in ords {
            let mut next = Vec::new();
            for v in &out {
                for x in 0..o {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    next.push(w);
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Parses a module literal such as `Z^2 + Z/4 + (Z/2)^3` or `0`.
    pub fn parse(s: &str) -> Result<FgMod> {
        let s = s.trim();
        if s == "0" {
            return Ok(FgMod::zero());
        }
        let mut orders = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (base, exp) = if let Some(inner) = term.strip_prefix('(') {
                let (b, rest) = inner
                    .split_once(')')
                    .ok_or_else(|| Error::input(format!("unbalanced parenthesis in `{term}`")))?;
                let e = rest.trim();
                let e = e.strip_prefix('^').ok_or_else(|| Error::input(format!("expected `^` after `)` in `{term}`")))?;
                (b.trim(), e.trim())
            } else if let Some((b, e)) = term.split_once('^') {
                (b.trim(), e.trim())
            } else {
                (term, "1")
            };
            let exp: usize = exp.parse().map_err(|_| Error::input(format!("bad exponent in `{term}`")))?;
            let order = if base == "Z" {
                BigInt::zero()
            } else if let Some(d) = base.strip_prefix("Z/") {
                let d: BigInt = d.trim().parse().map_err(|_| Error::input(format!("bad order in `{term}`")))?;
                if !d.is_positive() {
                    return Err(Error::input(format!("cyclic order must be positive in `{term}`")));
                }
                d
            } else {
                return Err(Error::input(format!("unrecognized module term `{term}`")));
            };
            orders.extend(std::iter::repeat_n(order, exp));
        }
        FgMod::new(orders)
    }

    /// The literal form of this presentation (not the canonical form).
    pub fn literal(&self) -> String {
        if self.orders.is_empty() {
            return "0".into();
        }
        self.orders
            .iter()
            .map(|o| if o.is_zero() { "Z".to_string() } else { format!("Z/{o}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for FgMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgMod({})", self.literal())
    }
}

impl fmt::Display for FgMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.iso_type())
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// A homomorphism between presented modules; `matrix` has one row per
/// codomain generator and one column per domain generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModHom {
    dom: FgMod,
    cod: FgMod,
    matrix: IntMatrix,
}

impl ModHom {
    /// Validates that relations of `dom` map to relations of `cod` and
    /// reduces the entries.
    pub fn new(dom: FgMod, cod: FgMod, matrix: IntMatrix) -> Result<ModHom> {
        if matrix.rows() != cod.ngens() || matrix.cols() != dom.ngens() {
            return Err(Error::input(format!(
                "matrix is {}x{} but the map {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                dom.literal(),
                cod.literal(),
                cod.ngens(),
                dom.ngens()
            )));
        }
        for (j, o) in dom.orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let col: Vec<BigInt> = matrix.col(j).iter().map(|x| x * o).collect();
            if !cod.is_zero_elem(&col) {
                return Err(Error::input(format!(
                    "generator {j} of order {o} is sent to {} whose multiple by {o} is nonzero in {}",
                    fmt_vec(&matrix.col(j)),
                    cod.literal()
                )));
            }
        }
        let mut h = ModHom { dom, cod, matrix };
        h.reduce_entries();
        Ok(h)
    }

    fn reduce_entries(&mut self) {
        for r in 0..self.matrix.rows() {
            let o = &self.cod.orders()[r];
            if o.is_zero() {
                continue;
            }
            for c in 0..self.matrix.cols() {
                let v = self.matrix.get(r, c).mod_floor(o);
                self.matrix.set(r, c, v);
            }
        }
    }

    pub fn identity(m: &FgMod) -> ModHom {
        ModHom { dom: m.clone(), cod: m.clone(), matrix: IntMatrix::identity(m.ngens()) }
    }

    pub fn zero(dom: &FgMod, cod: &FgMod) -> ModHom {
        ModHom { dom: dom.clone(), cod: cod.clone(), matrix: IntMatrix::zeros(cod.ngens(), dom.ngens()) }
    }

    pub fn scalar(m: &FgMod, c: &BigInt) -> ModHom {
        let mut h = ModHom { dom: m.clone(), cod: m.clone(), matrix: IntMatrix::scalar(m.ngens(), c) };
        h.reduce_entries();
        h
    }

    pub fn dom(&self) -> &FgMod {
        &self.dom
    }

    pub fn cod(&self) -> &FgMod {
        &self.cod
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.cod.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModHom) -> ModHom {
        assert_eq!(first.cod, self.dom, "composition of non-composable homomorphisms");
        let mut h = ModHom { dom: first.dom.clone(), cod: self.cod.clone(), matrix: self.matrix.mul(&first.matrix) };
        h.reduce_entries();
        h
    }

    pub fn add(&self, other: &ModHom) -> ModHom {
        assert_eq!((&self.dom, &self.cod), (&other.dom, &other.cod), "sum of homomorphisms with different endpoints");
        let mut h = ModHom { dom: self.dom.clone(), cod: self.cod.clone(), matrix: self.matrix.add(&other.matrix) };
        h.reduce_entries();
        h
    }

    pub fn sub(&self, other: &ModHom) -> ModHom {
        assert_eq!((&self.dom, &self.cod), (&other.dom, &other.cod), "difference of homomorphisms with different endpoints");
        let mut h = ModHom { dom: self.dom.clone(), cod: self.cod.clone(), matrix: self.matrix.sub(&other.matrix) };
        h.reduce_entries();
        h
    }

    pub fn scale(&self, c: &BigInt) -> ModHom {
        let mut h = ModHom { dom: self.dom.clone(), cod: self.cod.clone(), matrix: self.matrix.scale(c) };
        h.reduce_entries();
        h
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// First domain generator whose image differs between the two maps.
    pub fn first_difference(&self, other: &ModHom) -> Option<usize> {
        (0..self.dom.ngens()).find(|&j| self.matrix.col(j) != other.matrix.col(j))
    }

    /// Block map `Π dom_j -> Π cod_i` from a grid of blocks (`blocks[i][j]: dom_j -> cod_i`).
    pub fn from_blocks(doms: &[FgMod], cods: &[FgMod], blocks: &[Vec<Option<ModHom>>]) -> ModHom {
        let dom = FgMod::product(doms);
        let cod = FgMod::product(cods);
        let mut m = IntMatrix::zeros(cod.ngens(), dom.ngens());
        let mut r0 = 0;
        for (i, ci) in cods.iter().enumerate() {
            let mut c0 = 0;
            for (j, dj) in doms.iter().enumerate() {
                if let Some(b) = &blocks[i][j] {
                    assert_eq!(b.dom(), dj);
                    assert_eq!(b.cod(), ci);
                    for r in 0..ci.ngens() {
                        for c in 0..dj.ngens() {
                            m.set(r0 + r, c0 + c, b.matrix().get(r, c).clone());
                        }
                    }
                }
                c0 += dj.ngens();
            }
            r0 += ci.ngens();
        }
        let mut h = ModHom { dom, cod, matrix: m };
        h.reduce_entries();
        h
    }

    /// Columns spanning the preimage lattice `{x ∈ Z^n : φ(x) = 0}`.
    pub fn kernel_lattice(&self) -> IntMatrix {
        if let Some(p) = self.cod.elementary_prime() {
            return kernel_mod_prime(&self.matrix, p);
        }
        let k = kernel_basis(&self.matrix.hstack(&self.cod.relations()));
        let top: Vec<usize> = (0..self.dom.ngens()).collect();
        let cols: Vec<usize> = (0..k.cols()).collect();
        k.select(&top, &cols)
    }

    /// Kernel as a submodule of the domain.
    pub fn kernel(&self) -> Subquotient {
        let l = self.kernel_lattice().hstack(&self.dom.relations());
        subquotient(self.dom.ngens(), &l, &self.dom.relations()).expect("relations lie in the kernel")
    }

    /// Image as a submodule of the codomain.
    pub fn image(&self) -> Subquotient {
        let rel = self.cod.relations();
        subquotient(self.cod.ngens(), &self.matrix.hstack(&rel), &rel).expect("relations lie in the image lattice")
    }

    /// Cokernel as a quotient of the codomain.
    pub fn cokernel(&self) -> Subquotient {
        let n = self.cod.ngens();
        subquotient(n, &IntMatrix::identity(n), &self.matrix.hstack(&self.cod.relations())).expect("full lattice contains everything")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().ngens() == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().ngens() == 0
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl Subquotient {
    pub fn module(&self) -> FgMod {
        FgMod { orders: self.orders.clone() }
    }

    /// For a submodule `L/R ⊆ M`: the inclusion into `ambient`.
    pub fn inclusion(&self, ambient: &FgMod) -> ModHom {
        ModHom::new(self.module(), ambient.clone(), self.gens.clone()).expect("submodule generators respect relations")
    }

    /// For a quotient of the full lattice: the projection from `ambient`.
    pub fn projection(&self, ambient: &FgMod) -> ModHom {
        let cols: Vec<Vec<BigInt>> = (0..ambient.ngens())
            .map(|j| self.coords(&ambient.basis_elem(j)).expect("quotient of the full lattice"))
            .collect();
        ModHom::new(ambient.clone(), self.module(), IntMatrix::from_cols(self.ngens(), &cols))
            .expect("projection respects relations")
    }
}

/// The submodule fixed by every generator, computed as the kernel of the
/// stacked maps `g - id`. Each generator must be an automorphism.
pub fn fixed_submodule(m: &FgMod, gens: &[ModHom]) -> Result<Subquotient> {
    for (i, g) in gens.iter().enumerate() {
        if g.dom() != m || g.cod() != m {
            return Err(Error::input(format!("generator {i} is not an endomorphism of {}", m.literal())));
        }
        if !g.is_isomorphism() {
            return Err(Error::precondition("fixed-point generator must be an automorphism", format!("generator {i}")));
        }
    }
    if gens.is_empty() {
        return Ok(ModHom::identity(m).kernel_complement_full());
    }
    let id = ModHom::identity(m);
    let mut stacked = gens[0].sub(&id).matrix.clone();
    for g in &gens[1..] {
        stacked = stacked.vstack(g.sub(&id).matrix());
    }
    let cod = m.power(gens.len());
    let h = ModHom::new(m.clone(), cod, stacked).expect("difference of endomorphisms is a homomorphism");
    Ok(h.kernel())
}

impl ModHom {
    // The whole domain, as a submodule of itself.
    fn kernel_complement_full(&self) -> Subquotient {
        let n = self.dom.ngens();
        subquotient(n, &IntMatrix::identity(n), &self.dom.relations()).expect("relations lie in the full lattice")
    }
}

/// `ker(d_next) / im(d_prev)` for a pair with `d_next ∘ d_prev = 0`.
pub fn complex_cohomology(d_prev: &ModHom, d_next: &ModHom) -> Result<Subquotient> {
    if d_prev.cod() != d_next.dom() {
        return Err(Error::input("consecutive maps of a complex must share the middle module"));
    }
    let comp = d_next.compose(d_prev);
    if let Some(j) = (0..comp.dom().ngens()).find(|&j| !comp.cod().is_zero_elem(&comp.matrix().col(j))) {
        return Err(Error::property(
            "consecutive differentials compose to zero",
            format!("generator {j} maps to {}", fmt_vec(&comp.matrix().col(j))),
        ));
    }
    let mid = d_next.dom();
    let l = d_next.kernel_lattice().hstack(&mid.relations()).hstack(d_prev.matrix());
    let s = d_prev.matrix().hstack(&mid.relations());
    Ok(subquotient(mid.ngens(), &l, &s).expect("image lies in the kernel"))
}

pub fn format_elem(v: &[BigInt]) -> String {
    fmt_vec(v)
}
