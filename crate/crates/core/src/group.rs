//! Finite groups given by multiplication tables, with the subgroup,
//! transporter and double-coset computations used by the transporter
//! categories.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite group; `mul(a, b) = a·b`, elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    e: usize,
    names: Vec<String>,
}

/// A subgroup as its sorted element list.
pub type Subgroup = Vec<usize>;

impl Group {
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Group> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::input("multiplication table must be square with entries in range"));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::input("multiplication table has no identity"))?;
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| Error::input(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::input(format!("multiplication not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if names.len() != n {
            return Err(Error::input("wrong number of element names"));
        }
        Ok(Group { table, inv, e, names })
    }

    /// The group generated by permutations of `0..degree` (images listed
    /// per point). Elements are sorted lexicographically, so the identity is
    /// element 0. Returns the group with the permutation of each element.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<(Group, Vec<Vec<usize>>)> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::input(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut set = BTreeSet::new();
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
            if set.len() > 100_000 {
                return Err(Error::Limit("permutation group larger than 10^5".into()));
            }
        }
        let elems: Vec<Vec<usize>> = set.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        // (a·b)(i) = a(b(i)).
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = elems.iter().map(|p| format!("{p:?}").replace(' ', "")).collect();
        Ok((Group::from_table(table, Some(names))?, elems))
    }

    pub fn cyclic(n: usize) -> Group {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_table(table, None).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.e
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `x h x⁻¹`.
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(x, h), self.inv(x))
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn whole(&self) -> Subgroup {
        self.elements().collect()
    }

    pub fn trivial(&self) -> Subgroup {
        vec![self.e]
    }

    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::new();
        set.insert(self.e);
        let mut frontier = vec![self.e];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.e) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// All subgroups of `within` (itself a subgroup), ordered by size and
    /// then by element list.
    pub fn subgroups_of(&self, within: &[usize]) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        found.insert(self.trivial());
        let mut frontier = vec![self.trivial()];
        while let Some(h) = frontier.pop() {
            for &x in within {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// `x H x⁻¹`, sorted.
    pub fn conjugate(&self, x: usize, h: &[usize]) -> Subgroup {
        let mut v: Vec<usize> = h.iter().map(|&a| self.conj(x, a)).collect();
        v.sort_unstable();
        v
    }

    pub fn contains_all(big: &[usize], small: &[usize]) -> bool {
        small.iter().all(|x| big.binary_search(x).is_ok())
    }

    /// `{x ∈ within : x R x⁻¹ ⊆ Q}`.
    pub fn transporter(&self, r: &[usize], q: &[usize], within: &[usize]) -> Vec<usize> {
        within.iter().copied().filter(|&x| r.iter().all(|&a| q.binary_search(&self.conj(x, a)).is_ok())).collect()
    }

    /// `{x ∈ within : x h = h x for all h ∈ H}`.
    pub fn centralizer(&self, h: &[usize], within: &[usize]) -> Subgroup {
        within.iter().copied().filter(|&x| h.iter().all(|&a| self.mul(x, a) == self.mul(a, x))).collect()
    }

    pub fn center(&self, h: &[usize]) -> Subgroup {
        self.centralizer(h, h)
    }

    /// Least-element representatives of the double cosets `H \ X / K`,
    /// where `X` is a union of such double cosets.
    pub fn double_coset_reps(&self, h: &[usize], x: &[usize], k: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        let mut xs = x.to_vec();
        xs.sort_unstable();
        for &g in &xs {
            if seen.contains(&g) {
                continue;
            }
            reps.push(g);
            for &a in h {
                for &b in k {
                    seen.insert(self.mul(self.mul(a, g), b));
                }
            }
        }
        reps
    }

    /// The double coset `H g K`, sorted.
    pub fn double_coset(&self, h: &[usize], g: usize, k: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = h.iter().flat_map(|&a| k.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(self.mul(a, g), b)).collect();
        set.into_iter().collect()
    }

    /// A basis of the abelian subgroup `h` found by exhaustive search over
    /// tuples of increasing length: generators with their orders, such that
    /// `(c_i) ↦ Π b_i^{c_i}` is a bijection from `Π Z/o_i`.
    pub fn abelian_basis(&self, h: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        for &a in h {
            for &b in h {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::input("subgroup is not abelian"));
                }
            }
        }
        let nontriv: Vec<usize> = h.iter().copied().filter(|&x| x != self.e).collect();
        if nontriv.is_empty() {
            return Ok((Vec::new(), Vec::new()));
        }
        for k in 1..=nontriv.len() {
            if let Some(found) = self.basis_of_size(h.len(), &nontriv, k, 0, &mut Vec::new()) {
                return Ok(found);
            }
        }
        Err(Error::input("no basis found"))
    }

    fn basis_of_size(
        &self,
        size: usize,
        pool: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if chosen.len() == k {
            let orders: Vec<usize> = chosen.iter().map(|&b| self.elem_order(b)).collect();
            let ok = orders.iter().product::<usize>() == size && self.abelian_coords(chosen, &orders).len() == size;
            return ok.then(|| (chosen.clone(), orders));
        }
        for i in start..pool.len() {
            chosen.push(pool[i]);
            let r = self.basis_of_size(size, pool, k, i + 1, chosen);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    /// Map element ↦ coordinates for a basis with the given orders.
    pub fn abelian_coords(&self, basis: &[usize], orders: &[usize]) -> HashMap<usize, Vec<usize>> {
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        let total: usize = orders.iter().product();
        for mut code in 0..total {
            let mut coords = Vec::with_capacity(orders.len());
            let mut x = self.e;
            for (i, &o) in orders.iter().enumerate() {
                let c = code % o;
                code /= o;
                coords.push(c);
                for _ in 0..c {
                    x = self.mul(x, basis[i]);
                }
            }
            out.entry(x).or_insert(coords);
        }
        out
    }
}
