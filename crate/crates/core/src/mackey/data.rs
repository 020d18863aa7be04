use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

const MAX_GROUP_ORDER: usize = 512;

/// A finite group `G`, a `p`-subgroup `P ≤ G` and a `P×P`-set `Ω` on which
/// `G` acts on the left by automorphisms of the right `P`-action. The left
/// `P`-action is the restriction of the `G`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    pub prime: u64,
    pub g: Group,
    pub p: Subgroup,
    pub omega: usize,
    /// `act[g][ω] = g·ω`.
    pub act: Vec<Vec<usize>>,
    /// `right[u][ω] = ω·u` for `u ∈ P`; empty for `u ∉ P`.
    pub right: Vec<Vec<usize>>,
}

/// Which functor with complement a group file asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientKind {
    Constant,
    Center,
}

impl GroupData {
    /// Validates the action axioms and that `P` is a nontrivial `p`-subgroup.
    pub fn new(g: Group, p: Subgroup, omega: usize, act: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<GroupData> {
        if g.order() > MAX_GROUP_ORDER {
            return Err(Error::Limit(format!("|G| = {} exceeds {MAX_GROUP_ORDER}", g.order())));
        }
        let mut p = p;
        p.sort_unstable();
        p.dedup();
        if !g.is_subgroup(&p) {
            return Err(Error::input("P is not a subgroup of G"));
        }
        let prime = prime_of(p.len()).ok_or_else(|| Error::input(format!("|P| = {} is not a power of a prime", p.len())))?;
        let perm_ok = |v: &Vec<usize>| {
            let mut seen = vec![false; omega];
            v.len() == omega && v.iter().all(|&x| x < omega && !std::mem::replace(&mut seen[x], true))
        };
        if act.len() != g.order() || !act.iter().all(perm_ok) {
            return Err(Error::input("the G-action must give a permutation of Ω for every element"));
        }
        if right.len() != g.order() || !p.iter().all(|&u| perm_ok(&right[u])) {
            return Err(Error::input("the right P-action must give a permutation of Ω for every element of P"));
        }
        let gd = GroupData { prime, g, p, omega, act, right };
        if let Some(w) = gd.action_witness() {
            return Err(Error::input(w));
        }
        Ok(gd)
    }

    /// `Ω = P` with `(u, v)·ω = u ω v⁻¹`, `copies` times, and `G = P`.
    pub fn regular(p: &Group, copies: usize) -> Result<GroupData> {
        let n = p.order();
        let omega = n * copies;
        let act = p.elements().map(|g| (0..omega).map(|w| (w / n) * n + p.mul(g, w % n)).collect()).collect();
        let right = p.elements().map(|u| (0..omega).map(|w| (w / n) * n + p.mul(w % n, u)).collect()).collect();
        GroupData::new(p.clone(), p.elements().collect(), omega, act, right)
    }

    /// `Ω = G` with `G` acting by left and `P` by right multiplication.
    pub fn group_biset(g: &Group, p: Subgroup) -> Result<GroupData> {
        let n = g.order();
        let act = g.elements().map(|x| (0..n).map(|w| g.mul(x, w)).collect()).collect();
        let right = g.elements().map(|u| if p.contains(&u) { (0..n).map(|w| g.mul(w, u)).collect() } else { Vec::new() }).collect();
        GroupData::new(g.clone(), p, n, act, right)
    }

    pub fn left(&self, x: usize, w: usize) -> usize {
        self.act[x][w]
    }

    pub fn right(&self, w: usize, u: usize) -> usize {
        self.right[u][w]
    }

    /// `x·ω·u⁻¹`.
    pub fn bi(&self, x: usize, w: usize, u: usize) -> usize {
        self.left(x, self.right(w, self.g.inv(u)))
    }

    fn action_witness(&self) -> Option<String> {
        let g = &self.g;
        let e = g.identity();
        if self.act[e].iter().enumerate().any(|(i, &x)| i != x) || self.right[e].iter().enumerate().any(|(i, &x)| i != x) {
            return Some("the identity acts nontrivially on Ω".into());
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                if let Some(w) = (0..self.omega).find(|&w| self.act[ab][w] != self.act[a][self.act[b][w]]) {
                    return Some(format!("G-action axiom fails at ({}, {}) on point {w}", g.name(a), g.name(b)));
                }
            }
        }
        for &u in &self.p {
            for &v in &self.p {
                let uv = g.mul(u, v);
                if let Some(w) = (0..self.omega).find(|&w| self.right(w, uv) != self.right(self.right(w, u), v)) {
                    return Some(format!("right P-action axiom fails at ({}, {}) on point {w}", g.name(u), g.name(v)));
                }
            }
            for x in g.elements() {
                if let Some(w) = (0..self.omega).find(|&w| self.left(x, self.right(w, u)) != self.right(self.left(x, w), u)) {
                    return Some(format!("{} does not commute with the right action of {} on point {w}", g.name(x), g.name(u)));
                }
            }
        }
        None
    }
}

fn prime_of(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p as u64)
}

/// Extends the permutations given on some elements to the submonoid they
/// generate, with `combine(a, b)` the permutation of `ab` from those of `a`
/// and `b`.
fn propagate(
    g: &Group,
    within: &[usize],
    given: Vec<(usize, Vec<usize>)>,
    omega: usize,
    combine: impl Fn(&[usize], &[usize]) -> Vec<usize>,
    what: &str,
) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    out[g.identity()] = (0..omega).collect();
    let mut gens = Vec::new();
    for (x, perm) in given {
        if !out[x].is_empty() && out[x] != perm {
            return Err(Error::input(format!("{what}: element {} given twice with different images", g.name(x))));
        }
        out[x] = perm;
        gens.push(x);
    }
    let mut frontier: Vec<usize> = within.iter().copied().filter(|&x| !out[x].is_empty()).collect();
    while let Some(a) = frontier.pop() {
        for &b in &gens {
            let ab = g.mul(a, b);
            let perm = combine(&out[a], &out[b]);
            if out[ab].is_empty() {
                out[ab] = perm;
                frontier.push(ab);
            } else if out[ab] != perm {
                return Err(Error::input(format!("{what}: images are not compatible with the product {}·{}", g.name(a), g.name(b))));
            }
        }
    }
    if let Some(&x) = within.iter().find(|&&x| out[x].is_empty()) {
        return Err(Error::input(format!("{what}: the listed elements do not generate {}", g.name(x))));
    }
    Ok(out)
}

/// Parses a group file.
///
/// ```text
/// group perm            # or: group table
/// gen 1 0               # permutation generators of G (perm)
/// row 0 1               # multiplication table rows (table)
/// p-gen [1,0]           # generators of P, by element name
/// omega 2               # or: omega regular [copies], omega group
/// act [1,0] 1 0         # image of each point under an element of G
/// right [1,0] 1 0       # image of each point under the right action of an element of P
/// coefficients center   # or: constant (default)
/// ```
///
/// Elements are named `0, 1, …` for tables and by their image lists for
/// permutation groups. Actions given on generators are extended to products.
pub fn parse_group_data(text: &str) -> Result<(GroupData, CoefficientKind)> {
    let mut kind: Option<String> = None;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut pgens: Vec<(usize, String)> = Vec::new();
    let mut omega: Option<(usize, Option<usize>)> = None;
    let mut omega_group = false;
    let mut acts: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut rights: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut coeff = CoefficientKind::Constant;
    let nums = |line: usize, toks: &[&str]| -> Result<Vec<usize>> {
        toks.iter().map(|t| t.parse().map_err(|_| Error::parse(line, format!("`{t}` is not a number")))).collect()
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "group" => match toks.get(1) {
                Some(&k) if k == "perm" || k == "table" => kind = Some(k.to_string()),
                _ => return Err(Error::parse(line, "expected `group perm` or `group table`")),
            },
            "gen" => gens.push(nums(line, &toks[1..])?),
            "row" => rows.push(nums(line, &toks[1..])?),
            "p-gen" => {
                for t in &toks[1..] {
                    pgens.push((line, t.to_string()));
                }
            }
            "omega" => {
                omega = Some(match toks.get(1) {
                    Some(&"group") => {
                        omega_group = true;
                        (0, None)
                    }
                    Some(&"regular") => {
                        let c = match toks.get(2) {
                            Some(t) => nums(line, &[t])?[0],
                            None => 1,
                        };
                        (0, Some(c))
                    }
                    Some(t) => (nums(line, &[t])?[0], None),
                    None => return Err(Error::parse(line, "`omega` needs a size")),
                })
            }
            "act" | "right" => {
                let name = toks.get(1).ok_or_else(|| Error::parse(line, "missing element"))?.to_string();
                let images = nums(line, &toks[2..])?;
                if toks[0] == "act" {
                    acts.push((line, name, images));
                } else {
                    rights.push((line, name, images));
                }
            }
            "coefficients" => {
                coeff = match toks.get(1) {
                    Some(&"constant") => CoefficientKind::Constant,
                    Some(&"center") => CoefficientKind::Center,
                    _ => return Err(Error::parse(line, "expected `coefficients constant` or `coefficients center`")),
                }
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let g = match kind.as_deref() {
        Some("perm") => {
            let degree = gens.first().map_or(0, |g| g.len());
            if degree == 0 {
                return Err(Error::input("`group perm` needs at least one nonempty `gen` line"));
            }
            Group::from_permutations(degree, &gens)?.0
        }
        Some(_) => Group::from_table(rows, None)?,
        None => return Err(Error::input("missing `group` line")),
    };
    let names: HashMap<&str, usize> = g.elements().map(|x| (g.name(x), x)).collect();
    let lookup = |line: usize, s: &str| -> Result<usize> {
        names.get(s).copied().ok_or_else(|| Error::parse(line, format!("`{s}` is not an element of G")))
    };
    let pg: Vec<usize> = pgens.iter().map(|(l, s)| lookup(*l, s)).collect::<Result<_>>()?;
    let p = g.closure(&pg);
    let (omega, copies) = omega.ok_or_else(|| Error::input("missing `omega` line"))?;
    if omega_group {
        if !acts.is_empty() || !rights.is_empty() {
            return Err(Error::input("`omega group` takes no `act` or `right` lines"));
        }
        return Ok((GroupData::group_biset(&g, p)?, coeff));
    }
    if let Some(c) = copies {
        if p.len() != g.order() {
            return Err(Error::input("`omega regular` needs P = G"));
        }
        if !acts.is_empty() || !rights.is_empty() {
            return Err(Error::input("`omega regular` takes no `act` or `right` lines"));
        }
        return Ok((GroupData::regular(&g, c)?, coeff));
    }
    let check = |line: usize, v: &[usize]| -> Result<()> {
        let mut seen = vec![false; omega];
        if v.len() != omega || v.iter().any(|&x| x >= omega || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::parse(line, format!("images must be a permutation of 0..{omega}")));
        }
        Ok(())
    };
    let mut given_act = Vec::new();
    for (l, s, v) in acts {
        check(l, &v)?;
        given_act.push((lookup(l, &s)?, v));
    }
    let mut given_right = Vec::new();
    for (l, s, v) in rights {
        check(l, &v)?;
        let u = lookup(l, &s)?;
        if p.binary_search(&u).is_err() {
            return Err(Error::parse(l, format!("`{s}` is not in P")));
        }
        given_right.push((u, v));
    }
    let all: Vec<usize> = g.elements().collect();
    let act = propagate(&g, &all, given_act, omega, |a, b| b.iter().map(|&w| a[w]).collect(), "act")?;
    let right = propagate(&g, &p, given_right, omega, |a, b| a.iter().map(|&w| b[w]).collect(), "right")?;
    Ok((GroupData::new(g, p, omega, act, right)?, coeff))
}
