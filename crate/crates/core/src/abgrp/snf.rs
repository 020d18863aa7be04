use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·M·V = D` together with the inverses of `U` and `V`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The diagonal entries `d_0 | d_1 | ...`, nonzero ones first.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

// `ut_inv` and `vt` hold the transposes of `U⁻¹` and `V`, so that every
// transform update is a contiguous row operation.
struct Work {
    d: IntMatrix,
    u: IntMatrix,
    ut_inv: IntMatrix,
    vt: IntMatrix,
    v_inv: IntMatrix,
    left: bool,
    right: bool,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if self.left {
            self.u.swap_rows(a, b);
            self.ut_inv.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if self.right {
            self.vt.swap_rows(a, b);
            self.v_inv.swap_rows(a, b);
        }
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        if self.left {
            self.u.add_row_multiple(dst, src, c);
            self.ut_inv.add_row_multiple(src, dst, &-c);
        }
    }

    // col[dst] += c * col[src]; with `only_row` the column `src` of `d` is
    // known to vanish outside that row.
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt, only_row: Option<usize>) {
        match only_row {
            Some(r) => {
                let v = self.d.get(r, src) * c;
                *self.d.get_mut(r, dst) += v;
            }
            None => self.d.add_col_multiple(dst, src, c),
        }
        if self.right {
            self.vt.add_row_multiple(dst, src, c);
            self.v_inv.add_row_multiple(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        if self.left {
            self.u.negate_row(r);
            self.ut_inv.negate_row(r);
        }
    }
}

/// Computes the Smith normal form of an integer matrix with exact arithmetic.
///
/// The diagonal satisfies `d_i | d_{i+1}`, nonzero entries are positive and
/// precede the zero ones.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    smith_normal_form_with(m, true, true)
}

/// Smith normal form tracking only the left (`U`, `U⁻¹`) and/or right
/// (`V`, `V⁻¹`) transforms; untracked ones are returned empty.
pub fn smith_normal_form_with(m: &IntMatrix, left: bool, right: bool) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let ident = |n: usize, keep: bool| if keep { IntMatrix::identity(n) } else { IntMatrix::zeros(0, 0) };
    let mut w = Work {
        d: m.clone(),
        u: ident(rows, left),
        ut_inv: ident(rows, left),
        vt: ident(cols, right),
        v_inv: ident(cols, right),
        left,
        right,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&w.d, t, t) else { break };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.d.get(i, t).is_zero() {
                    continue;
                }
                let q = w.d.get(i, t) / w.d.get(t, t);
                w.add_row(i, t, &-q);
                if !w.d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            let only_row = (!dirty).then_some(t);
            for j in t + 1..cols {
                if w.d.get(t, j).is_zero() {
                    continue;
                }
                let q = w.d.get(t, j) / w.d.get(t, t);
                w.add_col(j, t, &-q, only_row);
                if !w.d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pr, pc) = smallest_in_cross(&w.d, t);
                w.swap_rows(t, pr);
                w.swap_cols(t, pc);
                continue;
            }
            let pivot = w.d.get(t, t).clone();
            if pivot.magnitude().is_one() {
                break;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.d.get(i, j).is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    let (u_inv, v) = (w.ut_inv.transpose(), w.vt.transpose());
    Snf { u: w.u, u_inv, d: w.d, v, v_inv: w.v_inv, rank }
}

fn smallest_entry(d: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in r0..d.rows() {
        for c in c0..d.cols() {
            let a = d.get(r, c);
            if a.is_zero() {
                continue;
            }
            if a.magnitude().is_one() {
                return Some((r, c));
            }
            if best.is_none_or(|(br, bc)| a.magnitude() < d.get(br, bc).magnitude()) {
                best = Some((r, c));
            }
        }
    }
    best
}

// Smallest nonzero entry in row t or column t (from index t on).
fn smallest_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut consider = |r: usize, c: usize| {
        let a = d.get(r, c);
        let b = d.get(best.0, best.1);
        if !a.is_zero() && (b.is_zero() || a.magnitude() < b.magnitude()) {
            best = (r, c);
        }
    };
    for r in t..d.rows() {
        consider(r, t);
    }
    for c in t..d.cols() {
        consider(t, c);
    }
    (best.0, best.1)
}
