use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form_with;

/// A Z-basis (as columns) of the lattice spanned by the columns of `m`.
pub fn span_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form_with(m, true, false);
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, s.rank);
    for j in 0..s.rank {
        let d = s.d.get(j, j);
        for i in 0..n {
            out.set(i, j, s.u_inv.get(i, j) * d);
        }
    }
    out
}

/// A Z-basis (as columns) of `{x : m·x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form_with(m, false, true);
    let cols: Vec<usize> = (s.rank..m.cols()).collect();
    let rows: Vec<usize> = (0..m.cols()).collect();
    s.v.select(&rows, &cols)
}

/// Columns spanning `{x : m·x ≡ 0 mod p}`: a nullspace basis of `m` over
/// `F_p` followed by `p·e_i`. `p` must be a prime below `2^32`.
pub fn kernel_mod_prime(m: &IntMatrix, p: u64) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c).mod_floor(&pb).to_u64().expect("reduced entry")).collect())
        .collect();
    let inv = |x: u64| pow_mod(x, p - 2, p);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let s = inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = IntMatrix::zeros(cols, free.len() + cols);
    for (k, &f) in free.iter().enumerate() {
        out.set(f, k, BigInt::one());
        for (i, &pc) in pivots.iter().enumerate() {
            let v = a[i][f];
            if v != 0 {
                out.set(pc, k, BigInt::from(p - v));
            }
        }
    }
    for i in 0..cols {
        out.set(i, free.len() + i, pb.clone());
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// The quotient `L/S` of two lattices `S ⊆ L ⊆ Z^n`, decomposed into
/// invariant factors, with generators in ambient coordinates and a
/// coordinate map from `L` onto the decomposition.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    /// Invariant factors of the kept summands; 0 marks a free summand.
    pub orders: Vec<BigInt>,
    /// Column `i` is the ambient vector of generator `i`.
    pub gens: IntMatrix,
    u: IntMatrix,
    ldiag: Vec<BigInt>,
    u2_kept: IntMatrix,
}

impl Subquotient {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of `x` in the decomposition, or `None` when `x ∉ L`.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient, "vector length mismatch");
        let y = self.u.mul_vec(x);
        let mut c = Vec::with_capacity(self.ldiag.len());
        for (i, yi) in y.iter().enumerate() {
            if i < self.ldiag.len() {
                let (q, r) = yi.div_rem(&self.ldiag[i]);
                if !r.is_zero() {
                    return None;
                }
                c.push(q);
            } else if !yi.is_zero() {
                return None;
            }
        }
        let z = self.u2_kept.mul_vec(&c);
        Some(z.into_iter().zip(&self.orders).map(|(zi, o)| reduce(&zi, o)).collect())
    }
}

pub(crate) fn reduce(x: &BigInt, order: &BigInt) -> BigInt {
    if order.is_zero() {
        x.clone()
    } else {
        x.mod_floor(order)
    }
}

/// Computes `L/S` where the columns of `l_gens` span `L` and those of
/// `s_gens` span `S`. Returns `None` when `S` is not contained in `L`.
pub fn subquotient(ambient: usize, l_gens: &IntMatrix, s_gens: &IntMatrix) -> Option<Subquotient> {
    assert_eq!(l_gens.rows(), ambient);
    assert_eq!(s_gens.rows(), ambient);
    let s1 = smith_normal_form_with(l_gens, true, false);
    let r = s1.rank;
    let ldiag: Vec<BigInt> = (0..r).map(|i| s1.d.get(i, i).clone()).collect();
    // Basis of L: columns d_i * U^{-1}[:, i].
    let mut basis = IntMatrix::zeros(ambient, r);
    for j in 0..r {
        for i in 0..ambient {
            basis.set(i, j, s1.u_inv.get(i, j) * &ldiag[j]);
        }
    }
    let partial = Subquotient {
        ambient,
        orders: Vec::new(),
        gens: IntMatrix::zeros(ambient, 0),
        u: s1.u.clone(),
        ldiag: ldiag.clone(),
        u2_kept: IntMatrix::zeros(0, r),
    };
    // Coordinates of S in the basis of L.
    let mut c = IntMatrix::zeros(r, s_gens.cols());
    for j in 0..s_gens.cols() {
        let x = s_gens.col(j);
        let y = partial.u.mul_vec(&x);
        for (i, yi) in y.iter().enumerate() {
            if i < r {
                let (q, rem) = yi.div_rem(&ldiag[i]);
                if !rem.is_zero() {
                    return None;
                }
                c.set(i, j, q);
            } else if !yi.is_zero() {
                return None;
            }
        }
    }
    let s2 = smith_normal_form_with(&c, true, false);
    let new_basis = basis.mul(&s2.u_inv);
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for i in 0..r {
        let e = if i < s2.rank { s2.d.get(i, i).clone() } else { BigInt::zero() };
        if !e.is_one() {
            kept.push(i);
            orders.push(e);
        }
    }
    let all_rows: Vec<usize> = (0..ambient).collect();
    let all_cols: Vec<usize> = (0..r).collect();
    Some(Subquotient {
        ambient,
        gens: new_basis.select(&all_rows, &kept),
        u: s1.u,
        ldiag,
        u2_kept: s2.u.select(&kept, &all_cols),
        orders,
    })
}
