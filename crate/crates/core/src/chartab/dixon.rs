//! The modular stage of the character-table computation.
//!
//! Class-sum matrices are diagonalised simultaneously over F_p for a prime
//! p = 1 mod exp(G) with p > 2 sqrt(|G|): the class algebra then splits
//! completely, every common eigenspace is one-dimensional, and character
//! values mod p are small enough to lift unambiguously.

// Dense index arithmetic reads better than iterator chains here.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p = 1 mod exponent with p^2 > 4|G|.
pub fn dixon_prime(order: usize, exponent: u64) -> Result<u64> {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order as u64 && is_prime(p) {
            return Ok(p);
        }
        p = p.checked_add(exponent).ok_or(Error::PrimeSearchExhausted)?;
        if p > 1 << 40 {
            return Err(Error::PrimeSearchExhausted);
        }
    }
}

/// Smallest generator of F_p^*.
fn primitive_root(field: Fp) -> u64 {
    let p = field.p;
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| field.pow(g, (p - 1) / q) != 1))
        .expect("F_p^* is cyclic")
}

/// Dense row-major matrix over F_p.
#[derive(Clone)]
struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// self * other.
    fn mul(&self, other: &Matrix, field: Fp) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.at(i, j), field.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Basis of the kernel of `m`, as columns. Deterministic: free variables
/// in ascending order.
fn kernel_basis(m: &Matrix, field: Fp) -> Vec<Vec<u64>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| a.at(r, col) != 0) else {
            continue;
        };
        for c in 0..cols {
            let tmp = a.at(row, c);
            a.set(row, c, a.at(pivot, c));
            a.set(pivot, c, tmp);
        }
        let inv = field.inv(a.at(row, col));
        for c in 0..cols {
            a.set(row, c, field.mul(a.at(row, c), inv));
        }
        for r in 0..rows {
            if r != row && a.at(r, col) != 0 {
                let factor = a.at(r, col);
                for c in 0..cols {
                    let v = field.sub(a.at(r, c), field.mul(factor, a.at(row, c)));
                    a.set(r, c, v);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for col in 0..cols {
            if let Some(r) = pivot_of_col[col] {
                v[col] = field.sub(0, a.at(r, free));
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `basis * x = v` where the columns of `basis` are independent and
/// v lies in their span.
fn in_basis_coordinates(basis: &Matrix, v: &[u64], field: Fp) -> Result<Vec<u64>> {
    let rows = basis.rows;
    let cols = basis.cols;
    let mut aug = Matrix::zero(rows, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            aug.set(r, c, basis.at(r, c));
        }
        aug.set(r, cols, v[r]);
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| aug.at(r, col) != 0) else {
            continue;
        };
        for c in 0..=cols {
            let tmp = aug.at(row, c);
            aug.set(row, c, aug.at(pivot, c));
            aug.set(pivot, c, tmp);
        }
        let inv = field.inv(aug.at(row, col));
        for c in 0..=cols {
            aug.set(row, c, field.mul(aug.at(row, c), inv));
        }
        for r in 0..rows {
            if r != row && aug.at(r, col) != 0 {
                let factor = aug.at(r, col);
                for c in 0..=cols {
                    let val = field.sub(aug.at(r, c), field.mul(factor, aug.at(row, c)));
                    aug.set(r, c, val);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Rows beyond the rank must have vanished, or v is outside the span.
    for r in row..rows {
        if aug.at(r, cols) != 0 {
            return Err(Error::LiftingFailure {
                detail: "vector escapes the invariant subspace".into(),
            });
        }
    }
    let mut x = vec![0u64; cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug.at(r, cols);
    }
    Ok(x)
}

/// Character data modulo p: one row per irreducible, values indexed by
/// conjugacy class.
pub struct ModpTable {
    pub p: u64,
    pub degrees: Vec<u64>,
    /// `values[t][i]` is chi_t(g_i) mod p.
    pub values: Vec<Vec<u64>>,
    /// A primitive exp(G)-th root of unity mod p, matching the lift.
    pub zeta: u64,
}

/// The class-sum matrix of class `i`: entry (k, j) counts pairs
/// (x in C_i, y in C_j) with x y = z_k for a fixed representative z_k.
fn class_matrix(group: &FiniteGroup, i: usize) -> Matrix {
    let classes = group.classes();
    let r = classes.count();
    let mut m = Matrix::zero(r, r);
    for k in 0..r {
        let zk = classes.representatives[k];
        for &x in &classes.members[i] {
            let j = classes.class_of[group.mul(group.inv(x), zk)];
            let v = m.at(k, j) + 1;
            m.set(k, j, v);
        }
    }
    m
}

pub fn modp_character_table(group: &FiniteGroup) -> Result<ModpTable> {
    let classes = group.classes();
    let r = classes.count();
    let exponent = group.exponent();
    let p = dixon_prime(group.order(), exponent)?;
    let field = Fp { p };

    // Split the common eigenspaces, taking class matrices in increasing
    // class-size order. The identity class contributes the identity matrix
    // and never splits anything.
    let mut class_order: Vec<usize> = (1..r).collect();
    class_order.sort_by_key(|&i| (classes.class_sizes[i], i));

    let mut spaces: Vec<Matrix> = vec![{
        let mut id = Matrix::zero(r, r);
        for i in 0..r {
            id.set(i, i, 1);
        }
        id
    }];
    for &ci in &class_order {
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let a = {
            let mut m = class_matrix(group, ci);
            for v in &mut m.data {
                *v %= p;
            }
            m
        };
        let mut next = Vec::with_capacity(spaces.len());
        for space in &spaces {
            if space.cols == 1 {
                next.push(space.clone());
                continue;
            }
            // Restriction B of A to the invariant subspace: A W = W B.
            let aw = a.mul(space, field);
            let d = space.cols;
            let mut b = Matrix::zero(d, d);
            for j in 0..d {
                let col: Vec<u64> = (0..r).map(|row| aw.at(row, j)).collect();
                let coords = in_basis_coordinates(space, &col, field)?;
                for (i, &v) in coords.iter().enumerate() {
                    b.set(i, j, v);
                }
            }
            let mut found = 0;
            for lambda in 0..p {
                if found == d {
                    break;
                }
                let mut shifted = b.clone();
                for i in 0..d {
                    shifted.set(i, i, field.sub(shifted.at(i, i), lambda));
                }
                let kernel = kernel_basis(&shifted, field);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let mut sub = Matrix::zero(r, kernel.len());
                for (kcol, kvec) in kernel.iter().enumerate() {
                    for row in 0..r {
                        let mut acc = 0u64;
                        for (scol, &kv) in kvec.iter().enumerate() {
                            acc = field.add(acc, field.mul(space.at(row, scol), kv));
                        }
                        sub.set(row, kcol, acc);
                    }
                }
                next.push(sub);
            }
            if found != d {
                return Err(Error::LiftingFailure {
                    detail: format!("class matrix {ci} is not diagonalisable over F_{p}"),
                });
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.cols != 1) {
        return Err(Error::LiftingFailure {
            detail: "common eigenspaces did not all become one-dimensional".into(),
        });
    }

    // Eigenvalue of every class matrix on every eigenvector: lambda_{t,i}
    // with A_i v_t = lambda v_t; then chi(g_i)/chi(1) = lambda / |C_i|.
    let vectors: Vec<Vec<u64>> = spaces
        .iter()
        .map(|s| (0..r).map(|row| s.at(row, 0)).collect())
        .collect();
    let mut lambda = vec![vec![0u64; r]; r];
    for t in 0..r {
        lambda[t][0] = 1;
    }
    for i in 1..r {
        let a = {
            let mut m = class_matrix(group, i);
            for v in &mut m.data {
                *v %= p;
            }
            m
        };
        for (t, v) in vectors.iter().enumerate() {
            let pivot = v.iter().position(|&x| x != 0).expect("eigenvector is nonzero");
            let mut image = vec![0u64; r];
            for row in 0..r {
                let mut acc = 0u64;
                for col in 0..r {
                    acc = field.add(acc, field.mul(a.at(row, col), v[col]));
                }
                image[row] = acc;
            }
            let lam = field.mul(image[pivot], field.inv(v[pivot]));
            for row in 0..r {
                if image[row] != field.mul(lam, v[row]) {
                    return Err(Error::LiftingFailure {
                        detail: "vector is not a common eigenvector".into(),
                    });
                }
            }
            lambda[t][i] = lam;
        }
    }

    // Inverse classes, degrees, and values mod p.
    let inverse_class: Vec<usize> = (0..r)
        .map(|i| classes.class_of[group.inv(classes.representatives[i])])
        .collect();
    let order_mod_p = (group.order() as u64) % p;
    let mut degrees = vec![0u64; r];
    let mut values = vec![vec![0u64; r]; r];
    let sqrt_order = (group.order() as f64).sqrt() as u64 + 1;
    for t in 0..r {
        let mu: Vec<u64> = (0..r)
            .map(|i| {
                field.mul(lambda[t][i], field.inv(classes.class_sizes[i] as u64 % p))
            })
            .collect();
        let mut s = 0u64;
        for i in 0..r {
            let term = field.mul(classes.class_sizes[i] as u64 % p, field.mul(mu[i], mu[inverse_class[i]]));
            s = field.add(s, term);
        }
        let d_squared = field.mul(order_mod_p, field.inv(s));
        let d = (1..=sqrt_order.min((p - 1) / 2))
            .find(|&d| field.mul(d, d) == d_squared)
            .ok_or_else(|| Error::LiftingFailure {
                detail: format!("no degree with d^2 = {d_squared} mod {p}"),
            })?;
        degrees[t] = d;
        for i in 0..r {
            values[t][i] = field.mul(d, mu[i]);
        }
    }

    let zeta = field.pow(primitive_root(field), (p - 1) / exponent);
    Ok(ModpTable { p, degrees, values, zeta })
}
