//! Exact linear algebra over `Q(θ_ℓ)`.

use std::collections::BTreeMap;

use crate::scalars::CycScalar;

pub type SparseRow = BTreeMap<usize, CycScalar>;

/// Incrementally maintained row-echelon basis of a subspace of `K^n`.
///
/// Rows are kept fully reduced against each other, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }

    /// Reduces `v` against the basis; the result has zeros in every pivot column.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                axpy(&mut v, &-&c, row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: &SparseRow) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        for x in v.values_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-&c, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }
}

/// `dst += c * src`, dropping zeros.
pub fn axpy(dst: &mut SparseRow, c: &CycScalar, src: &SparseRow) {
    if c.is_zero() {
        return;
    }
    for (k, x) in src {
        let add = c * x;
        match dst.get_mut(k) {
            Some(d) => {
                *d += &add;
                if d.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(*k, add);
            }
        }
    }
}

/// Dense square matrix inverse by Gauss-Jordan elimination; `None` when singular.
pub fn invert(m: &[Vec<CycScalar>], ell: u32) -> Option<Vec<Vec<CycScalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<CycScalar>> = m.to_vec();
    let mut inv: Vec<Vec<CycScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CycScalar::one(ell)
                    } else {
                        CycScalar::zero(ell)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let c = a[col][col].inv().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &c;
            inv[col][j] = &inv[col][j] * &c;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let sa = &f * &a[col][j];
                a[r][j] = &a[r][j] - &sa;
                let si = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &si;
            }
        }
    }
    Some(inv)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<CycScalar>], ell: u32) -> CycScalar {
    let n = m.len();
    if n == 0 {
        return CycScalar::one(ell);
    }
    let mut a: Vec<Vec<CycScalar>> = m.to_vec();
    let mut sign = false;
    let mut prev = CycScalar::one(ell);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return CycScalar::zero(ell),
            }
        }
        let pinv = prev.inv().expect("nonzero Bareiss divisor");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &num * &pinv;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of a dense matrix.
pub fn rank(m: &[Vec<CycScalar>]) -> usize {
    let mut e = Echelon::new();
    for row in m {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        e.insert(&sparse);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycScalar {
        CycScalar::from_int(3, n)
    }

    #[test]
    fn invert_and_determinant() {
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        let inv = invert(&m, 3).unwrap();
        assert_eq!(determinant(&m, 3), c(-2));
        assert_eq!(inv[0][0], c(-2));
        assert_eq!(inv[1][1], CycScalar::from_rational(3, "-1/2".parse().unwrap()));
        let sing = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        assert!(invert(&sing, 3).is_none());
        assert!(determinant(&sing, 3).is_zero());
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::new();
        let r1: SparseRow = [(0, c(1)), (1, c(1))].into_iter().collect();
        let r2: SparseRow = [(1, c(2))].into_iter().collect();
        let r3: SparseRow = [(0, c(3)), (1, c(5))].into_iter().collect();
        assert!(e.insert(&r1));
        assert!(e.insert(&r2));
        assert!(!e.insert(&r3));
        assert_eq!(e.rank(), 2);
    }
}
