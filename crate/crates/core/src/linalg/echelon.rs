//! Fraction-free row reduction.
//!
//! Rows are scaled to integral representatives (coefficients in ℤ[ζ]) and
//! eliminated by cross-multiplication; after every update the row is divided
//! by the integer content of its coefficients so entries stay primitive.
//! Pivot rows are normalized to 1 only in the final back-substitution pass.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

fn integer_content(row: &[Scalar]) -> BigInt {
    let mut g = BigInt::zero();
    for s in row {
        for c in s.coeffs() {
            if !c.is_zero() {
                g = g.gcd(c.numer());
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

fn make_primitive(row: &mut [Scalar]) {
    let den = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(&s.denominator_lcm()));
    if !den.is_one() {
        for s in row.iter_mut() {
            if !s.is_zero() {
                *s = s.scale_int(&den);
            }
        }
    }
    let g = integer_content(row);
    if !g.is_zero() && !g.abs().is_one() {
        let inv = Scalar::from_rational(num_rational::BigRational::new(BigInt::one(), g));
        for s in row.iter_mut() {
            if !s.is_zero() {
                *s = &*s * &inv;
            }
        }
    }
}

/// `target = pivot * target - target[col] * source`, then made primitive.
fn cross_eliminate(target: &mut [Scalar], source: &[Scalar], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    let pivot = source[col].clone();
    for (t, s) in target.iter_mut().zip(source) {
        let scaled = if pivot.is_one() { t.clone() } else { &*t * &pivot };
        *t = if s.is_zero() { scaled } else { scaled - &factor * s };
    }
    make_primitive(target);
}

/// Reduced row echelon form of the given dense rows.
///
/// Returns the nonzero RREF rows (pivot entries equal to 1) and their pivot
/// columns, sorted by pivot.
pub(crate) fn rref(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|s| !s.is_zero()));
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // prefer the sparsest candidate to limit fill-in
        let Some(p) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r].iter().filter(|s| !s.is_zero()).count())
        else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let src = &head[rank];
        for t in tail.iter_mut() {
            cross_eliminate(t, src, col);
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    // back substitution, still fraction-free
    for k in (0..rank).rev() {
        let col = pivots[k];
        let (head, tail) = rows.split_at_mut(k);
        let src = &tail[0];
        for t in head.iter_mut() {
            cross_eliminate(t, src, col);
        }
    }
    for (row, &col) in rows.iter_mut().zip(&pivots) {
        let inv = row[col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for s in row.iter_mut() {
                if !s.is_zero() {
                    *s = &*s * &inv;
                }
            }
        }
    }
    (rows, pivots)
}

/// Incrementally maintained RREF basis of a row space.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    /// Adds a batch of rows; returns the new rank.
    pub fn extend<I: IntoIterator<Item = Vec<Scalar>>>(&mut self, batch: I) -> usize {
        if self.is_full() {
            return self.rank();
        }
        let mut residuals = Vec::new();
        for mut v in batch {
            debug_assert_eq!(v.len(), self.ncols);
            self.reduce(&mut v);
            if v.iter().any(|s| !s.is_zero()) {
                residuals.push(v);
            }
        }
        if residuals.is_empty() {
            return self.rank();
        }
        let (new_rows, new_pivots) = rref(residuals, self.ncols);
        for old in self.rows.iter_mut() {
            for (nr, &p) in new_rows.iter().zip(&new_pivots) {
                if old[p].is_zero() {
                    continue;
                }
                let f = old[p].clone();
                for (x, r) in old.iter_mut().zip(nr) {
                    if !r.is_zero() {
                        *x -= &(&f * r);
                    }
                }
            }
        }
        let mut merged: Vec<(usize, Vec<Scalar>)> = self
            .pivots
            .drain(..)
            .zip(self.rows.drain(..))
            .chain(new_pivots.into_iter().zip(new_rows))
            .collect();
        merged.sort_by_key(|(p, _)| *p);
        for (p, r) in merged {
            self.pivots.push(p);
            self.rows.push(r);
        }
        self.rank()
    }

    /// Basis of the null space of the accumulated rows, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[f] = Scalar::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            out.push(v);
        }
        out
    }
}

/// Determinant by Bareiss elimination with exact Sylvester divisions.
pub(crate) fn bareiss_det(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    if n == 0 {
        return Scalar::one();
    }
    // clear denominators row by row, remembering the scaling
    let mut scale = Scalar::one();
    for row in a.iter_mut() {
        let den = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(&s.denominator_lcm()));
        if !den.is_one() {
            for s in row.iter_mut() {
                *s = s.scale_int(&den);
            }
            scale = scale.scale_int(&den);
        }
    }
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &v / &prev;
            }
            a[i][k] = Scalar::zero();
        }
        prev = a[k][k].clone();
    }
    let det = &a[n - 1][n - 1] / &scale;
    if sign {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn rref_of_small_matrix() {
        let rows = vec![vec![s(2), s(4), s(6)], vec![s(1), s(1), s(1)], vec![s(3), s(5), s(7)]];
        let (r, p) = rref(rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[0], vec![s(1), s(0), s(-1)]);
        assert_eq!(r[1], vec![s(0), s(1), s(2)]);
    }

    #[test]
    fn incremental_matches_batch() {
        let rows = vec![
            vec![s(1), s(2), s(0), s(1)],
            vec![s(0), s(0), s(3), s(1)],
            vec![s(1), s(2), s(3), s(2)],
            vec![s(5), s(0), s(1), s(0)],
        ];
        let (batch, bp) = rref(rows.clone(), 4);
        let mut inc = RowReducer::new(4);
        for r in rows {
            inc.extend([r]);
        }
        assert_eq!(inc.rows(), batch.as_slice());
        assert_eq!(inc.pivots(), bp.as_slice());
    }

    #[test]
    fn bareiss_determinant() {
        let a = vec![vec![s(2), s(0), s(1)], vec![s(1), s(3), s(2)], vec![s(1), s(1), s(1)]];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(bareiss_det(a).is_zero());
        let b = vec![vec![Scalar::from_ratio(1, 2), s(1)], vec![s(3), s(4)]];
        assert_eq!(bareiss_det(b), s(-1));
    }
}
