use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::primitive_integer_coeffs;
use super::field::{FieldElement, Rational};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> ExactMatrix {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            entries.extend(r);
        }
        ExactMatrix { rows: n, cols, entries }
    }

    pub fn from_ints(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Integer row echelon form by fraction-free elimination. Returns the
    /// nonzero echelon rows (each primitive) and their pivot columns.
    fn integer_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| primitive_integer_coeffs(self.row(i)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut done = 0;
        for col in 0..self.cols {
            if done == rows.len() {
                break;
            }
            // smallest nonzero pivot keeps growth down
            let pick = (done..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let p = match pick {
                Some(p) => p,
                None => continue,
            };
            rows.swap(done, p);
            let pivot_row = rows[done].clone();
            let pv = pivot_row[col].clone();
            for r in rows.iter_mut().skip(done + 1) {
                if r[col].is_zero() {
                    continue;
                }
                let g = pv.gcd(&r[col]);
                let a = &pv / &g;
                let b = &r[col] / &g;
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x = &a * &*x - &b * y;
                }
                normalize_row(r);
            }
            pivots.push(col);
            done += 1;
        }
        rows.truncate(done);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.integer_echelon().1.len()
    }

    /// Kernel basis. Each vector has first nonzero entry 1 and the list is
    /// sorted lexicographically.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.integer_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row, &pc) in rows.iter().zip(&pivots).rev() {
                let mut acc = Rational::zero();
                for (j, a) in row.iter().enumerate().skip(pc + 1) {
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += Rational::from_integer(a.clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Rational::from_integer(row[pc].clone());
            }
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
            basis.push(v);
        }
        basis.sort_by(|a, b| cmp_vec(a, b));
        basis
    }
}

fn normalize_row(r: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in r.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in r.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn cmp_vec(a: &[Rational], b: &[Rational]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Row echelon over a number field; returns the rank.
pub fn rank_over_field(mut rows: Vec<Vec<FieldElement>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let p = match (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        let pivot: Vec<FieldElement> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in rows.iter_mut().skip(rank + 1) {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot).skip(col) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Determinant over a number field by Gaussian elimination.
pub fn det_over_field(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    let mut det = FieldElement::one();
    for col in 0..n {
        let p = match (col..n).find(|&i| !m[i][col].is_zero()) {
            Some(p) => p,
            None => return FieldElement::zero(),
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = &det * &pv;
        let inv = pv.inv();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                if !m[col][j].is_zero() {
                    let t = &f * &m[col][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{int, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        let m = ExactMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(m.nullspace().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn single_row_kernel() {
        let m = ExactMatrix::from_ints(&[&[1, 1, 1]]);
        let k = m.nullspace();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_one_two_by_two() {
        let m = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.nullspace(), vec![vec![int(1), rat(-1, 2)]]);
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![FieldElement::from_int(2), FieldElement::from_int(1)],
            vec![FieldElement::from_int(7), FieldElement::from_int(4)],
        ];
        assert_eq!(det_over_field(m), FieldElement::from_int(1));
    }
}
