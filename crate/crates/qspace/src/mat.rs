//! Dense matrices over GF(q) with exact row reduction.
//!
//! This is the linear-algebra workhorse behind subspaces, rank computations
//! and kernel extraction. Entries are raw field values (`u32`) interpreted
//! through the matrix's [`Field`].

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<u32>>) -> Result<Mat> {
        let n = rows.first().map_or(0, |r| r.len());
        let q = field.q();
        let mut data = Vec::with_capacity(rows.len() * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            for &v in r {
                if v as u64 >= q {
                    return Err(Error::BadParams(format!(
                        "entry {} out of range for {}",
                        v,
                        field.descriptor()
                    )));
                }
                data.push(v);
            }
        }
        Ok(Mat {
            field,
            rows: rows.len(),
            cols: n,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::ShapeMismatch);
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::ShapeMismatch);
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = &self.field;
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// self stacked on top of rhs. Errors when the column counts or fields differ.
    pub fn stack(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::AmbientMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn delete_col(&self, col: usize) -> Mat {
        let mut out = Mat::zeros(self.field.clone(), self.rows, self.cols - 1);
        for r in 0..self.rows {
            let mut cc = 0;
            for c in 0..self.cols {
                if c != col {
                    out.set(r, cc, self.get(r, c));
                    cc += 1;
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns;
    /// the rank is their count. Zero rows sink to the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut target = 0usize;
        for col in 0..self.cols {
            let Some(src) = (target..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != target {
                for c in 0..self.cols {
                    let a = self.get(src, c);
                    let b = self.get(target, c);
                    self.set(src, c, b);
                    self.set(target, c, a);
                }
            }
            let lead = self.get(target, col);
            if lead != 1 {
                let inv = f.inv(lead).expect("pivot is nonzero");
                for c in 0..self.cols {
                    let v = self.get(target, c);
                    self.set(target, c, f.mul(v, inv));
                }
            }
            for r in 0..self.rows {
                if r != target {
                    let factor = self.get(r, col);
                    if factor != 0 {
                        for c in 0..self.cols {
                            let v = f.sub(self.get(r, c), f.mul(factor, self.get(target, c)));
                            self.set(r, c, v);
                        }
                    }
                }
            }
            pivots.push(col);
            target += 1;
            if target == self.rows {
                break;
            }
        }
        pivots
    }

    /// Canonical RREF copy together with its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : M x = 0}, one vector per row.
    pub fn nullspace(&self) -> Mat {
        let (r, pivots) = self.rref();
        let f = self.field.clone();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f.clone(), free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(r.get(prow, fc)));
            }
        }
        out
    }

    /// x * M for a row vector x of length rows().
    pub fn left_mul(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: x.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for c in 0..self.cols {
                    out[c] = f.add(out[c], f.mul(xi, self.get(r, c)));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        match q {
            2 => Field::new(2, 1, None).unwrap(),
            3 => Field::new(3, 1, None).unwrap(),
            4 => Field::new(2, 2, None).unwrap(),
            _ => panic!(),
        }
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Mat::identity(gf(2), 4);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn rref_collapses_equal_rows() {
        let m = Mat::from_rows(gf(2), vec![vec![1, 1], vec![1, 1]]).unwrap();
        let (r, p) = m.rref();
        assert_eq!(p, vec![0]);
        assert_eq!(r.row(0), &[1, 1]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    /// Oracle: rank = log_q of the number of distinct vectors in the row span.
    fn span_rank(m: &Mat) -> usize {
        let q = m.field().q() as usize;
        let mut seen = std::collections::HashSet::new();
        let k = m.rows();
        let mut coeffs = vec![0u32; k];
        loop {
            seen.insert(m.left_mul(&coeffs).unwrap());
            let mut i = 0;
            loop {
                if i == k {
                    let mut count = seen.len();
                    let mut r = 0;
                    while count > 1 {
                        count /= q;
                        r += 1;
                    }
                    return r;
                }
                coeffs[i] += 1;
                if coeffs[i] as usize == q {
                    coeffs[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn rank_matches_span_counting_oracle_gf3() {
        // deterministic pseudo-random 4x6 matrices over GF(3)
        let f = gf(3);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..25 {
            let rows: Vec<Vec<u32>> = (0..4)
                .map(|_| (0..6).map(|_| (next() % 3) as u32).collect())
                .collect();
            let m = Mat::from_rows(f.clone(), rows).unwrap();
            assert_eq!(m.rank(), span_rank(&m));
        }
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = gf(2);
        let m = Mat::from_rows(f, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 2);
        for r in 0..ns.rows() {
            let x = ns.row(r);
            // M x^T = 0
            for mr in 0..m.rows() {
                let mut acc = 0u32;
                for c in 0..m.cols() {
                    acc = m.field().add(acc, m.field().mul(m.get(mr, c), x[c]));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn rref_over_gf4_normalizes_leading_entries() {
        let f = gf(4);
        let m = Mat::from_rows(f, vec![vec![2, 3, 1], vec![3, 2, 2]]).unwrap();
        let (r, p) = m.rref();
        for (i, &c) in p.iter().enumerate() {
            assert_eq!(r.get(i, c), 1);
            for other in 0..r.rows() {
                if other != i {
                    assert_eq!(r.get(other, c), 0);
                }
            }
        }
    }
}
