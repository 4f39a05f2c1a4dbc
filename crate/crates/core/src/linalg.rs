//! Dense row-major matrices and row reduction over GF(q).

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, field: &Field, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a != 0 {
                axpy(field, &mut out, a, self.row(i));
            }
        }
        out
    }
}

/// `dst += a * src`
#[inline]
pub fn axpy(field: &Field, dst: &mut [u32], a: u32, src: &[u32]) {
    if a == 0 {
        return;
    }
    if a == 1 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.add(*d, s);
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.add(*d, field.mul(a, s));
        }
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Reduced row echelon form computed in place. Zero rows are dropped; the
/// returned vector lists the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let pivots = rref_on_columns(field, rows, 0..width);
    rows.truncate(pivots.len());
    pivots
}

/// Row-reduce using only the columns in `cols` to choose pivots, applying each
/// row operation to the whole row. Afterwards the restriction of the rows to
/// `cols` is in reduced row echelon form and the rows whose restriction is
/// zero sit below the pivot rows. Returns the pivot columns of the leading rows.
pub fn rref_on_columns(
    field: &Field,
    rows: &mut [Vec<u32>],
    cols: std::ops::Range<usize>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(rows[next][c]).unwrap();
        if inv != 1 {
            for x in rows[next].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row[c] != 0 {
                let a = field.neg(row[c]);
                axpy(field, row, a, &pivot_row);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// Whether `v` lies in the row space of `basis`, which must be in RREF with the
/// given pivots.
pub fn in_row_space(field: &Field, basis: &[Vec<u32>], pivots: &[usize], v: &[u32]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if w[p] != 0 {
            let a = field.neg(w[p]);
            axpy(field, &mut w, a, row);
        }
    }
    is_zero(&w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank_over_gf3() {
        let f = Field::prime(3).unwrap();
        let mut rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 1, 1]];
        assert_eq!(rank(&f, &rows), 2);
        let pivots = rref(&f, &mut rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(in_row_space(&f, &rows, &pivots, &[2, 2, 1]));
        assert!(!in_row_space(&f, &rows, &pivots, &[0, 0, 1]));
    }

    #[test]
    fn partial_rref_keeps_tail_rows() {
        let f = Field::prime(2).unwrap();
        let mut rows = vec![vec![0, 0, 1, 1], vec![1, 1, 0, 1], vec![1, 1, 1, 0]];
        let pivots = rref_on_columns(&f, &mut rows, 0..2);
        assert_eq!(pivots, vec![0]);
        assert_eq!(rows[0][..2], [1, 1]);
        assert_eq!(rows[1][..2], [0, 0]);
        assert_eq!(rows[2][..2], [0, 0]);
        assert_eq!(rank(&f, &rows), 2);
    }

    #[test]
    fn left_mul() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        assert_eq!(m.left_mul(&f, &[1, 1]), vec![4, 1]);
    }
}
