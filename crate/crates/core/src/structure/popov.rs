//! Row reduction of polynomial matrices to weak Popov form by iterated
//! leading-term cancellation, and reduction of vectors modulo such a basis.
//!
//! A matrix is in weak Popov form when the leading positions of its rows are
//! pairwise distinct; such a matrix is row reduced (its leading row
//! coefficient matrix has full rank) and has the predictable leading position
//! property used by [`reduce`].

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{PolyVector, Polynomial};

#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Row-reduced rows, sorted by degree (descending, stable).
    pub rows: Vec<PolyVector>,
    /// Unimodular `U` with `rows = U · input`, as rows of length k.
    pub transform: Vec<PolyVector>,
}

/// Row-reduce `input`, failing with [`Error::RankDeficient`] when the rows are
/// dependent over `F_q[x]`.
pub fn row_reduce(field: &Field, input: &[PolyVector]) -> Result<RowReduction> {
    let (rows, transform) = weak_popov(field, input, false)?;
    Ok(sort_by_degree(rows, transform))
}

/// Rank over `F_q[x]` of a list of vectors.
pub fn poly_rank(field: &Field, input: &[PolyVector]) -> usize {
    let (rows, _) = weak_popov(field, input, true).expect("zero rows are dropped");
    rows.len()
}

fn weak_popov(
    field: &Field,
    input: &[PolyVector],
    drop_zero: bool,
) -> Result<(Vec<PolyVector>, Vec<PolyVector>)> {
    let k = input.len();
    let mut rows: Vec<PolyVector> = input.to_vec();
    let mut transform: Vec<PolyVector> = (0..k).map(|i| PolyVector::unit(k, i, 0)).collect();

    if drop_zero {
        let keep: Vec<bool> = rows.iter().map(|r| !r.is_zero()).collect();
        retain_rows(&mut rows, &mut transform, &keep);
    } else if rows.iter().any(PolyVector::is_zero) {
        return Err(Error::RankDeficient);
    }

    loop {
        let leads: Vec<(usize, usize)> = rows
            .iter()
            .map(|r| r.leading_position().expect("zero rows are removed eagerly"))
            .collect();
        let collision = (0..rows.len()).find_map(|a| {
            (a + 1..rows.len())
                .find(|&b| leads[a].1 == leads[b].1)
                .map(|b| (a, b))
        });
        let Some((a, b)) = collision else { break };

        // Equal degrees: the earlier row is the pivot.
        let (target, pivot) = if leads[b].0 >= leads[a].0 {
            (b, a)
        } else {
            (a, b)
        };
        let (dt, pos) = leads[target];
        let dp = leads[pivot].0;
        let lt = rows[target].entry(pos).leading_coeff();
        let lp = rows[pivot].entry(pos).leading_coeff();
        let factor = Polynomial::monomial(field.mul(lt, field.inv(lp).unwrap()), dt - dp);

        rows[target] = rows[target].sub(field, &rows[pivot].scale(field, &factor));
        transform[target] = transform[target].sub(field, &transform[pivot].scale(field, &factor));

        if rows[target].is_zero() {
            if !drop_zero {
                return Err(Error::RankDeficient);
            }
            let keep: Vec<bool> = (0..rows.len()).map(|i| i != target).collect();
            retain_rows(&mut rows, &mut transform, &keep);
        }
    }
    Ok((rows, transform))
}

fn retain_rows(rows: &mut Vec<PolyVector>, transform: &mut Vec<PolyVector>, keep: &[bool]) {
    let mut it = keep.iter();
    rows.retain(|_| *it.next().unwrap());
    let mut it = keep.iter();
    transform.retain(|_| *it.next().unwrap());
}

fn sort_by_degree(rows: Vec<PolyVector>, transform: Vec<PolyVector>) -> RowReduction {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(rows[i].degree()));
    RowReduction {
        rows: order.iter().map(|&i| rows[i].clone()).collect(),
        transform: order.iter().map(|&i| transform[i].clone()).collect(),
    }
}

/// The k×n matrix whose row i holds the coefficients of `x^{deg row_i}`.
pub fn leading_coefficient_matrix(rows: &[PolyVector]) -> Matrix {
    let n = rows.first().map_or(0, PolyVector::len);
    let mut m = Matrix::zeros(rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        if let Some(d) = row.degree() {
            for (c, p) in row.entries().iter().enumerate() {
                m.set(i, c, p.coeff(d));
            }
        }
    }
    m
}

pub fn is_row_reduced(field: &Field, rows: &[PolyVector]) -> bool {
    let lc = leading_coefficient_matrix(rows);
    crate::linalg::rank(field, &lc.to_rows()) == rows.len()
}

/// Reduce `v` modulo the module generated by `basis` (which must be in weak
/// Popov form). Returns the remainder and the quotients, so that
/// `v = Σ quotients_i · basis_i + remainder`; `v` is in the module iff the
/// remainder is zero.
pub fn reduce(
    field: &Field,
    basis: &[PolyVector],
    v: &PolyVector,
) -> (PolyVector, Vec<Polynomial>) {
    let leads: Vec<(usize, usize)> = basis
        .iter()
        .map(|b| b.leading_position().expect("basis rows are nonzero"))
        .collect();
    let mut rem = v.clone();
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    while let Some((d, pos)) = rem.leading_position() {
        let Some(i) = leads.iter().position(|&(db, pb)| pb == pos && db <= d) else {
            break;
        };
        let lv = rem.entry(pos).leading_coeff();
        let lb = basis[i].entry(pos).leading_coeff();
        let factor = Polynomial::monomial(field.mul(lv, field.inv(lb).unwrap()), d - leads[i].0);
        rem = rem.sub(field, &basis[i].scale(field, &factor));
        quotients[i] = quotients[i].add(field, &factor);
    }
    (rem, quotients)
}

pub fn contains(field: &Field, basis: &[PolyVector], v: &PolyVector) -> bool {
    reduce(field, basis, v).0.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(entries: Vec<Vec<u32>>) -> PolyVector {
        PolyVector::from_coeffs(entries)
    }

    #[test]
    fn already_reduced() {
        let f = Field::prime(2).unwrap();
        let rows = vec![pv(vec![vec![1], vec![]]), pv(vec![vec![], vec![0, 1]])];
        let red = row_reduce(&f, &rows).unwrap();
        let degs: Vec<_> = red.rows.iter().map(|r| r.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 0]);
        assert!(is_row_reduced(&f, &red.rows));
    }

    #[test]
    fn cross_rows_over_gf2() {
        let f = Field::prime(2).unwrap();
        let rows = vec![pv(vec![vec![1], vec![0, 1]]), pv(vec![vec![0, 1], vec![1]])];
        let red = row_reduce(&f, &rows).unwrap();
        let degs: Vec<_> = red.rows.iter().map(|r| r.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1]);
        assert!(is_row_reduced(&f, &red.rows));
    }

    #[test]
    fn non_reduced_input_gets_reduced() {
        let f = Field::prime(3).unwrap();
        // (1, x) and (x, x^2 + 1): singular leading coefficients, determinant 1.
        let rows = vec![
            pv(vec![vec![1], vec![0, 1]]),
            pv(vec![vec![0, 1], vec![1, 0, 1]]),
        ];
        assert!(!is_row_reduced(&f, &rows));
        let red = row_reduce(&f, &rows).unwrap();
        assert!(is_row_reduced(&f, &red.rows));
        let total: usize = red.rows.iter().map(|r| r.degree().unwrap()).sum();
        assert_eq!(total, 0);
        for (row, u) in red.rows.iter().zip(&red.transform) {
            let recombined = PolyVector::combine(&f, u.entries(), &rows, 2);
            assert_eq!(&recombined, row);
        }
        for r in &rows {
            assert!(contains(&f, &red.rows, r));
        }
    }

    #[test]
    fn dependent_rows() {
        let f = Field::prime(2).unwrap();
        let rows = vec![
            pv(vec![vec![1], vec![0, 1]]),
            pv(vec![vec![0, 1], vec![0, 0, 1]]),
        ];
        assert_eq!(row_reduce(&f, &rows).unwrap_err(), Error::RankDeficient);
        assert_eq!(poly_rank(&f, &rows), 1);
        assert_eq!(poly_rank(&f, &[PolyVector::zero(3)]), 0);
    }

    #[test]
    fn membership() {
        let f = Field::prime(2).unwrap();
        let basis = row_reduce(
            &f,
            &[pv(vec![vec![1], vec![0, 1]]), pv(vec![vec![0, 1], vec![1]])],
        )
        .unwrap()
        .rows;
        // (1 + x^2, 0) = (1, x) + x (x, 1) over GF(2)
        assert!(contains(&f, &basis, &pv(vec![vec![1, 0, 1], vec![]])));
        assert!(!contains(&f, &basis, &pv(vec![vec![1], vec![]])));
    }
}
