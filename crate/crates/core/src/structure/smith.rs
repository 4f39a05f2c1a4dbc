//! Invariant factors over `F_q[x]` and maximal minors.

use crate::field::Field;
use crate::poly::{PolyVector, Polynomial};

/// Nonzero invariant factors of the matrix with the given rows, monic and in
/// divisibility order.
pub fn invariant_factors(field: &Field, rows: &[PolyVector]) -> Vec<Polynomial> {
    let mut a: Vec<Vec<Polynomial>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let k = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();

    for t in 0..k.min(n) {
        let Some((i, j)) = min_degree_entry(&a, t..k, t..n) else {
            break;
        };
        a.swap(t, i);
        swap_cols(&mut a, t, j);
        loop {
            let mut clean = true;
            for i in t + 1..k {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(field, &a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(field, &q.mul(field, p));
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(field, &a[t][t]);
                for row in a.iter_mut() {
                    let sub = q.mul(field, &row[t]);
                    row[j] = row[j].sub(field, &sub);
                }
                clean &= r.is_zero();
            }
            if !clean {
                // A remainder of smaller degree appeared in row or column t.
                let (i, j) = min_degree_entry(&a, t..k, t..n).expect("pivot is nonzero");
                a.swap(t, i);
                swap_cols(&mut a, t, j);
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let pivot = a[t][t].clone();
            let bad = (t + 1..k).find(|&i| {
                (t + 1..n)
                    .any(|j| !a[i][j].is_zero() && !a[i][j].div_rem(field, &pivot).1.is_zero())
            });
            match bad {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, p) in a[t].iter_mut().zip(&row) {
                        *x = x.add(field, p);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic(field));
    }
    diag
}

/// Position of the first nonzero entry of minimal degree in the block.
fn min_degree_entry(
    a: &[Vec<Polynomial>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if let Some(d) = a[i][j].degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_cols(a: &mut [Vec<Polynomial>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn determinant(field: &Field, m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    if k == 0 {
        return Polynomial::one();
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !a[i][c].is_zero()) else {
            return Polynomial::zero();
        };
        if p != c {
            a.swap(p, c);
            negate = !negate;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let num = a[i][j]
                    .mul(field, &a[c][c])
                    .sub(field, &a[i][c].mul(field, &a[c][j]));
                let (q, r) = num.div_rem(field, &prev);
                debug_assert!(r.is_zero(), "fraction-free step must divide exactly");
                a[i][j] = q;
            }
            a[i][c] = Polynomial::zero();
        }
        prev = a[c][c].clone();
    }
    let det = a[k - 1][k - 1].clone();
    if negate {
        det.neg(field)
    } else {
        det
    }
}

/// Monic gcd of all maximal (k×k) minors together with their maximal degree;
/// `None` degree means every minor vanishes.
pub fn maximal_minors(field: &Field, rows: &[PolyVector]) -> (Polynomial, Option<usize>) {
    let k = rows.len();
    let n = rows.first().map_or(0, PolyVector::len);
    let mut gcd = Polynomial::zero();
    let mut max_degree = None;
    for cols in combinations(n, k) {
        let sub: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r.entry(c).clone()).collect())
            .collect();
        let det = determinant(field, &sub);
        if let Some(d) = det.degree() {
            max_degree = max_degree.max(Some(d));
            gcd = Polynomial::gcd(field, &gcd, &det);
        }
    }
    (gcd, max_degree)
}

/// All k-subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(entries: Vec<Vec<u32>>) -> PolyVector {
        PolyVector::from_coeffs(entries)
    }

    fn product(field: &Field, ps: &[Polynomial]) -> Polynomial {
        ps.iter()
            .fold(Polynomial::one(), |acc, p| acc.mul(field, p))
    }

    #[test]
    fn diagonal_catastrophic() {
        let f = Field::prime(2).unwrap();
        let rows = vec![pv(vec![vec![1], vec![]]), pv(vec![vec![], vec![0, 1]])];
        let inv = invariant_factors(&f, &rows);
        assert_eq!(inv, vec![Polynomial::one(), Polynomial::monomial(1, 1)]);
        let (g, d) = maximal_minors(&f, &rows);
        assert_eq!(g, Polynomial::monomial(1, 1));
        assert_eq!(d, Some(1));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(x, x + 1) has invariant factors 1, x(x + 1).
        let f = Field::prime(3).unwrap();
        let rows = vec![pv(vec![vec![0, 1], vec![]]), pv(vec![vec![], vec![1, 1]])];
        let inv = invariant_factors(&f, &rows);
        assert_eq!(
            inv,
            vec![Polynomial::one(), Polynomial::from_coeffs(vec![0, 1, 1])]
        );
    }

    #[test]
    fn cross_code_over_gf3() {
        // det [[1, x], [x, 1]] = 1 - x^2
        let f = Field::prime(3).unwrap();
        let rows = vec![pv(vec![vec![1], vec![0, 1]]), pv(vec![vec![0, 1], vec![1]])];
        let inv = invariant_factors(&f, &rows);
        let (g, d) = maximal_minors(&f, &rows);
        assert_eq!(d, Some(2));
        assert_eq!(g, Polynomial::from_coeffs(vec![2, 0, 1]));
        assert_eq!(product(&f, &inv), g);
    }

    #[test]
    fn wide_noncatastrophic() {
        let f = Field::prime(2).unwrap();
        let rows = vec![
            pv(vec![vec![1], vec![0, 1], vec![]]),
            pv(vec![vec![], vec![1], vec![1]]),
        ];
        let inv = invariant_factors(&f, &rows);
        assert!(inv.iter().all(|p| p.degree() == Some(0)));
        assert_eq!(maximal_minors(&f, &rows).0, Polynomial::one());
    }

    #[test]
    fn determinant_3x3() {
        let f = Field::prime(5).unwrap();
        let c = |v: Vec<u32>| Polynomial::from_coeffs(v);
        let m = vec![
            vec![c(vec![0, 1]), c(vec![1]), c(vec![])],
            vec![c(vec![2]), c(vec![0, 1]), c(vec![1])],
            vec![c(vec![1]), c(vec![]), c(vec![0, 1])],
        ];
        // x(x^2) - 1(2x - 1) = x^3 - 2x + 1
        assert_eq!(determinant(&f, &m), c(vec![1, 3, 0, 1]));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
