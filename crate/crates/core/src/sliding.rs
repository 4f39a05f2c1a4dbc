//! Truncated sliding generator matrices.
//!
//! Block row `s` of the plain matrix for window `j` holds `G_0, …, G_{j−s}`
//! starting at block column `s`; the primed variant keeps the full tail
//! `G_0, …, G_{δ₁}` on every block row and is `δ₁` blocks wider. Both are
//! assembled from the row-reduced basis of the code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{PolyVector, Polynomial};
use crate::structure::ConvCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plain,
    Primed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingMatrix {
    variant: Variant,
    j: usize,
    k: usize,
    n: usize,
    matrix: Matrix,
}

impl SlidingMatrix {
    pub fn new(code: &ConvCode, j: usize, variant: Variant) -> SlidingMatrix {
        let (k, n, delta1) = (code.k(), code.n(), code.delta1());
        let blocks = code.coefficient_matrices();
        let (width, reach) = match variant {
            Variant::Plain => (j + 1, delta1.min(j)),
            Variant::Primed => (j + 1 + delta1, delta1),
        };
        let mut matrix = Matrix::zeros(k * (j + 1), n * width);
        for s in 0..=j {
            for (i, g) in blocks.iter().enumerate().take(reach + 1) {
                let t = s + i;
                if t >= width {
                    break;
                }
                for a in 0..k {
                    matrix.row_mut(s * k + a)[t * n..(t + 1) * n].copy_from_slice(g.row(a));
                }
            }
        }
        SlidingMatrix {
            variant,
            j,
            k,
            n,
            matrix,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `v · G`, for a block message of length `k(j+1)`.
    pub fn apply(&self, field: &Field, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows() {
            return Err(Error::LengthMismatch {
                expected: self.rows(),
                got: v.len(),
            });
        }
        Ok(self.matrix.left_mul(field, v))
    }
}

/// `v · G_j^c` where `j` is read off the length of `v`.
pub fn truncated_word(code: &ConvCode, v: &[u32]) -> Result<Vec<u32>> {
    let k = code.k();
    if v.is_empty() || !v.len().is_multiple_of(k) {
        return Err(Error::LengthMismatch {
            expected: k * (v.len() / k + 1),
            got: v.len(),
        });
    }
    let j = v.len() / k - 1;
    SlidingMatrix::new(code, j, Variant::Plain).apply(code.field(), v)
}

/// The message polynomials `p_1, …, p_k` whose coefficient slices are the
/// blocks `(v^0, v^1, …)` of a block message.
pub fn message_polynomials(v: &[u32], k: usize) -> Vec<Polynomial> {
    PolyVector::from_slices(v, k).into_entries()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(p: u32, rows: Vec<Vec<Vec<u32>>>) -> ConvCode {
        ConvCode::from_coeffs(Field::prime(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn constant_window() {
        let c = code(2, vec![vec![vec![1], vec![]], vec![vec![], vec![0, 1]]]);
        let g = SlidingMatrix::new(&c, 0, Variant::Plain);
        // Rows of the reduced basis are sorted by degree: (0, x) first.
        assert_eq!(g.matrix().to_rows(), vec![vec![0, 0], vec![1, 0]]);
        let w = truncated_word(&c, &[1, 0]).unwrap();
        assert_eq!(w, vec![0, 0]);
    }

    #[test]
    fn single_row_plain_and_primed() {
        let c = code(2, vec![vec![vec![1], vec![0, 1]]]);
        let plain = SlidingMatrix::new(&c, 1, Variant::Plain);
        assert_eq!(
            plain.matrix().to_rows(),
            vec![vec![1, 0, 0, 1], vec![0, 0, 1, 0]]
        );
        let primed = SlidingMatrix::new(&c, 1, Variant::Primed);
        assert_eq!(
            primed.matrix().to_rows(),
            vec![vec![1, 0, 0, 1, 0, 0], vec![0, 0, 1, 0, 0, 1]]
        );
    }

    #[test]
    fn length_checks() {
        let c = code(2, vec![vec![vec![1], vec![0, 1]]]);
        assert!(truncated_word(&c, &[]).is_err());
        let g = SlidingMatrix::new(&c, 2, Variant::Plain);
        assert_eq!(
            g.apply(c.field(), &[1, 0]).unwrap_err(),
            Error::LengthMismatch {
                expected: 3,
                got: 2
            }
        );
        assert_eq!(truncated_word(&c, &[0, 0, 0]).unwrap(), vec![0; 6]);
    }

    #[test]
    fn tail_columns_vanish_beyond_memory() {
        let c = code(
            3,
            vec![
                vec![vec![1, 2], vec![0, 1], vec![2]],
                vec![vec![], vec![1], vec![1]],
            ],
        );
        let g = SlidingMatrix::new(&c, 4, Variant::Plain);
        let n = c.n();
        for row in 0..c.k() {
            assert!(g.matrix().row(row)[n * (c.delta1() + 1)..]
                .iter()
                .all(|&x| x == 0));
        }
    }

    fn arb_case() -> impl Strategy<Value = (u32, Vec<Vec<Vec<u32>>>, usize, Vec<u32>)> {
        (
            prop_oneof![Just(2u32), Just(3u32)],
            1usize..=2,
            2usize..=4,
            0usize..=3,
        )
            .prop_flat_map(|(q, k, n, j)| {
                let entry = prop::collection::vec(0..q, 0..=3);
                let rows = prop::collection::vec(prop::collection::vec(entry, n), k);
                let msg = prop::collection::vec(0..q, k * (j + 1));
                (Just(q), rows, Just(j), msg)
            })
    }

    proptest! {
        #[test]
        fn flattened_truncation_identity((q, rows, j, v) in arb_case()) {
            let f = Field::prime(q).unwrap();
            let Ok(c) = ConvCode::from_coeffs(f.clone(), rows) else { return Ok(()) };
            let word = truncated_word(&c, &v).unwrap();
            let p = message_polynomials(&v, c.k());
            let full = c.encode(&p);
            prop_assert_eq!(PolyVector::from_slices(&word, c.n()), full.truncate(0, j).unwrap());

            let primed = SlidingMatrix::new(&c, j, Variant::Primed).apply(&f, &v).unwrap();
            prop_assert_eq!(&primed[..word.len()], &word[..]);
            // The primed word is the whole codeword when the message has degree ≤ j.
            prop_assert_eq!(PolyVector::from_slices(&primed, c.n()), full);
        }
    }
}
