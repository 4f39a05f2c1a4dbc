use serde::{Deserialize, Serialize};

use super::popov::{self, RowReduction};
use super::smith;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::{PolyMatrix, PolyVector, Polynomial};

/// Code parameters echoed in every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub delta1: usize,
    pub noncat: bool,
}

/// A convolutional code: a rank-k submodule of `F_q[x]^n`, stored with a
/// row-reduced basis and its structural invariants.
#[derive(Clone, Debug)]
pub struct ConvCode {
    field: Field,
    generator: PolyMatrix,
    rowred: PolyMatrix,
    transform: Vec<PolyVector>,
    row_degrees: Vec<usize>,
    delta: usize,
    delta1: usize,
    invariant_factors: Vec<Polynomial>,
    noncat: bool,
}

impl ConvCode {
    pub fn new(field: Field, generator: PolyMatrix) -> Result<ConvCode> {
        generator.validate(&field)?;
        if generator.k() > generator.n() {
            return Err(Error::RankDeficient);
        }
        let RowReduction { rows, transform } = popov::row_reduce(&field, generator.rows())?;
        let row_degrees: Vec<usize> = rows
            .iter()
            .map(|r| r.degree().expect("nonzero row"))
            .collect();
        let delta = row_degrees.iter().sum();
        let delta1 = row_degrees.iter().copied().max().unwrap_or(0);

        let (minor_gcd, minor_degree) = smith::maximal_minors(&field, &rows);
        if minor_degree != Some(delta) {
            return Err(Error::Internal(format!(
                "row degree sum {delta} differs from maximal minor degree {minor_degree:?}"
            )));
        }
        let invariant_factors = smith::invariant_factors(&field, &rows);
        let product = invariant_factors
            .iter()
            .fold(Polynomial::one(), |acc, p| acc.mul(&field, p));
        if invariant_factors.len() != rows.len() || product != minor_gcd {
            return Err(Error::Internal(
                "invariant factors disagree with the gcd of the maximal minors".into(),
            ));
        }
        if let Some(r) = generator
            .rows()
            .iter()
            .find(|r| !popov::contains(&field, &rows, r))
        {
            return Err(Error::Internal(format!(
                "generator row {r:?} not in row-reduced module"
            )));
        }
        let noncat = invariant_factors.iter().all(|p| p.degree() == Some(0));
        Ok(ConvCode {
            field,
            rowred: PolyMatrix::new(rows)?,
            generator,
            transform,
            row_degrees,
            delta,
            delta1,
            invariant_factors,
            noncat,
        })
    }

    pub fn from_coeffs(field: Field, rows: Vec<Vec<Vec<u32>>>) -> Result<ConvCode> {
        ConvCode::new(field, PolyMatrix::from_coeffs(rows)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.rowred.n()
    }

    pub fn k(&self) -> usize {
        self.rowred.k()
    }

    /// Internal degree: the sum of the row degrees of a row-reduced basis.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Memory: the largest row degree of a row-reduced basis.
    pub fn delta1(&self) -> usize {
        self.delta1
    }

    pub fn is_noncatastrophic(&self) -> bool {
        self.noncat
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n(),
            k: self.k(),
            delta: self.delta,
            delta1: self.delta1,
            noncat: self.noncat,
        }
    }

    /// The generator matrix as supplied.
    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    /// Row-reduced basis, rows sorted by degree descending.
    pub fn basis(&self) -> &[PolyVector] {
        self.rowred.rows()
    }

    pub fn rowred(&self) -> &PolyMatrix {
        &self.rowred
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    /// Unimodular `U` with `basis = U · generator`.
    pub fn transform(&self) -> &[PolyVector] {
        &self.transform
    }

    /// Monic Smith invariant factors; all units iff noncatastrophic.
    pub fn invariant_factors(&self) -> &[Polynomial] {
        &self.invariant_factors
    }

    /// Coefficient matrices `G_0, …, G_{δ₁}` of the row-reduced basis.
    pub fn coefficient_matrices(&self) -> Vec<Matrix> {
        (0..=self.delta1)
            .map(|i| self.rowred.coefficient_matrix(i))
            .collect()
    }

    pub fn contains(&self, v: &PolyVector) -> bool {
        v.len() == self.n() && popov::contains(&self.field, self.basis(), v)
    }

    /// Coordinates of a codeword with respect to the row-reduced basis.
    pub fn coordinates(&self, v: &PolyVector) -> Option<Vec<Polynomial>> {
        if v.len() != self.n() {
            return None;
        }
        let (rem, quotients) = popov::reduce(&self.field, self.basis(), v);
        rem.is_zero().then_some(quotients)
    }

    /// The codeword `Σ p_i · basis_i`.
    pub fn encode(&self, message: &[Polynomial]) -> PolyVector {
        PolyVector::combine(&self.field, message, self.basis(), self.n())
    }

    /// Whether both codes generate the same module.
    pub fn same_module(&self, other: &ConvCode) -> bool {
        self.field == other.field
            && self.n() == other.n()
            && self.k() == other.k()
            && self.basis().iter().all(|r| other.contains(r))
            && other.basis().iter().all(|r| self.contains(r))
    }

    /// The block code `C[0]`: the row space of `G_0` of the row-reduced basis.
    pub fn evaluate_at_zero(&self) -> BlockCode {
        BlockCode::new(
            &self.field,
            self.n(),
            self.rowred.coefficient_matrix(0).to_rows(),
        )
    }

    /// Reverse each row of the row-reduced basis within its own degree.
    pub fn reverse(&self) -> Result<ConvCode> {
        let rows: Vec<PolyVector> = self
            .basis()
            .iter()
            .zip(&self.row_degrees)
            .map(|(r, &d)| PolyVector::new(r.entries().iter().map(|p| p.reversed(d)).collect()))
            .collect();
        ConvCode::new(self.field.clone(), PolyMatrix::new(rows)?)
    }

    /// The subcode generated by `rows`, which must lie in this code.
    pub fn subcode(&self, rows: Vec<PolyVector>) -> Result<ConvCode> {
        if let Some(r) = rows.iter().find(|r| !self.contains(r)) {
            return Err(Error::Invalid(format!("{r:?} is not a codeword")));
        }
        ConvCode::new(self.field.clone(), PolyMatrix::new(rows)?)
    }
}

/// A linear block code over GF(q) stored by an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCode {
    field: Field,
    n: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl BlockCode {
    /// Span of `rows` (dependent or zero rows are allowed).
    pub fn new(field: &Field, n: usize, rows: Vec<Vec<u32>>) -> BlockCode {
        let mut basis = rows;
        let pivots = linalg::rref(field, &mut basis);
        BlockCode {
            field: field.clone(),
            n,
            basis,
            pivots,
        }
    }

    /// The whole space `F_q^n`.
    pub fn full(field: &Field, n: usize) -> BlockCode {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        BlockCode::new(field, n, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && linalg::in_row_space(&self.field, &self.basis, &self.pivots, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn constant_code() {
        let c = ConvCode::from_coeffs(
            gf(2),
            vec![
                vec![vec![1], vec![1], vec![], vec![], vec![]],
                vec![vec![], vec![], vec![1], vec![1], vec![1]],
            ],
        )
        .unwrap();
        assert_eq!((c.n(), c.k(), c.delta(), c.delta1()), (5, 2, 0, 0));
        assert!(c.is_noncatastrophic());
        assert_eq!(c.evaluate_at_zero().dim(), 2);
    }

    #[test]
    fn catastrophic_diagonal() {
        let c = ConvCode::from_coeffs(gf(2), vec![vec![vec![1], vec![]], vec![vec![], vec![0, 1]]])
            .unwrap();
        assert_eq!((c.delta(), c.delta1()), (1, 1));
        assert!(!c.is_noncatastrophic());
        assert_eq!(c.row_degrees(), &[1, 0]);
        let b = c.evaluate_at_zero();
        assert_eq!(b.dim(), 1);
        assert!(b.contains(&[1, 0]));

        let xx = ConvCode::from_coeffs(
            gf(2),
            vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 1]]],
        )
        .unwrap();
        assert!(!xx.is_noncatastrophic());
        assert_eq!(xx.evaluate_at_zero().dim(), 0);
    }

    #[test]
    fn noncatastrophic_example() {
        let c = ConvCode::from_coeffs(
            gf(2),
            vec![
                vec![vec![1], vec![0, 1], vec![]],
                vec![vec![], vec![1], vec![1]],
            ],
        )
        .unwrap();
        assert!(c.is_noncatastrophic());
        assert_eq!(c.delta(), 1);
    }

    #[test]
    fn cross_code_degrees() {
        let c = ConvCode::from_coeffs(
            gf(2),
            vec![vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1]]],
        )
        .unwrap();
        assert_eq!(c.row_degrees(), &[1, 1]);
        assert_eq!(c.delta(), 2);
    }

    #[test]
    fn dependent_rows_rejected() {
        let err = ConvCode::from_coeffs(
            gf(2),
            vec![vec![vec![1], vec![1]], vec![vec![0, 1], vec![0, 1]]],
        );
        assert_eq!(err.unwrap_err(), Error::RankDeficient);
        let err = ConvCode::from_coeffs(gf(2), vec![vec![vec![1]], vec![vec![0, 1]]]);
        assert_eq!(err.unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn reverse_code_example() {
        let f = gf(3);
        let c = ConvCode::from_coeffs(
            f.clone(),
            vec![
                vec![vec![1], vec![1], vec![2]],
                vec![vec![0, 2], vec![1, 1], vec![]],
            ],
        )
        .unwrap();
        let rev = c.reverse().unwrap();
        let expected = ConvCode::from_coeffs(
            f,
            vec![
                vec![vec![1], vec![1], vec![2]],
                vec![vec![2], vec![1, 1], vec![]],
            ],
        )
        .unwrap();
        assert!(rev.same_module(&expected));
        assert_eq!(rev.params().delta, c.params().delta);
        assert!(rev.reverse().unwrap().same_module(&c));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = gf(3);
        let c = ConvCode::from_coeffs(
            f.clone(),
            vec![
                vec![vec![1], vec![0, 1], vec![]],
                vec![vec![], vec![1], vec![1]],
            ],
        )
        .unwrap();
        let msg = vec![
            Polynomial::from_coeffs(vec![2, 1]),
            Polynomial::from_coeffs(vec![0, 0, 1]),
        ];
        let word = c.encode(&msg);
        assert_eq!(c.coordinates(&word).unwrap(), msg);
        assert!(c.coordinates(&PolyVector::unit(3, 0, 0)).is_none());
    }
}
