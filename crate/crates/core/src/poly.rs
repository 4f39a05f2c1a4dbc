//! Polynomials, polynomial vectors and polynomial matrices over GF(q).
//!
//! Coefficients are raw field encodings; operations that need arithmetic take
//! the [`Field`] explicitly. A polynomial vector `c ∈ F_q[x]^n` is viewed both
//! coordinate-wise and as the sequence of its coefficient slices
//! `c[i] ∈ F_q^n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial(Vec<u32>);

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial(Vec::new())
    }

    pub fn one() -> Polynomial {
        Polynomial(vec![1])
    }

    pub fn constant(c: u32) -> Polynomial {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c · x^d`
    pub fn monomial(c: u32, d: usize) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        let mut v = vec![0; d + 1];
        v[d] = c;
        Polynomial(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Polynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::from_coeffs(v)
    }

    pub fn sub(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Polynomial::from_coeffs(v)
    }

    pub fn neg(&self, field: &Field) -> Polynomial {
        Polynomial(self.0.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn scale(&self, field: &Field, a: u32) -> Polynomial {
        if a == 0 {
            return Polynomial::zero();
        }
        Polynomial(self.0.iter().map(|&c| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = field.add(v[i + j], field.mul(a, b));
            }
        }
        Polynomial::from_coeffs(v)
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![0; d];
        v.extend_from_slice(&self.0);
        Polynomial(v)
    }

    /// Divide by `x^d` when exact.
    pub fn unshift(&self, d: usize) -> Option<Polynomial> {
        if self.0.iter().take(d).any(|&c| c != 0) {
            return None;
        }
        Some(Polynomial::from_coeffs(
            self.0.iter().skip(d).copied().collect(),
        ))
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, field: &Field, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = field.inv(divisor.leading_coeff()).unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quo = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = field.mul(c, inv);
            quo[i - dd] = factor;
            for (j, &b) in divisor.0.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = field.sub(rem[idx], field.mul(factor, b));
            }
        }
        (Polynomial::from_coeffs(quo), Polynomial::from_coeffs(rem))
    }

    pub fn monic(&self, field: &Field) -> Polynomial {
        match field.inv(self.leading_coeff()) {
            Some(inv) => self.scale(field, inv),
            None => Polynomial::zero(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(field: &Field, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Keep only the coefficients of degrees `h..=j`.
    pub fn window(&self, h: usize, j: usize) -> Polynomial {
        let v = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| if i >= h && i <= j { c } else { 0 })
            .collect();
        Polynomial::from_coeffs(v)
    }

    /// `x^d · p(1/x)`; requires `d ≥ deg p`.
    pub fn reversed(&self, d: usize) -> Polynomial {
        assert!(self.degree().is_none_or(|deg| deg <= d));
        let mut v = vec![0; d + 1];
        for (i, &c) in self.0.iter().enumerate() {
            v[d - i] = c;
        }
        Polynomial::from_coeffs(v)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_zero() {
            [0u32].serialize(s)
        } else {
            self.0.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(Polynomial::from_coeffs)
    }
}

/// An element of `F_q[x]^n`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyVector(Vec<Polynomial>);

impl PolyVector {
    pub fn new(entries: Vec<Polynomial>) -> PolyVector {
        PolyVector(entries)
    }

    pub fn zero(n: usize) -> PolyVector {
        PolyVector(vec![Polynomial::zero(); n])
    }

    /// Build from ascending coefficient lists, one per coordinate.
    pub fn from_coeffs(entries: Vec<Vec<u32>>) -> PolyVector {
        PolyVector(entries.into_iter().map(Polynomial::from_coeffs).collect())
    }

    /// Unit vector `e_i` scaled by `x^d`.
    pub fn unit(n: usize, i: usize, d: usize) -> PolyVector {
        let mut v = PolyVector::zero(n);
        v.0[i] = Polynomial::monomial(1, d);
        v
    }

    /// Reassemble a vector from its flattened slices `(c[0], c[1], …)`, each of length `n`.
    pub fn from_slices(flat: &[u32], n: usize) -> PolyVector {
        assert!(n > 0 && flat.len().is_multiple_of(n));
        let slices = flat.len() / n;
        PolyVector(
            (0..n)
                .map(|i| Polynomial::from_coeffs((0..slices).map(|d| flat[d * n + i]).collect()))
                .collect(),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> &Polynomial {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    /// Maximal entry degree; `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().filter_map(Polynomial::degree).max()
    }

    /// Number of nonzero coefficients over all coordinates and degrees.
    pub fn weight(&self) -> usize {
        self.0.iter().map(Polynomial::weight).sum()
    }

    /// `c_{[h,j]}`: the coefficient slices of degrees `h..=j`.
    pub fn truncate(&self, h: usize, j: usize) -> Result<PolyVector> {
        if h > j {
            return Err(Error::EmptyWindow { h, j });
        }
        Ok(PolyVector(self.0.iter().map(|p| p.window(h, j)).collect()))
    }

    /// `c[i] ∈ F_q^n`.
    pub fn coefficient_slice(&self, i: usize) -> Vec<u32> {
        self.0.iter().map(|p| p.coeff(i)).collect()
    }

    /// The slices `c[0], …, c[j]` concatenated.
    pub fn flatten(&self, j: usize) -> Vec<u32> {
        (0..=j).flat_map(|i| self.coefficient_slice(i)).collect()
    }

    pub fn support(&self) -> SupportSet {
        let mut s = SupportSet::default();
        s.extend_with(self);
        s
    }

    /// `(degree, position)` where position is the last coordinate attaining the
    /// vector's degree. `None` for the zero vector.
    pub fn leading_position(&self) -> Option<(usize, usize)> {
        let d = self.degree()?;
        let pos = self.0.iter().rposition(|p| p.degree() == Some(d)).unwrap();
        Some((d, pos))
    }

    pub fn add(&self, field: &Field, other: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), other.len());
        PolyVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.add(field, b))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), other.len());
        PolyVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.sub(field, b))
                .collect(),
        )
    }

    /// `p(x) · c`
    pub fn scale(&self, field: &Field, p: &Polynomial) -> PolyVector {
        PolyVector(self.0.iter().map(|e| e.mul(field, p)).collect())
    }

    pub fn shift(&self, d: usize) -> PolyVector {
        PolyVector(self.0.iter().map(|e| e.shift(d)).collect())
    }

    /// `Σ p_i · rows_i`
    pub fn combine(
        field: &Field,
        coeffs: &[Polynomial],
        rows: &[PolyVector],
        n: usize,
    ) -> PolyVector {
        let mut acc = PolyVector::zero(n);
        for (p, row) in coeffs.iter().zip(rows) {
            if !p.is_zero() {
                acc = acc.add(field, &row.scale(field, p));
            }
        }
        acc
    }

    pub fn concat(&self, other: &PolyVector) -> PolyVector {
        PolyVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.0
    }

    pub(crate) fn max_coefficient(&self) -> u32 {
        self.0
            .iter()
            .flat_map(|p| p.coeffs().iter().copied())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p:?}")?;
        }
        write!(f, ")")
    }
}

/// A k×n polynomial matrix given by its rows.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PolyMatrix {
    rows: Vec<PolyVector>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<PolyVector>) -> Result<PolyMatrix> {
        let n = rows
            .first()
            .ok_or_else(|| Error::Shape("a polynomial matrix needs at least one row".into()))?
            .len();
        if n == 0 {
            return Err(Error::Shape(
                "rows must have at least one coordinate".into(),
            ));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(PolyMatrix { rows })
    }

    pub fn from_coeffs(rows: Vec<Vec<Vec<u32>>>) -> Result<PolyMatrix> {
        PolyMatrix::new(rows.into_iter().map(PolyVector::from_coeffs).collect())
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[PolyVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PolyVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<PolyVector> {
        self.rows
    }

    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        self.rows.iter().map(PolyVector::degree).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(PolyVector::degree).max()
    }

    /// `G_i`, the k×n matrix of degree-`i` coefficients.
    pub fn coefficient_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.k(), self.n());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, p) in row.entries().iter().enumerate() {
                m.set(r, c, p.coeff(i));
            }
        }
        m
    }

    /// Check that every coefficient is an element of `field`.
    pub fn validate(&self, field: &Field) -> Result<()> {
        let max = self
            .rows
            .iter()
            .map(PolyVector::max_coefficient)
            .max()
            .unwrap_or(0);
        if max >= field.order() {
            return Err(Error::Invalid(format!(
                "coefficient {max} is not an element of GF({})",
                field.order()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<PolyVector>::deserialize(d)?;
        PolyMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Set of monomial positions `(coordinate, degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportSet(BTreeSet<(usize, usize)>);

impl SupportSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, coordinate: usize, degree: usize) -> bool {
        self.0.contains(&(coordinate, degree))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Flat indices `degree · n + coordinate`, sorted.
    pub fn flat(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().map(|&(c, d)| d * n + c).collect();
        v.sort_unstable();
        v
    }

    fn extend_with(&mut self, v: &PolyVector) {
        for (i, p) in v.entries().iter().enumerate() {
            for (d, &c) in p.coeffs().iter().enumerate() {
                if c != 0 {
                    self.0.insert((i, d));
                }
            }
        }
    }
}

/// Union of the monomial supports of `vectors`, which equals the support of
/// their span.
pub fn support_union(vectors: &[PolyVector]) -> Result<SupportSet> {
    let mut s = SupportSet::default();
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                got: bad.len(),
            });
        }
    }
    for v in vectors {
        s.extend_with(v);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(entries: Vec<Vec<u32>>) -> PolyVector {
        PolyVector::from_coeffs(entries)
    }

    #[test]
    fn truncation() {
        let c = pv(vec![vec![1], vec![0, 1], vec![1]]);
        assert_eq!(
            c.truncate(0, 0).unwrap(),
            pv(vec![vec![1], vec![], vec![1]])
        );

        let c = pv(vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1, 1]]);
        assert_eq!(
            c.truncate(0, 3).unwrap(),
            pv(vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1]])
        );

        let c = pv(vec![vec![1, 1], vec![1], vec![]]);
        assert_eq!(
            c.truncate(1, 1).unwrap(),
            pv(vec![vec![0, 1], vec![], vec![]])
        );

        assert_eq!(c.truncate(2, 1), Err(Error::EmptyWindow { h: 2, j: 1 }));
    }

    #[test]
    fn weight_and_degree() {
        assert_eq!(pv(vec![vec![1], vec![0, 1], vec![1]]).weight(), 3);
        assert_eq!(pv(vec![vec![1, 0, 1], vec![]]).weight(), 2);
        assert_eq!(PolyVector::zero(2).weight(), 0);

        assert_eq!(
            pv(vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1]]).degree(),
            Some(3)
        );
        assert_eq!(PolyVector::zero(2).degree(), None);
        assert_eq!(pv(vec![vec![1], vec![1]]).degree(), Some(0));
    }

    #[test]
    fn supports() {
        let a = pv(vec![vec![1], vec![1], vec![], vec![], vec![]]);
        let b = pv(vec![vec![], vec![], vec![1], vec![1], vec![1]]);
        assert_eq!(support_union(std::slice::from_ref(&a)).unwrap().len(), 2);
        assert_eq!(support_union(&[a.clone(), b]).unwrap().len(), 5);
        assert_eq!(support_union(&[]).unwrap().len(), 0);
        assert!(matches!(
            support_union(&[a, PolyVector::zero(2)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn slices() {
        let c = pv(vec![vec![1], vec![0, 1], vec![1]]);
        assert_eq!(c.coefficient_slice(1), vec![0, 1, 0]);
        assert_eq!(c.coefficient_slice(5), vec![0, 0, 0]);
        let c = pv(vec![vec![], vec![0, 0, 1], vec![1]]);
        assert_eq!(c.coefficient_slice(0), vec![0, 0, 1]);
        assert_eq!(PolyVector::from_slices(&c.flatten(2), 3), c);
    }

    #[test]
    fn division_and_gcd() {
        let f = Field::prime(3).unwrap();
        // (x+1)(x+2) = x^2 + 2 over GF(3)
        let a = Polynomial::from_coeffs(vec![2, 0, 1]);
        let b = Polynomial::from_coeffs(vec![1, 1]);
        let (q, r) = a.div_rem(&f, &b);
        assert_eq!(q, Polynomial::from_coeffs(vec![2, 1]));
        assert!(r.is_zero());
        let g = Polynomial::gcd(&f, &a, &Polynomial::from_coeffs(vec![2, 2]));
        assert_eq!(g, b);
        assert_eq!(
            Polynomial::from_coeffs(vec![0, 2, 1]).reversed(2),
            Polynomial::from_coeffs(vec![1, 2])
        );
    }

    #[test]
    fn json_encoding() {
        let c = pv(vec![vec![1, 2], vec![], vec![0, 1]]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "[[1,2],[0],[0,1]]");
        let back: PolyVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn vector(q: u32, n: usize, len: usize) -> impl Strategy<Value = PolyVector> {
            prop::collection::vec(prop::collection::vec(0..q, 0..len), n)
                .prop_map(PolyVector::from_coeffs)
        }

        proptest! {
            #[test]
            fn weight_splits_over_windows(c in vector(3, 3, 7), j in 0usize..8) {
                let low = c.truncate(0, j).unwrap().weight();
                let high = c.truncate(j + 1, 64).unwrap().weight();
                prop_assert_eq!(low + high, c.weight());
            }

            #[test]
            fn nested_truncation(c in vector(2, 2, 8), j in 0usize..8, k in 0usize..8) {
                let twice = c.truncate(0, j).unwrap().truncate(0, k).unwrap();
                prop_assert_eq!(twice, c.truncate(0, j.min(k)).unwrap());
            }

            #[test]
            fn truncated_weight_monotone(c in vector(3, 2, 6)) {
                let mut prev = 0;
                for j in 0..6 {
                    let w = c.truncate(0, j).unwrap().weight();
                    prop_assert!(w >= prev);
                    prev = w;
                }
                prop_assert_eq!(prev, c.weight());
            }

            #[test]
            fn support_invariant_under_change_of_basis(
                a in vector(3, 3, 3), b in vector(3, 3, 3),
                m in prop::sample::select(vec![[1u32, 0, 0, 1], [1, 1, 0, 1], [2, 1, 1, 1], [0, 1, 1, 0], [1, 2, 2, 0]])
            ) {
                let f = Field::prime(3).unwrap();
                let c = |x: u32| Polynomial::constant(x);
                let a2 = a.scale(&f, &c(m[0])).add(&f, &b.scale(&f, &c(m[1])));
                let b2 = a.scale(&f, &c(m[2])).add(&f, &b.scale(&f, &c(m[3])));
                let before = support_union(&[a, b]).unwrap();
                let after = support_union(&[a2, b2]).unwrap();
                prop_assert_eq!(before.len(), after.len());
            }
        }
    }
}
