//! Minimum-support search over `r`-dimensional subspaces of a coordinate
//! space `F_q^m`, each coordinate carrying a generator image.
//!
//! Subspaces are visited once each through their RREF bases: pivot sets in
//! lexicographic order, then the rows top to bottom with free entries in
//! base-q order. The support of a span is the union of the supports of the
//! basis images, so the union over the rows fixed so far bounds every
//! completion from below.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::column::gaussian;
use super::{bounds, check_block, checked, Budget, Certificate, DistanceResult, Exactness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::PolyVector;
use crate::sliding::{SlidingMatrix, Variant};
use crate::structure::smith::combinations;
use crate::structure::{poly_rank, BlockCode, ConvCode};

#[derive(Clone, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn of(v: &[u32]) -> Bits {
        let mut b = Bits(vec![0; v.len().div_ceil(64)]);
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                b.0[i / 64] |= 1 << (i % 64);
            }
        }
        b
    }

    fn union(&self, other: &Bits) -> Bits {
        if self.0.is_empty() {
            return other.clone();
        }
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct SubspaceSearch<'a> {
    field: &'a Field,
    q: u32,
    /// Image of each coordinate unit vector.
    gens: &'a [Vec<u32>],
    width: usize,
    r: usize,
    global: AtomicUsize,
}

type Leaf<'a> = dyn Fn(&[Vec<u32>]) -> bool + Sync + 'a;

impl SubspaceSearch<'_> {
    fn image(&self, coords: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.width];
        for (g, &a) in self.gens.iter().zip(coords) {
            linalg::axpy(self.field, &mut out, a, g);
        }
        out
    }

    fn run(&self, pivot_cap: usize, leaf: &Leaf<'_>) -> Option<(usize, Vec<Vec<u32>>)> {
        let m = self.gens.len();
        let sets: Vec<Vec<usize>> = combinations(m, self.r)
            .into_iter()
            .filter(|p| p[0] < pivot_cap)
            .collect();
        let found: Vec<Option<(usize, Vec<Vec<u32>>)>> = sets
            .par_iter()
            .map(|pivots| {
                let mut best = None;
                let mut rows = Vec::with_capacity(self.r);
                self.dfs(pivots, &mut rows, &Bits::default(), leaf, &mut best);
                best
            })
            .collect();
        found
            .into_iter()
            .flatten()
            .fold(None, |acc, cand| match acc {
                Some(a) if a.0 <= cand.0 => Some(a),
                _ => Some(cand),
            })
    }

    fn dfs(
        &self,
        pivots: &[usize],
        rows: &mut Vec<Vec<u32>>,
        covered: &Bits,
        leaf: &Leaf<'_>,
        best: &mut Option<(usize, Vec<Vec<u32>>)>,
    ) {
        let i = rows.len();
        if i == self.r {
            let size = covered.count();
            if best.as_ref().is_none_or(|(b, _)| size < *b) && leaf(rows) {
                *best = Some((size, rows.clone()));
                self.global.fetch_min(size, Ordering::Relaxed);
            }
            return;
        }
        let m = self.gens.len();
        let free: Vec<usize> = (pivots[i] + 1..m).filter(|c| !pivots.contains(c)).collect();
        let mut row = vec![0u32; m];
        row[pivots[i]] = 1;
        let total = (self.q as u64).pow(free.len() as u32);
        for assignment in 0..total {
            let mut a = assignment;
            for &c in free.iter().rev() {
                row[c] = (a % self.q as u64) as u32;
                a /= self.q as u64;
            }
            let next = covered.union(&Bits::of(&self.image(&row)));
            let size = next.count();
            if best.as_ref().is_some_and(|(b, _)| size >= *b)
                || size > self.global.load(Ordering::Relaxed)
            {
                continue;
            }
            rows.push(row.clone());
            self.dfs(pivots, rows, &next, leaf, best);
            rows.pop();
        }
    }
}

fn search(
    field: &Field,
    gens: &[Vec<u32>],
    width: usize,
    r: usize,
    pivot_cap: usize,
    leaf: &Leaf<'_>,
    budget: &Budget,
) -> Result<Option<(usize, Vec<Vec<u32>>)>> {
    let count = gaussian(field.order() as f64, gens.len(), r);
    if count > budget.work as f64 {
        return Err(Error::budget(
            "subspace enumeration",
            format!("{count:.0}"),
            budget.work,
        ));
    }
    let s = SubspaceSearch {
        field,
        q: field.order(),
        gens,
        width,
        r,
        global: AtomicUsize::new(usize::MAX),
    };
    Ok(s.run(pivot_cap, leaf))
}

/// `d_r(C(j))`: minimum support of an `r`-dimensional space of windowed words
/// spanned by messages of which at least one has a nonzero first block.
pub fn unrestricted_gcd(
    code: &ConvCode,
    r: usize,
    j: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    let m = code.k() * (j + 1);
    if r == 0 || r > m {
        return Err(Error::OrderOutOfRange { r, max: m });
    }
    let g = SlidingMatrix::new(code, j, Variant::Plain);
    let gens = g.matrix().to_rows();
    let (value, coords) = search(
        code.field(),
        &gens,
        g.cols(),
        r,
        code.k(),
        &|_| true,
        budget,
    )?
    .ok_or_else(|| Error::Internal("no subspace enumerated".into()))?;
    let res = DistanceResult {
        value,
        exact: Exactness::Proven,
        j_used: Some(j),
        certificate: Certificate::Messages(coords),
    };
    checked(code, res, false)
}

/// Generalized Hamming weight `d_r^H` of a block code.
pub fn ghw(block: &BlockCode, r: usize, budget: &Budget) -> Result<DistanceResult> {
    if r == 0 || r > block.dim() {
        return Err(Error::OrderOutOfRange {
            r,
            max: block.dim(),
        });
    }
    let field = block.field();
    let (value, coords) = search(
        field,
        block.basis(),
        block.n(),
        r,
        usize::MAX,
        &|_| true,
        budget,
    )?
    .ok_or_else(|| Error::Internal("no subspace enumerated".into()))?;
    let vectors: Vec<Vec<u32>> = coords
        .iter()
        .map(|c| {
            let mut out = vec![0; block.n()];
            for (g, &a) in block.basis().iter().zip(c) {
                linalg::axpy(field, &mut out, a, g);
            }
            out
        })
        .collect();
    if !check_block(block, &vectors) {
        return Err(Error::Internal(
            "weight certificate left the block code".into(),
        ));
    }
    Ok(DistanceResult {
        value,
        exact: Exactness::Proven,
        j_used: None,
        certificate: Certificate::Vectors(vectors),
    })
}

/// `r`-th generalized weight restricted to codewords of degree at most
/// `degree_bound`; an upper bound for the unrestricted invariant.
pub fn generalized_weight(
    code: &ConvCode,
    r: usize,
    degree_bound: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    bounds::check_order(code, r)?;
    let field = code.field();
    let n = code.n();
    let width = n * (degree_bound + 1);
    // Codewords of degree ≤ D are exactly Σ p_i c_i with deg p_i ≤ D − deg c_i.
    let gens: Vec<Vec<u32>> = code
        .basis()
        .iter()
        .zip(code.row_degrees())
        .filter(|(_, &d)| d <= degree_bound)
        .flat_map(|(row, &d)| {
            (0..=degree_bound - d).map(move |e| row.shift(e).flatten(degree_bound))
        })
        .collect();
    if gens.len() < r {
        return Err(Error::NoFeasibleTuple {
            r,
            bound: degree_bound,
        });
    }
    let words = |coords: &[Vec<u32>]| -> Vec<PolyVector> {
        coords
            .iter()
            .map(|c| {
                let mut flat = vec![0; width];
                for (g, &a) in gens.iter().zip(c) {
                    linalg::axpy(field, &mut flat, a, g);
                }
                PolyVector::from_slices(&flat, n)
            })
            .collect()
    };
    let leaf = |coords: &[Vec<u32>]| poly_rank(field, &words(coords)) == r;
    let (value, coords) = search(field, &gens, width, r, usize::MAX, &leaf, budget)?.ok_or(
        Error::NoFeasibleTuple {
            r,
            bound: degree_bound,
        },
    )?;
    let res = DistanceResult {
        value,
        exact: Exactness::UpperBound,
        j_used: None,
        certificate: Certificate::Codewords(words(&coords)),
    };
    let res = checked(code, res, false)?;
    if let Certificate::Codewords(ws) = &res.certificate {
        if ws.iter().any(|w| !code.contains(w)) || poly_rank(field, ws) != r {
            return Err(Error::Internal(
                "generalized weight certificate is invalid".into(),
            ));
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u32, rows: Vec<Vec<Vec<u32>>>) -> ConvCode {
        ConvCode::from_coeffs(Field::prime(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn full_space_weights() {
        let f = Field::prime(3).unwrap();
        let b = BlockCode::full(&f, 4);
        for r in 1..=4 {
            assert_eq!(ghw(&b, r, &Budget::default()).unwrap().value, r);
        }
        assert!(ghw(&b, 5, &Budget::default()).is_err());
    }

    #[test]
    fn constant_block_code() {
        let f = Field::prime(2).unwrap();
        let b = BlockCode::new(&f, 5, vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 1]]);
        assert_eq!(ghw(&b, 1, &Budget::default()).unwrap().value, 2);
        assert_eq!(ghw(&b, 2, &Budget::default()).unwrap().value, 5);
    }

    #[test]
    fn generalized_weights_small() {
        let budget = Budget::default();
        let cross = code(
            2,
            vec![vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1]]],
        );
        assert_eq!(generalized_weight(&cross, 1, 2, &budget).unwrap().value, 2);
        let c = code(
            2,
            vec![
                vec![vec![1], vec![0, 1], vec![]],
                vec![vec![], vec![1], vec![1]],
            ],
        );
        assert_eq!(generalized_weight(&c, 2, 2, &budget).unwrap().value, 3);
    }

    #[test]
    fn unrestricted_single_row_codes() {
        let budget = Budget::default();
        let c1 = code(2, vec![vec![vec![1, 1], vec![1], vec![]]]);
        let c2 = code(2, vec![vec![vec![1], vec![1], vec![0, 1]]]);
        assert_eq!(unrestricted_gcd(&c1, 2, 1, &budget).unwrap().value, 4);
        assert_eq!(unrestricted_gcd(&c2, 2, 1, &budget).unwrap().value, 5);
        assert!(unrestricted_gcd(&c1, 3, 1, &budget).is_err());
    }
}
