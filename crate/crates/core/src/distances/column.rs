//! Branch-and-bound search for `d_j^r` over canonical message bases.
//!
//! A message basis is an `r × k(j+1)` matrix whose first block has rank `r`;
//! its canonical form under the left `GL_r` action has the first block in
//! RREF and arbitrary later blocks. Blocks are chosen in time order and the
//! support of each output slice is final once its block is fixed, so the
//! running sum is a lower bound for every completion.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{bounds, checked, Budget, Certificate, DistanceResult, Exactness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::structure::smith::combinations;
use crate::structure::ConvCode;

struct Search<'a> {
    field: &'a Field,
    q: usize,
    r: usize,
    k: usize,
    n: usize,
    j: usize,
    /// `prod[i][u] = u · G_i` for every `u ∈ F_q^k` (lexicographic index).
    prod: Vec<Vec<Vec<u32>>>,
    global: &'a AtomicUsize,
}

/// Message blocks stored as vector indices: `blocks[t][row]`.
type Blocks = Vec<Vec<usize>>;

impl Search<'_> {
    #[allow(clippy::needless_range_loop)]
    fn slice_cost(&self, blocks: &Blocks, t: usize) -> usize {
        let mut covered = vec![false; self.n];
        for row in 0..self.r {
            let mut out = vec![0u32; self.n];
            for (i, g) in self.prod.iter().enumerate().take(t + 1) {
                let u = blocks[t - i][row];
                if u != 0 {
                    linalg::axpy(self.field, &mut out, 1, &g[u]);
                }
            }
            for (c, &x) in covered.iter_mut().zip(&out) {
                *c |= x != 0;
            }
        }
        covered.iter().filter(|&&c| c).count()
    }

    /// Depth-first completion of `blocks` from time `t`. Keeps the first
    /// minimum in enumeration order.
    fn dfs(
        &self,
        blocks: &mut Blocks,
        t: usize,
        partial: usize,
        best: &mut Option<(usize, Blocks)>,
    ) {
        if t > self.j {
            if best.as_ref().is_none_or(|(b, _)| partial < *b) {
                *best = Some((partial, blocks.clone()));
                self.global.fetch_min(partial, Ordering::Relaxed);
            }
            return;
        }
        let choices = self.q.pow((self.k * self.r) as u32);
        blocks.push(vec![0; self.r]);
        for c in 0..choices {
            blocks[t] = split(c, self.q.pow(self.k as u32), self.r);
            let cost = partial + self.slice_cost(blocks, t);
            if best.as_ref().is_some_and(|(b, _)| cost >= *b)
                || cost > self.global.load(Ordering::Relaxed)
            {
                continue;
            }
            self.dfs(blocks, t + 1, cost, best);
        }
        blocks.pop();
    }
}

/// Split `c` into `r` base-`qk` digits, most significant first.
fn split(mut c: usize, qk: usize, r: usize) -> Vec<usize> {
    let mut out = vec![0; r];
    for slot in out.iter_mut().rev() {
        *slot = c % qk;
        c /= qk;
    }
    out
}

/// All `r × k` rank-`r` matrices in RREF, rows as lexicographic vector
/// indices; ordered by pivot set, then free entries.
fn rref_blocks(q: usize, k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for pivots in combinations(k, r) {
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..k)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        for assignment in 0..q.pow(free.len() as u32) {
            let mut m = vec![vec![0usize; k]; r];
            for (i, &p) in pivots.iter().enumerate() {
                m[i][p] = 1;
            }
            let mut a = assignment;
            for &(i, c) in free.iter().rev() {
                m[i][c] = a % q;
                a /= q;
            }
            out.push(
                m.iter()
                    .map(|row| row.iter().fold(0, |acc, &x| acc * q + x))
                    .collect(),
            );
        }
    }
    out
}

fn vector(index: usize, q: usize, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    let mut u = index;
    for slot in out.iter_mut().rev() {
        *slot = (u % q) as u32;
        u /= q;
    }
    out
}

/// `d_j^r`: minimum support of `r` windowed words whose first message blocks
/// are independent. The certificate is the first optimal canonical basis in
/// enumeration order, independent of the number of worker threads.
pub fn gen_column_distance(
    code: &ConvCode,
    r: usize,
    j: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    bounds::check_order(code, r)?;
    let field = code.field();
    let (q, k, n) = (field.order() as usize, code.k(), code.n());
    let space = (q as f64).powi((k * r * j) as i32) * gaussian(q as f64, k, r);
    if space > budget.work as f64 {
        return Err(Error::budget(
            "window search space",
            format!("{space:.0}"),
            budget.work,
        ));
    }
    let blocks = code.coefficient_matrices();
    let prod: Vec<Vec<Vec<u32>>> = blocks
        .iter()
        .take(j + 1)
        .map(|g| {
            (0..q.pow(k as u32))
                .map(|u| g.left_mul(field, &vector(u, q, k)))
                .collect()
        })
        .collect();

    let heads = rref_blocks(q, k, r);
    let global = AtomicUsize::new(usize::MAX);
    let search = Search {
        field,
        q,
        r,
        k,
        n,
        j,
        prod,
        global: &global,
    };
    // The first canonical basis padded with zero blocks is the initial incumbent.
    let mut seed = vec![heads[0].clone()];
    seed.extend((1..=j).map(|_| vec![0; r]));
    let seed_cost: usize = (0..=j).map(|t| search.slice_cost(&seed, t)).sum();
    global.store(seed_cost, Ordering::Relaxed);

    // Tasks: first block, and second block when the window has one.
    let second = if j >= 1 { q.pow((k * r) as u32) } else { 1 };
    let tasks: Vec<(usize, usize)> = (0..heads.len())
        .flat_map(|h| (0..second).map(move |s| (h, s)))
        .collect();
    let found: Vec<Option<(usize, Blocks)>> = tasks
        .par_iter()
        .map(|&(h, s)| {
            let mut blocks: Blocks = vec![heads[h].clone()];
            let mut cost = search.slice_cost(&blocks, 0);
            if j >= 1 {
                blocks.push(split(s, q.pow(k as u32), r));
                cost += search.slice_cost(&blocks, 1);
            }
            if cost > global.load(Ordering::Relaxed) {
                return None;
            }
            let mut best = None;
            let t = blocks.len();
            search.dfs(&mut blocks, t, cost, &mut best);
            best
        })
        .collect();

    let (value, blocks) = found
        .into_iter()
        .flatten()
        .fold(None::<(usize, Blocks)>, |acc, cand| match acc {
            Some(a) if a.0 <= cand.0 => Some(a),
            _ => Some(cand),
        })
        .ok_or_else(|| Error::Internal("window search found no candidate".into()))?;

    let messages: Vec<Vec<u32>> = (0..r)
        .map(|row| blocks.iter().flat_map(|b| vector(b[row], q, k)).collect())
        .collect();
    let res = DistanceResult {
        value,
        exact: Exactness::Proven,
        j_used: Some(j),
        certificate: Certificate::Messages(messages),
    };
    checked(code, res, true)
}

/// Number of `r`-dimensional subspaces of `F_q^k`.
pub(crate) fn gaussian(q: f64, k: usize, r: usize) -> f64 {
    (0..r)
        .map(|i| (q.powi((k - i) as i32) - 1.0) / (q.powi((r - i) as i32) - 1.0))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u32, rows: Vec<Vec<Vec<u32>>>) -> ConvCode {
        ConvCode::from_coeffs(Field::prime(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn rref_block_enumeration() {
        // 2-dim subspaces of F_2^3: 7 of them.
        assert_eq!(rref_blocks(2, 3, 2).len(), 7);
        assert_eq!(rref_blocks(3, 2, 1).len(), 4);
        assert_eq!(rref_blocks(2, 2, 2), vec![vec![2, 1]]);
    }

    #[test]
    fn diagonal_catastrophic_windows() {
        let c = code(2, vec![vec![vec![1], vec![]], vec![vec![], vec![0, 1]]]);
        let b = Budget::default();
        let v = |r, j| gen_column_distance(&c, r, j, &b).unwrap().value;
        assert_eq!(
            (v(1, 0), v(2, 0), v(1, 1), v(2, 1), v(1, 3), v(2, 3)),
            (0, 1, 1, 2, 1, 2)
        );
        assert!(matches!(
            gen_column_distance(&c, 3, 0, &b),
            Err(Error::OrderOutOfRange { r: 3, max: 2 })
        ));
    }

    #[test]
    fn constant_codes() {
        let c1 = code(
            2,
            vec![
                vec![vec![1], vec![1], vec![], vec![], vec![]],
                vec![vec![], vec![], vec![1], vec![1], vec![1]],
            ],
        );
        let c2 = code(
            2,
            vec![
                vec![vec![1], vec![1], vec![], vec![], vec![]],
                vec![vec![], vec![0, 1], vec![1], vec![1], vec![1]],
            ],
        );
        let b = Budget::default();
        assert_eq!(gen_column_distance(&c1, 2, 1, &b).unwrap().value, 5);
        assert_eq!(gen_column_distance(&c2, 2, 1, &b).unwrap().value, 6);
    }
}
