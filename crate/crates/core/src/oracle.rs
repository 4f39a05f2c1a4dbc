//! Brute-force reference implementations for tiny instances.
//!
//! Everything here enumerates raw tuples of vectors with no canonical forms
//! and no pruning, and shares no search code with [`crate::distances`].
//! Each entry point refuses instances whose enumeration exceeds the oracle
//! budget.

use crate::distances::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::{PolyVector, Polynomial};
use crate::sliding::{SlidingMatrix, Variant};
use crate::structure::smith;
use crate::structure::{BlockCode, ConvCode};

fn guard(q: u32, exponent: usize, budget: &Budget) -> Result<()> {
    let size = (q as f64).powi(exponent as i32);
    if size > budget.oracle as f64 {
        return Err(Error::budget(
            "oracle enumeration",
            format!("{size:.0}"),
            budget.oracle,
        ));
    }
    Ok(())
}

/// Every vector of `F_q^m`, in base-q order.
fn all_vectors(q: u32, m: usize) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(m as u32);
    (0..total)
        .map(|mut u| {
            let mut v = vec![0; m];
            for slot in v.iter_mut() {
                *slot = (u % q as usize) as u32;
                u /= q as usize;
            }
            v
        })
        .collect()
}

fn combine(field: &Field, coeffs: &[u32], rows: &[Vec<u32>], width: usize) -> Vec<u32> {
    let mut out = vec![0; width];
    for (&a, row) in coeffs.iter().zip(rows) {
        for (o, &x) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(a, x));
        }
    }
    out
}

fn support_of(words: &[&Vec<u32>]) -> usize {
    let width = words.first().map_or(0, |w| w.len());
    (0..width)
        .filter(|&c| words.iter().any(|w| w[c] != 0))
        .count()
}

/// Calls `f` with every `r`-tuple of indices into `0..count`.
fn for_each_tuple(count: usize, r: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0; r];
    loop {
        f(&idx);
        let mut i = 0;
        loop {
            if i == r {
                return;
            }
            idx[i] += 1;
            if idx[i] < count {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn images(code: &ConvCode, j: usize) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let g = SlidingMatrix::new(code, j, Variant::Plain);
    let messages = all_vectors(code.field().order(), code.k() * (j + 1));
    let words = messages
        .iter()
        .map(|m| g.apply(code.field(), m).expect("length matches"))
        .collect();
    (messages, words)
}

/// `d_j^r` by enumerating all `r`-tuples of block messages.
pub fn naive_gen_column_distance(
    code: &ConvCode,
    r: usize,
    j: usize,
    budget: &Budget,
) -> Result<usize> {
    if r == 0 || r > code.k() {
        return Err(Error::OrderOutOfRange { r, max: code.k() });
    }
    let field = code.field();
    let k = code.k();
    guard(field.order(), r * k * (j + 1), budget)?;
    let (messages, words) = images(code, j);
    let mut best = usize::MAX;
    for_each_tuple(messages.len(), r, |idx| {
        let heads: Vec<Vec<u32>> = idx.iter().map(|&i| messages[i][..k].to_vec()).collect();
        if linalg::rank(field, &heads) < r {
            return;
        }
        let ws: Vec<&Vec<u32>> = idx.iter().map(|&i| &words[i]).collect();
        best = best.min(support_of(&ws));
    });
    Ok(best)
}

pub fn naive_column_distance(code: &ConvCode, j: usize, budget: &Budget) -> Result<usize> {
    naive_gen_column_distance(code, 1, j, budget)
}

/// `d_r(C(j))` by enumerating all `r`-tuples of block messages.
pub fn naive_unrestricted(code: &ConvCode, r: usize, j: usize, budget: &Budget) -> Result<usize> {
    let field = code.field();
    let k = code.k();
    let m = k * (j + 1);
    if r == 0 || r > m {
        return Err(Error::OrderOutOfRange { r, max: m });
    }
    guard(field.order(), r * m, budget)?;
    let (messages, words) = images(code, j);
    let mut best = usize::MAX;
    for_each_tuple(messages.len(), r, |idx| {
        if idx
            .iter()
            .all(|&i| messages[i][..k].iter().all(|&x| x == 0))
        {
            return;
        }
        let ws: Vec<&Vec<u32>> = idx.iter().map(|&i| &words[i]).collect();
        let size = support_of(&ws);
        if size >= best {
            return;
        }
        let vs: Vec<Vec<u32>> = idx.iter().map(|&i| messages[i].clone()).collect();
        if linalg::rank(field, &vs) == r {
            best = size;
        }
    });
    Ok(best)
}

/// `d_r^H` by enumerating all `r`-tuples of codewords.
pub fn naive_ghw(block: &BlockCode, r: usize, budget: &Budget) -> Result<usize> {
    let field = block.field();
    if r == 0 || r > block.dim() {
        return Err(Error::OrderOutOfRange {
            r,
            max: block.dim(),
        });
    }
    guard(field.order(), r * block.dim(), budget)?;
    let words: Vec<Vec<u32>> = all_vectors(field.order(), block.dim())
        .iter()
        .map(|c| combine(field, c, block.basis(), block.n()))
        .collect();
    let mut best = usize::MAX;
    for_each_tuple(words.len(), r, |idx| {
        let ws: Vec<&Vec<u32>> = idx.iter().map(|&i| &words[i]).collect();
        let size = support_of(&ws);
        if size < best {
            let vs: Vec<Vec<u32>> = ws.iter().map(|w| (*w).clone()).collect();
            if linalg::rank(field, &vs) == r {
                best = size;
            }
        }
    });
    Ok(best)
}

/// `r`-th generalized weight over codewords of degree at most `degree_bound`,
/// by enumerating all `r`-tuples of such codewords. Polynomial rank is
/// decided by the nonvanishing of some maximal minor.
pub fn naive_genweight(
    code: &ConvCode,
    r: usize,
    degree_bound: usize,
    budget: &Budget,
) -> Result<usize> {
    if r == 0 || r > code.k() {
        return Err(Error::OrderOutOfRange { r, max: code.k() });
    }
    let field = code.field();
    let q = field.order();
    // Message coefficient slots: (row, degree) with degree ≤ D − deg row.
    let slots: Vec<(usize, usize)> = code
        .row_degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= degree_bound)
        .flat_map(|(i, &d)| (0..=degree_bound - d).map(move |e| (i, e)))
        .collect();
    guard(q, r * slots.len(), budget)?;
    let words: Vec<PolyVector> = all_vectors(q, slots.len())
        .iter()
        .map(|coeffs| {
            let mut msg = vec![Vec::new(); code.k()];
            for (&(i, e), &a) in slots.iter().zip(coeffs) {
                if msg[i].len() <= e {
                    msg[i].resize(e + 1, 0);
                }
                msg[i][e] = a;
            }
            let msg: Vec<Polynomial> = msg.into_iter().map(Polynomial::from_coeffs).collect();
            code.encode(&msg)
        })
        .collect();
    let flat: Vec<Vec<u32>> = words.iter().map(|w| w.flatten(degree_bound)).collect();
    let mut best = usize::MAX;
    for_each_tuple(words.len(), r, |idx| {
        let ws: Vec<&Vec<u32>> = idx.iter().map(|&i| &flat[i]).collect();
        let size = support_of(&ws);
        if size >= best {
            return;
        }
        let rows: Vec<PolyVector> = idx.iter().map(|&i| words[i].clone()).collect();
        if smith::maximal_minors(field, &rows).1.is_some() {
            best = size;
        }
    });
    if best == usize::MAX {
        return Err(Error::NoFeasibleTuple {
            r,
            bound: degree_bound,
        });
    }
    Ok(best)
}

/// Windowed minimum through primed sliding matrices for windows `0..=j_max`.
pub fn naive_primed_minimum(
    code: &ConvCode,
    r: usize,
    j_max: usize,
    budget: &Budget,
) -> Result<usize> {
    let field = code.field();
    let k = code.k();
    guard(field.order(), r * k * (j_max + 1), budget)?;
    let mut best = usize::MAX;
    for j in 0..=j_max {
        let g = SlidingMatrix::new(code, j, Variant::Primed);
        let messages = all_vectors(field.order(), k * (j + 1));
        let words: Vec<Vec<u32>> = messages
            .iter()
            .map(|m| g.apply(field, m).unwrap())
            .collect();
        for_each_tuple(messages.len(), r, |idx| {
            let heads: Vec<Vec<u32>> = idx.iter().map(|&i| messages[i][..k].to_vec()).collect();
            if linalg::rank(field, &heads) < r {
                return;
            }
            let ws: Vec<&Vec<u32>> = idx.iter().map(|&i| &words[i]).collect();
            best = best.min(support_of(&ws));
        });
    }
    Ok(best)
}
