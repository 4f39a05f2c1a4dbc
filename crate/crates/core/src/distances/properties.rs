//! Optimality predicates built on the distance computations.

use super::trellis::column_distances;
use super::{free_distance, Budget, LimitMode};
use crate::error::{Error, Result};
use crate::structure::ConvCode;

/// Generalized Singleton bound `(n−k)(⌊δ/k⌋+1) + δ + 1`.
pub fn singleton_bound(code: &ConvCode) -> usize {
    let (n, k, delta) = (code.n(), code.k(), code.delta());
    (n - k) * (delta / k + 1) + delta + 1
}

fn require_noncatastrophic(code: &ConvCode) -> Result<()> {
    if code.is_noncatastrophic() {
        Ok(())
    } else {
        Err(Error::RequiresNoncatastrophic)
    }
}

/// Free distance meets the generalized Singleton bound.
pub fn is_mds(code: &ConvCode, budget: &Budget) -> Result<bool> {
    require_noncatastrophic(code)?;
    Ok(free_distance(code, LimitMode::Proven, budget)?.value == singleton_bound(code))
}

/// Column distances meet `(n−k)(j+1) + 1` for `0 ≤ j ≤ ⌊δ/k⌋ + ⌊δ/(n−k)⌋`.
/// When `n = k` the second term is taken to be 0.
pub fn is_mdp(code: &ConvCode, budget: &Budget) -> Result<bool> {
    require_noncatastrophic(code)?;
    let (n, k, delta) = (code.n(), code.k(), code.delta());
    let last = delta / k + if n > k { delta / (n - k) } else { 0 };
    let values = column_distances(code, last, budget)?;
    Ok(values
        .iter()
        .enumerate()
        .all(|(j, d)| d.value == (n - k) * (j + 1) + 1))
}

/// The column distance at `M = ⌊δ/k⌋ + ⌈δ/(n−k)⌉` already meets the
/// generalized Singleton bound (`M = ⌊δ/k⌋` when `n = k`).
pub fn is_strongly_mds(code: &ConvCode, budget: &Budget) -> Result<bool> {
    require_noncatastrophic(code)?;
    let (n, k, delta) = (code.n(), code.k(), code.delta());
    let m = delta / k + if n > k { delta.div_ceil(n - k) } else { 0 };
    let values = column_distances(code, m, budget)?;
    Ok(values[m].value == singleton_bound(code))
}
