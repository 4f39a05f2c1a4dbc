//! Distance invariants: column distances, generalized column distances and
//! their limits, unrestricted generalized column distances, generalized
//! Hamming weights, generalized weights and the free distance.
//!
//! Fixed-window values come from a branch-and-bound search over canonical
//! message bases. Limits are computed on a finite state graph whose states
//! are the row spaces of the last `δ₁` message blocks: a minimal cost path
//! that ends in a region with a zero-cost cycle realizes the limit exactly.

mod bounds;
mod column;
mod properties;
mod subspace;
mod trellis;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::poly::PolyVector;
use crate::sliding::{SlidingMatrix, Variant};
use crate::structure::{BlockCode, ConvCode};

pub use bounds::{stabilization_bound, StabilizationBound};
pub use column::gen_column_distance;
pub use properties::{is_mdp, is_mds, is_strongly_mds, singleton_bound};
pub use subspace::{generalized_weight, ghw, unrestricted_gcd};
pub use trellis::{
    column_distance, column_distance_profile, gen_column_distance_profile, limit_via_primed,
    primed_minimum,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Proven,
    HeuristicPlateau,
    UpperBound,
}

/// Witness for a distance value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Block messages `(v^0, …, v^j)` with respect to the row-reduced basis,
    /// evaluated through the plain sliding matrix.
    Messages(Vec<Vec<u32>>),
    /// Block messages evaluated through the primed sliding matrix.
    PrimedMessages(Vec<Vec<u32>>),
    /// Vectors of a block code.
    Vectors(Vec<Vec<u32>>),
    /// Codewords of a convolutional code.
    Codewords(Vec<PolyVector>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: usize,
    pub exact: Exactness,
    pub j_used: Option<usize>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub r: usize,
    pub values: BTreeMap<usize, usize>,
    pub limit: DistanceResult,
}

impl DistanceProfile {
    /// First window at which the limit is attained.
    pub fn stabilization_index(&self) -> Option<usize> {
        self.values
            .iter()
            .find(|&(_, &v)| v == self.limit.value)
            .map(|(&j, _)| j)
    }

    pub fn is_monotone(&self) -> bool {
        self.values
            .values()
            .zip(self.values.values().skip(1))
            .all(|(a, b)| a <= b)
            && self.values.values().all(|&v| v <= self.limit.value)
    }
}

/// Search budgets; every refusal reports the size it would have needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest stabilization bound accepted in proven mode.
    pub windows: u64,
    /// Largest state graph (states × inputs) or search space explored.
    pub work: u64,
    /// Largest brute-force enumeration the oracle accepts.
    pub oracle: u64,
    /// Largest number of candidate nodes in a map witness search.
    pub candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            windows: 100_000,
            work: 50_000_000,
            oracle: 100_000_000,
            candidates: 10_000_000,
        }
    }
}

impl Budget {
    /// Parse an override such as `250000` (window budget) or
    /// `windows=10,work=1000,oracle=5,candidates=7`.
    pub fn with_override(mut self, spec: &str) -> Result<Budget> {
        let bad = || Error::Invalid(format!("cannot parse budget override {spec:?}"));
        let spec = spec.trim();
        if let Ok(v) = spec.parse::<u64>() {
            self.windows = v;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "windows" => self.windows = value,
                "work" => self.work = value,
                "oracle" => self.oracle = value,
                "candidates" => self.candidates = value,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitMode {
    Proven,
    /// Stop once the value has been constant on `window` consecutive
    /// windows; `None` uses `max(δ₁k, 2) + 1`.
    Plateau {
        window: Option<usize>,
    },
}

/// `d^r`, the limit of the `(r, j)`-generalized column distances.
pub fn gen_column_distance_limit(
    code: &ConvCode,
    r: usize,
    mode: LimitMode,
    budget: &Budget,
) -> Result<DistanceResult> {
    bounds::check_order(code, r)?;
    let ceiling = code.n() * (code.delta1() + 1);
    match mode {
        LimitMode::Proven => {
            let bound = stabilization_bound(code, r)?;
            if bound.sharp > num_bigint::BigUint::from(budget.windows) {
                return Err(Error::budget(
                    "proven-mode stabilization bound",
                    &bound.sharp,
                    budget.windows,
                ));
            }
            Ok(gen_column_distance_profile(code, r, budget)?.limit)
        }
        LimitMode::Plateau { window } => {
            let w = window
                .unwrap_or((code.delta1() * code.k()).max(2) + 1)
                .max(1);
            let mut history: Vec<usize> = Vec::new();
            let mut j = 0;
            loop {
                let res = gen_column_distance(code, r, j, budget)?;
                history.push(res.value);
                let stable = history.len() >= w
                    && history[history.len() - w..].iter().all(|&v| v == res.value);
                if res.value >= ceiling || stable {
                    let exact = if res.value >= ceiling {
                        Exactness::Proven
                    } else {
                        Exactness::HeuristicPlateau
                    };
                    return Ok(DistanceResult { exact, ..res });
                }
                j += 1;
            }
        }
    }
}

/// Free distance, computed as `d^1`. For noncatastrophic codes it is
/// cross-checked against minimum-weight codewords of growing degree.
pub fn free_distance(code: &ConvCode, mode: LimitMode, budget: &Budget) -> Result<DistanceResult> {
    let res = gen_column_distance_limit(code, 1, mode, budget)?;
    if code.is_noncatastrophic() && res.exact == Exactness::Proven {
        let mut d = code.delta1();
        loop {
            let dim: usize = code.row_degrees().iter().map(|&di| d + 1 - di).sum();
            let size = (code.field().order() as f64).powi(dim as i32);
            if size > budget.work as f64 {
                break;
            }
            let w = generalized_weight(code, 1, d, budget)?;
            if w.value < res.value {
                return Err(Error::Internal(format!(
                    "codeword of weight {} below the free distance {}",
                    w.value, res.value
                )));
            }
            if w.value == res.value {
                break;
            }
            d += 1;
        }
    }
    Ok(res)
}

/// Number of coordinates on which at least one of the vectors is nonzero.
pub fn support_size(vectors: &[Vec<u32>]) -> usize {
    let width = vectors.first().map_or(0, Vec::len);
    (0..width)
        .filter(|&c| vectors.iter().any(|v| v[c] != 0))
        .count()
}

fn block_rank(field: &Field, messages: &[Vec<u32>], k: usize) -> usize {
    let blocks: Vec<Vec<u32>> = messages.iter().map(|v| v[..k].to_vec()).collect();
    linalg::rank(field, &blocks)
}

/// Recompute the value a certificate stands for. `r` and `j` identify the
/// invariant; `require_independent_blocks` selects the generalized column
/// distance constraint (independent `v^0` blocks) over the unrestricted one.
pub fn evaluate_messages(
    code: &ConvCode,
    messages: &[Vec<u32>],
    variant: Variant,
    require_independent_blocks: bool,
) -> Result<usize> {
    let k = code.k();
    let Some(first) = messages.first() else {
        return Err(Error::Invalid("empty certificate".into()));
    };
    if first.len() % k != 0 || first.is_empty() || messages.iter().any(|m| m.len() != first.len()) {
        return Err(Error::Invalid(
            "certificate messages have inconsistent lengths".into(),
        ));
    }
    let j = first.len() / k - 1;
    let field = code.field();
    let valid = if require_independent_blocks {
        block_rank(field, messages, k) == messages.len()
    } else {
        linalg::rank(field, messages) == messages.len()
            && messages.iter().any(|m| !linalg::is_zero(&m[..k]))
    };
    if !valid {
        return Err(Error::Invalid(
            "certificate violates the rank constraint".into(),
        ));
    }
    let g = SlidingMatrix::new(code, j, variant);
    let words = messages
        .iter()
        .map(|m| g.apply(field, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(support_size(&words))
}

pub(crate) fn checked(
    code: &ConvCode,
    res: DistanceResult,
    require_independent: bool,
) -> Result<DistanceResult> {
    let value = match &res.certificate {
        Certificate::Messages(m) => {
            evaluate_messages(code, m, Variant::Plain, require_independent)?
        }
        Certificate::PrimedMessages(m) => {
            evaluate_messages(code, m, Variant::Primed, require_independent)?
        }
        Certificate::Codewords(words) => {
            let sup = crate::poly::support_union(words)?;
            sup.len()
        }
        Certificate::Vectors(v) => support_size(v),
    };
    if value != res.value {
        return Err(Error::Internal(format!(
            "certificate evaluates to {value}, result claims {}",
            res.value
        )));
    }
    Ok(res)
}

pub(crate) fn check_block(block: &BlockCode, vectors: &[Vec<u32>]) -> bool {
    vectors.iter().all(|v| block.contains(v))
        && linalg::rank(block.field(), vectors) == vectors.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_overrides() {
        let b = Budget::default().with_override("12").unwrap();
        assert_eq!(b.windows, 12);
        let b = Budget::default()
            .with_override("work=5, candidates=9")
            .unwrap();
        assert_eq!((b.work, b.candidates), (5, 9));
        assert!(Budget::default().with_override("nonsense").is_err());
    }

    #[test]
    fn support_counts_columns() {
        assert_eq!(support_size(&[vec![1, 0, 0], vec![0, 0, 2]]), 2);
        assert_eq!(support_size(&[]), 0);
    }
}
