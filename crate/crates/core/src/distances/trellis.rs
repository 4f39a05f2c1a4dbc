//! Finite state graph for windowed support minimization.
//!
//! The output slice at time `t` of `r` message rows depends only on the
//! message blocks at times `t − δ₁, …, t`, and left multiplication of the whole
//! message by an invertible `r × r` matrix changes neither supports nor the
//! rank of the first block. A state is therefore the row space of the last
//! `δ₁` blocks, stored as its padded RREF. Edges carry the number of nonzero
//! columns of the output slice they produce.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};

use super::{bounds, checked, Budget, Certificate, DistanceProfile, DistanceResult, Exactness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::structure::ConvCode;

const NONE: u32 = u32::MAX;
const INF: u32 = u32::MAX;

pub(crate) struct Trellis {
    field: Field,
    r: usize,
    k: usize,
    n: usize,
    delta1: usize,
    inputs: usize,
    /// Canonical representatives, `r` rows of width `kδ₁` each.
    states: Vec<Vec<Vec<u32>>>,
    /// `edges[s * inputs + u] = (next, cost)`
    edges: Vec<(u32, u16)>,
    /// Edges out of the empty history; `next == NONE` when the input block
    /// has rank below `r`.
    start: Vec<(u32, u16)>,
}

impl Trellis {
    pub(crate) fn new(code: &ConvCode, r: usize, budget: &Budget) -> Result<Trellis> {
        let field = code.field().clone();
        let (k, n, delta1) = (code.k(), code.n(), code.delta1());
        let q = field.order() as usize;
        let width = k * delta1;

        let inputs_f = (q as f64).powi((k * r) as i32);
        let states_f = subspace_count_upper(q as f64, width, r);
        if inputs_f * states_f > budget.work as f64 {
            return Err(Error::budget(
                "state graph size",
                format!("{:.0}", inputs_f * states_f),
                budget.work,
            ));
        }
        let inputs = inputs_f as usize;

        // u · G_i for every u ∈ F_q^k, indexed lexicographically.
        let blocks = code.coefficient_matrices();
        let q_k = q.pow(k as u32);
        let prod: Vec<Vec<Vec<u32>>> = blocks
            .iter()
            .map(|g| {
                (0..q_k)
                    .map(|u| g.left_mul(&field, &digits(u, q, k)))
                    .collect()
            })
            .collect();

        let mut t = Trellis {
            field,
            r,
            k,
            n,
            delta1,
            inputs,
            states: Vec::new(),
            edges: Vec::new(),
            start: Vec::with_capacity(inputs),
        };
        let mut index: HashMap<Vec<Vec<u32>>, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        let zero_state = vec![vec![0; width]; r];

        for u in 0..inputs {
            let input = t.decode(u, q);
            if linalg::rank(&t.field, &input) < r {
                t.start.push((NONE, 0));
                continue;
            }
            let (next, cost) = t.transition(&prod, &zero_state, &input);
            let id = t.intern(next, &mut index, &mut queue);
            t.start.push((id, cost));
        }
        while let Some(s) = queue.pop_front() {
            let state = t.states[s as usize].clone();
            for u in 0..inputs {
                let input = t.decode(u, q);
                let (next, cost) = t.transition(&prod, &state, &input);
                let id = t.intern(next, &mut index, &mut queue);
                t.edges.push((id, cost));
            }
        }
        Ok(t)
    }

    fn intern(
        &mut self,
        state: Vec<Vec<u32>>,
        index: &mut HashMap<Vec<Vec<u32>>, u32>,
        queue: &mut VecDeque<u32>,
    ) -> u32 {
        if let Some(&id) = index.get(&state) {
            return id;
        }
        let id = self.states.len() as u32;
        index.insert(state.clone(), id);
        self.states.push(state);
        queue.push_back(id);
        id
    }

    /// Input `u` as an `r × k` matrix, first entry most significant.
    fn decode(&self, u: usize, q: usize) -> Vec<Vec<u32>> {
        let flat = digits(u, q, self.r * self.k);
        flat.chunks(self.k).map(<[u32]>::to_vec).collect()
    }

    fn transition(
        &self,
        prod: &[Vec<Vec<u32>>],
        state: &[Vec<u32>],
        input: &[Vec<u32>],
    ) -> (Vec<Vec<u32>>, u16) {
        let (k, n, d1) = (self.k, self.n, self.delta1);
        let q = self.field.order() as usize;
        let mut covered = vec![false; n];
        for (srow, urow) in state.iter().zip(input) {
            let mut out = prod[0][index_of(urow, q)].clone();
            for i in 1..=d1 {
                let block = &srow[(d1 - i) * k..(d1 - i + 1) * k];
                linalg::axpy(&self.field, &mut out, 1, &prod[i][index_of(block, q)]);
            }
            for (c, &x) in covered.iter_mut().zip(&out) {
                *c |= x != 0;
            }
        }
        let cost = covered.iter().filter(|&&c| c).count() as u16;
        // Drop the oldest block and append the input.
        let mut next: Vec<Vec<u32>> = if d1 == 0 {
            vec![Vec::new(); state.len()]
        } else {
            state
                .iter()
                .zip(input)
                .map(|(srow, urow)| srow[k..].iter().chain(urow).copied().collect())
                .collect()
        };
        canonicalize(&self.field, &mut next);
        (next, cost)
    }

    pub(crate) fn num_states(&self) -> usize {
        self.states.len()
    }

    fn edge(&self, s: u32, u: usize) -> (u32, u16) {
        self.edges[s as usize * self.inputs + u]
    }

    /// One forward step of the min-plus recursion. Ties keep the first
    /// predecessor in (state, input) order.
    fn step(&self, prev: &[u32]) -> (Vec<u32>, Vec<(u32, u32)>) {
        let mut next = vec![INF; self.states.len()];
        let mut pred = vec![(NONE, NONE); self.states.len()];
        for (s, &f) in prev.iter().enumerate() {
            if f == INF {
                continue;
            }
            for u in 0..self.inputs {
                let (t, c) = self.edge(s as u32, u);
                let v = f + u32::from(c);
                if v < next[t as usize] {
                    next[t as usize] = v;
                    pred[t as usize] = (s as u32, u as u32);
                }
            }
        }
        (next, pred)
    }

    fn initial(&self) -> (Vec<u32>, Vec<(u32, u32)>) {
        let mut f = vec![INF; self.states.len()];
        let mut pred = vec![(NONE, NONE); self.states.len()];
        for (u, &(t, c)) in self.start.iter().enumerate() {
            if t != NONE && u32::from(c) < f[t as usize] {
                f[t as usize] = u32::from(c);
                pred[t as usize] = (NONE, u as u32);
            }
        }
        (f, pred)
    }

    /// Forward values for windows `0..=last`, with predecessors.
    fn forward(&self, last: usize) -> Layers {
        let (f, p) = self.initial();
        let mut layers = Layers {
            values: vec![f],
            preds: vec![p],
        };
        for _ in 0..last {
            let (f, p) = self.step(layers.values.last().unwrap());
            layers.values.push(f);
            layers.preds.push(p);
        }
        layers
    }

    /// Exact limit of the windowed minimum: the cheapest way to reach a state
    /// from which a zero-cost path continues forever.
    fn limit(&self) -> u32 {
        let m = self.states.len();
        let mut alive = vec![true; m];
        loop {
            let mut changed = false;
            for s in 0..m {
                if alive[s]
                    && !(0..self.inputs).any(|u| {
                        let (t, c) = self.edge(s as u32, u);
                        c == 0 && alive[t as usize]
                    })
                {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut dist = vec![INF; m];
        let mut heap = BinaryHeap::new();
        for &(t, c) in &self.start {
            if t != NONE && u32::from(c) < dist[t as usize] {
                dist[t as usize] = u32::from(c);
                heap.push(Reverse((u32::from(c), t)));
            }
        }
        while let Some(Reverse((d, s))) = heap.pop() {
            if d > dist[s as usize] {
                continue;
            }
            for u in 0..self.inputs {
                let (t, c) = self.edge(s, u);
                let nd = d + u32::from(c);
                if nd < dist[t as usize] {
                    dist[t as usize] = nd;
                    heap.push(Reverse((nd, t)));
                }
            }
        }
        (0..m)
            .filter(|&s| alive[s])
            .map(|s| dist[s])
            .min()
            .unwrap_or(INF)
    }

    /// Cost of `δ₁` further zero blocks, which flushes the state.
    fn flush(&self, mut s: u32) -> u32 {
        let mut total = 0;
        for _ in 0..self.delta1 {
            let (t, c) = self.edge(s, 0);
            total += u32::from(c);
            s = t;
        }
        total
    }

    /// Rebuild actual block messages for a path ending in `end` after window `j`.
    fn messages(&self, layers: &Layers, j: usize, end: u32) -> Vec<Vec<u32>> {
        let q = self.field.order() as usize;
        let mut inputs = Vec::with_capacity(j + 1);
        let mut s = end;
        for t in (0..=j).rev() {
            let (prev, u) = layers.preds[t][s as usize];
            inputs.push(u as usize);
            s = prev;
        }
        inputs.reverse();

        let width = self.k * self.delta1;
        let mut rows: Vec<Vec<u32>> = vec![vec![0; width]; self.r];
        for (t, &u) in inputs.iter().enumerate() {
            if t > 0 {
                let len = rows[0].len();
                linalg::rref_on_columns(&self.field, &mut rows, len - width..len);
            }
            for (row, urow) in rows.iter_mut().zip(self.decode(u, q)) {
                row.extend(urow);
            }
        }
        rows.into_iter().map(|row| row[width..].to_vec()).collect()
    }
}

struct Layers {
    values: Vec<Vec<u32>>,
    preds: Vec<Vec<(u32, u32)>>,
}

fn argmin(values: &[u32]) -> (u32, u32) {
    let mut best = (INF, NONE);
    for (s, &v) in values.iter().enumerate() {
        if v < best.0 {
            best = (v, s as u32);
        }
    }
    best
}

fn canonicalize(field: &Field, rows: &mut Vec<Vec<u32>>) {
    let r = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    linalg::rref(field, rows);
    rows.resize(r, vec![0; width]);
}

fn digits(mut u: usize, q: usize, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (u % q) as u32;
        u /= q;
    }
    out
}

fn index_of(v: &[u32], q: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x as usize)
}

/// Upper estimate of the number of subspaces of `F_q^width` of dimension ≤ r.
fn subspace_count_upper(q: f64, width: usize, r: usize) -> f64 {
    let mut total = 0.0;
    for d in 0..=r.min(width) {
        let mut num = 1.0;
        for i in 0..d {
            num *= (q.powi((width - i) as i32) - 1.0) / (q.powi((d - i) as i32) - 1.0);
        }
        total += num;
    }
    total
}

/// The profile `j ↦ d_j^r` up to the first window attaining the limit `d^r`.
pub fn gen_column_distance_profile(
    code: &ConvCode,
    r: usize,
    budget: &Budget,
) -> Result<DistanceProfile> {
    bounds::check_order(code, r)?;
    let t = Trellis::new(code, r, budget)?;
    let limit = t.limit();
    let cap = t.num_states() * (code.n() * (code.delta1() + 1) + 2) + 1;

    let (f, p) = t.initial();
    let mut layers = Layers {
        values: vec![f],
        preds: vec![p],
    };
    let mut values = BTreeMap::new();
    loop {
        let j = layers.values.len() - 1;
        let (best, end) = argmin(layers.values.last().unwrap());
        values.insert(j, best as usize);
        if best >= limit {
            if best > limit {
                return Err(Error::Internal(format!(
                    "window {j} exceeds the limit {limit}"
                )));
            }
            let messages = t.messages(&layers, j, end);
            let res = DistanceResult {
                value: best as usize,
                exact: Exactness::Proven,
                j_used: Some(j),
                certificate: Certificate::Messages(messages),
            };
            let limit = checked(code, res, true)?;
            return Ok(DistanceProfile { r, values, limit });
        }
        if j >= cap {
            return Err(Error::Internal(
                "windowed minimum failed to reach its limit".into(),
            ));
        }
        let (f, p) = t.step(layers.values.last().unwrap());
        layers.values.push(f);
        layers.preds.push(p);
    }
}

pub fn column_distance_profile(code: &ConvCode, budget: &Budget) -> Result<DistanceProfile> {
    gen_column_distance_profile(code, 1, budget)
}

/// `d_j^c`: minimum weight of `v · G_j^c` over messages with `v^0 ≠ 0`.
pub fn column_distance(code: &ConvCode, j: usize, budget: &Budget) -> Result<DistanceResult> {
    column_distances(code, j, budget).map(|mut v| v.pop().unwrap())
}

/// `d_0^c, …, d_j^c` from a single forward pass.
pub(crate) fn column_distances(
    code: &ConvCode,
    j: usize,
    budget: &Budget,
) -> Result<Vec<DistanceResult>> {
    let t = Trellis::new(code, 1, budget)?;
    let layers = t.forward(j);
    (0..=j)
        .map(|i| {
            let (best, end) = argmin(&layers.values[i]);
            let res = DistanceResult {
                value: best as usize,
                exact: Exactness::Proven,
                j_used: Some(i),
                certificate: Certificate::Messages(t.messages(&layers, i, end)),
            };
            checked(code, res, true)
        })
        .collect()
}

/// Minimum support of `r` primed-window words with independent first blocks,
/// over windows `0..=j_max`. Equals `d^r` for noncatastrophic codes and is an
/// upper bound for it in general.
pub fn primed_minimum(
    code: &ConvCode,
    r: usize,
    j_max: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    bounds::check_order(code, r)?;
    let t = Trellis::new(code, r, budget)?;
    let flush: Vec<u32> = (0..t.num_states() as u32).map(|s| t.flush(s)).collect();
    let layers = t.forward(j_max);
    let mut best = (INF, 0, NONE);
    for (j, f) in layers.values.iter().enumerate() {
        for (s, &v) in f.iter().enumerate() {
            if v != INF && v + flush[s] < best.0 {
                best = (v + flush[s], j, s as u32);
            }
        }
    }
    let (value, j, end) = best;
    let res = DistanceResult {
        value: value as usize,
        exact: Exactness::Proven,
        j_used: Some(j),
        certificate: Certificate::PrimedMessages(t.messages(&layers, j, end)),
    };
    checked(code, res, true)
}

/// `d^r` through primed windows; only valid for noncatastrophic codes.
pub fn limit_via_primed(
    code: &ConvCode,
    r: usize,
    j_max: usize,
    budget: &Budget,
) -> Result<DistanceResult> {
    if !code.is_noncatastrophic() {
        return Err(Error::PrimedRequiresNoncatastrophic);
    }
    primed_minimum(code, r, j_max, budget)
}
