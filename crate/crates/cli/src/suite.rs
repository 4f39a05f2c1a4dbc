//! Randomized property suite over small codes.
//!
//! Codes are drawn from a seeded generator: q ∈ {2, 3}, n ≤ 4, k ≤ 2 and
//! row degrees at most 2. Each property is evaluated on every code where the
//! computations involved fit the budget; refusals are counted, never
//! treated as passes.

// Tables are indexed by (r, j) throughout; index loops read best.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use convinv_core::distances::{
    self, column_distance, evaluate_messages, free_distance, gen_column_distance,
    gen_column_distance_profile, generalized_weight, ghw, limit_via_primed, stabilization_bound,
    unrestricted_gcd, Budget, Certificate, DistanceProfile, Exactness, LimitMode,
};
use convinv_core::sliding::Variant;
use convinv_core::{oracle, ConvCode, Error, Field, PolyVector, Polynomial};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Largest window examined per code.
const MAX_J: usize = 4;

/// One random code with at most `k = 2`, `n = 4`, row degrees ≤ 2.
pub fn random_code(rng: &mut ChaCha8Rng) -> ConvCode {
    loop {
        let p: u32 = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=n.min(2));
        let rows: Vec<Vec<Vec<u32>>> = (0..k)
            .map(|_| {
                let d = rng.gen_range(0..=2);
                (0..n)
                    .map(|_| (0..=d).map(|_| rng.gen_range(0..p)).collect())
                    .collect()
            })
            .collect();
        if let Ok(code) = ConvCode::from_coeffs(Field::prime(p).expect("prime"), rows) {
            return code;
        }
    }
}

pub fn corpus(seed: u64, count: usize) -> Vec<ConvCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_code(&mut rng)).collect()
}

/// Budget used by the suite: the oracle is capped so that brute force stays
/// quick; instances above the cap are skipped and counted.
pub fn suite_budget() -> Budget {
    Budget {
        oracle: 300_000,
        work: 5_000_000,
        ..Budget::default()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub code: usize,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub codes: usize,
    pub passed: BTreeMap<String, usize>,
    pub skipped: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, code: usize, property: &str, holds: bool, detail: impl FnOnce() -> String) {
        if holds {
            *self.passed.entry(property.into()).or_default() += 1;
        } else {
            self.failures.push(Failure {
                code,
                property: property.into(),
                detail: detail(),
            });
        }
    }

    fn skip(&mut self, property: &str) {
        *self.skipped.entry(property.into()).or_default() += 1;
    }

    /// Unwraps a computation: budget refusals are skips, other errors fail.
    fn value<T>(&mut self, code: usize, property: &str, res: convinv_core::Result<T>) -> Option<T> {
        match res {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded { .. }) => {
                self.skip(property);
                None
            }
            Err(e) => {
                self.failures.push(Failure {
                    code,
                    property: property.into(),
                    detail: e.to_string(),
                });
                None
            }
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.codes += other.codes;
        for (k, v) in other.passed {
            *self.passed.entry(k).or_default() += v;
        }
        for (k, v) in other.skipped {
            *self.skipped.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
    }
}

/// Windowed values `d_j^r` for `j ≤ MAX_J`, from the branch-and-bound search.
fn windows(
    report: &mut SuiteReport,
    idx: usize,
    code: &ConvCode,
    r: usize,
    b: &Budget,
) -> Vec<Option<usize>> {
    (0..=MAX_J)
        .map(|j| {
            let res = report.value(idx, "window search", gen_column_distance(code, r, j, b))?;
            let Certificate::Messages(m) = &res.certificate else {
                report.check(idx, "certificate re-evaluation", false, || {
                    "unexpected certificate".into()
                });
                return Some(res.value);
            };
            let again = evaluate_messages(code, m, Variant::Plain, true);
            report.check(
                idx,
                "certificate re-evaluation",
                again.as_ref() == Ok(&res.value),
                || format!("r={r} j={j}: claimed {}, re-evaluated {again:?}", res.value),
            );
            Some(res.value)
        })
        .collect()
}

fn profile_value(profile: &DistanceProfile, j: usize) -> usize {
    profile
        .values
        .get(&j)
        .copied()
        .unwrap_or(profile.limit.value)
}

/// Properties of one code.
pub fn check_code(idx: usize, code: &ConvCode, b: &Budget) -> SuiteReport {
    let mut rep = SuiteReport {
        codes: 1,
        ..SuiteReport::default()
    };
    let (n, k, d1) = (code.n(), code.k(), code.delta1());
    let noncat = code.is_noncatastrophic();

    let mut win: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    let mut profiles: Vec<Option<DistanceProfile>> = vec![None];
    for r in 1..=k {
        win.push(windows(&mut rep, idx, code, r, b));
        let profile = rep.value(idx, "state graph", gen_column_distance_profile(code, r, b));
        profiles.push(profile);
    }

    for r in 1..=k {
        let ws = &win[r];
        // Windowed search and state graph agree.
        if let Some(p) = &profiles[r] {
            rep.check(idx, "monotone profile", p.is_monotone(), || {
                format!("r={r}: {:?}", p.values)
            });
            rep.check(
                idx,
                "limit is proven",
                p.limit.exact == Exactness::Proven,
                || format!("r={r}"),
            );
            for (j, w) in ws.iter().enumerate() {
                if let Some(w) = w {
                    let t = profile_value(p, j);
                    rep.check(idx, "window search = state graph", *w == t, || {
                        format!("r={r} j={j}: search {w}, state graph {t}")
                    });
                }
            }
            let limit = p.limit.value;
            // Values never exceed the limit, which never exceeds n(δ₁+1).
            rep.check(
                idx,
                "bounded by limit and n(memory+1)",
                limit <= n * (d1 + 1),
                || format!("r={r}: limit {limit}"),
            );
            for w in ws.iter().flatten() {
                rep.check(idx, "bounded by limit and n(memory+1)", *w <= limit, || {
                    format!("r={r}: window {w} above limit {limit}")
                });
            }
        }
        // Non-decreasing in j.
        for j in 0..MAX_J {
            if let (Some(a), Some(c)) = (ws[j], ws[j + 1]) {
                rep.check(idx, "non-decreasing in j", a <= c, || {
                    format!("r={r} j={j}: {a} > {c}")
                });
            }
        }
        // Noncatastrophic upper bound.
        if noncat {
            for (j, w) in ws.iter().enumerate() {
                if let Some(w) = w {
                    let bound = (j + 1) * (n - k) + r;
                    rep.check(idx, "noncatastrophic window bound", *w <= bound, || {
                        format!("r={r} j={j}: {w} > {bound}")
                    });
                }
            }
        }
        // Increasing in r.
        if r < k {
            for j in 0..=MAX_J {
                if let (Some(a), Some(c)) = (win[r][j], win[r + 1][j]) {
                    let holds = if noncat { a < c } else { a <= c };
                    rep.check(idx, "increasing in r", holds, || {
                        format!("r={r} j={j}: {a} vs {c}")
                    });
                }
            }
            if let (Some(a), Some(c)) = (&profiles[r], &profiles[r + 1]) {
                rep.check(
                    idx,
                    "limits strictly increasing in r",
                    a.limit.value < c.limit.value,
                    || format!("r={r}: {} vs {}", a.limit.value, c.limit.value),
                );
            }
        }
    }

    // r = 1 coincides with the column distances.
    for j in 0..=MAX_J {
        if let Some(w) = win[1][j] {
            if let Some(c) = rep.value(idx, "column distance", column_distance(code, j, b)) {
                rep.check(idx, "r = 1 is the column distance", c.value == w, || {
                    format!("j={j}: {} vs {w}", c.value)
                });
            }
        }
    }
    // Some column distance is positive.
    if let Some(p) = &profiles[1] {
        rep.check(
            idx,
            "some column distance is positive",
            p.limit.value > 0,
            || "d^1 = 0".into(),
        );
    }

    // Subcodes: each basis row alone, and a random constant combination of
    // the basis. Polynomial multiples such as x*c are not delay free and
    // can have smaller column distances, so they are not tried.
    let field = code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
    let mut coeffs: Vec<Polynomial> = (0..k)
        .map(|_| Polynomial::constant(rng.gen_range(0..field.order())))
        .collect();
    if coeffs.iter().all(Polynomial::is_zero) {
        coeffs[0] = Polynomial::one();
    }
    let mut subcodes: Vec<Vec<PolyVector>> =
        code.basis().iter().map(|row| vec![row.clone()]).collect();
    subcodes.push(vec![PolyVector::combine(field, &coeffs, code.basis(), n)]);
    for sub_rows in subcodes {
        let Some(sub) = rep.value(idx, "subcode", code.subcode(sub_rows)) else {
            continue;
        };
        for r in 1..=sub.k() {
            for j in 0..=MAX_J {
                let Some(w) = win[r][j] else { continue };
                if let Some(s) = rep.value(idx, "subcode", gen_column_distance(&sub, r, j, b)) {
                    rep.check(idx, "subcode bound", w <= s.value, || {
                        format!("r={r} j={j}: {w} > {}", s.value)
                    });
                }
            }
        }
    }

    // First window against generalized Hamming weights of C[0].
    // Only meaningful when C[0] has full dimension: otherwise a message
    // head in the kernel of G_0 gives d_0^r = 0.
    let block = code.evaluate_at_zero();
    let heads = if block.dim() == k { k } else { 0 };
    for r in 1..=heads {
        if let (Some(w), Some(h)) = (
            win[r][0],
            rep.value(idx, "hamming weights", ghw(&block, r, b)),
        ) {
            rep.check(idx, "first window = Hamming weight", w == h.value, || {
                format!("r={r}: {w} vs {}", h.value)
            });
            if code.delta() == 0 {
                for j in 0..=MAX_J {
                    if let Some(v) = win[r][j] {
                        rep.check(idx, "memoryless codes are constant", v == h.value, || {
                            format!("r={r} j={j}: {v} vs {}", h.value)
                        });
                    }
                }
                if let Some(p) = &profiles[r] {
                    rep.check(
                        idx,
                        "memoryless codes are constant",
                        p.limit.value == h.value,
                        || format!("r={r}: limit {}", p.limit.value),
                    );
                }
            }
        }
    }

    // Unrestricted ≤ restricted.
    for r in 1..=k {
        for j in 0..=MAX_J {
            let Some(w) = win[r][j] else { continue };
            if let Some(u) = rep.value(idx, "unrestricted", unrestricted_gcd(code, r, j, b)) {
                rep.check(idx, "unrestricted ≤ restricted", u.value <= w, || {
                    format!("r={r} j={j}: {} > {w}", u.value)
                });
            }
        }
    }

    // Unrestricted values strictly increase in r on noncatastrophic codes.
    if noncat {
        for j in 0..=2.min(MAX_J) {
            let mut prev: Option<usize> = None;
            for r in 1..=k * (j + 1) {
                let Some(u) = rep.value(idx, "unrestricted", unrestricted_gcd(code, r, j, b))
                else {
                    break;
                };
                if let Some(p) = prev {
                    rep.check(idx, "unrestricted increasing in r", u.value > p, || {
                        format!("j={j} r={r}: {} after {p}", u.value)
                    });
                }
                prev = Some(u.value);
            }
        }
    }

    // Primed formula on noncatastrophic codes.
    if noncat {
        for r in 1..=k {
            let Some(p) = &profiles[r] else { continue };
            let j_max = p.stabilization_index().unwrap_or(0) + 2 * d1 + 2;
            if let Some(v) = rep.value(idx, "primed formula", limit_via_primed(code, r, j_max, b)) {
                rep.check(
                    idx,
                    "primed formula = limit",
                    v.value == p.limit.value,
                    || format!("r={r}: primed {} vs limit {}", v.value, p.limit.value),
                );
            }
        }
        if let Some(free) = rep.value(
            idx,
            "free distance",
            free_distance(code, LimitMode::Proven, b),
        ) {
            if let Some(w) = rep.value(
                idx,
                "generalized weight",
                generalized_weight(code, 1, d1 + 2, b),
            ) {
                rep.check(
                    idx,
                    "free distance ≤ low-degree codewords",
                    free.value <= w.value,
                    || format!("{} > {}", free.value, w.value),
                );
            }
        }
    }

    check_oracle(&mut rep, idx, code, &win, b);
    rep
}

fn check_oracle(
    rep: &mut SuiteReport,
    idx: usize,
    code: &ConvCode,
    win: &[Vec<Option<usize>>],
    b: &Budget,
) {
    let k = code.k();
    for r in 1..=k {
        for j in 0..=MAX_J {
            let Some(w) = win[r][j] else { continue };
            if let Some(o) = rep.value(
                idx,
                "oracle",
                oracle::naive_gen_column_distance(code, r, j, b),
            ) {
                rep.check(idx, "oracle = search", o == w, || {
                    format!("d_{j}^{r}: oracle {o}, search {w}")
                });
            }
        }
    }
    for j in 0..=2 {
        for r in 1..=(k * (j + 1)).min(3) {
            let fast = match unrestricted_gcd(code, r, j, b) {
                Ok(v) => v.value,
                Err(_) => continue,
            };
            if let Some(o) = rep.value(idx, "oracle", oracle::naive_unrestricted(code, r, j, b)) {
                rep.check(idx, "oracle = search", o == fast, || {
                    format!("d_{r}(C({j})): oracle {o}, search {fast}")
                });
            }
        }
    }
    let block = code.evaluate_at_zero();
    for r in 1..=block.dim() {
        if let (Ok(h), Some(o)) = (
            ghw(&block, r, b),
            rep.value(idx, "oracle", oracle::naive_ghw(&block, r, b)),
        ) {
            rep.check(idx, "oracle = search", o == h.value, || {
                format!("d_{r}^H: oracle {o}, search {}", h.value)
            });
        }
    }
    for r in 1..=k {
        for degree in code.delta1()..=code.delta1() + 1 {
            let fast = generalized_weight(code, r, degree, b);
            let slow = oracle::naive_genweight(code, r, degree, b);
            match (fast, slow) {
                (Ok(f), Ok(s)) => rep.check(idx, "oracle = search", f.value == s, || {
                    format!("d_{r} (degree ≤ {degree}): oracle {s}, search {}", f.value)
                }),
                (Err(Error::NoFeasibleTuple { .. }), Err(Error::NoFeasibleTuple { .. })) => {}
                (_, Err(Error::BudgetExceeded { .. })) | (Err(Error::BudgetExceeded { .. }), _) => {
                    rep.skip("oracle")
                }
                (f, s) => rep.check(idx, "oracle = search", false, || {
                    format!("d_{r}: {f:?} vs {s:?}")
                }),
            }
        }
    }
}

/// Per-code properties over a corpus.
/// Property checks, stabilization bounds and map properties together.
pub fn run_all(codes: &[ConvCode], b: &Budget) -> SuiteReport {
    let mut rep = run_properties(codes, b);
    let mut rest = run_stabilization(codes, b);
    rest.merge(run_map_properties(codes, b));
    rest.codes = 0;
    rep.merge(rest);
    rep
}

pub fn run_properties(codes: &[ConvCode], b: &Budget) -> SuiteReport {
    let mut total = SuiteReport::default();
    for (idx, code) in codes.iter().enumerate() {
        total.merge(check_code(idx, code, b));
    }
    total
}

/// Observed stabilization indices respect both bounds.
pub fn run_stabilization(codes: &[ConvCode], b: &Budget) -> SuiteReport {
    let mut rep = SuiteReport {
        codes: codes.len(),
        ..SuiteReport::default()
    };
    for (idx, code) in codes.iter().enumerate() {
        for r in 1..=code.k() {
            let Some(bound) = rep.value(idx, "stabilization bound", stabilization_bound(code, r))
            else {
                continue;
            };
            if bound.sharp > BigUint::from(b.windows) {
                rep.skip("stabilization");
                continue;
            }
            let Some(p) = rep.value(
                idx,
                "stabilization",
                distances::gen_column_distance_profile(code, r, b),
            ) else {
                continue;
            };
            let Some(jbar) = p.stabilization_index() else {
                rep.check(idx, "stabilization index exists", false, || {
                    format!("r={r}")
                });
                continue;
            };
            let jbar = BigUint::from(jbar);
            rep.check(idx, "crude stabilization bound", jbar < bound.crude, || {
                format!("r={r}: index {jbar} vs {}", bound.crude)
            });
            rep.check(idx, "sharp stabilization bound", jbar < bound.sharp, || {
                format!("r={r}: index {jbar} vs {}", bound.sharp)
            });
            rep.check(
                idx,
                "sharp bound ≤ crude bound",
                bound.sharp <= bound.crude,
                || format!("r={r}"),
            );
        }
    }
    rep
}

/// Map invariants on the corpus: identity and coordinate-permutation maps
/// are equivalences, and equivalent codes share every windowed distance.
pub fn run_map_properties(codes: &[ConvCode], b: &Budget) -> SuiteReport {
    use convinv_core::maps::{check_equivalence, check_isometry, check_j_equivalence, CodeMap};
    let mut rep = SuiteReport {
        codes: codes.len(),
        ..SuiteReport::default()
    };
    for (idx, code) in codes.iter().enumerate() {
        let n = code.n();
        // Reverse the coordinates and scale the first by a nonzero constant.
        let scale = code.field().order() - 1;
        let images: Vec<PolyVector> = code
            .basis()
            .iter()
            .map(|row| {
                let mut entries: Vec<_> = row.entries().iter().rev().cloned().collect();
                entries[0] = entries[0].scale(code.field(), scale);
                PolyVector::new(entries)
            })
            .collect();
        let Some(target) = rep.value(
            idx,
            "permuted code",
            ConvCode::new(
                code.field().clone(),
                convinv_core::PolyMatrix::new(images.clone()).expect("same shape"),
            ),
        ) else {
            continue;
        };
        let Some(map) = rep.value(
            idx,
            "permuted code",
            CodeMap::from_basis_images(code.clone(), target.clone(), images),
        ) else {
            continue;
        };
        if let Some(v) = rep.value(idx, "map checks", check_equivalence(&map, b)) {
            rep.check(idx, "monomial map is an equivalence", v.holds, || {
                format!("n={n}")
            });
        }
        if let Some(v) = rep.value(idx, "map checks", check_isometry(&map, b)) {
            rep.check(idx, "equivalence is an isometry", v.holds, || {
                format!("n={n}")
            });
        }
        for j in 0..=2 {
            if let Some(v) = rep.value(idx, "map checks", check_j_equivalence(&map, j, b)) {
                rep.check(idx, "equivalence holds at every window", v.holds, || {
                    format!("j={j}")
                });
            }
            for r in 1..=code.k() {
                let a = gen_column_distance(code, r, j, b);
                let c = gen_column_distance(&target, r, j, b);
                if let (Ok(a), Ok(c)) = (a, c) {
                    rep.check(
                        idx,
                        "equivalent codes share window distances",
                        a.value == c.value,
                        || format!("r={r} j={j}: {} vs {}", a.value, c.value),
                    );
                }
            }
        }
    }
    rep
}
