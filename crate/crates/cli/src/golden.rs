//! Published example values, checked exactly.
//!
//! Each check names the code and invariant it exercises; `--filter` matches
//! a substring of the check id.

use std::fmt::Display;

use convinv_core::distances::{
    gen_column_distance, gen_column_distance_limit, generalized_weight, is_mds, primed_minimum,
    unrestricted_gcd, Budget, LimitMode,
};
use convinv_core::maps::{
    self, check_equivalence, check_isometry, check_j_equivalence, check_strong_isometry, CodeMap,
};
use convinv_core::{oracle, BlockCode, ConvCode, Field, PolyVector, Result};

/// One compared value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl Line {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

pub struct Check {
    pub id: &'static str,
    pub about: &'static str,
    /// Acceptance criterion this check belongs to, if any.
    pub criterion: Option<u8>,
    run: fn(&Budget) -> Vec<Line>,
}

impl Check {
    pub fn run(&self, budget: &Budget) -> Vec<Line> {
        (self.run)(budget)
    }
}

fn line<T: Display>(label: impl Into<String>, expected: impl Display, actual: Result<T>) -> Line {
    Line {
        label: label.into(),
        expected: expected.to_string(),
        actual: match actual {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        },
    }
}

/// Golden codes are fixed literals; a construction failure is a bug.
fn code(p: u32, rows: Vec<Vec<Vec<u32>>>) -> ConvCode {
    ConvCode::from_coeffs(Field::prime(p).expect("prime field"), rows)
        .expect("golden code is valid")
}

fn single_map(p: u32, domain: Vec<Vec<u32>>, image: Vec<Vec<u32>>) -> CodeMap {
    let d = code(p, vec![domain]);
    let c = code(p, vec![image.clone()]);
    CodeMap::new(d, c, vec![PolyVector::from_coeffs(image)]).expect("golden map is valid")
}

fn gcd_value(c: &ConvCode, r: usize, j: usize, b: &Budget) -> Result<usize> {
    gen_column_distance(c, r, j, b).map(|d| d.value)
}

fn limit_value(c: &ConvCode, r: usize, b: &Budget) -> Result<usize> {
    gen_column_distance_limit(c, r, LimitMode::Proven, b).map(|d| d.value)
}

fn unrestricted_value(c: &ConvCode, r: usize, j: usize, b: &Budget) -> Result<usize> {
    unrestricted_gcd(c, r, j, b).map(|d| d.value)
}

pub fn diagonal_catastrophic() -> ConvCode {
    code(2, vec![vec![vec![1], vec![]], vec![vec![], vec![0, 1]]])
}

pub fn constant_pair() -> (ConvCode, ConvCode) {
    (
        code(
            2,
            vec![
                vec![vec![1], vec![1], vec![], vec![], vec![]],
                vec![vec![], vec![], vec![1], vec![1], vec![1]],
            ],
        ),
        code(
            2,
            vec![
                vec![vec![1], vec![1], vec![], vec![], vec![]],
                vec![vec![], vec![0, 1], vec![1], vec![1], vec![1]],
            ],
        ),
    )
}

pub fn cross_catastrophic() -> ConvCode {
    code(
        2,
        vec![vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1]]],
    )
}

pub fn mds_pair() -> (ConvCode, ConvCode) {
    (
        code(
            3,
            vec![
                vec![vec![1], vec![1], vec![2]],
                vec![vec![0, 2], vec![1, 1], vec![]],
            ],
        ),
        code(
            3,
            vec![
                vec![vec![1], vec![1], vec![2]],
                vec![vec![2], vec![1, 1], vec![]],
            ],
        ),
    )
}

fn run_diagonal(b: &Budget) -> Vec<Line> {
    let c = diagonal_catastrophic();
    let mut out = vec![
        line("d_0^1", 0, gcd_value(&c, 1, 0, b)),
        line("d_0^2", 1, gcd_value(&c, 2, 0, b)),
    ];
    for j in 1..=4 {
        out.push(line(format!("d_{j}^1"), 1, gcd_value(&c, 1, j, b)));
        out.push(line(format!("d_{j}^2"), 2, gcd_value(&c, 2, j, b)));
    }
    out.push(line("d^1", 1, limit_value(&c, 1, b)));
    out.push(line("d^2", 2, limit_value(&c, 2, b)));
    out
}

fn run_constant(b: &Budget) -> Vec<Line> {
    let (c1, c2) = constant_pair();
    let mut out = Vec::new();
    for (name, c) in [("C1", &c1), ("C2", &c2)] {
        for j in 0..=3 {
            for r in 1..=2 * j + 2 {
                let expected = if r <= j + 1 {
                    2 * r
                } else {
                    2 * (j + 1) + 3 * (r - j - 1)
                };
                out.push(line(
                    format!("{name} d_{r}(C({j}))"),
                    expected,
                    unrestricted_value(c, r, j, b),
                ));
            }
        }
    }
    out.push(line("C1 d_1^2", 5, gcd_value(&c1, 2, 1, b)));
    out.push(line("C2 d_1^2", 6, gcd_value(&c2, 2, 1, b)));
    out.push(line("C1 d^2", 5, limit_value(&c1, 2, b)));
    out.push(line("C2 d^2", 6, limit_value(&c2, 2, b)));
    out
}

fn run_single_row(b: &Budget) -> Vec<Line> {
    let c1 = code(2, vec![vec![vec![1, 1], vec![1], vec![]]]);
    let c2 = code(2, vec![vec![vec![1], vec![1], vec![0, 1]]]);
    let mut out = Vec::new();
    for (name, c) in [("C1", &c1), ("C2", &c2)] {
        out.push(line(format!("{name} d_0^1"), 2, gcd_value(c, 1, 0, b)));
        for j in 1..=4 {
            out.push(line(format!("{name} d_{j}^1"), 3, gcd_value(c, 1, j, b)));
        }
    }
    out.push(line("C1 d_2(C(1))", 4, unrestricted_value(&c1, 2, 1, b)));
    out.push(line("C2 d_2(C(1))", 5, unrestricted_value(&c2, 2, 1, b)));
    out
}

fn run_unrestricted_trend(b: &Budget) -> Vec<Line> {
    let (c1, _) = constant_pair();
    let c2 = code(
        2,
        vec![
            vec![vec![1], vec![], vec![]],
            vec![vec![], vec![0, 1], vec![1]],
        ],
    );
    vec![
        line("C1 d_2(C(0))", 5, unrestricted_value(&c1, 2, 0, b)),
        line("C1 d_2(C(1))", 4, unrestricted_value(&c1, 2, 1, b)),
        line("C1 d_2(C(2))", 4, unrestricted_value(&c1, 2, 2, b)),
        line("C1 d_4(C(0))", 4, unrestricted_value(&c1, 4, 0, b)),
        line("C2 d_4(C(1))", 5, unrestricted_value(&c2, 4, 1, b)),
        line(
            "oracle C1 d_4(C(0))",
            4,
            oracle::naive_unrestricted(&c1, 4, 0, b),
        ),
    ]
}

fn run_scalar_diagonal(b: &Budget) -> Vec<Line> {
    let c = code(2, vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 1]]]);
    let mut out = vec![
        line("d_0^1", 0, gcd_value(&c, 1, 0, b)),
        line("d_0^2", 0, gcd_value(&c, 2, 0, b)),
    ];
    for j in 1..=4 {
        out.push(line(format!("d_{j}^1"), 1, gcd_value(&c, 1, j, b)));
        out.push(line(format!("d_{j}^2"), 2, gcd_value(&c, 2, j, b)));
    }
    out
}

fn run_wide(b: &Budget) -> Vec<Line> {
    let n = 4u32;
    let ones: Vec<Vec<u32>> = (0..n).map(|_| vec![1]).collect();
    let ramp: Vec<Vec<u32>> = (1..=n).map(|i| vec![0, i]).collect();
    let c = code(5, vec![ones, ramp]);
    vec![line(
        "d_1^2 over GF(5), n = 4",
        2 * n - 1,
        gcd_value(&c, 2, 1, b),
    )]
}

fn run_cross(b: &Budget) -> Vec<Line> {
    let c = cross_catastrophic();
    let mut out = Vec::new();
    for j in 0..=4 {
        for r in 1..=2 {
            out.push(line(format!("d_{j}^{r}"), r, gcd_value(&c, r, j, b)));
        }
    }
    out.push(line("d^1", 1, limit_value(&c, 1, b)));
    out.push(line("d^2", 2, limit_value(&c, 2, b)));
    out.push(line(
        "d_1 (degree ≤ 2)",
        2,
        generalized_weight(&c, 1, 2, b).map(|d| d.value),
    ));
    let primed = primed_minimum(&c, 1, 4, b).map(|d| d.value);
    let above = match (&primed, limit_value(&c, 1, b)) {
        (Ok(p), Ok(l)) => Ok(*p > l),
        (Err(e), _) => Err(e.clone()),
        (_, Err(e)) => Err(e),
    };
    out.push(line("primed minimum, r = 1", 2, primed));
    out.push(line("primed minimum exceeds d^1", true, above));
    out
}

fn run_weight_gap(b: &Budget) -> Vec<Line> {
    let c = code(
        2,
        vec![
            vec![vec![1], vec![0, 1], vec![]],
            vec![vec![], vec![1], vec![1]],
        ],
    );
    vec![
        line("noncatastrophic", true, Ok(c.is_noncatastrophic())),
        line(
            "d_2 (degree ≤ 2)",
            3,
            generalized_weight(&c, 2, 2, b).map(|d| d.value),
        ),
        line("d^2", 4, limit_value(&c, 2, b)),
    ]
}

fn run_mds_reverse(b: &Budget) -> Vec<Line> {
    let (c, rev) = mds_pair();
    let ours = c.reverse();
    vec![
        line("d^2(C)", 5, limit_value(&c, 2, b)),
        line("d^2(rev C)", 4, limit_value(&rev, 2, b)),
        line("C is MDS", true, is_mds(&c, b)),
        line("rev C is MDS", true, is_mds(&rev, b)),
        line(
            "reversal of the row-reduced basis",
            true,
            ours.map(|r| r.same_module(&rev)),
        ),
    ]
}

fn run_primed_realization(b: &Budget) -> Vec<Line> {
    let c = code(
        2,
        vec![
            vec![vec![1], vec![], vec![1]],
            vec![vec![], vec![1], vec![]],
        ],
    );
    let alt = code(
        2,
        vec![
            vec![vec![1], vec![0, 1], vec![1]],
            vec![vec![], vec![1], vec![]],
        ],
    );
    vec![
        line("d_1^2", 3, gcd_value(&c, 2, 1, b)),
        line(
            "d_1^2 from another generator matrix",
            3,
            gcd_value(&alt, 2, 1, b),
        ),
    ]
}

fn run_oracle(b: &Budget) -> Vec<Line> {
    let f2 = Field::prime(2).expect("prime field");
    let xx = code(2, vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 1]]]);
    let gap = code(
        2,
        vec![
            vec![vec![1], vec![0, 1], vec![]],
            vec![vec![], vec![1], vec![1]],
        ],
    );
    vec![
        line(
            "diagonal d_1^2",
            2,
            oracle::naive_gen_column_distance(&diagonal_catastrophic(), 2, 1, b),
        ),
        line(
            "scalar diagonal d_0^1",
            0,
            oracle::naive_gen_column_distance(&xx, 1, 0, b),
        ),
        line(
            "full F_2^3 d_2^H",
            2,
            oracle::naive_ghw(&BlockCode::full(&f2, 3), 2, b),
        ),
        line(
            "d_2 (degree ≤ 2)",
            3,
            oracle::naive_genweight(&gap, 2, 2, b),
        ),
    ]
}

fn holds(v: Result<maps::MapVerdict>) -> Result<bool> {
    v.map(|v| v.holds)
}

fn run_map_isometry(b: &Budget) -> Vec<Line> {
    let m = single_map(
        2,
        vec![vec![1], vec![0, 1], vec![1]],
        vec![vec![1], vec![0, 1], vec![0, 1]],
    );
    vec![
        line("isometry", true, holds(check_isometry(&m, b))),
        line("0-equivalence", false, holds(check_j_equivalence(&m, 0, b))),
    ]
}

fn run_map_three(b: &Budget) -> Vec<Line> {
    let m = single_map(
        2,
        vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1]],
        vec![vec![1], vec![0, 0, 1], vec![0, 0, 0, 1, 1]],
    );
    let inverse = maps::inverse(&m);
    vec![
        line("3-equivalence", true, holds(check_j_equivalence(&m, 3, b))),
        line("isometry", false, holds(check_isometry(&m, b))),
        line("equivalence", false, holds(check_equivalence(&m, b))),
        line(
            "inverse is a 3-equivalence",
            true,
            inverse.and_then(|inv| holds(check_j_equivalence(&inv, 3, b))),
        ),
    ]
}

fn run_map_shifted(b: &Budget) -> Vec<Line> {
    let m = single_map(
        2,
        vec![vec![1], vec![0, 0, 1]],
        vec![vec![0, 1], vec![0, 0, 1]],
    );
    let shifts = check_isometry(&m, b).map(|v| format!("{:?}", v.witness.map(|w| w.shifts)));
    vec![
        line("isometry", true, holds(check_isometry(&m, b))),
        line("isometry shifts", format!("{:?}", Some(vec![1, 0])), shifts),
        line("0-equivalence", false, holds(check_j_equivalence(&m, 0, b))),
        line("equivalence", false, holds(check_equivalence(&m, b))),
        line(
            "strong isometry",
            true,
            check_strong_isometry(&m, 3, b).map(|v| v.holds),
        ),
    ]
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "diagonal-catastrophic",
            about: "<(1,0),(0,x)>: windowed and limit generalized column distances",
            criterion: Some(1),
            run: run_diagonal,
        },
        Check {
            id: "constant-codes",
            about: "two rank-2 codes of length 5: unrestricted distances, d_1^2 and d^2",
            criterion: Some(2),
            run: run_constant,
        },
        Check {
            id: "single-row-codes",
            about: "<(1+x,1,0)> and <(1,1,x)>: column and unrestricted distances",
            criterion: Some(3),
            run: run_single_row,
        },
        Check {
            id: "unrestricted-trend",
            about: "unrestricted distances may fall or rise with the window",
            criterion: Some(3),
            run: run_unrestricted_trend,
        },
        Check {
            id: "scalar-diagonal",
            about: "<(x,0),(0,x)>: distances not strictly increasing in r",
            criterion: Some(4),
            run: run_scalar_diagonal,
        },
        Check {
            id: "wide-catastrophic",
            about: "<(1,...,1),(x,2x,...,nx)> over GF(5): d_1^2 = 2n-1",
            criterion: Some(4),
            run: run_wide,
        },
        Check {
            id: "cross-catastrophic",
            about: "<(1,x),(x,1)>: constant distances, generalized weight, primed minimum",
            criterion: Some(5),
            run: run_cross,
        },
        Check {
            id: "weight-gap",
            about: "<(1,x,0),(0,1,1)>: generalized weight below the limit",
            criterion: Some(6),
            run: run_weight_gap,
        },
        Check {
            id: "mds-reverse",
            about: "an MDS code over GF(3) and its reverse: different d^2",
            criterion: Some(6),
            run: run_mds_reverse,
        },
        Check {
            id: "map-isometry",
            about: "<(1,x,1)> -> <(1,x,x)>: isometry, not a 0-equivalence",
            criterion: Some(7),
            run: run_map_isometry,
        },
        Check {
            id: "map-three-equivalence",
            about: "<(1,x^2,x^3)> -> <(1,x^2,x^3+x^4)>: 3-equivalence, not an isometry",
            criterion: Some(7),
            run: run_map_three,
        },
        Check {
            id: "map-shifted",
            about: "<(1,x^2)> -> <(x,x^2)>: strong isometry with shifts, not a 0-equivalence",
            criterion: Some(7),
            run: run_map_shifted,
        },
        Check {
            id: "generator-independence",
            about: "d_1^2 is the same for two generator matrices of one code",
            criterion: None,
            run: run_primed_realization,
        },
        Check {
            id: "oracle",
            about: "brute-force values on small examples",
            criterion: None,
            run: run_oracle,
        },
    ]
}

pub struct CheckResult {
    pub id: &'static str,
    pub about: &'static str,
    pub lines: Vec<Line>,
}

impl CheckResult {
    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed()).count()
    }
}

pub fn run_golden(filter: Option<&str>, budget: &Budget) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.id.contains(f)))
        .map(|c| CheckResult {
            id: c.id,
            about: c.about,
            lines: c.run(budget),
        })
        .collect()
}

/// Checks belonging to one acceptance criterion.
pub fn run_criterion(criterion: u8, budget: &Budget) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|c| c.criterion == Some(criterion))
        .map(|c| CheckResult {
            id: c.id,
            about: c.about,
            lines: c.run(budget),
        })
        .collect()
}
