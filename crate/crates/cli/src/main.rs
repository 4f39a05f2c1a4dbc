use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use convinv::codefile::{parse_code_file, parse_images_file};
use convinv::golden;
use convinv::report::{elapsed_us, InfoReport, MapReport, Report, SlidingReport, Verdict};
use convinv::suite;
use convinv::CliError;
use convinv_core::distances::{self, Budget, Exactness, LimitMode};
use convinv_core::maps::{self, CodeMap};
use convinv_core::sliding::{SlidingMatrix, Variant};
use convinv_core::{oracle, ConvCode};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "convinv",
    version,
    about = "Exact distance invariants of convolutional codes"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters, row-reduced basis, invariant factors and stabilization bounds
    Info {
        #[arg(long)]
        code: PathBuf,
    },
    /// Sliding generator matrix of a window
    Sliding {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        j: usize,
        /// Keep the extra memory slices
        #[arg(long)]
        primed: bool,
    },
    /// Compute a distance invariant
    Dist(DistArgs),
    /// Decide a property of a map between two codes
    Map {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
        /// JSON file {"images": [...]} with the images of the domain's generator rows
        #[arg(long)]
        images: PathBuf,
        #[arg(long, value_enum)]
        check: MapCheck,
        #[arg(long)]
        j: Option<usize>,
        /// Message degree for the exhaustive degree probe of `strong`
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Brute-force reference values (slow)
    Oracle {
        /// Acknowledge that brute force may take very long
        #[arg(long)]
        unsafe_slow: bool,
        #[command(flatten)]
        args: DistArgs,
    },
    /// Reproduce the published example values
    Golden {
        /// Only run checks whose id contains this string
        #[arg(long)]
        filter: Option<String>,
    },
    /// Randomized property suite over small codes
    Suite {
        #[arg(long, default_value_t = 200)]
        codes: usize,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct DistArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum, alias = "invariant")]
    kind: Kind,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Degree bound for generalized weights (default: memory + 1)
    #[arg(long, alias = "degree")]
    degree_bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Proven)]
    mode: Mode,
    /// Plateau length for `--mode plateau`
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Column distance d_j^c
    #[value(alias = "column")]
    Coldist,
    /// (r, j)-generalized column distance
    #[value(alias = "gcd")]
    Gencoldist,
    /// r-generalized column distance (limit in j)
    Limit,
    /// Windowed values up to the limit
    Profile,
    /// Unrestricted generalized column distance of the j-truncated code
    Unrestricted,
    /// Generalized Hamming weight of the block code at x = 0
    Ghw,
    /// Generalized weight over codewords of bounded degree
    Genweight,
    /// Free distance
    #[value(alias = "free")]
    Dfree,
    /// Minimum through primed sliding matrices up to window j
    Primed,
    /// Stabilization bounds
    Bound,
    Mds,
    Mdp,
    StronglyMds,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Coldist => "coldist",
            Kind::Gencoldist => "gencoldist",
            Kind::Limit => "limit",
            Kind::Profile => "profile",
            Kind::Unrestricted => "unrestricted",
            Kind::Ghw => "ghw",
            Kind::Genweight => "genweight",
            Kind::Dfree => "dfree",
            Kind::Primed => "primed",
            Kind::Bound => "bound",
            Kind::Mds => "mds",
            Kind::Mdp => "mdp",
            Kind::StronglyMds => "strongly-mds",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Proven,
    Plateau,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapCheck {
    Jequiv,
    Equiv,
    Isometry,
    Strong,
}

fn budget() -> Result<Budget, CliError> {
    match std::env::var("CONVINV_BUDGET") {
        Ok(spec) => Ok(Budget::default().with_override(&spec)?),
        Err(_) => Ok(Budget::default()),
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this invariant")))
}

fn emit<T: Serialize>(
    json: bool,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    if json {
        let out =
            serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
        println!("{out}");
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn compute(code: &ConvCode, a: &DistArgs, b: &Budget) -> Result<Report, CliError> {
    let mode = match a.mode {
        Mode::Proven => LimitMode::Proven,
        Mode::Plateau => LimitMode::Plateau { window: a.window },
    };
    let mut rep = Report::new(a.kind.name(), code.params());
    let r = || need(a.r, "r");
    let j = || need(a.j, "j");
    rep = match a.kind {
        Kind::Coldist => {
            rep.j = Some(j()?);
            rep.with_distance(distances::column_distance(code, j()?, b)?)
        }
        Kind::Gencoldist => {
            (rep.r, rep.j) = (Some(r()?), Some(j()?));
            rep.with_distance(distances::gen_column_distance(code, r()?, j()?, b)?)
        }
        Kind::Limit => {
            rep.r = Some(r()?);
            rep.with_distance(distances::gen_column_distance_limit(code, r()?, mode, b)?)
        }
        Kind::Profile => {
            rep.r = Some(r()?);
            rep.with_profile(distances::gen_column_distance_profile(code, r()?, b)?)
        }
        Kind::Unrestricted => {
            (rep.r, rep.j) = (Some(r()?), Some(j()?));
            rep.with_distance(distances::unrestricted_gcd(code, r()?, j()?, b)?)
        }
        Kind::Ghw => {
            rep.r = Some(r()?);
            rep.with_distance(distances::ghw(&code.evaluate_at_zero(), r()?, b)?)
        }
        Kind::Genweight => {
            let d = a.degree_bound.unwrap_or(code.delta1() + 1);
            (rep.r, rep.degree_bound) = (Some(r()?), Some(d));
            rep.with_distance(distances::generalized_weight(code, r()?, d, b)?)
        }
        Kind::Dfree => rep.with_distance(distances::free_distance(code, mode, b)?),
        Kind::Primed => {
            (rep.r, rep.j) = (Some(r()?), Some(j()?));
            rep.with_distance(distances::primed_minimum(code, r()?, j()?, b)?)
        }
        Kind::Bound => {
            rep.r = Some(r()?);
            rep.bound = Some(distances::stabilization_bound(code, r()?)?);
            rep
        }
        Kind::Mds => {
            rep.holds = Some(distances::is_mds(code, b)?);
            rep
        }
        Kind::Mdp => {
            rep.holds = Some(distances::is_mdp(code, b)?);
            rep
        }
        Kind::StronglyMds => {
            rep.holds = Some(distances::is_strongly_mds(code, b)?);
            rep
        }
    };
    Ok(rep)
}

fn compute_oracle(code: &ConvCode, a: &DistArgs, b: &Budget) -> Result<Report, CliError> {
    let mut rep = Report::new(a.kind.name(), code.params());
    let r = || need(a.r, "r");
    let j = || need(a.j, "j");
    let value =
        match a.kind {
            Kind::Coldist => {
                rep.j = Some(j()?);
                oracle::naive_column_distance(code, j()?, b)?
            }
            Kind::Gencoldist => {
                (rep.r, rep.j) = (Some(r()?), Some(j()?));
                oracle::naive_gen_column_distance(code, r()?, j()?, b)?
            }
            Kind::Unrestricted => {
                (rep.r, rep.j) = (Some(r()?), Some(j()?));
                oracle::naive_unrestricted(code, r()?, j()?, b)?
            }
            Kind::Ghw => {
                rep.r = Some(r()?);
                oracle::naive_ghw(&code.evaluate_at_zero(), r()?, b)?
            }
            Kind::Genweight => {
                let d = a.degree_bound.unwrap_or(code.delta1() + 1);
                (rep.r, rep.degree_bound) = (Some(r()?), Some(d));
                oracle::naive_genweight(code, r()?, d, b)?
            }
            Kind::Primed => {
                (rep.r, rep.j) = (Some(r()?), Some(j()?));
                oracle::naive_primed_minimum(code, r()?, j()?, b)?
            }
            _ => return Err(CliError::Usage(
                "the oracle covers coldist, gencoldist, unrestricted, ghw, genweight and primed"
                    .into(),
            )),
        };
    rep.value = Some(value);
    rep.exact = Some(Exactness::Proven);
    Ok(rep)
}

fn describe(e: &Report) -> String {
    let mut label = e.kind.clone();
    if let Some(r) = e.r {
        label += &format!(" r={r}");
    }
    if let Some(j) = e.j {
        label += &format!(" j={j}");
    }
    if let Some(d) = e.degree_bound {
        label += &format!(" degree<={d}");
    }
    let mut value = String::new();
    if let Some(p) = &e.profile {
        let vals: Vec<String> = p.iter().map(|(j, v)| format!("j={j}:{v}")).collect();
        value += &format!("[{}] limit ", vals.join(" "));
    }
    if let Some(v) = e.value {
        value += &v.to_string();
        if let Some(x) = e.exact {
            value += &format!(" ({x:?})");
        }
    }
    if let Some(h) = e.holds {
        value += &h.to_string();
    }
    if let Some(b) = &e.bound {
        value += &format!("crude {} sharp {}", b.crude, b.sharp);
    }
    format!("{label}: {value}\n")
}

fn run(cli: Cli) -> Result<(), CliError> {
    let b = budget()?;
    let json = cli.json;
    match cli.command {
        Command::Info { code } => {
            let c = parse_code_file(&code)?;
            let bounds = (1..=c.k())
                .map(|r| distances::stabilization_bound(&c, r))
                .collect::<convinv_core::Result<Vec<_>>>()?;
            let info = InfoReport {
                params: c.params(),
                row_degrees: c.row_degrees().to_vec(),
                basis: c.basis().to_vec(),
                invariant_factors: c.invariant_factors().to_vec(),
                stabilization_bounds: bounds,
            };
            emit(json, &info, || {
                let p = info.params;
                format!(
                    "n={} k={} delta={} memory={} noncatastrophic={}\nrow degrees {:?}\n",
                    p.n, p.k, p.delta, p.delta1, p.noncat, info.row_degrees
                )
            })
        }
        Command::Sliding { code, j, primed } => {
            let c = parse_code_file(&code)?;
            let variant = if primed {
                Variant::Primed
            } else {
                Variant::Plain
            };
            let g = SlidingMatrix::new(&c, j, variant);
            let rep = SlidingReport {
                params: c.params(),
                j,
                primed,
                rows: g.matrix().to_rows(),
            };
            emit(json, &rep, || {
                rep.rows
                    .iter()
                    .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
                    .collect()
            })
        }
        Command::Dist(args) => {
            let start = Instant::now();
            let c = parse_code_file(&args.code)?;
            let mut rep = compute(&c, &args, &b)?;
            rep.wall_time_us = elapsed_us(start);
            emit(json, &rep, || describe(&rep))
        }
        Command::Oracle { unsafe_slow, args } => {
            if !unsafe_slow {
                return Err(CliError::Usage(
                    "the oracle is brute force; pass --unsafe-slow to run it".into(),
                ));
            }
            let start = Instant::now();
            let c = parse_code_file(&args.code)?;
            let mut rep = compute_oracle(&c, &args, &b)?;
            rep.wall_time_us = elapsed_us(start);
            emit(json, &rep, || describe(&rep))
        }
        Command::Map {
            domain,
            codomain,
            images,
            check,
            j,
            bound,
        } => {
            let start = Instant::now();
            let d = parse_code_file(&domain)?;
            let c = parse_code_file(&codomain)?;
            let map = CodeMap::new(d, c, parse_images_file(&images)?)?;
            let (name, j, verdict) = match check {
                MapCheck::Jequiv => {
                    let j = need(j, "j")?;
                    (
                        "jequiv",
                        Some(j),
                        Verdict::Plain(maps::check_j_equivalence(&map, j, &b)?),
                    )
                }
                MapCheck::Equiv => (
                    "equiv",
                    None,
                    Verdict::Plain(maps::check_equivalence(&map, &b)?),
                ),
                MapCheck::Isometry => (
                    "isometry",
                    None,
                    Verdict::Plain(maps::check_isometry(&map, &b)?),
                ),
                MapCheck::Strong => {
                    let bound = bound.unwrap_or(map.domain().delta1() + 2);
                    (
                        "strong",
                        None,
                        Verdict::Strong(maps::check_strong_isometry(&map, bound, &b)?),
                    )
                }
            };
            let rep = MapReport {
                check: name.into(),
                j,
                domain: map.domain().params(),
                codomain: map.codomain().params(),
                verdict,
                wall_time_us: elapsed_us(start),
            };
            emit(json, &rep, || match &rep.verdict {
                Verdict::Plain(v) => format!("{name}: {}\nwitness: {:?}\n", v.holds, v.witness),
                Verdict::Strong(v) => {
                    format!("{name}: {}\nisometry witness: {:?}\n", v.holds, v.isometry)
                }
            })
        }
        Command::Golden { filter } => {
            let results = golden::run_golden(filter.as_deref(), &b);
            let mut failed = 0;
            for res in &results {
                for l in &res.lines {
                    let tag = if l.passed() { "PASS" } else { "FAIL" };
                    println!(
                        "{tag} {} | {}: expected {}, got {}  [{}]",
                        res.id, l.label, l.expected, l.actual, res.about
                    );
                }
                failed += res.failures();
            }
            let total: usize = results.iter().map(|r| r.lines.len()).sum();
            println!("{} of {total} golden values reproduced", total - failed);
            if failed > 0 {
                return Err(CliError::GoldenMismatch(failed));
            }
            Ok(())
        }
        Command::Suite { codes, seed } => {
            let corpus = suite::corpus(seed, codes);
            let sb = suite::suite_budget();
            let rep = suite::run_all(&corpus, &sb);
            emit(json, &rep, || {
                let mut s = String::new();
                for (k, v) in &rep.passed {
                    s += &format!("pass {v:>6}  {k}\n");
                }
                for (k, v) in &rep.skipped {
                    s += &format!("skip {v:>6}  {k}\n");
                }
                for f in &rep.failures {
                    s += &format!("FAIL code #{} {}: {}\n", f.code, f.property, f.detail);
                }
                s
            })?;
            if !rep.ok() {
                return Err(CliError::SuiteFailure(rep.failures.len()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
