//! Command-line driver for the quantized flag manifold toolkit.
//!
//! Exit codes: 0 = all requested verdicts pass, 1 = a verification failed,
//! 2 = configuration error, 3 = internal inconsistency.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qflag::flagalg::{self, FlagWeight};
use qflag::funalg::{Algebra, FunElem};
use qflag::rat::{qfrac, Q};
use qflag::rep::build::{RepEngine, RepSpec};
use qflag::rep::checks;
use qflag::rep::su2::{Su2Algebra, SU2Gen};
use qflag::rep::C64;
use qflag::rootsys::{
    build_root_system, minimal_coset_reps, poisson_subgroup_descriptor, schubert_cells,
    CartanType, RootSystem, Weight,
};
use qflag::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qflag", about = "Quantized flag manifolds: exact algebra and operator checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Cartan type letter (A or B).
    #[arg(long = "type", default_value = "A")]
    cartan: String,
    /// Rank of the root system.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Deformation parameter as an exact fraction "p/r" with 0 < p/r < 1.
    #[arg(long, default_value = "1/2")]
    q: String,
    /// Output format: json, csv, or binary (binary only for `rep matrix`).
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots and the Cartan matrix.
    Roots(Common),
    /// Minimal coset representatives for the parabolic quotient (all of the
    /// Weyl group when S is empty), as {word, length, action}.
    Weyl {
        #[command(flatten)]
        common: Common,
        /// Parabolic simple-root indices, 1-based, e.g. "1" or "1,2".
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
    },
    /// Schubert-cell table (w, l(w)) for the parabolic quotient.
    Cells {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
    },
    /// Descriptor of the block subgroup pair attached to S and its central torus.
    Poisson {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
    },
    /// Dimension, weight multiplicities and sl2-string decompositions of the
    /// irreducible module with the given highest weight.
    Module {
        #[command(flatten)]
        common: Common,
        /// Highest weight in fundamental-weight coordinates, e.g. "0,1".
        #[arg(long = "Lambda", value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
    },
    /// Exact operations on a matrix coefficient: star, product with its star,
    /// and Haar values.
    Funalg {
        #[command(flatten)]
        common: Common,
        #[arg(long = "Lambda", value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        /// Row index of the coefficient.
        #[arg(long, default_value_t = 0)]
        u: usize,
        /// Column index of the coefficient.
        #[arg(long, default_value_t = 0)]
        v: usize,
    },
    /// Degree-by-degree generation and properness checks for the invariant algebra.
    Flag {
        #[command(subcommand)]
        sub: FlagCmd,
    },
    /// Truncated operator representations: matrices and verification campaigns.
    Rep {
        #[command(subcommand)]
        sub: RepCmd,
    },
}

#[derive(Subcommand)]
enum FlagCmd {
    /// The coordinate block generates every reachable component of the
    /// invariant algebra up to the given degree.
    VerifyAlgthm {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        #[arg(long = "Lambda", value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// The fundamental coordinates off S generate the block-torus invariants.
    VerifySs {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Search for left weights of the invariant algebra outside the lattice
    /// generated by the chosen weight.
    A0Proper {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        #[arg(long = "Lambda", value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        /// Bound on the coordinate sum of searched components.
        #[arg(long, default_value_t = 2)]
        max_sum: i64,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Truncated matrix of π_{w,t} applied to one element.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        /// Component weight of the matrix coefficient to represent.
        #[arg(long = "Lambda", value_delimiter = ',')]
        lambda: Option<Vec<i64>>,
        #[arg(long, default_value_t = 0)]
        u: usize,
        #[arg(long, default_value_t = 0)]
        v: usize,
        /// Rank-one generator shorthand: L++, L+-, L-+ (default), L--.
        #[arg(long)]
        gen: Option<String>,
    },
    /// Reduced-word independence of singular spectra on sampled elements.
    VerifyClass {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rep: RepArgs,
        /// Second reduced word for the same Weyl element.
        #[arg(long = "w2", required = true)]
        w2: String,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        #[arg(long = "Lambda", value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        /// Number of sample elements.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Number of leading singular values to compare.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Class-parameter separation and block-torus invariance of the
    /// representations attached to (w, t).
    VerifySsb {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        #[arg(long = "N", default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Haar norm against the truncated sup norm on seeded random invariant elements.
    Norms {
        #[command(flatten)]
        common: Common,
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        /// Largest truncation; the report also covers N/4 and N/2.
        #[arg(long = "N", default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        /// Number of random elements.
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Number of torus sample points.
        #[arg(long, default_value_t = 2)]
        torus_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct RepArgs {
    /// Reduced word, 1-based generator digits, e.g. "121" (empty for the counit).
    #[arg(long = "w", default_value = "")]
    w: String,
    /// Torus point as comma-separated turns: t_j = exp(2πi θ_j).
    #[arg(long = "t", value_delimiter = ',', num_args = 0..)]
    t: Vec<f64>,
    #[arg(long = "N", default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    margin: usize,
}

fn parse_q(s: &str) -> Result<Q> {
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || Error::Config(format!("cannot parse q = {s:?}; expected \"p/r\""));
    let q = match parts.as_slice() {
        [p, r] => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let r: i64 = r.trim().parse().map_err(|_| bad())?;
            if r == 0 {
                return Err(bad());
            }
            qfrac(p, r)
        }
        _ => return Err(bad()),
    };
    if q <= qfrac(0, 1) || q >= qfrac(1, 1) {
        return Err(Error::Config(format!("q = {s} must satisfy 0 < q < 1")));
    }
    Ok(q)
}

fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for c in s.chars().filter(|c| !matches!(c, ',' | ' ')) {
        let d = c
            .to_digit(10)
            .ok_or_else(|| Error::Config(format!("bad word {s:?}")))? as usize;
        if d == 0 || d > rank {
            return Err(Error::Config(format!("word letter {d} out of range 1..={rank}")));
        }
        out.push(d - 1);
    }
    Ok(out)
}

fn parse_s(s: &[usize], rank: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &i in s {
        if i == 0 || i > rank {
            return Err(Error::Config(format!("S index {i} out of range 1..={rank}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_lambda(coords: &[i64], rank: usize) -> Result<Weight> {
    if coords.len() != rank {
        return Err(Error::Config(format!(
            "weight has {} coordinates, expected {rank}",
            coords.len()
        )));
    }
    Ok(Weight(coords.to_vec()))
}

fn build_rs(common: &Common) -> Result<RootSystem> {
    parse_q(&common.q)?;
    build_root_system(CartanType::parse(&common.cartan, common.rank)?)
}

fn torus_point(t: &[f64], rank: usize) -> Result<Vec<C64>> {
    if t.is_empty() {
        return Ok(vec![C64::new(1.0, 0.0); rank]);
    }
    if t.len() != rank {
        return Err(Error::Config(format!("--t needs {rank} entries")));
    }
    Ok(t
        .iter()
        .map(|&x| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * x))
        .collect())
}

/// Exact JSON image of a function-algebra element: component weight →
/// coefficient matrix with entries as exact fraction strings.
fn fun_elem_json(a: &FunElem) -> Value {
    let mut map = serde_json::Map::new();
    for (lam, mat) in &a.components {
        let key = lam
            .0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let rows: Vec<Vec<String>> = (0..mat.rows)
            .map(|i| (0..mat.cols).map(|j| mat.at(i, j).to_string()).collect())
            .collect();
        map.insert(key, json!(rows));
    }
    Value::Object(map)
}

enum Output {
    Json(Value),
    Csv(String),
    Binary(Vec<u8>),
}

fn emit(common: &Common, out: Output) -> Result<()> {
    let bytes = match out {
        Output::Json(v) => {
            let mut s = serde_json::to_string_pretty(&v)
                .map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            s.into_bytes()
        }
        Output::Csv(s) => s.into_bytes(),
        Output::Binary(b) => b,
    };
    match &common.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn words_csv(rows: &[(Vec<usize>, usize)]) -> String {
    let mut s = String::from("word,length\n");
    for (word, len) in rows {
        let w: String = word.iter().map(|i| (i + 1).to_string()).collect();
        s.push_str(&format!("{w},{len}\n"));
    }
    s
}

fn format_choice(common: &Common, v: Value, csv: Option<String>) -> Result<Output> {
    match common.format.as_str() {
        "json" => Ok(Output::Json(v)),
        "csv" => csv
            .map(Output::Csv)
            .ok_or_else(|| Error::Config("csv output not available for this report".into())),
        "binary" => Err(Error::Config("binary output only applies to `rep matrix`".into())),
        other => Err(Error::Config(format!("unknown format {other:?}"))),
    }
}

/// Returns the report output and whether every verdict in it passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Roots(common) => {
            let rs = build_rs(&common)?;
            let v = json!({
                "cartan_matrix": rs.cartan,
                "positive_roots": rs.positive_roots,
                "rank": rs.rank,
            });
            emit(&common, format_choice(&common, v, None)?)?;
            Ok(true)
        }
        Command::Weyl { common, s } => {
            let rs = build_rs(&common)?;
            let wg = qflag::rootsys::weyl_enumerate(&rs);
            let s = parse_s(&s, rs.rank)?;
            let reps = minimal_coset_reps(&rs, &wg, &s)?;
            let rows: Vec<Value> = reps
                .iter()
                .map(|w| json!({"word": w.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
                                 "length": w.length(), "action": w.mat}))
                .collect();
            let csv = words_csv(&reps.iter().map(|w| (w.word.clone(), w.length())).collect::<Vec<_>>());
            emit(&common, format_choice(&common, json!(rows), Some(csv))?)?;
            Ok(true)
        }
        Command::Cells { common, s } => {
            let rs = build_rs(&common)?;
            let wg = qflag::rootsys::weyl_enumerate(&rs);
            let s = parse_s(&s, rs.rank)?;
            let cells = schubert_cells(&rs, &wg, &s)?;
            let csv = words_csv(&cells.iter().map(|c| (c.word.clone(), c.length)).collect::<Vec<_>>());
            emit(&common, format_choice(&common, to_json(&cells)?, Some(csv))?)?;
            Ok(true)
        }
        Command::Poisson { common, s } => {
            let rs = build_rs(&common)?;
            let s = parse_s(&s, rs.rank)?;
            let d = poisson_subgroup_descriptor(&rs, &s)?;
            emit(&common, format_choice(&common, to_json(&d)?, None)?)?;
            Ok(true)
        }
        Command::Module { common, lambda } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let lam = parse_lambda(&lambda, alg.rs.rank)?;
            let m = alg.module(&lam)?;
            let mults: Vec<Value> = m
                .space
                .character()
                .iter()
                .map(|(mu, k)| json!({"weight": mu, "multiplicity": k}))
                .collect();
            let strings: Vec<Value> = (0..alg.rs.rank)
                .map(|i| {
                    let st = qflag::uqmod::sl2_strings(&m.space, i);
                    json!({"direction": i + 1,
                           "strings": st.iter().map(|(l, _)| l).collect::<Vec<_>>()})
                })
                .collect();
            let v = json!({"dim": m.space.dim, "weights": mults, "sl2_strings": strings});
            let mut csv = String::from("weight,multiplicity\n");
            for (mu, k) in m.space.character() {
                let w: String = mu.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                csv.push_str(&format!("{w},{k}\n"));
            }
            emit(&common, format_choice(&common, v, Some(csv))?)?;
            Ok(true)
        }
        Command::Funalg { common, lambda, u, v } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let lam = parse_lambda(&lambda, alg.rs.rank)?;
            let c = alg.matrix_coefficient(&lam, u, v)?;
            let star = alg.star(&c)?;
            let prod = alg.multiply(&c, &star)?;
            let out = json!({
                "element": fun_elem_json(&c),
                "star": fun_elem_json(&star),
                "element_times_star": fun_elem_json(&prod),
                "haar_element": alg.haar(&c).to_string(),
                "haar_element_times_star": alg.haar(&prod).to_string(),
            });
            emit(&common, format_choice(&common, out, None)?)?;
            Ok(true)
        }
        Command::Flag { sub } => run_flag(sub),
        Command::Rep { sub } => run_rep(sub),
    }
}

fn verify_csv(r: &flagalg::VerifyReport) -> String {
    let mut s = String::from("lambda,left_weight,rank_generated,dim_invariant,ok\n");
    for row in &r.rows {
        let lam: String = row.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let lw = row
            .left_weight
            .as_ref()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        s.push_str(&format!("{lam},{lw},{},{},{}\n", row.rank_generated, row.dim_invariant, row.ok));
    }
    s
}

fn run_flag(sub: FlagCmd) -> Result<bool> {
    match sub {
        FlagCmd::VerifyAlgthm { common, s, lambda, degree } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let fw = FlagWeight::new(alg.rs.rank, parse_lambda(&lambda, alg.rs.rank)?, s)?;
            let report = flagalg::verify_theorem_algthm(&alg, &fw, degree)?;
            let csv = verify_csv(&report);
            emit(&common, format_choice(&common, to_json(&report)?, Some(csv))?)?;
            Ok(report.pass)
        }
        FlagCmd::VerifySs { common, s, degree } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let report = flagalg::verify_theorem_ss_a(&alg, &s, degree)?;
            let csv = verify_csv(&report);
            emit(&common, format_choice(&common, to_json(&report)?, Some(csv))?)?;
            Ok(report.pass)
        }
        FlagCmd::A0Proper { common, s, lambda, max_sum } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let fw = FlagWeight::new(alg.rs.rank, parse_lambda(&lambda, alg.rs.rank)?, s)?;
            let report = flagalg::check_a0_proper(&alg, &fw, max_sum)?;
            emit(&common, format_choice(&common, to_json(&report)?, None)?)?;
            Ok(true)
        }
    }
}

fn matrix_binary(op: &qflag::rep::TruncOp) -> Vec<u8> {
    let dense = op.to_dense();
    let mut bytes = Vec::with_capacity(8 + 16 * dense.len());
    bytes.extend_from_slice(&(op.n as u32).to_le_bytes());
    bytes.extend_from_slice(&(op.legs as u32).to_le_bytes());
    for i in 0..dense.nrows() {
        for j in 0..dense.ncols() {
            bytes.extend_from_slice(&dense[(i, j)].re.to_le_bytes());
            bytes.extend_from_slice(&dense[(i, j)].im.to_le_bytes());
        }
    }
    bytes
}

fn run_rep(sub: RepCmd) -> Result<bool> {
    match sub {
        RepCmd::Matrix { common, rep, lambda, u, v, gen } => {
            let rs = build_rs(&common)?;
            let q = parse_q(&common.q)?;
            let word = parse_word(&rep.w, rs.rank)?;
            let t = torus_point(&rep.t, rs.rank)?;
            let elem: FunElem;
            let alg: Algebra;
            match (&gen, &lambda) {
                (Some(_), Some(_)) => {
                    return Err(Error::Config("--gen and --Lambda are mutually exclusive".into()))
                }
                (Some(name), None) => {
                    if rs.rank != 1 {
                        return Err(Error::Config("--gen requires rank 1".into()));
                    }
                    let su2 = Su2Algebra::new(q.clone())?;
                    let g = match name.as_str() {
                        "L++" => SU2Gen::PlusPlus,
                        "L+-" => SU2Gen::PlusMinus,
                        "L-+" => SU2Gen::MinusPlus,
                        "L--" => SU2Gen::MinusMinus,
                        other => {
                            return Err(Error::Config(format!("unknown generator {other:?}")))
                        }
                    };
                    elem = su2.generator(g).clone();
                    alg = Algebra::new(rs, q)?;
                }
                (None, Some(coords)) => {
                    alg = Algebra::new(rs, q)?;
                    let lam = parse_lambda(coords, alg.rs.rank)?;
                    elem = alg.matrix_coefficient(&lam, u, v)?;
                }
                (None, None) => {
                    if rs.rank != 1 {
                        return Err(Error::Config("need --Lambda (or --gen at rank 1)".into()));
                    }
                    let su2 = Su2Algebra::new(q.clone())?;
                    elem = su2.generator(SU2Gen::MinusPlus).clone();
                    alg = Algebra::new(rs, q)?;
                }
            }
            let eng = RepEngine::new(&alg)?;
            let spec = RepSpec { word, t, n: rep.n };
            let op = eng.pi_wt(&elem, &spec)?;
            match common.format.as_str() {
                "binary" => emit(&common, Output::Binary(matrix_binary(&op)))?,
                "json" => {
                    let dense = op.to_dense();
                    let rows: Vec<Vec<[f64; 2]>> = (0..dense.nrows())
                        .map(|i| {
                            (0..dense.ncols())
                                .map(|j| [dense[(i, j)].re, dense[(i, j)].im])
                                .collect()
                        })
                        .collect();
                    let v = json!({"N": op.n, "legs": op.legs, "rows": rows});
                    emit(&common, Output::Json(v))?;
                }
                other => return Err(Error::Config(format!("unknown format {other:?}"))),
            }
            Ok(true)
        }
        RepCmd::VerifyClass { common, rep, w2, s, lambda, samples, top, tol } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let eng = RepEngine::new(&alg)?;
            let word1 = parse_word(&rep.w, alg.rs.rank)?;
            let word2 = parse_word(&w2, alg.rs.rank)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let fw = FlagWeight::new(alg.rs.rank, parse_lambda(&lambda, alg.rs.rank)?, s)?;
            let elems = sample_elements(&alg, &fw, samples)?;
            let report =
                checks::reduced_word_independence(&eng, &word1, &word2, &elems, rep.n, top, tol)?;
            emit(&common, format_choice(&common, to_json(&report)?, None)?)?;
            Ok(report.pass)
        }
        RepCmd::VerifySsb { common, s, n, margin, seed } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let eng = RepEngine::new(&alg)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let report = checks::verify_theorem_ss_b(&eng, &s, n, margin, seed)?;
            emit(&common, format_choice(&common, to_json(&report)?, None)?)?;
            Ok(report.pass)
        }
        RepCmd::Norms { common, s, n, margin, count, torus_samples, seed } => {
            let rs = build_rs(&common)?;
            let alg = Algebra::new(rs, parse_q(&common.q)?)?;
            let eng = RepEngine::new(&alg)?;
            let s = parse_s(&s, alg.rs.rank)?;
            let ns: Vec<usize> = [n / 4, n / 2, n].iter().copied().filter(|&x| x >= 4).collect();
            let ts = checks::torus_samples(alg.rs.rank, &s, torus_samples, seed);
            let lams = invariant_lambdas(&alg, &s);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut reports = Vec::new();
            let mut pass = true;
            for _ in 0..count {
                let a = checks::random_invariant_element(&eng, &s, &lams, &mut rng)?;
                let r = checks::sup_norm_vs_haar(&eng, &a, &ns, &ts, margin)?;
                pass &= r.pass;
                reports.push(r);
            }
            let mut csv = String::from("haar_norm,sup_norms,pass\n");
            for r in &reports {
                let sups: String = r
                    .sup_norms
                    .iter()
                    .map(|(n, s)| format!("{n}:{s:.12e}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                csv.push_str(&format!("{:.12e},{sups},{}\n", r.haar_norm, r.pass));
            }
            emit(&common, format_choice(&common, to_json(&reports)?, Some(csv))?)?;
            Ok(pass)
        }
    }
}

/// Components with nonzero full-torus invariants: the zero weight plus small
/// dominant weights whose modules contain block-invariant vectors.
fn invariant_lambdas(alg: &Algebra, s: &[usize]) -> Vec<Weight> {
    let rank = alg.rs.rank;
    let mut out = vec![Weight::zero(rank)];
    let mut sum_fund = Weight::zero(rank);
    for i in 0..rank {
        sum_fund = sum_fund.add(&Weight::fundamental(rank, i));
    }
    out.push(sum_fund);
    let _ = s;
    out
}

/// Deterministic sample elements of the coordinate algebra: the holomorphic
/// and antiholomorphic generators, then their pairwise products.
fn sample_elements(alg: &Algebra, fw: &FlagWeight, count: usize) -> Result<Vec<FunElem>> {
    let (hol, anti) = flagalg::plucker_generators(alg, fw)?;
    let mut out = Vec::new();
    for g in hol.iter().chain(anti.iter()) {
        if out.len() < count {
            out.push(g.clone());
        }
    }
    'outer: for a in &hol {
        for b in &anti {
            if out.len() >= count {
                break 'outer;
            }
            out.push(alg.multiply(a, b)?);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Domain(_) | Error::Overflow(_) => ExitCode::from(2),
                Error::Internal(_) => ExitCode::from(3),
            }
        }
    }
}
