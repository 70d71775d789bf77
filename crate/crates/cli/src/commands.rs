//! One function per subcommand, each producing a report envelope.

use std::collections::BTreeMap;

use bsymbol::algebra::{Elem, FieldTable};
use bsymbol::bounds::{bound_report, generic_bound_report, linear_max_weights, unrestricted_max, BoundReport, ExactData};
use bsymbol::characters::{class_weights, cyclotomic_class_index, direct_weights, gaussian_periods, u_set_sizes};
use bsymbol::codes::{enumerate_codewords, CodeSpace, LinearCode, TraceCode, TraceCodeParams, DEFAULT_ENUMERATION_CAP};
use bsymbol::constructions::{
    golomb_code, golomb_ruler_optimal, mbsw_code, mws_linear_code, singer_difference_set, singer_unrestricted_code,
    spread_linear, symplectic_mws_code,
};
use bsymbol::spectra::{b_distance, weight_spectra_auto, weight_spectrum, CensusOptions, SpectrumReport, DISTANCE_SPECTRUM_CAP};
use bsymbol::sweep::{cyclic_sweep, gauss_sweep, GaussConfig, SweepConfig};
use bsymbol::vectors::{
    b_weight_direct, b_weight_from_runs, hamming_weight, phi_prime, pi_b, run_distribution, symplectic_weight, Word,
};
use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{complex_table, object, sig12, Envelope};
use crate::spec::{parse_digits, Code};
use crate::{BRange, Cli, CliError, CodeArgs, Command};

pub fn run(cli: &Cli) -> Result<Envelope, CliError> {
    let workers = cli.workers.max(1);
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, workers),
        Command::Bounds(a) => bounds(a, workers),
        Command::Sweep(a) => sweep(a, workers),
        Command::Construct { what } => construct(what, workers),
        Command::Gauss(a) => gauss(a),
        Command::Verify(a) => verify(a),
    }
}

fn census_opts(cap: u128, workers: usize) -> CensusOptions {
    CensusOptions { cap, workers, ..CensusOptions::default() }
}

/// Spectra up to `hi` by enumeration or the trellis, whichever is cheaper, within an
/// operation budget of `cap * n`.
fn spectra(code: &dyn CodeSpace, range: BRange, cap: u128, workers: usize) -> Result<Vec<SpectrumReport>, CliError> {
    let budget = cap.saturating_mul(code.length() as u128);
    let all = weight_spectra_auto(code, range.hi, &census_opts(cap, workers), budget)?;
    Ok(all.into_iter().filter(|r| r.b >= range.lo).collect())
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// A single word as a digit string instead of a code.
    #[arg(long)]
    pub word: Option<String>,
    /// `b`, or a range such as 1-3; defaults to every b in [1, n].
    #[arg(long)]
    pub b: Option<BRange>,
    /// Also compute the pairwise b-distance spectrum D_b.
    #[arg(long)]
    pub distances: bool,
    /// Largest number of codewords an enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
}

fn spectrum(a: &SpectrumArgs, workers: usize) -> Result<Envelope, CliError> {
    if let Some(w) = &a.word {
        let f = FieldTable::of_size(a.code.q.unwrap_or(2))?;
        let word = Word::new(&f, parse_digits(w, &f)?)?;
        let n = word.len();
        let range = a.b.unwrap_or(BRange { lo: 1, hi: n }).check(n)?;
        let rd = run_distribution(&word);
        let runs: BTreeMap<usize, usize> = rd.psi.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect();
        let weights: Vec<Value> = (range.lo..=range.hi)
            .map(|b| Ok(json!({"b": b, "weight": b_weight_direct(&word, b)?})))
            .collect::<Result<_, CliError>>()?;
        let result = object(vec![
            ("word", json!(word.serialize())),
            ("q", json!(f.q())),
            ("n", json!(n)),
            ("run_distribution", json!(runs)),
            ("weights", Value::Array(weights)),
        ]);
        return Ok(Envelope::new("word_weights", true, result));
    }
    let code = a.code.spec()?.build()?;
    let c = code.space();
    let n = c.length();
    let range = a.b.unwrap_or(BRange { lo: 1, hi: n }).check(n)?;
    let reports = spectra(c, range, a.cap, workers)?;
    let mut fields = vec![("code", code.describe()), ("spectra", serde_json::to_value(&reports).expect("plain data"))];
    if a.distances {
        fields.push(("distances", distance_table(&code, range, a.cap)?));
    }
    Ok(Envelope::new("spectrum", true, object(fields)))
}

/// `D_b` with the number of unordered pairs at each distance.
fn distance_table(code: &Code, range: BRange, cap: u128) -> Result<Value, CliError> {
    let c = code.space();
    let words = enumerate_codewords(c, cap.min(DISTANCE_SPECTRUM_CAP as u128))?;
    let f = c.alphabet();
    let mut out = Vec::new();
    for b in range.lo..=range.hi {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                *counts.entry(b_distance(f, &words[i], &words[j], b)).or_default() += 1;
            }
        }
        out.push(json!({"b": b, "distances": counts.keys().collect::<Vec<_>>(), "pairs": counts, "size": counts.len()}));
    }
    Ok(Value::Array(out))
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// `b`, or a range; defaults to every b in [1, k].
    #[arg(long)]
    pub b: Option<BRange>,
    /// Largest number of codewords an exact computation may visit.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
    /// Skip the exact comparison.
    #[arg(long)]
    pub no_exact: bool,
}

fn bounds(a: &BoundsArgs, workers: usize) -> Result<Envelope, CliError> {
    let code = a.code.spec()?.build()?;
    let c = code.space();
    let n = c.length();
    let range = a.b.unwrap_or(BRange { lo: 1, hi: c.dimension().clamp(1, n) }).check(n)?;
    let budget = a.cap.saturating_mul(n as u128);
    let opts = census_opts(a.cap, workers);
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut notes = Vec::new();
    for b in range.lo..=range.hi {
        let exact = if a.no_exact {
            None
        } else {
            match ExactData::compute(c, b, &opts, budget) {
                Ok(x) => Some(x),
                Err(e @ bsymbol::Error::CapExceeded { .. }) => {
                    notes.push(format!("b = {b}: exact comparison skipped, {e}"));
                    None
                }
                Err(e) => return Err(e.into()),
            }
        };
        reports.push(match code.cyclic() {
            Some(cc) => bound_report(cc, b, exact)?,
            None => generic_bound_report(c, code.label(), b, exact)?,
        });
    }
    let ok = reports.iter().all(|r| r.passed());
    let result = object(vec![("code", code.describe()), ("reports", serde_json::to_value(&reports).expect("plain data")), ("notes", json!(notes))]);
    Ok(Envelope::new("bounds", ok, result))
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Field sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    /// Largest b checked per code (default: every b in [1, k]).
    #[arg(long)]
    pub b_max: Option<usize>,
    /// Operation budget for the exact spectra of one code.
    #[arg(long, default_value_t = 1u128 << 36)]
    pub budget: u128,
    /// Codes with at most this many words get the word-by-word run-range checks.
    #[arg(long, default_value_t = 1u128 << 14)]
    pub lemma_cap: u128,
    /// Also run the Gaussian-period identity sweep.
    #[arg(long)]
    pub gauss: bool,
    /// Run only the Gaussian-period identity sweep.
    #[arg(long)]
    pub gauss_only: bool,
    /// Largest field size for the Gaussian-period sweep.
    #[arg(long, default_value_t = 1 << 12)]
    pub gauss_q_max: u64,
}

#[derive(Serialize)]
struct TightRow {
    bound: String,
    enforced: bool,
    applicable: u64,
    tight: u64,
    tight_fraction: f64,
    unsatisfied: u64,
}

fn sweep(a: &SweepArgs, workers: usize) -> Result<Envelope, CliError> {
    let mut fields = Vec::new();
    let mut ok = true;
    if !a.gauss_only {
        let cfg = SweepConfig {
            qs: a.q.clone(),
            n_min: a.n_min,
            n_max: a.n_max,
            b_max: a.b_max,
            workers,
            budget: a.budget,
            lemma_cap: a.lemma_cap,
        };
        let s = cyclic_sweep(&cfg)?;
        ok &= s.passed();
        let table: Vec<TightRow> = s
            .bounds
            .iter()
            .map(|(name, b)| TightRow {
                bound: name.clone(),
                enforced: b.enforced,
                applicable: b.applicable,
                tight: b.tight,
                tight_fraction: sig12(b.tight_fraction()),
                unsatisfied: b.unsatisfied,
            })
            .collect();
        fields.push(("config", serde_json::to_value(&cfg).expect("plain data")));
        fields.push(("passed", json!(s.passed())));
        fields.push(("theta_equality_rate", json!(sig12(s.theta_equality_rate()))));
        fields.push(("tightness", serde_json::to_value(table).expect("plain data")));
        fields.push(("summary", serde_json::to_value(&s).expect("plain data")));
    }
    if a.gauss || a.gauss_only {
        let g = gauss_sweep(&GaussConfig { big_q_max: a.gauss_q_max, workers })?;
        ok &= g.passed();
        fields.push(("gauss_passed", json!(g.passed())));
        let mut v = serde_json::to_value(&g).expect("plain data");
        for key in ["max_residual", "eta_sum_error"] {
            if let Some(x) = v.get(key).and_then(Value::as_f64) {
                v[key] = json!(sig12(x));
            }
        }
        fields.push(("gauss", v));
    }
    Ok(Envelope::new("sweep", ok, object(fields)))
}

#[derive(Debug, Clone, Subcommand)]
pub enum Construct {
    /// Repeat every coordinate b times: W_b of the result is b W_1 of the input.
    Spread {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        b: usize,
    },
    /// Singer difference set of the hyperplanes of PG(m-1, q).
    SingerSet {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// q + 1 binary words with C(q+1, 2) distinct b-distances.
    SingerCode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: usize,
    },
    /// Optimal Golomb ruler with m marks, and its distinct-distance code when b is given.
    Golomb {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Linear code with (q^k - 1)/(q - 1) distinct Hamming weights.
    Mws {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
    },
    /// Linear code with (q^k - 1)/(q - 1) distinct b-symbol weights.
    Mbsw {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: usize,
    },
    /// Code with (q^k - 1)/(q - 1) distinct symplectic weights.
    Symplectic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
    },
}

fn matrix(code: &LinearCode) -> Value {
    json!(code.generator.iter().map(|r| r.iter().map(|&e| code.field.serialize_elem(e)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn certificate(checks: Vec<(&str, Value, Value)>) -> (bool, Value) {
    let rows: Vec<Value> = checks
        .into_iter()
        .map(|(name, expected, observed)| json!({"check": name, "pass": expected == observed, "expected": expected, "observed": observed}))
        .collect();
    let ok = rows.iter().all(|r| r["pass"] == json!(true));
    (ok, Value::Array(rows))
}

fn weight_count(code: &LinearCode, b: usize, workers: usize) -> Result<usize, CliError> {
    Ok(weight_spectrum(code, b, &census_opts(DEFAULT_ENUMERATION_CAP, workers))?.size)
}

fn construct(what: &Construct, workers: usize) -> Result<Envelope, CliError> {
    let (kind, ok, result) = match what {
        Construct::Spread { code, b } => {
            let code = code.spec()?.build()?;
            let base = code.linear().ok_or_else(|| CliError::Parse("spread needs a linear code".into()))?;
            let spread = spread_linear(base, *b)?;
            let opts = census_opts(DEFAULT_ENUMERATION_CAP, workers);
            let w1 = weight_spectrum(base, 1, &opts)?.weights;
            let wb = if *b <= spread.n { weight_spectrum(&spread, *b, &opts)?.weights } else { Vec::new() };
            let scaled: Vec<usize> = w1.iter().map(|w| w * b).collect();
            let (ok, cert) = certificate(vec![("W_b of the spread equals b times W_1", json!(scaled), json!(wb))]);
            ("construct_spread", ok, object(vec![("base", code.describe()), ("b", json!(b)), ("n", json!(spread.n)), ("generator_matrix", matrix(&spread)), ("certificate", cert)]))
        }
        Construct::SingerSet { q, m } => {
            let d = singer_difference_set(*q, *m)?;
            let qm = |e: u32| (q.pow(e) - 1) / (q - 1);
            let (ok, cert) = certificate(vec![
                ("v = (q^m - 1)/(q - 1)", json!(qm(*m)), json!(d.v)),
                ("k = (q^(m-1) - 1)/(q - 1)", json!(qm(*m - 1)), json!(d.k)),
                ("lambda = (q^(m-2) - 1)/(q - 1)", json!(qm(m.saturating_sub(2))), json!(d.lambda)),
                ("every nonzero difference occurs lambda times", json!(true), json!(d.verify())),
            ]);
            ("construct_singer_set", ok, object(vec![("set", serde_json::to_value(&d).expect("plain data")), ("certificate", cert)]))
        }
        Construct::SingerCode { q, b } => {
            let c = singer_unrestricted_code(*q, *b)?;
            let (ok, cert) = certificate(vec![
                ("|D_b| = C(q+1, 2)", json!(unrestricted_max(*q as usize + 1)), json!(c.distances.len())),
                ("length b (q^2 + q + 1)", json!(*b as u64 * (q * q + q + 1)), json!(c.n)),
            ]);
            ("construct_distinct_distance", ok, object(vec![("code", serde_json::to_value(&c).expect("plain data")), ("certificate", cert)]))
        }
        Construct::Golomb { m, b } => {
            let r = golomb_ruler_optimal(*m)?;
            let mut checks = vec![("all pairwise differences distinct", json!(true), json!(r.verify()))];
            let mut fields = vec![("ruler", serde_json::to_value(&r).expect("plain data"))];
            if let Some(b) = b {
                let c = golomb_code(*m, *b)?;
                checks.push(("|D_b| = C(m, 2)", json!(unrestricted_max(*m)), json!(c.distances.len())));
                fields.push(("code", serde_json::to_value(&c).expect("plain data")));
            }
            let (ok, cert) = certificate(checks);
            fields.push(("certificate", cert));
            ("construct_golomb", ok, object(fields))
        }
        Construct::Mws { k, q } => {
            let c = mws_linear_code(*k, *q)?;
            let (ok, cert) = certificate(vec![("|W_1| = (q^k - 1)/(q - 1)", json!(linear_max_weights(*k, *q)), json!(weight_count(&c, 1, workers)?))]);
            ("construct_linear", ok, object(vec![("n", json!(c.n)), ("k", json!(c.k)), ("q", json!(q)), ("generator_matrix", matrix(&c)), ("certificate", cert)]))
        }
        Construct::Mbsw { k, q, b } => {
            let c = mbsw_code(*k, *q, *b)?;
            let (ok, cert) = certificate(vec![("|W_b| = (q^k - 1)/(q - 1)", json!(linear_max_weights(*k, *q)), json!(weight_count(&c, *b, workers)?))]);
            ("construct_linear", ok, object(vec![("n", json!(c.n)), ("k", json!(c.k)), ("q", json!(q)), ("b", json!(b)), ("generator_matrix", matrix(&c)), ("certificate", cert)]))
        }
        Construct::Symplectic { k, q } => {
            let c = symplectic_mws_code(*k, *q)?;
            let mut seen = std::collections::BTreeSet::new();
            for w in enumerate_codewords(&c, DEFAULT_ENUMERATION_CAP)? {
                let w = Word::new(&c.field, w)?;
                if !w.is_zero() {
                    seen.insert(symplectic_weight(&w)?);
                }
            }
            let (ok, cert) = certificate(vec![("distinct symplectic weights = (q^k - 1)/(q - 1)", json!(linear_max_weights(*k, *q)), json!(seen.len()))]);
            ("construct_linear", ok, object(vec![("n", json!(c.n)), ("k", json!(c.k)), ("q", json!(q)), ("generator_matrix", matrix(&c)), ("certificate", cert)]))
        }
    };
    Ok(Envelope::new(kind, ok, result))
}

#[derive(Debug, Clone, Args)]
pub struct GaussArgs {
    #[arg(long = "Q")]
    pub big_q: u64,
    /// Subfield size; defaults to the prime subfield.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long = "N")]
    pub big_n: u64,
    #[arg(long)]
    pub b: usize,
}

fn gauss(a: &GaussArgs) -> Result<Envelope, CliError> {
    let big = FieldTable::of_size(a.big_q)?;
    let small = FieldTable::of_size(a.q.unwrap_or(big.p() as u64))?;
    let params = TraceCodeParams::with_big(&small, &big, a.big_n)?;
    let n = params.n;
    if a.b == 0 || a.b > n {
        return Err(CliError::Parse(format!("b = {} outside [1, {n}]", a.b)));
    }
    let eta = gaussian_periods(&big, params.n1)?;
    let pairs: Vec<[f64; 2]> = eta.eta.iter().map(|z| [z.re, z.im]).collect();
    let (weights, u_table, basis) = if a.b < params.m0 as usize {
        let u = u_set_sizes(a.b, &params)?;
        let w = class_weights(&params, &eta, &u)?;
        (w.weights, Some(u), "gaussian_periods")
    } else {
        // every window of length m0 meets every nonzero codeword
        (vec![n as u64; params.n1 as usize], None, "b_at_least_m0")
    };
    let code = TraceCode::new(params.clone())?;
    let mut mismatches = 0u64;
    let mut checked = 0u64;
    for beta in 1..big.q() as Elem {
        let class = cyclotomic_class_index(&big, beta, params.n1)? as usize;
        checked += 1;
        if direct_weights(&code, beta, a.b)[a.b - 1] as u64 != weights[class] {
            mismatches += 1;
        }
    }
    let ok = mismatches == 0;
    let result = object(vec![
        ("params", serde_json::to_value(params.summary()).expect("plain data")),
        ("b", json!(a.b)),
        ("eta", complex_table(&pairs)),
        ("eta_sum_residual", json!(sig12(eta.residual))),
        ("u_sets", serde_json::to_value(&u_table).expect("plain data")),
        ("class_weights", json!(weights)),
        ("weights_from", json!(basis)),
        ("certificate", json!({"betas_checked": checked, "mismatches": mismatches})),
    ]);
    Ok(Envelope::new("gauss", ok, result))
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Rerun the worked example a = 01001000100.
    #[arg(long)]
    pub worked_example: bool,
    /// Compare w_b from the definition, from zero runs and as the Hamming weight of pi_b
    /// on random words.
    #[arg(long)]
    pub three_way: bool,
    /// Compare the symplectic weight with w_H of the pair packing on random words.
    #[arg(long)]
    pub symplectic: bool,
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long, default_value_t = 24)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// The worked example: `a = 01001000100` has one zero run of length 2, two of length 3,
/// and `w_b = 3, 6, 9, 11` for `b = 1..4`.
pub fn worked_example() -> Result<Vec<(String, Value, Value)>, CliError> {
    let f2 = FieldTable::of_size(2)?;
    let a = Word::new(&f2, parse_digits("01001000100", &f2)?)?;
    let rd = run_distribution(&a);
    let mut checks = vec![
        ("runs of length 2".to_string(), json!(1), json!(rd.psi[2])),
        ("runs of length 3".to_string(), json!(2), json!(rd.psi[3])),
    ];
    for (b, expected) in [(1, 3), (2, 6), (3, 9), (4, 11)] {
        checks.push((format!("w_{b}"), json!(expected), json!(b_weight_direct(&a, b)?)));
        checks.push((format!("w_{b} from runs"), json!(expected), json!(b_weight_from_runs(&rd, b, a.len())?)));
    }
    Ok(checks)
}

fn random_word(rng: &mut ChaCha8Rng, f: &bsymbol::algebra::Field, n: usize) -> Result<Word, CliError> {
    Ok(Word::new(f, (0..n).map(|_| rng.gen_range(0..f.q())).collect())?)
}

fn verify(a: &VerifyArgs) -> Result<Envelope, CliError> {
    if !(a.worked_example || a.three_way || a.symplectic) {
        return Err(CliError::Parse("choose --worked-example, --three-way or --symplectic".into()));
    }
    let mut checks: Vec<(String, Value, Value)> = Vec::new();
    if a.worked_example {
        checks.extend(worked_example()?);
    }
    let f = FieldTable::of_size(a.q)?;
    if a.three_way {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut bad = 0u64;
        for _ in 0..a.samples {
            // sparse words exercise long zero runs
            let mut x = random_word(&mut rng, &f, a.n)?;
            let density = rng.gen_range(0.0..1.0);
            x.entries.iter_mut().for_each(|e| {
                if rng.gen_bool(density) {
                    *e = 0
                }
            });
            let rd = run_distribution(&x);
            for b in 1..=a.n {
                let direct = b_weight_direct(&x, b)?;
                let runs = b_weight_from_runs(&rd, b, a.n)?;
                let windows = pi_b(&x, b)?.iter().filter(|w| hamming_weight(w) > 0).count();
                if direct != runs || direct != windows {
                    bad += 1;
                }
            }
        }
        checks.push(("three-way weight mismatches".into(), json!(0), json!(bad)));
    }
    if a.symplectic {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed ^ 0x5eed);
        let mut bad = 0u64;
        for _ in 0..a.samples {
            let x = random_word(&mut rng, &f, 2 * a.n)?;
            if symplectic_weight(&x)? != hamming_weight(&phi_prime(&x)?.entries) {
                bad += 1;
            }
        }
        checks.push(("symplectic weight mismatches".into(), json!(0), json!(bad)));
    }
    let rows: Vec<(&str, Value, Value)> = checks.iter().map(|(n, e, o)| (n.as_str(), e.clone(), o.clone())).collect();
    let (ok, cert) = certificate(rows);
    let mut fields = vec![("checks", cert)];
    if a.three_way || a.symplectic {
        fields.push(("random", json!({"q": a.q, "n": a.n, "samples": a.samples, "seed": a.seed})));
    }
    Ok(Envelope::new("verify", ok, object(fields)))
}
