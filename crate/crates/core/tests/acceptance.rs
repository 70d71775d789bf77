//! Acceptance checks, one line per criterion. Runs without the test harness so the
//! lines always appear; exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bsymbol::algebra::{gcd, CyclotomicFactorization, FieldTable};
use bsymbol::bounds::linear_max_weights;
use bsymbol::codes::{enumerate_codewords, simplex_code, CodeSpace, CyclicCode};
use bsymbol::constructions::{golomb_ruler_optimal, mbsw_code, singer_difference_set, singer_unrestricted_code, symplectic_mws_code};
use bsymbol::spectra::{weight_spectrum, CensusOptions};
use bsymbol::sweep::{cyclic_sweep, gauss_sweep, GaussConfig, SweepConfig, SweepSummary};
use bsymbol::vectors::{
    b_weight_direct, b_weight_from_runs, hamming_weight, phi_prime, pi_b, run_distribution, symplectic_weight, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240229;
const RANDOM_WORDS: usize = 100_000;
/// Largest accepted numeric residual of a Gaussian-period evaluation.
const RESIDUAL_TOL: f64 = 1e-6;

const LIMIT_WORKED: Duration = Duration::from_millis(1);
const LIMIT_THREE_WAY: Duration = Duration::from_secs(30);
const LIMIT_SWEEP: Duration = Duration::from_secs(600);
const LIMIT_GAUSS: Duration = Duration::from_secs(300);
const LIMIT_SINGER_GOLOMB: Duration = Duration::from_secs(120);

/// Optimal Golomb ruler lengths for 1 to 8 marks.
const GOLOMB_LENGTHS: [u64; 8] = [0, 1, 3, 6, 11, 17, 25, 34];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn words_equal_three_ways(x: &Word) -> bool {
    let rd = run_distribution(x);
    let n = x.len();
    (1..=n).all(|b| {
        let direct = b_weight_direct(x, b).unwrap();
        direct == b_weight_from_runs(&rd, b, n).unwrap()
            && direct == pi_b(x, b).unwrap().iter().filter(|w| hamming_weight(w) > 0).count()
    })
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let f2 = FieldTable::of_size(2).unwrap();
    let a = Word::new(&f2, vec![0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0]).unwrap();
    let rd = run_distribution(&a);
    let w: Vec<usize> = (1..=4).map(|b| b_weight_direct(&a, b).unwrap()).collect();
    let from_runs: Vec<usize> = (1..=4).map(|b| b_weight_from_runs(&rd, b, 11).unwrap()).collect();
    let took = start.elapsed();
    let pass = rd.psi[2] == 1 && rd.psi[3] == 2 && w == [3, 6, 9, 11] && from_runs == w && took < LIMIT_WORKED;
    outcome(pass, format!("Psi(0_2) = {}, Psi(0_3) = {}, w_1..4 = {w:?}, {took:?} (limit {LIMIT_WORKED:?})", rd.psi[2], rd.psi[3]))
}

fn three_way() -> Outcome {
    let start = Instant::now();
    let f2 = FieldTable::of_size(2).unwrap();
    let mut exhaustive = 0u64;
    let mut mismatches = 0u64;
    for n in 1..=12usize {
        for bits in 0u32..1 << n {
            let x = Word::new(&f2, (0..n).map(|i| bits >> i & 1).collect()).unwrap();
            exhaustive += 1;
            mismatches += u64::from(!words_equal_three_ways(&x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for q in [3u64, 4, 5] {
        let f = FieldTable::of_size(q).unwrap();
        for _ in 0..RANDOM_WORDS {
            let n = rng.gen_range(1..=24);
            // a random zero density gives long runs as often as short ones
            let density: f64 = rng.gen_range(0.0..1.0);
            let x: Vec<u32> = (0..n).map(|_| if rng.gen_bool(density) { 0 } else { rng.gen_range(1..q as u32) }).collect();
            mismatches += u64::from(!words_equal_three_ways(&Word::new(&f, x).unwrap()));
        }
    }
    let took = start.elapsed();
    outcome(
        mismatches == 0 && took < LIMIT_THREE_WAY,
        format!("{exhaustive} binary words (n <= 12) and {} random words over F_3, F_4, F_5 (n <= 24): {mismatches} mismatches, {took:.2?} (limit {LIMIT_THREE_WAY:?})", 3 * RANDOM_WORDS),
    )
}

fn sweep_criterion(s: &SweepSummary, took: Duration) -> Outcome {
    let required = ["delta", "period", "idempotent", "b_at_least_k", "distance_floor"];
    let missing: Vec<&str> = required.iter().copied().filter(|name| s.bounds.get(*name).is_none_or(|b| b.applicable == 0)).collect();
    let unsatisfied: u64 = s.bounds.values().filter(|b| b.enforced).map(|b| b.unsatisfied).sum();
    let optional: Vec<String> = ["prime_length", "two_zero"]
        .iter()
        .map(|name| format!("{name} {}", s.bounds.get(*name).map_or(0, |b| b.applicable)))
        .collect();
    let pass = s.passed() && missing.is_empty() && unsatisfied == 0 && s.theta.within == s.codes && took < LIMIT_SWEEP;
    outcome(
        pass,
        format!(
            "{} codes, {} (code, b) pairs, {} violations, enforced bounds unsatisfied {unsatisfied}, applicable {}; theta <= k - 1 in {}/{} codes, theta = k - 1 rate {:.4}; {took:.1?} single-threaded (limit {LIMIT_SWEEP:?})",
            s.codes,
            s.pairs,
            s.violation_count,
            optional.join(", "),
            s.theta.within,
            s.codes,
            s.theta_equality_rate(),
        ),
    )
}

fn periods_criterion(s: &SweepSummary) -> Outcome {
    let p = &s.periods;
    let pass = p.mismatches == 0
        && p.vs_bruteforce + p.vs_fixed_space == s.codes
        && p.sum_checked == s.codes
        && p.sum_failures == 0
        && p.integral_checked == s.codes
        && p.integral_failures == 0;
    outcome(
        pass,
        format!(
            "formula vs enumeration on {} codes and vs fixed-space ranks on {} codes: {} mismatches; sum = q^k - 1 failures {}; non-integral orbit terms {}",
            p.vs_bruteforce, p.vs_fixed_space, p.mismatches, p.sum_failures, p.integral_failures
        ),
    )
}

fn gauss() -> Outcome {
    let start = Instant::now();
    let g = gauss_sweep(&GaussConfig { big_q_max: 1 << 12, workers: 1 }).unwrap();
    let took = start.elapsed();
    let pass = g.passed() && g.max_residual < RESIDUAL_TOL && g.eta_sum_error < RESIDUAL_TOL && g.comparisons > 0 && took < LIMIT_GAUSS;
    outcome(
        pass,
        format!(
            "{} codes over {} field pairs, {} comparisons, {} mismatches, max residual {:.1e}, max |sum eta + 1| {:.1e} (tolerance {RESIDUAL_TOL:.0e}), {took:.2?} (limit {LIMIT_GAUSS:?})",
            g.codes, g.field_pairs, g.comparisons, g.mismatches, g.max_residual, g.eta_sum_error
        ),
    )
}

fn mbsw() -> Outcome {
    let cases = [(2usize, 2u64, 3u128), (3, 2, 7), (4, 2, 15), (2, 3, 4), (3, 3, 13), (2, 4, 5)];
    let mut failures = Vec::new();
    let mut checked = 0;
    for (k, q, expected) in cases {
        assert_eq!(linear_max_weights(k, q), expected);
        for b in 1..=3 {
            let code = mbsw_code(k, q, b).unwrap();
            let size = weight_spectrum(&code, b, &CensusOptions::default()).unwrap().size;
            checked += 1;
            if size as u128 != expected {
                failures.push(format!("(k, q, b) = ({k}, {q}, {b}): {size}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} codes with |W_b| = 3, 7, 15, 4, 13, 5 for b = 1..3; failures {failures:?}"))
}

fn singer_golomb() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (q, m) in [(2u64, 3u32), (2, 4), (3, 3), (4, 3)] {
        let d = singer_difference_set(q, m).unwrap();
        let v = (q.pow(m) - 1) / (q - 1);
        let k = (q.pow(m - 1) - 1) / (q - 1);
        let lambda = (q.pow(m - 2) - 1) / (q - 1);
        if !(d.verify() && d.v == v && d.k as u64 == k && d.lambda == lambda) {
            failures.push(format!("singer set ({q}, {m})"));
        }
    }
    for q in 2..=5u64 {
        for b in 1..=3 {
            let c = singer_unrestricted_code(q, b).unwrap();
            if c.distances.len() as u64 != (q + 1) * q / 2 {
                failures.push(format!("singer code q = {q}, b = {b}: {} distances", c.distances.len()));
            }
        }
    }
    let lengths: Vec<u64> = (1..=8).map(|m| golomb_ruler_optimal(m).unwrap().length).collect();
    if lengths != GOLOMB_LENGTHS {
        failures.push(format!("golomb lengths {lengths:?}"));
    }
    let took = start.elapsed();
    outcome(
        failures.is_empty() && took < LIMIT_SINGER_GOLOMB,
        format!("4 difference sets, 12 Singer codes with |D_b| = C(q+1, 2), G(1..8) = {lengths:?}; failures {failures:?}, {took:.2?} (limit {LIMIT_SINGER_GOLOMB:?})"),
    )
}

/// Cyclic codes of the sweep small enough to enumerate at `b = k`.
fn top_window_weights() -> (u64, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let f = FieldTable::of_size(q).unwrap();
        for n in 2..=20usize {
            if gcd(n as u64, q) != 1 {
                continue;
            }
            let fact = Arc::new(CyclotomicFactorization::new(n, &f).unwrap());
            let r = fact.len();
            for mask in 1..(1u64 << r) - 1 {
                let code = CyclicCode::from_factor_subset(&fact, (0..r).map(|i| mask >> i & 1 == 1).collect()).unwrap();
                if code.size() > 1 << 16 {
                    continue;
                }
                checked += 1;
                let w = weight_spectrum(&code, code.k, &CensusOptions::default()).unwrap().weights;
                if w != [n] {
                    failures.push(format!("{}: W_k = {w:?}", code.label()));
                }
            }
        }
    }
    (checked, failures)
}

fn simplex(s: &SweepSummary) -> Outcome {
    let f2 = FieldTable::of_size(2).unwrap();
    let mut failures = Vec::new();
    for k0 in [2usize, 3, 5] {
        let code = simplex_code(k0, &f2).unwrap();
        for b in 1..=k0 {
            let w = weight_spectrum(&code, b, &CensusOptions::default()).unwrap();
            if w.size != 1 {
                failures.push(format!("[{}, {k0}] b = {b}: {:?}", code.length(), w.weights));
            }
        }
    }
    let (checked, top) = top_window_weights();
    failures.extend(top);
    let b_at_least_k = s.bounds.get("b_at_least_k").cloned().unwrap_or_default();
    let pass = failures.is_empty() && b_at_least_k.unsatisfied == 0 && s.theta.within == s.codes;
    outcome(
        pass,
        format!(
            "simplex [3,2], [7,3], [31,5] single weight for every b <= k0; W_k = {{n}} by enumeration on {checked} sweep codes and |W_b| = 1 for b >= k on {} (code, b) pairs; failures {failures:?}",
            b_at_least_k.applicable
        ),
    )
}

fn symplectic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    let mut mismatches = 0;
    let fields: Vec<_> = [2u64, 3, 4, 5].iter().map(|&q| FieldTable::of_size(q).unwrap()).collect();
    for _ in 0..RANDOM_WORDS {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(1..=12);
        let density: f64 = rng.gen_range(0.0..1.0);
        let x: Vec<u32> = (0..2 * n).map(|_| if rng.gen_bool(density) { 0 } else { rng.gen_range(1..f.q()) }).collect();
        let x = Word::new(f, x).unwrap();
        if symplectic_weight(&x).unwrap() != hamming_weight(&phi_prime(&x).unwrap().entries) {
            mismatches += 1;
        }
    }
    let mut attained = Vec::new();
    let mut pass = mismatches == 0;
    for (k, q) in [(2usize, 2u64), (2, 3)] {
        let code = symplectic_mws_code(k, q).unwrap();
        let mut weights: Vec<usize> = enumerate_codewords(&code, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|w| w.iter().any(|&e| e != 0))
            .map(|w| symplectic_weight(&Word::new(&code.field, w).unwrap()).unwrap())
            .collect();
        weights.sort_unstable();
        weights.dedup();
        pass &= weights.len() as u128 == linear_max_weights(k, q);
        attained.push(format!("(k, q) = ({k}, {q}): {} of {}", weights.len(), linear_max_weights(k, q)));
    }
    outcome(pass, format!("{RANDOM_WORDS} random words: {mismatches} mismatches; maximum attained {}", attained.join(", ")))
}

fn discrepancies(s: &SweepSummary, periods_pass: bool) -> Outcome {
    let (bch, rs) = (&s.bch_printed, &s.rs_printed);
    let first = bch.examples.first().or(rs.examples.first()).cloned().unwrap_or_default();
    // evaluated on every eligible code, reported rather than asserted, with the general
    // formula still matching exact counts
    let pass = bch.codes > 0 && rs.codes > 0 && periods_pass;
    outcome(
        pass,
        format!(
            "reported only: BCH closed forms on {} codes ({} with wrong fixed counts, {} non-integral, {} outside every regime); RS closed form on {} codes ({} wrong, {} non-integral); e.g. \"{first}\"",
            bch.codes, bch.fixed_count_mismatches, bch.non_integral, bch.unsupported, rs.codes, rs.fixed_count_mismatches, rs.non_integral
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |id: u32, name: &'static str, o: Outcome| {
        println!("criterion {id:>2} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o));
    };

    report(1, "worked example", worked_example());
    report(2, "three-way weight agreement", three_way());

    let start = Instant::now();
    let summary = cyclic_sweep(&SweepConfig { workers: 1, ..SweepConfig::default() }).unwrap();
    let took = start.elapsed();
    report(3, "cyclic soundness sweep", sweep_criterion(&summary, took));
    let periods = periods_criterion(&summary);
    let periods_pass = periods.pass;
    report(4, "period distribution oracles", periods);
    report(5, "Gaussian-period identity", gauss());
    report(6, "maximum b-symbol weight count attained", mbsw());
    report(7, "Singer and Golomb certificates", singer_golomb());
    report(8, "simplex single weight", simplex(&summary));
    report(9, "symplectic weights", symplectic());
    report(10, "closed-form discrepancies reported", discrepancies(&summary, periods_pass));

    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}
