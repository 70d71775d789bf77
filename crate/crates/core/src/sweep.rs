//! Exhaustive soundness sweeps: every cyclic code of small length checked against every
//! bound and structural invariant, and the Gaussian-period weight formula checked against
//! direct computation on every irreducible trace code of a small field.
//!
//! Results are merged in a fixed job order, so a summary does not depend on the number
//! of workers.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::arith::{checked_pow, divisors, gcd, prime_power};
use crate::algebra::{CyclotomicFactorization, Elem, FieldTable};
use crate::bounds::{
    bch_fixed_counts, bose_distance, bound_report, is_reed_solomon, rs_fixed_counts, BoundReport, ExactData, Real,
};
use crate::characters::{class_weights, cyclotomic_class_index, gaussian_periods, u_set_sizes, RESIDUAL_TOLERANCE};
use crate::codes::{for_each_codeword, CyclicCode, TraceCodeParams};
use crate::error::{Error, Result};
use crate::spectra::{
    census, orbit_count_burnside, period_distribution_fixed_space, period_distribution_formula, projective_count,
    trellis_cost, trellis_weights, CensusOptions, PeriodDistribution, SpectrumMethod,
};
use crate::vectors::run_distribution_slice;

/// How many individual failures or examples a summary keeps.
pub const MAX_RECORDED: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub qs: Vec<u64>,
    pub n_min: usize,
    pub n_max: usize,
    /// Largest `b` checked; `None` means every `b` in `[1, k]`.
    pub b_max: Option<usize>,
    pub workers: usize,
    /// Largest acceptable operation count for the exact spectrum of one code.
    pub budget: u128,
    /// Codes with at most this many words get the word-by-word run-range checks.
    pub lemma_cap: u128,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { qs: vec![2, 3, 4, 5], n_min: 2, n_max: 20, b_max: None, workers: 1, budget: 1 << 36, lemma_cap: 1 << 14 }
    }
}

/// A failed check that the sweep enforces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: String,
    pub b: Option<usize>,
    pub check: String,
    pub detail: String,
}

/// Per-bound tallies over all `(code, b)` pairs where the bound was evaluated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundStats {
    pub enforced: bool,
    pub applicable: u64,
    pub satisfied: u64,
    pub unsatisfied: u64,
    pub tight: u64,
    /// Applicable entries whose value differs from the period bound.
    pub differs_from_period: u64,
}

impl BoundStats {
    pub fn tight_fraction(&self) -> f64 {
        if self.applicable == 0 {
            0.0
        } else {
            self.tight as f64 / self.applicable as f64
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ThetaStats {
    /// Codes with every codeword's longest zero run at most `k - 1`.
    pub within: u64,
    /// Codes where some codeword reaches `k - 1`.
    pub equal: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PeriodStats {
    /// Formula compared with the census tally of every codeword.
    pub vs_bruteforce: u64,
    /// Formula compared with the rank-based fixed-space counts (codes too large to enumerate).
    pub vs_fixed_space: u64,
    pub mismatches: u64,
    pub sum_checked: u64,
    pub sum_failures: u64,
    pub integral_checked: u64,
    pub integral_failures: u64,
}

/// Whether `sum_t B_t / lcm(t, q - 1)` equals the exact number of orbits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    pub compared: u64,
    pub equal: u64,
    /// Codes over `F_2`, where every scaling is trivial.
    pub binary_compared: u64,
    pub binary_equal: u64,
}

/// Word-by-word checks of where `w_b` can lie given the longest zero run `i`:
/// `w_b = n` for `b > i`; `n - floor(n/(i+1)) <= w_i <= n - 1`; and for `b < i`, with
/// `m = i - b`, the claimed `n - (m+1) floor(n/(b+m+1)) <= w_b <= n - (m+1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunRangeStats {
    pub codes: u64,
    pub codes_skipped: u64,
    pub words: u64,
    pub above_run_failures: u64,
    pub at_run_failures: u64,
    /// Reported only: the lower end of the third range does not hold in general.
    pub below_run_lower_failures: u64,
    pub below_run_upper_failures: u64,
    pub below_run_examples: Vec<String>,
}

/// Agreement of a printed closed form with the exact period distribution.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PrintedStats {
    pub codes: u64,
    /// Codes whose designed distance falls in no printed regime.
    pub unsupported: u64,
    /// Codes with some fixed-point count `A_j` differing from the true one.
    pub fixed_count_mismatches: u64,
    /// Codes whose printed counts involve a non-integral exponent.
    pub non_integral: u64,
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub codes: u64,
    pub pairs: u64,
    pub enumerated: u64,
    pub trellis: u64,
    pub skipped: Vec<String>,
    pub bounds: BTreeMap<String, BoundStats>,
    pub theta: ThetaStats,
    pub periods: PeriodStats,
    pub orbits: OrbitStats,
    pub run_ranges: RunRangeStats,
    pub bch_printed: PrintedStats,
    pub rs_printed: PrintedStats,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl SweepSummary {
    /// No enforced check failed and no code was skipped.
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.skipped.is_empty()
    }

    pub fn theta_equality_rate(&self) -> f64 {
        if self.codes == 0 {
            0.0
        } else {
            self.theta.equal as f64 / self.codes as f64
        }
    }

    fn violate(&mut self, code: &str, b: Option<usize>, check: &str, detail: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation { code: code.to_string(), b, check: check.to_string(), detail });
        }
    }

    fn absorb(&mut self, o: SweepSummary) {
        self.codes += o.codes;
        self.pairs += o.pairs;
        self.enumerated += o.enumerated;
        self.trellis += o.trellis;
        self.skipped.extend(o.skipped);
        for (name, s) in o.bounds {
            let e = self.bounds.entry(name).or_default();
            e.enforced = s.enforced;
            e.applicable += s.applicable;
            e.satisfied += s.satisfied;
            e.unsatisfied += s.unsatisfied;
            e.tight += s.tight;
            e.differs_from_period += s.differs_from_period;
        }
        self.theta.within += o.theta.within;
        self.theta.equal += o.theta.equal;
        let (p, q) = (&mut self.periods, o.periods);
        p.vs_bruteforce += q.vs_bruteforce;
        p.vs_fixed_space += q.vs_fixed_space;
        p.mismatches += q.mismatches;
        p.sum_checked += q.sum_checked;
        p.sum_failures += q.sum_failures;
        p.integral_checked += q.integral_checked;
        p.integral_failures += q.integral_failures;
        self.orbits.compared += o.orbits.compared;
        self.orbits.equal += o.orbits.equal;
        self.orbits.binary_compared += o.orbits.binary_compared;
        self.orbits.binary_equal += o.orbits.binary_equal;
        let (r, s) = (&mut self.run_ranges, o.run_ranges);
        r.codes += s.codes;
        r.codes_skipped += s.codes_skipped;
        r.words += s.words;
        r.above_run_failures += s.above_run_failures;
        r.at_run_failures += s.at_run_failures;
        r.below_run_lower_failures += s.below_run_lower_failures;
        r.below_run_upper_failures += s.below_run_upper_failures;
        extend_capped(&mut r.below_run_examples, s.below_run_examples);
        absorb_printed(&mut self.bch_printed, o.bch_printed);
        absorb_printed(&mut self.rs_printed, o.rs_printed);
        self.violation_count += o.violation_count;
        extend_capped(&mut self.violations, o.violations);
    }
}

fn extend_capped<T>(v: &mut Vec<T>, more: Vec<T>) {
    let room = MAX_RECORDED.saturating_sub(v.len());
    v.extend(more.into_iter().take(room));
}

fn absorb_printed(a: &mut PrintedStats, b: PrintedStats) {
    a.codes += b.codes;
    a.unsupported += b.unsupported;
    a.fixed_count_mismatches += b.fixed_count_mismatches;
    a.non_integral += b.non_integral;
    extend_capped(&mut a.examples, b.examples);
}

/// One cyclic code of the sweep.
struct Job {
    fact: Arc<CyclotomicFactorization>,
    in_g: Vec<bool>,
}

fn jobs(cfg: &SweepConfig) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let field = FieldTable::of_size(q)?;
        for n in cfg.n_min.max(2)..=cfg.n_max {
            if gcd(n as u64, q) != 1 {
                continue;
            }
            let fact = Arc::new(CyclotomicFactorization::new(n, &field)?);
            let r = fact.len();
            if r > 24 {
                return Err(Error::CapExceeded { what: "irreducible factors", value: r as u128, cap: 24 });
            }
            // mask bit i set: factor i divides g; skip g = 1 and g = x^n - 1
            for mask in 1u32..(1 << r) - 1 {
                out.push(Job { fact: fact.clone(), in_g: (0..r).map(|i| mask >> i & 1 == 1).collect() });
            }
        }
    }
    Ok(out)
}

/// Runs the cyclic soundness sweep.
pub fn cyclic_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    let jobs = jobs(cfg)?;
    let slots: Vec<Mutex<Option<SweepSummary>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(job) = jobs.get(i) else { break };
        let s = check_code(cfg, job);
        *slots[i].lock().expect("no worker panicked") = Some(s);
    };
    let workers = cfg.workers.max(1);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    let mut total = SweepSummary::default();
    for slot in slots {
        total.absorb(slot.into_inner().expect("no worker panicked").expect("every job ran"));
    }
    Ok(total)
}

/// Exact `W_1, ..., W_{b_max}`, the longest zero run over the code, and the period
/// distribution when the code was enumerated.
struct Exact {
    weights: Vec<Vec<usize>>,
    theta: usize,
    census_periods: Option<PeriodDistribution>,
    method: SpectrumMethod,
}

fn exact_spectra(code: &CyclicCode, b_max: usize, budget: u128) -> Result<Exact> {
    let (n, k, q) = (code.n, code.k, code.q());
    let enum_cost = projective_count(q, k).map_or(u128::MAX, |p| p.saturating_mul(n as u128));
    let trellis_total = (1..=b_max).map(|b| trellis_cost(q, n - k, b, n)).fold(0u128, |a, c| a.saturating_add(c));
    if enum_cost <= trellis_total {
        if enum_cost > budget {
            return Err(Error::CapExceeded { what: "enumeration cost", value: enum_cost, cap: budget });
        }
        let c = census(code, &CensusOptions { b_max, cap: u128::MAX, ranges: false, ..CensusOptions::default() })?;
        let counts = divisors(n as u64).into_iter().map(|t| (t as usize, c.periods[t as usize] as u128)).collect();
        return Ok(Exact {
            weights: (1..=b_max).map(|b| c.weights(b)).collect(),
            theta: c.max_theta(),
            census_periods: Some(PeriodDistribution { n, counts }),
            method: SpectrumMethod::Enumeration,
        });
    }
    if trellis_total > budget {
        return Err(Error::CapExceeded { what: "trellis cost", value: trellis_total, cap: budget });
    }
    let weights: Vec<Vec<usize>> = (1..=b_max).map(|b| trellis_weights(code, b, u128::MAX)).collect::<Result<_>>()?;
    // some word has a zero run of length b exactly when some w_b falls below n
    let theta = (1..=b_max).rev().find(|&b| weights[b - 1].first().is_some_and(|&w| w < n)).unwrap_or(0);
    Ok(Exact { weights, theta, census_periods: None, method: SpectrumMethod::Trellis })
}

fn check_code(cfg: &SweepConfig, job: &Job) -> SweepSummary {
    let mut s = SweepSummary { codes: 1, ..SweepSummary::default() };
    let code = match CyclicCode::from_factor_subset(&job.fact, job.in_g.clone()) {
        Ok(c) => c,
        Err(e) => {
            s.skipped.push(format!("n={} mask={:?}: {e}", job.fact.n, job.in_g));
            return s;
        }
    };
    let label = code.label();
    let (k, q) = (code.k, code.q());
    let b_top = cfg.b_max.unwrap_or(k).min(k);
    // the census always runs to b = k so that the longest zero run is known
    let exact = match exact_spectra(&code, k, cfg.budget) {
        Ok(x) => x,
        Err(e) => {
            s.skipped.push(format!("{label}: {e}"));
            return s;
        }
    };
    match exact.method {
        SpectrumMethod::Enumeration => s.enumerated += 1,
        SpectrumMethod::Trellis => s.trellis += 1,
    }
    let d = exact.weights[0].first().copied().unwrap_or(0);

    if exact.theta < k {
        s.theta.within += 1;
    } else {
        s.violate(&label, None, "theta", format!("longest zero run {} exceeds k - 1 = {}", exact.theta, k - 1));
    }
    if exact.theta + 1 == k {
        s.theta.equal += 1;
    }

    for b in 1..=b_top {
        s.pairs += 1;
        let data = ExactData { spectrum_size: exact.weights[b - 1].len(), min_distance: d };
        match bound_report(&code, b, Some(data)) {
            Ok(r) => tally_report(&mut s, &label, &r),
            Err(e) => s.violate(&label, Some(b), "bound_report", e.to_string()),
        }
    }

    check_periods(&mut s, &code, &label, exact.census_periods.as_ref());
    check_orbits(&mut s, &code, &label);
    if checked_pow(q, k as u64).is_some_and(|size| size <= cfg.lemma_cap) {
        check_run_ranges(&mut s, &code, &label);
    } else {
        s.run_ranges.codes_skipped += 1;
    }
    check_printed(&mut s, &code, &label);
    s
}

fn tally_report(s: &mut SweepSummary, label: &str, r: &BoundReport) {
    let period = r.entry("period").and_then(|e| e.value.clone());
    for e in &r.entries {
        let st = s.bounds.entry(e.name.to_string()).or_default();
        st.enforced = e.enforced;
        if !e.applicable || e.satisfied.is_none() {
            continue;
        }
        st.applicable += 1;
        if e.satisfied == Some(true) {
            st.satisfied += 1;
        } else {
            st.unsatisfied += 1;
        }
        if e.tight == Some(true) {
            st.tight += 1;
        }
        if let Some(p) = &period {
            let differs = match (&e.value, e.approx) {
                (Some(v), _) => v != p,
                (None, Some(a)) => (a - p.0.to_f64().unwrap_or(f64::INFINITY)).abs() > 1e-9 * a.abs().max(1.0),
                (None, None) => false,
            };
            if differs && e.quantity == crate::bounds::Quantity::SpectrumSize {
                st.differs_from_period += 1;
            }
        }
    }
    for e in r.entries.iter().filter(|e| e.violated()) {
        let shown = |v: &Option<crate::bounds::Num>| v.as_ref().map_or("?".to_string(), |x| x.0.to_string());
        s.violate(label, Some(r.b), e.name, format!("observed {} against {:?} {}", shown(&e.observed), e.direction, shown(&e.value)));
    }
    for msg in &r.disagreements {
        s.violate(label, Some(r.b), "disagreement", msg.clone());
    }
}

fn check_periods(s: &mut SweepSummary, code: &CyclicCode, label: &str, brute: Option<&PeriodDistribution>) {
    let q = code.q();
    let formula = match period_distribution_formula(code) {
        Ok(f) => f,
        Err(e) => return s.violate(label, None, "period_formula", e.to_string()),
    };
    let oracle = match brute {
        Some(b) => {
            s.periods.vs_bruteforce += 1;
            b.clone()
        }
        None => match period_distribution_fixed_space(code) {
            Ok(f) => {
                s.periods.vs_fixed_space += 1;
                f
            }
            Err(e) => return s.violate(label, None, "period_oracle", e.to_string()),
        },
    };
    if formula != oracle {
        s.periods.mismatches += 1;
        s.violate(label, None, "period_distribution", format!("formula {:?} vs oracle {:?}", formula.support(), oracle.support()));
    }
    s.periods.sum_checked += 1;
    let expected = checked_pow(q, code.k as u64).map(|v| v - 1);
    if Some(formula.total()) != expected {
        s.periods.sum_failures += 1;
        s.violate(label, None, "period_sum", format!("sum of B_t is {} instead of q^k - 1", formula.total()));
    }
    s.periods.integral_checked += 1;
    if let Err(e) = formula.orbit_terms(q, 0) {
        s.periods.integral_failures += 1;
        s.violate(label, None, "orbit_term_integrality", e.to_string());
    }
}

fn check_orbits(s: &mut SweepSummary, code: &CyclicCode, label: &str) {
    let q = code.q();
    let Ok(formula) = period_distribution_formula(code) else { return };
    let (Ok(sum), Ok(orbits)) = (formula.orbit_sum(q, 0), orbit_count_burnside(code)) else {
        return s.violate(label, None, "orbit_count", "orbit count could not be evaluated".into());
    };
    // every orbit has at least lcm(t, q - 1) elements, so the sum can only overcount
    if sum < orbits {
        s.violate(label, None, "orbit_count", format!("orbit sum {sum} below the orbit count {orbits}"));
    }
    s.orbits.compared += 1;
    s.orbits.equal += u64::from(sum == orbits);
    if q == 2 {
        s.orbits.binary_compared += 1;
        s.orbits.binary_equal += u64::from(sum == orbits);
    }
}

fn check_run_ranges(s: &mut SweepSummary, code: &CyclicCode, label: &str) {
    let n = code.n;
    let rr = &mut s.run_ranges;
    rr.codes += 1;
    let mut above = 0u64;
    let mut at = 0u64;
    let mut examples = Vec::new();
    let mut z = vec![0usize; n + 2];
    let res = for_each_codeword(code, u128::MAX, |word| {
        let rd = run_distribution_slice(word);
        if rd.all_zero {
            return;
        }
        rr.words += 1;
        let theta = rd.max_run();
        // z[b] = number of all-zero windows of length b
        let mut tail = 0;
        let mut acc = 0;
        for b in (1..=n).rev() {
            tail += if b < rd.psi.len() { rd.psi[b] } else { 0 };
            acc += tail;
            z[b] = acc;
        }
        for b in theta + 1..=n {
            if z[b] != 0 {
                above += 1;
            }
        }
        if theta >= 1 {
            let w = n - z[theta];
            if w < n - n / (theta + 1) || w > n - 1 {
                at += 1;
            }
            for b in 1..theta {
                let m = theta - b;
                let w = n - z[b];
                let lower_ok = w + (m + 1) * (n / (b + m + 1)) >= n;
                let upper_ok = w + m < n;
                if !lower_ok {
                    rr.below_run_lower_failures += 1;
                }
                if !upper_ok {
                    rr.below_run_upper_failures += 1;
                }
                if (!lower_ok || !upper_ok) && examples.len() < MAX_RECORDED {
                    examples.push(describe_word(word, &rd, n, b, theta));
                }
            }
        }
    });
    if let Err(e) = res {
        return s.violate(label, None, "run_range", e.to_string());
    }
    let words_shown: Vec<String> = examples.into_iter().map(|e| format!("{label}: {e}")).collect();
    rr.above_run_failures += above;
    rr.at_run_failures += at;
    extend_capped(&mut rr.below_run_examples, words_shown);
    if above > 0 {
        s.violate(label, None, "run_range_above", format!("{above} words have w_b < n for b beyond their longest zero run"));
    }
    if at > 0 {
        s.violate(label, None, "run_range_at", format!("{at} words have w_i outside [n - floor(n/(i+1)), n - 1]"));
    }
}

fn describe_word(w: &[Elem], rd: &crate::vectors::RunDistribution, n: usize, b: usize, theta: usize) -> String {
    let zeros: usize = (b..n).map(|i| (i + 1 - b) * rd.psi.get(i).copied().unwrap_or(0)).sum();
    let digits: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("word {} with longest run {theta}: w_{b} = {}", digits.join(","), n - zeros)
}

/// True `A_j = q^{sum of s_i over t_i | j}`, the codewords fixed by rotation through `j`.
fn true_fixed(code: &CyclicCode, j: u64) -> BigInt {
    let e: usize = code.h_factors.iter().filter(|h| j.is_multiple_of(h.t)).map(|h| h.s).sum();
    BigInt::from(code.q()).pow(e as u32)
}

fn compare_fixed(code: &CyclicCode, counts: &[(u64, Real, bool)]) -> Vec<String> {
    let mut bad = Vec::new();
    for (j, printed, _) in counts {
        let truth = true_fixed(code, *j);
        let same = match printed.as_integer() {
            Some(v) => v == truth,
            None => false,
        };
        if !same {
            let shown = printed.as_integer().map_or(format!("{:.6}", printed.approx), |v| v.to_string());
            bad.push(format!("A_{j}: printed {shown}, true {truth}"));
        }
    }
    bad
}

fn check_printed(s: &mut SweepSummary, code: &CyclicCode, label: &str) {
    let q = code.q();
    if let Some(delta) = bose_distance(code) {
        let st = &mut s.bch_printed;
        st.codes += 1;
        let m = crate::algebra::arith::mult_order(q, code.n as u64) as u32;
        match bch_fixed_counts(q, m, delta) {
            Ok(counts) => {
                if counts.iter().any(|(_, _, ok)| !ok) {
                    st.non_integral += 1;
                }
                let bad = compare_fixed(code, &counts);
                if !bad.is_empty() {
                    st.fixed_count_mismatches += 1;
                    if st.examples.len() < MAX_RECORDED {
                        st.examples.push(format!("{label} (designed distance {delta}): {}", bad.join("; ")));
                    }
                }
            }
            Err(_) => st.unsupported += 1,
        }
    }
    if is_reed_solomon(code) {
        let st = &mut s.rs_printed;
        st.codes += 1;
        if let Ok(counts) = rs_fixed_counts(q, code.k) {
            if counts.iter().any(|(_, _, ok)| !ok) {
                st.non_integral += 1;
            }
            let bad = compare_fixed(code, &counts);
            if !bad.is_empty() {
                st.fixed_count_mismatches += 1;
                if st.examples.len() < MAX_RECORDED {
                    st.examples.push(format!("{label}: {}", bad.join("; ")));
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussConfig {
    /// Largest field size `Q`.
    pub big_q_max: u64,
    pub workers: usize,
}

impl Default for GaussConfig {
    fn default() -> Self {
        GaussConfig { big_q_max: 1 << 12, workers: 1 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GaussSummary {
    /// Pairs `(Q, q)` with `F_q` a proper subfield of `F_Q`.
    pub field_pairs: u64,
    /// Triples `(Q, q, N)` with `n = (Q - 1)/N >= 2`.
    pub codes: u64,
    /// Codes of dimension 1, which have no `b` with `1 <= b < m0`.
    pub codes_without_b: u64,
    /// Pairs `(beta, b)` compared.
    pub comparisons: u64,
    pub mismatches: u64,
    pub max_residual: f64,
    pub eta_tables: u64,
    /// Largest `|sum_i eta_i + 1|`, including imaginary parts.
    pub eta_sum_error: f64,
    pub failures: Vec<String>,
}

impl GaussSummary {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.failures.is_empty() && self.max_residual < RESIDUAL_TOLERANCE && self.eta_sum_error < RESIDUAL_TOLERANCE
    }

    fn fail(&mut self, msg: String) {
        self.mismatches += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, o: GaussSummary) {
        self.field_pairs += o.field_pairs;
        self.codes += o.codes;
        self.codes_without_b += o.codes_without_b;
        self.comparisons += o.comparisons;
        self.mismatches += o.mismatches;
        self.max_residual = self.max_residual.max(o.max_residual);
        self.eta_tables += o.eta_tables;
        self.eta_sum_error = self.eta_sum_error.max(o.eta_sum_error);
        extend_capped(&mut self.failures, o.failures);
    }
}

/// Checks the Gaussian-period weight formula against the direct weight of every
/// trace codeword, for every non-prime `Q <= big_q_max`, every proper subfield `F_q`,
/// every `N | Q - 1` with `n >= 2` and every `1 <= b < m0`.
pub fn gauss_sweep(cfg: &GaussConfig) -> Result<GaussSummary> {
    let sizes: Vec<(u64, u32)> = (4..=cfg.big_q_max).filter_map(prime_power).filter(|&(_, s)| s >= 2).collect();
    let slots: Vec<Mutex<Option<GaussSummary>>> = sizes.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(p, s)) = sizes.get(i) else { break };
        let g = gauss_field(p, s).unwrap_or_else(|e| GaussSummary { failures: vec![format!("Q = {p}^{s}: {e}")], mismatches: 1, ..GaussSummary::default() });
        *slots[i].lock().expect("no worker panicked") = Some(g);
    };
    let workers = cfg.workers.max(1);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|sc| {
            for _ in 0..workers {
                sc.spawn(work);
            }
        });
    }
    let mut total = GaussSummary::default();
    for slot in slots {
        total.absorb(slot.into_inner().expect("no worker panicked").expect("every job ran"));
    }
    Ok(total)
}

fn gauss_field(p: u64, big_s: u32) -> Result<GaussSummary> {
    let mut out = GaussSummary::default();
    let big = FieldTable::new(p, big_s)?;
    let big_q = big.q() as u64;
    let order = big_q - 1;
    let mut eta_cache = BTreeMap::new();
    for s in (1..big_s).filter(|s| big_s.is_multiple_of(*s)) {
        let small = FieldTable::new(p, s)?;
        out.field_pairs += 1;
        let params0 = TraceCodeParams::with_big(&small, &big, 1)?;
        // tr[j] = Tr(alpha^j), so c(alpha^e)_i = tr[(e + N i) mod (Q - 1)]
        let tr: Vec<Elem> = (0..order).map(|j| params0.sub.trace(big.exp(j))).collect();
        for big_n in divisors(order) {
            let n = (order / big_n) as usize;
            if n < 2 {
                continue;
            }
            out.codes += 1;
            let params = TraceCodeParams::with_big(&small, &big, big_n)?;
            let m0 = params.m0 as usize;
            if m0 < 2 {
                out.codes_without_b += 1;
                continue;
            }
            let n1 = params.n1;
            if let std::collections::btree_map::Entry::Vacant(v) = eta_cache.entry(n1) {
                let t = gaussian_periods(&big, n1)?;
                let sum: num_complex::Complex64 = t.eta.iter().sum();
                out.eta_tables += 1;
                out.eta_sum_error = out.eta_sum_error.max((sum + 1.0).norm());
                v.insert(t);
            }
            let eta = &eta_cache[&n1];
            let mut table = Vec::with_capacity(m0 - 1);
            for b in 1..m0 {
                let u = u_set_sizes(b, &params)?;
                match class_weights(&params, eta, &u) {
                    Ok(cw) => {
                        out.max_residual = out.max_residual.max(cw.residual);
                        table.push(cw.weights);
                    }
                    Err(e) => {
                        out.fail(format!("Q={big_q} q={} N={big_n} b={b}: {e}", small.q()));
                        table.push(Vec::new());
                    }
                }
            }
            let mut word = vec![0 as Elem; n];
            let mut z = vec![0usize; m0];
            for e in 0..order {
                for (i, c) in word.iter_mut().enumerate() {
                    *c = tr[((e + big_n * i as u64) % order) as usize];
                }
                let rd = run_distribution_slice(&word);
                // z[b] = number of all-zero windows of length b, for b < m0
                for (b, zb) in z.iter_mut().enumerate().skip(1) {
                    *zb = if rd.all_zero { n } else { (b..n).map(|i| (i + 1 - b) * rd.psi[i]).sum() };
                }
                let class = cyclotomic_class_index(&big, big.exp(e), n1)? as usize;
                for b in 1..m0 {
                    out.comparisons += 1;
                    let direct = (n - z[b]) as u64;
                    match table[b - 1].get(class) {
                        Some(&f) if f == direct => {}
                        other => out.fail(format!(
                            "Q={big_q} q={} N={big_n} b={b} beta=alpha^{e}: formula {other:?}, direct {direct}",
                            small.q()
                        )),
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binary_sweep_passes() {
        let cfg = SweepConfig { qs: vec![2], n_max: 9, ..SweepConfig::default() };
        let s = cyclic_sweep(&cfg).unwrap();
        assert!(s.passed(), "{:#?}", s.violations);
        // n = 3, 5, 7, 9 over F_2: 2 + 2 + 6 + 6 proper nontrivial divisors
        assert_eq!(s.codes, 16);
        assert_eq!(s.periods.mismatches, 0);
        assert!(s.bounds["period"].applicable > 0);
        assert_eq!(s.bounds["period"].unsatisfied, 0);
        assert_eq!(s.orbits.binary_compared, s.orbits.compared);
    }

    #[test]
    fn worker_count_does_not_change_the_summary() {
        let one = SweepConfig { qs: vec![3], n_max: 10, ..SweepConfig::default() };
        let four = SweepConfig { workers: 4, ..one.clone() };
        assert_eq!(cyclic_sweep(&one).unwrap(), cyclic_sweep(&four).unwrap());
    }

    #[test]
    fn third_run_range_fails_somewhere() {
        let cfg = SweepConfig { qs: vec![2], n_max: 15, ..SweepConfig::default() };
        let s = cyclic_sweep(&cfg).unwrap();
        assert_eq!(s.run_ranges.above_run_failures, 0);
        assert_eq!(s.run_ranges.at_run_failures, 0);
        assert_eq!(s.run_ranges.below_run_upper_failures, 0);
        assert!(s.run_ranges.below_run_lower_failures > 0);
    }

    #[test]
    fn small_gauss_sweep_passes() {
        let g = gauss_sweep(&GaussConfig { big_q_max: 64, workers: 2 }).unwrap();
        assert!(g.passed(), "{:#?}", g.failures);
        assert!(g.comparisons > 0);
        assert!(g.eta_sum_error < 1e-9);
    }
}
