//! One pass over the nonzero codewords collecting everything the spectra and the sweep
//! need: b-weight multiplicities, periods, maximal zero runs and per-run weight ranges.
//!
//! Every quantity tallied here is invariant under scaling by `F_q^*`, so only one
//! representative per projective point is visited and counts are multiplied by `q - 1`
//! at the end.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::packed::{PackedCode, PackedWord};
use crate::algebra::arith::{checked_pow, divisors};
use crate::algebra::Elem;
use crate::codes::CodeSpace;
use crate::error::{Error, Result};

/// Options for [`census`].
#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    /// Largest `b` whose multiplicities are kept (clamped to `n`).
    pub b_max: usize,
    /// Cap on the number of projective representatives visited.
    pub cap: u128,
    pub workers: usize,
    /// Track min/max of `w_b` for each maximal-run class.
    pub ranges: bool,
    /// Force the generic engine even when the packed one applies.
    pub generic_only: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { b_max: usize::MAX, cap: 1 << 24, workers: 1, ranges: true, generic_only: false }
    }
}

/// Tallies over the nonzero codewords of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub q: u64,
    pub b_max: usize,
    /// `mult[b][w]`: number of nonzero codewords with `w_b = w`, for `1 <= b <= b_max`.
    pub mult: Vec<Vec<u64>>,
    /// `periods[t]`: number of nonzero codewords of least period `t`.
    pub periods: Vec<u64>,
    /// `theta[i]`: number of nonzero codewords whose longest cyclic zero run is `i`.
    pub theta: Vec<u64>,
    /// `ranges[i][b]` for `1 <= b <= i`: `(min, max)` of `w_b` over the class `C(i)`.
    /// Empty when ranges were not requested.
    pub ranges: Vec<Vec<(usize, usize)>>,
    pub nonzero: u64,
    scaled: bool,
}

impl Census {
    fn new(n: usize, q: u64, b_max: usize, ranges: bool) -> Self {
        let b_max = b_max.min(n);
        Census {
            n,
            q,
            b_max,
            mult: vec![vec![0; n + 1]; b_max + 1],
            periods: vec![0; n + 1],
            theta: vec![0; n + 1],
            ranges: if ranges {
                (0..=n).map(|i| vec![(usize::MAX, 0); i + 1]).collect()
            } else {
                Vec::new()
            },
            nonzero: 0,
            scaled: false,
        }
    }

    /// Records one word given `z[b-1] = ` number of all-zero windows of length `b`, for
    /// `b = 1..=theta` (so `z` has length `theta`, the longest zero run).
    pub(crate) fn record(&mut self, z: &[usize], period: usize) {
        let n = self.n;
        let theta = z.len();
        self.nonzero += 1;
        self.periods[period] += 1;
        self.theta[theta] += 1;
        for (i, &zb) in z.iter().enumerate().take(self.b_max) {
            self.mult[i + 1][n - zb] += 1;
        }
        if !self.ranges.is_empty() {
            let r = &mut self.ranges[theta];
            for (i, &zb) in z.iter().enumerate() {
                let w = n - zb;
                let e = &mut r[i + 1];
                e.0 = e.0.min(w);
                e.1 = e.1.max(w);
            }
        }
    }

    fn merge(&mut self, other: &Census) {
        for (a, b) in self.mult.iter_mut().zip(&other.mult) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (x, y) in self.periods.iter_mut().zip(&other.periods) {
            *x += y;
        }
        for (x, y) in self.theta.iter_mut().zip(&other.theta) {
            *x += y;
        }
        for (a, b) in self.ranges.iter_mut().zip(&other.ranges) {
            for (x, y) in a.iter_mut().zip(b) {
                x.0 = x.0.min(y.0);
                x.1 = x.1.max(y.1);
            }
        }
        self.nonzero += other.nonzero;
    }

    /// Words with longest run `theta < b` have `w_b = n`; those were not written into
    /// `mult` by `record`, so add them here, then scale by `q - 1`.
    fn finish(&mut self) {
        if self.scaled {
            return;
        }
        let n = self.n;
        let mut below = 0;
        for b in 1..=self.b_max {
            below += self.theta[b - 1];
            self.mult[b][n] += below;
        }
        let s = self.q - 1;
        for row in self.mult.iter_mut() {
            row.iter_mut().for_each(|x| *x *= s);
        }
        self.periods.iter_mut().for_each(|x| *x *= s);
        self.theta.iter_mut().for_each(|x| *x *= s);
        self.nonzero *= s;
        self.scaled = true;
    }

    /// Sorted distinct weights `W_b`.
    pub fn weights(&self, b: usize) -> Vec<usize> {
        self.mult[b].iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, _)| w).collect()
    }

    /// Minimum nonzero Hamming weight.
    pub fn min_distance(&self) -> usize {
        self.mult[1].iter().skip(1).position(|&c| c > 0).map_or(0, |w| w + 1)
    }

    /// Longest zero run over all nonzero codewords.
    pub fn max_theta(&self) -> usize {
        self.theta.iter().rposition(|&c| c > 0).unwrap_or(0)
    }
}

/// Number of projective points of an `F_q`-space of dimension `k`.
pub fn projective_count(q: u64, k: usize) -> Option<u128> {
    checked_pow(q, k as u64).map(|v| (v - 1) / (q as u128 - 1))
}

/// A contiguous block of projective representatives: leading message position `lead`,
/// and indices `lo..hi` into the enumeration of the positions after it.
#[derive(Debug, Clone, Copy)]
struct Segment {
    lead: usize,
    lo: u128,
    hi: u128,
}

fn segments(q: u64, k: usize, chunk: u128) -> Vec<Segment> {
    let mut out = Vec::new();
    for lead in 0..k {
        let total = checked_pow(q, (k - 1 - lead) as u64).expect("checked by the cap");
        let mut lo = 0;
        while lo < total {
            let hi = (lo + chunk).min(total);
            out.push(Segment { lead, lo, hi });
            lo = hi;
        }
    }
    out
}

/// Runs the census with the packed engine when the field and length allow it.
pub fn census(code: &dyn CodeSpace, opts: &CensusOptions) -> Result<Census> {
    let q = code.scalars().q() as u64;
    let k = code.dimension();
    let n = code.length();
    let count = projective_count(q, k).unwrap_or(u128::MAX);
    if count > opts.cap {
        return Err(Error::CapExceeded { what: "projective codeword count", value: count, cap: opts.cap });
    }
    let packed = if opts.generic_only { None } else { PackedCode::new(code) };
    let chunk = (count / (opts.workers.max(1) as u128 * 8)).clamp(1 << 12, 1 << 20);
    let segs = segments(q, k, chunk);
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::new());
    let work = || {
        let mut local = Census::new(n, q, opts.b_max, opts.ranges);
        let mut engine = GenericEngine::new(code);
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            let Some(seg) = segs.get(i) else { break };
            match &packed {
                Some(p) => p.run(seg.lead, seg.lo, seg.hi, &mut local),
                None => engine.run(seg.lead, seg.lo, seg.hi, &mut local),
            }
        }
        results.lock().expect("no worker panicked").push(local);
    };
    let workers = opts.workers.max(1);
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    let mut total = Census::new(n, q, opts.b_max, opts.ranges);
    for part in results.into_inner().expect("no worker panicked") {
        total.merge(&part);
    }
    total.finish();
    Ok(total)
}

/// Zero-window counts `z[b-1]` for `b = 1..=theta` of a word given as field elements.
pub(crate) fn window_profile(x: &[Elem], out: &mut Vec<usize>) {
    let rd = crate::vectors::run_distribution_slice(x);
    out.clear();
    let theta = rd.max_run();
    if rd.all_zero || theta == 0 {
        return;
    }
    out.resize(theta, 0);
    // z_b = z_{b+1} + sum_{i >= b} psi_i
    let mut tail = 0;
    let mut z = 0;
    for b in (1..=theta).rev() {
        tail += rd.psi[b];
        z += tail;
        out[b - 1] = z;
    }
}

pub(crate) fn slice_period(x: &[Elem], divs: &[usize]) -> usize {
    let n = x.len();
    divs.iter().copied().find(|&t| (0..n).all(|i| x[(i + t) % n] == x[i])).unwrap_or(n)
}

/// Element-wise engine used for fields or lengths the packed engine does not cover.
struct GenericEngine<'a> {
    code: &'a dyn CodeSpace,
    divs: Vec<usize>,
    embedded: Vec<Elem>,
    profile: Vec<usize>,
}

impl<'a> GenericEngine<'a> {
    fn new(code: &'a dyn CodeSpace) -> Self {
        let q = code.scalars().q();
        let n = code.length();
        GenericEngine {
            code,
            divs: divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d < n).collect(),
            embedded: (0..q).map(|c| code.embed_scalar(c)).collect(),
            profile: Vec::new(),
        }
    }

    fn run(&mut self, lead: usize, lo: u128, hi: u128, census: &mut Census) {
        let code = self.code;
        let f = code.alphabet();
        let rows = code.rows();
        let q = code.scalars().q() as u128;
        let k = rows.len();
        let free = k - 1 - lead;
        let mut digits = vec![0u32; free];
        let mut rest = lo;
        for j in (0..free).rev() {
            digits[j] = (rest % q) as u32;
            rest /= q;
        }
        let mut word = rows[lead].clone();
        if self.embedded[1] != 1 {
            word.iter_mut().for_each(|w| *w = f.mul(*w, self.embedded[1]));
        }
        for (j, &d) in digits.iter().enumerate() {
            if d != 0 {
                let c = self.embedded[d as usize];
                for (w, &r) in word.iter_mut().zip(&rows[lead + 1 + j]) {
                    *w = f.add(*w, f.mul(c, r));
                }
            }
        }
        let mut idx = lo;
        loop {
            window_profile(&word, &mut self.profile);
            let period = slice_period(&word, &self.divs);
            census.record(&self.profile, period);
            idx += 1;
            if idx >= hi {
                return;
            }
            let mut j = free;
            while j > 0 {
                j -= 1;
                let d = digits[j];
                let (old, new) = (self.embedded[d as usize], self.embedded[((d + 1) % q as u32) as usize]);
                let c = f.sub(new, old);
                digits[j] = (d + 1) % q as u32;
                for (w, &r) in word.iter_mut().zip(&rows[lead + 1 + j]) {
                    *w = f.add(*w, f.mul(c, r));
                }
                if digits[j] != 0 {
                    break;
                }
            }
        }
    }
}

/// Decodes a packed word (used by tests and debugging).
#[allow(dead_code)]
pub(crate) fn unpack(w: PackedWord, n: usize) -> Vec<Elem> {
    (0..n).map(|i| ((w >> (4 * i)) & 0xf) as Elem).collect()
}
