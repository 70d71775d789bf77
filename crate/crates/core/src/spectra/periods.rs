//! Period distributions and orbit counts under rotation and scaling.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::arith::{checked_pow, divisors, lcm, mobius};
use crate::algebra::linalg::rank;
use crate::algebra::Elem;
use crate::codes::{for_each_codeword, CodeSpace, CyclicCode};
use crate::error::{Error, Result};

/// `B_t`: the number of nonzero codewords of least period `t`, for every `t | n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodDistribution {
    pub n: usize,
    pub counts: BTreeMap<usize, u128>,
}

impl PeriodDistribution {
    fn from_counts(n: usize, counts: BTreeMap<usize, u128>) -> Self {
        PeriodDistribution { n, counts }
    }

    pub fn get(&self, t: usize) -> u128 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// Nonzero entries only.
    pub fn support(&self) -> BTreeMap<usize, u128> {
        self.counts.iter().filter(|(_, &c)| c > 0).map(|(&t, &c)| (t, c)).collect()
    }

    /// `B_t / lcm(t, q - 1)` for every `t | n` with `t > above`; each must be an integer.
    pub fn orbit_terms(&self, q: u64, above: usize) -> Result<BTreeMap<usize, u128>> {
        let mut out = BTreeMap::new();
        for (&t, &c) in &self.counts {
            if t <= above {
                continue;
            }
            let l = lcm(t as u64, q - 1) as u128;
            if c % l != 0 {
                return Err(Error::NonIntegralOrbitTerm { num: c.to_string(), den: l.to_string() });
            }
            out.insert(t, c / l);
        }
        Ok(out)
    }

    /// `sum_{t > above} B_t / lcm(t, q - 1)`.
    pub fn orbit_sum(&self, q: u64, above: usize) -> Result<u128> {
        Ok(self.orbit_terms(q, above)?.values().sum())
    }
}

/// Tallies `vector_period` over the nonzero codewords (census based).
pub fn period_distribution_bruteforce(code: &dyn CodeSpace, opts: &super::CensusOptions) -> Result<PeriodDistribution> {
    let c = super::census(code, &super::CensusOptions { b_max: 0, ranges: false, ..*opts })?;
    Ok(from_census(&c))
}

pub(crate) fn from_census(c: &super::Census) -> PeriodDistribution {
    let counts = divisors(c.n as u64).into_iter().map(|t| (t as usize, c.periods[t as usize] as u128)).collect();
    PeriodDistribution::from_counts(c.n, counts)
}

/// Turns fixed-point counts `A_j` (including the zero word) into `B_t` by Moebius inversion.
fn invert(n: usize, fixed: &BTreeMap<usize, u128>) -> Result<PeriodDistribution> {
    let mut counts = BTreeMap::new();
    for t in divisors(n as u64) {
        let mut acc: i128 = 0;
        for j in divisors(t) {
            acc += mobius(t / j) as i128 * fixed[&(j as usize)] as i128;
        }
        if t == 1 {
            // the sum at t = 1 counts the zero word
            acc -= 1;
        }
        if acc < 0 {
            return Err(Error::InvalidArgument(format!("negative period count at t = {t}")));
        }
        counts.insert(t as usize, acc as u128);
    }
    Ok(PeriodDistribution::from_counts(n, counts))
}

/// `A_j = q^{sum of s_i over t_i | j}`, `B_t = sum_{j | t} mu(t/j) A_j`, minus the zero
/// word at `t = 1`.
pub fn period_distribution_formula(code: &CyclicCode) -> Result<PeriodDistribution> {
    let n = code.n;
    let q = code.q();
    let mut fixed = BTreeMap::new();
    for j in divisors(n as u64) {
        let e: usize = code.h_factors.iter().filter(|h| j % h.t == 0).map(|h| h.s).sum();
        let a = checked_pow(q, e as u64)
            .filter(|&a| a < i128::MAX as u128)
            .ok_or(Error::CapExceeded { what: "q^k", value: u128::MAX, cap: i128::MAX as u128 })?;
        fixed.insert(j as usize, a);
    }
    invert(n, &fixed)
}

/// Linear-algebra oracle: the codewords fixed by rotation through `d` form the kernel of
/// `m -> m G (P^d - I)`, so `A_d = q^{k - rank}`. Needs a rotation-invariant linear code.
pub fn period_distribution_fixed_space(code: &dyn CodeSpace) -> Result<PeriodDistribution> {
    let f = code.alphabet();
    if f.q() != code.scalars().q() {
        return Err(Error::InvalidArgument("needs a linear code".into()));
    }
    let n = code.length();
    let k = code.dimension();
    let q = f.q() as u64;
    let mut fixed = BTreeMap::new();
    for d in divisors(n as u64) {
        let d = d as usize;
        let m: Vec<Vec<Elem>> = code
            .rows()
            .iter()
            .map(|r| (0..n).map(|i| f.sub(r[(i + n - d) % n], r[i])).collect())
            .collect();
        let e = k - rank(f, &m);
        let a = checked_pow(q, e as u64).ok_or(Error::CapExceeded { what: "q^k", value: u128::MAX, cap: u128::MAX })?;
        fixed.insert(d, a);
    }
    invert(n, &fixed)
}

/// Number of orbits of the group generated by the cyclic shift and the scalings
/// `x -> a x` (`a` in `F_q^*`) on the nonzero codewords, by counting canonical words:
/// a word is canonical when it is lexicographically smallest among its `n (q - 1)` images.
pub fn orbit_count(code: &dyn CodeSpace, cap: u128) -> Result<u128> {
    let f = code.alphabet().clone();
    let n = code.length();
    let scalars: Vec<Elem> = (1..code.scalars().q()).map(|c| code.embed_scalar(c)).collect();
    let mut count = 0u128;
    let mut img = vec![0; n];
    for_each_codeword(code, cap, |w| {
        if w.iter().all(|&e| e == 0) {
            return;
        }
        for &a in &scalars {
            for (i, x) in img.iter_mut().enumerate() {
                *x = f.mul(a, w[i]);
            }
            for j in 0..n {
                // compare rotation by j of a*w with w
                let smaller = (0..n).map(|i| img[(i + j) % n]).cmp(w.iter().copied()) == std::cmp::Ordering::Less;
                if smaller {
                    return;
                }
            }
        }
        count += 1;
    })?;
    Ok(count)
}

/// Exact orbit count for a cyclic code by Burnside's lemma over the decomposition into
/// minimal ideals: a pair (shift by `i`, scale by `a`) fixes the component with coset
/// leader `l` exactly when `a zeta^{i l} = 1`.
pub fn orbit_count_burnside(code: &CyclicCode) -> Result<u128> {
    let n = code.n as u64;
    let q = code.q();
    let factors = &code.h_factors;
    let u = factors.len();
    if u > 24 {
        return Err(Error::CapExceeded { what: "check factors", value: u as u128, cap: 24 });
    }
    let overflow = || Error::CapExceeded { what: "orbit sum", value: u128::MAX, cap: u128::MAX };
    let sizes: Vec<u128> = factors
        .iter()
        .map(|h| checked_pow(q, h.s as u64).map(|v| v - 1).ok_or_else(overflow))
        .collect::<Result<_>>()?;
    let mut total: u128 = 0;
    for mask in 1u32..(1 << u) {
        let members: Vec<usize> = (0..u).filter(|&j| mask >> j & 1 == 1).collect();
        let l1 = factors[members[0]].leader;
        let fixers = (0..n)
            .filter(|&i| {
                members.iter().all(|&j| {
                    let l = factors[j].leader;
                    (i as u128 * l as u128 * (q - 1) as u128).is_multiple_of(n as u128)
                        && (i as u128 * ((l + n - l1) % n) as u128).is_multiple_of(n as u128)
                })
            })
            .count() as u128;
        if fixers == 0 {
            continue;
        }
        let prod = members.iter().try_fold(1u128, |acc, &j| acc.checked_mul(sizes[j])).ok_or_else(overflow)?;
        total = prod.checked_mul(fixers).and_then(|v| total.checked_add(v)).ok_or_else(overflow)?;
    }
    let den = n as u128 * (q - 1) as u128;
    if !total.is_multiple_of(den) {
        return Err(Error::NonIntegralOrbitTerm { num: total.to_string(), den: den.to_string() });
    }
    Ok(total / den)
}

/// Nonzero codewords grouped by their longest cyclic zero run.
pub fn partition_by_max_run(code: &dyn CodeSpace, cap: u128) -> Result<BTreeMap<usize, Vec<Vec<Elem>>>> {
    let mut out: BTreeMap<usize, Vec<Vec<Elem>>> = BTreeMap::new();
    for_each_codeword(code, cap, |w| {
        let rd = crate::vectors::run_distribution_slice(w);
        if !rd.all_zero {
            out.entry(rd.max_run()).or_default().push(w.to_vec());
        }
    })?;
    Ok(out)
}
