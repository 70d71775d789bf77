//! Upper and lower bounds on `|W_b|`, each with an explicit applicability test, and a
//! report that checks every applicable bound against the exact spectrum.

mod report;
mod verbatim;

use num_bigint::BigUint;
use serde::Serialize;

pub use report::{bound_report, generic_bound_report, BoundEntry, BoundReport, Direction, ExactData, Num, Quantity};
pub use verbatim::{
    bch_fixed_counts, bch_period_bound, bch_regime, bose_distance, idempotent_bound_general_verbatim,
    is_reed_solomon, rs_fixed_counts, rs_period_bound, BchRegime, Real, VerbatimBound,
};

use crate::algebra::arith::{binomial, checked_pow, gcd, is_prime, lcm, prime_power};
use crate::codes::CyclicCode;
use crate::error::{Error, Result};
use crate::spectra::{period_distribution_formula, PeriodDistribution};

/// Largest number of check factors for the subset sums of the idempotent bound.
pub const MAX_SUBSET_FACTORS: usize = 24;

/// A bound on `|W_b|` that is either the exact value 1 or an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumBound {
    ExactlyOne,
    AtMost(u128),
}

impl SpectrumBound {
    pub fn value(self) -> u128 {
        match self {
            SpectrumBound::ExactlyOne => 1,
            SpectrumBound::AtMost(v) => v,
        }
    }

    /// Whether an observed spectrum size is consistent with the bound.
    pub fn holds(self, observed: u128) -> bool {
        match self {
            SpectrumBound::ExactlyOne => observed == 1,
            SpectrumBound::AtMost(v) => observed <= v,
        }
    }
}

/// `Delta = n + 1 - b floor(n/k)`. Can be non-positive when `b > k`.
pub fn delta_bound(n: usize, k: usize, b: usize) -> i64 {
    n as i64 + 1 - (b * (n / k.max(1))) as i64
}

/// `floor(n/k)`, a lower bound on the minimum Hamming distance of an `[n,k]` cyclic code.
pub fn distance_floor(n: usize, k: usize) -> usize {
    n / k.max(1)
}

/// `sum_{j=0}^{s} C(n, j) (|Sigma|^b - 1)^j`: no code of length `n` whose b-distance
/// spectrum has `s` values can have more words than this.
pub fn sphere_style_bound(n: usize, alphabet_size: u64, spectrum_size: usize, b: usize) -> BigUint {
    let base = BigUint::from(alphabet_size).pow(b as u32) - 1u32;
    (0..=spectrum_size.min(n))
        .map(|j| binomial(n as u64, j as u64) * base.pow(j as u32))
        .sum()
}

fn delta_cap(n: usize, k: usize, b: usize) -> u128 {
    delta_bound(n, k, b).max(0) as u128
}

fn check_b(code: &CyclicCode, b: usize) -> Result<()> {
    if b == 0 || b > code.n {
        Err(Error::BOutOfRange { b, max: code.n })
    } else {
        Ok(())
    }
}

/// `min{Delta, [1 +] sum_{b < t | n} B_t / lcm(t, q - 1)}` from a period distribution.
/// The leading 1 accounts for words of period at most `b`, all of weight `n`.
pub fn period_bound_from(n: usize, k: usize, q: u64, pd: &PeriodDistribution, b: usize) -> Result<SpectrumBound> {
    if b >= k {
        return Ok(SpectrumBound::ExactlyOne);
    }
    let low = pd.counts.iter().any(|(&t, &c)| t <= b && c > 0);
    let sum = pd.orbit_sum(q, b)? + low as u128;
    Ok(SpectrumBound::AtMost(sum.min(delta_cap(n, k, b))))
}

/// The orbit-count bound from the period distribution of the check factors. The `+1`
/// is added exactly when some `t_i <= b`.
pub fn period_bound(code: &CyclicCode, b: usize) -> Result<SpectrumBound> {
    check_b(code, b)?;
    if b >= code.k {
        return Ok(SpectrumBound::ExactlyOne);
    }
    let pd = period_distribution_formula(code)?;
    let sum = pd.orbit_sum(code.q(), b)?;
    let low = code.h_factors.iter().any(|h| h.t as usize <= b);
    Ok(SpectrumBound::AtMost((sum + low as u128).min(delta_cap(code.n, code.k, b))))
}

/// `per(h)` of an irreducible check polynomial.
fn irreducible_period(code: &CyclicCode) -> Result<u64> {
    match code.h_factors.as_slice() {
        [h] => Ok(h.t),
        _ => Err(Error::NotIrreducible),
    }
}

/// Irreducible codes: 1 when `per(h) <= b`, else `min{Delta, (q^k - 1)/lcm(per(h), q - 1)}`.
pub fn irreducible_bound(code: &CyclicCode, b: usize) -> Result<SpectrumBound> {
    check_b(code, b)?;
    let per = irreducible_period(code)?;
    if per as usize <= b {
        return Ok(SpectrumBound::ExactlyOne);
    }
    let q = code.q();
    let size = q_pow(q, code.k)? - 1;
    Ok(SpectrumBound::AtMost((size / lcm(per, q - 1) as u128).min(delta_cap(code.n, code.k, b))))
}

fn q_pow(q: u64, e: usize) -> Result<u128> {
    checked_pow(q, e as u64).ok_or(Error::CapExceeded { what: "q^k", value: u128::MAX, cap: u128::MAX })
}

/// Idempotent form for the irreducible code attached to the coset of `i_t`:
/// 1 when `n / gcd(n, i_t) <= b`, else `min{Delta, gcd(n, (q-1) i_t)(q^k - 1)/(n(q - 1))}`.
pub fn idempotent_bound_irreducible(n: usize, q: u64, k: usize, i_t: u64, b: usize) -> Result<SpectrumBound> {
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    let per = n as u64 / gcd(n as u64, i_t);
    if per as usize <= b {
        return Ok(SpectrumBound::ExactlyOne);
    }
    let num = gcd(n as u64, (q - 1) * i_t) as u128 * (q_pow(q, k)? - 1);
    let den = n as u128 * (q - 1) as u128;
    if !num.is_multiple_of(den) {
        return Err(Error::NonIntegralOrbitTerm { num: num.to_string(), den: den.to_string() });
    }
    Ok(SpectrumBound::AtMost((num / den).min(delta_cap(n, k, b))))
}

/// One minimal ideal in the decomposition of a cyclic code: its coset representative
/// and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdempotentComponent {
    pub leader: u64,
    pub dim: usize,
}

/// The minimal ideals making up a cyclic code, one per irreducible factor of `h`.
pub fn idempotent_components(code: &CyclicCode) -> Vec<IdempotentComponent> {
    code.h_factors.iter().map(|h| IdempotentComponent { leader: h.leader, dim: h.s }).collect()
}

/// Sum over nonempty subsets `S` of components of
/// `gcd(n, i_S) prod (q^{k_j} - 1) gcd(q - 1, t_S) / (n (q - 1))`, where
/// `t_S = n / gcd(n, i_S)` is the common period of the words with support exactly `S`.
/// Subsets with `t_S <= b` are replaced by a single 1. This counts the same orbits as
/// the period bound.
pub fn idempotent_bound_general(n: usize, q: u64, comps: &[IdempotentComponent], b: usize) -> Result<SpectrumBound> {
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    let k: usize = comps.iter().map(|c| c.dim).sum();
    if b >= k {
        return Ok(SpectrumBound::ExactlyOne);
    }
    if comps.len() > MAX_SUBSET_FACTORS {
        return Err(Error::CapExceeded { what: "idempotent components", value: comps.len() as u128, cap: MAX_SUBSET_FACTORS as u128 });
    }
    let overflow = || Error::CapExceeded { what: "idempotent sum", value: u128::MAX, cap: u128::MAX };
    let n64 = n as u64;
    let mut total: u128 = 0;
    let mut low = false;
    for mask in 1u32..(1 << comps.len()) {
        let mut g = n64;
        let mut prod: u128 = 1;
        for (j, c) in comps.iter().enumerate() {
            if mask >> j & 1 == 1 {
                g = gcd(g, c.leader);
                prod = prod.checked_mul(q_pow(q, c.dim)? - 1).ok_or_else(overflow)?;
            }
        }
        let t_s = n64 / g;
        if t_s as usize <= b {
            low = true;
            continue;
        }
        let num = prod.checked_mul(g as u128 * gcd(q - 1, t_s) as u128).ok_or_else(overflow)?;
        let den = n as u128 * (q - 1) as u128;
        if num % den != 0 {
            return Err(Error::NonIntegralOrbitTerm { num: num.to_string(), den: den.to_string() });
        }
        total = total.checked_add(num / den).ok_or_else(overflow)?;
    }
    Ok(SpectrumBound::AtMost((total + low as u128).min(delta_cap(n, k, b))))
}

/// Prime length `n` with `per(h) > b`: `Delta` when `n | q - 1`, otherwise
/// `min{Delta, 1 + (q^k - q)/(n(q - 1))}` if `(x - 1) | h` and
/// `min{Delta, (q^k - 1)/(n(q - 1))}` if not.
pub fn prime_length_bound(code: &CyclicCode, b: usize) -> Result<SpectrumBound> {
    check_b(code, b)?;
    let n = code.n;
    if !is_prime(n as u64) {
        return Err(Error::NotPrimeLength(n));
    }
    let per = code.h_factors.iter().fold(1u64, |acc, h| lcm(acc, h.t));
    if per as usize <= b {
        return Err(Error::NotApplicable(format!("per(h) = {per} <= b = {b}")));
    }
    let q = code.q();
    let delta = delta_cap(n, code.k, b);
    if (q - 1).is_multiple_of(n as u64) {
        return Ok(SpectrumBound::AtMost(delta));
    }
    let den = n as u128 * (q - 1) as u128;
    let qk = q_pow(q, code.k)?;
    let has_one = code.h_factors.iter().any(|h| h.t == 1);
    let v = if has_one { 1 + (qk - q as u128) / den } else { (qk - 1) / den };
    Ok(SpectrumBound::AtMost(v.min(delta)))
}

/// `h = h_1 h_2` with both factors irreducible and `min(t_1, t_2) > b`.
///
/// Equal periods give `(q^k - 1)/lcm(t, q - 1)`. When one period divides the other,
/// every word outside the smaller-period ideal has the larger period. Otherwise the
/// words split three ways by support.
pub fn two_zero_bound(code: &CyclicCode, b: usize) -> Result<SpectrumBound> {
    check_b(code, b)?;
    let [h1, h2] = code.h_factors.as_slice() else {
        return Err(Error::NotTwoZero);
    };
    let (h1, h2) = if h1.t <= h2.t { (h1, h2) } else { (h2, h1) };
    if h1.t as usize <= b {
        return Err(Error::NotApplicable(format!("min(t_1, t_2) = {} <= b = {b}", h1.t)));
    }
    let q = code.q();
    let orb = |count: u128, t: u64| -> Result<u128> {
        let l = lcm(t, q - 1) as u128;
        if !count.is_multiple_of(l) {
            return Err(Error::NonIntegralOrbitTerm { num: count.to_string(), den: l.to_string() });
        }
        Ok(count / l)
    };
    let qk = q_pow(q, code.k)?;
    let q1 = q_pow(q, h1.s)?;
    let q2 = q_pow(q, h2.s)?;
    let v = if h1.t == h2.t {
        orb(qk - 1, h1.t)?
    } else if h2.t % h1.t == 0 {
        orb(q1 - 1, h1.t)? + orb(qk - q1, h2.t)?
    } else {
        orb(q1 - 1, h1.t)? + orb(q2 - 1, h2.t)? + orb(qk - q1 - q2 + 1, lcm(h1.t, h2.t))?
    };
    Ok(SpectrumBound::AtMost(v.min(delta_cap(code.n, code.k, b))))
}

/// `L(k, q) = (q^k - 1)/(q - 1)`, the largest possible `|W_b|` of a `k`-dimensional
/// linear code over `F_q`.
pub fn linear_max_weights(k: usize, q: u64) -> u128 {
    checked_pow(q, k as u64).map_or(u128::MAX, |v| (v - 1) / (q - 1) as u128)
}

/// Largest number of nonzero symplectic weights of a `k`-dimensional code.
pub fn symplectic_max(k: usize, q: u64) -> u128 {
    linear_max_weights(k, q)
}

/// `A(q^{k0}, q^t, b)`, the largest `|W_b|` of an additive code of size `q^{k0}`.
pub fn additive_max(k0: usize, q: u64) -> u128 {
    linear_max_weights(k0, q)
}

/// `N(M, b) = C(M, 2)`: the most b-distances a code with `M` words can realize.
pub fn unrestricted_max(m: usize) -> u128 {
    (m as u128) * (m as u128).saturating_sub(1) / 2
}

/// Upper bounds on the shortest length `n_0(M, b)` of a code with `M` words and
/// `C(M, 2)` distinct b-distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortestLengthBounds {
    pub m: usize,
    pub b: usize,
    /// `2b C(M, 2) + b`, from Singer difference sets, when `M - 1` is a prime power.
    pub singer: Option<u128>,
    /// `b G(M)` with `G(M)` the length of an optimal Golomb ruler with `M` marks.
    pub golomb: u128,
    pub golomb_length: u64,
    /// The smaller of the two.
    pub best: u128,
}

pub fn shortest_length_bounds(m: usize, b: usize) -> Result<ShortestLengthBounds> {
    if m < 2 {
        return Err(Error::InvalidArgument("M must be at least 2".into()));
    }
    let g = crate::constructions::golomb_ruler_optimal(m).map_err(|_| Error::GolombUnavailable(m))?.length;
    let golomb = b as u128 * g as u128;
    let singer = prime_power(m as u64 - 1).map(|_| 2 * b as u128 * unrestricted_max(m) + b as u128);
    let best = singer.map_or(golomb, |s| s.min(golomb));
    Ok(ShortestLengthBounds { m, b, singer, golomb, golomb_length: g, best })
}

/// `l_0(k, q, b) >= ceil(b q (q^k - 1) / (2 (q - 1)))`, the shortest length of a linear
/// code attaining `L(k, q)` distinct b-weights.
pub fn shortest_mbsw_length_lower(k: usize, q: u64, b: usize) -> u128 {
    let l = linear_max_weights(k, q);
    (b as u128 * q as u128 * l).div_ceil(2)
}

/// For cyclic codes with a word of full period and `gcd(n, q - 1) = 1`:
/// `L(k, q) + 1 - b ceil(L(k, q)/k)`.
pub fn full_period_gamma_bound(code: &CyclicCode, b: usize) -> Result<i64> {
    check_b(code, b)?;
    let q = code.q();
    let n = code.n as u64;
    if gcd(n, q - 1) != 1 {
        return Err(Error::NotApplicable(format!("gcd({n}, {}) != 1", q - 1)));
    }
    let pd = period_distribution_formula(code)?;
    if pd.get(code.n) == 0 {
        return Err(Error::NotApplicable("no codeword of full period".into()));
    }
    Ok(gamma_value(code.k, q, b))
}

pub(crate) fn gamma_value(k: usize, q: u64, b: usize) -> i64 {
    let l = linear_max_weights(k, q) as i64;
    l + 1 - b as i64 * ((l + k as i64 - 1) / k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldTable, Polynomial};
    use crate::codes::{rs_code, simplex_code, CyclicCode};

    fn hamming() -> CyclicCode {
        let f2 = FieldTable::new(2, 1).unwrap();
        CyclicCode::from_generator(7, &Polynomial::new(&f2, vec![1, 1, 0, 1])).unwrap()
    }

    fn simplex() -> CyclicCode {
        let f2 = FieldTable::new(2, 1).unwrap();
        CyclicCode::from_check(7, &Polynomial::new(&f2, vec![1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(delta_bound(7, 4, 2), 6);
        assert_eq!(delta_bound(9, 9, 4), 6);
        assert_eq!(delta_bound(6, 2, 1), 4);
        assert_eq!((distance_floor(7, 4), distance_floor(6, 2), distance_floor(15, 5)), (1, 3, 3));
        assert_eq!(sphere_style_bound(5, 2, 0, 1), BigUint::from(1u32));
        assert_eq!(sphere_style_bound(3, 2, 1, 1), BigUint::from(4u32));
        assert_eq!(linear_max_weights(2, 2), 3);
        assert_eq!(symplectic_max(3, 2), 7);
        assert_eq!(additive_max(3, 2), 7);
        assert_eq!(unrestricted_max(3), 3);
        assert_eq!(shortest_mbsw_length_lower(2, 2, 2), 6);
        assert_eq!(gamma_value(4, 2, 1), 12);
    }

    #[test]
    fn hamming_bounds() {
        let h = hamming();
        assert_eq!(period_bound(&h, 2).unwrap(), SpectrumBound::AtMost(3));
        assert_eq!(period_bound(&h, 4).unwrap(), SpectrumBound::ExactlyOne);
        let comps = idempotent_components(&h);
        assert_eq!(idempotent_bound_general(7, 2, &comps, 2).unwrap(), SpectrumBound::AtMost(3));
        assert_eq!(prime_length_bound(&h, 2).unwrap(), SpectrumBound::AtMost(3));
        assert_eq!(two_zero_bound(&h, 1).unwrap_err(), Error::NotApplicable("min(t_1, t_2) = 1 <= b = 1".into()));
        assert_eq!(full_period_gamma_bound(&h, 1).unwrap(), 12);
        assert_eq!(irreducible_bound(&h, 2).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn simplex_bounds() {
        let s = simplex();
        assert_eq!(s.k, 3);
        assert_eq!(irreducible_bound(&s, 2).unwrap(), SpectrumBound::AtMost(1));
        assert_eq!(period_bound(&s, 2).unwrap(), SpectrumBound::AtMost(1));
        let i_t = s.h_factors[0].leader;
        assert_eq!(idempotent_bound_irreducible(7, 2, 3, i_t, 2).unwrap(), SpectrumBound::AtMost(1));
        assert_eq!(idempotent_bound_irreducible(7, 2, 1, 0, 2).unwrap(), SpectrumBound::ExactlyOne);
        assert_eq!(prime_length_bound(&s, 2).unwrap(), SpectrumBound::AtMost(1));
        assert_eq!(full_period_gamma_bound(&s, 2).unwrap(), 2);
        // the simplex construction used elsewhere is the same code up to rotation
        assert_eq!(simplex_code(3, &s.field).unwrap().n, 7);
    }

    #[test]
    fn rs_bounds() {
        let rs = rs_code(&FieldTable::new(7, 1).unwrap(), 2).unwrap();
        assert_eq!(period_bound(&rs, 1).unwrap(), SpectrumBound::AtMost(4));
        let pd = period_distribution_formula(&rs).unwrap();
        // without the cap by Delta the orbit sum is 1 + 42/6
        assert_eq!(pd.orbit_sum(7, 1).unwrap() + 1, 8);
        assert!(full_period_gamma_bound(&rs, 1).is_err());
    }

    #[test]
    fn two_zero_cases() {
        // x^9 - 1 over F_2 = (x + 1)(x^2 + x + 1)(x^6 + x^3 + 1), periods 1, 3, 9
        let f2 = FieldTable::new(2, 1).unwrap();
        let h = Polynomial::new(&f2, vec![1, 1, 1]).mul(&Polynomial::new(&f2, vec![1, 0, 0, 1, 0, 0, 1]));
        let c = CyclicCode::from_check(9, &h).unwrap();
        assert_eq!(c.k, 8);
        let v = two_zero_bound(&c, 2).unwrap();
        assert_eq!(v, period_bound(&c, 2).unwrap());
        assert_eq!(v, SpectrumBound::AtMost(delta_bound(9, 8, 2) as u128));
        assert_eq!(two_zero_bound(&hamming(), 1).unwrap_err(), Error::NotApplicable("min(t_1, t_2) = 1 <= b = 1".into()));
    }

    #[test]
    fn shortest_lengths() {
        let s = shortest_length_bounds(3, 2).unwrap();
        assert_eq!((s.singer, s.golomb, s.best), (Some(14), 6, 6));
        assert_eq!(shortest_length_bounds(40, 1).unwrap_err(), Error::GolombUnavailable(40));
    }
}
