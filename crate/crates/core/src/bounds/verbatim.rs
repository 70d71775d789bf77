//! Closed forms that are evaluated exactly as printed, including non-integral exponents.
//! Their values are compared with the exact spectrum and the period bound but are never
//! treated as bounds of record.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::{delta_bound, IdempotentComponent, MAX_SUBSET_FACTORS};
use crate::algebra::arith::{divisors, gcd, lcm, mobius, mult_order};
use crate::codes::CyclicCode;
use crate::error::{Error, Result};

/// A real number known exactly when every exponent involved was an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Real {
    pub exact: Option<BigRational>,
    pub approx: f64,
}

impl Real {
    pub fn int(v: i64) -> Self {
        Real { exact: Some(BigRational::from_integer(v.into())), approx: v as f64 }
    }

    /// `q^e` for a rational exponent `e`.
    pub fn pow(q: u64, e: &BigRational) -> Self {
        let approx = (q as f64).powf(e.to_f64().unwrap_or(f64::NAN));
        let exact = e.is_integer().then(|| {
            let k = e.to_integer();
            let mag = BigInt::from(q).pow(k.abs().to_u32().unwrap_or(u32::MAX));
            if k.is_negative() {
                BigRational::new(BigInt::one(), mag)
            } else {
                BigRational::from_integer(mag)
            }
        });
        Real { exact, approx }
    }

    fn add(&self, o: &Real) -> Real {
        Real { exact: self.exact.as_ref().zip(o.exact.as_ref()).map(|(a, b)| a + b), approx: self.approx + o.approx }
    }

    fn scale(&self, c: i64) -> Real {
        Real { exact: self.exact.as_ref().map(|a| a * BigInt::from(c)), approx: self.approx * c as f64 }
    }

    fn div(&self, d: u64) -> Real {
        Real { exact: self.exact.as_ref().map(|a| a / BigInt::from(d)), approx: self.approx / d as f64 }
    }

    fn min_int(&self, cap: i64) -> Real {
        if self.approx >= cap as f64 && self.exact.as_ref().is_none_or(|e| *e >= BigRational::from_integer(cap.into())) {
            Real::int(cap)
        } else {
            self.clone()
        }
    }

    /// The exact value when it is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.exact.as_ref().filter(|e| e.is_integer()).map(|e| e.to_integer())
    }
}

/// A bound evaluated from a printed closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct VerbatimBound {
    /// `min{Delta, S}` with `S` the printed sum.
    pub value: Real,
    /// The printed sum before taking the minimum with `Delta`.
    pub sum: Real,
    /// False when some exponent was not an integer.
    pub integral_exponents: bool,
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Printed form of the idempotent bound for a general cyclic code: subsets restricted
/// to components with `n / gcd(n, i_l) > b` each (plus 1 when some component fails this),
/// with the factor `gcd(q - 1, t_{j_1}, ..., t_{j_u})`.
pub fn idempotent_bound_general_verbatim(n: usize, q: u64, comps: &[IdempotentComponent], b: usize) -> Result<VerbatimBound> {
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    if comps.len() > MAX_SUBSET_FACTORS {
        return Err(Error::CapExceeded { what: "idempotent components", value: comps.len() as u128, cap: MAX_SUBSET_FACTORS as u128 });
    }
    let k: usize = comps.iter().map(|c| c.dim).sum();
    let n64 = n as u64;
    let per = |c: &IdempotentComponent| n64 / gcd(n64, c.leader);
    let all_above = comps.iter().all(|c| per(c) as usize > b);
    let mut sum = Real::int(if all_above { 0 } else { 1 });
    for mask in 1u32..(1 << comps.len()) {
        let members: Vec<&IdempotentComponent> =
            comps.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, c)| c).collect();
        if !members.iter().all(|c| per(c) as usize > b) {
            continue;
        }
        let g = members.iter().fold(n64, |a, c| gcd(a, c.leader));
        let h = members.iter().fold(q - 1, |a, c| gcd(a, per(c)));
        let prod = members.iter().fold(BigInt::one(), |a, c| a * (BigInt::from(q).pow(c.dim as u32) - 1));
        let term = BigRational::new(prod * BigInt::from(g) * BigInt::from(h), BigInt::from(n64 * (q - 1)));
        sum = sum.add(&Real { approx: term.to_f64().unwrap_or(f64::NAN), exact: Some(term) });
    }
    let value = sum.min_int(delta_bound(n, k, b));
    Ok(VerbatimBound { value, sum, integral_exponents: true })
}

/// The three designed-distance ranges with printed fixed-point counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BchRegime {
    /// `2 <= delta < q + 1`.
    Small,
    /// `q + 1 <= delta <= q^{(m+1)/2}` (m odd) or `q^{m/2} + 2` (m even).
    Middle,
    /// `q^{m/2} + 2 <= delta <= 2 q^{m/2}`.
    Large,
}

/// Picks the first regime containing `delta`; the middle and large ranges share
/// `delta = q^{m/2} + 2` for even `m`.
pub fn bch_regime(q: u64, m: u32, delta: usize) -> Result<BchRegime> {
    let d = delta as u128;
    let q = q as u128;
    if d >= 2 && d < q + 1 {
        return Ok(BchRegime::Small);
    }
    let middle_top = if m % 2 == 1 { q.pow(m.div_ceil(2)) } else { q.pow(m / 2) + 2 };
    if d > q && d <= middle_top {
        return Ok(BchRegime::Middle);
    }
    // q^{m/2} + 2 <= d <= 2 q^{m/2}, compared through squares
    let qm = q.pow(m);
    if d >= 2 && (d - 2) * (d - 2) >= qm && d * d <= 4 * qm {
        return Ok(BchRegime::Large);
    }
    Err(Error::RegimeUnsupported(delta))
}

/// Printed fixed-point counts `A_i` for every divisor `i` of `n = q^m - 1`.
pub fn bch_fixed_counts(q: u64, m: u32, delta: usize) -> Result<Vec<(u64, Real, bool)>> {
    let regime = bch_regime(q, m, delta)?;
    let n = q.pow(m) - 1;
    let mi = m as i64;
    let d1 = delta as i64 - 1;
    let qi = q as i64;
    // q^{m/2} + 1 as a rational; only an integer for even m
    let half_plus_one = if m.is_multiple_of(2) { Some(q.pow(m / 2) + 1) } else { None };
    let mut out = Vec::new();
    for i in divisors(n) {
        let j = (n / i) as i64;
        let e: Option<BigRational> = match regime {
            BchRegime::Small => {
                if i == n {
                    Some(rat(n as i64 - d1 * mi, 1))
                } else if j == 2 {
                    Some(rat(n as i64 / 2 - (d1 / 2) * mi, 1))
                } else if j <= d1 {
                    Some(rat(n as i64 / j - (d1 / j) * mi, 1))
                } else {
                    None
                }
            }
            BchRegime::Middle => {
                if i == n {
                    Some(rat(n as i64 - (d1 - d1 / qi) * mi, 1))
                } else if j <= d1 {
                    // printed as q^{n/j} - (floor((delta-1)/j) - floor((delta-1)/(qj))) m
                    let v = Real::pow(q, &rat(n as i64 / j, 1))
                        .add(&Real::int(-((d1 / j - d1 / (qi * j)) * mi)));
                    out.push((i, v, true));
                    continue;
                } else {
                    None
                }
            }
            BchRegime::Large => {
                if i == n {
                    Some(rat(2 * n as i64 - (2 * delta as i64 - 3 - 2 * (d1 / qi)) * mi, 2))
                } else if j <= d1 && half_plus_one.is_some_and(|h| (j as u64).is_multiple_of(h)) {
                    Some(rat(2 * (n as i64 / j) - mi, 2))
                } else if j <= d1 {
                    // printed exponent j/n - (floor((delta-1)/j) - floor((delta-1)/(qj))) m
                    Some(rat(j, n as i64) - rat((d1 / j - d1 / (qi * j)) * mi, 1))
                } else {
                    None
                }
            }
        };
        let e = e.unwrap_or_else(|| rat(i as i64, 1));
        let integral = e.is_integer();
        out.push((i, Real::pow(q, &e), integral));
    }
    Ok(out)
}

/// Largest designed distance `delta` for which the narrow-sense BCH code equals `code`,
/// when `n = q^m - 1` and the defining set is `C_1 u ... u C_{delta-1}`.
pub fn bose_distance(code: &CyclicCode) -> Option<usize> {
    let n = code.n as u64;
    let q = code.q();
    let m = mult_order(q, n);
    if n < 2 || q.checked_pow(m as u32)? - 1 != n {
        return None;
    }
    let fact = &code.factorization;
    let mut covered = vec![false; fact.len()];
    let mut best = None;
    for delta in 2..=code.n {
        covered[fact.coset_of(delta as u64 - 1)] = true;
        if covered == code.in_g {
            best = Some(delta);
        }
    }
    best
}

/// True for `[q - 1, k]` codes whose defining set is `{1, ..., q - 1 - k}`.
pub fn is_reed_solomon(code: &CyclicCode) -> bool {
    let q = code.q();
    code.n as u64 == q - 1 && code.n >= 2 && (code.k == code.n || bose_distance(code) == Some(code.n - code.k + 1))
}

fn moebius_sum(n: u64, q: u64, b: usize, fixed: impl Fn(u64) -> Real) -> Real {
    let mut sum = Real::int(0);
    for t in divisors(n) {
        if t as usize <= b {
            continue;
        }
        let mut bt = Real::int(0);
        for j in divisors(t) {
            bt = bt.add(&fixed(j).scale(mobius(t / j)));
        }
        sum = sum.add(&bt.div(lcm(t, q - 1)));
    }
    sum
}

/// The printed narrow-sense BCH bound `min{Delta, sum_{b < t | n} B_t / lcm(t, q - 1)}`
/// with `B_t` assembled from the regime's fixed-point counts.
pub fn bch_period_bound(code: &CyclicCode, delta: usize, b: usize) -> Result<VerbatimBound> {
    let q = code.q();
    let n = code.n as u64;
    let m = mult_order(q, n) as u32;
    if q.checked_pow(m).map(|v| v - 1) != Some(n) {
        return Err(Error::NotApplicable(format!("n = {n} is not q^m - 1")));
    }
    let counts = bch_fixed_counts(q, m, delta)?;
    let integral = counts.iter().all(|(_, _, ok)| *ok);
    let lookup = |j: u64| counts.iter().find(|(i, _, _)| *i == j).map(|(_, v, _)| v.clone()).unwrap_or_else(|| Real::int(0));
    let sum = moebius_sum(n, q, b, lookup);
    let value = sum.min_int(delta_bound(code.n, code.k, b));
    Ok(VerbatimBound { value, sum, integral_exponents: integral })
}

/// Printed Reed-Solomon fixed-point counts `A_j = q^{1 + (k-1) gcd(q-1, j)/(q-1)}` for
/// every `j | q - 1`, with a flag for integral exponents.
pub fn rs_fixed_counts(q: u64, k: usize) -> Result<Vec<(u64, Real, bool)>> {
    let n = q - 1;
    if k == 0 || k as u64 > n {
        return Err(Error::KOutOfRange { k, max: n as usize });
    }
    Ok(divisors(n)
        .into_iter()
        .map(|j| {
            let e = rat(1, 1) + rat((k as i64 - 1) * gcd(n, j) as i64, n as i64);
            let integral = e.is_integer();
            (j, Real::pow(q, &e), integral)
        })
        .collect())
}

/// The printed Reed-Solomon bound with `B_t = sum_{j | t} mu(t/j) q^{1 + (k-1) gcd(q-1, j)/(q-1)}`.
pub fn rs_period_bound(q: u64, k: usize, b: usize) -> Result<VerbatimBound> {
    let n = q - 1;
    let counts = rs_fixed_counts(q, k)?;
    let mut integral = true;
    for t in divisors(n) {
        if t as usize <= b {
            continue;
        }
        for (j, _, ok) in &counts {
            if t % j == 0 && mobius(t / j) != 0 && !ok {
                integral = false;
            }
        }
    }
    let fixed = |j: u64| counts.iter().find(|(i, _, _)| *i == j).map(|(_, v, _)| v.clone()).unwrap_or_else(|| Real::int(0));
    // lcm(t, q - 1) = q - 1 for every t | q - 1
    let sum = Real::int(1).add(&moebius_sum(n, q, b, fixed));
    let value = sum.min_int(delta_bound(n as usize, k, b));
    Ok(VerbatimBound { value, sum, integral_exponents: integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldTable, Polynomial};
    use crate::codes::{bch_code, rs_code};

    #[test]
    fn regimes() {
        assert_eq!(bch_regime(2, 4, 2).unwrap(), BchRegime::Small);
        assert_eq!(bch_regime(2, 4, 3).unwrap(), BchRegime::Middle);
        assert_eq!(bch_regime(2, 4, 6).unwrap(), BchRegime::Middle);
        assert_eq!(bch_regime(2, 4, 8).unwrap(), BchRegime::Large);
        assert_eq!(bch_regime(2, 4, 9).unwrap_err(), Error::RegimeUnsupported(9));
        assert_eq!(bch_regime(2, 3, 4).unwrap(), BchRegime::Middle);
        assert_eq!(bch_regime(2, 3, 6).unwrap_err(), Error::RegimeUnsupported(6));
    }

    #[test]
    fn small_regime_counts_match_the_code() {
        // delta = 2 over F_4, n = 15: regime 1, A_n = |C|
        let f4 = FieldTable::new(2, 2).unwrap();
        let c = bch_code(&f4, 15, 2, 1).unwrap();
        let counts = bch_fixed_counts(4, 2, 2).unwrap();
        let (_, a_n, ok) = counts.iter().find(|(i, _, _)| *i == 15).unwrap();
        assert!(ok);
        assert_eq!(a_n.as_integer().unwrap(), BigInt::from(4u64).pow(c.k as u32));
        assert_eq!(bose_distance(&c), Some(2));
    }

    #[test]
    fn bose_distance_detection() {
        let f2 = FieldTable::new(2, 1).unwrap();
        let h = CyclicCode::from_generator(7, &Polynomial::new(&f2, vec![1, 1, 0, 1])).unwrap();
        assert_eq!(bose_distance(&h), Some(3));
        let other = CyclicCode::from_generator(7, &Polynomial::new(&f2, vec![1, 0, 1, 1])).unwrap();
        assert_eq!(bose_distance(&other), None);
        assert!(is_reed_solomon(&rs_code(&FieldTable::new(7, 1).unwrap(), 2).unwrap()));
        assert!(is_reed_solomon(&rs_code(&FieldTable::new(7, 1).unwrap(), 6).unwrap()));
        assert!(!is_reed_solomon(&h));
    }

    #[test]
    fn rs_printed_form_has_rational_exponents() {
        let v = rs_period_bound(7, 2, 1).unwrap();
        assert!(!v.integral_exponents);
        assert!(v.sum.exact.is_none() && v.sum.approx > 4.0);
        // the sum exceeds Delta = 4, which then decides the value
        assert_eq!(v.value.as_integer(), Some(BigInt::from(4)));
        // k = 1: every exponent is 1 and only the constant words remain
        let u = rs_period_bound(5, 1, 1).unwrap();
        assert!(u.integral_exponents);
        assert_eq!(u.value.as_integer().unwrap(), BigInt::from(1));
    }

    #[test]
    fn verbatim_idempotent_single_component() {
        let comps = [IdempotentComponent { leader: 1, dim: 3 }];
        let v = idempotent_bound_general_verbatim(7, 2, &comps, 2).unwrap();
        assert_eq!(v.value.as_integer().unwrap(), BigInt::from(1));
    }
}
