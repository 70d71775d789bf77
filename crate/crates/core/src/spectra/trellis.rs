//! Syndrome trellis for `W_b` of high-rate linear codes.
//!
//! A state is the partial syndrome together with the number of leading zeros and of
//! trailing zeros seen so far (both capped at `b - 1`, with a separate marker while the
//! prefix is all zero). Each state carries a bitmask of the achievable numbers of
//! all-zero windows lying entirely inside the prefix. Windows that wrap around are added
//! at the end from the leading and trailing counts.

use crate::algebra::arith::checked_pow;
use crate::algebra::linalg::nullspace;
use crate::codes::CodeSpace;
use crate::error::{Error, Result};

/// Default cap on the number of trellis states.
pub const DEFAULT_STATE_CAP: u128 = 1 << 22;

/// Number of trellis states for redundancy `r` and window length `b`.
pub fn state_count(q: u64, r: usize, b: usize) -> Option<u128> {
    checked_pow(q, r as u64).and_then(|s| s.checked_mul(((b + 1) * b) as u128))
}

/// Rough operation count, comparable with `projective words * n` for enumeration.
pub fn trellis_cost(q: u64, r: usize, b: usize, n: usize) -> u128 {
    state_count(q, r, b).map_or(u128::MAX, |s| s.saturating_mul(q as u128 * n as u128))
}

/// Sorted `W_b` of a linear code, without multiplicities.
pub fn trellis_weights(code: &dyn CodeSpace, b: usize, state_cap: u128) -> Result<Vec<usize>> {
    let f = code.alphabet();
    if f.q() != code.scalars().q() {
        return Err(Error::InvalidArgument("the trellis needs a linear code".into()));
    }
    let n = code.length();
    if b == 0 || b > n {
        return Err(Error::BOutOfRange { b, max: n });
    }
    if n > 63 {
        return Err(Error::InvalidArgument("the trellis supports n <= 63".into()));
    }
    let h = nullspace(f, code.rows(), n);
    let r = h.len();
    let q = f.q() as usize;
    let states = state_count(q as u64, r, b).unwrap_or(u128::MAX);
    if states > state_cap {
        return Err(Error::CapExceeded { what: "trellis states", value: states, cap: state_cap });
    }
    let nsyn = q.pow(r as u32);
    let lead_states = b + 1;
    let all_zero = b;
    let idx = |s: usize, l: usize, t: usize| (s * lead_states + l) * b + t;
    let mut cur = vec![0u64; states as usize];
    let mut next = vec![0u64; states as usize];
    cur[idx(0, all_zero, 0)] = 1;
    let mut digits = vec![0usize; r];
    for i in 0..n {
        next.iter_mut().for_each(|v| *v = 0);
        // syndrome contribution of x at position i, digit by digit
        let contrib: Vec<Vec<usize>> =
            (0..q).map(|x| h.iter().map(|row| f.mul(x as u32, row[i]) as usize).collect()).collect();
        for s in 0..nsyn {
            let base = s * lead_states * b;
            if cur[base..base + lead_states * b].iter().all(|&m| m == 0) {
                continue;
            }
            let mut rest = s;
            for d in digits.iter_mut() {
                *d = rest % q;
                rest /= q;
            }
            for (x, c) in contrib.iter().enumerate() {
                let tgt = if x == 0 {
                    s
                } else {
                    digits
                        .iter()
                        .zip(c)
                        .rev()
                        .fold(0, |acc, (&a, &v)| acc * q + f.add(a as u32, v as u32) as usize)
                };
                for l in 0..lead_states {
                    for t in 0..b {
                        let m = cur[idx(s, l, t)];
                        if m == 0 {
                            continue;
                        }
                        if l == all_zero {
                            if x == 0 {
                                let inc = (i + 1 >= b) as u32;
                                next[idx(tgt, all_zero, 0)] |= m << inc;
                            } else {
                                next[idx(tgt, i.min(b - 1), 0)] |= m;
                            }
                        } else if x == 0 {
                            let inc = (t + 1 >= b) as u32;
                            next[idx(tgt, l, (t + 1).min(b - 1))] |= m << inc;
                        } else {
                            next[idx(tgt, l, 0)] |= m;
                        }
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut seen = vec![false; n + 1];
    for l in 0..b {
        for t in 0..b {
            let m = cur[idx(0, l, t)];
            if m == 0 {
                continue;
            }
            let lo = 1.max(b - l);
            let hi = (b - 1).min(t);
            let wrap = if hi >= lo { hi - lo + 1 } else { 0 };
            for c in 0..=n {
                if m >> c & 1 == 1 {
                    seen[n - c - wrap] = true;
                }
            }
        }
    }
    Ok((0..=n).filter(|&w| seen[w]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldTable, Polynomial};
    use crate::codes::CyclicCode;
    use crate::spectra::census::{census, CensusOptions};

    #[test]
    fn trellis_matches_enumeration() {
        for (q, n, g) in [
            (2u64, 7usize, vec![1u32, 1, 0, 1]),
            (2, 9, vec![1, 1]),
            (3, 8, vec![2, 1]),
            (4, 5, vec![1, 1]),
            (5, 6, vec![4, 1]),
            (3, 10, vec![2, 0, 1]),
            (2, 5, vec![1]),
        ] {
            let f = FieldTable::of_size(q).unwrap();
            let code = CyclicCode::from_generator(n, &Polynomial::new(&f, g)).unwrap();
            let c = census(&code, &CensusOptions::default()).unwrap();
            for b in 1..=n {
                assert_eq!(trellis_weights(&code, b, DEFAULT_STATE_CAP).unwrap(), c.weights(b), "q={q} n={n} b={b}");
            }
        }
    }
}
