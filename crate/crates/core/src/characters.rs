//! Gaussian periods and the closed-form b-weights of irreducible cyclic codes.
//!
//! For the trace code `c(beta) = (Tr(beta theta^i))_i` with `theta = alpha^N`, the
//! b-weight depends only on the cyclotomic class of `beta` of order
//! `N1 = gcd((Q-1)/(q-1), N)`:
//!
//! `w_b(c(beta)) = (q^b - 1)(Q - 1)/(q^b N) - N1/(q^b N) sum_j #U(b, j) eta_{i+j}`
//!
//! where `i` is the class of `beta` and `U(b, j)` is the set of nonzero tuples
//! `(u_1, ..., u_b)` with `sum u_j theta^{j-1}` in class `j`.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::algebra::{Elem, Field, FieldTable, Subfield};
use crate::bounds::{delta_bound, SpectrumBound};
use crate::codes::{TraceCode, TraceCodeParams};
use crate::error::{Error, Result};
use crate::vectors::{b_weight_from_runs, run_distribution_slice};

/// Tolerance on the distance of formula values from integers.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Largest `Q` for which Gaussian periods are tabulated.
pub const GAUSS_FIELD_CAP: u64 = 1 << 20;

/// Index `j` of the class `alpha^j <alpha^{N1}>` containing `x`.
pub fn cyclotomic_class_index(big: &FieldTable, x: Elem, n1: u64) -> Result<u64> {
    if n1 == 0 || !(big.q() as u64 - 1).is_multiple_of(n1) {
        return Err(Error::InvalidArgument(format!("N1 = {n1} does not divide Q - 1")));
    }
    big.log(x).map(|l| l as u64 % n1).ok_or(Error::ZeroElement)
}

fn ser_complex<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

/// `eta_i = sum_{x in C_i} chi_1(x)` for the canonical additive character
/// `chi_1(x) = exp(2 pi i Tr_{Q/p}(x) / p)`.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianPeriodTable {
    #[serde(rename = "Q")]
    pub big_q: u64,
    pub p: u64,
    #[serde(rename = "N1")]
    pub n1: u64,
    /// `[re, im]` pairs.
    #[serde(serialize_with = "ser_complex")]
    pub eta: Vec<Complex64>,
    /// `|sum_i eta_i + 1|`, which vanishes exactly.
    pub residual: f64,
    /// Largest `|Im eta_i|`; nonzero periods are complex unless `-1` lies in `C_0`.
    pub max_imag: f64,
}

/// Gaussian periods of order `n1` in `big`, by direct summation.
pub fn gaussian_periods(big: &Field, n1: u64) -> Result<GaussianPeriodTable> {
    let qq = big.q() as u64;
    if qq > GAUSS_FIELD_CAP {
        return Err(Error::CapExceeded { what: "Q", value: qq as u128, cap: GAUSS_FIELD_CAP as u128 });
    }
    if n1 == 0 || !(qq - 1).is_multiple_of(n1) {
        return Err(Error::InvalidArgument(format!("N1 = {n1} does not divide Q - 1 = {}", qq - 1)));
    }
    let p = big.p() as u64;
    let prime = FieldTable::new(p, 1)?;
    let abs = Subfield::new(&prime, big)?;
    let roots: Vec<Complex64> = (0..p).map(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / p as f64)).collect();
    let mut eta = vec![Complex64::new(0.0, 0.0); n1 as usize];
    for e in 0..qq - 1 {
        let tr = abs.trace(big.exp(e));
        eta[(e % n1) as usize] += roots[tr as usize];
    }
    let total: Complex64 = eta.iter().sum();
    let residual = (total + 1.0).norm();
    let max_imag = eta.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(GaussianPeriodTable { big_q: qq, p, n1, eta, residual, max_imag })
}

/// `#U(b, j, N1)` for every class `j`, and the number of nonzero tuples whose packed sum
/// is zero (these belong to no class).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct USetTable {
    pub b: usize,
    #[serde(rename = "N1")]
    pub n1: u64,
    pub counts: Vec<u64>,
    pub zero_window_count: u64,
}

/// Classifies every nonzero `(u_1, ..., u_b)` in `F_q^b` by the class of
/// `sum_j u_j theta^{j-1}`.
pub fn u_set_sizes(b: usize, params: &TraceCodeParams) -> Result<USetTable> {
    if b == 0 || b >= params.m0 as usize {
        return Err(Error::BOutOfRange { b, max: params.m0 as usize - 1 });
    }
    let big = params.big();
    let q = params.q;
    let powers: Vec<Elem> = (0..b).map(|j| big.pow(params.theta, j as u64)).collect();
    // embedded scalar multiples u * theta^j
    let scaled: Vec<Vec<Elem>> =
        powers.iter().map(|&t| (0..q as u32).map(|u| big.mul(params.sub.embed(u), t)).collect()).collect();
    let mut counts = vec![0u64; params.n1 as usize];
    let mut zero = 0u64;
    let total = q.pow(b as u32);
    for idx in 1..total {
        let mut rest = idx;
        let mut acc = 0;
        for row in &scaled {
            acc = big.add(acc, row[(rest % q) as usize]);
            rest /= q;
        }
        match big.log(acc) {
            Some(l) => counts[(l as u64 % params.n1) as usize] += 1,
            None => zero += 1,
        }
    }
    Ok(USetTable { b, n1: params.n1, counts, zero_window_count: zero })
}

/// Evaluates the weight formula for every class, given both tables.
#[derive(Debug, Clone, Serialize)]
pub struct ClassWeights {
    pub b: usize,
    /// Weight of `c(beta)` for `beta` in class `i`, rounded.
    pub weights: Vec<u64>,
    /// Largest distance of a raw formula value from the nearest integer, including the
    /// imaginary part.
    pub residual: f64,
}

fn formula_value(params: &TraceCodeParams, eta: &GaussianPeriodTable, u: &USetTable, class: u64) -> Complex64 {
    let qb = (params.q as f64).powi(u.b as i32);
    let big_q = params.big_q as f64;
    let big_n = params.big_n as f64;
    let n1 = params.n1;
    let head = (qb - 1.0) * (big_q - 1.0) / (qb * big_n);
    let mut s = Complex64::new(0.0, 0.0);
    for (j, &c) in u.counts.iter().enumerate() {
        s += eta.eta[((class + j as u64) % n1) as usize] * c as f64;
    }
    Complex64::new(head, 0.0) - s * (n1 as f64 / (qb * big_n))
}

fn round_checked(z: Complex64) -> Result<(u64, f64)> {
    let r = z.re.round();
    let residual = (z.re - r).abs().max(z.im.abs());
    if residual >= RESIDUAL_TOLERANCE || r < 0.0 {
        return Err(Error::NumericResidual { value: format!("{} + {}i", z.re, z.im), tol: RESIDUAL_TOLERANCE.to_string() });
    }
    Ok((r as u64, residual))
}

/// The closed-form b-weight of `c(beta)`; fails when the value is not within tolerance
/// of an integer.
pub fn irreducible_bweight(beta: Elem, b: usize, params: &TraceCodeParams) -> Result<u64> {
    let eta = gaussian_periods(params.big(), params.n1)?;
    let u = u_set_sizes(b, params)?;
    let class = cyclotomic_class_index(params.big(), beta, params.n1)?;
    round_checked(formula_value(params, &eta, &u, class)).map(|(w, _)| w)
}

/// The closed-form weight for every class, from precomputed tables.
pub fn class_weights(params: &TraceCodeParams, eta: &GaussianPeriodTable, u: &USetTable) -> Result<ClassWeights> {
    let mut weights = Vec::with_capacity(params.n1 as usize);
    let mut residual: f64 = 0.0;
    for class in 0..params.n1 {
        let (w, r) = round_checked(formula_value(params, eta, u, class))?;
        weights.push(w);
        residual = residual.max(r);
    }
    Ok(ClassWeights { b: u.b, weights, residual })
}

/// `|W_b|` of the trace code: exactly 1 when `b >= m0`, otherwise at most
/// `min{Delta, gcd((Q-1)/(q-1), N)}`, the number of classes carrying the weights.
pub fn gaussian_spectrum_bound(params: &TraceCodeParams, b: usize) -> SpectrumBound {
    if b >= params.m0 as usize {
        return SpectrumBound::ExactlyOne;
    }
    let delta = delta_bound(params.n, params.m0 as usize, b).max(0) as u128;
    SpectrumBound::AtMost((params.n1 as u128).min(delta))
}

/// `w_1, ..., w_{b_max}` of `c(beta)` computed directly from its zero runs.
pub fn direct_weights(code: &TraceCode, beta: Elem, b_max: usize) -> Vec<usize> {
    let w = code.codeword(beta);
    let rd = run_distribution_slice(&w);
    (1..=b_max).map(|b| b_weight_from_runs(&rd, b, w.len()).unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u64, m: u32, big_n: u64) -> TraceCodeParams {
        TraceCodeParams::new(&FieldTable::of_size(q).unwrap(), m, big_n).unwrap()
    }

    #[test]
    fn class_indices() {
        let f = FieldTable::new(2, 4).unwrap();
        assert_eq!(cyclotomic_class_index(&f, 1, 3).unwrap(), 0);
        assert_eq!(cyclotomic_class_index(&f, f.exp(1), 3).unwrap(), 1);
        assert_eq!(cyclotomic_class_index(&f, 0, 3).unwrap_err(), Error::ZeroElement);
        // F_4^* sits inside C_0 when N1 divides 15/3 = 5
        let p = params(4, 2, 5);
        for u in 1..4 {
            assert_eq!(cyclotomic_class_index(p.big(), p.sub.embed(u), 5).unwrap(), 0);
        }
    }

    #[test]
    fn gaussian_period_values() {
        let one = gaussian_periods(&FieldTable::new(2, 3).unwrap(), 1).unwrap();
        assert!((one.eta[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        let t = gaussian_periods(&FieldTable::new(5, 1).unwrap(), 2).unwrap();
        let r5 = 5f64.sqrt();
        let mut got: Vec<f64> = t.eta.iter().map(|z| z.re).collect();
        got.sort_by(f64::total_cmp);
        assert!((got[0] - (-1.0 - r5) / 2.0).abs() < 1e-9 && (got[1] - (-1.0 + r5) / 2.0).abs() < 1e-9);
        let nine = gaussian_periods(&FieldTable::new(3, 2).unwrap(), 2).unwrap();
        assert!(nine.residual < 1e-9);
    }

    #[test]
    fn u_sets() {
        let p = params(2, 4, 3);
        let u1 = u_set_sizes(1, &p).unwrap();
        assert_eq!((u1.counts[0], u1.counts[1..].iter().sum::<u64>(), u1.zero_window_count), (1, 0, 0));
        let u2 = u_set_sizes(2, &p).unwrap();
        assert_eq!(u2.counts.iter().sum::<u64>() + u2.zero_window_count, 3);
        assert!(u_set_sizes(p.m0 as usize, &p).is_err());
    }

    #[test]
    fn simplex_weight_from_the_formula() {
        let p = params(2, 3, 1);
        for beta in 1..8 {
            assert_eq!(irreducible_bweight(beta, 2, &p).unwrap(), 6);
        }
    }

    #[test]
    fn formula_matches_direct_weights() {
        for (q, m, big_n) in [(2, 4, 3), (2, 4, 5), (2, 6, 9), (3, 4, 5), (4, 2, 3), (2, 6, 7)] {
            let p = params(q, m, big_n);
            if p.n < 2 {
                continue;
            }
            let code = TraceCode::new(p.clone()).unwrap();
            let eta = gaussian_periods(p.big(), p.n1).unwrap();
            for b in 1..p.m0 as usize {
                let u = u_set_sizes(b, &p).unwrap();
                let cw = class_weights(&p, &eta, &u).unwrap();
                for beta in 1..p.big_q as u32 {
                    let class = cyclotomic_class_index(p.big(), beta, p.n1).unwrap();
                    assert_eq!(cw.weights[class as usize] as usize, direct_weights(&code, beta, b)[b - 1], "q={q} m={m} N={big_n} b={b}");
                }
            }
        }
    }

    #[test]
    fn spectrum_bound() {
        assert_eq!(gaussian_spectrum_bound(&params(2, 3, 1), 1), SpectrumBound::AtMost(1));
        let p = params(2, 4, 5);
        assert_eq!(gaussian_spectrum_bound(&p, 1), SpectrumBound::AtMost(delta_bound(3, p.m0 as usize, 1).min(5) as u128));
        assert_eq!(gaussian_spectrum_bound(&p, p.m0 as usize), SpectrumBound::ExactlyOne);
    }
}
