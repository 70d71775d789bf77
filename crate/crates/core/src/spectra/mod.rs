//! Exact b-weight spectra, distance spectra, period distributions and orbit counts.

mod census;
mod packed;
mod periods;
mod trellis;

use std::collections::BTreeMap;

use serde::Serialize;

pub use census::{census, projective_count, Census, CensusOptions};
pub use packed::{PackedCode, MAX_PACKED_LENGTH};
pub use periods::{
    orbit_count, orbit_count_burnside, partition_by_max_run, period_distribution_bruteforce,
    period_distribution_fixed_space, period_distribution_formula, PeriodDistribution,
};
pub use trellis::{state_count, trellis_cost, trellis_weights, DEFAULT_STATE_CAP};

use crate::algebra::Elem;
use crate::codes::CodeSpace;
use crate::error::{Error, Result};

/// Largest code size for pairwise distance spectra.
pub const DISTANCE_SPECTRUM_CAP: usize = 1 << 12;

/// How a spectrum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMethod {
    Enumeration,
    Trellis,
}

/// `W_b` of a code with the multiplicity of each weight among nonzero codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub b: usize,
    pub weights: Vec<usize>,
    /// Absent when the spectrum came from the trellis, which only tracks the support.
    pub multiplicities: Option<BTreeMap<usize, u64>>,
    pub size: usize,
    pub method: SpectrumMethod,
}

impl SpectrumReport {
    fn from_census(c: &Census, b: usize) -> Self {
        let weights = c.weights(b);
        let multiplicities = weights.iter().map(|&w| (w, c.mult[b][w])).collect();
        SpectrumReport { n: c.n, b, size: weights.len(), weights, multiplicities: Some(multiplicities), method: SpectrumMethod::Enumeration }
    }

    fn from_weights(n: usize, b: usize, weights: Vec<usize>) -> Self {
        SpectrumReport { n, b, size: weights.len(), weights, multiplicities: None, method: SpectrumMethod::Trellis }
    }
}

fn check_b(b: usize, n: usize) -> Result<()> {
    if b == 0 || b > n {
        Err(Error::BOutOfRange { b, max: n })
    } else {
        Ok(())
    }
}

/// Exact `W_b` by enumerating the code (projective representatives, scaled back).
pub fn weight_spectrum(code: &dyn CodeSpace, b: usize, opts: &CensusOptions) -> Result<SpectrumReport> {
    check_b(b, code.length())?;
    let c = census(code, &CensusOptions { b_max: b, ranges: false, ..*opts })?;
    Ok(SpectrumReport::from_census(&c, b))
}

/// `W_b` for every `b` in `1..=b_max` from a single enumeration.
pub fn weight_spectra(code: &dyn CodeSpace, b_max: usize, opts: &CensusOptions) -> Result<Vec<SpectrumReport>> {
    check_b(b_max, code.length())?;
    let c = census(code, &CensusOptions { b_max, ranges: false, ..*opts })?;
    Ok((1..=b_max).map(|b| SpectrumReport::from_census(&c, b)).collect())
}

/// Enumeration when affordable, otherwise the trellis (linear codes only). `budget` is
/// the largest acceptable operation count for either method.
pub fn weight_spectra_auto(code: &dyn CodeSpace, b_max: usize, opts: &CensusOptions, budget: u128) -> Result<Vec<SpectrumReport>> {
    let n = code.length();
    check_b(b_max, n)?;
    let q = code.scalars().q() as u64;
    let k = code.dimension();
    let enum_cost = projective_count(q, k).map_or(u128::MAX, |p| p.saturating_mul(n as u128));
    let linear = code.alphabet().q() == code.scalars().q();
    let trellis_total: u128 = if linear && n <= 63 {
        (1..=b_max).map(|b| trellis_cost(q, n - k, b, n)).fold(0u128, |a, c| a.saturating_add(c))
    } else {
        u128::MAX
    };
    if enum_cost <= trellis_total || !linear {
        if enum_cost > budget {
            return Err(Error::CapExceeded { what: "enumeration cost", value: enum_cost, cap: budget });
        }
        return weight_spectra(code, b_max, &CensusOptions { cap: u128::MAX, ..*opts });
    }
    if trellis_total > budget {
        return Err(Error::CapExceeded { what: "trellis cost", value: trellis_total, cap: budget });
    }
    (1..=b_max)
        .map(|b| Ok(SpectrumReport::from_weights(n, b, trellis_weights(code, b, u128::MAX)?)))
        .collect()
}

/// `d_b(x, y) = w_b(x - y)`.
pub fn b_distance(f: &crate::algebra::FieldTable, x: &[Elem], y: &[Elem], b: usize) -> usize {
    let diff: Vec<Elem> = x.iter().zip(y).map(|(&a, &c)| f.sub(a, c)).collect();
    crate::vectors::b_weight_slice(&diff, b)
}

/// Sorted set of pairwise b-distances between distinct words.
pub fn distance_spectrum(f: &crate::algebra::FieldTable, words: &[Vec<Elem>], b: usize) -> Result<Vec<usize>> {
    if words.len() > DISTANCE_SPECTRUM_CAP {
        return Err(Error::CapExceeded { what: "code size", value: words.len() as u128, cap: DISTANCE_SPECTRUM_CAP as u128 });
    }
    let Some(first) = words.first() else { return Ok(Vec::new()) };
    check_b(b, first.len())?;
    let n = first.len();
    let mut seen = vec![false; n + 1];
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i] != words[j] {
                seen[b_distance(f, &words[i], &words[j], b)] = true;
            }
        }
    }
    Ok((0..=n).filter(|&d| seen[d]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldTable, Polynomial};
    use crate::codes::{enumerate_codewords, simplex_code, CyclicCode, DEFAULT_ENUMERATION_CAP};

    fn hamming() -> CyclicCode {
        let f2 = FieldTable::new(2, 1).unwrap();
        CyclicCode::from_generator(7, &Polynomial::new(&f2, vec![1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn small_spectra() {
        let opts = CensusOptions::default();
        let s = simplex_code(3, &FieldTable::new(2, 1).unwrap()).unwrap();
        let r = weight_spectrum(&s, 2, &opts).unwrap();
        assert_eq!(r.weights, vec![6]);
        assert_eq!(r.multiplicities.unwrap()[&6], 7);
        let h = weight_spectrum(&hamming(), 1, &opts).unwrap();
        assert_eq!(h.weights, vec![3, 4, 7]);
        assert_eq!(h.multiplicities.unwrap(), BTreeMap::from([(3, 7), (4, 7), (7, 1)]));
        assert_eq!(weight_spectrum(&hamming(), 5, &opts).unwrap().weights, vec![7]);
        let f = FieldTable::new(3, 1).unwrap();
        let u = CyclicCode::from_generator(5, &Polynomial::one(&f)).unwrap();
        for b in 1..=5 {
            assert_eq!(weight_spectrum(&u, b, &opts).unwrap().weights, (b..=5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn distance_equals_weight_for_linear_codes() {
        let c = hamming();
        let f = c.field.clone();
        let words = enumerate_codewords(&c, DEFAULT_ENUMERATION_CAP).unwrap();
        for b in 1..=7 {
            let d = distance_spectrum(&f, &words, b).unwrap();
            assert_eq!(d, weight_spectrum(&c, b, &CensusOptions::default()).unwrap().weights);
        }
        assert!(distance_spectrum(&f, &words[..1], 2).unwrap().is_empty());
    }

    #[test]
    fn auto_uses_the_trellis_for_high_rate_codes() {
        let f = FieldTable::new(5, 1).unwrap();
        let c = CyclicCode::from_generator(13, &Polynomial::new(&f, vec![4, 1])).unwrap();
        let reports = weight_spectra_auto(&c, 3, &CensusOptions::default(), 1 << 40).unwrap();
        assert_eq!(reports[0].method, SpectrumMethod::Trellis);
        assert_eq!(reports[0].weights, (2..=13).collect::<Vec<_>>());
    }
}
