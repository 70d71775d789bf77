//! Linear, cyclic, additive, trace and unrestricted codes, with exhaustive enumeration.

mod additive;
mod cyclic;
mod linear;
mod trace;

pub use additive::AdditiveCode;
pub use cyclic::{bch_code, rs_code, CheckFactor, CyclicCode};
pub use linear::{projective_points, simplex_code, LinearCode};
pub use trace::{TraceCode, TraceCodeParams, TraceCodeSummary};

use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};
use crate::vectors::hamming_weight;

/// Default bound on the number of codewords any exhaustive pass will visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// A code spanned over a scalar field `F_q` by rows with entries in an alphabet field
/// containing `F_q`. For linear codes the two fields coincide.
pub trait CodeSpace: Sync {
    /// Field the coordinates live in.
    fn alphabet(&self) -> &Field;
    /// Field of the coefficients in linear combinations of the rows.
    fn scalars(&self) -> &Field;
    /// Image of a scalar in the alphabet field.
    fn embed_scalar(&self, c: Elem) -> Elem;
    fn length(&self) -> usize;
    /// Rows independent over the scalar field.
    fn rows(&self) -> &[Vec<Elem>];

    fn dimension(&self) -> usize {
        self.rows().len()
    }

    /// Number of codewords, saturating at `u128::MAX`.
    fn size(&self) -> u128 {
        crate::algebra::arith::checked_pow(self.scalars().q() as u64, self.dimension() as u64)
            .unwrap_or(u128::MAX)
    }
}

/// A code given as an explicit list of words.
#[derive(Debug, Clone)]
pub struct UnrestrictedCode {
    pub field: Field,
    pub n: usize,
    pub words: Vec<Vec<Elem>>,
}

impl UnrestrictedCode {
    pub fn new(field: &Field, words: Vec<Vec<Elem>>) -> Result<Self> {
        let n = words.first().map_or(0, |w| w.len());
        if n == 0 || words.iter().any(|w| w.len() != n) {
            return Err(Error::InvalidArgument("words must share a positive length".into()));
        }
        if words.iter().flatten().any(|&e| e >= field.q()) {
            return Err(Error::InvalidArgument("entry outside the field".into()));
        }
        Ok(UnrestrictedCode { field: field.clone(), n, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn check_cap(code: &dyn CodeSpace, cap: u128) -> Result<u128> {
    let size = code.size();
    if size > cap {
        return Err(Error::CapExceeded { what: "code size", value: size, cap });
    }
    Ok(size)
}

/// Visits the codewords with message indices in `start..end`.
///
/// Message index `i` corresponds to the digits of `i` in base `q`, most significant
/// digit first, and the codeword is `sum_j d_j * row_j`.
pub fn visit_range<F: FnMut(&[Elem])>(code: &dyn CodeSpace, start: u128, end: u128, mut visit: F) {
    let k = code.dimension();
    let n = code.length();
    let alpha = code.alphabet();
    let q = code.scalars().q();
    let rows = code.rows();
    let embedded: Vec<Elem> = (0..q).map(|c| code.embed_scalar(c)).collect();
    if start >= end {
        return;
    }
    let mut digits = vec![0u32; k];
    let mut rest = start;
    for j in (0..k).rev() {
        digits[j] = (rest % q as u128) as u32;
        rest /= q as u128;
    }
    let mut word = vec![0; n];
    for (j, &d) in digits.iter().enumerate() {
        if d != 0 {
            let c = embedded[d as usize];
            for (w, &r) in word.iter_mut().zip(&rows[j]) {
                *w = alpha.add(*w, alpha.mul(c, r));
            }
        }
    }
    // delta[d] = embed(d + 1) - embed(d), and wrap = -embed(q - 1)
    let delta: Vec<Elem> = (0..q - 1)
        .map(|d| alpha.sub(embedded[d as usize + 1], embedded[d as usize]))
        .collect();
    let wrap = alpha.neg(embedded[q as usize - 1]);
    let mut idx = start;
    loop {
        visit(&word);
        idx += 1;
        if idx >= end {
            return;
        }
        let mut j = k;
        while j > 0 {
            j -= 1;
            let d = digits[j];
            let (c, carry) = if d + 1 == q { (wrap, true) } else { (delta[d as usize], false) };
            digits[j] = if carry { 0 } else { d + 1 };
            for (w, &r) in word.iter_mut().zip(&rows[j]) {
                *w = alpha.add(*w, alpha.mul(c, r));
            }
            if !carry {
                break;
            }
        }
    }
}

/// Every codeword exactly once, in message odometer order.
pub fn enumerate_codewords(code: &dyn CodeSpace, cap: u128) -> Result<Vec<Vec<Elem>>> {
    let size = check_cap(code, cap)?;
    let mut out = Vec::with_capacity(size as usize);
    visit_range(code, 0, size, |w| out.push(w.to_vec()));
    Ok(out)
}

/// Visits every codeword after checking the cap.
pub fn for_each_codeword<F: FnMut(&[Elem])>(code: &dyn CodeSpace, cap: u128, visit: F) -> Result<()> {
    let size = check_cap(code, cap)?;
    visit_range(code, 0, size, visit);
    Ok(())
}

/// Minimum Hamming weight over nonzero codewords.
pub fn min_hamming_distance(code: &dyn CodeSpace, cap: u128) -> Result<usize> {
    let mut best = usize::MAX;
    for_each_codeword(code, cap, |w| {
        let h = hamming_weight(w);
        if h > 0 && h < best {
            best = h;
        }
    })?;
    if best == usize::MAX {
        return Err(Error::ZeroCode);
    }
    Ok(best)
}

/// Whether `word` lies in the span of the rows over the scalar field (small codes only).
pub fn contains_by_enumeration(code: &dyn CodeSpace, word: &[Elem], cap: u128) -> Result<bool> {
    let mut found = false;
    for_each_codeword(code, cap, |w| found |= w == word)?;
    Ok(found)
}
