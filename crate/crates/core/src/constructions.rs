//! Codes that attain the extremal numbers of b-weights and b-distances.

use serde::Serialize;

use crate::algebra::{Elem, FieldTable, Subfield};
use crate::codes::{projective_points, LinearCode};
use crate::error::{Error, Result};
use crate::spectra::distance_spectrum;

/// Default largest mark count for the optimal Golomb ruler search.
pub const GOLOMB_CAP: usize = 9;

/// Largest number of projective points for the maximum-weight-spectrum construction.
pub const MWS_POINT_CAP: u128 = 24;

/// Inserts `b - 1` zeros after every coordinate. Every nonzero coordinate of the result
/// lies in exactly `b` windows and no window holds two of them, so `w_b` of the spread
/// word is `b` times the Hamming weight of the original.
pub fn spread_code(words: &[Vec<Elem>], b: usize) -> Vec<Vec<Elem>> {
    words.iter().map(|w| spread_word(w, b)).collect()
}

fn spread_word(w: &[Elem], b: usize) -> Vec<Elem> {
    let b = b.max(1);
    let mut out = vec![0; w.len() * b];
    for (i, &x) in w.iter().enumerate() {
        out[i * b] = x;
    }
    out
}

/// The spread of a linear code, spreading each generator row.
pub fn spread_linear(code: &LinearCode, b: usize) -> Result<LinearCode> {
    LinearCode::new(&code.field, spread_code(&code.generator, b))
}

/// A `(v, k, lambda)` difference set in `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSet {
    pub v: u64,
    pub elements: Vec<u64>,
    pub k: usize,
    pub lambda: u64,
}

impl DifferenceSet {
    /// Counts every difference `d - d'` of distinct elements and checks each nonzero
    /// residue occurs exactly `lambda` times.
    pub fn verify(&self) -> bool {
        let v = self.v as usize;
        let mut counts = vec![0u64; v];
        for &a in &self.elements {
            for &b in &self.elements {
                if a != b {
                    counts[((a + self.v - b) % self.v) as usize] += 1;
                }
            }
        }
        self.elements.len() == self.k && counts[1..].iter().all(|&c| c == self.lambda)
    }
}

/// The Singer difference set `{0 <= i < (Q-1)/(q-1) : Tr(alpha^i) = 0}` in `F_Q`,
/// `Q = q^m`, with parameters `((Q-1)/(q-1), (q^{m-1}-1)/(q-1), (q^{m-2}-1)/(q-1))`.
/// The result is verified before it is returned.
pub fn singer_difference_set(q: u64, m: u32) -> Result<DifferenceSet> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("Singer sets need m >= 3, got {m}")));
    }
    let small = FieldTable::of_size(q)?;
    let big = FieldTable::new(small.p() as u64, small.s() * m)?;
    let sub = Subfield::new(&small, &big)?;
    let v = (big.q() as u64 - 1) / (q - 1);
    let elements: Vec<u64> = (0..v).filter(|&i| sub.trace(big.exp(i)) == 0).collect();
    let set = DifferenceSet {
        v,
        k: ((q.pow(m - 1) - 1) / (q - 1)) as usize,
        lambda: (q.pow(m - 2) - 1) / (q - 1),
        elements,
    };
    if !set.verify() {
        return Err(Error::InvalidArgument(format!("trace-zero set for q = {q}, m = {m} failed the difference count")));
    }
    Ok(set)
}

/// Word made of `count` blocks `(1, 0^{b-1})` followed by zeros, length `b len`.
fn block_word(count: u64, b: usize, len: u64) -> Vec<Elem> {
    let mut w = vec![0; b * len as usize];
    for j in 0..count as usize {
        w[j * b] = 1;
    }
    w
}

/// A binary code together with the evidence that its b-distances are all distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctDistanceCode {
    pub b: usize,
    pub n: usize,
    pub words: Vec<Vec<Elem>>,
    /// The marks `a_i`: word `i` consists of `a_i` blocks `(1, 0^{b-1})`.
    pub marks: Vec<u64>,
    /// The sorted set of pairwise b-distances.
    pub distances: Vec<usize>,
    /// True when the number of distinct distances is `C(M, 2)`.
    pub all_distinct: bool,
}

fn block_code(marks: Vec<u64>, len: u64, b: usize) -> Result<DistinctDistanceCode> {
    if b == 0 {
        return Err(Error::BOutOfRange { b, max: len as usize });
    }
    let f2 = FieldTable::new(2, 1)?;
    let words: Vec<Vec<Elem>> = marks.iter().map(|&a| block_word(a, b, len)).collect();
    let distances = distance_spectrum(&f2, &words, b)?;
    let m = marks.len();
    Ok(DistinctDistanceCode { b, n: b * len as usize, all_distinct: distances.len() == m * (m - 1) / 2, words, marks, distances })
}

/// `M = q + 1` binary words of length `b (q^2 + q + 1)` built from the planar Singer set
/// `{a_1, ..., a_{q+1}}`: word `i` is `a_i` copies of `(1, 0^{b-1})`, so
/// `d_b(c_i, c_j) = b |a_i - a_j|`, and these are distinct because `lambda = 1`.
pub fn singer_unrestricted_code(q: u64, b: usize) -> Result<DistinctDistanceCode> {
    let set = singer_difference_set(q, 3)?;
    block_code(set.elements, set.v, b)
}

/// Marks `0 = a_1 < ... < a_M` with all pairwise differences distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GolombRuler {
    pub m: usize,
    pub marks: Vec<u64>,
    pub length: u64,
}

impl GolombRuler {
    pub fn verify(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.marks.first() == Some(&0)
            && self.marks.windows(2).all(|w| w[0] < w[1])
            && self.marks.iter().enumerate().all(|(i, &a)| self.marks[i + 1..].iter().all(|&c| seen.insert(c - a)))
    }
}

/// A shortest Golomb ruler with `m` marks, by exhaustive search over increasing lengths.
/// The first ruler found at a given length is returned; no shorter one exists.
pub fn golomb_ruler_optimal(m: usize) -> Result<GolombRuler> {
    golomb_ruler_optimal_capped(m, GOLOMB_CAP)
}

pub fn golomb_ruler_optimal_capped(m: usize, cap: usize) -> Result<GolombRuler> {
    if m > cap {
        return Err(Error::CapExceeded { what: "Golomb marks", value: m as u128, cap: cap as u128 });
    }
    match m {
        0 => return Err(Error::InvalidArgument("a ruler needs at least one mark".into())),
        1 => return Ok(GolombRuler { m, marks: vec![0], length: 0 }),
        _ => {}
    }
    let mut len = (m * (m - 1) / 2) as u64;
    loop {
        if len >= 128 {
            return Err(Error::CapExceeded { what: "Golomb length", value: len as u128, cap: 127 });
        }
        let mut marks = vec![0u64];
        // the ruler spans [0, len]; difference `len` is used by the end marks
        if search(&mut marks, 1u128 << len, m, len) {
            marks.push(len);
            let r = GolombRuler { m, marks, length: len };
            debug_assert!(r.verify());
            return Ok(r);
        }
        len += 1;
    }
}

/// Places the interior marks in increasing order. `used` holds the differences taken so
/// far, including those to the final mark at `len`.
fn search(marks: &mut Vec<u64>, used: u128, m: usize, len: u64) -> bool {
    let placed = marks.len();
    if placed == m - 1 {
        return true;
    }
    let last = *marks.last().unwrap();
    // after x there are `r` more interior marks, hence r + 1 distinct gaps up to `len`
    let r = (m - 2 - placed) as u64;
    for x in last + 1..len {
        if len - x < (r + 1) * (r + 2) / 2 {
            break;
        }
        // mirror symmetry: the first gap is at most the gap to the end
        if placed == 1 && x > len - x {
            break;
        }
        let mut add = 0u128;
        let mut ok = true;
        for &a in marks.iter().chain(std::iter::once(&len)) {
            let d = a.abs_diff(x);
            let bit = 1u128 << d;
            if used & bit != 0 || add & bit != 0 {
                ok = false;
                break;
            }
            add |= bit;
        }
        if !ok {
            continue;
        }
        marks.push(x);
        if search(marks, used | add, m, len) {
            return true;
        }
        marks.pop();
    }
    false
}

/// `M` binary words of length `b G(M)` from an optimal Golomb ruler: word `i` is `a_i`
/// blocks `(1, 0^{b-1})`. No padding is needed since no word has more than `G(M)` blocks.
pub fn golomb_code(m: usize, b: usize) -> Result<DistinctDistanceCode> {
    if m < 2 {
        return Err(Error::InvalidArgument("M must be at least 2".into()));
    }
    let ruler = golomb_ruler_optimal(m)?;
    block_code(ruler.marks, ruler.length, b)
}

/// A `k`-dimensional code over `F_q` whose nonzero Hamming weights are all distinct up to
/// scaling: the column for projective point `j` is repeated `2^j` times. The weight of
/// the word for message `u` is `sum 2^j` over the points `P_j` with `u . P_j != 0`, and
/// distinct hyperplanes give distinct binary expansions.
pub fn mws_linear_code(k: usize, q: u64) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let f = FieldTable::of_size(q)?;
    let points_count = crate::bounds::linear_max_weights(k, q);
    if points_count > MWS_POINT_CAP {
        return Err(Error::CapExceeded { what: "projective points", value: points_count, cap: MWS_POINT_CAP });
    }
    let points = projective_points(&f, k);
    let mut rows = vec![Vec::new(); k];
    for (j, p) in points.iter().enumerate() {
        for _ in 0..1usize << j {
            for (r, &x) in rows.iter_mut().zip(p) {
                r.push(x);
            }
        }
    }
    LinearCode::new(&f, rows)
}

/// The spread of [`mws_linear_code`]: `|W_b| = (q^k - 1)/(q - 1)` for every `b`.
pub fn mbsw_code(k: usize, q: u64, b: usize) -> Result<LinearCode> {
    if b == 0 {
        return Err(Error::BOutOfRange { b, max: usize::MAX });
    }
    spread_linear(&mws_linear_code(k, q)?, b)
}

/// A code of length `2n` whose symplectic weights are the Hamming weights of the
/// maximum-weight-spectrum code: each word is `(c, 0)`, the preimage of `c` under the
/// pair packing `(x, y) -> x + omega y`.
pub fn symplectic_mws_code(k: usize, q: u64) -> Result<LinearCode> {
    let base = mws_linear_code(k, q)?;
    let rows = base.generator.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, r.len())).collect()).collect();
    LinearCode::new(&base.field, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{enumerate_codewords, DEFAULT_ENUMERATION_CAP};
    use crate::spectra::{weight_spectrum, CensusOptions};
    use crate::vectors::{b_weight_slice, hamming_weight};

    #[test]
    fn spread_words() {
        assert_eq!(spread_code(&[vec![1, 1]], 1), vec![vec![1, 1]]);
        let s = spread_code(&[vec![1, 1]], 2);
        assert_eq!(s, vec![vec![1, 0, 1, 0]]);
        assert_eq!(b_weight_slice(&s[0], 2), 4);
    }

    #[test]
    fn singer_sets() {
        for (q, m, v, k, l) in [(2, 3, 7, 3, 1), (2, 4, 15, 7, 3), (3, 3, 13, 4, 1)] {
            let d = singer_difference_set(q, m).unwrap();
            assert_eq!((d.v, d.k, d.lambda), (v, k, l));
            assert!(d.verify());
        }
    }

    #[test]
    fn singer_codes() {
        for (q, b) in [(2, 1), (2, 3), (3, 2)] {
            let c = singer_unrestricted_code(q, b).unwrap();
            assert!(c.all_distinct);
            assert_eq!(c.n, b * (q * q + q + 1) as usize);
            assert_eq!(c.distances.len(), ((q + 1) * q / 2) as usize);
        }
    }

    #[test]
    fn golomb() {
        let lengths: Vec<u64> = (2..=6).map(|m| golomb_ruler_optimal(m).unwrap().length).collect();
        assert_eq!(lengths, vec![1, 3, 6, 11, 17]);
        assert!(golomb_ruler_optimal(4).unwrap().verify());
        assert!(matches!(golomb_ruler_optimal(10), Err(Error::CapExceeded { .. })));
        let c = golomb_code(3, 2).unwrap();
        assert!(c.all_distinct && c.words.len() == 3 && c.n == 6);
        assert_eq!(golomb_code(4, 1).unwrap().distances.len(), 6);
    }

    #[test]
    fn mws() {
        let c = mws_linear_code(2, 2).unwrap();
        assert_eq!((c.n, c.k), (7, 2));
        let w = weight_spectrum(&c, 1, &CensusOptions::default()).unwrap();
        assert_eq!(w.weights, vec![3, 5, 6]);
        assert_eq!(weight_spectrum(&mws_linear_code(1, 3).unwrap(), 1, &CensusOptions::default()).unwrap().size, 1);
        assert_eq!(weight_spectrum(&mws_linear_code(2, 3).unwrap(), 1, &CensusOptions::default()).unwrap().size, 4);
        let s = mbsw_code(3, 2, 2).unwrap();
        assert_eq!(weight_spectrum(&s, 2, &CensusOptions::default()).unwrap().size, 7);
    }

    #[test]
    fn symplectic_attains_the_maximum() {
        let c = symplectic_mws_code(2, 2).unwrap();
        let words = enumerate_codewords(&c, DEFAULT_ENUMERATION_CAP).unwrap();
        let n = c.n / 2;
        let mut weights: Vec<usize> = words
            .iter()
            .filter(|w| hamming_weight(w) > 0)
            .map(|w| (0..n).filter(|&i| w[i] != 0 || w[n + i] != 0).count())
            .collect();
        weights.sort();
        weights.dedup();
        assert_eq!(weights.len(), 3);
    }
}
