//! Codewords of length at most 32 packed into a `u128`, four bits per coordinate.
//!
//! Addition is lane-wise XOR in characteristic 2 and a branch-free lane-wise reduction
//! modulo `p` for small prime fields. Zero windows of every length come from repeatedly
//! AND-ing the zero-lane mask with its rotations.

use super::census::Census;
use crate::algebra::arith::divisors;
use crate::algebra::Elem;
use crate::codes::CodeSpace;

pub type PackedWord = u128;

const LANE_BITS: usize = 4;
pub const MAX_PACKED_LENGTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lanes {
    Xor,
    ModP(u32),
}

/// Packed rows of a code plus the constants the lane arithmetic needs.
#[derive(Debug, Clone)]
pub struct PackedCode {
    n: usize,
    p: u32,
    lanes: Lanes,
    ones: u128,
    mask: u128,
    /// `(8 - p) * ones`, the bias that moves `s >= p` to bit 3 of each lane.
    bias: u128,
    /// Packed `1 * row_j`.
    lead_rows: Vec<u128>,
    /// For each message position, the rows `x^e * row_j` for `e < s`.
    basis: Vec<Vec<u128>>,
    divs: Vec<usize>,
}

pub fn pack(x: &[Elem]) -> u128 {
    x.iter().enumerate().fold(0, |acc, (i, &e)| acc | (e as u128) << (LANE_BITS * i))
}

impl PackedCode {
    /// `None` when the alphabet or length is not supported.
    pub fn new(code: &dyn CodeSpace) -> Option<Self> {
        let n = code.length();
        let alpha = code.alphabet();
        if n == 0 || n > MAX_PACKED_LENGTH {
            return None;
        }
        let lanes = if alpha.p() == 2 && alpha.q() <= 16 {
            Lanes::Xor
        } else if alpha.is_prime_field() && alpha.p() <= 7 {
            Lanes::ModP(alpha.p())
        } else {
            return None;
        };
        let scalars = code.scalars();
        let ones = (0..n).fold(0u128, |acc, i| acc | 1 << (LANE_BITS * i));
        let mask = ones * 0xf;
        let p = alpha.p();
        let bias = ones * (8 - p.min(8)) as u128;
        let rows = code.rows();
        let lead_rows = rows
            .iter()
            .map(|r| pack(&r.iter().map(|&e| alpha.mul(e, code.embed_scalar(1))).collect::<Vec<_>>()))
            .collect();
        // x^e in the scalar field is the element with a single base-p digit e set to 1
        let basis = rows
            .iter()
            .map(|r| {
                (0..scalars.s())
                    .map(|e| {
                        let c = code.embed_scalar(scalars.p().pow(e));
                        pack(&r.iter().map(|&v| alpha.mul(v, c)).collect::<Vec<_>>())
                    })
                    .collect()
            })
            .collect();
        let divs = divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d < n).collect();
        Some(PackedCode { n, p: scalars.p(), lanes, ones, mask, bias, lead_rows, basis, divs })
    }

    #[inline(always)]
    fn add(&self, a: u128, b: u128) -> u128 {
        match self.lanes {
            Lanes::Xor => a ^ b,
            Lanes::ModP(p) => {
                let s = a + b;
                let ge = ((s + self.bias) >> 3) & self.ones;
                s - ge * p as u128
            }
        }
    }

    /// Lane `i` of the result is lane `i + j mod n` of `x`, for `1 <= j < n`.
    #[inline(always)]
    fn rot(&self, x: u128, j: usize) -> u128 {
        ((x >> (LANE_BITS * j)) | (x << (LANE_BITS * (self.n - j)))) & self.mask
    }

    #[inline(always)]
    fn tally(&self, w: u128, profile: &mut [usize; MAX_PACKED_LENGTH], census: &mut Census) {
        let nz = (w | w >> 1 | w >> 2 | w >> 3) & self.ones;
        let z = self.ones & !nz;
        let mut m = z;
        let mut b = 0;
        while m != 0 {
            profile[b] = m.count_ones() as usize;
            b += 1;
            m &= self.rot(z, b);
        }
        let period = self.divs.iter().copied().find(|&t| self.rot(w, t) == w).unwrap_or(self.n);
        census.record(&profile[..b], period);
    }

    /// Visits projective representatives with leading message position `lead` and
    /// indices `lo..hi` of a p-ary Gray code over the remaining positions.
    pub(crate) fn run(&self, lead: usize, lo: u128, hi: u128, census: &mut Census) {
        let free: Vec<u128> = self.basis[lead + 1..].iter().flatten().copied().collect();
        let p = self.p as u128;
        let mut word = self.lead_rows[lead];
        // state after `lo` steps: digit d was bumped floor(lo/p^d) - floor(lo/p^{d+1}) times
        let mut scale = 1u128;
        for row in &free {
            if scale > lo {
                break;
            }
            let bumps = (lo / scale - lo / scale / p) % p;
            for _ in 0..bumps {
                word = self.add(word, *row);
            }
            scale = scale.saturating_mul(p);
        }
        let mut profile = [0usize; MAX_PACKED_LENGTH];
        let mut idx = lo;
        loop {
            self.tally(word, &mut profile, census);
            idx += 1;
            if idx >= hi {
                return;
            }
            let d = if p == 2 {
                idx.trailing_zeros() as usize
            } else {
                let mut d = 0;
                let mut v = idx;
                while v.is_multiple_of(p) {
                    v /= p;
                    d += 1;
                }
                d
            };
            word = self.add(word, free[d]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldTable, Polynomial};
    use crate::codes::CyclicCode;
    use crate::spectra::census::{census, CensusOptions};

    #[test]
    fn packed_matches_generic() {
        for (q, n, g) in [
            (2u64, 7usize, vec![1u32, 1, 0, 1]),
            (3, 8, vec![2, 1]),
            (4, 5, vec![1, 1]),
            (5, 6, vec![4, 1]),
            (7, 6, vec![1]),
            (2, 15, vec![1, 1, 0, 0, 1]),
        ] {
            let f = FieldTable::of_size(q).unwrap();
            let code = CyclicCode::from_generator(n, &Polynomial::new(&f, g)).unwrap();
            assert!(PackedCode::new(&code).is_some());
            let opts = CensusOptions::default();
            let a = census(&code, &opts).unwrap();
            let b = census(&code, &CensusOptions { generic_only: true, ..opts }).unwrap();
            assert_eq!(a, b, "q = {q}, n = {n}");
            let c = census(&code, &CensusOptions { workers: 3, ..opts }).unwrap();
            assert_eq!(a, c);
        }
    }

    #[test]
    fn lane_arithmetic() {
        let f = FieldTable::new(5, 1).unwrap();
        let code = CyclicCode::from_generator(4, &Polynomial::one(&f)).unwrap();
        let pc = PackedCode::new(&code).unwrap();
        let a = pack(&[4, 3, 0, 2]);
        let b = pack(&[4, 2, 1, 3]);
        assert_eq!(pc.add(a, b), pack(&[3, 0, 1, 0]));
        assert_eq!(pc.rot(pack(&[1, 2, 3, 4]), 1), pack(&[2, 3, 4, 1]));
    }
}
