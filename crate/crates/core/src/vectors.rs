//! Words, cyclic zero runs, and the b-symbol weight.
//!
//! For a word `x` of length `n` and `1 <= b <= n`, `pi_b(x)` is the word whose `i`-th
//! symbol is the cyclic window `(x_i, ..., x_{i+b-1})`. The b-symbol weight `w_b(x)` is
//! the Hamming weight of `pi_b(x)`, that is `n` minus the number of all-zero windows.

use serde::Serialize;

use crate::algebra::{Elem, Field, FieldTable, Subfield};
use crate::error::{Error, Result};

/// A word over a table-backed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub field: Field,
    pub entries: Vec<Elem>,
}

impl Word {
    pub fn new(field: &Field, entries: Vec<Elem>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("words have positive length".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= field.q()) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element of F_{}", field.q())));
        }
        Ok(Word { field: field.clone(), entries })
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Word { field: field.clone(), entries: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `c * x`.
    pub fn scale(&self, c: Elem) -> Word {
        let f = &self.field;
        Word { field: f.clone(), entries: self.entries.iter().map(|&e| f.mul(c, e)).collect() }
    }

    /// The cyclic shift by `i` places: coordinate `j` moves to `j + i mod n`.
    pub fn rotate(&self, i: usize) -> Word {
        let mut v = self.entries.clone();
        let n = v.len();
        v.rotate_right(i % n);
        Word { field: self.field.clone(), entries: v }
    }

    pub fn serialize(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| self.field.serialize_elem(e)).collect()
    }
}

fn check_b(b: usize, n: usize) -> Result<()> {
    if b == 0 || b > n {
        Err(Error::BOutOfRange { b, max: n })
    } else {
        Ok(())
    }
}

pub fn hamming_weight(x: &[Elem]) -> usize {
    x.iter().filter(|&&e| e != 0).count()
}

/// The cyclic windows `(x_i, ..., x_{i+b-1})` for `i = 0..n`.
pub fn pi_b(x: &Word, b: usize) -> Result<Vec<Vec<Elem>>> {
    let n = x.len();
    check_b(b, n)?;
    Ok((0..n).map(|i| (0..b).map(|j| x.entries[(i + j) % n]).collect()).collect())
}

/// Number of cyclic start positions whose length-`b` window is all zero.
pub fn zero_windows(x: &[Elem], b: usize) -> usize {
    let n = x.len();
    (0..n).filter(|&i| (0..b).all(|j| x[(i + j) % n] == 0)).count()
}

/// `w_b(x)` straight from the definition.
pub fn b_weight_direct(x: &Word, b: usize) -> Result<usize> {
    check_b(b, x.len())?;
    Ok(x.len() - zero_windows(&x.entries, b))
}

/// `w_b` of a raw coordinate slice via its zero runs, without range checks on `b`.
pub fn b_weight_slice(x: &[Elem], b: usize) -> usize {
    let rd = run_distribution_slice(x);
    rd.weight_unchecked(b)
}

/// Counts `Psi(x, 0_i)` of maximal cyclic zero runs of each length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunDistribution {
    pub n: usize,
    /// `psi[i]` for `0 <= i <= n`; `psi[0]` is always zero.
    pub psi: Vec<usize>,
    pub all_zero: bool,
}

impl RunDistribution {
    /// Largest `i` with `psi[i] > 0`, or 0 when there is no zero coordinate.
    pub fn max_run(&self) -> usize {
        if self.all_zero {
            return self.n;
        }
        self.psi.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    fn weight_unchecked(&self, b: usize) -> usize {
        if self.all_zero {
            return 0;
        }
        let zeros: usize = (b..self.n).map(|i| (i + 1 - b) * self.psi[i]).sum();
        self.n - zeros
    }
}

pub fn run_distribution(x: &Word) -> RunDistribution {
    run_distribution_slice(&x.entries)
}

pub fn run_distribution_slice(x: &[Elem]) -> RunDistribution {
    let n = x.len();
    let mut psi = vec![0; n + 1];
    let Some(start) = x.iter().position(|&e| e != 0) else {
        return RunDistribution { n, psi: Vec::new(), all_zero: true };
    };
    let mut run = 0;
    for k in 1..=n {
        if x[(start + k) % n] == 0 {
            run += 1;
        } else {
            if run > 0 {
                psi[run] += 1;
            }
            run = 0;
        }
    }
    RunDistribution { n, psi, all_zero: false }
}

/// `w_b = n - sum_{i=b}^{n-1} (i - b + 1) psi[i]`.
pub fn b_weight_from_runs(rd: &RunDistribution, b: usize, n: usize) -> Result<usize> {
    if rd.n != n {
        return Err(Error::InconsistentDistribution(n));
    }
    check_b(b, n)?;
    if rd.all_zero {
        return Ok(0);
    }
    if rd.psi.len() != n + 1 || rd.psi[0] != 0 || rd.psi[n] != 0 {
        return Err(Error::InconsistentDistribution(n));
    }
    let used: usize = rd.psi.iter().enumerate().map(|(i, &c)| i * c).sum();
    let runs: usize = rd.psi.iter().sum();
    // each run needs a nonzero delimiter after it
    if used + runs > n {
        return Err(Error::InconsistentDistribution(n));
    }
    Ok(rd.weight_unchecked(b))
}

/// Least `t | n` with `x_{i+t} = x_i` for all `i`.
pub fn vector_period(x: &Word) -> usize {
    slice_period(&x.entries)
}

pub fn slice_period(x: &[Elem]) -> usize {
    let n = x.len();
    crate::algebra::divisors(n as u64)
        .into_iter()
        .map(|t| t as usize)
        .find(|&t| (0..n).all(|i| x[(i + t) % n] == x[i]))
        .unwrap_or(n)
}

/// Number of `i` with `(x_i, x_{n+i}) != (0, 0)` for a word of length `2n`.
pub fn symplectic_weight(x: &Word) -> Result<usize> {
    let len = x.len();
    if len % 2 == 1 {
        return Err(Error::OddLength(len));
    }
    let n = len / 2;
    Ok((0..n).filter(|&i| x.entries[i] != 0 || x.entries[n + i] != 0).count())
}

/// Result of [`max_zero_run`]; `all_zero` marks the conventional value `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxZeroRun {
    pub length: usize,
    pub all_zero: bool,
}

/// The longest cyclic run of zeros.
pub fn max_zero_run(x: &Word) -> MaxZeroRun {
    let rd = run_distribution(x);
    MaxZeroRun { length: rd.max_run(), all_zero: rd.all_zero }
}

/// Packs each length-`b` window of a word over `F_q` into one symbol of `F_{q^b}`
/// using the basis `1, w, ..., w^{b-1}`, `w` the primitive element of `F_{q^b}`.
#[derive(Debug, Clone)]
pub struct WindowPacker {
    sub: Subfield,
    b: usize,
    powers: Vec<Elem>,
}

impl WindowPacker {
    pub fn new(base: &Field, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::BOutOfRange { b, max: usize::MAX });
        }
        let big = FieldTable::new(base.p() as u64, base.s() * b as u32)?;
        let sub = Subfield::new(base, &big)?;
        let powers = (0..b).map(|j| big.exp(j as u64)).collect();
        Ok(WindowPacker { sub, b, powers })
    }

    pub fn target(&self) -> &Field {
        self.sub.big()
    }

    pub fn pack(&self, x: &Word) -> Result<Word> {
        let n = x.len();
        check_b(self.b, n)?;
        if x.field.q() != self.sub.small().q() {
            return Err(Error::InvalidArgument("word is over a different field".into()));
        }
        let big = self.sub.big();
        let entries = (0..n)
            .map(|i| {
                (0..self.b).fold(0, |acc, j| {
                    big.add(acc, big.mul(self.sub.embed(x.entries[(i + j) % n]), self.powers[j]))
                })
            })
            .collect();
        Ok(Word { field: big.clone(), entries })
    }
}

/// The window packing map into `F_{q^b}^n`; the Hamming weight of the image is `w_b(x)`.
pub fn phi_pack(x: &Word, b: usize) -> Result<Word> {
    check_b(b, x.len())?;
    WindowPacker::new(&x.field, b)?.pack(x)
}

/// Pairs `(x_i, x_{n+i})` packed as `x_i + w x_{n+i}` in `F_{q^2}`.
#[derive(Debug, Clone)]
pub struct PairPacker {
    sub: Subfield,
}

impl PairPacker {
    pub fn new(base: &Field) -> Result<Self> {
        let big = FieldTable::new(base.p() as u64, base.s() * 2)?;
        Ok(PairPacker { sub: Subfield::new(base, &big)? })
    }

    pub fn target(&self) -> &Field {
        self.sub.big()
    }

    pub fn pack(&self, x: &Word) -> Result<Word> {
        let len = x.len();
        if len % 2 == 1 {
            return Err(Error::OddLength(len));
        }
        let n = len / 2;
        let big = self.sub.big();
        let w = big.alpha();
        let entries = (0..n)
            .map(|i| big.add(self.sub.embed(x.entries[i]), big.mul(w, self.sub.embed(x.entries[n + i]))))
            .collect();
        Ok(Word { field: big.clone(), entries })
    }
}

/// The symplectic packing map into `F_{q^2}^n`; the Hamming weight of the image is the
/// symplectic weight of `x`.
pub fn phi_prime(x: &Word) -> Result<Word> {
    if x.len() % 2 == 1 {
        return Err(Error::OddLength(x.len()));
    }
    PairPacker::new(&x.field)?.pack(x)
}
