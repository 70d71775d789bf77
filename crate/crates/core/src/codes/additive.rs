use super::CodeSpace;
use crate::algebra::linalg::rank;
use crate::algebra::{Elem, Field, FieldTable, Subfield};
use crate::error::{Error, Result};

/// An `F_q`-linear code over the alphabet `F_{q^t}` with `q^{k_0}` codewords.
#[derive(Debug, Clone)]
pub struct AdditiveCode {
    pub sub: Subfield,
    pub n: usize,
    pub basis: Vec<Vec<Elem>>,
}

impl AdditiveCode {
    /// `basis` must be `F_q`-linearly independent words over `F_{q^t}`.
    pub fn new(base: &Field, t: u32, basis: Vec<Vec<Elem>>) -> Result<Self> {
        let big = FieldTable::new(base.p() as u64, base.s() * t)?;
        let sub = Subfield::new(base, &big)?;
        let n = basis.first().map_or(0, |b| b.len());
        if basis.is_empty() {
            return Err(Error::ZeroCode);
        }
        if n == 0 || basis.iter().any(|b| b.len() != n) || basis.iter().flatten().any(|&e| e >= big.q()) {
            return Err(Error::InvalidArgument("basis words must share a length and lie in F_{q^t}".into()));
        }
        let coords = coordinate_table(&sub);
        let expanded: Vec<Vec<Elem>> = basis
            .iter()
            .map(|w| w.iter().flat_map(|&e| coords[e as usize].iter().copied()).collect())
            .collect();
        if rank(base, &expanded) != basis.len() {
            return Err(Error::InvalidArgument("basis is not F_q-linearly independent".into()));
        }
        Ok(AdditiveCode { sub, n, basis })
    }

    /// Extension degree `t`.
    pub fn t(&self) -> u32 {
        self.sub.degree()
    }
}

/// Coordinates of every element of `F_{q^t}` in the basis `1, w, ..., w^{t-1}`.
fn coordinate_table(sub: &Subfield) -> Vec<Vec<Elem>> {
    let big = sub.big();
    let small = sub.small();
    let t = sub.degree() as usize;
    let q = small.q() as u64;
    let mut table = vec![Vec::new(); big.q() as usize];
    let total = q.pow(t as u32);
    for idx in 0..total {
        let mut digits = Vec::with_capacity(t);
        let mut rest = idx;
        for _ in 0..t {
            digits.push((rest % q) as Elem);
            rest /= q;
        }
        let x = digits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &d)| big.add(acc, big.mul(sub.embed(d), big.exp(j as u64))));
        table[x as usize] = digits;
    }
    table
}

impl CodeSpace for AdditiveCode {
    fn alphabet(&self) -> &Field {
        self.sub.big()
    }

    fn scalars(&self) -> &Field {
        self.sub.small()
    }

    fn embed_scalar(&self, c: Elem) -> Elem {
        self.sub.embed(c)
    }

    fn length(&self) -> usize {
        self.n
    }

    fn rows(&self) -> &[Vec<Elem>] {
        &self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{enumerate_codewords, DEFAULT_ENUMERATION_CAP};
    use std::collections::BTreeSet;

    #[test]
    fn additive_span() {
        let f2 = FieldTable::new(2, 1).unwrap();
        // over F_4 = {0, 1, a, a^2 = 3}
        let code = AdditiveCode::new(&f2, 2, vec![vec![1, 2], vec![2, 3]]).unwrap();
        let words = enumerate_codewords(&code, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(words.len(), 4);
        let set: BTreeSet<_> = words.into_iter().collect();
        assert!(set.contains(&vec![3, 1]));
        assert!(AdditiveCode::new(&f2, 2, vec![vec![1, 2], vec![1, 2]]).is_err());
        // a and 1 are independent over F_2, unlike over F_4
        assert!(AdditiveCode::new(&f2, 2, vec![vec![1], vec![2]]).is_ok());
    }
}
