use serde::Serialize;

use super::{CodeSpace, LinearCode};
use crate::algebra::arith::{gcd, mult_order};
use crate::algebra::{Elem, Field, FieldTable, Subfield};
use crate::error::{Error, Result};

/// Parameters of the irreducible cyclic code `{(Tr(beta theta^i))_{i<n} : beta in F_Q}`.
#[derive(Debug, Clone)]
pub struct TraceCodeParams {
    pub sub: Subfield,
    pub q: u64,
    pub m: u32,
    /// `Q = q^m`.
    pub big_q: u64,
    /// `N`, with `n = (Q - 1)/N`.
    pub big_n: u64,
    pub n: usize,
    /// `theta = alpha^N`, of multiplicative order `n`.
    pub theta: Elem,
    /// `ord_n(q)`, the dimension of the code.
    pub m0: u32,
    /// `gcd((Q - 1)/(q - 1), N)`.
    pub n1: u64,
}

/// Plain-number view of [`TraceCodeParams`] for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceCodeSummary {
    pub q: u64,
    #[serde(rename = "Q")]
    pub big_q: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub n: usize,
    pub m0: u32,
    #[serde(rename = "N1")]
    pub n1: u64,
}

impl TraceCodeParams {
    /// `small` is `F_q`, the code lives over it and `Q = q^m`.
    #[allow(non_snake_case)]
    pub fn new(small: &Field, m: u32, N: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let big = FieldTable::new(small.p() as u64, small.s() * m)?;
        Self::with_big(small, &big, N)
    }

    /// Uses an already built `F_Q`.
    #[allow(non_snake_case)]
    pub fn with_big(small: &Field, big: &Field, N: u64) -> Result<Self> {
        let sub = Subfield::new(small, big)?;
        let q = small.q() as u64;
        let Q = big.q() as u64;
        if N == 0 || !(Q - 1).is_multiple_of(N) {
            return Err(Error::InvalidArgument(format!("N = {N} does not divide Q - 1 = {}", Q - 1)));
        }
        let n = ((Q - 1) / N) as usize;
        let m0 = mult_order(q % n as u64, n as u64) as u32;
        Ok(TraceCodeParams {
            m: sub.degree(),
            sub,
            q,
            big_q: Q,
            big_n: N,
            n,
            theta: big.exp(N),
            m0,
            n1: gcd((Q - 1) / (q - 1), N),
        })
    }

    pub fn small(&self) -> &Field {
        self.sub.small()
    }

    pub fn big(&self) -> &Field {
        self.sub.big()
    }

    pub fn summary(&self) -> TraceCodeSummary {
        TraceCodeSummary { q: self.q, big_q: self.big_q, big_n: self.big_n, n: self.n, m0: self.m0, n1: self.n1 }
    }
}

/// The irreducible cyclic code attached to [`TraceCodeParams`].
#[derive(Debug, Clone)]
pub struct TraceCode {
    pub params: TraceCodeParams,
    linear: LinearCode,
    /// `Tr_{Q/q}` of every element of `F_Q`, indexed by element.
    traces: Vec<Elem>,
}

impl TraceCode {
    pub fn new(params: TraceCodeParams) -> Result<Self> {
        let big = params.big().clone();
        let traces: Vec<Elem> = big.elements().map(|x| params.sub.trace(x)).collect();
        let mut code = TraceCode {
            linear: LinearCode { field: params.small().clone(), n: 0, k: 0, generator: Vec::new() },
            params,
            traces,
        };
        let rows = (0..code.params.m as u64).map(|j| code.codeword(big.exp(j))).collect();
        code.linear = LinearCode::from_spanning(code.params.small(), rows)?;
        Ok(code)
    }

    /// `c(beta) = (Tr(beta), Tr(beta theta), ..., Tr(beta theta^{n-1}))`.
    pub fn codeword(&self, beta: Elem) -> Vec<Elem> {
        let big = self.params.big();
        let mut x = beta;
        let mut out = Vec::with_capacity(self.params.n);
        for _ in 0..self.params.n {
            out.push(self.traces[x as usize]);
            x = big.mul(x, self.params.theta);
        }
        out
    }

    pub fn linear(&self) -> &LinearCode {
        &self.linear
    }
}

impl CodeSpace for TraceCode {
    fn alphabet(&self) -> &Field {
        self.params.small()
    }

    fn scalars(&self) -> &Field {
        self.params.small()
    }

    fn embed_scalar(&self, c: Elem) -> Elem {
        c
    }

    fn length(&self) -> usize {
        self.params.n
    }

    fn rows(&self) -> &[Vec<Elem>] {
        &self.linear.generator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{enumerate_codewords, simplex_code, CyclicCode, DEFAULT_ENUMERATION_CAP};
    use crate::algebra::minimal_polynomial;
    use crate::vectors::hamming_weight;
    use std::collections::BTreeSet;

    fn f2() -> Field {
        FieldTable::new(2, 1).unwrap()
    }

    #[test]
    fn full_length_trace_code_is_simplex() {
        let code = TraceCode::new(TraceCodeParams::new(&f2(), 3, 1).unwrap()).unwrap();
        assert_eq!((code.params.n, code.params.m0, code.linear().k), (7, 3, 3));
        assert!(code.codeword(0).iter().all(|&c| c == 0));
        let words = enumerate_codewords(&code, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(words.iter().skip(1).all(|w| hamming_weight(w) == 4));
        let simplex = simplex_code(3, &f2()).unwrap();
        assert_eq!(enumerate_codewords(&simplex, 100).unwrap().len(), words.len());
    }

    #[test]
    fn dimension_is_m0() {
        let p = TraceCodeParams::new(&f2(), 4, 3).unwrap();
        assert_eq!((p.n, p.m0, p.n1), (5, 4, 3));
        let code = TraceCode::new(p).unwrap();
        assert_eq!(code.linear().k, 4);
        // a subfield subcode: Q = 16, N = 5 gives n = 3 and m0 = 2
        let code = TraceCode::new(TraceCodeParams::new(&f2(), 4, 5).unwrap()).unwrap();
        assert_eq!((code.params.n, code.linear().k), (3, 2));
        let distinct: BTreeSet<_> = code.params.big().elements().map(|b| code.codeword(b)).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn matches_cyclic_code_of_the_inverse() {
        for (q, m) in [(2u64, 4u32), (3, 2), (4, 2)] {
            let small = FieldTable::of_size(q).unwrap();
            let params = TraceCodeParams::new(&small, m, 1).unwrap();
            let big = params.big().clone();
            let inv = big.inv(params.theta).unwrap();
            let h = minimal_polynomial(&params.sub, inv);
            let cyc = CyclicCode::from_check(params.n, &h).unwrap();
            let code = TraceCode::new(params).unwrap();
            let a: BTreeSet<_> = enumerate_codewords(&code, 1 << 16).unwrap().into_iter().collect();
            let b: BTreeSet<_> = enumerate_codewords(&cyc, 1 << 16).unwrap().into_iter().collect();
            assert_eq!(a, b);
        }
    }
}
