use std::sync::Arc;

use serde::Serialize;

use super::{CodeSpace, LinearCode};
use crate::algebra::arith::gcd;
use crate::algebra::{CyclotomicFactorization, Elem, Field, Polynomial};
use crate::error::{Error, Result};

/// One irreducible factor `h_i` of the check polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFactor {
    /// Coefficients, lowest degree first, in the field's serialized form.
    pub poly: Vec<i64>,
    /// `s_i = deg h_i`.
    pub s: usize,
    /// `t_i = per(h_i)`.
    pub t: u64,
    /// Leader `c` of the cyclotomic coset with `h_i` the minimal polynomial of `zeta^c`.
    pub leader: u64,
}

/// A cyclic code of length `n` coprime to `q`, described by which irreducible factors of
/// `x^n - 1` divide its generator polynomial.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub g: Polynomial,
    pub h: Polynomial,
    pub factorization: Arc<CyclotomicFactorization>,
    /// `in_g[i]` is true when factor `i` of `x^n - 1` divides `g`.
    pub in_g: Vec<bool>,
    pub h_factors: Vec<CheckFactor>,
    linear: LinearCode,
}

impl CyclicCode {
    /// Builds the code whose generator is the product of the chosen factors.
    pub fn from_factor_subset(fact: &Arc<CyclotomicFactorization>, in_g: Vec<bool>) -> Result<Self> {
        let field = fact.field.clone();
        let n = fact.n;
        if in_g.len() != fact.len() {
            return Err(Error::InvalidArgument("factor mask has the wrong length".into()));
        }
        if in_g.iter().all(|&b| b) {
            return Err(Error::ZeroCode);
        }
        let mut g = Polynomial::one(&field);
        let mut h = Polynomial::one(&field);
        let mut h_factors = Vec::new();
        for (i, f) in fact.factors.iter().enumerate() {
            if in_g[i] {
                g = g.mul(f);
            } else {
                h = h.mul(f);
                h_factors.push(CheckFactor {
                    poly: f.serialize(),
                    s: fact.degree(i),
                    t: fact.periods[i],
                    leader: fact.cosets[i].leader,
                });
            }
        }
        let k = n - g.degree().expect("g is nonzero");
        let rows = (0..k)
            .map(|i| {
                let mut row = vec![0; n];
                for (j, &c) in g.coeffs().iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect();
        let linear = LinearCode::new(&field, rows)?;
        Ok(CyclicCode { field, n, k, g, h, factorization: fact.clone(), in_g, h_factors, linear })
    }

    /// `g` must be monic and divide `x^n - 1`, and `g != x^n - 1`.
    pub fn from_generator(n: usize, g: &Polynomial) -> Result<Self> {
        let field = g.field().clone();
        let fact = Arc::new(CyclotomicFactorization::new(n, &field)?);
        let target = Polynomial::x_n_minus_1(&field, n);
        if g.is_zero() || !g.is_monic() || !g.divides(&target) {
            return Err(Error::NotADivisor(n));
        }
        // x^n - 1 is squarefree, so each factor divides g at most once
        let in_g = fact.factors.iter().map(|f| f.divides(g)).collect();
        Self::from_factor_subset(&fact, in_g)
    }

    /// The code with check polynomial `h`, i.e. generator `(x^n - 1)/h`.
    pub fn from_check(n: usize, h: &Polynomial) -> Result<Self> {
        let field = h.field().clone();
        let target = Polynomial::x_n_minus_1(&field, n);
        let h = h.monic();
        if h.is_zero() || !h.divides(&target) {
            return Err(Error::NotADivisor(n));
        }
        if h.degree() == Some(0) {
            return Err(Error::ZeroCode);
        }
        let (g, _) = target.divrem(&h)?;
        Self::from_generator(n, &g)
    }

    /// The code whose zeros are `zeta^j` for `j` in the union of the cosets with the
    /// given leaders.
    pub fn from_defining_set(n: usize, field: &Field, leaders: &[u64]) -> Result<Self> {
        let fact = Arc::new(CyclotomicFactorization::new(n, field)?);
        let mut in_g = vec![false; fact.len()];
        for &l in leaders {
            let pos = fact.cosets.iter().position(|c| c.leader == l);
            match pos {
                Some(i) => in_g[i] = true,
                None => return Err(Error::InvalidLeader { leader: l as usize, n }),
            }
        }
        Self::from_factor_subset(&fact, in_g)
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// Leaders of the cosets making up the defining set (zeros of `g`).
    pub fn defining_set(&self) -> Vec<u64> {
        self.factorization
            .cosets
            .iter()
            .zip(&self.in_g)
            .filter(|(_, &z)| z)
            .map(|(c, _)| c.leader)
            .collect()
    }

    /// True when `h` is irreducible over `F_q`.
    pub fn is_irreducible(&self) -> bool {
        self.h_factors.len() == 1
    }

    pub fn linear(&self) -> &LinearCode {
        &self.linear
    }

    /// Membership: `g(x)` divides `c(x)`.
    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n && self.g.divides(&Polynomial::new(&self.field, word.to_vec()))
    }

    /// A short label such as `[7,4] over F_2`.
    pub fn label(&self) -> String {
        format!("[{},{}] over F_{}", self.n, self.k, self.q())
    }
}

impl CodeSpace for CyclicCode {
    fn alphabet(&self) -> &Field {
        &self.field
    }

    fn scalars(&self) -> &Field {
        &self.field
    }

    fn embed_scalar(&self, c: Elem) -> Elem {
        c
    }

    fn length(&self) -> usize {
        self.n
    }

    fn rows(&self) -> &[Vec<Elem>] {
        &self.linear.generator
    }
}

/// BCH code with defining set the cosets of `offset, offset + 1, ..., offset + delta - 2`.
pub fn bch_code(field: &Field, n: usize, delta: usize, offset: u64) -> Result<CyclicCode> {
    if delta < 2 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let q = field.q() as u64;
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    let fact = Arc::new(CyclotomicFactorization::new(n, field)?);
    let mut in_g = vec![false; fact.len()];
    for j in 0..(delta as u64 - 1) {
        in_g[fact.coset_of(offset + j)] = true;
    }
    CyclicCode::from_factor_subset(&fact, in_g)
}

/// Reed-Solomon code of length `q - 1` and dimension `k`: narrow-sense BCH with designed
/// distance `q - k`.
pub fn rs_code(field: &Field, k: usize) -> Result<CyclicCode> {
    let n = field.q() as usize - 1;
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    if k == n {
        return CyclicCode::from_defining_set(n, field, &[]);
    }
    bch_code(field, n, n - k + 1, 1)
}
