//! Cyclotomic cosets, minimal polynomials, and the factorization of `x^n - 1`.

use num_bigint::BigUint;
use serde::Serialize;

use super::arith::{big_pow, gcd, mult_order, prime_divisors};
use super::field::{Elem, Field, Subfield};
use super::poly::{poly_order, Polynomial};
use crate::error::{Error, Result};

/// The orbit `{s, sq, sq^2, ...}` of `s` under multiplication by `q` modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicCoset {
    pub n: u64,
    pub q: u64,
    pub leader: u64,
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.contains(&(x % self.n))
    }
}

/// All `q`-cyclotomic cosets modulo `n`, ordered by leader.
pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<Vec<CyclotomicCoset>> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut x = s;
        while !seen[x as usize] {
            seen[x as usize] = true;
            members.push(x);
            x = (x as u128 * q as u128 % n as u128) as u64;
        }
        out.push(CyclotomicCoset { n, q, leader: s, members });
    }
    Ok(out)
}

/// Minimal polynomial over `F_q` of an element of `F_Q`.
pub fn minimal_polynomial(sub: &Subfield, a: Elem) -> Polynomial {
    let big = sub.big();
    let small = sub.small();
    let q = small.q() as u64;
    let mut conj = vec![a];
    let mut y = big.pow(a, q);
    while y != a {
        conj.push(y);
        y = big.pow(y, q);
    }
    // product of (x - c) over the conjugates, computed in F_Q
    let mut prod = vec![1u32];
    for &c in &conj {
        let mut next = vec![0u32; prod.len() + 1];
        for (i, &v) in prod.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], v);
            next[i] = big.sub(next[i], big.mul(v, c));
        }
        prod = next;
    }
    let coeffs = prod
        .into_iter()
        .map(|v| sub.restrict(v).expect("minimal polynomial coefficients lie in the subfield"))
        .collect();
    Polynomial::new(small, coeffs)
}

/// Arithmetic in `F_q[y]/(P)` for an irreducible `P`; no tables, so any degree works.
struct Extension {
    modulus: Polynomial,
}

impl Extension {
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul_mod(b, &self.modulus).expect("nonzero modulus")
    }

    fn pow(&self, a: &Polynomial, e: &BigUint) -> Polynomial {
        a.pow_mod(e, &self.modulus).expect("nonzero modulus")
    }

    fn is_one(a: &Polynomial) -> bool {
        a.degree() == Some(0) && a.coeff(0) == 1
    }
}

/// Rabin's irreducibility test over `F_q`.
fn is_irreducible(f: &Polynomial) -> bool {
    let field = f.field();
    let m = match f.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let q = BigUint::from(field.q());
    let x = Polynomial::x(field);
    let mut frob = vec![x.rem(f).unwrap()];
    for _ in 0..m {
        let last = frob.last().unwrap().clone();
        frob.push(last.pow_mod(&q, f).unwrap());
    }
    if frob[m] != x.rem(f).unwrap() {
        return false;
    }
    for r in prime_divisors(m as u64) {
        let h = frob[m / r as usize].sub(&x);
        if h.gcd(f).degree() != Some(0) {
            return false;
        }
    }
    true
}

fn polynomial_from_code(field: &Field, code: u64, m: usize) -> Polynomial {
    let mut v = element_from_code(field, code, m).coeffs().to_vec();
    v.resize(m, 0);
    v.push(1);
    Polynomial::new(field, v)
}

/// The irreducible factors of `x^n - 1` over `F_q`, one per cyclotomic coset.
#[derive(Debug, Clone)]
pub struct CyclotomicFactorization {
    pub n: usize,
    pub field: Field,
    pub cosets: Vec<CyclotomicCoset>,
    /// `factors[i]` is the minimal polynomial of `zeta^{leader_i}`.
    pub factors: Vec<Polynomial>,
    /// `per(factors[i]) = n / gcd(n, leader_i)`.
    pub periods: Vec<u64>,
    /// Degree of the splitting field over `F_q`.
    pub splitting_degree: u64,
}

impl CyclotomicFactorization {
    pub fn new(n: usize, field: &Field) -> Result<Self> {
        let q = field.q() as u64;
        let cosets = cyclotomic_cosets(n as u64, q)?;
        let m = mult_order(q % n as u64, n as u64);
        let periods: Vec<u64> = cosets.iter().map(|c| n as u64 / gcd(n as u64, c.leader)).collect();
        if n == 1 {
            let f = Polynomial::new(field, vec![field.neg(1), 1]);
            return Ok(CyclotomicFactorization { n, field: field.clone(), cosets, factors: vec![f], periods, splitting_degree: 1 });
        }
        const MAX_DEGREE: u64 = 512;
        if m > MAX_DEGREE {
            return Err(Error::CapExceeded { what: "splitting field degree", value: m as u128, cap: MAX_DEGREE as u128 });
        }
        let factors = if m == 1 {
            // F_q already contains the n-th roots of unity
            let g = field.exp((q - 1) / n as u64);
            cosets
                .iter()
                .map(|c| Polynomial::new(field, vec![field.neg(field.pow(g, c.leader)), 1]))
                .collect()
        } else {
            let ext = splitting_extension(field, m as usize);
            let zeta = primitive_root_of_unity(&ext, field, n as u64, m as usize);
            cosets.iter().map(|c| conjugate_product(&ext, field, &zeta, c)).collect()
        };
        Ok(CyclotomicFactorization { n, field: field.clone(), cosets, factors, periods, splitting_degree: m })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Index of the coset containing `i`.
    pub fn coset_of(&self, i: u64) -> usize {
        let i = i % self.n as u64;
        self.cosets.iter().position(|c| c.members.contains(&i)).expect("cosets cover Z_n")
    }

    pub fn degree(&self, i: usize) -> usize {
        self.cosets[i].len()
    }

    /// Periods recomputed from the polynomials (used as a cross-check).
    pub fn verified_periods(&self) -> Result<Vec<u64>> {
        self.factors.iter().map(poly_order).collect()
    }
}

fn splitting_extension(field: &Field, m: usize) -> Extension {
    let mut code = 0u64;
    loop {
        let cand = polynomial_from_code(field, code, m);
        if cand.coeff(0) != 0 && is_irreducible(&cand) {
            return Extension { modulus: cand };
        }
        code += 1;
    }
}

fn primitive_root_of_unity(ext: &Extension, field: &Field, n: u64, m: usize) -> Polynomial {
    let q = field.q() as u64;
    let order = big_pow(q, m as u64) - BigUint::from(1u32);
    let cofactor = &order / BigUint::from(n);
    let primes = prime_divisors(n);
    let mut code = 1u64;
    loop {
        let z = element_from_code(field, code, m);
        code += 1;
        if z.is_zero() {
            continue;
        }
        let w = ext.pow(&z, &cofactor);
        let good = primes
            .iter()
            .all(|&r| !Extension::is_one(&ext.pow(&w, &BigUint::from(n / r))));
        if good {
            return w;
        }
    }
}

fn element_from_code(field: &Field, code: u64, m: usize) -> Polynomial {
    let q = field.q() as u64;
    let mut v = Vec::with_capacity(m);
    let mut c = code;
    for _ in 0..m {
        v.push((c % q) as Elem);
        c /= q;
    }
    Polynomial::new(field, v)
}

fn conjugate_product(ext: &Extension, field: &Field, zeta: &Polynomial, coset: &CyclotomicCoset) -> Polynomial {
    // coefficients of the product are elements of the extension, lowest degree first
    let mut prod: Vec<Polynomial> = vec![Polynomial::one(field)];
    for &e in &coset.members {
        let root = ext.pow(zeta, &BigUint::from(e));
        let mut next = vec![Polynomial::zero(field); prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&ext.mul(c, &root));
        }
        prod = next;
    }
    let coeffs = prod
        .iter()
        .map(|c| {
            assert!(c.degree().unwrap_or(0) == 0, "minimal polynomial coefficients lie in the base field");
            c.coeff(0)
        })
        .collect();
    Polynomial::new(field, coeffs)
}

/// The monic irreducible factors of `x^n - 1`, ordered by coset leader.
pub fn factor_xn_minus_1(n: usize, field: &Field) -> Result<Vec<Polynomial>> {
    Ok(CyclotomicFactorization::new(n, field)?.factors)
}
