//! Dense univariate polynomials over a table-backed field.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// A polynomial with coefficients lowest degree first; no trailing zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = self.field.format(c);
            match (i, c == 1) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_1(field: &Field, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = 1;
        v[0] = field.neg(1);
        if n == 0 {
            return Self::zero(field);
        }
        Self::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Self::new(f, v)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroElement)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - dd] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(t, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(&self.field).rem(modulus)?;
        let base = self.rem(modulus)?;
        if e.is_zero() {
            return Ok(acc);
        }
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// `x^{deg} f(1/x)`, the reciprocal polynomial.
    pub fn reciprocal(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(&self.field, v)
    }

    /// Serialized coefficients (see [`crate::algebra::FieldTable::serialize_elem`]).
    pub fn serialize(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| self.field.serialize_elem(c)).collect()
    }
}

/// The period `per(f)`: the least `t >= 1` with `f | x^t - 1`.
pub fn poly_order(f: &Polynomial) -> Result<u64> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::InvalidArgument("the period needs a nonconstant polynomial".into()))
        }
        Some(d) => d,
    };
    if f.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let field = f.field();
    let f = f.monic();
    let limit = (field.q() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    const MAX_STEPS: u128 = 1 << 32;
    // residue of x^t mod f held as coefficients of degree < d
    let mut r = vec![0u32; d];
    if d == 1 {
        r[0] = field.neg(f.coeff(0));
    } else {
        r[1] = 1;
    }
    let mut t: u128 = 1;
    loop {
        if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
            return Ok(t as u64);
        }
        if t >= limit || t >= MAX_STEPS {
            return Err(Error::CapExceeded { what: "polynomial period search", value: t, cap: MAX_STEPS });
        }
        let carry = r[d - 1];
        for i in (1..d).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        if carry != 0 {
            for i in 0..d {
                r[i] = field.sub(r[i], field.mul(carry, f.coeff(i)));
            }
        }
        t += 1;
    }
}
