//! Finite fields `F_{p^s}` backed by exponential and logarithm tables.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}` of its
//! coordinates in the polynomial basis `1, x, ..., x^{s-1}`. Zero is `0`, one is `1`,
//! and the elements of the prime subfield are the integers `0..p`.

use std::sync::Arc;

use super::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

pub type Elem = u32;
pub type Field = Arc<FieldTable>;

/// Default bound on `p^s` for table-backed fields.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    pow_p: Vec<u32>,
}

impl FieldTable {
    /// Builds `F_{p^s}` under the default size cap.
    pub fn new(p: u64, s: u32) -> Result<Field> {
        Self::with_cap(p, s, DEFAULT_FIELD_CAP)
    }

    /// Builds `F_{p^s}`, refusing fields with more than `cap` elements.
    ///
    /// The modulus is the first primitive polynomial of degree `s` over `F_p` when monic
    /// polynomials are ordered by the integer encoding of their lower coefficients, so
    /// `alpha = x` is always a generator of the multiplicative group.
    pub fn with_cap(p: u64, s: u32, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if s == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let size = (p as u128).checked_pow(s);
        match size {
            Some(v) if v <= cap as u128 && v <= u32::MAX as u128 / 2 => {}
            _ => {
                return Err(Error::CapExceeded {
                    what: "field size",
                    value: size.unwrap_or(u128::MAX),
                    cap: cap as u128,
                })
            }
        }
        let p = p as u32;
        let q = p.pow(s);
        let pow_p: Vec<u32> = (0..=s).map(|i| p.pow(i)).collect();
        let modulus = find_primitive_modulus(p, s);
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut digits = vec![0u32; s as usize];
        digits[0] = 1;
        for i in 0..(q - 1) as usize {
            let code = encode(&digits, p);
            exp[i] = code;
            exp[i + q as usize - 1] = code;
            log[code as usize] = i as u32;
            times_x(&mut digits, &modulus, p);
        }
        Ok(Arc::new(FieldTable { p, s, q, modulus, exp, log, pow_p }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1)
    }

    /// Builds the field of size `q`, which must be a prime power.
    pub fn of_size(q: u64) -> Result<Field> {
        match super::arith::prime_power(q) {
            Some((p, s)) => Self::new(p, s),
            None => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.s == 1
    }

    /// Coefficients of the defining polynomial over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> Elem {
        self.exp[1 % self.exp.len().max(1)]
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    /// `alpha^i`.
    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to base alpha, `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        let l = self.log[x as usize];
        (l != NO_LOG).then_some(l)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.s == 1 {
            let t = a + b;
            if t >= self.p {
                t - self.p
            } else {
                t
            }
        } else {
            let mut out = 0;
            for i in 0..self.s as usize {
                let pp = self.pow_p[i];
                let d = (a / pp % self.p + b / pp % self.p) % self.p;
                out += d * pp;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            a
        } else if self.s == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut out = 0;
            for i in 0..self.s as usize {
                let pp = self.pow_p[i];
                let d = (self.p - a / pp % self.p) % self.p;
                out += d * pp;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        match self.log(a) {
            None => Err(Error::ZeroElement),
            Some(l) => Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        match self.log(a) {
            None => 0,
            Some(l) => self.exp(l as u64 * (e % (self.q as u64 - 1))),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        let l = self.log(a).ok_or(Error::ZeroElement)? as u64;
        let m = self.q as u64 - 1;
        Ok(m / super::arith::gcd(l, m))
    }

    /// Coordinates of `a` over `F_p` in the polynomial basis.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        (0..self.s as usize).map(|i| a / self.pow_p[i] % self.p).collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        encode(digits, self.p)
    }

    /// Absolute trace `Tr_{F_q / F_p}(a)`, returned as an integer in `0..p`.
    pub fn absolute_trace(&self, a: Elem) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.s {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        acc
    }

    /// Human-readable element: integers for prime fields, `a^i` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.s == 1 {
            a.to_string()
        } else {
            match self.log(a) {
                None => "0".into(),
                Some(0) => "1".into(),
                Some(1) => "a".into(),
                Some(l) => format!("a^{l}"),
            }
        }
    }

    /// Serialized form: the integer for prime fields, the logarithm (or -1 for zero) otherwise.
    pub fn serialize_elem(&self, a: Elem) -> i64 {
        if self.s == 1 {
            a as i64
        } else {
            self.log(a).map(|l| l as i64).unwrap_or(-1)
        }
    }

    /// Inverse of [`FieldTable::serialize_elem`].
    pub fn deserialize_elem(&self, v: i64) -> Result<Elem> {
        if self.s == 1 {
            if v < 0 || v >= self.p as i64 {
                return Err(Error::InvalidArgument(format!("{v} is not an element of F_{}", self.p)));
            }
            Ok(v as Elem)
        } else if v == -1 {
            Ok(0)
        } else if v >= 0 && v < self.q as i64 - 1 {
            Ok(self.exp(v as u64))
        } else {
            Err(Error::InvalidArgument(format!("{v} is not a log index of F_{}", self.q)))
        }
    }
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies the residue held in `digits` by `x` modulo the monic `modulus`.
fn times_x(digits: &mut [u32], modulus: &[u32], p: u32) {
    let s = digits.len();
    let carry = digits[s - 1];
    for i in (1..s).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    if carry != 0 {
        for i in 0..s {
            digits[i] = (digits[i] + (p - carry) * modulus[i]) % p;
        }
    }
}

fn find_primitive_modulus(p: u32, s: u32) -> Vec<u32> {
    let q = (p as u64).pow(s);
    let order = q - 1;
    let primes = prime_divisors(order);
    for code in 0..q {
        let mut f: Vec<u32> = (0..s).map(|i| (code / (p as u64).pow(i) % p as u64) as u32).collect();
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if s == 1 {
            // x + c has root -c, primitive when its order is p - 1
            let root = (p - f[0]) % p;
            if p == 2 || primes.iter().all(|&r| pow_mod(root as u64, order / r, p as u64) != 1) {
                return f;
            }
            continue;
        }
        let one = {
            let mut v = vec![0u32; s as usize];
            v[0] = 1;
            v
        };
        if x_pow_mod(order, &f, p) != one {
            continue;
        }
        if primes.iter().all(|&r| x_pow_mod(order / r, &f, p) != one) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `x^e mod f` over `F_p` as a coefficient vector of length `deg f`.
fn x_pow_mod(e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let s = f.len() - 1;
    let mut acc = vec![0u32; s];
    acc[0] = 1;
    let mut base = vec![0u32; s];
    if s == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let s = f.len() - 1;
    let mut prod = vec![0u64; 2 * s - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (s..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..s {
            let t = prod[d - s + i] + (p as u64 - c) * f[i] as u64;
            prod[d - s + i] = t % p as u64;
        }
    }
    prod.truncate(s);
    prod.into_iter().map(|v| v as u32).collect()
}

/// An embedding of `F_q` into `F_Q` for `F_q` a subfield of `F_Q`.
#[derive(Debug, Clone)]
pub struct Subfield {
    small: Field,
    big: Field,
    to_big: Vec<Elem>,
    to_small: Vec<Elem>,
    degree: u32,
}

impl Subfield {
    pub fn new(small: &Field, big: &Field) -> Result<Self> {
        if small.p != big.p || !big.s.is_multiple_of(small.s) {
            return Err(Error::NotASubfield { small: small.q as u64, big: big.q as u64 });
        }
        let q = small.q as u64;
        let qq = big.q as u64;
        let cofactor = (qq - 1) / (q - 1);
        let mut root = None;
        for j in 1..q.max(2) {
            if super::arith::gcd(j, q - 1) != 1 {
                continue;
            }
            let r = big.exp(cofactor * j);
            let mut acc = 0;
            for &c in small.modulus.iter().rev() {
                acc = big.add(big.mul(acc, r), c);
            }
            if acc == 0 {
                root = Some(r);
                break;
            }
        }
        let r = root.expect("a root of the subfield modulus lies in the extension");
        let mut to_big = vec![0; q as usize];
        let mut to_small = vec![u32::MAX; qq as usize];
        to_small[0] = 0;
        for e in 0..q - 1 {
            let x = small.exp(e);
            let y = big.pow(r, e);
            to_big[x as usize] = y;
            to_small[y as usize] = x;
        }
        Ok(Subfield {
            small: small.clone(),
            big: big.clone(),
            to_big,
            to_small,
            degree: big.s / small.s,
        })
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    /// `[F_Q : F_q]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.to_big[x as usize]
    }

    /// Preimage of an element of `F_Q` lying in `F_q`.
    pub fn restrict(&self, y: Elem) -> Option<Elem> {
        let v = self.to_small[y as usize];
        (v != u32::MAX).then_some(v)
    }

    /// Relative trace `Tr_{Q/q}`, returned in the small field's encoding.
    pub fn trace(&self, x: Elem) -> Elem {
        let big = &self.big;
        let q = self.small.q as u64;
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.degree {
            acc = big.add(acc, y);
            y = big.pow(y, q);
        }
        self.restrict(acc).expect("the trace lies in the subfield")
    }
}

/// Relative trace `Tr_{Q/q}(x) = x + x^q + ... + x^{q^{m-1}}`, as an element of `F_Q`.
pub fn trace(big: &FieldTable, x: Elem, q: u64) -> Result<Elem> {
    let (p, s) = match super::arith::prime_power(q) {
        Some(v) => v,
        None => return Err(Error::NotASubfield { small: q, big: big.q as u64 }),
    };
    if p != big.p as u64 || !big.s.is_multiple_of(s) {
        return Err(Error::NotASubfield { small: q, big: big.q as u64 });
    }
    let m = big.s / s;
    let mut acc = 0;
    let mut y = x;
    for _ in 0..m {
        acc = big.add(acc, y);
        y = big.pow(y, q);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = FieldTable::new(2, 1).unwrap();
        assert_eq!(f2.alpha(), 1);
        let f4 = FieldTable::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let a = f4.alpha();
        assert_eq!(f4.mul(a, a), f4.add(a, 1));
        let f9 = FieldTable::new(3, 2).unwrap();
        assert_eq!(f9.order(f9.alpha()).unwrap(), 8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldTable::new(6, 1).unwrap_err(), Error::NonPrime(6));
        assert!(matches!(FieldTable::new(2, 21), Err(Error::CapExceeded { .. })));
        assert!(FieldTable::with_cap(2, 21, 1 << 21).is_ok());
    }

    #[test]
    fn table_laws() {
        for (p, s) in [(2, 1), (2, 4), (3, 1), (3, 3), (5, 2), (7, 1), (2, 8), (13, 1)] {
            let f = FieldTable::new(p, s).unwrap();
            let m = f.q() as u64 - 1;
            assert_eq!(f.order(f.alpha()).unwrap(), m);
            for x in 1..f.q() {
                assert_eq!(f.exp(f.log(x).unwrap() as u64), x);
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
            for i in 0..m.min(40) {
                for j in 0..m.min(40) {
                    assert_eq!(f.mul(f.exp(i), f.exp(j)), f.exp(i + j));
                }
            }
            for a in 0..f.q().min(64) {
                for b in 0..f.q().min(64) {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn modulus_divides_x_q_minus_x() {
        // every field element is a root of x^q - x, in particular alpha, so the modulus
        // (the minimal polynomial of alpha) divides it; check alpha^q = alpha
        for (p, s) in [(2, 3), (3, 2), (5, 3), (2, 10)] {
            let f = FieldTable::new(p, s).unwrap();
            assert_eq!(f.pow(f.alpha(), f.q() as u64), f.alpha());
        }
    }

    #[test]
    fn traces() {
        let f4 = FieldTable::new(2, 2).unwrap();
        assert_eq!(trace(&f4, 0, 2).unwrap(), 0);
        assert_eq!(trace(&f4, f4.alpha(), 2).unwrap(), 1);
        let f9 = FieldTable::new(3, 2).unwrap();
        assert_eq!(trace(&f9, 1, 3).unwrap(), 2);
        assert!(trace(&f9, 1, 2).is_err());
    }

    #[test]
    fn trace_is_linear_over_subfield() {
        for (p, s, t) in [(2u64, 8u32, 1u32), (2, 8, 2), (2, 8, 4), (2, 6, 3), (3, 4, 2), (5, 2, 1)] {
            let big = FieldTable::new(p, s).unwrap();
            let small = FieldTable::new(p, t).unwrap();
            let sub = Subfield::new(&small, &big).unwrap();
            for x in big.elements() {
                for y in big.elements().step_by(7) {
                    assert_eq!(sub.trace(big.add(x, y)), small.add(sub.trace(x), sub.trace(y)));
                }
                for c in small.elements() {
                    assert_eq!(sub.trace(big.mul(sub.embed(c), x)), small.mul(c, sub.trace(x)));
                }
            }
        }
    }

    #[test]
    fn subfield_embedding_is_a_homomorphism() {
        let big = FieldTable::new(2, 6).unwrap();
        let small = FieldTable::new(2, 2).unwrap();
        let sub = Subfield::new(&small, &big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(sub.embed(small.mul(a, b)), big.mul(sub.embed(a), sub.embed(b)));
                assert_eq!(sub.embed(small.add(a, b)), big.add(sub.embed(a), sub.embed(b)));
            }
        }
        assert!(Subfield::new(&FieldTable::new(2, 4).unwrap(), &big).is_err());
    }
}
