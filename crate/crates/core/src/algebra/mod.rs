//! Finite fields, polynomials, cyclotomic cosets and elementary number theory.

pub mod arith;
pub mod cosets;
pub mod field;
pub mod linalg;
pub mod poly;

pub use arith::{divisors, gcd, lcm, mobius, totient};
pub use cosets::{cyclotomic_cosets, factor_xn_minus_1, minimal_polynomial, CyclotomicCoset, CyclotomicFactorization};
pub use field::{trace, Elem, Field, FieldTable, Subfield, DEFAULT_FIELD_CAP};
pub use poly::{poly_order, Polynomial};

/// Builds `F_{p^s}` under the default cap.
pub fn build_field(p: u64, s: u32) -> crate::error::Result<Field> {
    FieldTable::new(p, s)
}
