//! Every applicable bound for one cyclic code and one `b`, checked against exact data.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::*;
use crate::algebra::arith::is_prime;
use crate::codes::CodeSpace;
use crate::spectra::{weight_spectra_auto, CensusOptions};

/// An exact integer that serializes as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Num(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_i64() {
            s.serialize_i64(v)
        } else if let Some(v) = self.0.to_u64() {
            s.serialize_u64(v)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl From<u128> for Num {
    fn from(v: u128) -> Self {
        Num(v.into())
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Self {
        Num(v.into())
    }
}

impl From<BigUint> for Num {
    fn from(v: BigUint) -> Self {
        Num(v.into())
    }
}

/// What an entry bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `|W_b|`.
    SpectrumSize,
    /// Minimum Hamming distance.
    MinDistance,
    /// Number of codewords.
    CodeSize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtMost,
    AtLeast,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    /// The result the value comes from, in words.
    pub basis: &'static str,
    pub quantity: Quantity,
    pub direction: Direction,
    pub applicable: bool,
    /// Enforced entries fail the report when violated; the others are printed forms
    /// whose agreement is only reported.
    pub enforced: bool,
    pub value: Option<Num>,
    /// Floating-point value for printed forms with non-integral exponents.
    pub approx: Option<f64>,
    pub observed: Option<Num>,
    pub satisfied: Option<bool>,
    pub tight: Option<bool>,
    pub note: Option<String>,
}

impl BoundEntry {
    fn new(name: &'static str, basis: &'static str, quantity: Quantity, direction: Direction) -> Self {
        BoundEntry {
            name,
            basis,
            quantity,
            direction,
            applicable: true,
            enforced: true,
            value: None,
            approx: None,
            observed: None,
            satisfied: None,
            tight: None,
            note: None,
        }
    }

    fn not_applicable(mut self, why: impl ToString) -> Self {
        self.applicable = false;
        self.note = Some(why.to_string());
        self
    }

    fn reported(mut self) -> Self {
        self.enforced = false;
        self
    }

    fn with_value(mut self, v: impl Into<Num>) -> Self {
        self.value = Some(v.into());
        self
    }

    fn with_real(mut self, r: &Real) -> Self {
        match r.exact.as_ref() {
            Some(e) if e.is_integer() => self.value = Some(Num(e.to_integer())),
            _ => self.approx = Some(r.approx),
        }
        self
    }

    fn judge(&mut self, observed: Option<Num>) {
        self.observed = observed;
        let Some(obs) = self.observed.as_ref() else { return };
        if !self.applicable {
            return;
        }
        let obs_f = obs.0.to_f64().unwrap_or(f64::INFINITY);
        let (ok, tight) = match (&self.value, self.approx) {
            (Some(v), _) => match self.direction {
                Direction::AtMost => (obs.0 <= v.0, obs.0 == v.0),
                Direction::AtLeast => (obs.0 >= v.0, obs.0 == v.0),
                Direction::Equals => (obs.0 == v.0, obs.0 == v.0),
            },
            (None, Some(a)) => {
                let tol = 1e-9 * a.abs().max(1.0);
                match self.direction {
                    Direction::AtMost => (obs_f <= a + tol, (obs_f - a).abs() <= tol),
                    Direction::AtLeast => (obs_f >= a - tol, (obs_f - a).abs() <= tol),
                    Direction::Equals => ((obs_f - a).abs() <= tol, (obs_f - a).abs() <= tol),
                }
            }
            (None, None) => return,
        };
        self.satisfied = Some(ok);
        self.tight = Some(tight);
    }

    /// An applicable, enforced entry whose check failed.
    pub fn violated(&self) -> bool {
        self.enforced && self.applicable && self.satisfied == Some(false)
    }
}

/// Exact quantities against which bounds are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactData {
    pub spectrum_size: usize,
    pub min_distance: usize,
}

impl ExactData {
    /// Computes `|W_b|` and `d_H` by enumeration or the trellis, within `budget` operations.
    pub fn compute(code: &dyn CodeSpace, b: usize, opts: &CensusOptions, budget: u128) -> Result<Self> {
        let reports = weight_spectra_auto(code, b, opts, budget)?;
        let min_distance = reports[0].weights.first().copied().unwrap_or(0);
        Ok(ExactData { spectrum_size: reports[b - 1].size, min_distance })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    /// Generator polynomial, lowest degree first.
    pub generator: Vec<i64>,
    pub b: usize,
    pub exact: Option<ExactData>,
    pub entries: Vec<BoundEntry>,
    /// Cross-checks between bounds that must agree, with a message for each failure.
    pub disagreements: Vec<String>,
    pub violations: usize,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.disagreements.is_empty()
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn spectrum_entry(name: &'static str, basis: &'static str, r: Result<SpectrumBound>) -> (BoundEntry, Option<SpectrumBound>) {
    let e = BoundEntry::new(name, basis, Quantity::SpectrumSize, Direction::AtMost);
    match r {
        Ok(v @ SpectrumBound::ExactlyOne) => {
            let mut e = e.with_value(1u128);
            e.direction = Direction::Equals;
            (e, Some(v))
        }
        Ok(v @ SpectrumBound::AtMost(x)) => (e.with_value(x), Some(v)),
        Err(err) => (e.not_applicable(err), None),
    }
}

/// Evaluates every bound for `code` at `b`; with `exact` present each applicable entry is
/// checked, and a violation of an enforced entry counts against the report.
pub fn bound_report(code: &CyclicCode, b: usize, exact: Option<ExactData>) -> Result<BoundReport> {
    if b == 0 || b > code.n {
        return Err(Error::BOutOfRange { b, max: code.n });
    }
    let (n, k, q) = (code.n, code.k, code.q());
    let mut entries = Vec::new();
    let mut disagreements = Vec::new();

    if b >= k {
        let mut e = BoundEntry::new("b_at_least_k", "every window of length k meets every nonzero word", Quantity::SpectrumSize, Direction::Equals)
            .with_value(1u128);
        e.judge(exact.map(|x| Num::from(x.spectrum_size as u128)));
        entries.push(e);
    } else {
        entries.push(BoundEntry::new("delta", "largest run of zeros is k - 1", Quantity::SpectrumSize, Direction::AtMost).with_value(delta_bound(n, k, b)));
        let (period, pv) = spectrum_entry("period", "orbit count from the period distribution", period_bound(code, b));
        entries.push(period);
        let comps = idempotent_components(code);
        let (idem, iv) = spectrum_entry("idempotent", "orbit count from the primitive idempotent decomposition", idempotent_bound_general(n, q, &comps, b));
        entries.push(idem);
        if pv != iv {
            disagreements.push(format!("period bound {pv:?} differs from idempotent bound {iv:?}"));
        }
        let verbatim = match idempotent_bound_general_verbatim(n, q, &comps, b) {
            Ok(v) => BoundEntry::new("idempotent_printed", "printed subset sum with gcd over the individual periods", Quantity::SpectrumSize, Direction::AtMost)
                .with_real(&v.value),
            Err(err) => BoundEntry::new("idempotent_printed", "printed subset sum", Quantity::SpectrumSize, Direction::AtMost).not_applicable(err),
        };
        entries.push(verbatim.reported());

        if code.is_irreducible() {
            let (irr, a) = spectrum_entry("irreducible", "irreducible code, orbit count with per(h)", irreducible_bound(code, b));
            let i_t = code.h_factors[0].leader;
            let (idem_irr, c) = spectrum_entry(
                "idempotent_irreducible",
                "irreducible code, orbit count from its idempotent",
                idempotent_bound_irreducible(n, q, k, i_t, b),
            );
            if a != c {
                disagreements.push(format!("irreducible bound {a:?} differs from its idempotent form {c:?}"));
            }
            entries.push(irr);
            entries.push(idem_irr);
        } else {
            entries.push(BoundEntry::new("irreducible", "irreducible code", Quantity::SpectrumSize, Direction::AtMost).not_applicable(Error::NotIrreducible));
        }

        if is_prime(n as u64) {
            let (e, v) = spectrum_entry("prime_length", "period distribution of a prime-length code", prime_length_bound(code, b));
            if let (Some(v), Some(p)) = (v, pv) {
                if v.value() < p.value() {
                    disagreements.push(format!("prime-length bound {v:?} below period bound {p:?}"));
                }
            }
            entries.push(e);
        } else {
            entries.push(BoundEntry::new("prime_length", "prime length", Quantity::SpectrumSize, Direction::AtMost).not_applicable(Error::NotPrimeLength(n)));
        }

        let (tz, tv) = spectrum_entry("two_zero", "period distribution with two irreducible check factors", two_zero_bound(code, b));
        if let (Some(t), Some(p)) = (tv, pv) {
            if t != p {
                disagreements.push(format!("two-zero bound {t:?} differs from period bound {p:?}"));
            }
        }
        entries.push(tz);

        let bch = BoundEntry::new("bch_printed", "printed fixed-point counts of narrow-sense BCH codes", Quantity::SpectrumSize, Direction::AtMost);
        entries.push(
            match bose_distance(code) {
                None => bch.not_applicable("not a narrow-sense BCH code of length q^m - 1"),
                Some(delta) => match bch_period_bound(code, delta, b) {
                    Ok(v) => {
                        let mut e = bch.with_real(&v.value);
                        e.note = Some(format!("designed distance {delta}; integral exponents: {}", v.integral_exponents));
                        e
                    }
                    Err(err) => bch.not_applicable(err),
                },
            }
            .reported(),
        );

        let rs = BoundEntry::new("rs_printed", "printed Reed-Solomon period distribution", Quantity::SpectrumSize, Direction::AtMost);
        entries.push(
            if is_reed_solomon(code) {
                match rs_period_bound(q, k, b) {
                    Ok(v) => {
                        let mut e = rs.with_real(&v.value);
                        e.note = Some(format!("integral exponents: {}", v.integral_exponents));
                        e
                    }
                    Err(err) => rs.not_applicable(err),
                }
            } else {
                rs.not_applicable("not a Reed-Solomon code")
            }
            .reported(),
        );

        let gamma = BoundEntry::new("full_period", "a word of full period with gcd(n, q - 1) = 1", Quantity::SpectrumSize, Direction::AtMost);
        entries.push(match full_period_gamma_bound(code, b) {
            Ok(v) => gamma.with_value(v),
            Err(err) => gamma.not_applicable(err),
        });
    }

    entries.push(BoundEntry::new("linear_max", "number of one-dimensional subspaces", Quantity::SpectrumSize, Direction::AtMost).with_value(linear_max_weights(k, q)));

    let observed = exact.map(|x| Num::from(x.spectrum_size as u128));
    for e in entries.iter_mut() {
        e.judge(observed.clone());
    }

    let mut floor = BoundEntry::new("distance_floor", "largest run of zeros is k - 1", Quantity::MinDistance, Direction::AtLeast).with_value(distance_floor(n, k) as u128);
    floor.judge(exact.map(|x| Num::from(x.min_distance as u128)));
    entries.push(floor);

    let mut sphere = BoundEntry::new("sphere_style", "words per b-distance spectrum size", Quantity::CodeSize, Direction::AtMost);
    match exact {
        Some(x) => {
            let v = sphere_style_bound(n, q, x.spectrum_size, b);
            sphere = sphere.with_value(v);
            let size = BigUint::from(q).pow(k as u32);
            sphere.judge(Some(size.into()));
        }
        None => sphere = sphere.not_applicable("needs the exact spectrum size"),
    }
    entries.push(sphere);

    let violations = entries.iter().filter(|e| e.violated()).count();
    Ok(BoundReport {
        code: code.label(),
        n,
        k,
        q,
        generator: code.g.serialize(),
        b,
        exact,
        entries,
        disagreements,
        violations,
    })
}

/// The bounds that hold for any linear or additive code: the count of one-dimensional
/// subspaces and the sphere-style size bound. `label` names the code in the report.
pub fn generic_bound_report(code: &dyn CodeSpace, label: String, b: usize, exact: Option<ExactData>) -> Result<BoundReport> {
    let n = code.length();
    if b == 0 || b > n {
        return Err(Error::BOutOfRange { b, max: n });
    }
    let k = code.dimension();
    let q = code.scalars().q() as u64;
    let additive = code.alphabet().q() != code.scalars().q();
    let mut entries = Vec::new();
    let mut max = if additive {
        BoundEntry::new("additive_max", "number of one-dimensional F_q-subspaces", Quantity::SpectrumSize, Direction::AtMost)
            .with_value(additive_max(k, q))
    } else {
        BoundEntry::new("linear_max", "number of one-dimensional subspaces", Quantity::SpectrumSize, Direction::AtMost)
            .with_value(linear_max_weights(k, q))
    };
    max.judge(exact.map(|x| Num::from(x.spectrum_size as u128)));
    entries.push(max);
    let mut sphere = BoundEntry::new("sphere_style", "words per b-distance spectrum size", Quantity::CodeSize, Direction::AtMost);
    match exact {
        Some(x) => {
            sphere = sphere.with_value(sphere_style_bound(n, code.alphabet().q() as u64, x.spectrum_size, b));
            sphere.judge(Some(Num(BigUint::from(q).pow(k as u32).into())));
        }
        None => sphere = sphere.not_applicable("needs the exact spectrum size"),
    }
    entries.push(sphere);
    let violations = entries.iter().filter(|e| e.violated()).count();
    Ok(BoundReport { code: label, n, k, q, generator: Vec::new(), b, exact, entries, disagreements: Vec::new(), violations })
}
