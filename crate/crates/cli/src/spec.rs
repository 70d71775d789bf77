//! Code definitions, from flags or from JSON.

use bsymbol::algebra::{Elem, Field, FieldTable, Polynomial};
use bsymbol::codes::{AdditiveCode, CodeSpace, CyclicCode, LinearCode, TraceCode, TraceCodeParams};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

/// Coefficients or entries: either a digit string in the field's canonical element
/// order (`"1101"`, or comma separated for fields with more than 36 elements), or a
/// list of serialized elements (integers for prime fields, log indices with -1 for zero
/// otherwise).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Digits(String),
    Values(Vec<i64>),
}

impl Entries {
    pub fn decode(&self, f: &Field) -> Result<Vec<Elem>, CliError> {
        match self {
            Entries::Digits(s) => parse_digits(s, f),
            Entries::Values(v) => v.iter().map(|&x| f.deserialize_elem(x).map_err(CliError::from)).collect(),
        }
    }
}

/// Parses `"1101"` or `"1,0,12"` into field elements by their canonical codes.
pub fn parse_digits(s: &str, f: &Field) -> Result<Vec<Elem>, CliError> {
    let s = s.trim();
    let parsed: Result<Vec<u32>, _> = if s.contains(',') {
        s.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"))).collect()
    } else {
        s.chars().map(|c| c.to_digit(36).ok_or_else(|| format!("{c:?} is not a digit"))).collect()
    };
    let values = parsed.map_err(CliError::Parse)?;
    if let Some(&bad) = values.iter().find(|&&v| v >= f.q()) {
        return Err(CliError::Parse(format!("{bad} is not an element of F_{}", f.q())));
    }
    Ok(values)
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    /// `cyclic`, `linear`, `trace` or `additive`; inferred from the other fields when absent.
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub s: Option<u32>,
    pub n: Option<usize>,
    pub generator_poly: Option<Entries>,
    pub check_poly: Option<Entries>,
    pub defining_set: Option<Vec<u64>>,
    #[serde(rename = "Q")]
    pub big_q: Option<u64>,
    #[serde(rename = "N")]
    pub big_n: Option<u64>,
    pub generator_matrix: Option<Vec<Entries>>,
    /// Extension degree of the alphabet of an additive code.
    pub t: Option<u32>,
    pub additive_basis: Option<Vec<Entries>>,
}

pub enum Code {
    Cyclic(CyclicCode),
    Linear(LinearCode),
    Trace(TraceCode),
    Additive(AdditiveCode),
}

impl Code {
    pub fn space(&self) -> &dyn CodeSpace {
        match self {
            Code::Cyclic(c) => c,
            Code::Linear(c) => c,
            Code::Trace(c) => c,
            Code::Additive(c) => c,
        }
    }

    pub fn cyclic(&self) -> Option<&CyclicCode> {
        match self {
            Code::Cyclic(c) => Some(c),
            _ => None,
        }
    }

    pub fn linear(&self) -> Option<&LinearCode> {
        match self {
            Code::Cyclic(c) => Some(c.linear()),
            Code::Linear(c) => Some(c),
            Code::Trace(c) => Some(c.linear()),
            Code::Additive(_) => None,
        }
    }

    pub fn label(&self) -> String {
        let c = self.space();
        match self {
            Code::Cyclic(c) => c.label(),
            Code::Additive(a) => format!("additive ({}, {}^{}) over F_{}", a.n, c.scalars().q(), c.dimension(), c.alphabet().q()),
            _ => format!("[{},{}] over F_{}", c.length(), c.dimension(), c.scalars().q()),
        }
    }

    /// Plain description for reports.
    pub fn describe(&self) -> Value {
        let c = self.space();
        let mut v = json!({
            "label": self.label(),
            "n": c.length(),
            "k": c.dimension(),
            "q": c.scalars().q(),
            "alphabet": c.alphabet().q(),
        });
        let obj = v.as_object_mut().expect("built as an object");
        match self {
            Code::Cyclic(cc) => {
                obj.insert("type".into(), json!("cyclic"));
                obj.insert("generator_poly".into(), json!(cc.g.serialize()));
                obj.insert("check_poly".into(), json!(cc.h.serialize()));
                obj.insert("defining_set".into(), json!(cc.defining_set()));
            }
            Code::Linear(_) => {
                obj.insert("type".into(), json!("linear"));
            }
            Code::Trace(t) => {
                obj.insert("type".into(), json!("trace"));
                obj.insert("trace".into(), serde_json::to_value(t.params.summary()).expect("plain data"));
            }
            Code::Additive(_) => {
                obj.insert("type".into(), json!("additive"));
            }
        }
        v
    }
}

fn field_of(spec: &CodeSpec) -> Result<Field, CliError> {
    match (spec.q, spec.p, spec.s) {
        (Some(q), None, _) => Ok(FieldTable::of_size(q)?),
        (None, Some(p), s) => Ok(FieldTable::new(p, s.unwrap_or(1))?),
        (Some(q), Some(p), s) => {
            let f = FieldTable::new(p, s.unwrap_or(1))?;
            if f.q() as u64 != q {
                return Err(CliError::Parse(format!("q = {q} disagrees with p = {p}, s = {}", s.unwrap_or(1))));
            }
            Ok(f)
        }
        (None, None, _) => Err(CliError::Parse("the field needs q, or p (and s)".into())),
    }
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Parse(format!("missing {what}")))
}

impl CodeSpec {
    /// Reads inline JSON, or a path to a JSON file.
    pub fn from_json_arg(arg: &str) -> Result<Self, CliError> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("code definition: {e}")))
    }

    fn kind(&self) -> Result<&str, CliError> {
        if let Some(k) = &self.kind {
            return Ok(k.as_str());
        }
        Ok(if self.big_q.is_some() || self.big_n.is_some() {
            "trace"
        } else if self.additive_basis.is_some() {
            "additive"
        } else if self.generator_matrix.is_some() {
            "linear"
        } else if self.generator_poly.is_some() || self.check_poly.is_some() || self.defining_set.is_some() {
            "cyclic"
        } else {
            return Err(CliError::Parse("no code given: use --gen, --check, --defining-set or --code".into()));
        })
    }

    pub fn build(&self) -> Result<Code, CliError> {
        let f = field_of(self)?;
        match self.kind()? {
            "cyclic" => {
                let n = need(self.n, "n")?;
                let code = if let Some(g) = &self.generator_poly {
                    CyclicCode::from_generator(n, &Polynomial::new(&f, g.decode(&f)?))?
                } else if let Some(h) = &self.check_poly {
                    CyclicCode::from_check(n, &Polynomial::new(&f, h.decode(&f)?))?
                } else if let Some(d) = &self.defining_set {
                    CyclicCode::from_defining_set(n, &f, d)?
                } else {
                    return Err(CliError::Parse("a cyclic code needs generator_poly, check_poly or defining_set".into()));
                };
                Ok(Code::Cyclic(code))
            }
            "linear" => {
                let rows = self.generator_matrix.as_ref().ok_or_else(|| CliError::Parse("missing generator_matrix".into()))?;
                let rows = rows.iter().map(|r| r.decode(&f)).collect::<Result<Vec<_>, _>>()?;
                Ok(Code::Linear(LinearCode::from_spanning(&f, rows)?))
            }
            "trace" => {
                let big_q = need(self.big_q, "Q")?;
                let big = FieldTable::of_size(big_q)?;
                let params = TraceCodeParams::with_big(&f, &big, need(self.big_n, "N")?)?;
                Ok(Code::Trace(TraceCode::new(params)?))
            }
            "additive" => {
                let t = need(self.t, "t")?;
                let big = FieldTable::new(f.p() as u64, f.s() * t)?;
                let rows = self.additive_basis.as_ref().ok_or_else(|| CliError::Parse("missing additive_basis".into()))?;
                let rows = rows.iter().map(|r| r.decode(&big)).collect::<Result<Vec<_>, _>>()?;
                Ok(Code::Additive(AdditiveCode::new(&f, t, rows)?))
            }
            other => Err(CliError::Parse(format!("unknown code type {other:?}"))),
        }
    }
}
