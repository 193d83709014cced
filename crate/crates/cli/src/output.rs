use serde_json::{json, Map, Value};

use polycomp::canonical::{AffineMap, GPair};
use polycomp::decomp::FactorChain;
use polycomp::syntax::format_rational;
use polycomp::tables::ParamPolynomial;
use polycomp::{Polynomial, Rational};

pub const OK: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const USAGE: u8 = 2;

/// What a subcommand produced, in both renderings.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub witness: Value,
    pub trace: Vec<Value>,
    pub text: String,
    pub code: u8,
    pub error: Option<String>,
}

impl Outcome {
    pub fn new(command: &'static str, input: Value) -> Self {
        Outcome {
            command,
            input,
            result: Value::Null,
            witness: Value::Null,
            trace: Vec::new(),
            text: String::new(),
            code: OK,
            error: None,
        }
    }

    pub fn fail(mut self, code: u8, message: impl Into<String>) -> Self {
        self.code = code;
        self.error = Some(message.into());
        self
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("input".into(), self.input.clone());
        m.insert("result".into(), self.result.clone());
        m.insert("witness".into(), self.witness.clone());
        m.insert("trace".into(), Value::Array(self.trace.clone()));
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        }
        Value::Object(m)
    }
}

pub fn rat(c: &Rational) -> Value {
    json!(format_rational(c))
}

/// Exponent → coefficient map, rationals as `"p/q"`.
pub fn poly(p: &Polynomial) -> Value {
    let mut m = Map::new();
    for (k, c) in p.nonzero_terms() {
        m.insert(k.to_string(), rat(c));
    }
    Value::Object(m)
}

pub fn param_poly(p: &ParamPolynomial) -> Value {
    let mut m = Map::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            m.insert(k.to_string(), json!(c.to_string()));
        }
    }
    Value::Object(m)
}

pub fn affine(a: &AffineMap) -> Value {
    json!({ "a": rat(a.a()), "b": rat(a.b()) })
}

pub fn gpair(g: &GPair) -> Value {
    json!({ "alpha": affine(&g.alpha), "beta": affine(&g.beta) })
}

pub fn chain(c: &FactorChain) -> Value {
    json!({
        "degrees": c.degree_sequence(),
        "factors": c.factors().iter().map(poly).collect::<Vec<_>>(),
    })
}
