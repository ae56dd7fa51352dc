use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use tczeta::zeta::RationalFunction;

pub const SCHEMA: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad command line or unreadable file.
    Input {
        code: &'static str,
        message: String,
    },
    Lib(tczeta::Error),
}

impl CliError {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Input {
            code,
            message: message.into(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input { code, .. } => code,
            CliError::Lib(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_verification() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { message, .. } => f.write_str(message),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<tczeta::Error> for CliError {
    fn from(e: tczeta::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Text lines plus the JSON payload of one command.
#[derive(Debug, Default)]
pub struct Output {
    pub text: Vec<String>,
    pub results: Map<String, Value>,
}

impl Output {
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }
}

pub fn big(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn rational(r: &RationalFunction) -> Value {
    json!({
        "numerator": bigs(r.numerator().coeffs()),
        "denominator": bigs(r.denominator().coeffs()),
        "display": r.to_string(),
    })
}

pub fn envelope(command: &str, inputs: Value, outcome: &CliResult<Output>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    match outcome {
        Ok(out) => {
            m.insert("results".into(), Value::Object(out.results.clone()));
            m.insert("status".into(), json!("ok"));
        }
        Err(e) => {
            m.insert("results".into(), Value::Null);
            m.insert("status".into(), json!("error"));
            m.insert("error".into(), json!({"code": e.code(), "message": e.to_string()}));
        }
    }
    Value::Object(m)
}

/// Space-separated integers, for text tables.
pub fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
