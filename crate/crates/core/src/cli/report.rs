//! Reports and their canonical JSON: keys sorted, every number written as a
//! string so exact values never pass through floating point.

use crate::error::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Obstruction,
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 1,
            Status::Obstruction => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub status: Status,
    pub payload: Value,
}

impl Report {
    pub fn ok(command: Value, payload: Value) -> Self {
        Report { command, status: Status::Ok, payload }
    }

    pub fn obstruction(command: Value, payload: Value) -> Self {
        Report { command, status: Status::Obstruction, payload }
    }

    pub fn invalid(command: Value, err: &Error) -> Self {
        let mut e = serde_json::json!({ "code": err.code(), "message": err.to_string() });
        if let Error::Parse { kind, line, col, message } = err {
            e["kind"] = Value::String(kind.to_string());
            e["line"] = Value::from(*line);
            e["col"] = Value::from(*col);
            e["message"] = Value::String(message.clone());
        }
        Report { command, status: Status::Invalid, payload: serde_json::json!({ "error": e }) }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Serialize anything to a JSON value, numbers already turned into strings.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    stringify_numbers(serde_json::to_value(x).expect("report types serialize"))
}

fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        v => v,
    }
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(o) => {
            let mut keys: Vec<&String> = o.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&o[k], out);
            }
            out.push('}');
        }
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        Value::Number(n) => out.push_str(&Value::String(n.to_string()).to_string()),
        other => out.push_str(&other.to_string()),
    }
}

/// Canonical JSON for any value.
pub fn canonical(v: &Value) -> String {
    let mut s = String::new();
    write_canonical(v, &mut s);
    s
}

pub fn emit(report: &Report) -> String {
    canonical(&to_value(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_numbers_quoted() {
        let v = json!({"representative": "1", "indeterminacy": ["2"], "contains_zero": false, "n": 3});
        assert_eq!(canonical(&v), r#"{"contains_zero":false,"indeterminacy":["2"],"n":"3","representative":"1"}"#);
        assert_eq!(canonical(&json!({"homology": {}})), r#"{"homology":{}}"#);
    }

    #[test]
    fn exit_codes() {
        let r = Report::invalid(json!("check"), &Error::UnknownName("X".into()));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(Report::obstruction(json!("augment"), json!({})).exit_code(), 2);
        assert!(emit(&r).contains(r#""status":"invalid""#));
    }
}
