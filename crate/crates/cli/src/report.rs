//! JSON report envelope, float rounding and schema validation.

use serde::Serialize;
use serde_json::{Map, Value};

/// Significant digits kept for every float in reports and CSV files.
pub const SIG_DIGITS: usize = 12;

pub const TOP_LEVEL_KEYS: [&str; 5] = ["command", "config", "result", "witness", "diagnostics"];

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub witness: Option<Value>,
    pub diagnostics: Value,
}

impl Report {
    pub fn new(command: &str, config: Value, result: Value) -> Self {
        Self {
            command: command.to_string(),
            config,
            result,
            witness: None,
            diagnostics: Value::Object(Map::new()),
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_diagnostics(mut self, diagnostics: Value) -> Self {
        self.diagnostics = diagnostics;
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("config".into(), self.config.clone());
        m.insert("result".into(), self.result.clone());
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        m.insert("diagnostics".into(), self.diagnostics.clone());
        let mut v = Value::Object(m);
        round_floats(&mut v);
        v
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal string of `x` rounded to [`SIG_DIGITS`].
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        // Debug switches to exponent form for very small and large magnitudes
        let s = format!("{r:?}");
        s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
    }
}

pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            *v = serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report payload serializes")
}

/// Checks the report envelope: required keys in order, types, and that every
/// float already carries at most [`SIG_DIGITS`] significant digits.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report must be a JSON object")?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let expected: Vec<&str> = TOP_LEVEL_KEYS
        .iter()
        .copied()
        .filter(|k| *k != "witness" || obj.contains_key("witness"))
        .collect();
    if keys != expected {
        return Err(format!("top-level keys {keys:?}, expected {expected:?}"));
    }
    match obj.get("command") {
        Some(Value::String(s)) if !s.is_empty() => {}
        _ => return Err("\"command\" must be a nonempty string".into()),
    }
    if !obj["config"].is_object() {
        return Err("\"config\" must be an object".into());
    }
    if obj["result"].is_null() {
        return Err("\"result\" must not be null".into());
    }
    if let Some(w) = obj.get("witness") {
        if !w.is_object() {
            return Err("\"witness\" must be an object".into());
        }
    }
    if !obj["diagnostics"].is_object() {
        return Err("\"diagnostics\" must be an object".into());
    }
    check_rounded(v, "$")
}

fn check_rounded(v: &Value, path: &str) -> Result<(), String> {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if round_sig(x) != x {
                return Err(format!(
                    "{path}: {x} has more than {SIG_DIGITS} significant digits"
                ));
            }
            Ok(())
        }
        Value::Array(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, x)| check_rounded(x, &format!("{path}[{i}]"))),
        Value::Object(map) => map
            .iter()
            .try_for_each(|(k, x)| check_rounded(x, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.841_470_984_807_896_5), 0.841_470_984_808);
        assert_eq!(round_sig(5.000_000_000_000_002), 5.0);
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(1e-20), "1e-20");
        assert_eq!(fmt_float(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_float(2.0), "2");
    }

    #[test]
    fn envelope_round_trips() {
        let r = Report::new("exp", json!({"t": 1.0}), json!({"x": 1.0 / 3.0}))
            .with_witness(json!({"u": 2.0}));
        let text = r.render();
        let back: Value = serde_json::from_str(&text).unwrap();
        validate_report(&back).unwrap();
        assert_eq!(back["result"]["x"], json!(0.333333333333));
    }

    #[test]
    fn rejects_bad_envelopes() {
        assert!(validate_report(&json!([])).is_err());
        assert!(validate_report(&json!({"command": "x", "config": {}, "result": 1})).is_err());
        let unrounded =
            json!({"command": "x", "config": {}, "result": 0.1234567890123, "diagnostics": {}});
        assert!(validate_report(&unrounded).is_err());
        let order = json!({"config": {}, "command": "x", "result": 1, "diagnostics": {}});
        assert!(validate_report(&order).is_err());
    }
}
