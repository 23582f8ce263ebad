use serde::Serialize;
use serde_json::{Map, Value};

pub const SIG_DIGITS: usize = 12;

/// Round to 12 significant digits; non-finite values become `null`.
pub fn round_sig(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    // no negative zero in output
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

/// Same rounding for CSV cells.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return String::new();
    }
    match round_sig(x) {
        Value::Number(n) => n.to_string(),
        _ => if x > 0.0 { "inf".into() } else { "-inf".into() },
    }
}

pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !(n.is_i64() || n.is_u64()) => round_sig(x),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

#[derive(Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub timing_ms: Option<f64>,
    pub version: &'static str,
}

impl CommandResult {
    pub fn render(self) -> String {
        let v = round_value(serde_json::to_value(self).expect("serialisable"));
        serde_json::to_string_pretty(&v).expect("serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(round_sig(1.0 / 3.0), serde_json::json!(0.333333333333));
        assert_eq!(round_sig(-0.042893218813452475), serde_json::json!(-0.0428932188135));
        assert_eq!(round_sig(f64::NAN), Value::Null);
        assert_eq!(fmt_sig(1e-300), "1e-300");
        assert_eq!(fmt_sig(f64::NAN), "");
    }

    #[test]
    fn integers_untouched() {
        let v = round_value(serde_json::json!({"n": 1234567890123456u64, "x": [0.1234567890123456]}));
        assert_eq!(v, serde_json::json!({"n": 1234567890123456u64, "x": [0.123456789012]}));
    }
}
