//! Number formatting and canonical JSON.
//!
//! Plain output uses the shortest decimal that round-trips. JSON uses sorted
//! keys, no whitespace and 17 significant digits, so a parse and re-emit is
//! byte-identical.

use std::fmt::Write;

use serde_json::Value;

/// Shortest round-trip decimal, keeping a trailing `.0` on integral values.
pub fn plain(v: f64) -> String {
    format!("{v:?}")
}

fn number(out: &mut String, n: &serde_json::Number) {
    if let Some(f) = n.as_f64().filter(|_| n.is_f64()) {
        write!(out, "{f:.16e}").unwrap();
    } else {
        write!(out, "{n}").unwrap();
    }
}

fn write(out: &mut String, v: &Value) {
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => number(out, n),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write(out, &map[k]);
            }
            out.push('}');
        }
    }
}

pub fn canonical(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn plain_is_shortest_round_trip() {
        assert_eq!(plain(1.0), "1.0");
        assert_eq!(plain(0.1), "0.1");
        assert_eq!(plain(1e-20), "1e-20");
        let v = std::f64::consts::PI;
        assert_eq!(plain(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn canonical_round_trips() {
        let v = json!({"b": [1.0, 0.1, -2.5e-300], "a": {"z": 3, "y": null, "x": "q\"s"}, "c": true});
        let s = canonical(&v);
        assert_eq!(
            s,
            r#"{"a":{"x":"q\"s","y":null,"z":3},"b":[1.0000000000000000e0,1.0000000000000001e-1,-2.5000000000000000e-300],"c":true}"#
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical(&back), s);
        for x in [1e-9, 2e-9, 1e-6, 10.866553700327023] {
            let s = canonical(&json!([x]));
            assert_eq!(canonical(&serde_json::from_str(&s).unwrap()), s);
        }
    }
}
