//! Number formatting for the two output formats.

use serde_json::Value;

/// Rounds every non-integer number to 12 significant digits.
pub fn json_12_digits(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
            serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(json_12_digits).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, json_12_digits(v))).collect()),
        other => other,
    }
}

/// Shortest decimal that round-trips.
pub fn csv_number(x: f64) -> String {
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        let v = json_12_digits(serde_json::json!({"a": 0.412154161151989, "n": 3, "l": [1.0, 1.0 / 3.0]}));
        assert_eq!(v.to_string(), r#"{"a":0.412154161152,"l":[1.0,0.333333333333],"n":3}"#);
    }

    #[test]
    fn csv_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-17, 0.0, 2.0 / 9.0] {
            assert_eq!(csv_number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv_number(0.1), "0.1");
    }
}
