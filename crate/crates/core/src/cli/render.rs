//! Canonical output: pretty JSON with sorted keys and shortest round-trip
//! floats, and CSV for tables.

use serde::Serialize;
use serde_json::Value;

/// Pretty JSON with object keys in sorted order and a trailing newline.
/// Non-finite floats become `null`.
pub fn to_json<S: Serialize>(value: &S) -> String {
    let v: Value = serde_json::to_value(value).expect("output types serialize to JSON");
    canonical(&v)
}

/// Re-renders an already parsed document the same way.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always render");
    s.push('\n');
    s
}

/// CSV with a header row taken from the field names.
pub fn to_csv<S: Serialize>(rows: &[S], header: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(header).expect("writing to memory");
    }
    for r in rows {
        w.serialize(r).expect("rows serialize to CSV");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        zeta: f64,
        alpha: &'static str,
    }

    #[test]
    fn keys_are_sorted_and_round_trip() {
        let out = to_json(&Row {
            zeta: 0.1 + 0.2,
            alpha: "a",
        });
        assert!(out.find("alpha").unwrap() < out.find("zeta").unwrap());
        assert!(out.contains("0.30000000000000004"));
        let back: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(canonical(&back), out);
    }

    #[test]
    fn nan_becomes_null() {
        let out = to_json(&Row {
            zeta: f64::NAN,
            alpha: "a",
        });
        assert!(out.contains("null"));
    }

    #[test]
    fn csv_header_for_empty_table() {
        let rows: Vec<Row> = Vec::new();
        assert_eq!(to_csv(&rows, &["zeta", "alpha"]), "zeta,alpha\n");
        let rows = vec![Row {
            zeta: 1.5,
            alpha: "x",
        }];
        assert_eq!(to_csv(&rows, &["zeta", "alpha"]), "zeta,alpha\n1.5,x\n");
    }
}
