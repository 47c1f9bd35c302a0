//! Plain-text tables and canonical JSON.

use serde::Serialize;
use serde_json::Value;

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(
        widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Converts to a JSON value; object keys come out sorted.
pub fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn canonical(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(
            &["degree", "group"],
            &[vec!["0".into(), "Z".into()], vec!["10".into(), "Z/2".into()]],
        );
        assert_eq!(t, "degree  group\n------  -----\n0       Z\n10      Z/2\n");
    }

    #[test]
    fn canonical_json_round_trips() {
        let v: Value = serde_json::from_str(r#"{"b": 1, "a": [2, {"d": 3, "c": 4}]}"#).unwrap();
        let s = canonical(&v);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        let again: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical(&again), s);
    }
}
