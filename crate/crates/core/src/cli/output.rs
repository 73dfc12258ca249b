//! Locale-independent JSON and CSV writers with a fixed number of significant digits.

use std::fmt::Write as _;

use crate::analysis::SweepResult;

/// A scalar result: an ordered list of named fields.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Nums(Vec<f64>),
    Texts(Vec<String>),
    Nested(Record),
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.fields.push((key.into(), Field::Num(v)));
        self
    }

    pub fn int(mut self, key: &str, v: i64) -> Self {
        self.fields.push((key.into(), Field::Int(v)));
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.fields.push((key.into(), Field::Bool(v)));
        self
    }

    pub fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.fields.push((key.into(), Field::Text(v.into())));
        self
    }

    pub fn nums(mut self, key: &str, v: Vec<f64>) -> Self {
        self.fields.push((key.into(), Field::Nums(v)));
        self
    }

    pub fn texts(mut self, key: &str, v: Vec<String>) -> Self {
        self.fields.push((key.into(), Field::Texts(v)));
        self
    }

    pub fn nested(mut self, key: &str, v: Record) -> Self {
        self.fields.push((key.into(), Field::Nested(v)));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn fields(&self) -> &[(String, Field)] {
        &self.fields
    }
}

/// `x` with `digits` significant digits in scientific notation, e.g. `3.2680642866544407e-1`.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.*e}", digits.max(1) - 1, x)
}

fn json_number(x: f64, digits: usize) -> String {
    if x.is_finite() {
        format_number(x, digits)
    } else {
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn write_record_json(out: &mut String, record: &Record, digits: usize, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    out.push_str("{\n");
    for (i, (key, field)) in record.fields.iter().enumerate() {
        let _ = write!(out, "{pad}{}: ", json_string(key));
        match field {
            Field::Num(x) => out.push_str(&json_number(*x, digits)),
            Field::Int(n) => {
                let _ = write!(out, "{n}");
            }
            Field::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Field::Text(s) => out.push_str(&json_string(s)),
            Field::Nums(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| json_number(*x, digits)).collect();
                let _ = write!(out, "[{}]", parts.join(", "));
            }
            Field::Texts(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| json_string(x)).collect();
                let _ = write!(out, "[{}]", parts.join(", "));
            }
            Field::Nested(r) => write_record_json(out, r, digits, indent + 1),
        }
        if i + 1 < record.fields.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str(&"  ".repeat(indent));
    out.push('}');
}

pub fn record_to_json(record: &Record, digits: usize) -> String {
    let mut out = String::new();
    write_record_json(&mut out, record, digits, 0);
    out.push('\n');
    out
}

fn flatten(record: &Record, prefix: &str, digits: usize, rows: &mut Vec<(String, String)>) {
    for (key, field) in &record.fields {
        let name = format!("{prefix}{key}");
        let value = match field {
            Field::Num(x) => format_number(*x, digits),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Nums(xs) => xs
                .iter()
                .map(|x| format_number(*x, digits))
                .collect::<Vec<_>>()
                .join(";"),
            Field::Texts(xs) => xs.join(";"),
            Field::Nested(r) => {
                flatten(r, &format!("{name}."), digits, rows);
                continue;
            }
        };
        rows.push((name, value));
    }
}

/// Two-column `key,value` table with dotted keys for nested records.
pub fn record_to_csv(record: &Record, digits: usize) -> String {
    let mut rows = Vec::new();
    flatten(record, "", digits, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

pub fn sweep_to_csv(sweep: &SweepResult, digits: usize) -> String {
    let mut out = sweep.columns.join(",");
    out.push('\n');
    for row in &sweep.rows {
        let cells: Vec<String> = row.iter().map(|x| format_number(*x, digits)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn sweep_to_json(sweep: &SweepResult, digits: usize) -> String {
    let mut out = String::from("{\n");
    let cols: Vec<String> = sweep.columns.iter().map(|c| json_string(c)).collect();
    let _ = writeln!(out, "  \"columns\": [{}],", cols.join(", "));
    let _ = writeln!(
        out,
        "  \"description\": {},",
        json_string(&sweep.metadata.description)
    );
    let conv = sweep.metadata.conventions;
    let _ = writeln!(
        out,
        "  \"conventions\": {{\"occupancy_extra_two_pi\": {}, \"gamma_m_extra_division\": {}}},",
        conv.occupancy_extra_two_pi, conv.gamma_m_extra_division
    );
    let fixed: Vec<String> = sweep
        .metadata
        .fixed
        .iter()
        .map(|(k, v)| format!("{}: {}", json_string(k), json_number(*v, digits)))
        .collect();
    let _ = writeln!(out, "  \"fixed\": {{{}}},", fixed.join(", "));
    out.push_str("  \"rows\": [\n");
    for (i, row) in sweep.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| json_number(*x, digits)).collect();
        let sep = if i + 1 < sweep.rows.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_number(0.1, 17), "1.0000000000000001e-1");
        assert_eq!(format_number(-2.5, 3), "-2.50e0");
        assert_eq!(format_number(f64::INFINITY, 17), "inf");
        let x = 0.326_806_428_665_444_07;
        assert_eq!(format_number(x, 17).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_is_parseable() {
        let r = Record::new()
            .num("r0", 0.5)
            .num("bad", f64::NAN)
            .flag("ok", true)
            .nested(
                "inner",
                Record::new()
                    .nums("xs", vec![1.0, 2.0])
                    .text("name", "a\"b"),
            );
        let text = record_to_json(&r, 17);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["r0"], 0.5);
        assert!(v["bad"].is_null());
        assert_eq!(v["inner"]["xs"][1], 2.0);
        assert_eq!(v["inner"]["name"], "a\"b");
    }

    #[test]
    fn csv_flattens_nested_keys() {
        let r = Record::new().nested("a", Record::new().int("b", 3));
        assert_eq!(record_to_csv(&r, 17), "key,value\na.b,3\n");
    }
}
