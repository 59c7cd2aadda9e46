//! Number formatting and the JSON and CSV emitters.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::SCHEMA;

/// Seventeen significant digits, round-trip safe, with a signed exponent.
pub fn fmt(x: f64) -> String {
    if x.is_finite() {
        // explicit exponent sign, matching what the JSON writer emits
        let s = format!("{x:.16e}");
        match s.split_once('e') {
            Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
            _ => s,
        }
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A JSON number with seventeen significant digits; `null` if not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt(x)).expect("formatted float is a JSON number"))
    } else {
        Value::Null
    }
}

/// An object opened with the schema tag and the command name.
pub fn document(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(SCHEMA));
    m.insert("command".into(), Value::from(command));
    m
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(doc: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialise");
    s.push('\n');
    s
}

/// A CSV table under `#`-prefixed header lines.
pub struct Table {
    header: String,
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    /// Starts a table with a schema line, further header lines and column names.
    pub fn new(command: &str, header: &[String], columns: &[&str]) -> Self {
        let mut h = format!("# {SCHEMA} {command}\n");
        for line in header {
            h.push_str("# ");
            h.push_str(line);
            h.push('\n');
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(columns).expect("writing to memory");
        Self { header: h, writer }
    }

    /// Appends a record.
    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("writing to memory");
    }

    /// The full text.
    pub fn finish(self) -> String {
        let body = self.writer.into_inner().expect("writing to memory");
        self.header + &String::from_utf8(body).expect("CSV of UTF-8 fields")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, -2.5e-300, 1.0 / 3.0, 12345.678, 0.0] {
            assert_eq!(fmt(x).parse::<f64>().unwrap(), x);
            let v = num(x);
            assert_eq!(v.to_string(), fmt(x));
        }
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn table_has_header() {
        let mut t = Table::new("demo", &["k=v".into()], &["a", "b"]);
        t.row(["1", "2"]);
        assert_eq!(t.finish(), "# droplet-lab/1 demo\n# k=v\na,b\n1,2\n");
    }
}
