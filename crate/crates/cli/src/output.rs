use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command result in all three renderings.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Rows for CSV; a flattened key/value listing of `json` otherwise.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), table: None }
    }

    pub fn with_table(mut self, headers: Vec<String>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((headers, rows));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let (headers, rows) = match &self.table {
                    Some(t) => t.clone(),
                    None => {
                        let mut rows = Vec::new();
                        flatten("", &self.json, &mut rows);
                        (vec!["key".into(), "value".into()], rows)
                    }
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&headers).expect("in-memory write");
                for r in rows {
                    w.write_record(&r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_flattens_nested_values() {
        let r = Report::new(json!({"a": {"b": [1, "x"]}, "c": true}), "t");
        assert_eq!(r.render(Format::Csv), "key,value\na.b.0,1\na.b.1,x\nc,true\n");
        assert_eq!(r.render(Format::Text), "t\n");
    }
}
