//! One report, three encodings. CSV and text either use the command's own
//! table or flatten the JSON into `path,value` pairs.

use serde_json::Value;

use crate::args::Format;

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    /// Drives the exit code.
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, ok: bool) -> Self {
        Report { json, table: None, ok }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        match format {
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("values always serialize")
            )),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.headers)?;
                        for row in &t.rows {
                            w.write_record(row)?;
                        }
                    }
                    None => {
                        w.write_record(["path", "value"])?;
                        for (p, v) in flatten(&self.json) {
                            w.write_record([p, v])?;
                        }
                    }
                }
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Text => Ok(match &self.table {
                Some(t) => aligned(t),
                None => flatten(&self.json)
                    .into_iter()
                    .map(|(p, v)| format!("{p} = {v}\n"))
                    .collect(),
            }),
        }
    }
}

fn aligned(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(t.headers.clone());
    for row in &t.rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Leaf values keyed by dotted paths; empty containers are kept as `[]`/`{}`.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                walk(x, join(k), out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (n, x) in a.iter().enumerate() {
                walk(x, join(&n.to_string()), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn flatten_keeps_empty_containers() {
        let v = json!({"check": "jacobi", "checked_count": 3, "witnesses": []});
        assert_eq!(
            flatten(&v),
            vec![
                ("check".into(), "jacobi".into()),
                ("checked_count".into(), "3".into()),
                ("witnesses".into(), "[]".into()),
            ]
        );
    }

    #[test]
    fn csv_from_table() {
        let r = Report::new(json!(null), true).with_table(Table {
            headers: vec!["basis", "coeff"],
            rows: vec![vec!["L(1,0)".into(), "-1/2".into()]],
        });
        assert_eq!(r.render(Format::Csv).unwrap(), "basis,coeff\n\"L(1,0)\",-1/2\n");
        assert_eq!(r.render(Format::Text).unwrap(), "basis   coeff\nL(1,0)  -1/2\n");
    }
}
