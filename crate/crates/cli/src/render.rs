use std::io::{self, Write};
use std::path::PathBuf;

use serde_json::{json, Map, Value};
use sheffer_core::rational::to_decimal;
use sheffer_core::{Polynomial, Rational};

use crate::Format;

/// Significant digits of decimal plot output.
pub const PLOT_PRECISION: usize = 20;

#[derive(Debug)]
pub struct FamilyRow {
    pub name: &'static str,
    pub title: &'static str,
    pub params: Vec<(&'static str, &'static str)>,
    pub reference: String,
    pub normalization: &'static str,
    pub g: &'static str,
    pub f: &'static str,
}

#[derive(Debug)]
pub struct CheckEntry {
    pub target: &'static str,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug)]
pub enum Document {
    Families(Vec<FamilyRow>),
    Sequence {
        meta: Map<String, Value>,
        polys: Vec<Polynomial>,
    },
    Triangle {
        meta: Map<String, Value>,
        rows: Vec<Vec<Rational>>,
    },
    Verification {
        meta: Map<String, Value>,
        entries: Vec<CheckEntry>,
    },
    Plot {
        meta: Map<String, Value>,
        points: Vec<(Rational, Rational)>,
    },
}

#[derive(Debug)]
pub struct Outcome {
    pub document: Document,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub checks_passed: bool,
}

impl Outcome {
    pub fn new(document: Document, format: Format) -> Self {
        Self {
            document,
            format,
            output: None,
            checks_passed: true,
        }
    }

    pub fn emit(&self) -> io::Result<()> {
        let text = render(&self.document, self.format)?;
        match &self.output {
            Some(path) => std::fs::write(path, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn coefficients(p: &Polynomial) -> Value {
    let coeffs = p.coefficients();
    if coeffs.is_empty() {
        return json!(["0"]);
    }
    Value::from(coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

pub fn render(doc: &Document, format: Format) -> io::Result<String> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&to_json(doc))?;
            text.push('\n');
            Ok(text)
        }
        Format::Table => Ok(to_table(doc)),
        Format::Csv => to_csv(doc),
    }
}

fn to_json(doc: &Document) -> Value {
    match doc {
        Document::Families(rows) => json!({
            "kind": "families",
            "families": rows.iter().map(|r| json!({
                "name": r.name,
                "title": r.title,
                "parameters": r.params.iter().map(|(k, v)| json!({"name": k, "default": v})).collect::<Vec<_>>(),
                "reference": r.reference,
                "normalization": r.normalization,
                "g": r.g,
                "f": r.f,
            })).collect::<Vec<_>>(),
        }),
        Document::Sequence { meta, polys } => {
            let mut obj = meta.clone();
            obj.insert("kind".into(), json!("sequence"));
            obj.insert(
                "polynomials".into(),
                polys
                    .iter()
                    .enumerate()
                    .map(|(n, p)| json!({"n": n, "coefficients": coefficients(p), "text": p.to_string()}))
                    .collect(),
            );
            Value::Object(obj)
        }
        Document::Triangle { meta, rows } => {
            let mut obj = meta.clone();
            obj.insert("kind".into(), json!("triangle"));
            obj.insert(
                "rows".into(),
                rows.iter()
                    .map(|r| Value::from(r.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
                    .collect(),
            );
            Value::Object(obj)
        }
        Document::Verification { meta, entries } => {
            let mut obj = meta.clone();
            obj.insert("kind".into(), json!("verification"));
            obj.insert("passed".into(), json!(entries.iter().all(|e| e.passed)));
            obj.insert(
                "checks".into(),
                entries
                    .iter()
                    .map(|e| json!({"target": e.target, "check": e.check, "passed": e.passed, "detail": e.detail}))
                    .collect(),
            );
            Value::Object(obj)
        }
        Document::Plot { meta, points } => {
            let mut obj = meta.clone();
            obj.insert("kind".into(), json!("plotdata"));
            obj.insert("precision".into(), json!(PLOT_PRECISION));
            obj.insert(
                "points".into(),
                points
                    .iter()
                    .map(|(x, v)| {
                        json!({
                            "x": x.to_string(),
                            "value": v.to_string(),
                            "decimal": to_decimal(v, PLOT_PRECISION),
                        })
                    })
                    .collect(),
            );
            Value::Object(obj)
        }
    }
}

fn to_table(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Families(rows) => {
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in rows {
                let params = if r.params.is_empty() {
                    "-".to_string()
                } else {
                    r.params
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                out.push_str(&format!("{:<width$}  {}\n", r.name, r.title));
                out.push_str(&format!(
                    "{:<width$}    params: {params}  c_n: {}  normalization: {}\n",
                    "", r.reference, r.normalization
                ));
                out.push_str(&format!(
                    "{:<width$}    g(t) = {}\n{:<width$}    f(t) = {}\n",
                    "", r.g, "", r.f
                ));
            }
        }
        Document::Sequence { polys, .. } => {
            let width = polys.len().saturating_sub(1).to_string().len();
            for (n, p) in polys.iter().enumerate() {
                out.push_str(&format!("{n:>width$}  {p}\n"));
            }
        }
        Document::Triangle { rows, .. } => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in cells {
                let line = row
                    .iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        Document::Verification { entries, .. } => {
            for e in entries {
                let status = if e.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{status}  {:<8}  {:<15}  {}\n",
                    e.target, e.check, e.detail
                ));
            }
        }
        Document::Plot { points, .. } => {
            for (x, v) in points {
                out.push_str(&format!(
                    "{}  {}\n",
                    to_decimal(x, PLOT_PRECISION),
                    to_decimal(v, PLOT_PRECISION)
                ));
            }
        }
    }
    out
}

fn to_csv(doc: &Document) -> io::Result<String> {
    match doc {
        Document::Families(rows) => csv_text(
            &["name", "parameters", "reference", "normalization", "g", "f"],
            rows.iter().map(|r| {
                vec![
                    r.name.to_string(),
                    r.params
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(";"),
                    r.reference.clone(),
                    r.normalization.to_string(),
                    r.g.to_string(),
                    r.f.to_string(),
                ]
            }),
        ),
        Document::Sequence { polys, .. } => csv_text(
            &["n", "k", "coefficient"],
            polys.iter().enumerate().flat_map(|(n, p)| {
                p.coefficients()
                    .iter()
                    .enumerate()
                    .map(move |(k, c)| vec![n.to_string(), k.to_string(), c.to_string()])
                    .collect::<Vec<_>>()
            }),
        ),
        Document::Triangle { rows, .. } => csv_text(
            &["n", "k", "entry"],
            rows.iter().enumerate().flat_map(|(n, r)| {
                r.iter()
                    .enumerate()
                    .map(move |(k, c)| vec![n.to_string(), k.to_string(), c.to_string()])
                    .collect::<Vec<_>>()
            }),
        ),
        Document::Verification { entries, .. } => csv_text(
            &["target", "check", "status", "detail"],
            entries.iter().map(|e| {
                vec![
                    e.target.to_string(),
                    e.check.to_string(),
                    if e.passed { "pass" } else { "fail" }.to_string(),
                    e.detail.clone(),
                ]
            }),
        ),
        Document::Plot { points, .. } => csv_text(
            &["x", "value"],
            points
                .iter()
                .map(|(x, v)| vec![to_decimal(x, PLOT_PRECISION), to_decimal(v, PLOT_PRECISION)]),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sheffer_core::rational::{frac, int};

    #[test]
    fn sequence_table_and_csv() {
        let doc = Document::Sequence {
            meta: Map::new(),
            polys: vec![
                Polynomial::one(),
                Polynomial::new(vec![frac(-1, 2), int(1)]),
            ],
        };
        assert_eq!(render(&doc, Format::Table).unwrap(), "0  1\n1  x - 1/2\n");
        assert_eq!(
            render(&doc, Format::Csv).unwrap(),
            "n,k,coefficient\n0,0,1\n1,0,-1/2\n1,1,1\n"
        );
    }

    #[test]
    fn json_rationals_are_strings() {
        let doc = Document::Sequence {
            meta: Map::new(),
            polys: vec![Polynomial::new(vec![frac(1, 3)])],
        };
        let v: Value = serde_json::from_str(&render(&doc, Format::Json).unwrap()).unwrap();
        assert_eq!(v["polynomials"][0]["coefficients"][0], json!("1/3"));
    }

    #[test]
    fn plot_csv_precision() {
        let doc = Document::Plot {
            meta: Map::new(),
            points: vec![(int(0), frac(1, 3)), (frac(1, 2), int(-2))],
        };
        assert_eq!(
            render(&doc, Format::Csv).unwrap(),
            "x,value\n0,0.33333333333333333333\n0.5,-2\n"
        );
    }

    #[test]
    fn triangle_table_alignment() {
        let doc = Document::Triangle {
            meta: Map::new(),
            rows: vec![vec![int(1)], vec![int(0), int(12)]],
        };
        assert_eq!(render(&doc, Format::Table).unwrap(), " 1\n 0 12\n");
    }
}
