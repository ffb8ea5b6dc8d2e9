//! Tabular output as CSV, JSON (an array of row objects) or aligned text.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:.17e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    /// Shorter numbers for reading on a terminal.
    fn render_text(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.10e}"),
            other => other.render(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) => Number::from_f64(*v).map_or_else(|| Value::String(v.to_string()), Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Table {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(Cell::render))?;
                }
                w.flush()
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> =
                            self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)
            }
            Format::Text => {
                let cells: Vec<Vec<String>> =
                    self.rows.iter().map(|r| r.iter().map(Cell::render_text).collect()).collect();
                let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
                for r in &cells {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |out: &mut dyn Write, items: Vec<&str>| -> std::io::Result<()> {
                    let padded: Vec<String> = items.iter().zip(&width).map(|(s, w)| format!("{s:<w$}")).collect();
                    writeln!(out, "{}", padded.join("  ").trim_end())
                };
                line(out, self.columns.clone())?;
                for r in &cells {
                    line(out, r.iter().map(String::as_str).collect())?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["id", "x", "pass"]);
        t.push(vec!["a,b".into(), 2.5.into(), true.into()]);
        t.push(vec!["c".into(), Cell::Empty, false.into()]);
        t
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_and_keeps_full_precision() {
        let s = render(Format::Csv);
        assert_eq!(s.lines().next(), Some("id,x,pass"));
        assert!(s.contains("\"a,b\",2.50000000000000000e0,true"));
    }

    #[test]
    fn json_mirrors_the_rows() {
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v[0]["x"], Value::from(2.5));
        assert_eq!(v[1]["x"], Value::Null);
        assert_eq!(v[1]["pass"], Value::Bool(false));
    }

    #[test]
    fn text_is_aligned() {
        let s = render(Format::Text);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0].find('x'), lines[1].find('2'));
    }
}
