//! Table emission: CSV ('.' decimal, ',' separator, header row, LF) and a
//! JSON mirror of the same records.  All values are printed with 12
//! significant digits so output is comparable across platforms.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::Format;

/// One output table: a header and rows of typed cells.
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

/// 12 significant digits, '.' decimal separator, locale-independent.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // JSON mirrors the printed precision so both formats agree
            // byte-for-byte on the numbers they carry.
            Cell::Num(v) => Value::String(fmt_num(*v)),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Writes the tables in the requested format.  Multiple CSV tables are
/// separated by a comment line naming the table; JSON gets one object with
/// a key per table.
pub fn emit(tables: &[Table], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            for (i, t) in tables.iter().enumerate() {
                if tables.len() > 1 {
                    if i > 0 {
                        out.write_all(b"\n")?;
                    }
                    writeln!(out, "# table: {}", t.name)?;
                }
                writeln!(out, "{}", t.columns.join(","))?;
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
        }
        Format::Json => {
            let mut root = Map::new();
            for t in tables {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (c, cell) in t.columns.iter().zip(row) {
                            obj.insert(c.clone(), cell.json());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                root.insert(t.name.clone(), Value::Array(rows));
            }
            serde_json::to_writer_pretty(&mut *out, &Value::Object(root))?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
