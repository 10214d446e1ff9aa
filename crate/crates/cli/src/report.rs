//! Plain-text and CSV rendering of command reports.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// `key=value` lines.
    #[default]
    Text,
    /// A `key,value` section, then any table as its own CSV block.
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, String)>,
    table: Option<Table>,
}

#[derive(Debug, Clone, PartialEq)]
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn table(&mut self, header: &[&str]) -> &mut Self {
        self.table = Some(Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        });
        self
    }

    /// Appends a row to the table opened with [`Report::table`].
    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        let table = self.table.as_mut().expect("row added before table header");
        debug_assert_eq!(cells.len(), table.header.len());
        table.rows.push(cells);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}={v}\n"));
                }
                if let Some(t) = &self.table {
                    for row in &t.rows {
                        let line: Vec<String> = t.header.iter().zip(row).map(|(h, c)| format!("{h}={c}")).collect();
                        out.push_str(&line.join(" "));
                        out.push('\n');
                    }
                }
            }
            Format::Csv => {
                out.push_str("key,value\n");
                for (k, v) in &self.fields {
                    out.push_str(&format!("{},{}\n", csv_cell(k), csv_cell(v)));
                }
                if let Some(t) = &self.table {
                    out.push('\n');
                    out.push_str(&t.header.join(","));
                    out.push('\n');
                    for row in &t.rows {
                        let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                }
            }
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
