//! Numeric CSV with `#` comment lines above the header. Values are written
//! with 17 significant digits, which round-trips every `f64` exactly.

use std::fmt::Write as _;

use gpc_core::TimeSeries;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct CsvDocument {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvDocument {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    /// `t` followed by every column of the series.
    pub fn from_series(ts: &TimeSeries) -> Self {
        let mut header = vec!["t".to_string()];
        header.extend(ts.names().map(str::to_string));
        let rows = (0..ts.len())
            .map(|i| {
                let mut row = vec![ts.time(i)];
                row.extend(ts.columns().iter().map(|(_, v)| v[i]));
                row
            })
            .collect();
        Self {
            comments: Vec::new(),
            header,
            rows,
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Rectangular shape and a strictly increasing first column.
    pub fn validate(&self) -> CliResult<()> {
        if self.header.is_empty() {
            return Err(CliError::config("header", "no columns"));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.header.len() {
                return Err(CliError::ConfigParse {
                    line: i + 1,
                    field: "row".into(),
                    message: format!("{} values for {} columns", row.len(), self.header.len()),
                });
            }
        }
        if let Some(i) = self.rows.windows(2).position(|w| !(w[1][0] > w[0][0])) {
            return Err(CliError::ConfigParse {
                line: i + 2,
                field: self.header[0].clone(),
                message: "first column must be strictly increasing".into(),
            });
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut comments = Vec::new();
        let mut header: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            match &header {
                None => header = Some(line.split(',').map(|s| s.trim().to_string()).collect()),
                Some(h) => {
                    let row = line
                        .split(',')
                        .enumerate()
                        .map(|(i, cell)| {
                            cell.trim()
                                .parse::<f64>()
                                .map_err(|_| CliError::ConfigParse {
                                    line: n + 1,
                                    field: h.get(i).cloned().unwrap_or_default(),
                                    message: format!("`{cell}` is not a number"),
                                })
                        })
                        .collect::<CliResult<Vec<f64>>>()?;
                    rows.push(row);
                }
            }
        }
        let header = header.ok_or_else(|| CliError::config("header", "missing"))?;
        let doc = Self {
            comments,
            header,
            rows,
        };
        doc.validate()?;
        Ok(doc)
    }
}
