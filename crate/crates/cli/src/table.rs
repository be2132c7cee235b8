//! Numeric CSV tables: one header line, values with 12 significant digits,
//! LF line endings.

use thiserror::Error;

pub const SPECTRUM_HEADERS: [&str; 5] = ["omega_rad_per_s", "omega_over_omega0", "T", "R", "T_classical"];
pub const PROFILE_HEADERS: [&str; 3] = ["x_nm", "rho", "J_over_c"];
pub const GAP_HEADERS: [&str; 3] = ["omega_lo", "omega_hi", "min_T"];
pub const DECAY_HEADERS: [&str; 3] = ["omega_center", "decay_length_nm", "exit_over_entry"];

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CsvError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse `{value}` as a number")]
    Number { line: usize, value: String },
}

/// `{:.11e}`: 12 significant digits, exact round trip at that precision.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn write_csv(table: &Table) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(&table.headers.join(","));
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn parse_csv(bytes: &[u8]) -> Result<Table, CsvError> {
    let text = String::from_utf8_lossy(bytes);
    let mut lines = text.lines();
    let header = lines.next().ok_or(CsvError::Empty)?;
    let headers: Vec<String> = header.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != headers.len() {
            return Err(CsvError::FieldCount {
                line: i + 2,
                expected: headers.len(),
                found: fields.len(),
            });
        }
        let row = fields
            .iter()
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| CsvError::Number {
                    line: i + 2,
                    value: f.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Table { headers, rows })
}
