use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::error::CliError;

/// Significant digits written for every value.
pub const SIG_DIGITS: usize = 12;

/// Column-named numeric table. Always rectangular and free of NaN/inf.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<(), CliError> {
        if row.len() != self.columns.len() {
            return Err(CliError::Table(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(i) = row.iter().position(|x| !x.is_finite()) {
            return Err(CliError::Table(format!(
                "non-finite value {} in column `{}`",
                row[i], self.columns[i]
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits, shortest form: plain
/// decimals for exponents in `[-5, 12)`, scientific otherwise.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render(table: &ResultTable, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(table),
    }
}

fn render_csv(table: &ResultTable) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    let to_err = |e: csv::Error| CliError::Table(e.to_string());
    w.write_record(table.columns()).map_err(to_err)?;
    for row in table.rows() {
        w.write_record(row.iter().map(|&x| format_value(x))).map_err(to_err)?;
    }
    w.into_inner().map_err(|e| CliError::Table(e.to_string()))
}

fn render_json(table: &ResultTable) -> Result<Vec<u8>, CliError> {
    use serde_json::{Map, Number, Value};
    let records: Vec<Value> = table
        .rows()
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, &x) in table.columns().iter().zip(row) {
                let rounded: f64 = format_value(x).parse().expect("formatted value parses");
                let n = Number::from_f64(rounded).expect("finite by table invariant");
                obj.insert(name.clone(), Value::Number(n));
            }
            Value::Object(obj)
        })
        .collect();
    let mut out = serde_json::to_vec_pretty(&Value::Array(records)).map_err(|e| CliError::Table(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// Writes the table to `path`, or to standard output when `path` is `None`.
pub fn emit(table: &ResultTable, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(table, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_value(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_value(2.0), "2");
        assert_eq!(format_value(-0.5), "-0.5");
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(-0.0), "0");
        assert_eq!(format_value(std::f64::consts::PI * 100.0), "314.159265359");
        assert_eq!(format_value(1.0 - 1e-15), "1");
        assert_eq!(format_value(1.234e-7), "1.234e-7");
        assert_eq!(format_value(6.6743e-11), "6.6743e-11");
        assert_eq!(format_value(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_value(0.00012345678901234), "0.000123456789012");
    }

    #[test]
    fn rejects_ragged_and_nan() {
        let mut t = ResultTable::new(&["a", "b"]);
        assert!(t.push(vec![1.0]).is_err());
        assert!(t.push(vec![1.0, f64::NAN]).is_err());
        assert!(t.push(vec![1.0, f64::INFINITY]).is_err());
        assert!(t.push(vec![1.0, 2.0]).is_ok());
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = ResultTable::new(&["t", "value"]);
        assert_eq!(render(&t, Format::Csv).unwrap(), b"t,value\n");
        assert_eq!(render(&t, Format::Json).unwrap(), b"[]\n");
    }

    #[test]
    fn csv_quotes_awkward_headers() {
        let mut t = ResultTable::new(&["plain", "with,comma", "with \"quote\""]);
        t.push(vec![1.0, 0.25, -3.0]).unwrap();
        let text = String::from_utf8(render(&t, Format::Csv).unwrap()).unwrap();
        assert_eq!(text, "plain,\"with,comma\",\"with \"\"quote\"\"\"\n1,0.25,-3\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = ResultTable::new(&["z", "a"]);
        t.push(vec![1.0 / 3.0, 2.0]).unwrap();
        let text = String::from_utf8(render(&t, Format::Json).unwrap()).unwrap();
        let z = text.find("\"z\"").unwrap();
        let a = text.find("\"a\"").unwrap();
        assert!(z < a);
        assert!(text.contains("0.333333333333"));
    }
}
