use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Formats a float with 17 significant digits, enough to round-trip any f64.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `a` as headerless CSV, one matrix row per record.
pub fn write_csv<W: Write>(a: &Matrix, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..a.rows() {
        w.write_record(a.row(i).iter().map(|&v| format_f64(v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Matrix> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("{f:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

pub fn to_csv_string(a: &Matrix) -> String {
    let mut buf = Vec::new();
    write_csv(a, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
