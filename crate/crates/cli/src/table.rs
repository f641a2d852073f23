//! CSV artifacts: `#` metadata lines, one header row, data rows, and a
//! trailing `# INCOMPLETE` line when a run stops early.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub const INCOMPLETE: &str = "# INCOMPLETE";

/// Shortest round-trip rendering; exponent form outside `[1e-4, 1e15)`.
pub fn fmt_f64(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub struct TableWriter<W: Write> {
    csv: csv::Writer<W>,
    width: usize,
}

impl<W: Write> TableWriter<W> {
    /// Writes `metadata` (already `#`-prefixed) and the header row.
    pub fn new(mut inner: W, metadata: &str, header: &[&str]) -> io::Result<Self> {
        inner.write_all(metadata.as_bytes())?;
        let mut csv = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(inner);
        csv.write_record(header)?;
        Ok(TableWriter {
            csv,
            width: header.len(),
        })
    }

    pub fn row<I, S>(&mut self, fields: I) -> io::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let record: csv::ByteRecord = fields.into_iter().collect();
        assert_eq!(record.len(), self.width, "row width differs from header");
        self.csv.write_byte_record(&record)?;
        Ok(())
    }

    pub fn numbers(&mut self, values: &[f64]) -> io::Result<()> {
        self.row(values.iter().map(|&x| fmt_f64(x)))
    }

    pub fn finish(self) -> io::Result<W> {
        self.csv.into_inner().map_err(|e| e.into_error())
    }

    /// Flushes the rows written so far and marks the file incomplete.
    pub fn abort(self) -> io::Result<W> {
        let mut inner = self.finish()?;
        writeln!(inner, "{INCOMPLETE}")?;
        inner.flush()?;
        Ok(inner)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Metadata lines without the leading `# `.
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub incomplete: bool,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric column. Panics on a missing column or a non-numeric cell.
    pub fn floats(&self, name: &str) -> Vec<f64> {
        let j = self
            .column(name)
            .unwrap_or_else(|| panic!("no column `{name}`"));
        self.rows
            .iter()
            .map(|r| {
                r[j].parse()
                    .unwrap_or_else(|_| panic!("`{}` in `{name}` is not a number", r[j]))
            })
            .collect()
    }
}

/// Reads an artifact written by [`TableWriter`]. Rows must all have the
/// header's width.
pub fn parse_table(text: &str) -> Result<Table, csv::Error> {
    let mut comments = Vec::new();
    let mut incomplete = false;
    let mut body = String::new();
    for line in text.lines() {
        if line == INCOMPLETE {
            incomplete = true;
        } else if let Some(c) = line.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(body.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok(Table {
        comments,
        header,
        rows,
        incomplete,
    })
}

pub fn read_table(path: &Path) -> io::Result<Table> {
    let text = fs::read_to_string(path)?;
    parse_table(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}
