//! Bit-stable CSV/JSON output. CSV floats carry 17 significant digits in
//! scientific notation; JSON floats use the shortest exact representation.
//! Field order is fixed and lines end in LF.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use super::{Method, RatioRow, RatioTable, Summary};
use crate::error::{Error, Result};

pub const RATIO_CSV_HEADER: &str = "method,cardinality,i,j,d1,dh,ratio";
pub const BOXPLOT_CSV_HEADER: &str = "method,cardinality,min,q1,median,q3,max";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::UnknownId(other.to_string())),
        }
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub trait Emit: Serialize {
    fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()>;

    fn write_json(&self, w: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, self)?;
        w.write_all(b"\n")
    }

    fn to_string_as(&self, format: OutputFormat) -> String {
        let mut buf = Vec::new();
        match format {
            OutputFormat::Csv => self.write_csv(&mut buf),
            OutputFormat::Json => self.write_json(&mut buf),
        }
        .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("output is UTF-8")
    }
}

impl Emit for RatioTable {
    fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "{RATIO_CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.method,
                r.cardinality,
                r.i,
                r.j,
                sci(r.d1),
                sci(r.dh),
                sci(r.ratio)
            )?;
        }
        Ok(())
    }
}

/// CSV form of a summary is the boxplot table.
impl Emit for Summary {
    fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "{BOXPLOT_CSV_HEADER}")?;
        for e in &self.entries {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                e.method,
                e.cardinality,
                sci(e.min),
                sci(e.q1),
                sci(e.median),
                sci(e.q3),
                sci(e.max)
            )?;
        }
        Ok(())
    }
}

pub fn emit<T: Emit>(item: &T, path: impl AsRef<Path>, format: OutputFormat) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        OutputFormat::Csv => item.write_csv(&mut w),
        OutputFormat::Json => item.write_json(&mut w),
    }
    .and_then(|_| w.flush())
    .map_err(|e| Error::io(path, e))
}

/// Reads `ratios.csv` back into a table (skip counts are not stored in CSV).
pub fn parse_ratio_csv<R: Read>(reader: R, source: &str) -> Result<RatioTable> {
    let err = |line: u64, message: String| Error::Parse {
        path: source.to_string(),
        line,
        message,
    };
    let mut table = RatioTable::default();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let n = idx as u64 + 1;
        let line = line.map_err(|e| err(n, e.to_string()))?;
        if idx == 0 {
            if line != RATIO_CSV_HEADER {
                return Err(err(n, format!("expected header `{RATIO_CSV_HEADER}`")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(err(n, format!("expected 7 fields, found {}", f.len())));
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(n, format!("bad integer `{s}`")))
        };
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| err(n, format!("bad number `{s}`")))
        };
        table.rows.push(RatioRow {
            method: f[0].parse::<Method>().map_err(|e| err(n, e.to_string()))?,
            cardinality: int(f[1])?,
            i: int(f[2])?,
            j: int(f[3])?,
            d1: float(f[4])?,
            dh: float(f[5])?,
            ratio: float(f[6])?,
        });
    }
    Ok(table)
}

pub fn read_ratio_csv(path: impl AsRef<Path>) -> Result<RatioTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_ratio_csv(file, &path.display().to_string())
}
