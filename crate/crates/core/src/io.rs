//! Diagram files: CSV rows `birth,death[,multiplicity]`, `#` comments.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::error::{Error, Result};

pub fn read_diagram(path: impl AsRef<Path>) -> Result<PersistenceDiagram> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_diagram(file, &path.display().to_string())
}

/// Parses diagram CSV from any reader. `source` names the input in errors.
pub fn parse_diagram<R: Read>(reader: R, source: &str) -> Result<PersistenceDiagram> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: source.to_string(),
        line,
        message,
    };

    let mut entries = Vec::new();
    for (idx, raw) in BufReader::new(reader).lines().enumerate() {
        let line = idx as u64 + 1;
        let raw = raw.map_err(|e| parse_err(line, e.to_string()))?;
        let text = raw.trim_end_matches('\r').trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(parse_err(
                line,
                format!("expected 2 or 3 fields, found {}", fields.len()),
            ));
        }
        let num = |i: usize, what: &str| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("{what} `{}` is not a number", fields[i])))
        };
        let birth = num(0, "birth")?;
        let death = num(1, "death")?;
        if !birth.is_finite() || !death.is_finite() {
            return Err(parse_err(line, "coordinates must be finite".into()));
        }
        if death < birth {
            return Err(parse_err(line, format!("death {death} < birth {birth}")));
        }
        if death == birth {
            return Err(parse_err(
                line,
                format!("point ({birth}, {death}) lies on the diagonal"),
            ));
        }
        let mult = match fields.get(2) {
            None => 1,
            Some(s) => {
                let m: i64 = s.parse().map_err(|_| {
                    parse_err(line, format!("multiplicity `{s}` is not an integer"))
                })?;
                if m <= 0 {
                    return Err(parse_err(line, format!("multiplicity {m} is not positive")));
                }
                u32::try_from(m)
                    .map_err(|_| parse_err(line, format!("multiplicity {m} too large")))?
            }
        };
        entries.push((PlanePoint::new(birth, death), mult));
    }
    PersistenceDiagram::from_weighted(entries)
}

pub fn write_diagram(diagram: &PersistenceDiagram, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    format_diagram(diagram, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes one row per distinct point. Floats use the shortest representation
/// that parses back to the same value.
pub fn format_diagram<W: Write>(diagram: &PersistenceDiagram, w: &mut W) -> std::io::Result<()> {
    for (p, m) in diagram.entries() {
        writeln!(w, "{:?},{:?},{}", p.birth, p.death, m)?;
    }
    Ok(())
}
