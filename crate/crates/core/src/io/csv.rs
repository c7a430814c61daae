use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Writes a numeric table. Values use Rust's shortest round-trip formatting,
/// so reading the file back reproduces every `f64` exactly.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[f64]>,
{
    let name = path.display().to_string();
    let file = File::create(path).map_err(|e| Error::io(&name, e))?;
    let w = BufWriter::new(file);
    let emit = |mut w: BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "{}", header.join(","))?;
        for row in rows {
            let mut first = true;
            for v in row.as_ref() {
                if !first {
                    w.write_all(b",")?;
                }
                write!(w, "{v}")?;
                first = false;
            }
            w.write_all(b"\n")?;
        }
        w.flush()
    };
    emit(w).map_err(|e| Error::io(&name, e))
}

/// Reads a numeric table written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let name = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(&name, e))?;
    let mut lines = BufReader::new(file).lines();
    let header = match lines.next() {
        Some(line) => line.map_err(|e| Error::io(&name, e))?,
        None => return Err(Error::invalid(&name, "empty file")),
    };
    let header: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(&name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| {
                    Error::invalid(&name, format!("line {}: cannot parse `{s}`", k + 2))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != header.len() {
            return Err(Error::invalid(
                &name,
                format!("line {}: expected {} columns, got {}", k + 2, header.len(), row.len()),
            ));
        }
        rows.push(row);
    }
    Ok((header, rows))
}
