use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Destination {
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// `--out csv` and `--out json` pick a format for stdout; anything else is a
/// file path whose extension may pick the format.
pub fn destination(out: Option<&str>, default: Format) -> Destination {
    match out {
        None => Destination { format: default, path: None },
        Some("csv") => Destination { format: Format::Csv, path: None },
        Some("json") => Destination { format: Format::Json, path: None },
        Some(path) => {
            let format = match Path::new(path).extension().and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                _ => default,
            };
            Destination { format, path: Some(PathBuf::from(path)) }
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_table(rows: impl IntoIterator<Item = (f64, Complex64)>) -> String {
    let mut out = String::from("x,re,im\n");
    for (x, v) in rows {
        out.push_str(&format!("{},{},{}\n", float(x), float(v.re), float(v.im)));
    }
    out
}

pub fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Writes the whole text to stdout, or to a temporary file beside `path`
/// that is then renamed over it.
pub fn emit(dest: &Destination, text: &str) -> io::Result<()> {
    match &dest.path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn destinations() {
        assert_eq!(destination(Some("json"), Format::Csv), Destination { format: Format::Json, path: None });
        assert_eq!(destination(None, Format::Csv).format, Format::Csv);
        let d = destination(Some("out/table.json"), Format::Csv);
        assert_eq!((d.format, d.path.unwrap()), (Format::Json, PathBuf::from("out/table.json")));
        assert_eq!(destination(Some("table.txt"), Format::Csv).format, Format::Csv);
    }

    #[test]
    fn atomic_file_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        std::fs::write(&path, "old").unwrap();
        emit(&Destination { format: Format::Csv, path: Some(path.clone()) }, "x,re,im\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,re,im\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
