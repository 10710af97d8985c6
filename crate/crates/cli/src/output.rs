//! CSV and JSON emission. CSV: comma separated, header row, UNIX newlines,
//! floats at 17 significant digits. JSON: lexicographic key order.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// A float rendered with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(
    out: Option<&Path>,
    header: &str,
    rows: impl Iterator<Item = Vec<f64>>,
) -> Result<(), CliError> {
    let mut buf = String::new();
    buf.push_str(header);
    buf.push('\n');
    for row in rows {
        let line: Vec<String> = row.into_iter().map(fmt_float).collect();
        buf.push_str(&line.join(","));
        buf.push('\n');
    }
    write_text(out, &buf)
}

pub fn write_json(out: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    text.push('\n');
    write_text(out, &text)
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_17_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(2.885e9), "2.8850000000000000e9");
        // Round-trips exactly.
        let x = std::f64::consts::PI;
        assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }
}
