//! Deterministic serialization: 12-significant-digit numbers, LF-terminated
//! UTF-8 CSV with a fixed header row.

use std::fs;
use std::io::Write;
use std::path::Path;

/// Canonical 12-significant-digit form; round-trips exactly through f64.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "-".to_string();
    }
    format!("{x:.11e}")
}

/// Write a CSV file (header + rows), LF endings, and return its text.
pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<String> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(text)
}

/// Write a line-oriented report file, LF endings.
pub fn write_report(path: &Path, lines: &[String]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    for line in lines {
        f.write_all(line.as_bytes())?;
        f.write_all(b"\n")?;
    }
    Ok(())
}
