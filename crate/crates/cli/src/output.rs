use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Round-trip float formatting with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Quotes a field if it contains a separator, quote or newline.
pub fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn row(out: &mut dyn Write, fields: &[String]) -> io::Result<()> {
    writeln!(out, "{}", fields.join(","))
}

pub const AXES: [&str; 3] = ["x", "y", "z"];

pub fn axis_columns(prefix: &str, dim: usize) -> Vec<String> {
    AXES[..dim].iter().map(|a| format!("{prefix}{a}")).collect()
}
