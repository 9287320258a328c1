use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::{CliError, CliResult};

/// `x` rounded to 12 significant digits, printed in shortest form.
pub fn round12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round trip");
    let a = rounded.abs();
    if a == 0.0 || (1e-6..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn complex_text(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", round12(re), round12(im.abs()))
}

/// One compact JSON document per line.
pub fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string(value).map_err(|e| CliError::Usage(format!("serialising output: {e}")))?;
    writeln!(out, "{text}").map_err(stdout_error)
}

pub fn json_pretty<T: Serialize>(out: &mut impl Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(format!("serialising output: {e}")))?;
    writeln!(out, "{text}").map_err(stdout_error)
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let shown = path.display().to_string();
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(format!("serialising {shown}: {e}")))?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(&shown, e))
}

pub fn csv_writer(out: impl Write) -> csv::Writer<impl Write> {
    csv::WriterBuilder::new().flexible(true).from_writer(out)
}

pub fn csv_row<W: Write>(w: &mut csv::Writer<W>, fields: &[&str]) -> CliResult<()> {
    w.write_record(fields).map_err(|e| CliError::Usage(format!("writing csv: {e}")))
}

pub fn csv_finish<W: Write>(mut w: csv::Writer<W>) -> CliResult<()> {
    w.flush().map_err(stdout_error)
}

pub fn stdout_error(e: io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round12(1.0 / 3.0), "0.333333333333");
        assert_eq!(round12(-2.0), "-2");
        assert_eq!(round12(1.23456789012345e-20), "1.23456789012e-20");
        assert_eq!(round12(f64::NEG_INFINITY), "-inf");
    }
}
