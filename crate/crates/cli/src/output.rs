use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Standard output, or a file when `--out` is given.
pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(out: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(sink(out)?))
}

/// `x` with 17 significant digits in positional notation.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Shortest round-trip form, scientific when very small or large; empty for NaN.
pub fn float(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:?}")
    }
}

/// True when the error chain ends in a closed pipe, as with `haros ... | head`.
pub fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|csv| {
                matches!(csv.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe)
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(sig17(0.5), "0.50000000000000000");
        assert_eq!(sig17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(sig17(0.001), "0.0010000000000000000");
        assert_eq!(sig17(0.0), "0");
        let x = 2.0 / 7.0;
        assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn floats_round_trip() {
        assert_eq!(float(0.5), "0.5");
        assert_eq!(float(-1.1102230246251565e-16), "-1.1102230246251565e-16");
        assert_eq!(float(f64::NAN), "");
    }
}
