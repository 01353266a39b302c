//! Angle sequences from descriptors and text files.

use std::path::Path;

use carlab_core::sequences::{AngleSequence, SequenceFamily};

use crate::{LabError, LabResult};

/// Reads one decimal angle per line. Blank lines and lines starting with `#`
/// are skipped.
pub fn read_angles(path: &Path) -> LabResult<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Io(format!("reading sequence file {}: {e}", path.display())))?;
    parse_angles(&text).map_err(|msg| LabError::Config(format!("{}: {msg}", path.display())))
}

pub fn parse_angles(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v: f64 = t
            .parse()
            .map_err(|_| format!("line {}: '{t}' is not a decimal number", lineno + 1))?;
        out.push(v);
    }
    Ok(out)
}

/// Writes angles one per line with round-trip precision.
pub fn write_angles(path: &Path, values: &[f64]) -> LabResult<()> {
    let mut s = String::with_capacity(values.len() * 24);
    for v in values {
        s.push_str(&format!("{v:e}\n"));
    }
    std::fs::write(path, s).map_err(|e| LabError::Io(format!("writing {}: {e}", path.display())))
}

/// The first `len` terms named by a descriptor (`zero`, `harmonic`,
/// `invsqrt`, `power:p`, `random:scale:seed`, `file:path`).
pub fn resolve(descriptor: &str, len: usize) -> LabResult<AngleSequence> {
    let family: SequenceFamily = descriptor.parse()?;
    let seq = match &family {
        SequenceFamily::File(path) => {
            let values = read_angles(Path::new(path))?;
            if values.len() < len {
                return Err(LabError::Config(format!(
                    "sequence file {path} has {} angles, {len} needed",
                    values.len()
                )));
            }
            AngleSequence::new(values[..len].to_vec())?
        }
        other => other.generate(len)?,
    };
    Ok(seq.with_family(family))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_skips_blanks_and_comments() {
        assert_eq!(parse_angles("# header\n0.5\n\n -0.25 \n").unwrap(), vec![0.5, -0.25]);
        assert!(parse_angles("0.1\nx\n").unwrap_err().contains("line 2"));
    }

    #[test]
    fn round_trip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.txt");
        let values = vec![0.1, -1.0 / 3.0, 1e-300];
        write_angles(&path, &values).unwrap();
        assert_eq!(read_angles(&path).unwrap(), values);
        let seq = resolve(&format!("file:{}", path.display()), 2).unwrap();
        assert_eq!(seq.values(), &values[..2]);
        assert!(matches!(resolve(&format!("file:{}", path.display()), 4), Err(LabError::Config(_))));
    }
}
