//! 4x4 complex matrices as text: one row per line, four `re,im` pairs per row.

use std::path::Path;

use linalg_core::{Complex64, ComplexMatrix};

use crate::CliError;

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if rows.len() != 4 {
        return Err(format!("expected 4 rows, found {}", rows.len()));
    }
    let mut data = Vec::with_capacity(16);
    for (line, row) in rows {
        let pairs: Vec<&str> = row.split_whitespace().collect();
        if pairs.len() != 4 {
            return Err(format!("line {line}: expected 4 re,im pairs, found {}", pairs.len()));
        }
        for p in pairs {
            let (re, im) = p.split_once(',').ok_or_else(|| format!("line {line}: '{p}' is not a re,im pair"))?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("line {line}: '{s}' is not a number"));
            data.push(Complex64::new(num(re)?, num(im)?));
        }
    }
    ComplexMatrix::new(4, data).map_err(|e| e.to_string())
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read matrix file '{}': {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| CliError::Usage(format!("matrix file '{}': {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bell_state() {
        let text = "# phi+\n0.5,0 0,0 0,0 0.5,0\n0,0 0,0 0,0 0,0\n\n0,0 0,0 0,0 0,0\n0.5,0 0,0 0,0 0.5,-0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m[(0, 3)], Complex64::new(0.5, 0.0));
        assert_eq!(m[(3, 3)], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn names_the_bad_token() {
        let e = parse_matrix("1,0 0,0 0,0 0,0\n0,0 x,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0").unwrap_err();
        assert!(e.contains("'x'") && e.contains("line 2"), "{e}");
        assert!(parse_matrix("1,0 0,0 0,0\n").unwrap_err().contains("4 rows"));
        assert!(parse_matrix("1 0 0 0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0")
            .unwrap_err()
            .contains("'1'"));
    }
}
