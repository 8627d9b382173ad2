//! Exchange formats: points as JSON `[[re, im], ...]`, isometries as
//! row-major CSV headed by `n=<int>`.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fibration::IsometryMatrix;
use crate::hermitian::IndefiniteVector;

/// Parses `[[re, im], ...]` with `n + 1 >= 3` entries.
pub fn parse_point(text: &str) -> Result<IndefiniteVector> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
    IndefiniteVector::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

pub fn point_to_json(z: &IndefiniteVector) -> String {
    let pairs: Vec<[f64; 2]> = z.coords().iter().map(|c| [c.re, c.im]).collect();
    serde_json::to_string(&pairs).expect("finite pairs serialize")
}

pub fn write_matrix_csv<W: Write>(mut out: W, a: &IsometryMatrix) -> Result<()> {
    let m = a.entries();
    writeln!(out, "n={}", a.n())?;
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|k| format!("{:?}", m[(i, k)])).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn read_matrix_csv<R: BufRead>(input: R) -> Result<IsometryMatrix> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))??;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad matrix header {header:?}")))?;
    let mut values = Vec::with_capacity((n + 1) * (n + 1));
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        if row.len() != n + 1 {
            return Err(Error::Parse(format!("expected {} columns, got {}", n + 1, row.len())));
        }
        values.extend(row);
    }
    if values.len() != (n + 1) * (n + 1) {
        return Err(Error::Parse(format!("expected {} rows", n + 1)));
    }
    IsometryMatrix::new(DMatrix::from_row_slice(n + 1, n + 1, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::random_isometry;

    #[test]
    fn parses_point_json() {
        let z = parse_point("[[0,1],[0,0],[1,0]]").unwrap();
        assert_eq!(z, IndefiniteVector::from_pairs(&[(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]).unwrap());
        assert!(parse_point("[[0,1],[1,0]]").is_err());
        assert!(parse_point("[[0,1,2],[0,0],[1,0]]").is_err());
        assert!(parse_point("not json").is_err());
    }

    #[test]
    fn decimal_parsing_is_correctly_rounded() {
        // Needs correctly rounded parsing, not a fast approximate path.
        let text = "[[0.1,2.2250738585072011e-308],[9007199254740993,0.30000000000000004],[1e23,-0]]";
        let z = parse_point(text).unwrap();
        assert_eq!(z[0].re, "0.1".parse::<f64>().unwrap());
        assert_eq!(z[0].im, "2.2250738585072011e-308".parse::<f64>().unwrap());
        assert_eq!(z[1].re, 9007199254740992.0);
        assert_eq!(z[1].im, "0.30000000000000004".parse::<f64>().unwrap());
        assert_eq!(z[2].re, 1e23);
        assert_eq!(parse_point(&point_to_json(&z)).unwrap(), z);
    }

    #[test]
    fn matrix_csv_round_trip() {
        let a = random_isometry(4, 11, 2);
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n=4\n"));
        assert_eq!(text.lines().count(), 6);
        assert_eq!(read_matrix_csv(&buf[..]).unwrap(), a);
    }

    #[test]
    fn matrix_csv_rejects_garbage() {
        assert!(read_matrix_csv("".as_bytes()).is_err());
        assert!(read_matrix_csv("m=2\n1,0,0\n0,1,0\n0,0,1\n".as_bytes()).is_err());
        assert!(read_matrix_csv("n=2\n1,0,0\n0,1,0\n".as_bytes()).is_err());
        assert!(read_matrix_csv("n=2\n1,0,0\n0,1,x\n0,0,1\n".as_bytes()).is_err());
        assert!(read_matrix_csv("n=2\n1,0,0\n0,1,0\n0,0,1\n".as_bytes()).is_ok());
    }
}
