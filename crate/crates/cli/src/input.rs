//! Reading matrices, polynomial files, points and graphs from text.

use std::path::Path;

use cirigid::linear::field::parse_rational;
use cirigid::linear::{Field, Matrix, PrimeField};
use cirigid::poly::{parse_poly_file, PolyFile};
use cirigid::{Error, Result};
use num_rational::BigRational;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// Whitespace or comma separated entries, one row per line; `#` starts a comment.
pub fn parse_matrix<F: Field>(field: &F, src: &str) -> Result<Matrix<F>> {
    let mut rows = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut col = 0;
        for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                col += 1;
                continue;
            }
            let at = col + 1;
            col += tok.len() + 1;
            let v = parse_rational(tok).ok_or_else(|| Error::parse(k + 1, at, format!("'{tok}' is not a number")))?;
            let e = field
                .from_rational(&v)
                .ok_or_else(|| Error::parse(k + 1, at, format!("'{tok}' has no image in {}", field.name())))?;
            row.push(e);
        }
        if let Some(first) = rows.first() {
            let first: &Vec<F::Elem> = first;
            if first.len() != row.len() {
                return Err(Error::parse(k + 1, 1, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "empty matrix"));
    }
    Matrix::from_rows(field, rows)
}

/// The field for a polynomial file: `--prime` and a `# field p` header must agree.
pub fn file_prime(file: &PolyFile, flag: Option<u64>) -> Result<Option<u64>> {
    match (file.prime, flag) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidArgument(format!(
            "the file declares F_{a} but --prime {b} was given"
        ))),
        (a, b) => Ok(a.or(b)),
    }
}

pub fn poly_file(path: &Path) -> Result<PolyFile> {
    parse_poly_file(&read(path)?)
}

/// Coordinates as a comma or whitespace separated list of rationals.
pub fn parse_point<F: Field>(field: &F, src: &str) -> Result<Vec<F::Elem>> {
    src.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            let v = parse_rational(t).ok_or_else(|| Error::InvalidArgument(format!("point coordinate {i}: '{t}' is not a number")))?;
            field
                .from_rational(&v)
                .ok_or_else(|| Error::InvalidArgument(format!("point coordinate {i}: '{t}' has no image in {}", field.name())))
        })
        .collect()
}

pub fn prime_field(p: u64) -> Result<PrimeField> {
    if p == 2 {
        return Err(Error::InvalidArgument("--prime must be odd".into()));
    }
    PrimeField::new(p)
}

pub fn rational(name: &str, s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("--{name}: '{s}' is not a rational")))
}
