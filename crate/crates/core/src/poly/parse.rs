//! Polynomial text format.
//!
//! ```text
//! # field 101
//! # vars 4
//! 3*x0^2*x1 - 1/2*x2^3
//! x0*x3 + x1^2
//! ```
//!
//! Terms are separated by `+`/`-`; a term is `coeff`, `coeff*mono` or `mono`,
//! and `mono` is a product of `x<idx>` or `x<idx>^<exp>` factors.
//! Coefficients are integers or `a/b`. Whitespace is ignored. A file holds
//! one polynomial per line; `# field p` selects `F_p` (default: rationals),
//! `# vars N` fixes the number of variables, other `#` lines are comments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::{Monomial, MAX_VARS};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linear::{Field, PrimeField, Rationals};

struct Term {
    coeff: BigRational,
    factors: Vec<(usize, u32, usize)>,
}

struct Scanner<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    end_col: usize,
    _src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Scanner {
            chars,
            pos: 0,
            line,
            end_col: src.chars().count() + 1,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_col, |&(c, _)| c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn digits(&mut self) -> Result<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            return Err(self.err("expected a number"));
        }
        Ok(s)
    }

    fn number(&mut self) -> Result<BigRational> {
        let n: BigInt = self.digits()?.parse().expect("digits");
        if self.peek() == Some('/') {
            self.pos += 1;
            let col = self.col();
            let d: BigInt = self.digits()?.parse().expect("digits");
            if d.is_zero() {
                return Err(Error::parse(self.line, col, "zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn factor(&mut self) -> Result<(usize, u32, usize)> {
        let col = self.col();
        if self.peek() != Some('x') {
            return Err(self.err("expected a variable x<idx>"));
        }
        self.pos += 1;
        let idx: usize = self
            .digits()?
            .parse()
            .map_err(|_| Error::parse(self.line, col, "variable index too large"))?;
        let mut exp = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let ecol = self.col();
            exp = self
                .digits()?
                .parse()
                .map_err(|_| Error::parse(self.line, ecol, "exponent too large"))?;
        }
        Ok((idx, exp, col))
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        let mut coeff = BigRational::from_integer(1.into());
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.number()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
            }
            Some('x') => factors.push(self.factor()?),
            Some(_) => return Err(self.err("expected a coefficient or a variable")),
            None => return Err(self.err("unexpected end of input")),
        }
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if negative {
            coeff = -coeff;
        }
        Ok(Term { coeff, factors })
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut negative = false;
        match self.peek() {
            None => return Err(self.err("empty polynomial")),
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            out.push(self.term(negative)?);
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.err(format!("unexpected character '{c}'"))),
            }
            self.pos += 1;
        }
    }
}

fn parse_line(src: &str, line: usize) -> Result<Vec<Term>> {
    Scanner::new(src, line).terms()
}

fn build<F: Field>(field: &F, terms: &[Term], n_vars: usize, line: usize) -> Result<Polynomial<F>> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0u32; n_vars];
        for &(idx, e, col) in &t.factors {
            if idx >= n_vars {
                return Err(Error::parse(
                    line,
                    col,
                    format!("variable x{idx} out of range for {n_vars} variables"),
                ));
            }
            exps[idx] += e;
        }
        let col = t.factors.first().map_or(1, |f| f.2);
        let c = field
            .from_rational(&t.coeff)
            .ok_or_else(|| Error::parse(line, col, format!("coefficient has no image in {}", field.name())))?;
        out.push((Monomial::from_exps(exps), c));
    }
    Ok(Polynomial::from_terms(field, n_vars, out))
}

fn max_var(terms: &[Term]) -> Option<usize> {
    terms.iter().flat_map(|t| t.factors.iter().map(|f| f.0)).max()
}

fn check_vars(n: usize, line: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::parse(line, 1, format!("at most {MAX_VARS} variables are supported")));
    }
    Ok(())
}

/// Parses a single polynomial. Without `n_vars` the ring is sized by the
/// largest variable index that occurs (at least one variable).
pub fn parse_polynomial<F: Field>(field: &F, src: &str, n_vars: Option<usize>) -> Result<Polynomial<F>> {
    let terms = parse_line(src, 1)?;
    let n = n_vars.unwrap_or_else(|| max_var(&terms).map_or(1, |m| m + 1));
    check_vars(n, 1)?;
    build(field, &terms, n, 1)
}

/// Contents of a polynomial file, with coefficients kept as rationals until
/// a field is chosen.
#[derive(Clone, Debug)]
pub struct PolyFile {
    /// `Some(p)` when a `# field p` header is present.
    pub prime: Option<u64>,
    pub n_vars: usize,
    pub polys: Vec<Polynomial<Rationals>>,
    /// Source line of each polynomial.
    pub lines: Vec<usize>,
}

pub fn parse_poly_file(src: &str) -> Result<PolyFile> {
    let mut prime = None;
    let mut declared_vars = None;
    let mut parsed = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let words: Vec<&str> = rest.split_whitespace().collect();
            match words.as_slice() {
                ["field", v] => {
                    let col = raw.find(v).map_or(1, |c| c + 1);
                    let p: u64 = v
                        .parse()
                        .map_err(|_| Error::parse(line, col, "field header expects a prime"))?;
                    PrimeField::new(p).map_err(|e| Error::parse(line, col, e.to_string()))?;
                    prime = Some(p);
                }
                ["vars", v] => {
                    let col = raw.find(v).map_or(1, |c| c + 1);
                    let n: usize = v
                        .parse()
                        .map_err(|_| Error::parse(line, col, "vars header expects a count"))?;
                    check_vars(n, line)?;
                    declared_vars = Some(n);
                }
                _ => {}
            }
            continue;
        }
        parsed.push((line, parse_line(raw, line)?));
    }
    let needed = parsed
        .iter()
        .filter_map(|(_, t)| max_var(t))
        .max()
        .map_or(1, |m| m + 1);
    let n_vars = declared_vars.unwrap_or(needed);
    check_vars(n_vars, 1)?;
    let mut polys = Vec::with_capacity(parsed.len());
    let mut lines = Vec::with_capacity(parsed.len());
    for (line, terms) in &parsed {
        polys.push(build(&Rationals, terms, n_vars, *line)?);
        lines.push(*line);
    }
    Ok(PolyFile {
        prime,
        n_vars,
        polys,
        lines,
    })
}

impl PolyFile {
    /// The polynomials over `field`, reporting the source line of any
    /// coefficient that has no image.
    pub fn polys_in<F: Field>(&self, field: &F) -> Result<Vec<Polynomial<F>>> {
        self.polys
            .iter()
            .zip(&self.lines)
            .map(|(p, &line)| {
                p.map_field(field, |c| field.from_rational(c))
                    .ok_or_else(|| Error::parse(line, 1, format!("coefficient has no image in {}", field.name())))
            })
            .collect()
    }
}
