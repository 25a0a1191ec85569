use std::collections::HashMap;
use std::fmt;

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::linear::{Field, LinearSubspace, Matrix};

/// Sparse multivariate polynomial. Terms are kept sorted with the leading
/// term (degrevlex) first and never carry a zero coefficient.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    n_vars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{} vars over {}]({})", self.n_vars, self.field.name(), self)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, n_vars: usize) -> Self {
        assert!(n_vars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Polynomial {
            field: field.clone(),
            n_vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, n_vars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, n_vars, vec![(Monomial::one(n_vars), c)])
    }

    pub fn var(field: &F, n_vars: usize, i: usize) -> Self {
        Self::from_terms(field, n_vars, vec![(Monomial::var(n_vars, i), field.one())])
    }

    pub fn monomial(field: &F, mono: Monomial, c: F::Elem) -> Self {
        let n = mono.n_vars();
        Self::from_terms(field, n, vec![(mono, c)])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(field: &F, n_vars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        assert!(n_vars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.n_vars(), n_vars);
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, n_vars, acc)
    }

    fn from_map(field: &F, n_vars: usize, acc: HashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            field: field.clone(),
            n_vars,
            terms,
        }
    }

    /// Terms must already be sorted leading-first with no zero coefficients.
    pub(crate) fn from_sorted(field: &F, n_vars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial {
            field: field.clone(),
            n_vars,
            terms,
        }
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear_form(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone()))
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// True for zero as well.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Polynomial {
            field: self.field.clone(),
            n_vars: self.n_vars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n_vars, other.n_vars, "polynomials in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = f.add(ca, cb);
                    if !f.is_zero(&s) {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(s) {
            return Self::zero(f, self.n_vars);
        }
        Polynomial {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, s))).collect(),
        }
    }

    /// `c·m·self`; multiplication by a monomial keeps the term order.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.n_vars);
        }
        Polynomial {
            field: f.clone(),
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(f, self.n_vars, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.field, self.n_vars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn evaluate(&self, x: &[F::Elem]) -> F::Elem {
        assert_eq!(x.len(), self.n_vars, "point has the wrong number of coordinates");
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m.exps()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(xi, u64::from(e)));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `x_i = Σ_j a[i][j]·y_j + b_i`; the result lives in
    /// `a.cols()` variables.
    pub fn compose_affine(&self, a: &Matrix<F>, b: &[F::Elem]) -> Result<Self> {
        if a.rows() != self.n_vars || b.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "substitution for {} variables applied to a polynomial in {}",
                a.rows(),
                self.n_vars
            )));
        }
        let f = &self.field;
        let m = a.cols();
        let images: Vec<Self> = (0..self.n_vars)
            .map(|i| {
                let lin = Self::linear_form(f, a.row(i));
                lin.add(&Self::constant(f, m, b[i].clone()))
            })
            .collect();
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|p| vec![Self::constant(f, m, f.one()), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (mono, c) in &self.terms {
            let mut t = Self::constant(f, m, c.clone());
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = f.add(v, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Self::from_map(f, m, acc))
    }

    /// Restriction onto a linear subspace, in the coordinates of its
    /// parametrization.
    pub fn restrict(&self, l: &LinearSubspace<F>) -> Result<Self> {
        let zeros = vec![self.field.zero(); self.n_vars];
        self.compose_affine(l.basis(), &zeros)
    }

    /// Homogenization to degree `degree` with a new last variable `w`:
    /// a term of degree `e` is multiplied by `w^(degree - e)`.
    pub fn homogenize(&self, degree: u32) -> Result<Self> {
        if self.total_degree().is_some_and(|d| d > degree) {
            return Err(Error::InvalidArgument(format!(
                "cannot homogenize a polynomial of degree {} to degree {degree}",
                self.total_degree().unwrap()
            )));
        }
        let n = self.n_vars + 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.push(degree - m.degree());
                (Monomial::from_exps(e), c.clone())
            })
            .collect();
        Ok(Self::from_terms(&self.field, n, terms))
    }

    /// Same polynomial in a ring with more variables (appended at the end).
    pub fn extend_vars(&self, n_vars: usize) -> Self {
        assert!(n_vars >= self.n_vars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.resize(n_vars, 0);
                (Monomial::from_exps(e), c.clone())
            })
            .collect();
        Self::from_terms(&self.field, n_vars, terms)
    }

    /// Coefficient-wise image in another field; `None` if some coefficient
    /// has no image.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<Polynomial<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| f(c).map(|v| (m.clone(), v)))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_terms(target, self.n_vars, terms))
    }

    /// Coefficients of a linear form, `None` if the polynomial is not a
    /// linear form.
    pub fn linear_coefficients(&self) -> Option<Vec<F::Elem>> {
        let mut out = vec![self.field.zero(); self.n_vars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            out[m.support()[0]] = c.clone();
        }
        Some(out)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = f.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (k, neg) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(out, "{mag}")?;
            } else if mag == "1" {
                write!(out, "{}", factors.join("*"))?;
            } else {
                write!(out, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
