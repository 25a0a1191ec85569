//! Dense univariate polynomials, used for the pencil parameter.

use super::field::Field;

/// Coefficients in ascending degree order, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `a·t + b`
    pub fn linear(field: &F, a: F::Elem, b: F::Elem) -> Self {
        Self::new(field, vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &lead_inv);
            if !f.is_zero(&c) {
                let shift = top - dd;
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, d));
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|x| f.is_zero(x)) && rem.len() > dd {
                rem.pop();
            }
        }
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let f = &self.field;
        let mut base = self.div_rem(modulus).1;
        let mut acc = Self::constant(f, f.one()).div_rem(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(modulus).1;
            }
            base = base.mul(&base).div_rem(modulus).1;
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Whether the polynomial has a root in the ground field. Over the
    /// rationals the ground field stands in for the complex numbers, so any
    /// non-constant polynomial counts; over `F_p` only rational roots count,
    /// decided by `gcd(g, t^p - t)`.
    pub fn has_root_in_ground_field(&self) -> bool {
        let f = &self.field;
        match self.degree() {
            None => true,
            Some(0) => false,
            Some(_) => {
                let p = f.characteristic();
                if p == 0 {
                    return true;
                }
                let t = Self::linear(f, f.one(), f.zero());
                let tp = t.pow_mod(p, self);
                let g = self.gcd(&tp.sub(&t));
                g.degree().is_some_and(|d| d >= 1)
            }
        }
    }
}

/// Determinant of a square matrix of univariate polynomials by fraction-free
/// elimination (exact division in `K[t]`).
pub fn poly_determinant<F: Field>(field: &F, mut m: Vec<Vec<UniPoly<F>>>) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(field, field.one());
    }
    let mut sign_neg = false;
    let mut prev = UniPoly::constant(field, field.one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UniPoly::zero(field);
            };
            m.swap(k, p);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = UniPoly::zero(field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.scale(&field.neg(&field.one()))
    } else {
        det
    }
}

/// Nonzero invariant factors (monic, each dividing the next) of a matrix over
/// `K[t]`, by Smith normal form elimination.
pub fn invariant_factors<F: Field>(field: &F, mut m: Vec<Vec<UniPoly<F>>>) -> Vec<UniPoly<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].degree());
            let Some((pi, pj)) = pivot else {
                return out;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut cleared = true;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].div_rem(&m[k][k]);
                for j in k..cols {
                    let t = m[i][j].sub(&q.mul(&m[k][j]));
                    m[i][j] = t;
                }
                cleared &= r.is_zero();
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].div_rem(&m[k][k]);
                for i in k..rows {
                    let t = m[i][j].sub(&q.mul(&m[i][k]));
                    m[i][j] = t;
                }
                cleared &= r.is_zero();
            }
            if !cleared {
                continue;
            }
            // the pivot must divide everything left; otherwise fold the offending row in
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !m[i][j].div_rem(&m[k][k]).1.is_zero()));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let t = m[k][j].add(&m[i][j]);
                        m[k][j] = t;
                    }
                }
                None => break,
            }
        }
        out.push(m[k][k].monic());
    }
    let _ = field;
    out
}
