use serde::Serialize;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linear::{Field, Matrix, QuadraticForm};

/// A pair of homogeneous polynomials `(f₁, f₂)` of degrees `d₁ ≤ d₂`.
///
/// The number of variables is not tied to `d₁ + d₂ + 1`: small examples
/// live in fewer variables than the family the degrees belong to.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyPair<F: Field> {
    f1: Polynomial<F>,
    f2: Polynomial<F>,
    d1: u32,
    d2: u32,
}

impl<F: Field> PolyPair<F> {
    pub fn new(f1: Polynomial<F>, f2: Polynomial<F>) -> Result<Self> {
        if f1.n_vars() != f2.n_vars() {
            return Err(Error::DimensionMismatch(format!(
                "f1 has {} variables, f2 has {}",
                f1.n_vars(),
                f2.n_vars()
            )));
        }
        for (name, f) in [("f1", &f1), ("f2", &f2)] {
            if f.is_zero() || !f.is_homogeneous() {
                return Err(Error::InvalidArgument(format!("{name} must be a nonzero homogeneous polynomial")));
            }
        }
        let d1 = f1.total_degree().unwrap();
        let d2 = f2.total_degree().unwrap();
        if d1 < 2 || d1 > d2 {
            return Err(Error::InvalidArgument(format!(
                "degrees must satisfy 2 <= d1 <= d2 (got d1 = {d1}, d2 = {d2})"
            )));
        }
        Ok(PolyPair { f1, f2, d1, d2 })
    }

    pub fn f(&self, i: usize) -> &Polynomial<F> {
        match i {
            1 => &self.f1,
            2 => &self.f2,
            _ => panic!("index must be 1 or 2"),
        }
    }
    pub fn d(&self, i: usize) -> u32 {
        match i {
            1 => self.d1,
            2 => self.d2,
            _ => panic!("index must be 1 or 2"),
        }
    }
    pub fn d1(&self) -> u32 {
        self.d1
    }
    pub fn d2(&self) -> u32 {
        self.d2
    }
    /// `M = d₁ + d₂ − 2`
    pub fn m(&self) -> usize {
        (self.d1 + self.d2 - 2) as usize
    }
    pub fn n_vars(&self) -> usize {
        self.f1.n_vars()
    }
    pub fn field(&self) -> &F {
        self.f1.field()
    }
}

/// Localization of a pair at a point of `{f₁ = f₂ = 0}`.
///
/// The chart sets the last nonzero coordinate `x_c` of the point to 1 and
/// uses `z_k = x_j − o_j/o_c` for the remaining `j` in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct PointContext<F: Field> {
    pair: PolyPair<F>,
    point: Vec<F::Elem>,
    chart: usize,
    dehomogenized: [Polynomial<F>; 2],
    components: [Vec<Polynomial<F>>; 2],
}

/// Serializable summary of a chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartInfo {
    /// Index of the coordinate set to 1.
    pub chart: usize,
    /// Ambient coordinate index of each chart variable `z_k`.
    pub chart_vars: Vec<usize>,
    pub point: Vec<String>,
}

pub fn localize_at_point<F: Field>(pair: &PolyPair<F>, point: &[F::Elem]) -> Result<PointContext<F>> {
    let f = pair.field();
    let n = pair.n_vars();
    if point.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, the pair lives in {} variables",
            point.len(),
            n
        )));
    }
    let Some(chart) = (0..n).rev().find(|&i| !f.is_zero(&point[i])) else {
        return Err(Error::ZeroPoint);
    };
    for i in 1..=2 {
        if !f.is_zero(&pair.f(i).evaluate(point)) {
            return Err(Error::NotOnLocus(format!("f{i} does not vanish at the point")));
        }
    }
    let inv = f.inv(&point[chart]).unwrap();
    let normalized: Vec<F::Elem> = point.iter().map(|x| f.mul(x, &inv)).collect();
    // x_j = z_k + o_j for j != c, x_c = 1
    let mut a = Matrix::zeros(f, n, n - 1);
    let mut k = 0;
    for j in 0..n {
        if j != chart {
            a.set(j, k, f.one());
            k += 1;
        }
    }
    let mut components: [Vec<Polynomial<F>>; 2] = [Vec::new(), Vec::new()];
    let mut dehomogenized = Vec::with_capacity(2);
    for i in 1..=2 {
        let local = pair.f(i).compose_affine(&a, &normalized)?;
        debug_assert!(local.homogeneous_component(0).is_zero());
        components[i - 1] = (1..=pair.d(i)).map(|j| local.homogeneous_component(j)).collect();
        dehomogenized.push(local);
    }
    let f2 = dehomogenized.pop().unwrap();
    let f1 = dehomogenized.pop().unwrap();
    Ok(PointContext {
        pair: pair.clone(),
        point: normalized,
        chart,
        dehomogenized: [f1, f2],
        components,
    })
}

impl<F: Field> PointContext<F> {
    pub fn pair(&self) -> &PolyPair<F> {
        &self.pair
    }
    pub fn field(&self) -> &F {
        self.pair.field()
    }
    /// Point with the chart coordinate normalized to 1.
    pub fn point(&self) -> &[F::Elem] {
        &self.point
    }
    pub fn chart(&self) -> usize {
        self.chart
    }
    /// Number of chart variables `z`.
    pub fn z_dim(&self) -> usize {
        self.pair.n_vars() - 1
    }
    pub fn m(&self) -> usize {
        self.pair.m()
    }

    pub fn chart_info(&self) -> ChartInfo {
        let f = self.field();
        ChartInfo {
            chart: self.chart,
            chart_vars: (0..self.pair.n_vars()).filter(|&j| j != self.chart).collect(),
            point: self.point.iter().map(|x| f.format(x)).collect(),
        }
    }

    /// `f_i` in the chart.
    pub fn dehomogenized(&self, i: usize) -> &Polynomial<F> {
        &self.dehomogenized[i - 1]
    }

    /// The component `f_{i,j}`, homogeneous of degree `j` (possibly zero).
    pub fn component(&self, i: usize, j: u32) -> &Polynomial<F> {
        &self.components[i - 1][j as usize - 1]
    }

    /// Coefficients of the linear part `f_{i,1}`.
    pub fn linear_part(&self, i: usize) -> Vec<F::Elem> {
        self.component(i, 1).linear_coefficients().expect("degree-1 component")
    }

    /// `f_{i,2}` as a quadratic form in the chart variables.
    pub fn quadratic_part(&self, i: usize) -> Result<QuadraticForm<F>> {
        quadratic_form_of(self.component(i, 2))
    }
}

/// Quadratic form of a homogeneous quadratic polynomial (zero allowed).
pub fn quadratic_form_of<F: Field>(q: &Polynomial<F>) -> Result<QuadraticForm<F>> {
    if q.terms().iter().any(|(m, _)| m.degree() != 2) {
        return Err(Error::InvalidArgument("not a quadratic form".into()));
    }
    let f = q.field();
    let n = q.n_vars();
    let mut upper = vec![vec![f.zero(); n]; n];
    for (m, c) in q.terms() {
        let s = m.support();
        let (i, j) = if s.len() == 1 { (s[0], s[0]) } else { (s[0], s[1]) };
        upper[i][j] = c.clone();
    }
    QuadraticForm::from_upper(f, n, |i, j| upper[i][j].clone())
}

/// The segment `f_{i,1} + ⋯ + f_{i,a}`.
pub fn hypertangent_segment<F: Field>(ctx: &PointContext<F>, i: usize, a: u32) -> Result<Polynomial<F>> {
    if !(i == 1 || i == 2) {
        return Err(Error::InvalidArgument(format!("polynomial index must be 1 or 2, got {i}")));
    }
    let d = ctx.pair.d(i);
    if a < 1 || a > d {
        return Err(Error::InvalidArgument(format!("segment length {a} outside [1, {d}]")));
    }
    let mut acc = Polynomial::zero(ctx.field(), ctx.z_dim());
    for j in 1..=a {
        acc = acc.add(ctx.component(i, j));
    }
    Ok(acc)
}
