//! The path count inequality `(p_2+…+p_k)(Σ_{i>k} p_i + 1) ≥ Σ_{i≥2} p_i²`
//! and the linear minimisation behind it.
//!
//! The minimisation runs over `t_2, …, t_N` with `λ_i(t) = t_i − Σ_{j→i} t_j ≥ 0`
//! for `i = 2..N` and `Σ p_i t_i = Σ_{i>k} p_i + 1`; the objective is
//! `t_2 + … + t_k`. The region is a simplex, so the minimum is found by
//! solving each of its `N−1` vertex systems exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::graph::{enumerate_graphs, path_counts_unchecked, GraphClass, PathCounts, ResolutionGraph};
use super::nf::require_prefix;
use crate::error::{Error, Result};
use crate::linear::field::Rationals;
use crate::linear::matrix::Matrix;
use crate::ser;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop52 {
    pub k: usize,
    #[serde(serialize_with = "ser::bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser::bigint")]
    pub rhs: BigInt,
    pub holds: bool,
    pub equality: bool,
}


/// Evaluates both sides on any weak graph rooted at 1, with `k` the prefix
/// length.
pub(crate) fn prop52_evaluate(g: &ResolutionGraph, pc: &PathCounts) -> Prop52 {
    let k = g.prefix_len();
    let n = g.top();
    let head: BigInt = (2..=k).map(|i| pc.p(i).clone()).sum();
    let tail: BigInt = (k + 1..=n).map(|i| pc.p(i).clone()).sum::<BigInt>() + 1;
    let lhs = head * tail;
    let rhs: BigInt = (2..=n).map(|i| pc.p(i) * pc.p(i)).sum();
    Prop52 {
        k,
        holds: lhs >= rhs,
        equality: lhs == rhs,
        lhs,
        rhs,
    }
}

/// The inequality on a prefix graph.
pub fn prop52_check(g: &ResolutionGraph) -> Result<Prop52> {
    require_prefix(g)?;
    root_one(g)?;
    Ok(prop52_evaluate(g, &path_counts_unchecked(g)))
}

fn root_one(g: &ResolutionGraph) -> Result<()> {
    if g.root() != 1 {
        return Err(Error::InvalidGraph(vec!["expected a graph on vertices 1..=N".into()]));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// The constraint `λ_dropped ≥ 0` left inactive.
    pub dropped: usize,
    /// `t_2, …, t_N`.
    #[serde(serialize_with = "ser::rationals")]
    pub point: Vec<BigRational>,
    #[serde(serialize_with = "ser::rational")]
    pub objective: BigRational,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinguished {
    /// `a_N = (Σ_{i>k} p_i + 1) / Σ_{i≥2} p_i²`.
    #[serde(serialize_with = "ser::rational")]
    pub a_n: BigRational,
    /// `a_i = p_i a_N` for `i = 2..N`.
    #[serde(serialize_with = "ser::rationals")]
    pub point: Vec<BigRational>,
    #[serde(serialize_with = "ser::rational")]
    pub objective: BigRational,
    /// Whether it coincides with an enumerated vertex.
    pub is_vertex: bool,
    pub attains_min: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexReport {
    pub k: usize,
    /// `k = N`: the objective is the whole hyperplane sum and equals 1.
    pub trivial: bool,
    #[serde(serialize_with = "ser::rational")]
    pub min: BigRational,
    #[serde(serialize_with = "ser::rationals")]
    pub argmin: Vec<BigRational>,
    pub vertices: Vec<Vertex>,
    /// Dropped constraints whose system was singular.
    pub degenerate: Vec<usize>,
    /// Minimum over the vertices on the face `t_N = 0`.
    #[serde(serialize_with = "ser::opt_rational")]
    pub face_min: Option<BigRational>,
    pub distinguished: Option<Distinguished>,
}

/// Exact minimum of `t_2 + … + t_k` over the simplex, on a prefix graph.
pub fn simplex_min(g: &ResolutionGraph) -> Result<SimplexReport> {
    require_prefix(g)?;
    root_one(g)?;
    if g.top() < 2 {
        return Err(Error::InvalidGraph(vec!["the simplex needs N >= 2".into()]));
    }
    Ok(simplex_unchecked(g, &path_counts_unchecked(g)))
}

pub(crate) fn simplex_unchecked(g: &ResolutionGraph, pc: &PathCounts) -> SimplexReport {
    let n = g.top();
    let k = g.prefix_len();
    let dim = n - 1;
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let p: Vec<BigRational> = (2..=n).map(|i| q(pc.p(i))).collect();
    let budget = q(&((k + 1..=n).map(|i| pc.p(i).clone()).sum::<BigInt>() + 1));
    if k == n {
        return SimplexReport {
            k,
            trivial: true,
            min: BigRational::one(),
            argmin: Vec::new(),
            vertices: Vec::new(),
            degenerate: Vec::new(),
            face_min: None,
            distinguished: None,
        };
    }
    // row for λ_i: +1 at t_i, −1 at every t_j with j → i (j ≥ 2 automatically)
    let lambda_row = |i: usize| -> Vec<BigRational> {
        let mut row = vec![BigRational::zero(); dim];
        row[i - 2] = BigRational::one();
        for j in g.in_arrows(i) {
            row[j - 2] -= BigRational::one();
        }
        row
    };
    let lambda = |i: usize, t: &[BigRational]| -> BigRational {
        lambda_row(i).iter().zip(t).map(|(a, b)| a * b).sum()
    };
    let objective = |t: &[BigRational]| -> BigRational { t[..k - 1].iter().sum() };

    let mut vertices = Vec::new();
    let mut degenerate = Vec::new();
    for dropped in 2..=n {
        let mut rows: Vec<Vec<BigRational>> = (2..=n).filter(|&i| i != dropped).map(lambda_row).collect();
        rows.push(p.clone());
        let mut rhs = vec![BigRational::zero(); dim - 1];
        rhs.push(budget.clone());
        let m = Matrix::from_rows(&Rationals, rows).expect("square system");
        match m.solve(&rhs) {
            None => degenerate.push(dropped),
            Some(t) => {
                let feasible = !lambda(dropped, &t).is_negative();
                vertices.push(Vertex {
                    dropped,
                    objective: objective(&t),
                    point: t,
                    feasible,
                });
            }
        }
    }
    let best = vertices
        .iter()
        .filter(|v| v.feasible)
        .min_by(|a, b| a.objective.cmp(&b.objective))
        .expect("the simplex is non-empty");
    let (min, argmin) = (best.objective.clone(), best.point.clone());
    let face_min = vertices
        .iter()
        .filter(|v| v.feasible && v.point[dim - 1].is_zero())
        .map(|v| v.objective.clone())
        .min();

    let squares: BigRational = p.iter().map(|x| x * x).sum();
    let a_n = &budget / squares;
    let point: Vec<BigRational> = p.iter().map(|x| x * &a_n).collect();
    let d_obj = objective(&point);
    let distinguished = Distinguished {
        is_vertex: vertices.iter().any(|v| v.feasible && v.point == point),
        attains_min: d_obj == min,
        a_n,
        point,
        objective: d_obj,
    };
    SimplexReport {
        k,
        trivial: false,
        min,
        argmin,
        vertices,
        degenerate,
        face_min,
        distinguished: Some(distinguished),
    }
}

/// Per-`N` summary of a scan over every graph of a class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub graphs: usize,
    pub violations: usize,
    pub equalities: usize,
    /// Arrows of the first violating graph.
    pub first_violation: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub class: GraphClass,
    pub rows: Vec<ScanRow>,
    pub graphs: usize,
    pub violations: usize,
}

fn scan(max_n: usize, class: GraphClass, min_n: usize, mut check: impl FnMut(&ResolutionGraph, &PathCounts) -> (bool, bool)) -> Result<ScanReport> {
    let mut rows = Vec::new();
    for n in min_n..=max_n {
        let mut row = ScanRow { n, ..ScanRow::default() };
        for g in enumerate_graphs(n, class)? {
            let pc = path_counts_unchecked(&g);
            let (ok, tight) = check(&g, &pc);
            row.graphs += 1;
            row.equalities += tight as usize;
            if !ok {
                row.violations += 1;
                row.first_violation.get_or_insert_with(|| g.arrows().collect());
            }
        }
        rows.push(row);
    }
    Ok(ScanReport {
        class,
        graphs: rows.iter().map(|r| r.graphs).sum(),
        violations: rows.iter().map(|r| r.violations).sum(),
        rows,
    })
}

/// Checks the path count inequality on every graph of `class` with
/// `1 ≤ N ≤ max_n`; `k` is the prefix length even outside the prefix class.
pub fn prop52_scan(max_n: usize, class: GraphClass) -> Result<ScanReport> {
    scan(max_n, class, 1, |g, pc| {
        let r = prop52_evaluate(g, pc);
        (r.holds, r.equality)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexScan {
    pub scan: ScanReport,
    /// Graphs with `k = N`, where there is nothing to minimise.
    pub trivial: usize,
    /// Non-trivial graphs where `a_i = p_i a_N` is not the vertex off the
    /// face `t_N = 0`.
    pub distinguished_not_vertex: usize,
    /// Non-trivial graphs where that vertex is not optimal, so the minimum
    /// lies on the face `t_N = 0`.
    pub optimum_on_face: usize,
    pub first_on_face: Option<Vec<(usize, usize)>>,
    pub degenerate_systems: usize,
}

/// Minimises on every graph of `class` with `2 ≤ N ≤ max_n`; a violation is
/// a minimum below 1, a "tight" graph one with minimum exactly 1.
pub fn simplex_scan(max_n: usize, class: GraphClass) -> Result<SimplexScan> {
    let mut not_vertex = 0;
    let mut on_face = 0;
    let mut first_on_face = None;
    let mut degenerate = 0;
    let mut trivial = 0;
    let scan = scan(max_n, class, 2, |g, pc| {
        let r = simplex_unchecked(g, pc);
        degenerate += r.degenerate.len();
        trivial += r.trivial as usize;
        if let Some(d) = &r.distinguished {
            let off_face = r.vertices.iter().find(|v| v.dropped == g.top());
            if off_face.map(|v| &v.point) != Some(&d.point) {
                not_vertex += 1;
            }
            if !d.attains_min {
                on_face += 1;
                first_on_face.get_or_insert_with(|| g.arrows().collect::<Vec<_>>());
            }
        }
        (r.min >= BigRational::one(), r.min.is_one())
    })?;
    Ok(SimplexScan {
        scan,
        trivial,
        distinguished_not_vertex: not_vertex,
        optimum_on_face: on_face,
        first_on_face,
        degenerate_systems: degenerate,
    })
}
