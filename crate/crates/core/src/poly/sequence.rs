use super::point::PointContext;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::linear::{Field, LinearSubspace, Matrix};

/// Positions `(i, j)`, `j ≥ 2`, ordered by `j` first and then by `i`.
pub fn sequence_order(d1: u32, d2: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for j in 2..=d1.max(d2) {
        if j <= d1 {
            out.push((1, j));
        }
        if j <= d2 {
            out.push((2, j));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceEntry<F: Field> {
    pub i: usize,
    pub j: u32,
    /// `f_{i,j}` in the chart variables.
    pub component: Polynomial<F>,
    /// `f_{i,j}` restricted to the ambient subspace, in its coordinates.
    pub restricted: Polynomial<F>,
}

/// The (truncated) hypertangent sequence at a point, restricted to the
/// subspace `{f_{1,1} = f_{2,1} = 0}` of the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct HypertangentSequence<F: Field> {
    entries: Vec<SequenceEntry<F>>,
    ambient: LinearSubspace<F>,
}

/// The common zero set of the linear parts, as a subspace of the chart.
pub fn tangent_subspace<F: Field>(ctx: &PointContext<F>) -> LinearSubspace<F> {
    let eq = Matrix::from_rows(ctx.field(), vec![ctx.linear_part(1), ctx.linear_part(2)]).expect("equal lengths");
    LinearSubspace::from_equations(&eq)
}

/// The sequence with its last `truncate_k` entries removed.
pub fn build_sequence<F: Field>(ctx: &PointContext<F>, truncate_k: usize) -> Result<HypertangentSequence<F>> {
    let m = ctx.m();
    if truncate_k >= m {
        return Err(Error::InvalidArgument(format!(
            "cannot drop {truncate_k} entries from a sequence of length {m}"
        )));
    }
    let ambient = tangent_subspace(ctx);
    let pair = ctx.pair();
    let order = sequence_order(pair.d1(), pair.d2());
    let entries = order[..m - truncate_k]
        .iter()
        .map(|&(i, j)| {
            let component = ctx.component(i, j).clone();
            let restricted = component.restrict(&ambient)?;
            Ok(SequenceEntry {
                i,
                j,
                component,
                restricted,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HypertangentSequence { entries, ambient })
}

impl<F: Field> HypertangentSequence<F> {
    pub fn entries(&self) -> &[SequenceEntry<F>] {
        &self.entries
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn ambient(&self) -> &LinearSubspace<F> {
        &self.ambient
    }
    pub fn positions(&self) -> Vec<(usize, u32)> {
        self.entries.iter().map(|e| (e.i, e.j)).collect()
    }

    /// The entries restricted to a subspace `l` of the chart, given in chart
    /// coordinates; `l` need not lie inside the ambient subspace.
    pub fn restrict_to(&self, l: &LinearSubspace<F>) -> Result<Vec<Polynomial<F>>> {
        self.entries.iter().map(|e| e.component.restrict(l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::PrimeField;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::point::{localize_at_point, PolyPair};

    #[test]
    fn order_examples() {
        assert_eq!(sequence_order(2, 3), vec![(1, 2), (2, 2), (2, 3)]);
        assert_eq!(sequence_order(3, 4), vec![(1, 2), (2, 2), (1, 3), (2, 3), (2, 4)]);
        for d1 in 2..8 {
            for d2 in d1..12 {
                assert_eq!(sequence_order(d1, d2).len() as u32, d1 + d2 - 2);
            }
        }
    }

    #[test]
    fn truncation_and_ambient() {
        let f = PrimeField::new(101).unwrap();
        let p = |s: &str| parse_polynomial(&f, s, Some(6)).unwrap();
        // point (0:0:0:0:0:1), f1 = x0*x5^2 + x1^2*x5 + x2^3, f2 = x1*x5^3 + x3^2*x5^2 + x4^4
        let pair = PolyPair::new(p("x0*x5^2 + x1^2*x5 + x2^3"), p("x1*x5^3 + x3^2*x5^2 + x4^4")).unwrap();
        let ctx = localize_at_point(&pair, &[0, 0, 0, 0, 0, 1]).unwrap();
        let full = build_sequence(&ctx, 0).unwrap();
        assert_eq!(full.len(), 5);
        assert_eq!(full.positions(), vec![(1, 2), (2, 2), (1, 3), (2, 3), (2, 4)]);
        assert_eq!(full.ambient().dim(), 3);
        let cut = build_sequence(&ctx, 2).unwrap();
        assert_eq!(cut.positions(), vec![(1, 2), (2, 2), (1, 3)]);
        assert!(build_sequence(&ctx, 5).is_err());
        // f_{1,2} = z1^2 restricted to {z0 = z1 = 0} vanishes
        assert!(full.entries()[0].restricted.is_zero());
        assert_eq!(full.entries()[1].restricted.total_degree(), Some(2));
    }
}
