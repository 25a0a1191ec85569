//! Buchberger's algorithm for the degree-reverse-lexicographic order with
//! the Gebauer–Möller pair criteria and the normal selection strategy.

use std::collections::BTreeSet;

use super::{Budget, IdealPresentation};
use crate::error::{Error, Result};
use crate::linear::Field;
use crate::poly::{Monomial, Polynomial};

/// Reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    n_vars: usize,
    basis: Vec<Polynomial<F>>,
    reductions: u64,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
    /// Number of S-polynomial reductions performed.
    pub fn reductions(&self) -> u64 {
        self.reductions
    }
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero basis element").clone())
            .collect()
    }
    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce(f, &self.basis)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

/// Full reduction of `f` modulo monic `basis`.
pub(crate) fn reduce<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let field = f.field();
    let n = f.n_vars();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((lm, lc)) = p.terms().first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm)));
        match divisor {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&lm).unwrap();
                let c = field.div(&lc, g.leading_coeff().unwrap()).unwrap();
                p = p.sub(&g.mul_term(&q, &c));
            }
            None => {
                rest.push((lm, lc));
                p = Polynomial::from_sorted(field, n, p.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted(field, n, rest)
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, lcm: &Monomial) -> Polynomial<F> {
    let field = f.field();
    let one = field.one();
    let a = f.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    let b = g.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    // both inputs are monic
    f.mul_term(&a, &one).sub(&g.mul_term(&b, &one))
}

struct State<F: Field> {
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: BTreeSet<(Monomial, usize, usize)>,
}

impl<F: Field> State<F> {
    /// Adds a new monic element and updates the pair set.
    fn update(&mut self, h: Polynomial<F>) {
        let t = self.polys.len();
        let lt = h.leading_monomial().unwrap().clone();

        // old pairs made redundant by the new element
        let lms = &self.lms;
        self.pairs.retain(|(l, i, j)| {
            !(lt.divides(l) && lms[*i].lcm(&lt) != *l && lms[*j].lcm(&lt) != *l)
        });

        let candidates: Vec<(Monomial, usize, bool)> = (0..t)
            .filter(|&i| self.active[i])
            .map(|i| (self.lms[i].lcm(&lt), i, self.lms[i].is_coprime(&lt)))
            .collect();
        // drop pairs whose lcm is a proper multiple of another new lcm
        let minimal: Vec<&(Monomial, usize, bool)> = candidates
            .iter()
            .filter(|(l, _, _)| !candidates.iter().any(|(o, _, _)| o != l && o.divides(l)))
            .collect();
        // among equal lcms keep one, unless one of them is coprime
        let mut seen: Vec<&Monomial> = Vec::new();
        for (l, i, _) in &minimal {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            let any_coprime = minimal.iter().any(|(o, _, c)| o == l && *c);
            if !any_coprime {
                self.pairs.insert((l.clone(), *i, t));
            }
        }

        for i in 0..t {
            if self.active[i] && lt.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(lt);
        self.active.push(true);
    }
}

pub fn groebner_basis<F: Field>(ideal: &IdealPresentation<F>, budget: &Budget) -> Result<GroebnerBasis<F>> {
    let field = ideal.field().clone();
    let n = ideal.n_vars();
    let mut state = State {
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    let mut inputs: Vec<&Polynomial<F>> = ideal.gens().iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in inputs {
        let h = reduce(g, &state.polys);
        if !h.is_zero() {
            state.update(h.monic());
        }
    }

    let mut reductions = 0u64;
    while let Some((lcm, i, j)) = state.pairs.pop_first() {
        if lcm.degree() > budget.max_degree {
            return Err(Error::Budget(format!(
                "S-pair of degree {} exceeds the degree cap {}",
                lcm.degree(),
                budget.max_degree
            )));
        }
        reductions += 1;
        if reductions > budget.max_reductions {
            return Err(Error::Budget(format!(
                "more than {} S-polynomial reductions",
                budget.max_reductions
            )));
        }
        let s = s_polynomial(&state.polys[i], &state.polys[j], &lcm);
        let h = reduce(&s, &state.polys);
        if !h.is_zero() {
            state.update(h.monic());
        }
    }

    Ok(GroebnerBasis {
        field: field.clone(),
        n_vars: n,
        basis: interreduce(state.polys),
        reductions,
    })
}

fn interreduce<F: Field>(polys: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = polys.iter().enumerate().any(|(o, q)| {
            let qm = q.leading_monomial().unwrap();
            // strict divisibility, or equal leading monomial with a smaller index
            o != k && qm.divides(lm) && (qm != lm || o < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, q)| q.clone())
                .collect();
            let p = &minimal[k];
            let lead = Polynomial::from_sorted(p.field(), p.n_vars(), p.terms()[..1].to_vec());
            let tail = Polynomial::from_sorted(p.field(), p.n_vars(), p.terms()[1..].to_vec());
            lead.add(&reduce(&tail, &others)).monic()
        })
        .collect();
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}
