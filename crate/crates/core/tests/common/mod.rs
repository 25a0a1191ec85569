#![allow(dead_code)]

use cirigid::linear::{Field, LinearSubspace, Matrix, PrimeField};
use cirigid::poly::{localize_at_point, parse_polynomial, PointContext, PolyPair, Polynomial};
use cirigid::poly::Monomial;
use cirigid::regularity::{classify_point, PointClass};
use cirigid::zerodim::IdealPresentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

pub fn poly(f: &PrimeField, s: &str, n: usize) -> Polynomial<PrimeField> {
    parse_polynomial(f, s, Some(n)).unwrap()
}

/// `Σ w_j x_j^d`, with weights `j + 1 + offset` when `weighted`.
fn power_sum(f: &PrimeField, x: &[u64], d: u32, weighted: Option<usize>) -> u64 {
    x.iter().enumerate().fold(0, |acc, (j, &v)| {
        let w = weighted.map_or(1, |o| (j + 1 + o) as u64);
        f.add(&acc, &f.mul(&w, &f.pow(&v, d as u64)))
    })
}

/// Fermat pair `f_i = Σ_j x_j^{d_i}` in `n` variables; for `d1 = d2` the
/// second one is `Σ_j (j+1)·x_j^{d}` so the two stay independent.
pub fn fermat_pair(f: &PrimeField, n: usize, d1: u32, d2: u32) -> PolyPair<PrimeField> {
    let sum = |d: u32, weighted: bool| {
        (0..n)
            .map(|j| if weighted { format!("{}*x{j}^{d}", j + 1) } else { format!("x{j}^{d}") })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    PolyPair::new(poly(f, &sum(d1, false), n), poly(f, &sum(d2, d1 == d2), n)).unwrap()
}

/// A nonsingular point of a Fermat pair: random leading coordinates, the
/// last two found by search.
pub fn fermat_point(f: &PrimeField, n: usize, d1: u32, d2: u32, seed: u64) -> Vec<u64> {
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = fermat_pair(f, n, d1, d2);
    loop {
        let mut x: Vec<u64> = (0..n - 2).map(|_| rng.gen_range(1..p)).collect();
        let w = (d1 == d2).then_some(0);
        let a = f.neg(&power_sum(f, &x, d1, None));
        let b = f.neg(&power_sum(f, &x, d2, w));
        let start = rng.gen_range(0..p * p);
        for k in 0..p * p {
            let t = (start + k) % (p * p);
            let (u, v) = (t / p, t % p);
            if power_sum(f, &[u, v], d1, None) == a && power_sum(f, &[u, v], d2, w.map(|_| n - 2)) == b {
                x.push(u);
                x.push(v);
                let ctx = localize_at_point(&pair, &x).unwrap();
                if matches!(classify_point(&ctx).unwrap(), PointClass::Nonsingular { .. }) {
                    return x;
                }
                x.truncate(n - 2);
                break;
            }
        }
    }
}

/// Ten Fermat pairs with `M = 8` (eleven variables) at nonsingular points.
pub fn fermat_corpus(f: &PrimeField) -> Vec<(u32, u32, Vec<u64>)> {
    let degrees = [(2, 8), (3, 7), (4, 6), (5, 5), (2, 8), (3, 7), (4, 6), (5, 5), (4, 6), (3, 7)];
    degrees
        .iter()
        .enumerate()
        .map(|(k, &(d1, d2))| (d1, d2, fermat_point(f, 11, d1, d2, 100 + k as u64)))
        .collect()
}

pub fn at_last_coordinate(pair: &PolyPair<PrimeField>) -> PointContext<PrimeField> {
    let n = pair.n_vars();
    let mut point = vec![0u64; n];
    point[n - 1] = 1;
    localize_at_point(pair, &point).unwrap()
}

/// Bi-quadratic point with `f_{1,2} = Σ z_j²`, `f_{2,2} = Σ a_j z_j²`, where one
/// value of `a` is repeated: the pencil has minimum rank 12 on 14 variables.
pub fn set_rank_12_context(f: &PrimeField) -> PointContext<PrimeField> {
    let n = 15;
    let a: Vec<u64> = std::iter::once(1).chain(1..=13).collect();
    let f1 = (0..14).map(|j| format!("x{j}^2")).collect::<Vec<_>>().join(" + ");
    let quad = (0..14)
        .map(|j| format!("{}*x{j}^2*x14^10", a[j]))
        .collect::<Vec<_>>()
        .join(" + ");
    let top = (0..14).map(|j| format!("x{j}^12")).collect::<Vec<_>>().join(" + ");
    let pair = PolyPair::new(poly(f, &f1, n), poly(f, &format!("{quad} + {top}"), n)).unwrap();
    at_last_coordinate(&pair)
}

/// Quadratic point (`f_{1,1} = z₀`, `f_{2,1} = 0`) whose pencil form is
/// `−Σ_{j=1}^{8} z_j²` on `{z₀ = 0}`, of rank 8, at `M = 8`.
pub fn pencil_rank_8_context(f: &PrimeField) -> PointContext<PrimeField> {
    let n = 11;
    let f1 = "x0*x10^2 + x1^3 + x9^3";
    let f2 = (1..=8).map(|j| format!("x{j}^2*x10^5")).collect::<Vec<_>>().join(" + ") + " + x9^7";
    let pair = PolyPair::new(poly(f, f1, n), poly(f, &f2, n)).unwrap();
    at_last_coordinate(&pair)
}

/// Nonsingular point at `M = 8` (`d = (4, 6)`) with `f_{1,1} = z₀`,
/// `f_{2,1} = z₁` and `f_{2,2} = f_{1,2} + z₂·z₇`, so both quadrics agree on
/// `L = {z₀ = z₁ = z₂ = z₃ = 0}`; returns the context and `L`.
pub fn degenerate_r1_context(f: &PrimeField) -> (PointContext<PrimeField>, LinearSubspace<PrimeField>) {
    let n = 11;
    let h = "x10";
    let q = format!("x4^2*{h}^2 + x5*x6*{h}^2 + x7^2*{h}^2 + x8*x9*{h}^2 + x2*x3*{h}^2");
    let f1 = format!("x0*{h}^3 + {q} + x4^3*{h} + x5^3*{h} + x6^3*{h} + x7*x8*x9*{h} + x4^4 + x9^4 + x3^4");
    let q2 = q.replace(&format!("{h}^2"), &format!("{h}^4"));
    let f2 = format!(
        "x1*{h}^5 + {q2} + x2*x7*{h}^4 + x8^3*{h}^3 + x4*x5*x9*{h}^3 + x6^4*{h}^2 + x5^5*{h} + x7^6 + x2^6"
    );
    let pair = PolyPair::new(poly(f, &f1, n), poly(f, &f2, n)).unwrap();
    let ctx = at_last_coordinate(&pair);
    let mut eq = Matrix::zeros(f, 4, 10);
    for r in 0..4 {
        eq.set(r, r, 1);
    }
    (ctx, LinearSubspace::from_equations(&eq))
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exps(e)
}

/// `x^a − c·x^b` with `|a| = |b|`.
fn random_binomial(rng: &mut ChaCha8Rng, f: &PrimeField, n: usize) -> Polynomial<PrimeField> {
    let degree = rng.gen_range(1..=3);
    let a = random_monomial(rng, n, degree);
    let b = random_monomial(rng, n, degree);
    let c = rng.gen_range(1..f.modulus());
    Polynomial::from_terms(f, n, vec![(a, 1), (b, f.neg(&c))])
}

pub fn random_binomial_ideals(count: usize, seed: u64) -> Vec<IdealPresentation<PrimeField>> {
    let f = PrimeField::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=3);
            let gens = (0..k).map(|_| random_binomial(&mut rng, &f, n)).collect();
            IdealPresentation::new(gens).unwrap()
        })
        .collect()
}

fn square_free(n: usize, mask: u32) -> Monomial {
    Monomial::from_exps((0..n).map(|v| (mask >> v) & 1).collect())
}

/// Every set of 1 to 3 distinct nonempty square-free monomials in `n ≤ 5` variables.
pub fn square_free_monomial_ideals() -> Vec<IdealPresentation<PrimeField>> {
    let f = PrimeField::new(2).unwrap();
    let mut out = Vec::new();
    for n in 1..=5usize {
        let masks: Vec<u32> = (1..(1u32 << n)).collect();
        for k in 1..=3 {
            for combo in itertools::Itertools::combinations(masks.iter(), k) {
                let gens = combo
                    .iter()
                    .map(|&&m| Polynomial::monomial(&f, square_free(n, m), 1))
                    .collect();
                out.push(IdealPresentation::new(gens).unwrap());
            }
        }
    }
    out
}

