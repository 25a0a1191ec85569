//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Runs without the libtest harness so the lines are always visible.

mod common;

use std::time::{Duration, Instant};

use cirigid::bounds::*;
use cirigid::fibration::{superrigidity_criterion, FibrationSpec};
use cirigid::linear::{pencil_min_rank, LinearSubspace, Matrix, PrimeField, QuadraticForm};
use cirigid::poly::localize_at_point;
use cirigid::regularity::{check_r1, check_r2, check_r22, check_regularity, subspace_from_equations, Mode, RegularityOptions, Verdict};
use cirigid::singgraph::*;
use cirigid::zerodim::{dimension_by_point_count, projective_dimension, Budget};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Rank of a square matrix over `F_p` by plain elimination.
fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let n = a.len();
    let inv = |x: u64| {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for r in rank + 1..n {
            let f = a[r][c] * s % p;
            if f != 0 {
                for j in c..n {
                    a[r][j] = (a[r][j] + p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Minimum rank over the pencil by visiting every point of the projective line.
fn enumerated_pencil_rank(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> usize {
    let n = a.len();
    let mut best = rank_mod_p(a.to_vec(), p);
    for t in 0..p {
        let m = (0..n).map(|i| (0..n).map(|j| (t * a[i][j] + b[i][j]) % p).collect()).collect();
        best = best.min(rank_mod_p(m, p));
        if best == 0 {
            break;
        }
    }
    best
}

fn random_matrix(f: &PrimeField, rng: &mut ChaCha8Rng, n: usize) -> Matrix<PrimeField> {
    let c: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..f.modulus())).collect();
    Matrix::from_fn(f, n, n, |i, j| c[i * n + j])
}

fn random_form(f: &PrimeField, rng: &mut ChaCha8Rng, n: usize, degenerate: bool) -> QuadraticForm<PrimeField> {
    if !degenerate {
        let c: Vec<u64> = (0..n * n).map(|_| rng.gen_range(0..f.modulus())).collect();
        return QuadraticForm::from_upper(f, n, |i, j| c[i * n + j]).unwrap();
    }
    // B^T D B with a sparse small diagonal, so pencils drop rank at rational points
    let d: Vec<u64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    let b = random_matrix(f, rng, n);
    let dm = Matrix::from_fn(f, n, n, |i, j| if i == j { d[i] } else { 0 });
    QuadraticForm::new(b.transpose().mul(&dm).unwrap().mul(&b).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut cases = 0;
    let mut drops = 0;
    for (prime, seed) in [(101u64, 1u64), (32003, 2)] {
        let f = PrimeField::new(prime).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for case in 0..150 {
            let n = rng.gen_range(1..=8);
            let degenerate = case % 2 == 1;
            // the degenerate pairs share one basis change so they are simultaneously diagonal
            let (q1, q2) = if degenerate {
                let b = random_matrix(&f, &mut rng, n);
                let mut diag = || {
                    let d: Vec<u64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                    let dm = Matrix::from_fn(&f, n, n, |i, j| if i == j { d[i] } else { 0 });
                    QuadraticForm::new(b.transpose().mul(&dm).unwrap().mul(&b).unwrap()).unwrap()
                };
                (diag(), diag())
            } else {
                (random_form(&f, &mut rng, n, false), random_form(&f, &mut rng, n, false))
            };
            let fast = pencil_min_rank(&q1, &q2).unwrap();
            let slow = enumerated_pencil_rank(&q1.gram().to_rows(), &q2.gram().to_rows(), prime);
            if fast != slow {
                mismatches.push(format!("p={prime} case {case}: {fast} vs {slow}"));
            }
            drops += (slow < n) as usize;
            cases += 1;
        }
    }
    let t = within(start, Duration::from_secs(30), "300 pairs")?;
    ensure(mismatches.is_empty(), || format!("{} mismatches: {:?}", mismatches.len(), mismatches))?;
    Ok(format!("{cases} pairs over F_101 and F_32003, {drops} with a rank drop, 0 mismatches, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hist = [0usize; 3];
    for case in 0..500 {
        let n = rng.gen_range(2..=10);
        let q = random_form(&f, &mut rng, n, case % 3 == 0);
        let mut eq = vec![0u64; n];
        while eq.iter().all(|&v| v == 0) {
            eq = (0..n).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..101) }).collect();
        }
        let h = LinearSubspace::from_equations(&Matrix::from_rows(&f, vec![eq]).unwrap());
        let r = q.restrict(&h).unwrap().rank();
        let drop = q.rank().checked_sub(r).ok_or_else(|| format!("case {case}: rank grew"))?;
        ensure(drop <= 2, || format!("case {case}: drop {drop}"))?;
        hist[drop] += 1;
    }
    Ok(format!("500 hyperplane sections, drops 0/1/2 = {}/{}/{}", hist[0], hist[1], hist[2]))
}

fn criterion_3() -> Outcome {
    let b = |v: i64| BigInt::from(v);
    for m in 27..=60i64 {
        // factored forms of the same polynomials
        ensure(theorem02_bound(m, 4).value == b((m - 8) * (m - 9) / 2 - 4), || format!("theorem bound at M = {m}"))?;
        ensure(theorem02_bound(m, 3).value == b((m - 9) * (m - 10) / 2 - 4), || format!("d1 = 3 bound at M = {m}"))?;
        let c = condition_codims(m);
        ensure(c.nonsingular == b((m - 2) * (m - 7) / 2), || format!("nonsingular at M = {m}"))?;
        ensure(c.biquadratic_rank == b((m - 9) * (m - 10) / 2 + 2 * m + 3), || format!("rank condition at M = {m}"))?;
        ensure(c.biquadratic_irreducible == b((m - 6) * (m - 9) / 2 + 6), || format!("irreducibility at M = {m}"))?;
        ensure(c.biquadratic_irreducible_d1_3 == b((m - 8) * (m - 9) / 2 + 5), || format!("d1 = 3 irreducibility at M = {m}"))?;
        ensure(c.biquadratic_sequence == b((m - 1) * (m - 4) / 2 + 6), || format!("sequence condition at M = {m}"))?;
        let n = m + 2;
        for k in 1..=n {
            let d = n - k;
            ensure(theorem21_bound(n, k).unwrap() == b((d - 1) * (d - 4) / 2 + 2), || format!("N = {n}, k = {k}"))?;
        }
        for r in 0..=n {
            let d = n - r;
            ensure(rank_stratum_codim(n as u64, r as u64).unwrap() == binomial(d + 1, 2), || format!("stratum N = {n}, r = {r}"))?;
            ensure(binomial(d + 1, 2) == b(d * (d + 1) / 2), || format!("binomial {d}"))?;
        }
    }
    ensure(theorem02_bound(27, 4).value == b(167), || "M = 27 spot value".into())?;
    ensure(theorem02_bound(27, 3).value == b(149), || "M = 27, d1 = 3 spot value".into())?;
    ensure(theorem21_bound(20, 4).unwrap() == b(92), || "N = 20, k = 4 spot value".into())?;
    Ok("M = 27..60 exact; spot values 167, 149, 92".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for d2 in 27..=60i64 {
        for d1 in 2..=d2 {
            let m = d1 + d2 - 2;
            if m > 60 {
                break;
            }
            let r = projection_minimum(d1, d2).map_err(|e| e.to_string())?;
            ensure(r.min == BigInt::from((m - 2) * (m - 3) / 2), || format!("({d1}, {d2}): min {}", r.min))?;
            count += 1;
        }
    }
    let t = within(start, Duration::from_secs(5), "projection grid")?;
    Ok(format!("{count} degree pairs, 0 exceptions, {t:.2?}"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut count = 0u64;
    for m in 1..=10 {
        for d1 in 2..=30 {
            for d2 in d1..=30 {
                for l1 in 0..=20 {
                    for l2 in 0..=20 {
                        let s = FibrationSpec::new(m, d1, d2, l1, l2).unwrap();
                        let r = superrigidity_criterion(&s).unwrap();
                        // cleared denominators, independent of the report's own comparison
                        let main = l1 * (d1 - 1) * d2 + l2 * (d2 - 1) * d1 >= (m + 1) * d1 * d2;
                        let number = d1 * d2 * (m + 1 - l1 - l2) + l1 * d2 + l2 * d1;
                        ensure(r.intersection.number == BigInt::from(number), || format!("{s:?}: number"))?;
                        ensure((number <= 0) == main && r.main_inequality == main, || format!("{s:?}: discrepancy"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    let t = within(start, Duration::from_secs(60), "fibration grid")?;
    Ok(format!("{count} cases, 0 discrepancies, {t:.2?}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let prefix = prop52_scan(10, GraphClass::Prefix).map_err(|e| e.to_string())?;
    ensure(prefix.violations == 0, || format!("{} violations in the prefix class", prefix.violations))?;
    for n in 2..=10 {
        let r = prop52_check(&ResolutionGraph::chain(1, n, GraphClass::Prefix)).unwrap();
        ensure(r.equality, || format!("chain N = {n} not tight"))?;
    }
    let weak = prop52_scan(10, GraphClass::Weak).map_err(|e| e.to_string())?;
    let between = prop52_scan(10, GraphClass::BetweenClosed).map_err(|e| e.to_string())?;
    let flag = if weak.violations > 0 { " (weak-class counterexample found)" } else { "" };
    Ok(format!(
        "prefix {} graphs 0 violations; weak {} graphs {} violations{flag}; between-closed {} graphs {} violations; {:.2?}",
        prefix.graphs,
        weak.graphs,
        weak.violations,
        between.graphs,
        between.violations,
        start.elapsed()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let s = simplex_scan(8, GraphClass::Prefix).map_err(|e| e.to_string())?;
    ensure(s.scan.violations == 0, || format!("{} graphs with minimum below 1", s.scan.violations))?;
    for n in 2..=8 {
        let r = simplex_min(&ResolutionGraph::chain(1, n, GraphClass::Prefix)).unwrap();
        ensure(r.min.is_one(), || format!("chain N = {n}: {}", r.min))?;
    }
    ensure(s.distinguished_not_vertex == 0, || format!("{} graphs where a_i = p_i a_N is not the off-face vertex", s.distinguished_not_vertex))?;
    let g = ResolutionGraph::new(1, 4, [(2, 1), (3, 2), (4, 3), (4, 2)], GraphClass::Prefix).unwrap();
    let d = simplex_min(&g).unwrap().distinguished.unwrap();
    ensure(d.a_n == BigRational::new(1.into(), 2.into()) && d.point[0].is_one(), || "N = 4 example".into())?;
    let nontrivial = s.scan.graphs - s.trivial;
    Ok(format!(
        "{} graphs, min >= 1 everywhere, {} at exactly 1; relation gives the off-face vertex on all graphs, optimal there on {} and on the face t_N = 0 on {}; {:.2?}",
        s.scan.graphs,
        s.scan.rows.iter().map(|r| r.equalities).sum::<usize>(),
        nontrivial - s.optimum_on_face,
        s.optimum_on_face,
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let budget = Budget::default();
    let monomial = common::square_free_monomial_ideals();
    for i in &monomial {
        let g = projective_dimension(i, &budget).map_err(|e| e.to_string())?.proj_dim;
        let c = dimension_by_point_count(i, 2, 3, &budget).map_err(|e| e.to_string())?.proj_dim;
        ensure(g == c, || format!("monomial ideal {:?}", i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()))?;
    }
    let binomial = common::random_binomial_ideals(100, 2024);
    for i in &binomial {
        let g = projective_dimension(i, &budget).map_err(|e| e.to_string())?.proj_dim;
        let c = dimension_by_point_count(i, 7, 3, &budget).map_err(|e| e.to_string())?.proj_dim;
        ensure(g == c, || format!("binomial ideal {:?}", i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()))?;
    }
    Ok(format!("{} square-free monomial and {} binomial ideals, 0 disagreements", monomial.len(), binomial.len()))
}

fn criterion_9() -> Outcome {
    let f = common::f101();
    let opts = RegularityOptions::default();
    let refute = |samples, seed| Mode::Refute { samples, seed };

    let ctx = common::set_rank_12_context(&f);
    let a = check_r22(&ctx, &refute(3, 0), &opts).map_err(|e| e.to_string())?;
    let b = check_r22(&ctx, &refute(3, 0), &opts).map_err(|e| e.to_string())?;
    ensure(a.verdict == Verdict::Fail && a.witness.is_some() && a.witness == b.witness, || "set rank 12 context".into())?;

    let ctx = common::pencil_rank_8_context(&f);
    let a = check_r2(&ctx, &refute(3, 0), &opts).map_err(|e| e.to_string())?;
    let b = check_r2(&ctx, &refute(3, 0), &opts).map_err(|e| e.to_string())?;
    ensure(a.verdict == Verdict::Fail && a.witness.is_some() && a.witness == b.witness, || "pencil rank 8 context".into())?;

    let (ctx, l) = common::degenerate_r1_context(&f);
    let a = check_r1(&ctx, &Mode::Single(l), &opts).map_err(|e| e.to_string())?;
    ensure(a.verdict == Verdict::Fail, || "degenerate subspace context".into())?;
    let w = a.witness.unwrap();
    let replayed = subspace_from_equations(&f, ctx.z_dim(), w.subspace.as_ref().unwrap()).map_err(|e| e.to_string())?;
    let again = check_r1(&ctx, &Mode::Single(replayed), &opts).map_err(|e| e.to_string())?;
    ensure(again.verdict == Verdict::Fail && again.witness.unwrap().found_dim == w.found_dim, || "replay".into())?;

    let start = Instant::now();
    let corpus = common::fermat_corpus(&f);
    for (k, (d1, d2, x)) in corpus.iter().enumerate() {
        let ctx = localize_at_point(&common::fermat_pair(&f, 11, *d1, *d2), x).map_err(|e| e.to_string())?;
        let r = check_regularity(&ctx, &refute(20, k as u64), &opts).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::PassSampled && r.samples == 20, || format!("Fermat ({d1}, {d2}) #{k}: {:?}", r.verdict))?;
    }
    Ok(format!(
        "3 violating contexts fail with replayable witnesses; {} Fermat pairs pass-sampled over 20 samples each, {:.2?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn criterion_10() -> Outcome {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let r = local_bounds(&q(1, 1), &q(2, 1), &q(1, 1), None).map_err(|e| e.to_string())?;
    ensure(r.theorem34_lower.is_one(), || format!("(2mu - nu)/3 = {}", r.theorem34_lower))?;
    let (nu, mu, n) = (q(3, 2), q(101, 100), q(1, 1));
    let first = local_bounds(&nu, &mu, &n, None).map_err(|e| e.to_string())?;
    ensure(first.nu_r_exceeds_4_3 && first.nu_r_lower == q(251, 150), || "4n/3 flag".into())?;
    let nu_r = first.nu_r_lower.clone();
    let full = local_bounds(&nu, &mu, &n, Some((&nu_r, &mu))).map_err(|e| e.to_string())?;
    let s = full.second.clone().unwrap();
    ensure(s.nu_z_exceeds_14_9 && s.nu_z_lower == q(161, 90), || format!("14n/9 flag, nu_Z >= {}", s.nu_z_lower))?;
    let c = q(7, 1);
    let scaled = local_bounds(&(&nu * &c), &(&mu * &c), &(&n * &c), Some((&(&nu_r * &c), &(&mu * &c)))).map_err(|e| e.to_string())?;
    let t = scaled.second.clone().unwrap();
    let flags = |b: &LocalBounds, s: &SecondStage| {
        (b.mu_exceeds_n, b.nu_within_3_2, b.nu_r_exceeds_4_3, s.nu_z_exceeds_14_9, s.nu_z_exceeds_3_2, s.mu_r_exceeds_n)
    };
    ensure(flags(&full, &s) == flags(&scaled, &t), || "flags changed under scaling".into())?;
    ensure(t.nu_z_lower == &s.nu_z_lower * &c, || "bound not homogeneous".into())?;
    Ok("bound 1 at (mu, nu) = (2, 1); nu_R >= 251/150 > 4n/3; nu_Z >= 161/90 > 14n/9; scaling by 7 keeps every flag".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("pencil rank oracle", criterion_1),
        ("rank drop at most 2", criterion_2),
        ("closed-form codimensions", criterion_3),
        ("projection minimum", criterion_4),
        ("fibration criterion", criterion_5),
        ("path count inequality", criterion_6),
        ("simplex minimum", criterion_7),
        ("dimension oracle", criterion_8),
        ("regularity refuter", criterion_9),
        ("local multiplicity chains", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
