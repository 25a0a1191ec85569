use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::classify::{classify_point, PointClass};
use crate::error::{Error, Result};
use crate::linear::field::{parse_rational, to_prime_field};
use crate::linear::{pencil_min_rank, Field, LinearSubspace, Matrix, PrimeField};
use crate::poly::{build_sequence, PointContext, Polynomial};
use crate::zerodim::{
    affine_dimension, irreducibility_advisory, projective_dimension, Advisory, Budget, IdealPresentation,
};

/// How subspace-quantified clauses are decided.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode<F: Field> {
    /// Draw `samples` random subspaces from a seeded generator.
    Refute { samples: usize, seed: u64 },
    /// Decide the clauses for one subspace of the chart, exactly.
    Single(LinearSubspace<F>),
}

#[derive(Clone, Debug)]
pub struct RegularityOptions {
    pub budget: Budget,
    /// Coefficient bound for random subspaces over the rationals.
    pub rational_bound: i64,
    pub advisory_trials: usize,
    pub advisory_extensions: u32,
}

impl Default for RegularityOptions {
    fn default() -> Self {
        RegularityOptions {
            budget: Budget::default(),
            rational_bound: 10,
            advisory_trials: 3,
            advisory_extensions: 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PassSampled,
    Fail,
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseStatus {
    Pass,
    Fail,
    PassSampled,
    Vacuous,
    Advisory,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseOutcome {
    pub clause: String,
    pub status: ClauseStatus,
    pub detail: String,
}

/// Data needed to reproduce a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    /// Index of the sample that failed, in refute mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    /// Linear equations (rows, chart coordinates `z`) cutting out the subspace.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found_dim: Option<i64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub verdict: Verdict,
    pub condition: String,
    pub point_class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Subspaces examined for the sampled clauses.
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub clauses: Vec<ClauseOutcome>,
    pub budget_notes: Vec<String>,
    pub notes: Vec<String>,
}

impl RegularityReport {
    fn new<F: Field>(condition: &str, class: &PointClass<F>, mode: &Mode<F>) -> Self {
        RegularityReport {
            verdict: Verdict::PassSampled,
            condition: condition.to_string(),
            point_class: class.name(),
            witness: None,
            samples: 0,
            seed: match mode {
                Mode::Refute { seed, .. } => Some(*seed),
                Mode::Single(_) => None,
            },
            clauses: Vec::new(),
            budget_notes: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn clause(&mut self, clause: &str, status: ClauseStatus, detail: impl Into<String>) {
        self.clauses.push(ClauseOutcome {
            clause: clause.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn fail(&mut self, witness: Witness) {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness);
    }
}

/// Equations of a subspace formatted for a witness.
pub fn subspace_equations<F: Field>(l: &LinearSubspace<F>) -> Vec<Vec<String>> {
    let f = l.field();
    l.equations()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| f.format(x)).collect())
        .collect()
}

/// Inverse of [`subspace_equations`]: the subspace of `K^n` cut out by the rows.
pub fn subspace_from_equations<F: Field>(field: &F, n: usize, rows: &[Vec<String>]) -> Result<LinearSubspace<F>> {
    if rows.is_empty() {
        return Ok(LinearSubspace::whole(field, n));
    }
    let parsed = rows
        .iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "subspace equation has {} coefficients, expected {n}",
                    row.len()
                )));
            }
            row.iter()
                .map(|s| {
                    let r = parse_rational(s)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad coefficient {s:?}")))?;
                    field
                        .from_rational(&r)
                        .ok_or_else(|| Error::NotReducible(s.clone()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearSubspace::from_equations(&Matrix::from_rows(field, parsed)?))
}

/// A random subspace of `ambient` of relative codimension `codim`.
fn random_subspace<F: Field>(
    ambient: &LinearSubspace<F>,
    codim: usize,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> Result<LinearSubspace<F>> {
    let f = ambient.field();
    let a = ambient.dim();
    let k = a - codim;
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..a).map(|_| (0..k).map(|_| f.random(rng, bound)).collect()).collect();
        let b = Matrix::from_rows(f, rows)?;
        if b.rank() == k {
            return LinearSubspace::from_basis(ambient.basis().mul(&b)?);
        }
    }
}

/// Outcome of one clause on one subspace.
struct Check {
    ok: bool,
    expected: i64,
    found: i64,
    detail: String,
}

/// A clause quantified over subspaces of `ambient` of relative codimension `codim`.
struct SampledClause<'a, F: Field> {
    name: String,
    ambient: LinearSubspace<F>,
    codim: usize,
    check: Box<dyn Fn(&LinearSubspace<F>) -> Result<Check> + 'a>,
}

fn run_sampled<F: Field>(
    report: &mut RegularityReport,
    clauses: &[SampledClause<'_, F>],
    mode: &Mode<F>,
    opts: &RegularityOptions,
) -> Result<()> {
    if clauses.is_empty() {
        return Ok(());
    }
    let mut completed = vec![0usize; clauses.len()];
    match mode {
        Mode::Single(l) => {
            let mut matched = false;
            for (c, clause) in clauses.iter().enumerate() {
                if l.ambient_dim() != clause.ambient.ambient_dim()
                    || !l.is_subspace_of(&clause.ambient)
                    || clause.ambient.dim() - l.dim() != clause.codim
                {
                    report.clause(&clause.name, ClauseStatus::Skipped, "subspace has a different codimension or ambient");
                    continue;
                }
                matched = true;
                let check = (clause.check)(l)?;
                completed[c] += 1;
                if !check.ok {
                    report.clause(&clause.name, ClauseStatus::Fail, &check.detail);
                    report.fail(Witness {
                        clause: clause.name.clone(),
                        sample: None,
                        subspace: Some(subspace_equations(l)),
                        expected_dim: Some(check.expected),
                        found_dim: Some(check.found),
                        detail: check.detail,
                    });
                    return Ok(());
                }
                report.clause(&clause.name, ClauseStatus::Pass, format!("exact for the given subspace: {}", check.detail));
            }
            if !matched {
                return Err(Error::InvalidArgument(
                    "the subspace does not match any clause of this condition (wrong ambient or codimension)".into(),
                ));
            }
            report.samples = 1;
            report.notes.push("single mode: the verdict covers only the given subspace".into());
        }
        Mode::Refute { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for s in 0..*samples {
                for (c, clause) in clauses.iter().enumerate() {
                    let l = random_subspace(&clause.ambient, clause.codim, &mut rng, opts.rational_bound)?;
                    match (clause.check)(&l) {
                        Ok(check) => {
                            completed[c] += 1;
                            if !check.ok {
                                report.clause(&clause.name, ClauseStatus::Fail, &check.detail);
                                report.samples = s + 1;
                                report.fail(Witness {
                                    clause: clause.name.clone(),
                                    sample: Some(s),
                                    subspace: Some(subspace_equations(&l)),
                                    expected_dim: Some(check.expected),
                                    found_dim: Some(check.found),
                                    detail: check.detail,
                                });
                                return Ok(());
                            }
                        }
                        Err(e) if e.is_budget() => {
                            report.budget_notes.push(format!("{} sample {s}: {e}", clause.name));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            report.samples = *samples;
            for (c, clause) in clauses.iter().enumerate() {
                report.clause(
                    &clause.name,
                    ClauseStatus::PassSampled,
                    format!("{} of {samples} random subspaces passed", completed[c]),
                );
            }
            if completed.contains(&0) {
                return Err(Error::Budget(format!(
                    "no sample completed for some clause: {}",
                    report.budget_notes.join("; ")
                )));
            }
        }
    }
    Ok(())
}

/// Regularity of the truncated sequence restricted to `l`.
fn sequence_check<F: Field>(ctx: &PointContext<F>, truncate: usize, l: &LinearSubspace<F>, budget: &Budget) -> Result<Check> {
    let seq = build_sequence(ctx, truncate)?;
    let polys = seq.restrict_to(l)?;
    let expected = l.dim() as i64 - 1 - polys.len() as i64;
    let found = projective_dimension(&IdealPresentation::new(polys)?, budget)?.proj_dim;
    Ok(Check {
        ok: found == expected,
        expected,
        found,
        detail: format!(
            "zero set of S[-{truncate}] on P^{} has dimension {found}, regular value {expected}",
            l.dim() as i64 - 1
        ),
    })
}

/// Sequences shorter than two entries make the clause vacuous.
fn sequence_is_vacuous(m: usize, truncate: usize) -> bool {
    m < truncate + 2
}

fn wrong_class<F: Field>(expected: &'static str, class: &PointClass<F>) -> Error {
    Error::WrongPointClass {
        expected,
        found: class.name(),
    }
}

/// (R1) at a nonsingular point: `S[−5]|_ℒ` is regular for every codim-2 `ℒ ⊂ {f_{1,1} = f_{2,1} = 0}`.
pub fn check_r1<F: Field>(ctx: &PointContext<F>, mode: &Mode<F>, opts: &RegularityOptions) -> Result<RegularityReport> {
    let class = classify_point(ctx)?;
    if !matches!(class, PointClass::Nonsingular { .. }) {
        return Err(wrong_class("nonsingular", &class));
    }
    let mut report = RegularityReport::new("R1", &class, mode);
    let name = "S[-5]|L regular for codim-2 L";
    if sequence_is_vacuous(ctx.m(), 5) {
        report.clause(name, ClauseStatus::Vacuous, format!("S[-5] has {} entries", ctx.m().saturating_sub(5)));
        report.verdict = Verdict::Vacuous;
        return Ok(report);
    }
    let ambient = build_sequence(ctx, 5)?.ambient().clone();
    let budget = opts.budget;
    let clauses = vec![SampledClause {
        name: name.to_string(),
        ambient,
        codim: 2,
        check: Box::new(move |l: &LinearSubspace<F>| sequence_check(ctx, 5, l, &budget)),
    }];
    run_sampled(&mut report, &clauses, mode, opts)?;
    Ok(report)
}

/// (R2) at a quadratic point: the pencil form has rank at least 9 and
/// `S[−4]|_ℒ` is regular for every codim-1 `ℒ ⊂ {τ = 0}`.
pub fn check_r2<F: Field>(ctx: &PointContext<F>, mode: &Mode<F>, opts: &RegularityOptions) -> Result<RegularityReport> {
    let class = classify_point(ctx)?;
    let PointClass::Quadratic {
        pencil_form, hyperplane, ..
    } = &class
    else {
        return Err(wrong_class("quadratic", &class));
    };
    let mut report = RegularityReport::new("R2", &class, mode);
    let rank = pencil_form.rank();
    let rank_clause = "rank (a2 f12 - a1 f22)|{tau=0} >= 9";
    if rank < 9 {
        report.clause(rank_clause, ClauseStatus::Fail, format!("rank {rank}"));
        report.fail(Witness {
            clause: rank_clause.into(),
            sample: None,
            subspace: None,
            expected_dim: None,
            found_dim: None,
            detail: format!("pencil form has rank {rank} < 9"),
        });
        return Ok(report);
    }
    report.clause(rank_clause, ClauseStatus::Pass, format!("rank {rank}"));

    let name = "S[-4]|L regular for codim-1 L in {tau=0}";
    if sequence_is_vacuous(ctx.m(), 4) {
        report.clause(name, ClauseStatus::Vacuous, format!("S[-4] has {} entries", ctx.m().saturating_sub(4)));
        report.notes.push("the sequence clause is vacuous at this M; only the rank clause was decided".into());
        return Ok(report);
    }
    let budget = opts.budget;
    let clauses = vec![SampledClause {
        name: name.to_string(),
        ambient: hyperplane.clone(),
        codim: 1,
        check: Box::new(move |l: &LinearSubspace<F>| sequence_check(ctx, 4, l, &budget)),
    }];
    run_sampled(&mut report, &clauses, mode, opts)?;
    Ok(report)
}

/// Entries of the (R2².2) system: `(i, j)` for `f_{i,j}`, `(i, 0)` for the whole `f_i`.
pub fn r22_system(d1: u32) -> (Vec<(usize, u32)>, usize) {
    match d1 {
        2 => (vec![(1, 2), (2, 2), (2, 3), (2, 0)], 4),
        3 => (vec![(1, 2), (1, 3), (2, 2), (2, 3), (2, 0)], 5),
        _ => (vec![(1, 2), (2, 2), (1, 0), (2, 0)], 4),
    }
}

fn r22_system_label(d1: u32) -> String {
    let (entries, codim) = r22_system(d1);
    let names: Vec<String> = entries
        .iter()
        .map(|&(i, j)| if j == 0 { format!("f{i}") } else { format!("f{i}{j}") })
        .collect();
    format!("{{{}}}|L complete intersection of codim {codim}", names.join(", "))
}

/// The system's forms on `ℙ(ℒ)`: top-degree parts in place of `f_i`.
fn r22_at_infinity<F: Field>(ctx: &PointContext<F>, l: &LinearSubspace<F>) -> Result<Vec<Polynomial<F>>> {
    let pair = ctx.pair();
    let (entries, _) = r22_system(pair.d1());
    entries
        .iter()
        .map(|&(i, j)| {
            let j = if j == 0 { pair.d(i) } else { j };
            ctx.component(i, j).restrict(l)
        })
        .collect()
}

/// The system homogenized with an extra last variable `w`, on `ℙ^{dim ℒ}`.
fn r22_homogenized<F: Field>(ctx: &PointContext<F>, l: &LinearSubspace<F>) -> Result<Vec<Polynomial<F>>> {
    let pair = ctx.pair();
    let (entries, _) = r22_system(pair.d1());
    let n = l.dim() + 1;
    entries
        .iter()
        .map(|&(i, j)| {
            if j == 0 {
                ctx.dehomogenized(i).restrict(l)?.homogenize(pair.d(i))
            } else {
                Ok(ctx.component(i, j).restrict(l)?.extend_vars(n))
            }
        })
        .collect()
}

/// Codimension part of (R2².2) on one subspace. The forms on `ℙ(ℒ)` are
/// tried first (sufficient); if they fail, the affine locus is decided
/// through the saturation of the homogenized system.
fn r22_system_check<F: Field>(ctx: &PointContext<F>, l: &LinearSubspace<F>, budget: &Budget) -> Result<Check> {
    let (_, codim) = r22_system(ctx.pair().d1());
    let codim = codim as i64;
    let inf = r22_at_infinity(ctx, l)?;
    let expected_inf = l.dim() as i64 - 1 - codim;
    let found_inf = projective_dimension(&IdealPresentation::new(inf)?, budget)?.proj_dim;
    if found_inf == expected_inf {
        return Ok(Check {
            ok: true,
            expected: expected_inf,
            found: found_inf,
            detail: format!("forms at infinity cut out dimension {found_inf} in P^{}", l.dim() - 1),
        });
    }
    let expected = l.dim() as i64 - codim;
    let found = affine_dimension(&IdealPresentation::new(r22_homogenized(ctx, l)?)?, budget)?;
    Ok(Check {
        ok: found == expected,
        expected,
        found,
        detail: format!(
            "forms at infinity give dimension {found_inf} (wanted {expected_inf}); affine locus in L has dimension {found}, complete intersection value {expected}"
        ),
    })
}

/// Irreducibility advisory for the (R2².2) system on `ℙ(ℒ)`.
fn r22_advisory<F: Field>(ctx: &PointContext<F>, l: &LinearSubspace<F>, opts: &RegularityOptions, seed: u64) -> Result<Option<Advisory>> {
    let f = ctx.field();
    let p = f.characteristic();
    if p == 0 {
        return Ok(None);
    }
    let target = PrimeField::new(p)?;
    let polys = r22_at_infinity(ctx, l)?
        .iter()
        .map(|g| g.map_field(&target, |c| to_prime_field(f, &target, c)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotReducible("coefficient".into()))?;
    let ideal = IdealPresentation::new(polys)?;
    Ok(Some(irreducibility_advisory(
        &ideal,
        opts.advisory_trials,
        opts.advisory_extensions,
        seed,
        &opts.budget,
    )))
}

/// (R2²) at a bi-quadratic point: the exact rank clause, then the
/// `d₁`-dependent complete-intersection and sequence clauses.
pub fn check_r22<F: Field>(ctx: &PointContext<F>, mode: &Mode<F>, opts: &RegularityOptions) -> Result<RegularityReport> {
    let class = classify_point(ctx)?;
    let PointClass::BiQuadratic { f12, f22 } = &class else {
        return Err(wrong_class("bi-quadratic", &class));
    };
    let mut report = RegularityReport::new("R2^2", &class, mode);
    let d1 = ctx.pair().d1();

    // clause 1, exact
    let set_rank = pencil_min_rank(f12, f22)?;
    let max_rank = f12.rank().max(f22.rank());
    let c1 = "R2^2.1: rk(f12, f22) >= 13 and max rank >= 18";
    let detail = format!("set rank {set_rank}, ranks {} and {}", f12.rank(), f22.rank());
    if set_rank < 13 || max_rank < 18 {
        report.clause(c1, ClauseStatus::Fail, &detail);
        let which = if set_rank < 13 {
            format!("set rank {set_rank} < 13")
        } else {
            format!("both forms have rank below 18 (max {max_rank})")
        };
        report.fail(Witness {
            clause: c1.into(),
            sample: None,
            subspace: None,
            expected_dim: None,
            found_dim: None,
            detail: which,
        });
        return Ok(report);
    }
    report.clause(c1, ClauseStatus::Pass, detail);

    let whole = LinearSubspace::whole(ctx.field(), ctx.z_dim());
    let budget = opts.budget;
    let mut clauses: Vec<SampledClause<'_, F>> = vec![SampledClause {
        name: format!("R2^2.2: {}", r22_system_label(d1)),
        ambient: whole.clone(),
        codim: 2,
        check: Box::new(move |l: &LinearSubspace<F>| r22_system_check(ctx, l, &budget)),
    }];
    let m = ctx.m();
    for c in [2usize, 3] {
        let truncate = if d1 >= 4 { c + 1 } else { c };
        let name = format!("R2^2.3: S[-{truncate}]|L regular for codim-{c} L");
        if sequence_is_vacuous(m, truncate) {
            report.clause(&name, ClauseStatus::Vacuous, format!("S[-{truncate}] has {} entries", m.saturating_sub(truncate)));
            continue;
        }
        clauses.push(SampledClause {
            name,
            ambient: whole.clone(),
            codim: c,
            check: Box::new(move |l: &LinearSubspace<F>| sequence_check(ctx, truncate, l, &budget)),
        });
    }
    run_sampled(&mut report, &clauses, mode, opts)?;
    if report.verdict == Verdict::Fail {
        return Ok(report);
    }

    // irreducibility and reducedness are advisory only
    let (l, seed) = match mode {
        Mode::Single(l) if l.dim() + 2 == ctx.z_dim() => (Some(l.clone()), 0),
        Mode::Single(_) => (None, 0),
        Mode::Refute { seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            (Some(random_subspace(&whole, 2, &mut rng, opts.rational_bound)?), *seed)
        }
    };
    if let Some(l) = l {
        let name = "R2^2.2: irreducible and reduced (advisory)";
        match r22_advisory(ctx, &l, opts, seed)? {
            Some(a) => {
                let text = serde_json::to_string(&a).unwrap_or_default();
                report.clause(name, ClauseStatus::Advisory, text);
            }
            None => report.clause(name, ClauseStatus::Skipped, "the advisory needs a prime field"),
        }
        report
            .notes
            .push("irreducibility and reducedness in R2^2.2 are checked by a probabilistic advisory only".into());
    }
    Ok(report)
}

/// Dispatches on the point class.
pub fn check_regularity<F: Field>(ctx: &PointContext<F>, mode: &Mode<F>, opts: &RegularityOptions) -> Result<RegularityReport> {
    match classify_point(ctx)? {
        PointClass::Nonsingular { .. } => check_r1(ctx, mode, opts),
        PointClass::Quadratic { .. } => check_r2(ctx, mode, opts),
        PointClass::BiQuadratic { .. } => check_r22(ctx, mode, opts),
    }
}

/// Rank clauses only: the good-singularity or `(r₁, r₂)` predicate as a report.
pub fn check_singularity_type<F: Field>(ctx: &PointContext<F>, r1: usize, r2: usize) -> Result<RegularityReport> {
    let class = classify_point(ctx)?;
    let t = super::classify::singularity_type(&class, r1, r2)?;
    let condition = if (r1, r2) == (5, 7) {
        "good-sing".to_string()
    } else {
        format!("type({r1},{r2})")
    };
    let mut report = RegularityReport::new(&condition, &class, &Mode::Refute { samples: 0, seed: 0 });
    report.seed = None;
    let detail = match t.rank {
        Some(r) => format!("rank {r}"),
        None => "nonsingular point".to_string(),
    };
    report.clause(&condition, if t.holds { ClauseStatus::Pass } else { ClauseStatus::Fail }, &detail);
    report
        .notes
        .push(format!("codim(Sing) >= min(r1 - 1, r2 - 3) = {}", t.codim_sing_bound));
    if !t.holds {
        report.fail(Witness {
            clause: condition,
            sample: None,
            subspace: None,
            expected_dim: None,
            found_dim: None,
            detail,
        });
    }
    Ok(report)
}
