use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use cirigid::bounds::{
    codim_table, condition_codims, hypertangent_ratio_check, induction_codims, local_bounds, mult_deg_threshold,
    theorem02_bound, theorem21_bound, PointCase,
};
use cirigid::fibration::{superrigidity_criterion, FibrationSpec, FibrationVerdict};
use cirigid::linear::field::format_rational;
use cirigid::linear::{pencil_min_rank, set_min_rank, set_min_rank_rational, Field, QuadraticForm, Rationals};
use cirigid::poly::{localize_at_point, quadratic_form_of, PolyPair};
use cirigid::regularity::{
    check_r1, check_r2, check_r22, check_regularity, classify_point, subspace_from_equations, Mode, RegularityOptions,
    RegularityReport,
};
use cirigid::singgraph::{
    nf_evaluate, path_counts, prop52_check, prop52_scan, section54_chain_check, simplex_min, validate_as, GraphClass,
    NfInstance, ResolutionGraph,
};
use cirigid::zerodim::{dimension_by_point_count, projective_dimension, Budget, IdealPresentation};
use cirigid::{Error, Result};

use crate::input::{self, file_prime, parse_matrix, parse_point, poly_file, prime_field, rational};
use crate::{batch, ClassArg, Cli, Command, Condition};

/// What a command hands back to be wrapped into a report.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    pub seed: Option<u64>,
    pub summary: String,
}

impl Outcome {
    fn new(inputs: Value, result: impl Serialize, summary: String) -> Self {
        Outcome {
            inputs,
            result: serde_json::to_value(result).expect("serializable"),
            warnings: Vec::new(),
            seed: None,
            summary,
        }
    }

    fn warn(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(w);
        self
    }
}

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Rank { .. } => "rank",
        Command::PencilRank { .. } => "pencil-rank",
        Command::ClassifyPoint { .. } => "classify-point",
        Command::CheckRegularity { .. } => "check-regularity",
        Command::CodimBounds { .. } => "codim-bounds",
        Command::FibrationCheck { .. } => "fibration-check",
        Command::NfGraph { .. } => "nf-graph",
        Command::Prop52Scan { .. } => "prop52-scan",
        Command::LpMin { .. } => "lp-min",
        Command::LocalBounds { .. } => "local-bounds",
        Command::Dim { .. } => "dim",
        Command::Batch { .. } => "batch",
    }
}

pub fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(r) = cli.budget {
        b.max_reductions = r;
    }
    b
}

fn field_name(prime: Option<u64>) -> String {
    prime.map_or_else(|| "Q".to_string(), |p| format!("F_{p}"))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(p) = cli.prime {
        prime_field(p)?;
    }
    match &cli.command {
        Command::Rank { file } => rank(cli, file),
        Command::PencilRank { file } => pencil_rank(cli, file),
        Command::ClassifyPoint { pair, point } => classify(cli, pair, point),
        Command::CheckRegularity { pair, point, samples, condition, subspace } => {
            regularity(cli, pair, point, *samples, *condition, subspace.as_deref())
        }
        Command::CodimBounds { m, d1, d2, n, k, j, l } => codim_bounds(*m, *d1, *d2, *n, *k, *j, *l),
        Command::FibrationCheck { m, d1, d2, l1, l2, grid, m_max, l_max, d_max } => {
            if *grid {
                fibration_grid(*m_max, *l_max, *d_max)
            } else {
                let need = |v: &Option<i64>, n: &str| v.ok_or_else(|| Error::InvalidArgument(format!("--{n} is required without --grid")));
                fibration(need(m, "m")?, need(d1, "d1")?, need(d2, "d2")?, need(l1, "l1")?, need(l2, "l2")?)
            }
        }
        Command::NfGraph { file } => nf_graph(file),
        Command::Prop52Scan { n, class } => scan(*n, *class),
        Command::LpMin { file } => lp_min(file),
        Command::LocalBounds { nu, mu, n, nu_r, mu_r } => local(nu, mu, n, nu_r.as_deref(), mu_r.as_deref()),
        Command::Dim { file, count } => dim(cli, file, *count),
        Command::Batch { manifest, out } => batch::run(cli, manifest, out),
    }
}

fn rank(cli: &Cli, file: &Path) -> Result<Outcome> {
    let src = input::read(file)?;
    let (rows, cols, rank) = match cli.prime {
        Some(p) => {
            let m = parse_matrix(&prime_field(p)?, &src)?;
            (m.rows(), m.cols(), m.rank())
        }
        None => {
            let m = parse_matrix(&Rationals, &src)?;
            (m.rows(), m.cols(), m.rank())
        }
    };
    let inputs = json!({ "file": file, "field": field_name(cli.prime) });
    Ok(Outcome::new(inputs, json!({ "rows": rows, "cols": cols, "rank": rank }), format!("{rows}x{cols}, rank {rank}")))
}

fn forms<F: Field>(field: &F, file: &cirigid::poly::PolyFile) -> Result<Vec<QuadraticForm<F>>> {
    file.polys_in(field)?
        .iter()
        .zip(&file.lines)
        .map(|(p, &line)| quadratic_form_of(p).map_err(|e| Error::parse(line, 1, e.to_string())))
        .collect()
}

fn pencil_rank(cli: &Cli, file: &Path) -> Result<Outcome> {
    let pf = poly_file(file)?;
    let prime = file_prime(&pf, cli.prime)?;
    let k = pf.polys.len();
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!("expected 1 to 4 forms, found {k}")));
    }
    let cap = cli.budget.unwrap_or(100_000_000);
    let (ranks, min, exact, method) = match prime {
        Some(p) => {
            let f = prime_field(p)?;
            let qs = forms(&f, &pf)?;
            let ranks: Vec<usize> = qs.iter().map(|q| q.rank()).collect();
            if k == 2 {
                (ranks, pencil_min_rank(&qs[0], &qs[1])?, true, "invariant factors")
            } else {
                (ranks, set_min_rank(&qs, cap)?, true, "enumeration")
            }
        }
        None => {
            let qs = forms(&Rationals, &pf)?;
            let ranks: Vec<usize> = qs.iter().map(|q| q.rank()).collect();
            if k == 2 {
                (ranks, pencil_min_rank(&qs[0], &qs[1])?, true, "invariant factors")
            } else {
                let r = set_min_rank_rational(&qs, cap)?;
                (ranks, r.value, r.exact, if r.exact { "exact" } else { "reduction modulo primes" })
            }
        }
    };
    let inputs = json!({ "file": file, "field": field_name(prime), "forms": k, "n_vars": pf.n_vars });
    let result = json!({ "form_ranks": ranks, "min_rank": min, "exact": exact, "method": method });
    let mut out = Outcome::new(inputs, result, format!("minimum rank {min} over {k} form(s)"));
    if !exact {
        out.warnings.push("value from reductions modulo primes: an upper bound that is exact unless every prime was unlucky".into());
    }
    Ok(out)
}

fn pair_of<F: Field>(field: &F, pf: &cirigid::poly::PolyFile) -> Result<PolyPair<F>> {
    let mut polys = pf.polys_in(field)?;
    if polys.len() != 2 {
        return Err(Error::InvalidArgument(format!("a pair file holds two polynomials, found {}", polys.len())));
    }
    let f2 = polys.pop().expect("two");
    let f1 = polys.pop().expect("two");
    PolyPair::new(f1, f2)
}

fn classify_in<F: Field>(field: &F, pf: &cirigid::poly::PolyFile, point: &str) -> Result<Value> {
    let pair = pair_of(field, pf)?;
    let x = parse_point(field, point)?;
    let ctx = localize_at_point(&pair, &x)?;
    Ok(serde_json::to_value(classify_point(&ctx)?.summary(field)).expect("serializable"))
}

fn classify(cli: &Cli, pair: &Path, point: &str) -> Result<Outcome> {
    let pf = poly_file(pair)?;
    let prime = file_prime(&pf, cli.prime)?;
    let result = match prime {
        Some(p) => classify_in(&prime_field(p)?, &pf, point)?,
        None => classify_in(&Rationals, &pf, point)?,
    };
    let class = result["class"].as_str().unwrap_or("?").to_string();
    let inputs = json!({ "pair": pair, "point": point, "field": field_name(prime) });
    Ok(Outcome::new(inputs, result, format!("{class} point")))
}

pub struct RegularityRequest<'a> {
    pub point: &'a str,
    pub samples: usize,
    pub seed: u64,
    pub condition: Condition,
    pub subspace: Option<&'a str>,
    pub budget: Budget,
}

fn regularity_in<F: Field>(field: &F, pf: &cirigid::poly::PolyFile, req: &RegularityRequest) -> Result<RegularityReport> {
    let pair = pair_of(field, pf)?;
    let x = parse_point(field, req.point)?;
    let ctx = localize_at_point(&pair, &x)?;
    let mode = match req.subspace {
        Some(s) => {
            let rows: Vec<Vec<String>> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidArgument(format!("--subspace must be a JSON list of rows of strings: {e}")))?;
            Mode::Single(subspace_from_equations(field, ctx.z_dim(), &rows)?)
        }
        None => Mode::Refute { samples: req.samples, seed: req.seed },
    };
    let opts = RegularityOptions { budget: req.budget, ..RegularityOptions::default() };
    match req.condition {
        Condition::Auto => check_regularity(&ctx, &mode, &opts),
        Condition::R1 => check_r1(&ctx, &mode, &opts),
        Condition::R2 => check_r2(&ctx, &mode, &opts),
        Condition::R22 => check_r22(&ctx, &mode, &opts),
    }
}

/// Shared with batch: runs the check on a pair file with an optional `--prime`.
pub fn regularity_report(prime_flag: Option<u64>, pair: &Path, req: &RegularityRequest) -> Result<(RegularityReport, Option<u64>)> {
    let pf = poly_file(pair)?;
    let prime = file_prime(&pf, prime_flag)?;
    let report = match prime {
        Some(p) => regularity_in(&prime_field(p)?, &pf, req)?,
        None => regularity_in(&Rationals, &pf, req)?,
    };
    Ok((report, prime))
}

fn regularity(cli: &Cli, pair: &Path, point: &str, samples: usize, condition: Condition, subspace: Option<&str>) -> Result<Outcome> {
    let req = RegularityRequest { point, samples, seed: cli.seed, condition, subspace, budget: budget(cli) };
    let (report, prime) = regularity_report(cli.prime, pair, &req)?;
    let inputs = json!({
        "pair": pair,
        "point": point,
        "field": field_name(prime),
        "condition": condition.to_possible_value().map(|v| v.get_name().to_string()),
        "samples": samples,
        "subspace": subspace,
    });
    let summary = format!("{} {}: {:?} after {} sample(s)", report.point_class, report.condition, report.verdict, report.samples);
    let mut warnings = report.budget_notes.clone();
    if report.seed.is_some() {
        warnings.push(format!("sampled verdict: {} random subspaces, seed {}", report.samples, cli.seed));
    }
    let seed = report.seed;
    let mut out = Outcome::new(inputs, &report, summary).warn(warnings);
    out.seed = seed;
    Ok(out)
}

fn codim_bounds(m: Option<i64>, d1: Option<i64>, d2: Option<i64>, n: Option<i64>, k: Option<i64>, j: Option<i64>, l: Option<i64>) -> Result<Outcome> {
    let mut result = serde_json::Map::new();
    let mut warnings = Vec::new();
    let big_m = match (m, d1, d2) {
        (_, Some(a), Some(b)) => {
            let big_m = m.unwrap_or(a + b - 2);
            let table = codim_table(big_m, a, b)?;
            warnings.extend(table.warnings.iter().cloned());
            result.insert("table".into(), serde_json::to_value(&table).expect("serializable"));
            result.insert("ratio".into(), serde_json::to_value(hypertangent_ratio_check(a, b)?).expect("serializable"));
            let mut thresholds = serde_json::Map::new();
            for case in [PointCase::Nonsingular, PointCase::Quadratic, PointCase::BiquadraticCodim2, PointCase::BiquadraticCodim3] {
                thresholds.insert(case.to_string(), json!(format_rational(&mult_deg_threshold(case, a, b)?)));
            }
            result.insert("mult_deg_thresholds".into(), Value::Object(thresholds));
            Some(big_m)
        }
        (Some(big_m), None, None) => {
            let general = theorem02_bound(big_m, 4);
            let d1_3 = theorem02_bound(big_m, 3);
            if general.out_of_regime {
                warnings.push(format!("M = {big_m} is below {}", cirigid::bounds::REGIME_MIN_M));
            }
            result.insert("theorem_bound".into(), json!({ "d1_not_3": general.value.to_string(), "d1_3": d1_3.value.to_string() }));
            result.insert("conditions".into(), serde_json::to_value(condition_codims(big_m)).expect("serializable"));
            Some(big_m)
        }
        (None, None, None) => None,
        _ => return Err(Error::InvalidArgument("give --M, or both --d1 and --d2".into())),
    };
    match (n, k) {
        (Some(n), Some(k)) => {
            result.insert("multiquadratic_bound".into(), json!(theorem21_bound(n, k)?.to_string()));
            match (j, l) {
                (Some(j), Some(l)) => {
                    result.insert("induction".into(), serde_json::to_value(induction_codims(n, k, j, l)?).expect("serializable"));
                }
                (None, None) => {}
                _ => return Err(Error::InvalidArgument("--j and --l go together".into())),
            }
        }
        (None, None) if j.is_none() && l.is_none() => {}
        _ => return Err(Error::InvalidArgument("--N and --k go together (and are needed for --j, --l)".into())),
    }
    if big_m.is_none() && result.is_empty() {
        return Err(Error::InvalidArgument("nothing to compute: give --M, --d1/--d2 or --N/--k".into()));
    }
    let inputs = json!({ "M": big_m, "d1": d1, "d2": d2, "N": n, "k": k, "j": j, "l": l });
    let summary = match big_m {
        Some(v) => format!("bounds for M = {v}"),
        None => "multi-quadratic bound".into(),
    };
    Ok(Outcome::new(inputs, Value::Object(result), summary).warn(warnings))
}

fn fibration(m: i64, d1: i64, d2: i64, l1: i64, l2: i64) -> Result<Outcome> {
    let spec = FibrationSpec::new(m, d1, d2, l1, l2)?;
    let r = superrigidity_criterion(&spec)?;
    let summary = format!("{:?}, intersection number {}", r.verdict, r.intersection.number);
    let warnings = r.warnings.clone();
    Ok(Outcome::new(json!(spec), &r, summary).warn(warnings))
}

fn fibration_grid(m_max: i64, l_max: i64, d_max: i64) -> Result<Outcome> {
    if m_max < 1 || l_max < 0 || d_max < 2 {
        return Err(Error::InvalidArgument("grid needs m_max >= 1, l_max >= 0, d_max >= 2".into()));
    }
    let mut cases = 0u64;
    let mut discrepancies = Vec::new();
    let mut verdicts = [0u64; 4];
    for m in 1..=m_max {
        for d1 in 2..=d_max {
            for d2 in d1..=d_max {
                for l1 in 0..=l_max {
                    for l2 in 0..=l_max {
                        let spec = FibrationSpec::new(m, d1, d2, l1, l2)?;
                        let r = superrigidity_criterion(&spec)?;
                        cases += 1;
                        verdicts[match r.verdict {
                            FibrationVerdict::Superrigid => 0,
                            FibrationVerdict::ConditionIiiOnly => 1,
                            FibrationVerdict::KConditionOnly => 2,
                            FibrationVerdict::NonRigid => 3,
                        }] += 1;
                        if !r.equivalence_holds && discrepancies.len() < 20 {
                            discrepancies.push(spec);
                        }
                    }
                }
            }
        }
    }
    let inputs = json!({ "m_max": m_max, "l_max": l_max, "d_max": d_max });
    let result = json!({
        "cases": cases,
        "discrepancies": discrepancies.len(),
        "first_discrepancies": discrepancies,
        "verdicts": {
            "superrigid": verdicts[0],
            "condition-iii-only": verdicts[1],
            "k-condition-only": verdicts[2],
            "non-rigid": verdicts[3],
        },
    });
    let summary = format!("{cases} cases, {} discrepancies", discrepancies.len());
    Ok(Outcome::new(inputs, result, summary))
}

fn graph_summary(g: &ResolutionGraph) -> Result<Value> {
    let validation: Vec<_> = GraphClass::ALL.iter().map(|&c| validate_as(g, c)).collect();
    let mut out = json!({ "graph": g.to_json(), "validation": validation });
    if validation[0].valid && g.root() == 1 {
        out["path_counts"] = serde_json::to_value(path_counts(g)?).expect("serializable");
        if validate_as(g, GraphClass::Prefix).valid {
            out["prop52"] = serde_json::to_value(prop52_check(&g.with_class(GraphClass::Prefix))?).expect("serializable");
        }
    }
    Ok(out)
}

fn nf_graph(file: &Path) -> Result<Outcome> {
    let src = input::read(file)?;
    let doc: Value = serde_json::from_str(&src).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let inputs = json!({ "file": file });
    if doc.get("graph").is_none() {
        let g = ResolutionGraph::from_json(&src)?;
        let summary = graph_summary(&g)?;
        let valid = validate_as(&g, g.class()).valid;
        return Ok(Outcome::new(inputs, summary, format!("graph on {} vertices, valid as {}: {valid}", g.top(), g.class())));
    }
    let inst = NfInstance::from_json(&src)?;
    let nf = nf_evaluate(&inst)?;
    let mut result = json!({ "inequality": nf, "graph": graph_summary(&inst.graph)? });
    let mut summary = format!("{} inequality {}", if nf.weighted { "weighted" } else { "plain" }, if nf.holds { "holds" } else { "fails" });
    if inst.is_weighted() {
        let chain = section54_chain_check(&inst)?;
        summary.push_str(&format!(", chain check {:?}", chain.outcome));
        result["chain"] = serde_json::to_value(chain).expect("serializable");
    }
    Ok(Outcome::new(inputs, result, summary))
}

fn scan(n: usize, class: ClassArg) -> Result<Outcome> {
    let classes: Vec<GraphClass> = match class {
        ClassArg::Prefix => vec![GraphClass::Prefix],
        ClassArg::Weak => vec![GraphClass::Weak],
        ClassArg::BetweenClosed => vec![GraphClass::BetweenClosed],
        ClassArg::All => GraphClass::ALL.to_vec(),
    };
    let reports = classes.iter().map(|&c| prop52_scan(n, c)).collect::<Result<Vec<_>>>()?;
    let summary = reports
        .iter()
        .map(|r| format!("{}: {} graphs, {} violations", r.class, r.graphs, r.violations))
        .collect::<Vec<_>>()
        .join("; ");
    let warnings = reports
        .iter()
        .filter(|r| r.class != GraphClass::Prefix && r.violations > 0)
        .map(|r| format!("counterexample outside the prefix class ({})", r.class))
        .collect::<Vec<_>>();
    let result = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
    Ok(Outcome::new(json!({ "N": n, "class": class.to_possible_value().map(|v| v.get_name().to_string()) }), result, summary).warn(warnings))
}

fn lp_min(file: &Path) -> Result<Outcome> {
    let g = ResolutionGraph::from_json(&input::read(file)?)?;
    let r = simplex_min(&g)?;
    let summary = format!("minimum {} (k = {})", format_rational(&r.min), r.k);
    Ok(Outcome::new(json!({ "file": file, "graph": g.to_json() }), r, summary))
}

fn local(nu: &str, mu: &str, n: &str, nu_r: Option<&str>, mu_r: Option<&str>) -> Result<Outcome> {
    let (nu_q, mu_q, n_q) = (rational("nu", nu)?, rational("mu", mu)?, rational("n", n)?);
    let second = match (nu_r, mu_r) {
        (Some(a), Some(b)) => Some((rational("nu-r", a)?, rational("mu-r", b)?)),
        (None, None) => None,
        _ => return Err(Error::InvalidArgument("--nu-r and --mu-r go together".into())),
    };
    let r = local_bounds(&nu_q, &mu_q, &n_q, second.as_ref().map(|(a, b)| (a, b)))?;
    let summary = format!("nu_R >= {}{}", format_rational(&r.nu_r_lower), r.second.as_ref().map_or(String::new(), |s| format!(", nu_Z >= {}", format_rational(&s.nu_z_lower))));
    Ok(Outcome::new(json!({ "nu": nu, "mu": mu, "n": n, "nu_r": nu_r, "mu_r": mu_r }), r, summary))
}

fn dim(cli: &Cli, file: &Path, count: Option<u32>) -> Result<Outcome> {
    let pf = poly_file(file)?;
    let prime = file_prime(&pf, cli.prime)?;
    let b = budget(cli);
    fn go<F: Field>(field: &F, pf: &cirigid::poly::PolyFile, b: &Budget, count: Option<(u64, u32)>) -> Result<Value> {
        let ideal = IdealPresentation::new(pf.polys_in(field)?)?;
        let d = projective_dimension(&ideal, b)?;
        let mut out = json!({ "groebner": d });
        if let Some((p, e)) = count {
            out["point_count"] = serde_json::to_value(dimension_by_point_count(&ideal, p, e, b)?).expect("serializable");
        }
        Ok(out)
    }
    let count = match (count, prime) {
        (Some(e), Some(p)) => Some((p, e)),
        (Some(_), None) => return Err(Error::InvalidArgument("--count needs a prime (--prime or a field header)".into())),
        (None, _) => None,
    };
    let result = match prime {
        Some(p) => go(&prime_field(p)?, &pf, &b, count)?,
        None => go(&Rationals, &pf, &b, count)?,
    };
    let mut warnings = Vec::new();
    if let Some(c) = result.get("point_count") {
        if c["proj_dim"] != result["groebner"]["proj_dim"] {
            warnings.push("point-count estimate disagrees with the Groebner dimension".into());
        }
    }
    let summary = format!("projective dimension {}", result["groebner"]["proj_dim"]);
    Ok(Outcome::new(json!({ "file": file, "field": field_name(prime), "count": count.map(|c| c.1) }), result, summary).warn(warnings))
}
