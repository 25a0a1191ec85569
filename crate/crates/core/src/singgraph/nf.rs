//! Log Noether-Fano inequalities on a resolution graph.
//!
//! Plain form (root 1): `Σ p_i μ_i > n(Σ p_i + 1)`.
//! Weighted form (root 0, discrepancies present):
//! `p_0 μ_0 + Σ_{i≥1} p_i μ_i > (p_0 + Σ_{i≥1} p_i δ_i + 1) n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::Value;

use super::graph::{path_counts_unchecked, require_class, GraphClass, PathCounts, ResolutionGraph};
use crate::error::{Error, Result};
use crate::linear::field::parse_rational;
use crate::ser;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfInstance {
    pub graph: ResolutionGraph,
    /// `μ_root, …, μ_N`.
    pub mu: Vec<BigRational>,
    pub n: BigRational,
    /// `δ_1, …, δ_N`; selects the weighted form.
    pub delta: Option<Vec<i64>>,
    /// Number of leading blow-ups with centres of codimension ≥ 3. Inferred
    /// from `delta` when absent.
    pub l: Option<usize>,
}

fn rat(v: &Value, what: &str) -> Result<BigRational> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(x) => x.to_string(),
        _ => return Err(Error::InvalidArgument(format!("{what}: expected a number or a string"))),
    };
    parse_rational(&s).ok_or_else(|| Error::InvalidArgument(format!("{what}: '{s}' is not a rational")))
}

impl NfInstance {
    pub fn new(graph: ResolutionGraph, mu: Vec<BigRational>, n: BigRational) -> Self {
        NfInstance {
            graph,
            mu,
            n,
            delta: None,
            l: None,
        }
    }

    pub fn with_delta(mut self, delta: Vec<i64>, l: Option<usize>) -> Self {
        self.delta = Some(delta);
        self.l = l;
        self
    }

    /// `{"graph": {...}, "mu": ["19/10", ...], "n": 1, "delta": [2, 1], "L": 1}`;
    /// `delta` and `L` are optional.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), format!("instance document: {e}")))?;
        let graph = v
            .get("graph")
            .ok_or_else(|| Error::InvalidArgument("instance: missing 'graph'".into()))?;
        let graph = ResolutionGraph::from_json(&graph.to_string())?;
        let mu = v
            .get("mu")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidArgument("instance: 'mu' must be a list".into()))?
            .iter()
            .enumerate()
            .map(|(i, x)| rat(x, &format!("mu[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let n = rat(
            v.get("n").ok_or_else(|| Error::InvalidArgument("instance: missing 'n'".into()))?,
            "n",
        )?;
        let mut inst = NfInstance::new(graph, mu, n);
        if let Some(d) = v.get("delta").filter(|d| !d.is_null()) {
            let d = d
                .as_array()
                .ok_or_else(|| Error::InvalidArgument("instance: 'delta' must be a list".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::InvalidArgument("instance: delta entries must be integers".into())))
                .collect::<Result<Vec<_>>>()?;
            let l = match v.get("L") {
                None | Some(Value::Null) => None,
                Some(x) => Some(
                    x.as_u64()
                        .ok_or_else(|| Error::InvalidArgument("instance: 'L' must be a non-negative integer".into()))?
                        as usize,
                ),
            };
            inst = inst.with_delta(d, l);
        }
        Ok(inst)
    }

    pub fn is_weighted(&self) -> bool {
        self.delta.is_some()
    }

    /// `μ_i` for a vertex `i` of the graph.
    pub fn mu_at(&self, i: usize) -> &BigRational {
        &self.mu[i - self.graph.root()]
    }

    /// Index `L`: the given one, or the length of the leading run of `δ ≥ 2`.
    pub fn split(&self) -> Option<usize> {
        let d = self.delta.as_ref()?;
        Some(self.l.unwrap_or_else(|| d.iter().take_while(|&&x| x >= 2).count()))
    }

    /// Every violated instance condition; empty when the instance is usable.
    pub fn violations(&self) -> Vec<String> {
        let g = &self.graph;
        let mut out = super::graph::validate_as(g, GraphClass::Weak).violations;
        let count = g.top() - g.root() + 1;
        if self.mu.len() != count {
            out.push(format!("expected {count} multiplicities, got {}", self.mu.len()));
            return out;
        }
        if !self.n.is_positive() {
            out.push("n must be positive".into());
        }
        let weighted = self.is_weighted();
        if weighted && g.root() != 0 {
            out.push("the weighted form needs a graph rooted at vertex 0".into());
        }
        if !weighted && g.root() != 1 {
            out.push("a graph rooted at vertex 0 needs discrepancy data".into());
        }
        let first = g.root() + 1;
        let bound = &self.n * BigRational::from_integer(2.into());
        if *self.mu_at(g.root()) > bound {
            out.push(format!("mu_{} exceeds 2n", g.root()));
        }
        for i in g.vertices() {
            if self.mu_at(i).is_negative() {
                out.push(format!("mu_{i} is negative"));
            }
        }
        for i in first..=g.top() {
            let sum: BigRational = g.in_arrows(i).iter().map(|&j| self.mu_at(j).clone()).sum();
            if *self.mu_at(i) < sum {
                out.push(format!("mu_{i} is below the sum of mu_j over arrows j -> {i}"));
            }
        }
        if let Some(d) = &self.delta {
            if d.len() != g.top() {
                out.push(format!("expected {} discrepancies (vertices 1..={}), got {}", g.top(), g.top(), d.len()));
            } else {
                let l = self.split().unwrap_or(0);
                if l > g.top() {
                    out.push(format!("L = {l} exceeds N = {}", g.top()));
                }
                for (idx, &di) in d.iter().enumerate() {
                    let i = idx + 1;
                    if i <= l && di < 2 {
                        out.push(format!("delta_{i} = {di} but i <= L requires delta >= 2"));
                    }
                    if i > l && di != 1 {
                        out.push(format!("delta_{i} = {di} but i > L requires delta = 1"));
                    }
                }
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(v))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NfReport {
    pub weighted: bool,
    #[serde(serialize_with = "ser::bigints")]
    pub p: Vec<BigInt>,
    #[serde(serialize_with = "ser::rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub rhs: BigRational,
    pub holds: bool,
}

fn sides(inst: &NfInstance, pc: &PathCounts) -> (BigRational, BigRational) {
    let g = &inst.graph;
    let p = |i: usize| BigRational::from_integer(pc.p(i).clone());
    let lhs: BigRational = g.vertices().map(|i| p(i) * inst.mu_at(i)).sum();
    let weight: BigRational = match &inst.delta {
        None => g.vertices().map(p).sum(),
        Some(d) => p(0) + (1..=g.top()).map(|i| p(i) * BigRational::from_integer(d[i - 1].into())).sum::<BigRational>(),
    };
    (lhs, (weight + BigRational::one()) * &inst.n)
}

/// Evaluates the inequality exactly, the weighted form when `delta` is set.
pub fn nf_evaluate(inst: &NfInstance) -> Result<NfReport> {
    inst.check()?;
    let pc = path_counts_unchecked(&inst.graph);
    let (lhs, rhs) = sides(inst, &pc);
    Ok(NfReport {
        weighted: inst.is_weighted(),
        p: pc.from_top(),
        holds: lhs > rhs,
        lhs,
        rhs,
    })
}

pub fn nf_log_inequality(inst: &NfInstance) -> Result<bool> {
    nf_evaluate(inst).map(|r| r.holds)
}

/// One structural or numerical consequence tested by [`section54_chain_check`].
#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub name: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainOutcome {
    /// `μ_1 > n`: the centre already carries a multiplicity above `n`.
    MultiplicityAboveN,
    /// Not a log maximal singularity: the weighted inequality fails.
    NotMaximal,
    /// Every consequence holds.
    Consistent,
    /// At least one consequence fails; see the checks.
    Inconsistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub outcome: ChainOutcome,
    pub k: usize,
    pub l: usize,
    pub nf: NfReport,
    pub checks: Vec<ChainCheck>,
    #[serde(serialize_with = "ser::opt_rational")]
    pub reduced_lhs: Option<BigRational>,
    #[serde(serialize_with = "ser::opt_rational")]
    pub reduced_rhs: Option<BigRational>,
    /// Lower bound for the multiplicity of the restricted divisor at the centre.
    #[serde(serialize_with = "ser::opt_rational")]
    pub nu_e1_lower: Option<BigRational>,
    #[serde(serialize_with = "ser::opt_rational")]
    pub target: Option<BigRational>,
    pub exceeds_target: Option<bool>,
}

/// Tests the consequences of the weighted inequality on a graph rooted at
/// 0 with `k` the prefix into 0 and `L` the codimension split. Structural
/// failures are reported even when the inequality itself fails, since
/// `k ≤ L` and `μ_1 ≤ n` together rule the inequality out. With `L = 0`
/// there is nothing to check. The consequences are `k ≥ L+1`,
/// the chain shape of `L+1..=k`, the arrows landing in `0..=k` from above,
/// the path count equalities, and the reduced inequality, from which the
/// bound `ν_{E,1} > 3n − μ_0` is evaluated.
pub fn section54_chain_check(inst: &NfInstance) -> Result<ChainReport> {
    if !inst.is_weighted() {
        return Err(Error::InvalidInstance(vec!["discrepancy data is required".into()]));
    }
    let nf = nf_evaluate(inst)?;
    let g = &inst.graph;
    let l = inst.split().unwrap_or(0);
    let k = g.prefix_len();
    let n = &inst.n;
    let mut report = ChainReport {
        outcome: ChainOutcome::Consistent,
        k,
        l,
        nf,
        checks: Vec::new(),
        reduced_lhs: None,
        reduced_rhs: None,
        nu_e1_lower: None,
        target: None,
        exceeds_target: None,
    };
    if g.top() >= 1 && inst.mu_at(1) > n {
        report.outcome = ChainOutcome::MultiplicityAboveN;
        return Ok(report);
    }
    if l == 0 {
        // no codimension ≥ 3 centres beyond the first: nothing to restrict
        return Ok(report);
    }
    let pc = path_counts_unchecked(g);
    let mut push = |name, holds: bool, detail: Option<String>| report.checks.push(ChainCheck { name, holds, detail });

    let k_ok = k > l;
    push("k-exceeds-L", k_ok, (!k_ok).then(|| format!("k = {k}, L = {l}")));

    let mut bad = Vec::new();
    for a in l + 1..=k.min(g.top()) {
        for t in g.out_arrows(a) {
            if t != a - 1 && t != 0 {
                bad.push(format!("{a} -> {t}"));
            }
        }
    }
    push("chain-between-L-and-k", bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", ")));

    let mut bad = Vec::new();
    for (b, a) in g.arrows() {
        if b > k && a <= k && !(b == k + 1 && a == k) && (k == 0 || a != k - 1) {
            bad.push(format!("{b} -> {a}"));
        }
    }
    push("arrows-from-above-k", bad.is_empty(), (!bad.is_empty()).then(|| bad.join(", ")));

    if k_ok {
        let pl = pc.p(l);
        let eq = (l..k).all(|i| pc.p(i) == pl);
        push("equal-path-counts-L-to-k", eq, None);
        let incoming: BigInt = g.in_arrows(k - 1).iter().filter(|&&i| i != k).map(|&i| pc.p(i).clone()).sum();
        let rhs = pc.p(k) + incoming;
        let ok = *pc.p(k - 1) == rhs;
        push("path-count-at-k-minus-1", ok, (!ok).then(|| format!("{} vs {}", pc.p(k - 1), rhs)));
    }
    let ok = (1..=l).all(|i| *pc.p(i) == pc.p(l) * pc.get(l, i));
    push("paths-through-L", ok, None);

    let over: Vec<String> = (1..=g.top()).filter(|&i| inst.mu_at(i) > n).map(|i| format!("mu_{i}")).collect();
    push("multiplicities-at-most-n", over.is_empty(), (!over.is_empty()).then(|| over.join(", ")));

    if k_ok {
        let d = inst.delta.as_ref().expect("weighted");
        let mu0 = inst.mu_at(0);
        let weights: Vec<BigRational> = (1..=l).map(|i| BigRational::from_integer(pc.get(l, i).clone())).collect();
        let wsum: BigRational = weights.iter().sum();
        let lhs: BigRational = (1..=l).map(|i| &weights[i - 1] * inst.mu_at(i)).sum::<BigRational>()
            + (l + 1..=k).map(|i| inst.mu_at(i).clone()).sum::<BigRational>();
        let rhs: BigRational = (1..=l)
            .map(|i| {
                &weights[i - 1] * (BigRational::from_integer((d[i - 1] + 1).into()) * n - mu0)
            })
            .sum();
        let holds = lhs > rhs;
        report.checks.push(ChainCheck {
            name: "reduced-inequality",
            holds,
            detail: None,
        });
        let lower = &lhs / &wsum;
        let target = BigRational::from_integer(3.into()) * n - mu0;
        report.exceeds_target = Some(lower > target);
        report.nu_e1_lower = Some(lower);
        report.target = Some(target);
        report.reduced_lhs = Some(lhs);
        report.reduced_rhs = Some(rhs);
    }
    if report.checks.iter().any(|c| !c.holds && c.name != "reduced-inequality") {
        report.outcome = ChainOutcome::Inconsistent;
    } else if !report.nf.holds {
        report.outcome = ChainOutcome::NotMaximal;
    } else if report.checks.iter().any(|c| !c.holds) {
        report.outcome = ChainOutcome::Inconsistent;
    }
    Ok(report)
}

pub(crate) fn require_prefix(g: &ResolutionGraph) -> Result<()> {
    require_class(g, GraphClass::Prefix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn three() -> ResolutionGraph {
        ResolutionGraph::new(1, 3, [(2, 1), (3, 2), (3, 1)], GraphClass::Weak).unwrap()
    }

    #[test]
    fn plain_examples() {
        let inst = NfInstance::new(three(), vec![q(19, 10), q(9, 10), q(9, 10)], q(1, 1));
        let r = nf_evaluate(&inst).unwrap();
        assert_eq!(r.lhs, q(28, 5));
        assert_eq!(r.rhs, q(5, 1));
        assert!(r.holds);
        let flat = NfInstance::new(three(), vec![q(1, 1); 3], q(1, 1));
        assert!(!nf_log_inequality(&flat).unwrap());
        let scaled = NfInstance::new(three(), inst.mu.iter().map(|m| m * q(7, 1)).collect(), q(7, 1));
        assert!(nf_log_inequality(&scaled).unwrap());
    }

    #[test]
    fn invalid_instances_are_reported() {
        let inst = NfInstance::new(three(), vec![q(3, 1), q(1, 2), q(1, 1)], q(1, 1));
        let Err(Error::InvalidInstance(v)) = nf_evaluate(&inst) else { panic!() };
        assert!(v.iter().any(|s| s.contains("2n")));
        assert!(v.iter().any(|s| s.contains("mu_2")));
        let inst = NfInstance::new(three(), vec![q(1, 1); 2], q(1, 1));
        assert!(nf_evaluate(&inst).is_err());
    }

    fn rooted(n: usize, extra: &[(usize, usize)]) -> ResolutionGraph {
        let mut arrows: Vec<_> = (1..=n).map(|i| (i, i - 1)).collect();
        arrows.extend_from_slice(extra);
        ResolutionGraph::new(0, n, arrows, GraphClass::Weak).unwrap()
    }

    #[test]
    fn weighted_chain_checks() {
        // chain with δ = 1 everywhere and L = 0
        let inst = NfInstance::new(rooted(3, &[]), vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1)], q(1, 1)).with_delta(vec![1; 3], None);
        let r = section54_chain_check(&inst).unwrap();
        assert_eq!(r.outcome, ChainOutcome::Consistent);
        assert!(r.checks.is_empty());
        assert_eq!((r.k, r.l), (1, 0));

        // μ_1 > n short-circuits
        let inst = NfInstance::new(rooted(2, &[]), vec![q(2, 1), q(3, 2), q(1, 1)], q(1, 1)).with_delta(vec![1; 2], None);
        assert_eq!(section54_chain_check(&inst).unwrap().outcome, ChainOutcome::MultiplicityAboveN);

        // k ≤ L with μ_1 ≤ n: the inequality cannot hold and k ≤ L is flagged
        let inst = NfInstance::new(rooted(2, &[]), vec![q(2, 1), q(1, 1), q(1, 1)], q(1, 1)).with_delta(vec![2, 2], None);
        let r = section54_chain_check(&inst).unwrap();
        assert!(!r.nf.holds);
        assert_eq!(r.outcome, ChainOutcome::Inconsistent);
        assert!(r.checks.iter().any(|c| c.name == "k-exceeds-L" && !c.holds));

        // structurally fine but not maximal
        let inst = NfInstance::new(rooted(2, &[(2, 0)]), vec![q(2, 1), q(1, 1), q(1, 1)], q(1, 1)).with_delta(vec![2, 1], None);
        let r = section54_chain_check(&inst).unwrap();
        assert_eq!((r.nf.lhs.clone(), r.nf.rhs.clone()), (q(6, 1), q(6, 1)));
        assert_eq!(r.outcome, ChainOutcome::NotMaximal);
    }

    #[test]
    fn weighted_consistent_instance_bounds_the_restriction() {
        // 1 → 0, 2 → 1, 3 → 2, 2 → 0, 3 → 0: L = 1, k = 3
        let g = rooted(3, &[(2, 0), (3, 0)]);
        let inst = NfInstance::new(g, vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1)], q(1, 1)).with_delta(vec![2, 1, 1], None);
        let r = section54_chain_check(&inst).unwrap();
        assert!(r.nf.holds, "{:?}", r.nf);
        assert_eq!(r.outcome, ChainOutcome::Consistent, "{:?}", r.checks);
        assert_eq!((r.k, r.l), (3, 1));
        assert_eq!(r.nf.lhs, q(9, 1));
        assert_eq!(r.nf.rhs, q(8, 1));
        assert_eq!(r.nu_e1_lower, Some(q(3, 1)));
        assert_eq!(r.target, Some(q(1, 1)));
        assert_eq!(r.exceeds_target, Some(true));
    }

    #[test]
    fn from_json() {
        let inst = NfInstance::from_json(
            r#"{"graph": {"N": 3, "arrows": [[2,1],[3,2],[3,1]], "class": "weak"}, "mu": ["19/10", "9/10", 0.9], "n": 1}"#,
        );
        assert!(inst.is_err());
        let inst = NfInstance::from_json(
            r#"{"graph": {"N": 3, "arrows": [[2,1],[3,2],[3,1]], "class": "weak"}, "mu": ["19/10", "9/10", "9/10"], "n": 1}"#,
        )
        .unwrap();
        assert!(nf_log_inequality(&inst).unwrap());
    }
}
