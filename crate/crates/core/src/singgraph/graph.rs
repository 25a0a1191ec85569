use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which structural rules a resolution graph is required to satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    /// `i → i−1` for every non-root `i`, and at most two arrows out of each vertex.
    Weak,
    /// Weak, and the vertices with an arrow into the root are exactly
    /// `root+1, …, k` for some `k`.
    #[default]
    Prefix,
    /// Weak, and `i → j` implies `i → l` for every `j < l < i`. With the
    /// two-arrow rule this leaves `i → i−2` as the only possible second arrow.
    BetweenClosed,
}

impl GraphClass {
    pub const ALL: [GraphClass; 3] = [GraphClass::Weak, GraphClass::Prefix, GraphClass::BetweenClosed];
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(GraphClass::Weak),
            "prefix" => Ok(GraphClass::Prefix),
            "between-closed" => Ok(GraphClass::BetweenClosed),
            other => Err(Error::InvalidArgument(format!(
                "unknown graph class '{other}' (expected weak, prefix or between-closed)"
            ))),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Weak => "weak",
            GraphClass::Prefix => "prefix",
            GraphClass::BetweenClosed => "between-closed",
        })
    }
}

/// Oriented graph of a resolution: vertices `root..=top` (root 1, or 0 when
/// the first exceptional divisor is numbered 0) and arrows `i → j`, `i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    root: usize,
    top: usize,
    arrows: BTreeSet<(usize, usize)>,
    class: GraphClass,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    #[serde(rename = "N")]
    top: usize,
    arrows: Vec<[usize; 2]>,
    #[serde(default)]
    class: GraphClass,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    root: usize,
}

fn one() -> usize {
    1
}
fn is_one(v: &usize) -> bool {
    *v == 1
}

impl ResolutionGraph {
    /// Checks only that arrows point downwards between existing vertices;
    /// class membership is checked by [`validate_graph`].
    pub fn new(root: usize, top: usize, arrows: impl IntoIterator<Item = (usize, usize)>, class: GraphClass) -> Result<Self> {
        if root > 1 {
            return Err(Error::InvalidGraph(vec![format!("root must be 0 or 1, got {root}")]));
        }
        if top < root {
            return Err(Error::InvalidGraph(vec![format!("top vertex {top} is below the root {root}")]));
        }
        let arrows: BTreeSet<_> = arrows.into_iter().collect();
        let bad: Vec<String> = arrows
            .iter()
            .filter(|&&(i, j)| i <= j || j < root || i > top)
            .map(|(i, j)| format!("arrow {i} -> {j} is not between vertices {root}..={top} pointing down"))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidGraph(bad));
        }
        Ok(ResolutionGraph { root, top, arrows, class })
    }

    /// The chain `root+1 → root, …, top → top−1`.
    pub fn chain(root: usize, top: usize, class: GraphClass) -> Self {
        Self::new(root, top, (root + 1..=top).map(|i| (i, i - 1)), class).expect("chain is well formed")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), format!("graph document: {e}")))?;
        Self::new(doc.root, doc.top, doc.arrows.iter().map(|a| (a[0], a[1])), doc.class)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphDoc {
            top: self.top,
            arrows: self.arrows.iter().map(|&(i, j)| [i, j]).collect(),
            class: self.class,
            root: self.root,
        })
        .expect("serializable")
    }

    pub fn root(&self) -> usize {
        self.root
    }
    /// The largest vertex, `N`.
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn class(&self) -> GraphClass {
        self.class
    }
    pub fn with_class(&self, class: GraphClass) -> Self {
        ResolutionGraph { class, ..self.clone() }
    }
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied()
    }
    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows.contains(&(i, j))
    }
    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        self.root..=self.top
    }

    /// Targets of the arrows out of `i`, largest first.
    pub fn out_arrows(&self, i: usize) -> Vec<usize> {
        self.arrows.range((i, 0)..=(i, usize::MAX)).rev().map(|&(_, j)| j).collect()
    }

    /// Sources of the arrows into `j`, in increasing order.
    pub fn in_arrows(&self, j: usize) -> Vec<usize> {
        self.arrows.iter().filter(|&&(_, t)| t == j).map(|&(s, _)| s).collect()
    }

    /// Largest `k` with `root+1 → root, …, k → root`; equals the root when
    /// there is no arrow into it.
    pub fn prefix_len(&self) -> usize {
        let mut k = self.root;
        while k < self.top && self.has_arrow(k + 1, self.root) {
            k += 1;
        }
        k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub class: GraphClass,
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks the rules of `class` (the weak rules are part of every class).
pub fn validate_as(g: &ResolutionGraph, class: GraphClass) -> Validation {
    let mut violations = Vec::new();
    for i in g.root + 1..=g.top {
        if !g.has_arrow(i, i - 1) {
            violations.push(format!("missing arrow {i} -> {}", i - 1));
        }
    }
    for i in g.vertices() {
        let out = g.out_arrows(i);
        if out.len() > 2 {
            violations.push(format!("vertex {i} emits {} arrows", out.len()));
        }
    }
    match class {
        GraphClass::Weak => {}
        GraphClass::Prefix => {
            let k = g.prefix_len();
            for s in g.in_arrows(g.root) {
                if s > k {
                    violations.push(format!(
                        "arrow {s} -> {} outside the prefix {}..={k}",
                        g.root,
                        g.root + 1
                    ));
                }
            }
        }
        GraphClass::BetweenClosed => {
            for (i, j) in g.arrows() {
                for l in j + 1..i {
                    if !g.has_arrow(i, l) {
                        violations.push(format!("arrow {i} -> {j} without {i} -> {l}"));
                    }
                }
            }
        }
    }
    Validation {
        class,
        valid: violations.is_empty(),
        violations,
    }
}

/// Checks the graph against its declared class.
pub fn validate_graph(g: &ResolutionGraph) -> Validation {
    validate_as(g, g.class)
}

pub(crate) fn require_class(g: &ResolutionGraph, class: GraphClass) -> Result<()> {
    let v = validate_as(g, class);
    if v.valid {
        Ok(())
    } else {
        Err(Error::InvalidGraph(v.violations))
    }
}

/// Number of paths `p_{ij}` between all pairs of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCounts {
    root: usize,
    top: usize,
    table: Vec<Vec<BigInt>>,
}

impl PathCounts {
    /// `p_{ij}`; 1 on the diagonal, 0 for `i < j`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.table[i - self.root][j - self.root]
    }

    /// `p_i = p_{N i}`.
    pub fn p(&self, i: usize) -> &BigInt {
        self.get(self.top, i)
    }

    /// `(p_root, …, p_N)`.
    pub fn from_top(&self) -> Vec<BigInt> {
        (self.root..=self.top).map(|i| self.p(i).clone()).collect()
    }
}

impl Serialize for PathCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let table: Vec<Vec<String>> = self.table.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        let mut st = s.serialize_struct("PathCounts", 3)?;
        st.serialize_field("root", &self.root)?;
        st.serialize_field("p", &self.from_top().iter().map(|v| v.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("table", &table)?;
        st.end()
    }
}

/// Path counts by dynamic programming from the bottom up. The graph must
/// satisfy the weak rules.
pub fn path_counts(g: &ResolutionGraph) -> Result<PathCounts> {
    require_class(g, GraphClass::Weak)?;
    Ok(path_counts_unchecked(g))
}

pub(crate) fn path_counts_unchecked(g: &ResolutionGraph) -> PathCounts {
    let size = g.top - g.root + 1;
    let mut table = vec![vec![BigInt::zero(); size]; size];
    for i in 0..size {
        table[i][i] = BigInt::one();
        let targets = g.out_arrows(i + g.root);
        for j in 0..i {
            let mut acc = BigInt::zero();
            for &l in &targets {
                acc += &table[l - g.root][j];
            }
            table[i][j] = acc;
        }
    }
    PathCounts {
        root: g.root,
        top: g.top,
        table,
    }
}

/// Largest `N` accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_N: usize = 12;

/// All graphs on vertices `1..=n` in `class`, each once, in a fixed order:
/// vertex `i ≥ 3` has either no second arrow or one to `1..=i−2`, and the
/// choices are counted like an odometer with vertex 3 changing fastest.
pub fn enumerate_graphs(n: usize, class: GraphClass) -> Result<GraphIter> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::InvalidArgument(format!("N must be in 1..={MAX_ENUMERATION_N}, got {n}")));
    }
    Ok(GraphIter {
        n,
        class,
        choice: vec![0; n + 1],
        done: false,
    })
}

pub struct GraphIter {
    n: usize,
    class: GraphClass,
    /// `choice[i]` for `i ≥ 3`: 0 for none, otherwise the second target.
    choice: Vec<usize>,
    done: bool,
}

impl GraphIter {
    fn current(&self) -> ResolutionGraph {
        let mut arrows: Vec<(usize, usize)> = (2..=self.n).map(|i| (i, i - 1)).collect();
        for i in 3..=self.n {
            if self.choice[i] != 0 {
                arrows.push((i, self.choice[i]));
            }
        }
        ResolutionGraph::new(1, self.n, arrows, self.class).expect("well formed")
    }

    fn advance(&mut self) {
        for i in 3..=self.n {
            if self.choice[i] < i - 2 {
                self.choice[i] += 1;
                return;
            }
            self.choice[i] = 0;
        }
        self.done = true;
    }

    fn admissible(&self) -> bool {
        match self.class {
            GraphClass::Weak => true,
            GraphClass::BetweenClosed => (3..=self.n).all(|i| self.choice[i] == 0 || self.choice[i] == i - 2),
            GraphClass::Prefix => {
                // arrows into 1 come from 2 (always) and the vertices choosing 1
                let mut k = 2;
                while k < self.n && self.choice[k + 1] == 1 {
                    k += 1;
                }
                (k + 1..=self.n).all(|i| self.choice[i] != 1)
            }
        }
    }
}

impl Iterator for GraphIter {
    type Item = ResolutionGraph;
    fn next(&mut self) -> Option<ResolutionGraph> {
        while !self.done {
            let ok = self.admissible();
            let g = ok.then(|| self.current());
            self.advance();
            if g.is_some() {
                return g;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, arrows: &[(usize, usize)], class: GraphClass) -> ResolutionGraph {
        ResolutionGraph::new(1, n, arrows.iter().copied(), class).unwrap()
    }

    #[test]
    fn validation_examples() {
        for class in GraphClass::ALL {
            assert!(validate_as(&ResolutionGraph::chain(1, 6, class), class).valid);
        }
        let g = graph(4, &[(2, 1), (3, 2), (4, 3), (4, 2)], GraphClass::Prefix);
        assert!(validate_as(&g, GraphClass::Weak).valid);
        assert!(validate_graph(&g).valid);
        assert_eq!(g.prefix_len(), 2);
        let g = graph(4, &[(2, 1), (3, 2), (4, 3), (4, 1)], GraphClass::BetweenClosed);
        let v = validate_graph(&g);
        assert!(!v.valid);
        assert!(v.violations.iter().any(|s| s.contains("4 -> 2")));
        assert!(!validate_as(&g, GraphClass::Prefix).valid);
        let g = graph(3, &[(2, 1), (3, 1)], GraphClass::Weak);
        assert!(validate_graph(&g).violations[0].contains("missing arrow 3 -> 2"));
        assert!(ResolutionGraph::new(1, 3, [(1, 2)], GraphClass::Weak).is_err());
    }

    #[test]
    fn path_count_examples() {
        let pc = path_counts(&ResolutionGraph::chain(1, 5, GraphClass::Weak)).unwrap();
        for i in 1..=5 {
            for j in 1..=i {
                assert!(pc.get(i, j).is_one());
            }
        }
        let pc = path_counts(&graph(3, &[(2, 1), (3, 2), (3, 1)], GraphClass::Weak)).unwrap();
        assert_eq!(pc.from_top(), vec![2.into(), 1.into(), 1.into()]);
        let pc = path_counts(&graph(4, &[(2, 1), (3, 2), (4, 3), (4, 2)], GraphClass::Weak)).unwrap();
        assert_eq!(pc.from_top(), vec![2.into(), 2.into(), 1.into(), 1.into()]);
        assert!(pc.get(2, 4).is_zero());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(3, GraphClass::Weak).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(4, GraphClass::Weak).unwrap().count(), 6);
        assert_eq!(enumerate_graphs(4, GraphClass::BetweenClosed).unwrap().count(), 4);
        assert_eq!(enumerate_graphs(1, GraphClass::Prefix).unwrap().count(), 1);
        for n in 1..=7 {
            let all: Vec<_> = enumerate_graphs(n, GraphClass::Weak).unwrap().collect();
            let fact: usize = (1..n.max(2)).product();
            assert_eq!(all.len(), fact);
            for class in GraphClass::ALL {
                let filtered: Vec<_> = all.iter().filter(|g| validate_as(g, class).valid).collect();
                let listed: Vec<_> = enumerate_graphs(n, class).unwrap().collect();
                assert_eq!(filtered.len(), listed.len(), "n = {n}, {class}");
                assert!(listed.iter().all(|g| validate_graph(g).valid));
            }
        }
        assert!(enumerate_graphs(13, GraphClass::Weak).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = ResolutionGraph::from_json(r#"{"N": 4, "arrows": [[2,1],[3,2],[4,3],[4,2]], "class": "prefix"}"#).unwrap();
        assert_eq!(g.top(), 4);
        assert_eq!(ResolutionGraph::from_json(&g.to_json().to_string()).unwrap(), g);
        let e = ResolutionGraph::from_json("{\"N\": 4,\n \"arrows\": [[2,1],]}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    }
}
