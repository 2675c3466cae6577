//! Coxeter diagrams, their text format, and Gram matrices.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::CoxeterError;
use crate::kernel::{ExactMatrix, ExactScalar, FloatMatrix, SymMatrix};

/// Weight of an unordered pair of distinct nodes. Absent pairs are orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeWeight {
    /// Dihedral angle `π/m` with `m ≥ 3`.
    Label(u32),
    /// Hyperplanes tangent at infinity.
    Infinite,
    /// Ultraparallel hyperplanes with `⟨e_i, e_j⟩ = -weight`, `weight > 1`.
    Dashed { weight: f64, exact: Option<ExactScalar> },
}

impl EdgeWeight {
    /// The Gram entry `⟨e_i, e_j⟩` if it lies in ℚ(√2, √3).
    pub fn gram_exact(&self) -> Option<ExactScalar> {
        match self {
            EdgeWeight::Label(m) => ExactScalar::cos_pi_over(*m).map(|c| -c),
            EdgeWeight::Infinite => Some(ExactScalar::from_int(-1)),
            EdgeWeight::Dashed { exact, .. } => exact.as_ref().map(|w| -w),
        }
    }

    pub fn gram_f64(&self) -> f64 {
        match self {
            EdgeWeight::Label(m) => -(PI / *m as f64).cos(),
            EdgeWeight::Infinite => -1.0,
            EdgeWeight::Dashed { weight, .. } => -weight,
        }
    }

    fn token(&self) -> String {
        match self {
            EdgeWeight::Label(m) => m.to_string(),
            EdgeWeight::Infinite => "inf".to_string(),
            EdgeWeight::Dashed { weight, exact } => match exact.as_ref().and_then(|e| e.as_rational()) {
                Some(r) => format!("-{r}"),
                None => format!("-{weight}"),
            },
        }
    }
}

/// A Coxeter diagram: named nodes and weighted edges between distinct nodes.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CoxeterDiagram {
    nodes: Vec<String>,
    edges: BTreeMap<(usize, usize), EdgeWeight>,
}

impl CoxeterDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node and returns its index; existing names are reused.
    pub fn add_node(&mut self, name: &str) -> usize {
        match self.index_of(name) {
            Some(i) => i,
            None => {
                self.nodes.push(name.to_string());
                self.nodes.len() - 1
            }
        }
    }

    /// Sets the weight on `{a, b}`, replacing any previous weight.
    pub fn set_edge(&mut self, a: usize, b: usize, w: EdgeWeight) -> Result<(), CoxeterError> {
        if a == b {
            return Err(CoxeterError::SelfEdge { line: 0, node: self.nodes[a].clone() });
        }
        self.edges.insert((a.min(b), a.max(b)), w);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.edges.remove(&(a.min(b), a.max(b)));
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, CoxeterError> {
        self.index_of(name).ok_or_else(|| CoxeterError::UnknownNode(name.to_string()))
    }

    /// Weight of `{a, b}`; `None` means label 2 (orthogonal).
    pub fn weight(&self, a: usize, b: usize) -> Option<&EdgeWeight> {
        self.edges.get(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &EdgeWeight)> {
        self.edges.iter().map(|(&(a, b), w)| (a, b, w))
    }

    /// Subset given as node names.
    pub fn subset(&self, names: &[&str]) -> Result<Vec<usize>, CoxeterError> {
        names.iter().map(|n| self.require(n)).collect()
    }

    /// Exact Gram matrix; fails on labels whose cosine leaves ℚ(√2, √3).
    pub fn gram_exact(&self) -> Result<ExactMatrix, CoxeterError> {
        for (a, b, w) in self.edges() {
            if w.gram_exact().is_none() {
                return Err(CoxeterError::UnsupportedField {
                    a: self.nodes[a].clone(),
                    b: self.nodes[b].clone(),
                    label: w.token(),
                });
            }
        }
        Ok(SymMatrix::from_fn(self.len(), |i, j| self.entry_exact(i, j).expect("checked above")))
    }

    /// Gram matrix in floating point; defined for every label.
    pub fn gram_f64(&self) -> FloatMatrix {
        SymMatrix::from_fn(self.len(), |i, j| self.entry_f64(i, j))
    }

    pub fn entry_exact(&self, i: usize, j: usize) -> Option<ExactScalar> {
        if i == j {
            return Some(ExactScalar::one());
        }
        match self.weight(i, j) {
            None => Some(ExactScalar::zero()),
            Some(w) => w.gram_exact(),
        }
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        self.weight(i, j).map_or(0.0, EdgeWeight::gram_f64)
    }

    /// Exact principal Gram submatrix on `subset`, if every entry is exact.
    pub fn principal_exact(&self, subset: &[usize]) -> Option<ExactMatrix> {
        let mut rows = Vec::with_capacity(subset.len());
        for &i in subset {
            let row: Option<Vec<ExactScalar>> = subset.iter().map(|&j| self.entry_exact(i, j)).collect();
            rows.push(row?);
        }
        Some(SymMatrix::from_rows(rows).expect("Gram matrices are symmetric"))
    }

    /// The diagram induced on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::new();
        for &k in keep {
            d.add_node(&self.nodes[k]);
        }
        for (x, &i) in keep.iter().enumerate() {
            for (y, &j) in keep.iter().enumerate().skip(x + 1) {
                if let Some(w) = self.weight(i, j) {
                    d.edges.insert((x, y), w.clone());
                }
            }
        }
        d
    }

    /// Connected components of the subset under non-orthogonality.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; subset.len()];
        let mut out = Vec::new();
        for s in 0..subset.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![subset[s]];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for y in 0..subset.len() {
                    if !seen[y] && self.weight(subset[x], subset[y]).is_some() {
                        seen[y] = true;
                        comp.push(subset[y]);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Same diagram with nodes reordered: node `k` of the result is `self[perm[k]]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterDiagram {
        self.induced(perm)
    }

    /// Serializes into the edge-list text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            s.push_str(&format!("node {n}\n"));
        }
        for (a, b, w) in self.edges() {
            s.push_str(&format!("{} {} {}\n", self.nodes[a], self.nodes[b], w.token()));
        }
        s
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.edges().map(|(a, b, w)| format!("{}-{}-{}", self.nodes[a], w.token(), self.nodes[b])).collect();
        write!(f, "[{}] {}", self.nodes.join(","), parts.join(" "))
    }
}

/// Parses a decimal or fraction literal into an exact rational.
fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(digits, scale))
}

fn parse_weight(tok: &str, line: usize) -> Result<EdgeWeight, CoxeterError> {
    let unsupported = || CoxeterError::UnsupportedLabel { line, label: tok.to_string() };
    if tok == "inf" || tok == "∞" {
        return Ok(EdgeWeight::Infinite);
    }
    if let Some(w) = tok.strip_prefix('-') {
        let exact = parse_rational(w).map(ExactScalar::from_rational);
        let weight: f64 = match &exact {
            Some(e) => e.to_f64(),
            None => w.parse().map_err(|_| unsupported())?,
        };
        if !(weight > 1.0) || !weight.is_finite() {
            return Err(unsupported());
        }
        if let Some(e) = &exact {
            if e.cmp_exact(&ExactScalar::one()) != std::cmp::Ordering::Greater {
                return Err(unsupported());
            }
        }
        return Ok(EdgeWeight::Dashed { weight, exact });
    }
    match tok.parse::<u32>() {
        Ok(m @ (3..=6)) => Ok(EdgeWeight::Label(m)),
        _ => Err(unsupported()),
    }
}

/// Parses the edge-list format: `node <name>` declarations, `<a> <b> <label>`
/// edges with label in {3,4,5,6,inf} or `-<w>` for a dashed weight, `#` comments.
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram, CoxeterError> {
    let mut d = CoxeterDiagram::new();
    let mut lines_of = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["node", name] => {
                d.add_node(name);
            }
            [a, b, label] => {
                if a == b {
                    return Err(CoxeterError::SelfEdge { line, node: a.to_string() });
                }
                let w = parse_weight(label, line)?;
                let (i, j) = (d.add_node(a), d.add_node(b));
                let key = (i.min(j), i.max(j));
                if let Some(first) = lines_of.insert(key, line) {
                    return Err(CoxeterError::DuplicateEdge { line, first, a: a.to_string(), b: b.to_string() });
                }
                d.edges.insert(key, w);
            }
            _ => {
                return Err(CoxeterError::Parse { line, message: format!("cannot read `{body}`") });
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_diagram() {
        let d = parse_diagram("A B 4\nB C 3").unwrap();
        assert_eq!(d.nodes(), ["A", "B", "C"]);
        assert_eq!(d.weight(0, 1), Some(&EdgeWeight::Label(4)));
        assert_eq!(d.weight(2, 1), Some(&EdgeWeight::Label(3)));
        assert_eq!(d.weight(0, 2), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_diagram("A A 3"), Err(CoxeterError::SelfEdge { line: 1, .. })));
        assert!(matches!(parse_diagram("A B 3\nB A 4"), Err(CoxeterError::DuplicateEdge { line: 2, first: 1, .. })));
        assert!(matches!(parse_diagram("A B 7"), Err(CoxeterError::UnsupportedLabel { .. })));
        assert!(matches!(parse_diagram("A B 2"), Err(CoxeterError::UnsupportedLabel { .. })));
        assert!(matches!(parse_diagram("A B -0.5"), Err(CoxeterError::UnsupportedLabel { .. })));
        assert!(matches!(parse_diagram("A B"), Err(CoxeterError::Parse { line: 1, .. })));
    }

    #[test]
    fn gram_entries() {
        let single = parse_diagram("node A").unwrap();
        assert_eq!(single.gram_exact().unwrap().rows(), vec![vec![ExactScalar::one()]]);
        let d = parse_diagram("A B 4\nB C inf\nC D -3/2").unwrap();
        let g = d.gram_exact().unwrap();
        assert_eq!(g.get(0, 1), &ExactScalar::from_parts((0, 1), (-1, 2), (0, 1), (0, 1)));
        assert_eq!(g.get(1, 2), &ExactScalar::from_int(-1));
        assert_eq!(g.get(2, 3), &ExactScalar::from_ratio(-3, 2));
        assert!((d.gram_f64().get(2, 3) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn label_five_is_float_only() {
        let d = parse_diagram("A B 5").unwrap();
        assert!(matches!(d.gram_exact(), Err(CoxeterError::UnsupportedField { .. })));
        assert!((d.gram_f64().get(0, 1) + (PI / 5.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn text_roundtrip() {
        let d = parse_diagram("node Z\nA B 4\nB C inf\nC D -1.25").unwrap();
        assert_eq!(parse_diagram(&d.to_text()).unwrap(), d);
    }
}
