//! Vinberg's arithmeticity criterion for non-cocompact Coxeter polytopes.
//!
//! With `G = 2·Gram`, the reflection group is arithmetic iff every cyclic
//! product `G_{i1 i2} G_{i2 i3} ⋯ G_{ik i1}` is a rational integer. Cyclic
//! products along arbitrary closed walks factor into products along simple
//! cycles and back-and-forth steps, so it is enough to test 2-cycles and simple
//! cycles of the non-orthogonality graph.

use std::collections::VecDeque;

use serde::Serialize;

use super::diagram::CoxeterDiagram;
use crate::kernel::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Arithmetic,
    NonArithmetic,
    Undecidable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Arithmetic => "arithmetic",
            Verdict::NonArithmetic => "non-arithmetic",
            Verdict::Undecidable => "undecidable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    Irrational,
    NonIntegral,
}

/// A cycle whose product breaks the criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleCertificate {
    pub cycle: Vec<String>,
    pub product: String,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArithmeticityReport {
    pub verdict: Verdict,
    pub certificate: Option<CycleCertificate>,
    /// Number of simple cycles (length ≥ 3) inspected.
    pub cycles_checked: usize,
    pub note: Option<String>,
}

/// `2·Gram` restricted to off-diagonal non-zero entries, or the first pair
/// whose entry is not exact.
fn doubled_entries(d: &CoxeterDiagram) -> Result<Vec<Vec<Option<ExactScalar>>>, (usize, usize)> {
    let n = d.len();
    let two = ExactScalar::from_int(2);
    let mut t = vec![vec![None; n]; n];
    for (a, b, w) in d.edges() {
        let g = w.gram_exact().ok_or((a, b))?;
        let v = &two * &g;
        t[a][b] = Some(v.clone());
        t[b][a] = Some(v);
    }
    Ok(t)
}

fn cycle_product(t: &[Vec<Option<ExactScalar>>], cycle: &[usize]) -> ExactScalar {
    let mut p = ExactScalar::one();
    for k in 0..cycle.len() {
        let (i, j) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        p = &p * t[i][j].as_ref().expect("cycle follows edges");
    }
    p
}

/// Every simple cycle of length ≥ 3, each listed once, starting at its
/// smallest node.
pub fn simple_cycles(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("non-empty path");
        for next in 0..adj.len() {
            if !adj[last][next] {
                continue;
            }
            if next == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if next > start && !on[next] {
                on[next] = true;
                path.push(next);
                extend(adj, start, path, on, out);
                path.pop();
                on[next] = false;
            }
        }
    }
    let n = adj.len();
    let mut out = Vec::new();
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        extend(adj, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

/// Rationality of all cycle products via GF(2) potentials: each entry is a
/// monomial `r·√2^i·√3^j`, and every cycle is rational iff the parity vectors
/// `(i, j)` are a coboundary on the graph. Returns an offending cycle, or
/// `Err(())` if some entry is not a monomial.
fn parity_obstruction(t: &[Vec<Option<ExactScalar>>]) -> Result<Option<Vec<usize>>, ()> {
    let n = t.len();
    let mut parity = vec![vec![(0u8, 0u8); n]; n];
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = &t[i][j] {
                parity[i][j] = v.monomial_parity().ok_or(())?;
            }
        }
    }
    let mut potential: Vec<Option<(u8, u8)>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some((0, 0));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let px = potential[x].expect("visited");
            for y in 0..n {
                if t[x][y].is_none() {
                    continue;
                }
                let e = parity[x][y];
                let want = (px.0 ^ e.0, px.1 ^ e.1);
                match potential[y] {
                    None => {
                        potential[y] = Some(want);
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                    Some(py) if py != want => {
                        return Ok(Some(tree_cycle(x, y, &parent, &depth)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

/// The cycle closed by the non-tree edge `x–y` in the BFS forest.
fn tree_cycle(x: usize, y: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    // left runs x → lca → y; the edge y–x closes it
    left
}

/// Decides arithmeticity with a violating cycle as certificate.
pub fn arithmeticity(d: &CoxeterDiagram) -> ArithmeticityReport {
    let names = |c: &[usize]| c.iter().map(|&i| d.nodes()[i].clone()).collect::<Vec<_>>();
    let t = match doubled_entries(d) {
        Ok(t) => t,
        Err((a, b)) => {
            return ArithmeticityReport {
                verdict: Verdict::Undecidable,
                certificate: None,
                cycles_checked: 0,
                note: Some(format!("entry {}-{} is not exact in Q(sqrt2, sqrt3)", d.nodes()[a], d.nodes()[b])),
            }
        }
    };
    let n = d.len();
    let violation = |cycle: &[usize], p: &ExactScalar, kind| ArithmeticityReport {
        verdict: Verdict::NonArithmetic,
        certificate: Some(CycleCertificate { cycle: names(cycle), product: p.to_string(), violation: kind }),
        cycles_checked: 0,
        note: None,
    };
    for i in 0..n {
        for j in (i + 1)..n {
            if t[i][j].is_some() {
                let p = cycle_product(&t, &[i, j]);
                if !p.is_rational() {
                    return violation(&[i, j], &p, Violation::Irrational);
                }
                if !p.is_integer() {
                    return violation(&[i, j], &p, Violation::NonIntegral);
                }
            }
        }
    }
    let monomial = match parity_obstruction(&t) {
        Ok(Some(cycle)) => {
            let p = cycle_product(&t, &cycle);
            debug_assert!(!p.is_rational());
            return violation(&cycle, &p, Violation::Irrational);
        }
        Ok(None) => true,
        Err(()) => false,
    };
    let adj: Vec<Vec<bool>> = t.iter().map(|r| r.iter().map(Option::is_some).collect()).collect();
    let cycles = simple_cycles(&adj);
    for c in &cycles {
        let p = cycle_product(&t, c);
        if !p.is_rational() {
            let mut r = violation(c, &p, Violation::Irrational);
            r.cycles_checked = cycles.len();
            return r;
        }
        if !p.is_integer() {
            let mut r = violation(c, &p, Violation::NonIntegral);
            r.cycles_checked = cycles.len();
            return r;
        }
    }
    ArithmeticityReport {
        verdict: Verdict::Arithmetic,
        certificate: None,
        cycles_checked: cycles.len(),
        note: (!monomial).then(|| "rationality decided cycle by cycle".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_diagram;

    #[test]
    fn cycles_of_k4() {
        let adj: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i != j).collect()).collect();
        // four triangles and three 4-cycles
        assert_eq!(simple_cycles(&adj).len(), 7);
    }

    #[test]
    fn tree_is_arithmetic_when_squares_are_integers() {
        let d = parse_diagram("A B 4\nB C 6\nC D inf").unwrap();
        assert_eq!(arithmeticity(&d).verdict, Verdict::Arithmetic);
    }

    #[test]
    fn non_integral_square() {
        let d = parse_diagram("A B -5/4").unwrap();
        let r = arithmeticity(&d);
        assert_eq!(r.verdict, Verdict::NonArithmetic);
        assert_eq!(r.certificate.unwrap().violation, Violation::NonIntegral);
    }

    #[test]
    fn parity_cycle_found() {
        let d = parse_diagram("A B 3\nB C 3\nC A 4").unwrap();
        let r = arithmeticity(&d);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.violation, Violation::Irrational);
        assert_eq!(cert.cycle.len(), 3);
    }

    #[test]
    fn float_dashed_is_undecidable() {
        let d = parse_diagram("A B -1.5e0").unwrap();
        assert_eq!(arithmeticity(&d).verdict, Verdict::Undecidable);
    }
}
