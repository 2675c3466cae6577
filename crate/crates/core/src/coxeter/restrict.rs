//! The Coxeter diagram of a facet, by orthogonal projection of the normals.

use super::diagram::{CoxeterDiagram, EdgeWeight};
use super::CoxeterError;
use crate::kernel::ExactScalar;

/// `sqrt(1 - g²)` for the Gram entries `g = -cos(π/m)`, `m ∈ {2,3,4,6}`, which
/// are exactly the non-tangent angle entries with an exact square root.
fn sine_of_entry(g: &ExactScalar) -> Option<ExactScalar> {
    for m in [2u32, 3, 4, 6] {
        let c = ExactScalar::cos_pi_over(m).expect("supported label");
        if &(-&c) == g {
            let s = match m {
                2 => ExactScalar::one(),
                3 => ExactScalar::from_parts((0, 1), (0, 1), (1, 2), (0, 1)),
                4 => ExactScalar::from_parts((0, 1), (1, 2), (0, 1), (0, 1)),
                _ => ExactScalar::from_ratio(1, 2),
            };
            return Some(s);
        }
    }
    None
}

/// Recognizes a Gram entry as an edge weight; `Ok(None)` means orthogonal.
pub(crate) fn weight_of_entry(g: &ExactScalar) -> Result<Option<EdgeWeight>, ExactScalar> {
    if g.is_zero() {
        return Ok(None);
    }
    for m in [3u32, 4, 6] {
        if &(-ExactScalar::cos_pi_over(m).expect("supported label")) == g {
            return Ok(Some(EdgeWeight::Label(m)));
        }
    }
    let minus_one = ExactScalar::from_int(-1);
    match g.cmp_exact(&minus_one) {
        std::cmp::Ordering::Equal => Ok(Some(EdgeWeight::Infinite)),
        std::cmp::Ordering::Less => {
            let w = -g;
            Ok(Some(EdgeWeight::Dashed { weight: w.to_f64(), exact: Some(w) }))
        }
        std::cmp::Ordering::Greater => Err(g.clone()),
    }
}

/// Diagram of the facet `H_facet`: every other normal is projected into
/// `H_facet` and renormalized, and the pairwise products are recomputed as
/// `(g_XY - g_XA g_AY) / sqrt((1 - g_XA²)(1 - g_YA²))`. When `H_A` is orthogonal
/// to both `H_X` and `H_Y` the entry is unchanged.
pub fn restrict_to_facet(d: &CoxeterDiagram, facet: &str) -> Result<CoxeterDiagram, CoxeterError> {
    let a = d.require(facet)?;
    let g = d.gram_exact()?;
    let rest: Vec<usize> = (0..d.len()).filter(|&i| i != a).collect();
    let mut sines = Vec::with_capacity(rest.len());
    for &x in &rest {
        let s = sine_of_entry(g.get(x, a))
            .ok_or_else(|| CoxeterError::FacetDegeneracy { facet: facet.to_string(), node: d.nodes()[x].clone() })?;
        sines.push(s);
    }
    let mut out = CoxeterDiagram::new();
    for &x in &rest {
        out.add_node(&d.nodes()[x]);
    }
    for (i, &x) in rest.iter().enumerate() {
        for (j, &y) in rest.iter().enumerate().skip(i + 1) {
            let num = g.get(x, y) - &(g.get(x, a) * g.get(a, y));
            let den = &sines[i] * &sines[j];
            let value = &num / &den;
            match weight_of_entry(&value) {
                Ok(Some(w)) => out.set_edge(i, j, w)?,
                Ok(None) => {}
                Err(v) => {
                    return Err(CoxeterError::NotCoxeter {
                        a: d.nodes()[x].clone(),
                        b: d.nodes()[y].clone(),
                        value: v.to_string(),
                    })
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_diagram;

    #[test]
    fn isolated_node_drops_out() {
        let d = parse_diagram("node X\nA B 4\nB C inf").unwrap();
        let r = restrict_to_facet(&d, "X").unwrap();
        assert_eq!(r, parse_diagram("A B 4\nB C inf").unwrap());
    }

    #[test]
    fn tangent_neighbour_is_degenerate() {
        let d = parse_diagram("A B inf\nB C 3").unwrap();
        assert!(matches!(restrict_to_facet(&d, "A"), Err(CoxeterError::FacetDegeneracy { .. })));
    }

    #[test]
    fn right_triangle_of_labels() {
        // A-4-B, A-4-C with B ⊥ C: projected product 0 - (1/2) over 1/2 = -1.
        let d = parse_diagram("A B 4\nA C 4").unwrap();
        let r = restrict_to_facet(&d, "A").unwrap();
        assert_eq!(r.weight(0, 1), Some(&EdgeWeight::Infinite));
    }
}
