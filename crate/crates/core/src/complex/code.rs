//! Relabeling-invariant codes for pairing complexes.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::pairing::PairingComplex;

/// Canonical code of a complex with its number of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalCode {
    #[serde(skip)]
    pub code: Vec<u32>,
    pub hex: String,
    pub automorphisms: usize,
}

fn hex_digest(code: &[u32]) -> String {
    let mut h = Sha256::new();
    for v in code {
        h.update(v.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Breadth-first encoding from `start` with facet slot order `frame`, aborted
/// as soon as it exceeds `bound`. Entry `0` marks a boundary slot, `k + 1` the
/// cell numbered `k` in discovery order.
fn encode(
    x: &PairingComplex,
    cells: &[usize],
    start: usize,
    frame: &[usize],
    bound: Option<&[u32]>,
) -> Option<Vec<u32>> {
    let n = x.num_cells();
    let mut number = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(cells.len());
    number[start] = 0;
    order.push(start);
    let mut code = Vec::with_capacity(cells.len() * frame.len() + 1);
    code.push(cells.len() as u32);
    let mut tight = bound.is_some();
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for &f in frame {
            let v = match x.partner(c, f) {
                None => 0,
                Some(d) => {
                    if number[d] == u32::MAX {
                        number[d] = order.len() as u32;
                        order.push(d);
                    }
                    number[d] + 1
                }
            };
            if tight {
                let b = bound.expect("tight implies bound")[code.len()];
                match v.cmp(&b) {
                    Ordering::Greater => return None,
                    Ordering::Less => tight = false,
                    Ordering::Equal => {}
                }
            }
            code.push(v);
        }
    }
    Some(code)
}

fn component_code(x: &PairingComplex, cells: &[usize]) -> (Vec<u32>, usize) {
    let autos = x.cell_type().automorphisms();
    let starts: Vec<(usize, usize)> =
        autos.iter().enumerate().flat_map(|(a, _)| cells.iter().map(move |&c| (a, c))).collect();
    // a cheap first candidate keeps the pruning effective
    let first = encode(x, cells, starts[0].1, &autos[starts[0].0], None).expect("unbounded encode");
    let best = starts
        .par_iter()
        .fold(
            || first.clone(),
            |best, &(a, c)| match encode(x, cells, c, &autos[a], Some(&best)) {
                Some(code) if code < best => code,
                _ => best,
            },
        )
        .reduce(|| first.clone(), |a, b| a.min(b));
    let count = starts
        .par_iter()
        .filter(|&&(a, c)| encode(x, cells, c, &autos[a], Some(&best)).is_some_and(|code| code == best))
        .count();
    (best, count)
}

/// Minimum over every start cell and every cell-type symmetry of the
/// breadth-first pairing encoding. Equal codes certify isomorphic complexes
/// (with respect to identity gluings of the same cell type). For disconnected
/// complexes the component codes are sorted and concatenated, and the
/// automorphism count covers component-preserving automorphisms only.
pub fn canonical_code(x: &PairingComplex) -> CanonicalCode {
    let comps = x.cell_components();
    let mut parts: Vec<(Vec<u32>, usize)> = comps.iter().map(|c| component_code(x, c)).collect();
    parts.sort();
    let automorphisms = parts.iter().map(|p| p.1).product();
    let code: Vec<u32> = parts.into_iter().flat_map(|p| p.0).collect();
    CanonicalCode { hex: hex_digest(&code), code, automorphisms }
}
