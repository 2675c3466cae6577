//! Complexes of copies of one polytope glued along facets by the identity map.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::ComplexError;
use crate::geometry::{symmetry_group, Polytope};

/// A polytope used as the common shape of all cells, with its automorphism
/// group computed on first use.
#[derive(Debug)]
pub struct CellType {
    pub polytope: Polytope,
    automorphisms: OnceLock<Vec<Vec<usize>>>,
}

impl CellType {
    pub fn new(polytope: Polytope) -> Arc<Self> {
        Arc::new(Self { polytope, automorphisms: OnceLock::new() })
    }

    /// Facet permutations induced by symmetries of the polytope.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        self.automorphisms.get_or_init(|| symmetry_group(&self.polytope).automorphisms)
    }

    pub fn num_facets(&self) -> usize {
        self.polytope.num_facets()
    }
}

/// Cells are copies of a common cell type. Facet `f` of cell `c` is either
/// unpaired (boundary) or glued by the identity of the cell type to facet `f`
/// of a different cell.
#[derive(Clone, Debug)]
pub struct PairingComplex {
    cell_type: Arc<CellType>,
    num_cells: usize,
    partner: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// An edge-labeled multigraph on vertices `0..n`, labels small integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

/// A facet coloring of the cell type: `colors[f]` is the color of facet `f`
/// in `0..k`, or `None` when the facet stays uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<Option<usize>>,
}

impl Coloring {
    pub fn uncolored(nf: usize) -> Self {
        Self { colors: vec![None; nf] }
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().flatten().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// Checks that adjacent colored facets differ and that every color in
    /// `0..k` is used.
    pub fn check(&self, p: &Polytope) -> Result<(), ComplexError> {
        if self.colors.len() != p.num_facets() {
            return Err(ComplexError::Coloring(format!(
                "coloring has {} entries for {} facets",
                self.colors.len(),
                p.num_facets()
            )));
        }
        for ((a, b), _) in p.ridges() {
            if let (Some(x), Some(y)) = (self.colors[a], self.colors[b]) {
                if x == y {
                    return Err(ComplexError::ImproperColoring { a, b, color: x });
                }
            }
        }
        for c in 0..self.num_colors() {
            if !self.colors.contains(&Some(c)) {
                return Err(ComplexError::Coloring(format!("color {c} is unused")));
            }
        }
        Ok(())
    }
}

impl PairingComplex {
    /// `num_cells` copies with every facet unpaired.
    pub fn new(cell_type: Arc<CellType>, num_cells: usize) -> Self {
        let nf = cell_type.num_facets();
        Self { cell_type, num_cells, partner: vec![NONE; num_cells * nf] }
    }

    pub fn cell_type(&self) -> &Arc<CellType> {
        &self.cell_type
    }

    pub fn polytope(&self) -> &Polytope {
        &self.cell_type.polytope
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn num_facets(&self) -> usize {
        self.cell_type.num_facets()
    }

    pub fn dim(&self) -> usize {
        self.polytope().dim()
    }

    pub fn partner(&self, c: usize, f: usize) -> Option<usize> {
        let p = self.partner[c * self.num_facets() + f];
        (p != NONE).then_some(p as usize)
    }

    /// Glues facet `f` of cells `a` and `b`.
    pub fn pair(&mut self, a: usize, b: usize, f: usize) -> Result<(), ComplexError> {
        if a == b {
            return Err(ComplexError::FixedPoint { cell: a, facet: f });
        }
        let nf = self.num_facets();
        for (x, y) in [(a, b), (b, a)] {
            let slot = self.partner[x * nf + f];
            if slot != NONE && slot as usize != y {
                return Err(ComplexError::AlreadyPaired { cell: x, facet: f });
            }
        }
        self.partner[a * nf + f] = b as u32;
        self.partner[b * nf + f] = a as u32;
        Ok(())
    }

    /// Unpaired facet slots `(cell, facet)` in lexicographic order.
    pub fn boundary_facets(&self) -> Vec<(usize, usize)> {
        let nf = self.num_facets();
        (0..self.num_cells)
            .flat_map(|c| (0..nf).map(move |f| (c, f)))
            .filter(|&(c, f)| self.partner(c, f).is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().all(|&p| p != NONE)
    }

    /// Checks the involution property of the pairing.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for c in 0..self.num_cells {
            for f in 0..self.num_facets() {
                if let Some(d) = self.partner(c, f) {
                    if d == c {
                        return Err(ComplexError::FixedPoint { cell: c, facet: f });
                    }
                    if d >= self.num_cells || self.partner(d, f) != Some(c) {
                        return Err(ComplexError::NotInvolution { cell: c, facet: f });
                    }
                }
            }
        }
        Ok(())
    }

    /// Cells connected through pairings, as sorted lists.
    pub fn cell_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.num_cells];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.num_cells {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(c) = stack.pop() {
                for f in 0..self.num_facets() {
                    if let Some(d) = self.partner(c, f) {
                        if comp[d] == usize::MAX {
                            comp[d] = id;
                            members.push(d);
                            stack.push(d);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.num_cells > 0 && self.cell_components().len() == 1
    }

    /// Renumbers cells: old cell `c` becomes `perm[c]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let nf = self.num_facets();
        let mut out = Self::new(self.cell_type.clone(), self.num_cells);
        for c in 0..self.num_cells {
            for f in 0..nf {
                if let Some(d) = self.partner(c, f) {
                    out.partner[perm[c] * nf + f] = perm[d] as u32;
                }
            }
        }
        out
    }

    /// Re-expresses the complex over an isomorphic cell type: facet `f` of the
    /// old type becomes facet `map[f]` of `target`.
    pub fn transport(&self, target: Arc<CellType>, map: &[usize]) -> Result<Self, ComplexError> {
        if target.num_facets() != self.num_facets() || map.len() != self.num_facets() {
            return Err(ComplexError::Mismatch("cell types differ in facet count".into()));
        }
        let mut out = Self::new(target, self.num_cells);
        let nf = self.num_facets();
        for c in 0..self.num_cells {
            for f in 0..nf {
                out.partner[c * nf + map[f]] = self.partner[c * nf + f];
            }
        }
        Ok(out)
    }

    /// The subcomplex on `cells` (renumbered in the given order); pairings
    /// leaving the subset become boundary.
    pub fn subcomplex(&self, cells: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.num_cells];
        for (k, &c) in cells.iter().enumerate() {
            new_index[c] = k;
        }
        let nf = self.num_facets();
        let mut out = Self::new(self.cell_type.clone(), cells.len());
        for (k, &c) in cells.iter().enumerate() {
            for f in 0..nf {
                if let Some(d) = self.partner(c, f) {
                    if new_index[d] != usize::MAX {
                        out.partner[k * nf + f] = new_index[d] as u32;
                    }
                }
            }
        }
        out
    }

    /// `2^k` copies of the complex, one per `ε ∈ {0,1}^k`, as cells
    /// `ε·N + c`. Facet `f` of color `i` in copy `ε` is glued to facet `f` in
    /// copy `ε + e_i`; uncolored boundary facets stay boundary. Colored facets
    /// must be unpaired in every cell.
    pub fn coloring_quotient(&self, coloring: &Coloring) -> Result<Self, ComplexError> {
        coloring.check(self.polytope())?;
        let k = coloring.num_colors();
        let nf = self.num_facets();
        for c in 0..self.num_cells {
            for f in 0..nf {
                if coloring.colors[f].is_some() && self.partner(c, f).is_some() {
                    return Err(ComplexError::Coloring(format!("facet {f} of cell {c} is colored but already paired")));
                }
            }
        }
        let n = self.num_cells;
        let mut out = Self::new(self.cell_type.clone(), n << k);
        for eps in 0..(1usize << k) {
            for c in 0..n {
                for f in 0..nf {
                    let here = eps * n + c;
                    let there = match (self.partner(c, f), coloring.colors[f]) {
                        (Some(d), _) => eps * n + d,
                        (None, Some(i)) => (eps ^ (1 << i)) * n + c,
                        (None, None) => continue,
                    };
                    out.partner[here * nf + f] = there as u32;
                }
            }
        }
        Ok(out)
    }

    /// One copy of the complex per vertex of `g`, as cells `v·N + c`. For each
    /// edge `{v, w}` with label `l`, every facet slot `(c, f)` in the boundary
    /// components `scheme[l]` is glued between copies `v` and `w`.
    pub fn glue_by_graph(
        &self,
        components: &[Vec<(usize, usize)>],
        g: &LabeledGraph,
        scheme: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        let pairs: Vec<Vec<(usize, usize)>> = scheme.iter().map(|l| l.iter().map(|&j| (j, j)).collect()).collect();
        self.glue_pairs_by_graph(components, g, &pairs)
    }

    /// Like [`PairingComplex::glue_by_graph`], with `scheme[l]` listing pairs
    /// `(a, b)`: the `k`-th slot of component `a` in copy `v` is glued to the
    /// `k`-th slot of component `b` in copy `w`, and for `a ≠ b` also `b` in
    /// `v` to `a` in `w`. Paired components must list the same facets in the
    /// same order.
    pub fn glue_pairs_by_graph(
        &self,
        components: &[Vec<(usize, usize)>],
        g: &LabeledGraph,
        scheme: &[Vec<(usize, usize)>],
    ) -> Result<Self, ComplexError> {
        let n = self.num_cells;
        let nf = self.num_facets();
        let mut out = Self::new(self.cell_type.clone(), n * g.n);
        for v in 0..g.n {
            for c in 0..n {
                for f in 0..nf {
                    if let Some(d) = self.partner(c, f) {
                        out.partner[(v * n + c) * nf + f] = (v * n + d) as u32;
                    }
                }
            }
        }
        let comp = |j: usize| components.get(j).ok_or_else(|| ComplexError::Mismatch(format!("no component {j}")));
        let mut seen = vec![Vec::<usize>::new(); g.n];
        for &(v, w, l) in &g.edges {
            if v == w {
                return Err(ComplexError::Mismatch(format!("loop at vertex {v}")));
            }
            let pairs = scheme.get(l).ok_or(ComplexError::MissingLabel { vertex: v, label: l })?;
            for x in [v, w] {
                if seen[x].contains(&l) {
                    return Err(ComplexError::Mismatch(format!("label {l} appears twice at vertex {x}")));
                }
                seen[x].push(l);
            }
            for &(a, b) in pairs {
                let directions: &[(usize, usize)] = if a == b { &[(a, b)] } else { &[(a, b), (b, a)] };
                for &(a, b) in directions {
                    let (ca, cb) = (comp(a)?, comp(b)?);
                    if ca.len() != cb.len() {
                        return Err(ComplexError::Mismatch(format!("components {a} and {b} differ in size")));
                    }
                    for (&(c, f), &(d, h)) in ca.iter().zip(cb) {
                        if f != h {
                            return Err(ComplexError::Mismatch(format!("components {a} and {b} differ in facets")));
                        }
                        out.pair(v * n + c, w * n + d, f)?;
                    }
                }
            }
        }
        let required: std::collections::BTreeSet<usize> = g.edges.iter().map(|e| e.2).collect();
        for (v, labels) in seen.iter().enumerate() {
            if let Some(&l) = required.iter().find(|l| !labels.contains(l)) {
                return Err(ComplexError::MissingLabel { vertex: v, label: l });
            }
        }
        Ok(out)
    }

    /// Glues the facet slots of one boundary component to themselves: `(c, f)`
    /// to `(inv[c], f)`. The map must be a fixed-point-free involution on the
    /// component's cells that preserves the component.
    pub fn self_glue(&self, component: &[(usize, usize)], inv: &[usize]) -> Result<Self, ComplexError> {
        let slots: std::collections::BTreeSet<(usize, usize)> = component.iter().copied().collect();
        let mut out = self.clone();
        for &(c, f) in component {
            let d = inv[c];
            if d == c {
                return Err(ComplexError::FixedPoint { cell: c, facet: f });
            }
            if inv[d] != c || !slots.contains(&(d, f)) {
                return Err(ComplexError::Mismatch(format!("map does not preserve the component at cell {c}")));
            }
            out.pair(c, d, f)?;
        }
        Ok(out)
    }

    /// Two copies glued along every boundary facet by the identity.
    pub fn double(&self) -> Self {
        let n = self.num_cells;
        let nf = self.num_facets();
        let mut out = Self::new(self.cell_type.clone(), 2 * n);
        for copy in 0..2 {
            for c in 0..n {
                for f in 0..nf {
                    let there = match self.partner(c, f) {
                        Some(d) => copy * n + d,
                        None => (1 - copy) * n + c,
                    };
                    out.partner[(copy * n + c) * nf + f] = there as u32;
                }
            }
        }
        out
    }

    /// Disjoint union of two complexes over the same cell type.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, ComplexError> {
        if !Arc::ptr_eq(&self.cell_type, &other.cell_type) {
            return Err(ComplexError::Mismatch("different cell types".into()));
        }
        let n = self.num_cells;
        let nf = self.num_facets();
        let mut out = Self::new(self.cell_type.clone(), n + other.num_cells);
        out.partner[..n * nf].copy_from_slice(&self.partner);
        for (k, &p) in other.partner.iter().enumerate() {
            out.partner[n * nf + k] = if p == NONE { NONE } else { p + n as u32 };
        }
        Ok(out)
    }

    /// JSON dump: cell type, cell count, pairing table and boundary table.
    pub fn to_json(&self) -> serde_json::Value {
        let nf = self.num_facets();
        let mut pairings = Vec::new();
        for c in 0..self.num_cells {
            for f in 0..nf {
                if let Some(d) = self.partner(c, f) {
                    if c < d {
                        pairings.push([c, f, d]);
                    }
                }
            }
        }
        serde_json::json!({
            "cell_type": self.polytope().name,
            "cells": self.num_cells,
            "pairings": pairings,
            "boundary": self.boundary_facets(),
            "code": super::canonical_code(self).hex,
        })
    }
}
