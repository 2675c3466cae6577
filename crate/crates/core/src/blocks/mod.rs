//! The blocks B′ and B of both families: colored doubles of the octahedron and
//! of P³ glued along the labeled cube graph, with eight indexed boundary
//! components and a free orientation-reversing involution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{
    boundary_components, canonical_code, cusp_census, cusp_links, facet_complex, orientability, CellType, Coloring,
    ComplexError, CuspShape, FaceClasses, LabeledGraph, PairingComplex,
};
use crate::geometry::{octahedron, octahedron_is_white, orbit_polytope, GeometryError, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Arithmetic,
    NonArithmetic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Arithmetic => "arithmetic",
            Family::NonArithmetic => "nonarithmetic",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arithmetic" => Ok(Family::Arithmetic),
            "nonarithmetic" | "non-arithmetic" => Ok(Family::NonArithmetic),
            _ => Err(format!("unknown family `{s}` (arithmetic or nonarithmetic)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BlockError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("quad coloring line {line}: {message}")]
    ColoringData { line: usize, message: String },
}

/// The cube graph as the Cayley graph of (ℤ/2)³: vertex `v` joined to
/// `v ^ (1 << i)` by an edge labeled `i`.
pub fn cube_graph() -> LabeledGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for i in 0..3 {
            if v >> i & 1 == 0 {
                edges.push((v, v | 1 << i, i));
            }
        }
    }
    LabeledGraph { n: 8, edges }
}

/// Cube vertices `(C_j, C′_j)` for `j = 1..4`: antipodal pairs ordered by the
/// representative with first coordinate 0, coordinates read `x1 x2 x3` with
/// `v = x1 + 2 x2 + 4 x3`.
pub const ANTIPODAL_PAIRS: [(usize, usize); 4] = [(0, 7), (4, 3), (2, 5), (6, 1)];

/// A block with its boundary indexing and involution.
#[derive(Clone, Debug)]
pub struct Block {
    pub family: Family,
    /// The colored double B′ and the facet coloring that produced it.
    pub prime: PairingComplex,
    pub prime_coloring: Coloring,
    pub complex: PairingComplex,
    /// Cell-type facets glued along cube edges of label 0, 1, 2.
    pub interface_facets: [usize; 3],
    /// Cell-type facet forming the eight boundary components.
    pub outer_facet: usize,
    /// `[C_1, …, C_4, C′_1, …, C′_4]` as facet slots of `complex`.
    pub components: Vec<Vec<(usize, usize)>>,
    /// Cell map of the involution.
    pub iota: Vec<usize>,
    /// Cell maps of the three mirror swaps whose product is `iota`.
    pub mirrors: [Vec<usize>; 3],
}

impl Block {
    pub fn prime_cells(&self) -> usize {
        self.prime.num_cells()
    }

    /// Cube vertex of a cell.
    pub fn cube_vertex(&self, cell: usize) -> usize {
        cell / self.prime_cells()
    }

    /// Boundary slots of the copy of B′ at cube vertex `v`.
    pub fn component_at(&self, v: usize) -> Vec<(usize, usize)> {
        let n = self.prime_cells();
        (0..n)
            .filter(|&c| self.prime.partner(c, self.outer_facet).is_none())
            .map(|c| (v * n + c, self.outer_facet))
            .collect()
    }

    /// The coloring of the cell type whose quotient is the block: the colors
    /// of B′ followed by one color per interface facet, the outer facet uncolored.
    pub fn full_coloring(&self) -> Coloring {
        let k = self.prime_coloring.num_colors();
        let mut colors = self.prime_coloring.colors.clone();
        for (i, &f) in self.interface_facets.iter().enumerate() {
            colors[f] = Some(k + i);
        }
        Coloring { colors }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names: Vec<String> = (1..=4).map(|j| format!("C{j}")).chain((1..=4).map(|j| format!("C'{j}"))).collect();
        let table: BTreeMap<String, &Vec<(usize, usize)>> = names.into_iter().zip(&self.components).collect();
        serde_json::json!({
            "family": self.family,
            "complex": self.complex.to_json(),
            "boundary_index": table,
            "iota": self.iota,
        })
    }
}

/// The built-in quad coloring of P³, as facet label → color (1-based in the file).
pub fn p3_quad_coloring_text() -> &'static str {
    include_str!("../../data/p3-quad-coloring.txt")
}

/// Parses a coloring file `<facet label> <color>` against the facet labels of
/// `p`; colors in the file start at 1.
pub fn parse_facet_coloring(text: &str, p: &Polytope) -> Result<Coloring, BlockError> {
    let mut colors = vec![None; p.num_facets()];
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| BlockError::ColoringData { line, message };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [label, color] = toks.as_slice() else {
            return Err(err(format!("cannot read `{body}`")));
        };
        let f =
            p.facet_labels().iter().position(|l| l == label).ok_or_else(|| err(format!("no facet named {label}")))?;
        let c: usize = color.parse().ok().filter(|&c| c >= 1).ok_or_else(|| err(format!("bad color {color}")))?;
        if colors[f].replace(c - 1).is_some() {
            return Err(err(format!("facet {label} colored twice")));
        }
    }
    Ok(Coloring { colors })
}

fn assemble(
    family: Family,
    prime: PairingComplex,
    prime_coloring: Coloring,
    interface_facets: [usize; 3],
    outer_facet: usize,
) -> Result<Block, BlockError> {
    let comps = boundary_components(&prime);
    let comp_of_facet = |f: usize| -> Result<usize, BlockError> {
        comps
            .iter()
            .position(|c| c.iter().all(|s| s.1 == f) && c.first().is_some_and(|s| s.1 == f))
            .ok_or_else(|| ComplexError::Mismatch(format!("facet {f} is not a single boundary component of B'")).into())
    };
    let scheme: Vec<Vec<usize>> =
        interface_facets.iter().map(|&f| comp_of_facet(f).map(|c| vec![c])).collect::<Result<_, _>>()?;
    comp_of_facet(outer_facet)?;
    let complex = prime.glue_by_graph(&comps, &cube_graph(), &scheme)?;
    let n = prime.num_cells();
    let total = complex.num_cells();
    let flip = |mask: usize| (0..total).map(|c| ((c / n) ^ mask) * n + c % n).collect::<Vec<_>>();
    let mut block = Block {
        family,
        prime,
        prime_coloring,
        complex,
        interface_facets,
        outer_facet,
        components: Vec::new(),
        iota: flip(7),
        mirrors: [flip(1), flip(2), flip(4)],
    };
    let mut components: Vec<Vec<(usize, usize)>> =
        ANTIPODAL_PAIRS.iter().map(|&(v, _)| block.component_at(v)).collect();
    components.extend(ANTIPODAL_PAIRS.iter().map(|&(_, w)| block.component_at(w)));
    block.components = components;
    Ok(block)
}

/// Builds the block of a family. Arithmetic: the octahedron doubled along its
/// white faces, with black faces `D_1, D_2, D_3` glued along the cube edges and
/// `D_4` left as boundary. Non-arithmetic: P³ quotiented by the quad coloring,
/// with hexagons `H_1, H_2, H_3` glued along the cube edges and `H_4` boundary.
pub fn build_block(family: Family) -> Result<Block, BlockError> {
    match family {
        Family::Arithmetic => {
            let o = CellType::new(octahedron());
            let white = Coloring { colors: (0..8).map(|k| octahedron_is_white(k).then_some(0)).collect() };
            let prime = PairingComplex::new(o, 1).coloring_quotient(&white)?;
            let black: Vec<usize> = (0..8).filter(|&k| !octahedron_is_white(k)).collect();
            assemble(family, prime, white, [black[0], black[1], black[2]], black[3])
        }
        Family::NonArithmetic => {
            let p3 = orbit_polytope("p3")?.polytope;
            let coloring = parse_facet_coloring(p3_quad_coloring_text(), &p3)?;
            let hexagons: Vec<usize> = (0..p3.num_facets()).filter(|&f| p3.facet_tags()[f] == "hexagon").collect();
            let prime = PairingComplex::new(CellType::new(p3), 1).coloring_quotient(&coloring)?;
            assemble(family, prime, coloring, [hexagons[0], hexagons[1], hexagons[2]], hexagons[3])
        }
    }
}

/// Outcome of the involution checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub involution: bool,
    pub automorphism: bool,
    pub fixed_point_free: bool,
    pub orientation_reversing: bool,
    pub swaps_components: bool,
    pub mirror_decomposition: bool,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.involution
            && self.automorphism
            && self.fixed_point_free
            && self.orientation_reversing
            && self.swaps_components
            && self.mirror_decomposition
    }
}

/// True iff the cell map preserves every gluing (acting as the identity on
/// the cell type).
pub fn is_automorphism(x: &PairingComplex, map: &[usize]) -> bool {
    (0..x.num_cells()).all(|c| (0..x.num_facets()).all(|f| x.partner(map[c], f) == x.partner(c, f).map(|d| map[d])))
}

/// True iff no point of the complex is fixed: no cell and no identified finite
/// face is carried to itself by the cell map (acting as the identity on the
/// cell type).
pub fn is_fixed_point_free(x: &PairingComplex, map: &[usize]) -> bool {
    if (0..x.num_cells()).any(|c| map[c] == c) {
        return false;
    }
    let classes = FaceClasses::new(x);
    (0..x.num_cells()).all(|c| (0..classes.faces.len()).all(|i| classes.class(c, i) != classes.class(map[c], i)))
}

/// Checks the involution `iota` of a block, or a replacement cell map.
pub fn verify_involution_map(b: &Block, iota: &[usize]) -> InvolutionReport {
    let x = &b.complex;
    let n = x.num_cells();
    let involution = (0..n).all(|c| iota[iota[c]] == c);
    let automorphism = is_automorphism(x, iota);
    let fixed_point_free = is_fixed_point_free(x, iota);
    let orient = orientability(x);
    let orientation_reversing = orient.orientable && (0..n).all(|c| orient.signs[iota[c]] == -orient.signs[c]);
    let image = |comp: &Vec<(usize, usize)>| comp.iter().map(|&(c, f)| (iota[c], f)).collect::<BTreeSet<_>>();
    let swaps_components = (0..4).all(|j| {
        let target: BTreeSet<(usize, usize)> = b.components[4 + j].iter().copied().collect();
        image(&b.components[j]) == target
    });
    let composed: Vec<usize> = (0..n).map(|c| b.mirrors[0][b.mirrors[1][b.mirrors[2][c]]]).collect();
    let mirror_decomposition = composed == iota
        && b.mirrors.iter().all(|r| {
            is_automorphism(x, r)
                && (0..n).all(|c| r[r[c]] == c)
                && orient.orientable
                && (0..n).all(|c| orient.signs[r[c]] == -orient.signs[c])
        });
    InvolutionReport {
        involution,
        automorphism,
        fixed_point_free,
        orientation_reversing,
        swaps_components,
        mirror_decomposition,
    }
}

pub fn verify_involution(b: &Block) -> InvolutionReport {
    verify_involution_map(b, &b.iota)
}

/// Cusp sections of the block counted by shape.
pub fn block_cusp_census(b: &Block) -> Result<BTreeMap<CuspShape, usize>, BlockError> {
    Ok(cusp_census(&cusp_links(&b.complex)?))
}

/// Canonical codes of the eight boundary components as facet complexes.
pub fn boundary_component_codes(b: &Block) -> Result<Vec<String>, BlockError> {
    b.components.iter().map(|c| Ok(canonical_code(&facet_complex(&b.complex, c)?.0).hex)).collect()
}

/// Cells of the block grouped by the components of the cell–torus-cusp
/// incidence graph (cusp sections with 8 tiles and systole 2).
pub fn torus_cusp_components(x: &PairingComplex) -> Result<Vec<Vec<usize>>, BlockError> {
    let sections = cusp_links(x)?;
    let mut parent: Vec<usize> = (0..x.num_cells()).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut touched = vec![false; x.num_cells()];
    for s in sections
        .iter()
        .filter(|s| s.tiles.len() == 8 && s.systole == Some(2) && matches!(s.shape, CuspShape::Torus { .. }))
    {
        let first = s.tiles[0].0;
        for &(c, _) in &s.tiles {
            touched[c] = true;
            let (a, b) = (find(&mut parent, first), find(&mut parent, c));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..x.num_cells() {
        if touched[c] {
            let r = find(&mut parent, c);
            groups.entry(r).or_default().push(c);
        }
    }
    let untouched: Vec<usize> = (0..x.num_cells()).filter(|&c| !touched[c]).collect();
    if !untouched.is_empty() {
        groups.insert(usize::MAX, untouched);
    }
    Ok(groups.into_values().collect())
}

/// Shared handle to the cell type of a family's block.
pub fn cell_type(b: &Block) -> Arc<CellType> {
    b.complex.cell_type().clone()
}
