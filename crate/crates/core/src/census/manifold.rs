//! The 3-manifolds M_G, their cusps, graph recovery and volumes.

use serde::{Deserialize, Serialize};

use crate::blocks::{torus_cusp_components, Block};
use crate::complex::{cusp_links, CuspSection, CuspShape, LabeledGraph, PairingComplex};
use crate::graphs::{FactorGraph, SimpleGraph};
use crate::kernel::ideal_octahedron_volume;

use super::CensusError;

/// Volume of the Coxeter pyramid Q³, rounded to five digits.
pub const VOL_Q3: f64 = 0.40362;

/// Number of copies of Q³ tiling P³.
pub const P3_PYRAMIDS: usize = 24;

/// The factor as an edge-labeled graph with labels `0..4`.
pub fn labeled_graph(f: &FactorGraph) -> LabeledGraph {
    LabeledGraph { n: f.n(), edges: f.colored_edges() }
}

/// How an edge of color `j` joins the blocks at its two ends.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeGluing {
    /// `C_j` to `C_j` and `C′_j` to `C′_j`. Orientable only for bipartite graphs.
    Identity,
    /// `C_j` to `C′_j` and `C′_j` to `C_j`, through the map the block
    /// involution induces. Orientable for every graph.
    #[default]
    Crossed,
}

impl EdgeGluing {
    /// Pairs of boundary indices glued along an edge of each color, for
    /// components listed as `[C_1..C_4, C′_1..C′_4]`.
    pub fn scheme(self) -> Vec<Vec<(usize, usize)>> {
        (0..4)
            .map(|j| match self {
                EdgeGluing::Identity => vec![(j, j), (4 + j, 4 + j)],
                EdgeGluing::Crossed => vec![(j, 4 + j)],
            })
            .collect()
    }
}

/// One copy of the block per vertex of the factor, glued along the edges as
/// `gluing` prescribes. Cells of copy `v` are `v·|B| + c`.
pub fn build_manifold(f: &FactorGraph, block: &Block, gluing: EdgeGluing) -> Result<PairingComplex, CensusError> {
    let m = block.complex.glue_pairs_by_graph(&block.components, &labeled_graph(f), &gluing.scheme())?;
    if !m.is_closed() {
        return Err(CensusError::Construction(format!("{} boundary facets left over", m.boundary_facets().len())));
    }
    if !m.is_connected() {
        return Err(CensusError::Construction("manifold is disconnected".into()));
    }
    Ok(m)
}

/// The involution of M_G acting as the block involution in every copy.
pub fn manifold_involution(block: &Block, num_cells: usize) -> Vec<usize> {
    let b = block.complex.num_cells();
    (0..num_cells).map(|c| c / b * b + block.iota[c % b]).collect()
}

/// True iff every section is a torus `T_{2×4}` or `T_{2×2k}` with `2k ≥ 8`.
pub fn cusp_shapes_hold(sections: &[CuspSection]) -> bool {
    sections.iter().all(|s| matches!(s.shape, CuspShape::Torus { h } if h == 4 || (h >= 8 && h % 2 == 0)))
}

/// Recovers the gluing graph from the complex alone: blocks are the
/// components of the cell–torus-cusp incidence graph (8-tile sections of
/// systole 2), and two blocks are adjacent when some cells of them are glued.
pub fn recover_graph(m: &PairingComplex, block_cells: usize) -> Result<SimpleGraph, CensusError> {
    let groups = torus_cusp_components(m)?;
    let mut block_of = vec![usize::MAX; m.num_cells()];
    for (k, g) in groups.iter().enumerate() {
        if g.len() != block_cells {
            return Err(CensusError::Recovery(format!("component {k} has {} cells, not {block_cells}", g.len())));
        }
        for &c in g {
            block_of[c] = k;
        }
    }
    if groups.len() * block_cells != m.num_cells() {
        return Err(CensusError::Recovery("cells outside every block".into()));
    }
    let mut g = SimpleGraph::new(groups.len()).map_err(CensusError::Graph)?;
    for c in 0..m.num_cells() {
        for f in 0..m.num_facets() {
            if let Some(d) = m.partner(c, f) {
                if block_of[c] != block_of[d] {
                    g.add_edge(block_of[c], block_of[d]).map_err(CensusError::Graph)?;
                }
            }
        }
    }
    Ok(g)
}

/// Hyperbolic volume of a complex of ideal octahedra or of copies of P³.
pub fn volume3(m: &PairingComplex) -> Result<f64, CensusError> {
    let per_cell = match m.polytope().name.as_str() {
        "octahedron" => ideal_octahedron_volume(),
        "p3" => P3_PYRAMIDS as f64 * VOL_Q3,
        other => return Err(CensusError::Construction(format!("no volume known for cell type {other}"))),
    };
    Ok(per_cell * m.num_cells() as f64)
}

/// Cusp sections of M_G.
pub fn manifold_cusps(m: &PairingComplex) -> Result<Vec<CuspSection>, CensusError> {
    Ok(cusp_links(m)?)
}
