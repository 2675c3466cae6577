//! The 4-dimensional block B⁴ over B and the promotion of M_G to a
//! 4-manifold W_G with totally geodesic boundary M_G.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::blocks::{is_automorphism, is_fixed_point_free, Block, Family, ANTIPODAL_PAIRS};
use crate::complex::{
    boundary_components, canonical_code, euler_characteristic, facet_complex, orientability, walk_ridge, CellType,
    Coloring, FaceClasses, PairingComplex,
};
use crate::geometry::{cell24, isomorphisms, orbit_polytope, IsoOptions};
use crate::graphs::FactorGraph;

use super::manifold::{labeled_graph, manifold_involution, EdgeGluing};
use super::{CensusError, SciReal};

/// Facet classes of the 4-dimensional cell type relative to the bottom facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FacetRole {
    Bottom,
    Vertical,
    Top,
}

/// B⁴: the coloring quotient of one 4-dimensional cell whose bottom facet
/// complex is the block B.
#[derive(Clone, Debug)]
pub struct Block4 {
    pub family: Family,
    pub complex: PairingComplex,
    pub bottom: usize,
    pub roles: Vec<FacetRole>,
    /// Bottom facet polytope facet ↦ facet of the 3-dimensional cell type.
    pub bottom_iso: Vec<usize>,
    /// Vertical facet left uncolored, lying over the outer facet of B.
    pub outer_vertical: usize,
    /// Boundary components made of top facets; N is their number.
    pub top_components: Vec<Vec<(usize, usize)>>,
    /// Top component index of each facet slot `cell·F + f`.
    top_color: Vec<Option<u32>>,
    /// Cells of B⁴ per cube vertex.
    pub prime_cells: usize,
}

impl Block4 {
    /// N: the number of colors used on the top facets.
    pub fn num_top(&self) -> usize {
        self.top_components.len()
    }

    pub fn top_color(&self, cell: usize, facet: usize) -> Option<usize> {
        self.top_color[cell * self.complex.num_facets() + facet].map(|c| c as usize)
    }

    pub fn count_roles(&self, role: FacetRole) -> usize {
        self.roles.iter().filter(|&&r| r == role).count()
    }

    /// Bottom facet slots of every cell of a complex over the same cell type.
    fn bottom_slots(&self, x: &PairingComplex) -> Vec<(usize, usize)> {
        (0..x.num_cells()).map(|c| (c, self.bottom)).collect()
    }

    /// The bottom facet complex of `x` expressed over the 3-dimensional cell
    /// type `target`.
    pub fn bottom_complex(&self, x: &PairingComplex, target: &PairingComplex) -> Result<PairingComplex, CensusError> {
        let (fc, _, _) = facet_complex(x, &self.bottom_slots(x))?;
        Ok(fc.transport(target.cell_type().clone(), &self.bottom_iso)?)
    }
}

/// Builds B⁴ for a block: the 24-cell over the octahedron, P⁴ over P³. Each
/// vertical facet takes the color of the bottom face it meets under the
/// coloring that produces B; bottom and top facets stay uncolored.
pub fn build_block4(block: &Block) -> Result<Block4, CensusError> {
    let cell = match block.family {
        Family::Arithmetic => cell24(),
        Family::NonArithmetic => orbit_polytope("p4")?.polytope,
    };
    let bottom = match block.family {
        Family::Arithmetic => 0,
        Family::NonArithmetic => cell
            .facet_labels()
            .iter()
            .position(|l| l == "A")
            .ok_or_else(|| CensusError::Construction("P4 has no facet A".into()))?,
    };
    let (bp, nbrs) = cell.facet_polytope(bottom)?;
    let target = block.complex.polytope();
    let bottom_iso = isomorphisms(&bp, target, IsoOptions::LATTICE, 1)
        .pop()
        .ok_or_else(|| CensusError::Construction("bottom facet is not the block's cell type".into()))?;
    let full = block.full_coloring();
    let mut colors = vec![None; cell.num_facets()];
    let mut roles = vec![FacetRole::Top; cell.num_facets()];
    roles[bottom] = FacetRole::Bottom;
    let mut outer_vertical = usize::MAX;
    for (l, &g) in nbrs.iter().enumerate() {
        roles[g] = FacetRole::Vertical;
        colors[g] = full.colors[bottom_iso[l]];
        if bottom_iso[l] == block.outer_facet {
            outer_vertical = g;
        }
    }
    let coloring = Coloring { colors };
    let complex = PairingComplex::new(CellType::new(cell), 1).coloring_quotient(&coloring)?;
    let nf = complex.num_facets();
    let top_components: Vec<Vec<(usize, usize)>> = boundary_components(&complex)
        .into_iter()
        .filter(|comp| comp.iter().all(|s| roles[s.1] == FacetRole::Top))
        .collect();
    let mut top_color = vec![None; complex.num_cells() * nf];
    for (k, comp) in top_components.iter().enumerate() {
        for &(c, f) in comp {
            top_color[c * nf + f] = Some(k as u32);
        }
    }
    if let Some(c) = (0..complex.num_cells())
        .find(|&c| (0..nf).any(|f| roles[f] == FacetRole::Top && top_color[c * nf + f].is_none()))
    {
        return Err(CensusError::Construction(format!("a top facet of cell {c} lies in a mixed boundary component")));
    }
    let prime_cells = block.prime_cells();
    Ok(Block4 {
        family: block.family,
        complex,
        bottom,
        roles,
        bottom_iso,
        outer_vertical,
        top_components,
        top_color,
        prime_cells,
    })
}

/// The promoted 4-manifold, kept implicit: W′ is built explicitly, W″ is the
/// coloring quotient of W′ by N colors on its top facets and W_G is W″ with
/// all but one boundary copy of M_G closed up by the free involution.
#[derive(Clone, Debug, Serialize)]
pub struct Promotion {
    /// N, the number of top colors.
    pub top_colors: usize,
    pub w_prime_cells: usize,
    /// 2^N · |W′|.
    #[serde(serialize_with = "super::big_as_string")]
    pub w_double_prime_cells: BigInt,
    #[serde(serialize_with = "super::big_as_string")]
    pub chi_w_double_prime: BigInt,
    #[serde(serialize_with = "super::big_as_string")]
    pub chi_w: BigInt,
    #[serde(serialize_with = "super::big_as_string")]
    pub chi_double: BigInt,
    pub chi_boundary: i64,
    /// Number of boundary components of W″ (each a copy of M_G).
    #[serde(serialize_with = "super::big_as_string")]
    pub boundary_copies: BigInt,
    /// The bottom of W′ has the canonical code of M_G.
    pub boundary_match: bool,
    /// No corner remains: every vertical facet of W′ is glued, the top colors
    /// are proper and the bottom meets no boundary facet.
    pub corner_free: bool,
    /// W′ orientable and the involution of M_G free and orientation-reversing.
    pub orientable: bool,
}

/// Promotes M_G (built from `f`, `block` and `gluing`) through W′ and W″ to W_G and its
/// double D(W_G).
pub fn promote(
    f: &FactorGraph,
    block: &Block,
    b4: &Block4,
    m: &PairingComplex,
    m_code: &str,
    gluing: EdgeGluing,
) -> Result<Promotion, CensusError> {
    let pc = b4.prime_cells;
    let comps: Vec<Vec<(usize, usize)>> = ANTIPODAL_PAIRS
        .iter()
        .map(|p| p.0)
        .chain(ANTIPODAL_PAIRS.iter().map(|p| p.1))
        .map(|v| (0..pc).map(|c| (v * pc + c, b4.outer_vertical)).collect())
        .collect();
    let w = b4.complex.glue_pairs_by_graph(&comps, &labeled_graph(f), &gluing.scheme())?;
    let cells4 = b4.complex.num_cells();
    let nf = w.num_facets();
    let p = w.polytope();
    let color_of = |c: usize, g: usize| b4.top_color(c % cells4, g);

    let mut corner_free = true;
    for c in 0..w.num_cells() {
        for g in 0..nf {
            if w.partner(c, g).is_some() {
                continue;
            }
            match b4.roles[g] {
                FacetRole::Vertical => corner_free = false,
                FacetRole::Bottom => {
                    corner_free &= p.neighbours(g).into_iter().all(|h| walk_ridge(&w, c, g, h).1 == g);
                }
                FacetRole::Top => {
                    for h in p.neighbours(g) {
                        let (d, e) = walk_ridge(&w, c, g, h);
                        if e != g && (b4.roles[e] != FacetRole::Top || color_of(c, g) == color_of(d, e)) {
                            corner_free = false;
                        }
                    }
                }
            }
        }
    }

    let n_top = b4.num_top();
    let chi2 = quotient_euler(&w, n_top, color_of);

    let chi_m = euler_characteristic(m).total;
    let copies = BigInt::one() << n_top;
    let boundary_copies = copies.clone();
    // closing a boundary copy S by a free involution changes χ by −χ(S)/2
    let chi_w = &chi2 - (&copies - 1) * BigInt::from(chi_m) / 2;
    let chi_double = BigInt::from(2) * &chi_w - chi_m;

    let bottom = b4.bottom_complex(&w, m)?;
    let boundary_match = canonical_code(&bottom).hex == m_code;

    let iota = manifold_involution(block, m.num_cells());
    let om = orientability(m);
    let orientable = orientability(&w).orientable
        && om.orientable
        && is_automorphism(m, &iota)
        && is_fixed_point_free(m, &iota)
        && (0..m.num_cells()).all(|c| om.signs[iota[c]] == -om.signs[c]);

    Ok(Promotion {
        top_colors: n_top,
        w_prime_cells: w.num_cells(),
        w_double_prime_cells: copies * w.num_cells(),
        chi_w_double_prime: chi2,
        chi_w,
        chi_double,
        chi_boundary: chi_m,
        boundary_copies,
        boundary_match,
        corner_free,
        orientable,
    })
}

/// Euler characteristic of the coloring quotient of `x` by `k` colors given
/// on its boundary slots, without building the `2^k` copies: an open face on
/// boundary facets of `t` distinct colors has `2^(k−t)` copies.
pub fn quotient_euler(x: &PairingComplex, k: usize, color_of: impl Fn(usize, usize) -> Option<usize>) -> BigInt {
    let p = x.polytope();
    let classes = FaceClasses::new(x);
    let mut colors_of: Vec<Vec<usize>> = vec![Vec::new(); classes.num_classes];
    let mut dim_of = vec![0usize; classes.num_classes];
    for c in 0..x.num_cells() {
        for (i, &f) in classes.faces.iter().enumerate() {
            let face = p.face(f);
            let cl = classes.class(c, i);
            dim_of[cl] = face.dim;
            for &g in &face.facets {
                if x.partner(c, g).is_none() {
                    if let Some(col) = color_of(c, g) {
                        colors_of[cl].push(col);
                    }
                }
            }
        }
    }
    let mut tally: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (cl, cols) in colors_of.iter_mut().enumerate() {
        cols.sort_unstable();
        cols.dedup();
        *tally.entry((dim_of[cl], cols.len())).or_insert(0) += 1;
    }
    *tally.entry((p.dim(), 0)).or_insert(0) += x.num_cells() as i64;
    let mut chi = BigInt::zero();
    for (&(dim, t), &count) in &tally {
        let term = (BigInt::one() << (k - t)) * count;
        if dim % 2 == 0 {
            chi += term;
        } else {
            chi -= term;
        }
    }
    chi
}

/// Volume of a hyperbolic 4-manifold from its Euler characteristic by
/// Gauss–Bonnet, `(4π²/3)·χ`.
pub fn volume4(chi: &BigInt) -> Result<SciReal, CensusError> {
    if !chi.is_positive() {
        return Err(CensusError::Construction(format!("χ = {chi} is not positive")));
    }
    Ok(SciReal::from_bigint(chi).scale(4.0 * PI * PI / 3.0))
}
