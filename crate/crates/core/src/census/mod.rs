//! The census pipeline: for every factorable 4-regular graph, build M_G, check
//! its cusps, recover the graph, promote to W_G and D(W_G), account volumes
//! and emit one record.

mod block4;
mod manifold;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::{build_block, Block, BlockError, Family};
use crate::complex::{canonical_code, census_string, cusp_census, euler_characteristic, orientability, ComplexError};
use crate::geometry::GeometryError;
use crate::graphs::{canonical_form, enumerate_regular, one_factorization, FactorGraph, GraphError};

pub use block4::{build_block4, promote, quotient_euler, volume4, Block4, FacetRole, Promotion};
pub use manifold::{
    build_manifold, cusp_shapes_hold, labeled_graph, manifold_cusps, manifold_involution, recover_graph, volume3,
    EdgeGluing, P3_PYRAMIDS, VOL_Q3,
};
pub use verify::{verify, VerifyCheck, VERIFY_IDS};

/// Largest vertex count the enumeration reaches in minutes.
pub const FEASIBLE_MAX_N: usize = 11;

/// Rough enumeration time in seconds for vertex count `n`, extrapolated from
/// the measured 82 s at `n = 11` and a growth factor of about 13 per vertex.
pub fn enumeration_estimate_secs(n: usize) -> f64 {
    82.0 * 13f64.powi(n as i32 - 11)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(GraphError),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("recovery failed: {0}")]
    Recovery(String),
    #[error("unknown check `{id}`; available: {available}")]
    UnknownCheck { id: String, available: String },
}

pub(crate) fn big_as_string<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn ser_sig12<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(sig12(*x))
}

/// A positive real `mantissa · 10^exponent` with `1 ≤ mantissa < 10`, for
/// volumes beyond the range of `f64`. Printed and parsed with 12 significant
/// digits, e.g. `1.02491831854e35`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SciReal {
    pub mantissa: f64,
    pub exponent: i64,
}

impl SciReal {
    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self { mantissa: x, exponent: 0 };
        }
        let e = x.abs().log10().floor() as i64;
        Self { mantissa: x / 10f64.powi(e as i32), exponent: e }.normalized()
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let text = x.magnitude().to_string();
        let head = &text[..text.len().min(17)];
        let m: f64 = head.parse().expect("decimal digits");
        let exponent = text.len() as i64 - 1;
        let mantissa = m / 10f64.powi(head.len() as i32 - 1);
        let sign = if x.sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        Self { mantissa: sign * mantissa, exponent }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.mantissa.abs() >= 10.0 {
            self.mantissa /= 10.0;
            self.exponent += 1;
        }
        while self.mantissa != 0.0 && self.mantissa.abs() < 1.0 {
            self.mantissa *= 10.0;
            self.exponent -= 1;
        }
        self
    }

    pub fn scale(self, k: f64) -> Self {
        let s = Self::from_f64(k);
        Self { mantissa: self.mantissa * s.mantissa, exponent: self.exponent + s.exponent }.normalized()
    }

    /// The value as printed, so that a record equals its own serialization.
    pub fn rounded(self) -> Self {
        self.to_string().parse().expect("printed SciReal parses")
    }

    /// Nearest `f64`, infinite when out of range.
    pub fn to_f64(self) -> f64 {
        self.mantissa * 10f64.powi(self.exponent.clamp(-400, 400) as i32)
    }

    /// Relative difference, usable far outside the `f64` range.
    pub fn relative_diff(self, other: SciReal) -> f64 {
        ((self / other).to_f64() - 1.0).abs()
    }
}

impl std::ops::Div for SciReal {
    type Output = SciReal;
    fn div(self, other: SciReal) -> SciReal {
        SciReal { mantissa: self.mantissa / other.mantissa, exponent: self.exponent - other.exponent }.normalized()
    }
}

impl std::fmt::Display for SciReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // round the mantissa first so that 9.99999999999995 carries into the exponent
        let r = SciReal::from_f64(format!("{:.11}", self.mantissa).parse().expect("float"));
        write!(f, "{:.11}e{}", r.mantissa, r.exponent + self.exponent)
    }
}

impl std::str::FromStr for SciReal {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, e) = s.split_once(['e', 'E']).unwrap_or((s, "0"));
        let mantissa: f64 = m.parse().map_err(|_| format!("bad mantissa in `{s}`"))?;
        let exponent: i64 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
        Ok(Self { mantissa, exponent }.normalized())
    }
}

impl Serialize for SciReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SciReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Verification flags of one record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub orientable: bool,
    pub closed: bool,
    pub cusp_shapes: bool,
    /// `None` when recovery is not attempted (non-arithmetic family).
    pub recovery: Option<bool>,
    pub boundary_match: bool,
    pub corner_free: bool,
}

impl Flags {
    pub fn all(&self) -> bool {
        self.orientable
            && self.closed
            && self.cusp_shapes
            && self.recovery.unwrap_or(true)
            && self.boundary_match
            && self.corner_free
    }
}

/// One manifold of the census.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub family: String,
    pub n: usize,
    pub graph_code: String,
    /// Mate table of the 1-factorization used, colors in order `1..4`.
    pub factor: Vec<[usize; 4]>,
    pub complex_code: String,
    pub cells: usize,
    /// Automorphisms of M_G as a pairing complex.
    pub automorphisms: usize,
    pub cusps: String,
    #[serde(serialize_with = "ser_sig12")]
    pub vol3: f64,
    pub chi3: i64,
    /// χ(W_G), exact.
    pub chi4: String,
    /// χ(D(W_G)), exact.
    pub chi_double: String,
    /// N, the number of top colors of B⁴.
    pub top_colors: usize,
    pub vol4: SciReal,
    pub vol_double: SciReal,
    pub ratio_k: SciReal,
    pub flags: Flags,
    pub accepted: bool,
    /// Why a record was not accepted.
    pub diagnosis: Vec<String>,
    /// How distinctness is certified: `graph-recovery` or `complex-code`.
    pub certificate: String,
}

/// Blocks of one family, built once and shared by all workers.
pub struct CensusContext {
    pub family: Family,
    pub block: Block,
    pub block4: Block4,
    pub gluing: EdgeGluing,
}

impl CensusContext {
    pub fn new(family: Family) -> Result<Self, CensusError> {
        Self::with_gluing(family, EdgeGluing::default())
    }

    pub fn with_gluing(family: Family, gluing: EdgeGluing) -> Result<Self, CensusError> {
        let block = build_block(family)?;
        let block4 = build_block4(&block)?;
        Ok(Self { family, block, block4, gluing })
    }

    /// True iff relabeling the vertices of `f` by `perm` leaves the complex
    /// code of M_G unchanged.
    pub fn relabel_invariant(&self, f: &FactorGraph, perm: &[usize]) -> Result<bool, CensusError> {
        let g = f.relabel(perm).map_err(CensusError::Graph)?;
        let a = canonical_code(&build_manifold(f, &self.block, self.gluing)?);
        let b = canonical_code(&build_manifold(&g, &self.block, self.gluing)?);
        Ok(a.hex == b.hex)
    }

    /// Builds, verifies and promotes the manifold of one factor.
    pub fn record(&self, f: &FactorGraph) -> CensusRecord {
        let mut rec = CensusRecord {
            family: self.family.to_string(),
            n: f.n(),
            graph_code: canonical_form(&f.graph).to_string(),
            factor: f.mate.clone(),
            certificate: match self.family {
                Family::Arithmetic => "graph-recovery",
                Family::NonArithmetic => "complex-code",
            }
            .into(),
            ..Default::default()
        };
        if let Err(e) = self.fill(f, &mut rec) {
            rec.diagnosis.push(e.to_string());
        }
        if !rec.flags.all() && rec.diagnosis.is_empty() {
            rec.diagnosis.push(format!("failed flags: {:?}", rec.flags));
        }
        rec.accepted = rec.diagnosis.is_empty();
        rec
    }

    fn fill(&self, f: &FactorGraph, rec: &mut CensusRecord) -> Result<(), CensusError> {
        let m = build_manifold(f, &self.block, self.gluing)?;
        rec.cells = m.num_cells();
        rec.flags.closed = m.is_closed();
        let code = canonical_code(&m);
        rec.complex_code = code.hex.clone();
        rec.automorphisms = code.automorphisms;
        let sections = manifold_cusps(&m)?;
        rec.cusps = census_string(&cusp_census(&sections));
        rec.flags.cusp_shapes = cusp_shapes_hold(&sections);
        rec.flags.orientable = orientability(&m).orientable;
        rec.chi3 = euler_characteristic(&m).total;
        let vol3 = volume3(&m)?;
        rec.vol3 = sig12(vol3);
        if self.family == Family::Arithmetic {
            let recovered = recover_graph(&m, self.block.complex.num_cells());
            rec.flags.recovery = Some(recovered.is_ok_and(|g| canonical_form(&g) == canonical_form(&f.graph)));
        }
        let pr = promote(f, &self.block, &self.block4, &m, &code.hex, self.gluing)?;
        rec.flags.orientable &= pr.orientable;
        rec.flags.boundary_match = pr.boundary_match;
        rec.flags.corner_free = pr.corner_free;
        rec.chi4 = pr.chi_w.to_string();
        rec.chi_double = pr.chi_double.to_string();
        rec.top_colors = pr.top_colors;
        let vol4 = volume4(&pr.chi_w)?;
        rec.vol4 = vol4.rounded();
        rec.vol_double = volume4(&pr.chi_double)?.rounded();
        rec.ratio_k = (vol4 / SciReal::from_f64(vol3)).rounded();
        if rec.chi3 != 0 {
            return Err(CensusError::Construction(format!("χ(M_G) = {} is not zero", rec.chi3)));
        }
        Ok(())
    }
}

/// One row of the summary table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub graphs: usize,
    pub factorable: usize,
    pub manifolds: usize,
    pub vol3: Option<f64>,
    pub chi4: Option<String>,
    pub ratio_k: Option<SciReal>,
}

/// Census totals and the family-wide checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusSummary {
    pub family: String,
    pub rows: Vec<SummaryRow>,
    pub records: usize,
    pub accepted: usize,
    pub distinct_codes: usize,
    /// Distinct graphs gave distinct complex codes.
    pub injective: bool,
    /// χ(W_G)/n is one rational number across all accepted records.
    pub k_constant: bool,
    /// χ(W_G)/n as an exact fraction.
    pub chi_per_vertex: Option<String>,
    pub ratio_k: Option<SciReal>,
    pub top_colors: usize,
}

impl CensusSummary {
    pub fn passed(&self) -> bool {
        self.accepted == self.records && self.injective && self.k_constant
    }

    /// CSV with header `n,graphs,factorable,manifolds,vol3,chi4,K`; reals to
    /// 12 significant digits, empty cells where a row has no manifold.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,graphs,factorable,manifolds,vol3,chi4,K\n");
        let real = |x: Option<f64>| x.map(|v| format!("{v:.11e}")).unwrap_or_default();
        let sci = |x: Option<SciReal>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n,
                r.graphs,
                r.factorable,
                r.manifolds,
                real(r.vol3),
                r.chi4.clone().unwrap_or_default(),
                sci(r.ratio_k)
            ));
        }
        s
    }
}

/// Runs the census for all graphs with `5 ≤ n ≤ max_n`. Records already in
/// `previous` (matched by graph code) are kept and not recomputed; new records
/// are passed to `sink` in a deterministic order as each vertex count
/// finishes.
pub fn run_census(
    ctx: &CensusContext,
    max_n: usize,
    previous: &[CensusRecord],
    mut sink: impl FnMut(&CensusRecord),
) -> CensusSummary {
    let known: BTreeMap<&str, &CensusRecord> = previous.iter().map(|r| (r.graph_code.as_str(), r)).collect();
    let mut all: Vec<CensusRecord> = Vec::new();
    let mut rows = Vec::new();
    for n in 5..=max_n {
        let graphs = enumerate_regular(n);
        let factors: Vec<FactorGraph> = graphs.par_iter().filter_map(one_factorization).collect();
        let fresh: Vec<&FactorGraph> =
            factors.iter().filter(|f| !known.contains_key(canonical_form(&f.graph).to_string().as_str())).collect();
        let new_records: Vec<CensusRecord> = fresh.par_iter().map(|f| ctx.record(f)).collect();
        for r in &new_records {
            sink(r);
        }
        let mut here: Vec<CensusRecord> = factors
            .iter()
            .filter_map(|f| known.get(canonical_form(&f.graph).to_string().as_str()).map(|r| (*r).clone()))
            .collect();
        here.extend(new_records);
        here.sort_by(|a, b| a.graph_code.cmp(&b.graph_code));
        let accepted: Vec<&CensusRecord> = here.iter().filter(|r| r.accepted).collect();
        let codes: BTreeSet<&str> = accepted.iter().map(|r| r.complex_code.as_str()).collect();
        rows.push(SummaryRow {
            n,
            graphs: graphs.len(),
            factorable: factors.len(),
            manifolds: codes.len(),
            vol3: accepted.first().map(|r| r.vol3),
            chi4: accepted.first().map(|r| r.chi4.clone()),
            ratio_k: accepted.first().map(|r| r.ratio_k),
        });
        all.extend(here);
    }
    summarize(ctx, &all, rows)
}

fn summarize(ctx: &CensusContext, all: &[CensusRecord], rows: Vec<SummaryRow>) -> CensusSummary {
    let accepted: Vec<&CensusRecord> = all.iter().filter(|r| r.accepted).collect();
    let codes: BTreeSet<&str> = accepted.iter().map(|r| r.complex_code.as_str()).collect();
    let graph_codes: BTreeSet<&str> = accepted.iter().map(|r| r.graph_code.as_str()).collect();
    let ratios: BTreeSet<BigRational> = accepted
        .iter()
        .filter_map(|r| r.chi4.parse::<BigInt>().ok().map(|chi| BigRational::new(chi, BigInt::from(r.n))))
        .collect();
    CensusSummary {
        family: ctx.family.to_string(),
        rows,
        records: all.len(),
        accepted: accepted.len(),
        distinct_codes: codes.len(),
        injective: codes.len() == graph_codes.len(),
        k_constant: ratios.len() <= 1,
        chi_per_vertex: (ratios.len() == 1).then(|| ratios.iter().next().expect("one ratio").to_string()),
        ratio_k: accepted.first().map(|r| r.ratio_k),
        top_colors: ctx.block4.num_top(),
    }
}
