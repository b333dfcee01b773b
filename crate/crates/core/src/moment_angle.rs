//! Betti numbers of real and complex moment-angle complexes.
//!
//! Two independent routes: Hochster sums over full subcomplexes, and a cubical cell
//! model of `RZ_K ⊆ [−1,1]^m` whose homology is computed directly. The subdivided
//! cubical model splits every interval at 0 so the fixed set of a coordinate
//! reflection is a subcomplex.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::{reduced_betti, BettiTable};
use crate::error::{Error, Result};
use crate::f2::{BitVector, F2Matrix};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Largest ambient size accepted by the Hochster sums (`2^m` full subcomplexes).
pub const HOCHSTER_CAP: usize = 20;

/// Default largest ambient size for building cubical models; override with the
/// `RACG_CUBICAL_CAP` environment variable.
pub const DEFAULT_CUBICAL_CAP: usize = 8;

/// Hard limit of the packed cell encoding (3 bits per coordinate in a `u64`).
pub const CUBICAL_LABEL_LIMIT: u32 = 21;

/// Below this size the Hochster subsets are summed on the calling thread.
const PARALLEL_HOCHSTER_FROM: usize = 12;

pub fn cubical_cap() -> usize {
    std::env::var("RACG_CUBICAL_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CUBICAL_CAP)
}

/// Betti numbers of a space, degrees `0, 1, 2, ...`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SpaceBettiTable {
    dims: Vec<usize>,
}

impl SpaceBettiTable {
    pub fn new(mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        SpaceBettiTable { dims }
    }

    pub fn zero() -> Self {
        SpaceBettiTable::default()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn get(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, _)| k)
            .collect()
    }

    fn add(&mut self, degree: usize, n: usize) {
        if n == 0 {
            return;
        }
        if self.dims.len() <= degree {
            self.dims.resize(degree + 1, 0);
        }
        self.dims[degree] += n;
    }

    pub fn as_betti_table(&self) -> BettiTable {
        BettiTable::new(0, self.dims.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceBettiJson {
    min_degree: i32,
    dims: Vec<usize>,
    total: usize,
}

impl Serialize for SpaceBettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceBettiJson {
            min_degree: 0,
            dims: self.dims.clone(),
            total: self.total(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpaceBettiTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SpaceBettiJson::deserialize(deserializer)?;
        if json.min_degree != 0 || json.total != json.dims.iter().sum::<usize>() {
            return Err(serde::de::Error::custom("inconsistent space Betti table"));
        }
        Ok(SpaceBettiTable::new(json.dims))
    }
}

/// Reduced Betti tables of every full subcomplex `K_J`, keyed by `J`.
///
/// Both Hochster sums read from the same table, so each `K_J` is computed once.
#[derive(Clone, Debug)]
pub struct HochsterDecomposition {
    summands: Vec<(VertexSet, BettiTable)>,
}

impl HochsterDecomposition {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let m = k.m();
        if m > HOCHSTER_CAP {
            return Err(Error::TooManyVertices {
                what: "Hochster sum",
                m,
                cap: HOCHSTER_CAP,
            });
        }
        let subsets: Vec<VertexSet> = k.ambient().subsets().collect();
        let summands = if m >= PARALLEL_HOCHSTER_FROM {
            subsets
                .into_par_iter()
                .map(|j| (j, reduced_betti(&k.full_subcomplex(j))))
                .collect()
        } else {
            subsets
                .into_iter()
                .map(|j| (j, reduced_betti(&k.full_subcomplex(j))))
                .collect()
        };
        Ok(HochsterDecomposition { summands })
    }

    pub fn summands(&self) -> &[(VertexSet, BettiTable)] {
        &self.summands
    }

    pub fn summand(&self, j: VertexSet) -> Option<&BettiTable> {
        self.summands
            .binary_search_by_key(&j, |(s, _)| *s)
            .ok()
            .map(|i| &self.summands[i].1)
    }

    /// `b_n(RZ_K) = Σ_J dim H̃^{n−1}(K_J)`.
    pub fn real(&self) -> SpaceBettiTable {
        let mut table = SpaceBettiTable::zero();
        for (_, betti) in &self.summands {
            for (d, n) in betti.nonzero() {
                table.add((d + 1) as usize, n);
            }
        }
        table
    }

    /// `b_n(Z_K) = Σ_J dim H̃^{n−|J|−1}(K_J)`.
    pub fn complex(&self) -> SpaceBettiTable {
        let mut table = SpaceBettiTable::zero();
        for (j, betti) in &self.summands {
            for (d, n) in betti.nonzero() {
                table.add((d + 1) as usize + j.len(), n);
            }
        }
        table
    }
}

pub fn hochster_real_betti(k: &SimplicialComplex) -> Result<SpaceBettiTable> {
    Ok(HochsterDecomposition::new(k)?.real())
}

pub fn hochster_complex_betti(k: &SimplicialComplex) -> Result<SpaceBettiTable> {
    Ok(HochsterDecomposition::new(k)?.complex())
}

/// The closed subset of `[−1, 1]` a cell occupies in one coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
#[repr(u8)]
pub enum Interval {
    /// `{−1}`
    Minus = 1,
    /// `{1}`
    Plus = 2,
    /// `{0}`
    Zero = 3,
    /// `[−1, 1]`
    Full = 4,
    /// `[−1, 0]`
    Lower = 5,
    /// `[0, 1]`
    Upper = 6,
}

impl Interval {
    fn from_code(code: u64) -> Option<Interval> {
        Some(match code {
            1 => Interval::Minus,
            2 => Interval::Plus,
            3 => Interval::Zero,
            4 => Interval::Full,
            5 => Interval::Lower,
            6 => Interval::Upper,
            _ => return None,
        })
    }

    pub fn is_interval(self) -> bool {
        matches!(self, Interval::Full | Interval::Lower | Interval::Upper)
    }

    /// Whether the open part avoids `±1`, i.e. the coordinate is "inside the disc".
    pub fn is_interior(self) -> bool {
        !matches!(self, Interval::Minus | Interval::Plus)
    }

    pub fn endpoints(self) -> Option<(Interval, Interval)> {
        match self {
            Interval::Full => Some((Interval::Minus, Interval::Plus)),
            Interval::Lower => Some((Interval::Minus, Interval::Zero)),
            Interval::Upper => Some((Interval::Zero, Interval::Plus)),
            _ => None,
        }
    }

    /// Image under `x ↦ −x`.
    pub fn reflect(self) -> Interval {
        match self {
            Interval::Minus => Interval::Plus,
            Interval::Plus => Interval::Minus,
            Interval::Lower => Interval::Upper,
            Interval::Upper => Interval::Lower,
            other => other,
        }
    }
}

/// A cube in `[−1,1]^m`: one [`Interval`] per ambient coordinate, packed 3 bits per
/// vertex label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(u64);

impl Cell {
    fn shift(v: u32) -> u32 {
        3 * (v - 1)
    }

    pub fn label(self, v: u32) -> Option<Interval> {
        Interval::from_code(self.0 >> Self::shift(v) & 0b111)
    }

    pub fn with_label(self, v: u32, label: Interval) -> Cell {
        let s = Self::shift(v);
        Cell(self.0 & !(0b111 << s) | (label as u64) << s)
    }

    /// Coordinates labelled by an interval.
    pub fn dimension(self, ambient: VertexSet) -> usize {
        ambient
            .iter()
            .filter(|&v| self.label(v).is_some_and(Interval::is_interval))
            .count()
    }

    /// Coordinates whose label is not `{±1}`.
    pub fn interior_support(self, ambient: VertexSet) -> VertexSet {
        ambient
            .iter()
            .filter(|&v| self.label(v).is_some_and(Interval::is_interior))
            .fold(VertexSet::EMPTY, VertexSet::with)
    }

    /// Codimension-one faces (mod 2 boundary).
    pub fn boundary(self, ambient: VertexSet) -> Vec<Cell> {
        let mut out = Vec::new();
        for v in ambient.iter() {
            if let Some((a, b)) = self.label(v).and_then(Interval::endpoints) {
                out.push(self.with_label(v, a));
                out.push(self.with_label(v, b));
            }
        }
        out
    }

    /// Image under the coordinate reflections in `coords`.
    pub fn reflect(self, coords: VertexSet) -> Cell {
        coords.iter().fold(self, |c, v| match c.label(v) {
            Some(l) => c.with_label(v, l.reflect()),
            None => c,
        })
    }

    pub fn labels(self, ambient: VertexSet) -> Vec<(u32, Interval)> {
        ambient.iter().filter_map(|v| self.label(v).map(|l| (v, l))).collect()
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v = 1;
        let mut parts = Vec::new();
        while v <= CUBICAL_LABEL_LIMIT {
            if let Some(l) = self.label(v) {
                let s = match l {
                    Interval::Minus => "-1",
                    Interval::Plus => "1",
                    Interval::Zero => "0",
                    Interval::Full => "[-1,1]",
                    Interval::Lower => "[-1,0]",
                    Interval::Upper => "[0,1]",
                };
                parts.push(format!("x{v}={s}"));
            }
            v += 1;
        }
        write!(f, "Cell({})", parts.join(" "))
    }
}

/// A cubical subcomplex of `[−1,1]^m`, with cells sorted by (dimension, code).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalComplex {
    ambient: VertexSet,
    subdivided: bool,
    cells: Vec<Cell>,
}

impl CubicalComplex {
    fn from_cells(ambient: VertexSet, subdivided: bool, mut cells: Vec<Cell>) -> Self {
        cells.sort_unstable_by_key(|c| (c.dimension(ambient), *c));
        cells.dedup();
        CubicalComplex {
            ambient,
            subdivided,
            cells,
        }
    }

    pub fn ambient(&self) -> VertexSet {
        self.ambient
    }

    pub fn is_subdivided(&self) -> bool {
        self.subdivided
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_void(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cell counts indexed by dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for c in &self.cells {
            let d = c.dimension(self.ambient);
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        let d = cell.dimension(self.ambient);
        self.cells
            .binary_search_by_key(&(d, cell), |c| (c.dimension(self.ambient), *c))
            .is_ok()
    }
}

/// Cell model of `RZ_K = (D¹, S⁰)^K`.
///
/// Unsubdivided: cells `(σ, ε)` with `σ ∈ K` the interval coordinates and signs `ε`
/// elsewhere. Subdivided: each interval coordinate is one of `{0}, [−1,0], [0,1]`.
/// A cell belongs to the model iff its interior support is a face of `K`.
pub fn build_cubical(k: &SimplicialComplex, subdivided: bool) -> Result<CubicalComplex> {
    build_cubical_capped(k, subdivided, cubical_cap())
}

pub fn build_cubical_capped(k: &SimplicialComplex, subdivided: bool, cap: usize) -> Result<CubicalComplex> {
    let ambient = k.ambient();
    if k.m() > cap {
        return Err(Error::TooManyVertices {
            what: "cubical model",
            m: k.m(),
            cap,
        });
    }
    if ambient.max_vertex() > CUBICAL_LABEL_LIMIT {
        return Err(Error::TooManyVertices {
            what: "cubical cell encoding",
            m: ambient.max_vertex() as usize,
            cap: CUBICAL_LABEL_LIMIT as usize,
        });
    }
    let interior: &[Interval] = if subdivided {
        &[Interval::Zero, Interval::Lower, Interval::Upper]
    } else {
        &[Interval::Full]
    };
    let mut cells = Vec::new();
    for &sigma in k.faces() {
        let mut partial = vec![Cell(0)];
        for v in ambient.iter() {
            let choices: &[Interval] = if sigma.contains(v) {
                interior
            } else {
                &[Interval::Minus, Interval::Plus]
            };
            partial = partial
                .into_iter()
                .flat_map(|c| choices.iter().map(move |&l| c.with_label(v, l)))
                .collect();
        }
        cells.extend(partial);
    }
    Ok(CubicalComplex::from_cells(ambient, subdivided, cells))
}

/// `F₂` homology of a cubical complex.
pub fn cubical_betti(c: &CubicalComplex) -> SpaceBettiTable {
    let ambient = c.ambient;
    let mut by_dim: Vec<Vec<Cell>> = Vec::new();
    for &cell in &c.cells {
        let d = cell.dimension(ambient);
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(cell);
    }
    let index: Vec<HashMap<Cell, usize>> = by_dim
        .iter()
        .map(|cells| cells.iter().enumerate().map(|(i, &c)| (c, i)).collect())
        .collect();
    // ranks[d] = rank of ∂: C_d → C_{d−1}; ∂_0 = 0.
    let ranks: Vec<usize> = (0..by_dim.len())
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                return 0;
            }
            let cols = by_dim[d - 1].len();
            let rows = by_dim[d]
                .iter()
                .map(|cell| {
                    let mut row = BitVector::zeros(cols);
                    for face in cell.boundary(ambient) {
                        let i = index[d - 1][&face];
                        row.set(i, !row.get(i));
                    }
                    row
                })
                .collect();
            F2Matrix::from_rows(cols, rows).rank()
        })
        .collect();
    let dims = (0..by_dim.len())
        .map(|d| by_dim[d].len() - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect();
    SpaceBettiTable::new(dims)
}

/// Points fixed by the reflections in `subset`: cells labelled `{0}` on every coordinate
/// of `subset`. Requires the subdivided model.
pub fn fixed_subcomplex(c: &CubicalComplex, subset: VertexSet) -> Result<CubicalComplex> {
    if !c.subdivided {
        return Err(Error::RequiresSubdivided);
    }
    if let Some(v) = subset.difference(c.ambient).iter().next() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            ambient: c.ambient,
        });
    }
    let cells = c
        .cells
        .iter()
        .copied()
        .filter(|cell| subset.iter().all(|v| cell.label(v) == Some(Interval::Zero)))
        .collect();
    Ok(CubicalComplex {
        ambient: c.ambient,
        subdivided: true,
        cells,
    })
}

/// Cells mapped to themselves by every reflection in `generators`, each generator
/// acting by reflecting the coordinates in its support. In the subdivided model a
/// cell is invariant exactly when it is pointwise fixed.
pub fn invariant_cells(c: &CubicalComplex, generators: &[BitVector]) -> Result<Vec<Cell>> {
    if !c.subdivided {
        return Err(Error::RequiresSubdivided);
    }
    Ok(c.cells
        .iter()
        .copied()
        .filter(|cell| generators.iter().all(|g| cell.reflect(g.support()) == *cell))
        .collect())
}

/// Betti numbers of the fixed set of `Z₂^I` on `RZ_K`, computed as `RZ` of the link
/// of `I` over `ambient ∖ I` (ghost coordinates contribute `S⁰` factors), or zero when
/// `I ∉ K`.
pub fn fixed_betti_via_link(k: &SimplicialComplex, subset: VertexSet) -> Result<SpaceBettiTable> {
    if !k.contains(subset) {
        return Ok(SpaceBettiTable::zero());
    }
    hochster_real_betti(&k.link(subset)?)
}

/// Complex analogue: Betti numbers of `(Z_K)^{T^I} ≅ Z_{lk I}`, or zero when `I ∉ K`.
pub fn torus_fixed_betti(k: &SimplicialComplex, subset: VertexSet) -> Result<SpaceBettiTable> {
    if !k.contains(subset) {
        return Ok(SpaceBettiTable::zero());
    }
    hochster_complex_betti(&k.link(subset)?)
}
