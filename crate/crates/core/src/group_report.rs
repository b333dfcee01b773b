//! Group-theoretic reading of a formality verdict.
//!
//! For a graph `Γ` and `A ≤ Z₂^m`, the coabelian subgroup is `G = ker(W_Γ → Z₂^m/A)`
//! and `A = G/[W_Γ, W_Γ]`. With `I = hull(A)` and `J = [m] ∖ I`, the companion group
//! is `G^⋊ = W̄_{Γ_I} ⋊ [W_{Γ_J}, W_{Γ_J}]`. Groups appear only as symbolic metadata;
//! every number in a report comes from Betti data of the clique complex.
//!
//! `corank(G)` is taken to be `m − rank(A)`, so the Cohen–Macaulay dimension
//! `m − corank(G)` equals `rank(A)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::Subgroup;
use crate::formality::{FormalityAnalyzer, FormalityReport, Verdict};
use crate::moment_angle::hochster_real_betti;
use crate::simplicial::{clique_complex, Graph, SimplicialComplex, VertexSet};

/// `numerator(t) / (1 − t)^r`, kept exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub numerator: Vec<u64>,
    pub r: usize,
}

impl PoincareSeries {
    /// Coefficients of `t^0, ..., t^degree`.
    pub fn expand(&self, degree: usize) -> Vec<u128> {
        (0..=degree)
            .map(|n| {
                self.numerator
                    .iter()
                    .enumerate()
                    .take(n + 1)
                    .map(|(s, &c)| c as u128 * multichoose(self.r, n - s))
                    .sum()
            })
            .collect()
    }
}

/// Coefficient of `t^k` in `(1 − t)^{−r}`, i.e. `C(k + r − 1, r − 1)`.
fn multichoose(r: usize, k: usize) -> u128 {
    if r == 0 {
        return u128::from(k == 0);
    }
    // C(k + r − 1, k), built incrementally so every intermediate is an integer.
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (r as u128 - 1 + i) / i;
    }
    acc
}

/// Poincaré series of a free `F₂[x₁..x_r]`-module whose generators are counted by the
/// Hochster table of `RZ_K`.
pub fn poincare_series(k: &SimplicialComplex, r: usize) -> Result<PoincareSeries> {
    let table = hochster_real_betti(k)?;
    Ok(PoincareSeries {
        numerator: table.dims().iter().map(|&d| d as u64).collect(),
        r,
    })
}

/// Presentation of `W_Γ`: involutions `g_i`, commuting along edges.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub commuting_pairs: Vec<[u32; 2]>,
}

impl Presentation {
    pub fn of(g: &Graph) -> Self {
        let generators = g.ambient().iter().map(|v| format!("g{v}")).collect();
        let mut relations: Vec<String> = g.ambient().iter().map(|v| format!("g{v}^2")).collect();
        relations.extend(g.edges().map(|(a, b)| format!("[g{a},g{b}]")));
        Presentation {
            generators,
            relations,
            commuting_pairs: g.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// `G^⋊ = W̄_{Γ_I} ⋊ [W_{Γ_J}, W_{Γ_J}]` as the pair `(I, J)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SemidirectDescription {
    pub normal_closure_on: VertexSet,
    pub commutator_on: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub gamma: Graph,
    #[serde(rename = "A")]
    pub subgroup: Subgroup,
    #[serde(rename = "I")]
    pub hull: VertexSet,
    #[serde(rename = "J")]
    pub complement: VertexSet,
    pub presentation: Presentation,
    #[serde(rename = "G_semidirect")]
    pub semidirect: SemidirectDescription,
    pub verdict: Verdict,
    pub rank: usize,
    pub corank: usize,
    /// Whether `Γ_I` is a complete graph.
    pub hull_is_clique: bool,
    pub cm_dimension: Option<usize>,
    pub poincare: Option<PoincareSeries>,
    pub formality: FormalityReport,
}

/// Builds the clique complex of `g`, decides formality for `a`, and on a formal
/// verdict attaches the Cohen–Macaulay dimension and the Poincaré series of
/// `H^*(G; F₂)`.
pub fn coabelian_report(g: &Graph, a: &Subgroup) -> Result<GroupReport> {
    let ambient = g.ambient();
    if ambient != VertexSet::full(a.ambient_rank()) {
        return Err(Error::AmbientMismatch {
            expected: g.vertex_count(),
            found: a.ambient_rank(),
        });
    }
    let k = clique_complex(g);
    let formality = FormalityAnalyzer::new(&k)?.decide(a)?;
    let hull = a.hull();
    let complement = ambient.difference(hull);
    let (cm_dimension, poincare) = if formality.verdict.is_formal() {
        (Some(a.rank()), Some(poincare_series(&k, a.rank())?))
    } else {
        (None, None)
    };
    Ok(GroupReport {
        gamma: g.clone(),
        subgroup: a.clone(),
        hull,
        complement,
        presentation: Presentation::of(g),
        semidirect: SemidirectDescription {
            normal_closure_on: hull,
            commutator_on: complement,
        },
        verdict: formality.verdict,
        rank: a.rank(),
        corank: a.corank(),
        hull_is_clique: g.induced(hull).is_complete(),
        cm_dimension,
        poincare,
        formality,
    })
}
