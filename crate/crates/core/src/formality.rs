//! Deciders for equivariant formality of `Z₂^I` (and of any `A ≤ Z₂^m` through its
//! coordinate hull) acting on `RZ_K` over `F₂`.
//!
//! * [`flag_criterion`]: missing-edge test, flag complexes only.
//! * [`general_criterion`]: face deletions in full subcomplexes, any complex.
//! * [`betti_sum_oracle`]: compares Betti sums of the fixed set and the space.
//! * [`torus_oracle`]: the same comparison for `T^I` acting on `Z_K`.
//!
//! All four must agree; the census in [`crate::census`] checks that exhaustively.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cohomology::deletion_is_trivial;
use crate::error::{Error, Result};
use crate::f2::Subgroup;
use crate::moment_angle::{
    build_cubical_capped, cubical_betti, cubical_cap, fixed_betti_via_link, fixed_subcomplex, torus_fixed_betti,
    CubicalComplex, HochsterDecomposition, SpaceBettiTable,
};
use crate::simplicial::{is_flag, SimplicialComplex, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Formal,
    NotFormal,
}

impl Verdict {
    pub fn from_bool(formal: bool) -> Self {
        if formal {
            Verdict::Formal
        } else {
            Verdict::NotFormal
        }
    }

    pub fn is_formal(self) -> bool {
        self == Verdict::Formal
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Formal => "formal",
            Verdict::NotFormal => "not_formal",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FlagCriterion,
    GeneralCriterion,
    BettiSumOracle,
    TorusOracle,
}

/// Betti sums of the fixed set and of the whole space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BettiTotals {
    pub fixed: usize,
    pub ambient: usize,
}

/// Why a verdict is `not_formal`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `{j₁, j₂} ∉ K` while `i ∈ I ∖ {j₁, j₂}` misses `{i, j₁}` or `{i, j₂}`.
    MissingEdge {
        edge: [u32; 2],
        vertex: u32,
    },
    /// `H̃^*(K_J) → H̃^*(K_{J∖I})` is nonzero.
    NontrivialRestriction {
        subset: VertexSet,
    },
    /// `I` is not a face, so the fixed set is empty.
    NotAFace {
        subset: VertexSet,
    },
    BettiTotals(BettiTotals),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FormalityReport {
    pub verdict: Verdict,
    pub method: Method,
    pub hull: VertexSet,
    pub witness: Option<Witness>,
    pub totals: Option<BettiTotals>,
}

impl FormalityReport {
    fn formal(method: Method, hull: VertexSet) -> Self {
        FormalityReport {
            verdict: Verdict::Formal,
            method,
            hull,
            witness: None,
            totals: None,
        }
    }

    fn not_formal(method: Method, hull: VertexSet, witness: Witness) -> Self {
        FormalityReport {
            verdict: Verdict::NotFormal,
            method,
            hull,
            witness: Some(witness),
            totals: None,
        }
    }

    fn from_totals(method: Method, hull: VertexSet, totals: BettiTotals) -> Self {
        let verdict = Verdict::from_bool(totals.fixed == totals.ambient);
        let witness = (!verdict.is_formal()).then_some(Witness::BettiTotals(totals));
        FormalityReport {
            verdict,
            method,
            hull,
            witness,
            totals: Some(totals),
        }
    }
}

/// Caches the per-complex data shared by every `I`: flagness, the Hochster table of
/// `K`, and the subdivided cubical model. Safe to share across threads.
pub struct FormalityAnalyzer<'a> {
    complex: &'a SimplicialComplex,
    flag: OnceLock<bool>,
    hochster: OnceLock<HochsterDecomposition>,
    subdivided: OnceLock<Option<CubicalComplex>>,
    cubical_cap: usize,
}

impl<'a> FormalityAnalyzer<'a> {
    /// Fails if some ambient vertex is not a face: every coordinate must be a
    /// generator of the Coxeter group.
    pub fn new(complex: &'a SimplicialComplex) -> Result<Self> {
        if let Some(v) = complex.ghosts().iter().next() {
            return Err(Error::GhostVertex(v));
        }
        Ok(FormalityAnalyzer {
            complex,
            flag: OnceLock::new(),
            hochster: OnceLock::new(),
            subdivided: OnceLock::new(),
            cubical_cap: cubical_cap(),
        })
    }

    /// Overrides the cubical cross-check cap (models are skipped above it).
    pub fn with_cubical_cap(mut self, cap: usize) -> Self {
        self.cubical_cap = cap;
        self
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
    }

    pub fn is_flag(&self) -> bool {
        *self.flag.get_or_init(|| is_flag(self.complex))
    }

    pub fn hochster(&self) -> Result<&HochsterDecomposition> {
        if let Some(h) = self.hochster.get() {
            return Ok(h);
        }
        let h = HochsterDecomposition::new(self.complex)?;
        Ok(self.hochster.get_or_init(|| h))
    }

    fn subdivided_model(&self) -> Result<Option<&CubicalComplex>> {
        if let Some(model) = self.subdivided.get() {
            return Ok(model.as_ref());
        }
        let model = if self.complex.m() <= self.cubical_cap {
            Some(build_cubical_capped(self.complex, true, self.cubical_cap)?)
        } else {
            None
        };
        Ok(self.subdivided.get_or_init(|| model).as_ref())
    }

    fn check_subset(&self, subset: VertexSet) -> Result<()> {
        match subset.difference(self.complex.ambient()).iter().next() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                ambient: self.complex.ambient(),
            }),
            None => Ok(()),
        }
    }

    pub fn flag_criterion(&self, subset: VertexSet) -> Result<FormalityReport> {
        self.check_subset(subset)?;
        if !self.is_flag() {
            return Err(Error::NotFlag);
        }
        let k = self.complex;
        let method = Method::FlagCriterion;
        if !k.contains(subset) {
            return Ok(FormalityReport::not_formal(
                method,
                subset,
                Witness::NotAFace { subset },
            ));
        }
        for (j1, j2) in k.missing_edges() {
            for i in subset.without(j1).without(j2).iter() {
                if !k.contains(VertexSet::pair(i, j1)) || !k.contains(VertexSet::pair(i, j2)) {
                    let witness = Witness::MissingEdge {
                        edge: [j1, j2],
                        vertex: i,
                    };
                    return Ok(FormalityReport::not_formal(method, subset, witness));
                }
            }
        }
        Ok(FormalityReport::formal(method, subset))
    }

    /// `I ∈ K`, and for every `J` meeting `I` the deletion `K_J ∖ (I ∩ J) ↪ K_J` is zero
    /// on reduced cohomology. For `J` disjoint from `I` the deletion is void, so those
    /// `J` are skipped.
    pub fn general_criterion(&self, subset: VertexSet) -> Result<FormalityReport> {
        self.check_subset(subset)?;
        let k = self.complex;
        let method = Method::GeneralCriterion;
        if !k.contains(subset) {
            return Ok(FormalityReport::not_formal(
                method,
                subset,
                Witness::NotAFace { subset },
            ));
        }
        for j in k.ambient().subsets() {
            if j.is_disjoint(subset) {
                continue;
            }
            if !deletion_is_trivial(&k.full_subcomplex(j), j.intersection(subset)) {
                return Ok(FormalityReport::not_formal(
                    method,
                    subset,
                    Witness::NontrivialRestriction { subset: j },
                ));
            }
        }
        Ok(FormalityReport::formal(method, subset))
    }

    /// Fixed-set Betti sum via the link, checked degreewise against the subdivided
    /// cubical model whenever the model is within the cap.
    pub fn fixed_betti(&self, subset: VertexSet) -> Result<SpaceBettiTable> {
        self.check_subset(subset)?;
        let via_link = fixed_betti_via_link(self.complex, subset)?;
        if let Some(model) = self.subdivided_model()? {
            let cubical = cubical_betti(&fixed_subcomplex(model, subset)?);
            if cubical != via_link {
                return Err(Error::FixedPointDisagreement {
                    subset,
                    link: via_link.dims().to_vec(),
                    cubical: cubical.dims().to_vec(),
                });
            }
        }
        Ok(via_link)
    }

    pub fn betti_sum_oracle(&self, subset: VertexSet) -> Result<FormalityReport> {
        let fixed = self.fixed_betti(subset)?.total();
        let ambient = self.hochster()?.real().total();
        Ok(FormalityReport::from_totals(
            Method::BettiSumOracle,
            subset,
            BettiTotals { fixed, ambient },
        ))
    }

    pub fn torus_oracle(&self, subset: VertexSet) -> Result<FormalityReport> {
        self.check_subset(subset)?;
        let fixed = torus_fixed_betti(self.complex, subset)?.total();
        let ambient = self.hochster()?.complex().total();
        Ok(FormalityReport::from_totals(
            Method::TorusOracle,
            subset,
            BettiTotals { fixed, ambient },
        ))
    }

    pub fn run(&self, method: Method, subset: VertexSet) -> Result<FormalityReport> {
        match method {
            Method::FlagCriterion => self.flag_criterion(subset),
            Method::GeneralCriterion => self.general_criterion(subset),
            Method::BettiSumOracle => self.betti_sum_oracle(subset),
            Method::TorusOracle => self.torus_oracle(subset),
        }
    }

    /// Every applicable method (the flag criterion only for flag complexes).
    pub fn cross_check(&self, subset: VertexSet) -> Result<Vec<FormalityReport>> {
        let mut methods = Vec::with_capacity(4);
        if self.is_flag() {
            methods.push(Method::FlagCriterion);
        }
        methods.extend([Method::GeneralCriterion, Method::BettiSumOracle, Method::TorusOracle]);
        methods.into_iter().map(|m| self.run(m, subset)).collect()
    }

    /// Verdict for `A` via its coordinate hull, using the flag criterion when `K` is
    /// flag and the general criterion otherwise. Never runs the oracles.
    pub fn decide(&self, a: &Subgroup) -> Result<FormalityReport> {
        if VertexSet::full(a.ambient_rank()) != self.complex.ambient() {
            return Err(Error::AmbientMismatch {
                expected: self.complex.m(),
                found: a.ambient_rank(),
            });
        }
        let hull = a.hull();
        if self.is_flag() {
            self.flag_criterion(hull)
        } else {
            self.general_criterion(hull)
        }
    }
}

pub fn flag_criterion(k: &SimplicialComplex, subset: VertexSet) -> Result<FormalityReport> {
    FormalityAnalyzer::new(k)?.flag_criterion(subset)
}

pub fn general_criterion(k: &SimplicialComplex, subset: VertexSet) -> Result<FormalityReport> {
    FormalityAnalyzer::new(k)?.general_criterion(subset)
}

pub fn betti_sum_oracle(k: &SimplicialComplex, subset: VertexSet) -> Result<FormalityReport> {
    FormalityAnalyzer::new(k)?.betti_sum_oracle(subset)
}

pub fn torus_oracle(k: &SimplicialComplex, subset: VertexSet) -> Result<FormalityReport> {
    FormalityAnalyzer::new(k)?.torus_oracle(subset)
}

pub fn decide(k: &SimplicialComplex, a: &Subgroup) -> Result<FormalityReport> {
    FormalityAnalyzer::new(k)?.decide(a)
}
