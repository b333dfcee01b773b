//! Formality of real moment-angle complexes and coabelian subgroups of right-angled
//! Coxeter groups, decided from `F₂` cohomology.
//!
//! A complex `K` on an ambient vertex set `[m]` and a subset `I ⊆ [m]` determine the
//! action of `Z₂^I` on `RZ_K = (D¹, S⁰)^K` by coordinate reflections. The action is
//! formal when the Borel cohomology is free over `H^*(BZ₂^I)`. Four independent
//! deciders are provided and compared in [`census`].

pub mod census;
pub mod cohomology;
pub mod error;
pub mod f2;
pub mod formality;
pub mod group_report;
pub mod moment_angle;
pub mod simplicial;

pub use cohomology::{deletion_is_trivial, reduced_betti, restriction_is_trivial, BettiTable};
pub use error::{Error, Result};
pub use f2::{BitVector, F2Matrix, Subgroup};
pub use formality::{FormalityAnalyzer, FormalityReport, Method, Verdict, Witness};
pub use group_report::{coabelian_report, GroupReport, PoincareSeries};
pub use moment_angle::{hochster_complex_betti, hochster_real_betti, SpaceBettiTable};
pub use simplicial::{clique_complex, is_flag, Graph, SimplicialComplex, VertexSet};
