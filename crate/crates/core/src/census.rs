//! Exhaustive agreement census over small complexes, persisted as JSONL.
//!
//! One record per `(K, I)` pair. Ordering is fixed: complexes by their enumeration
//! key (edge-set bitmask for graphs), then `I` by bitmask, so output bytes do not
//! depend on the number of worker threads.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formality::{FormalityAnalyzer, Verdict};
use crate::simplicial::{clique_complex, Graph, SimplicialComplex, VertexSet};

pub const DEFAULT_FLAG_CAP: usize = 5;
pub const DEFAULT_COMPLEX_CAP: usize = 4;
/// Enumeration keys are `u64` bitmasks over the faces of size ≥ 2.
const ENUMERATION_LIMIT: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CensusMode {
    /// Clique complexes of all labeled graphs.
    Flag,
    /// All simplicial complexes containing every vertex.
    AllComplexes,
}

impl CensusMode {
    /// Cap on `m`, from `RACG_CENSUS_FLAG_CAP` / `RACG_CENSUS_COMPLEX_CAP` when set.
    pub fn cap(self) -> usize {
        let (var, default) = match self {
            CensusMode::Flag => ("RACG_CENSUS_FLAG_CAP", DEFAULT_FLAG_CAP),
            CensusMode::AllComplexes => ("RACG_CENSUS_COMPLEX_CAP", DEFAULT_COMPLEX_CAP),
        };
        std::env::var(var)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(default)
            .min(ENUMERATION_LIMIT)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusRecord {
    pub m: usize,
    pub facets: Vec<Vec<u32>>,
    pub is_flag: bool,
    #[serde(rename = "I")]
    pub subset: VertexSet,
    pub verdict_flag: Option<Verdict>,
    pub verdict_general: Verdict,
    pub verdict_oracle: Verdict,
    pub verdict_torus: Verdict,
    pub betti_total_ambient: usize,
    pub betti_total_fixed: usize,
    pub agree: bool,
}

impl CensusRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("census records serialize")
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        let facets: Vec<&[u32]> = self.facets.iter().map(Vec::as_slice).collect();
        SimplicialComplex::from_vertex_lists(self.m, &facets)
    }
}

/// Runs every decider on `(k, subset)`.
pub fn record_for(analyzer: &FormalityAnalyzer<'_>, subset: VertexSet) -> Result<CensusRecord> {
    let k = analyzer.complex();
    let is_flag = analyzer.is_flag();
    let verdict_flag = if is_flag {
        Some(analyzer.flag_criterion(subset)?.verdict)
    } else {
        None
    };
    let general = analyzer.general_criterion(subset)?;
    let oracle = analyzer.betti_sum_oracle(subset)?;
    let torus = analyzer.torus_oracle(subset)?;
    let totals = oracle.totals.expect("oracle reports totals");
    let verdicts = [
        Some(general.verdict),
        Some(oracle.verdict),
        Some(torus.verdict),
        verdict_flag,
    ];
    let agree = verdicts.iter().flatten().all(|&v| v == general.verdict);
    Ok(CensusRecord {
        m: k.m(),
        facets: k.facets().into_iter().map(VertexSet::to_vec).collect(),
        is_flag,
        subset,
        verdict_flag,
        verdict_general: general.verdict,
        verdict_oracle: oracle.verdict,
        verdict_torus: torus.verdict,
        betti_total_ambient: totals.ambient,
        betti_total_fixed: totals.fixed,
        agree,
    })
}

/// Pairs `(a, b)`, `a < b`, of `1..=m` in lexicographic order; bit `k` of a graph key
/// is the `k`-th pair.
fn vertex_pairs(m: usize) -> Vec<(u32, u32)> {
    let m = m as u32;
    (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect()
}

/// Clique complexes of all `2^{C(m,2)}` labeled graphs on `1..=m`, by edge-set bitmask.
pub fn flag_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= ENUMERATION_LIMIT);
    let pairs = vertex_pairs(m);
    (0u64..1 << pairs.len())
        .map(|key| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| key >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            clique_complex(&Graph::new(m, &edges).expect("valid edges"))
        })
        .collect()
}

/// Every simplicial complex on `1..=m` having all singletons as faces.
///
/// Faces of size ≥ 2 are decided in order of (size, bitmask); a face may be added
/// only once all of its codimension-one faces are present, so every choice sequence
/// is a distinct complex. Output is sorted by the bitmask of chosen faces.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= ENUMERATION_LIMIT);
    let ambient = VertexSet::full(m);
    let mut candidates: Vec<VertexSet> = ambient.subsets().filter(|f| f.len() >= 2).collect();
    candidates.sort_by_key(|f| (f.len(), f.bits()));

    let mut keys = Vec::new();
    extend(&candidates, 0, 0, &mut keys);
    keys.sort_unstable();

    let base: Vec<VertexSet> = std::iter::once(VertexSet::EMPTY)
        .chain(ambient.iter().map(VertexSet::singleton))
        .collect();
    keys.into_iter()
        .map(|key| {
            let mut faces = base.clone();
            faces.extend(
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| key >> k & 1 == 1)
                    .map(|(_, &f)| f),
            );
            SimplicialComplex::from_closed_faces(ambient, faces)
        })
        .collect()
}

fn extend(candidates: &[VertexSet], next: usize, chosen: u64, out: &mut Vec<u64>) {
    if next == candidates.len() {
        out.push(chosen);
        return;
    }
    extend(candidates, next + 1, chosen, out);
    let face = candidates[next];
    let closed = face.iter().all(|v| {
        let sub = face.without(v);
        sub.len() < 2
            || candidates[..next]
                .iter()
                .position(|&c| c == sub)
                .is_some_and(|k| chosen >> k & 1 == 1)
    });
    if closed {
        extend(candidates, next + 1, chosen | 1 << next, out);
    }
}

pub fn enumerate(mode: CensusMode, m: usize) -> Vec<SimplicialComplex> {
    match mode {
        CensusMode::Flag => flag_complexes(m),
        CensusMode::AllComplexes => all_complexes(m),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusOptions {
    pub mode: CensusMode,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct CensusSummary {
    pub complexes: usize,
    pub records: usize,
    pub formal: usize,
    pub disagreements: usize,
    pub smith_violations: usize,
}

impl CensusSummary {
    pub fn of(complexes: usize, records: &[CensusRecord]) -> Self {
        CensusSummary {
            complexes,
            records: records.len(),
            formal: records.iter().filter(|r| r.verdict_general.is_formal()).count(),
            disagreements: records.iter().filter(|r| !r.agree).count(),
            smith_violations: records
                .iter()
                .filter(|r| r.betti_total_fixed > r.betti_total_ambient)
                .count(),
        }
    }
}

/// All records for the complexes of `options.mode` with `min..=max` vertices.
pub fn run(options: &CensusOptions) -> Result<(Vec<CensusRecord>, CensusSummary)> {
    let cap = options.mode.cap();
    if options.max_vertices > cap {
        return Err(Error::TooManyVertices {
            what: "census",
            m: options.max_vertices,
            cap,
        });
    }
    if options.min_vertices > options.max_vertices {
        return Err(Error::Invalid(format!(
            "min vertices {} exceeds max vertices {}",
            options.min_vertices, options.max_vertices
        )));
    }
    let complexes: Vec<SimplicialComplex> = (options.min_vertices..=options.max_vertices)
        .flat_map(|m| enumerate(options.mode, m))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let per_complex: Vec<Result<Vec<CensusRecord>>> = pool.install(|| {
        complexes
            .par_iter()
            .map(|k| {
                let analyzer = FormalityAnalyzer::new(k)?;
                k.ambient().subsets().map(|i| record_for(&analyzer, i)).collect()
            })
            .collect()
    });
    let mut records = Vec::new();
    for chunk in per_complex {
        records.extend(chunk?);
    }
    let summary = CensusSummary::of(complexes.len(), &records);
    Ok((records, summary))
}

pub fn write_jsonl<W: Write>(records: &[CensusRecord], mut out: W) -> Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_line())?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub line: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerifyOutcome {
    pub records: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes each record from its `(m, facets, I)` and compares the canonical line
/// byte for byte. Blank lines are skipped; unparsable lines are errors.
pub fn verify<R: BufRead>(input: R) -> Result<VerifyOutcome> {
    let mut outcome = VerifyOutcome::default();
    for (n, line) in input.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.trim().is_empty() {
            continue;
        }
        let record: CensusRecord =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("line {line_no}: corrupt record: {e}")))?;
        let k = record
            .complex()
            .map_err(|e| Error::Invalid(format!("line {line_no}: {e}")))?;
        let analyzer = FormalityAnalyzer::new(&k).map_err(|e| Error::Invalid(format!("line {line_no}: {e}")))?;
        let expected = record_for(&analyzer, record.subset)?.to_line();
        outcome.records += 1;
        if expected != text {
            outcome.mismatches.push(Mismatch {
                line: line_no,
                found: text.to_string(),
                expected,
            });
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn options(mode: CensusMode, m: usize, jobs: usize) -> CensusOptions {
        CensusOptions {
            mode,
            min_vertices: m,
            max_vertices: m,
            jobs,
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(flag_complexes(3).len(), 8);
        assert_eq!(flag_complexes(4).len(), 64);
        // Labeled complexes with every vertex present: 1, 2, 9, 114.
        let counts: Vec<usize> = (1..=4).map(|m| all_complexes(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 9, 114]);
    }

    #[test]
    fn all_complexes_are_distinct_and_closed() {
        let ks = all_complexes(4);
        let mut seen = std::collections::HashSet::new();
        for k in &ks {
            assert!(seen.insert(k.clone()));
            assert!(k.ghosts().is_empty());
            for &f in k.faces() {
                for v in f.iter() {
                    assert!(k.contains(f.without(v)));
                }
            }
        }
    }

    #[test]
    fn flag_census_small_counts() {
        let (records, summary) = run(&options(CensusMode::Flag, 2, 1)).unwrap();
        assert_eq!(records.len(), 8);
        assert_eq!(summary.disagreements, 0);
        let (records, _) = run(&options(CensusMode::Flag, 3, 2)).unwrap();
        assert_eq!(records.len(), 64);
        assert!(records.iter().all(|r| r.agree));
        let (records, summary) = run(&options(CensusMode::AllComplexes, 2, 1)).unwrap();
        assert_eq!((records.len(), summary.complexes), (8, 2));
    }

    #[test]
    fn record_line_layout() {
        let (records, _) = run(&options(CensusMode::Flag, 2, 1)).unwrap();
        assert_eq!(
            records[3].to_line(),
            r#"{"m":2,"facets":[[1],[2]],"is_flag":true,"I":[1,2],"verdict_flag":"not_formal","verdict_general":"not_formal","verdict_oracle":"not_formal","verdict_torus":"not_formal","betti_total_ambient":2,"betti_total_fixed":0,"agree":true}"#
        );
    }

    #[test]
    fn verify_detects_flipped_verdict() {
        let (records, _) = run(&options(CensusMode::Flag, 3, 1)).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&records, &mut buf).unwrap();
        let outcome = verify(buf.as_slice()).unwrap();
        assert!(outcome.ok());
        assert_eq!(outcome.records, 64);

        let text = String::from_utf8(buf).unwrap();
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let flip = |v: &str| if v == "formal" { "not_formal" } else { "formal" };
        let current = if lines[5].contains("\"verdict_oracle\":\"formal\"") {
            "formal"
        } else {
            "not_formal"
        };
        lines[5] = lines[5].replace(
            &format!("\"verdict_oracle\":\"{current}\""),
            &format!("\"verdict_oracle\":\"{}\"", flip(current)),
        );
        let flipped = lines.join("\n");
        let outcome = verify(flipped.as_bytes()).unwrap();
        assert_eq!(outcome.mismatches.len(), 1);
        assert_eq!(outcome.mismatches[0].line, 6);
    }

    #[test]
    fn verify_reports_corrupt_line_number() {
        let err = verify("\n{\"m\":2}\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert_eq!(verify("".as_bytes()).unwrap().records, 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(run(&options(CensusMode::AllComplexes, 7, 1)).is_err());
    }
}
