#![allow(dead_code)]

use racg_formality::{SimplicialComplex, VertexSet};
use rand::Rng;

/// Random complex on `1..=m` with every vertex present: `facets` random subsets of
/// size 2..=max_size, downward closed.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize, facets: usize, max_size: usize) -> SimplicialComplex {
    let mut chosen: Vec<VertexSet> = (1..=m as u32).map(VertexSet::singleton).collect();
    for _ in 0..facets {
        let size = rng.gen_range(2..=max_size.min(m).max(2));
        let mut f = VertexSet::EMPTY;
        while f.len() < size.min(m) {
            f = f.with(rng.gen_range(1..=m as u32));
        }
        chosen.push(f);
    }
    SimplicialComplex::from_facets(VertexSet::full(m), chosen).unwrap()
}

/// Rank over F₂ by plain Gaussian elimination on rows of booleans.
pub fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers from the augmented chain complex, indexed by face size
/// (entry `s` is `H̃^{s−1}`), built from the face list only.
pub fn naive_reduced_betti(k: &SimplicialComplex) -> Vec<usize> {
    let faces = k.faces();
    let top = faces.iter().map(|f| f.len()).max().map_or(0, |s| s + 1);
    let by_size: Vec<Vec<VertexSet>> = (0..top)
        .map(|s| faces.iter().copied().filter(|f| f.len() == s).collect())
        .collect();
    let rank = |s: usize| -> usize {
        if s == 0 || s >= top {
            return 0;
        }
        let rows = by_size[s]
            .iter()
            .map(|f| by_size[s - 1].iter().map(|g| g.is_subset(*f)).collect())
            .collect();
        naive_rank(rows)
    };
    let mut out: Vec<usize> = (0..top).map(|s| by_size[s].len() - rank(s) - rank(s + 1)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}
