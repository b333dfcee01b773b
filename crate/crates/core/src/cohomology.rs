//! Reduced simplicial cohomology over `F₂`.
//!
//! Everything runs on the augmented cochain complex: the empty face spans degree
//! −1, so `H̃^{-1}({∅}) = F₂`, any complex with a vertex has `H̃^{-1} = 0`, and the
//! void complex is the zero complex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::f2::{BitVector, Echelon, F2Matrix};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Dimensions of graded `F₂` vector spaces starting at `min_degree`.
///
/// Trailing zeros are trimmed, so equal tables compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BettiTable {
    pub min_degree: i32,
    pub dims: Vec<usize>,
}

impl BettiTable {
    pub fn new(min_degree: i32, mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        BettiTable { min_degree, dims }
    }

    pub fn zero(min_degree: i32) -> Self {
        BettiTable {
            min_degree,
            dims: Vec::new(),
        }
    }

    pub fn get(&self, degree: i32) -> usize {
        if degree < self.min_degree {
            return 0;
        }
        self.dims.get((degree - self.min_degree) as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(degree, dim)` pairs with nonzero dimension.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (self.min_degree + k as i32, d))
    }

    /// Top degree with a nonzero entry.
    pub fn max_degree(&self) -> Option<i32> {
        (!self.dims.is_empty()).then(|| self.min_degree + self.dims.len() as i32 - 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nonzero()
            .map(|(d, n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// The augmented simplicial chain complex of a complex, faces grouped by size and
/// ordered by bitmask within each size.
///
/// Index `s` holds faces with `s` vertices, i.e. cochain degree `s − 1`.
pub struct CochainComplex {
    faces: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl CochainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let sizes = k.max_face_size().map_or(0, |s| s + 1);
        let mut faces: Vec<Vec<VertexSet>> = vec![Vec::new(); sizes];
        // `k.faces()` is bitmask-sorted, so each bucket is too.
        for &f in k.faces() {
            faces[f.len()].push(f);
        }
        let index = faces
            .iter()
            .map(|bucket| bucket.iter().enumerate().map(|(i, &f)| (f, i)).collect())
            .collect();
        CochainComplex { faces, index }
    }

    /// Faces of cochain degree `degree` (size `degree + 1`).
    pub fn faces_in_degree(&self, degree: i32) -> &[VertexSet] {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|s| self.faces.get(s))
            .map_or(&[], Vec::as_slice)
    }

    fn count(&self, size: usize) -> usize {
        self.faces.get(size).map_or(0, Vec::len)
    }

    /// Simplicial boundary from faces of size `size` to faces of size `size − 1`, one
    /// row per source face.
    pub fn boundary(&self, size: usize) -> F2Matrix {
        let cols = if size == 0 { 0 } else { self.count(size - 1) };
        let mut m = F2Matrix::new(cols);
        let Some(bucket) = self.faces.get(size) else {
            return m;
        };
        if size == 0 {
            return m;
        }
        for &f in bucket {
            let ones = f.iter().map(|v| self.index[size - 1][&f.without(v)]);
            m.push_row(BitVector::from_indices(cols, ones));
        }
        m
    }

    /// Cocycles in `degree`: cochains on degree-`degree` faces killed by `δ`.
    pub fn cocycle_basis(&self, degree: i32) -> F2Matrix {
        self.boundary((degree + 2) as usize).kernel_basis()
    }

    /// Spanning set of coboundaries in `degree` (rows are `δ` of each face one degree
    /// down), in echelon form.
    pub fn coboundary_space(&self, degree: i32) -> Echelon {
        let size = (degree + 1) as usize;
        if size == 0 {
            return F2Matrix::new(self.count(0)).echelon();
        }
        let boundary = self.boundary(size);
        if boundary.nrows() == 0 {
            return F2Matrix::new(self.count(size)).echelon();
        }
        boundary.transpose().echelon()
    }

    pub fn betti(&self) -> BettiTable {
        let sizes = self.faces.len();
        let ranks: Vec<usize> = (0..=sizes).map(|s| self.boundary(s).rank()).collect();
        let dims = (0..sizes)
            .map(|s| self.count(s) - ranks[s] - ranks.get(s + 1).copied().unwrap_or(0))
            .collect();
        BettiTable::new(-1, dims)
    }
}

/// Reduced `F₂` Betti numbers, indexed from degree −1.
pub fn reduced_betti(k: &SimplicialComplex) -> BettiTable {
    CochainComplex::new(k).betti()
}

/// Whether `K_{sub} ↪ K` induces the zero map on `H̃^*(−; F₂)`.
///
/// Per degree, every cocycle of `k` restricted to the full subcomplex on `sub` must
/// be a coboundary there. `sub` is intersected with the ambient set.
pub fn restriction_is_trivial(k: &SimplicialComplex, sub: VertexSet) -> bool {
    inclusion_is_trivial(k, &k.full_subcomplex(sub))
}

/// The face deletion `K ∖ σ = {τ ∈ K : σ ⊄ τ}`.
///
/// Deleting the empty face leaves the void complex; deleting a non-face leaves `K`.
pub fn deletion(k: &SimplicialComplex, sigma: VertexSet) -> SimplicialComplex {
    let faces = k.faces().iter().copied().filter(|f| !sigma.is_subset(*f)).collect();
    SimplicialComplex::from_closed_faces(k.ambient(), faces)
}

/// Whether `K ∖ σ ↪ K` induces the zero map on `H̃^*(−; F₂)`.
pub fn deletion_is_trivial(k: &SimplicialComplex, sigma: VertexSet) -> bool {
    inclusion_is_trivial(k, &deletion(k, sigma))
}

/// Whether the inclusion of a subcomplex `sub ⊆ k` is zero on reduced cohomology.
pub fn inclusion_is_trivial(k: &SimplicialComplex, sub: &SimplicialComplex) -> bool {
    if sub.is_void() {
        return true;
    }
    let source = CochainComplex::new(k);
    let target = CochainComplex::new(sub);
    let source_betti = source.betti();
    let target_betti = target.betti();
    let Some(top) = source_betti.max_degree() else {
        return true;
    };
    for degree in -1..=top {
        if source_betti.get(degree) == 0 || target_betti.get(degree) == 0 {
            continue;
        }
        let target_faces = target.faces_in_degree(degree);
        let source_faces = source.faces_in_degree(degree);
        let positions: Vec<usize> = target_faces
            .iter()
            .map(|f| source.index[(degree + 1) as usize][f])
            .collect();
        let coboundaries = target.coboundary_space(degree);
        for z in source.cocycle_basis(degree).rows() {
            debug_assert_eq!(z.len(), source_faces.len());
            let restricted = BitVector::from_indices(
                target_faces.len(),
                positions.iter().enumerate().filter(|(_, &p)| z.get(p)).map(|(i, _)| i),
            );
            if !coboundaries.contains(&restricted) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    #[test]
    fn reduced_betti_examples() {
        assert_eq!(
            reduced_betti(&SimplicialComplex::points(3)),
            BettiTable::new(-1, vec![0, 2])
        );
        assert_eq!(reduced_betti(&four_cycle()), BettiTable::new(-1, vec![0, 0, 1]));
        let empty = SimplicialComplex::empty_face(VertexSet::full(2));
        assert_eq!(reduced_betti(&empty), BettiTable::new(-1, vec![1]));
        assert!(reduced_betti(&SimplicialComplex::void(VertexSet::full(2))).is_zero());
        assert!(reduced_betti(&SimplicialComplex::simplex(4)).is_zero());
        assert_eq!(
            reduced_betti(&SimplicialComplex::simplex_boundary(4))
                .nonzero()
                .collect::<Vec<_>>(),
            vec![(2, 1)]
        );
    }

    #[test]
    fn restriction_examples() {
        assert!(!restriction_is_trivial(&SimplicialComplex::points(3), vs(&[2, 3])));
        let path = SimplicialComplex::from_vertex_lists(3, &[&[1, 2], &[1, 3]]).unwrap();
        assert!(restriction_is_trivial(&path, vs(&[2, 3])));
        assert!(restriction_is_trivial(
            &SimplicialComplex::simplex_boundary(3),
            vs(&[2, 3])
        ));
    }

    #[test]
    fn restriction_degree_minus_one() {
        let empty = SimplicialComplex::empty_face(vs(&[1, 2]));
        // Identity on H̃^{-1}({∅}) = F₂.
        assert!(!restriction_is_trivial(&empty, VertexSet::EMPTY));
        assert!(restriction_is_trivial(&SimplicialComplex::points(2), VertexSet::EMPTY));
        assert!(restriction_is_trivial(
            &SimplicialComplex::void(vs(&[1])),
            VertexSet::EMPTY
        ));
    }

    #[test]
    fn restriction_to_everything_is_identity() {
        let k = four_cycle();
        assert!(!restriction_is_trivial(&k, k.ambient()));
        assert!(restriction_is_trivial(
            &SimplicialComplex::simplex(3),
            VertexSet::full(3)
        ));
    }

    #[test]
    fn circle_restricted_to_arc_is_trivial() {
        assert!(restriction_is_trivial(&four_cycle(), vs(&[1, 2, 3])));
        // H̃⁰ of the diagonal is nonzero, but H̃⁰ of the circle is zero.
        assert!(restriction_is_trivial(&four_cycle(), vs(&[1, 3])));
    }

    #[test]
    fn deletion_examples() {
        let k = SimplicialComplex::from_vertex_lists(3, &[&[1, 3], &[2]]).unwrap();
        assert!(deletion(&k, VertexSet::EMPTY).is_void());
        assert_eq!(deletion(&k, vs(&[1, 2])), k);
        let d = deletion(&k, vs(&[1, 3]));
        assert_eq!(d.facets(), vec![vs(&[1]), vs(&[2]), vs(&[3])]);
        // H̃⁰(K) = F₂ injects into H̃⁰ of three points.
        assert!(!deletion_is_trivial(&k, vs(&[1, 3])));
        assert!(!deletion_is_trivial(&k, vs(&[1])));
        assert!(deletion_is_trivial(&k, vs(&[2])));
        assert!(deletion_is_trivial(&k, VertexSet::EMPTY));
        // Deleting a non-face is the identity.
        assert!(!deletion_is_trivial(&SimplicialComplex::points(2), vs(&[1, 2])));
    }

    #[test]
    fn table_accessors() {
        let t = BettiTable::new(-1, vec![0, 2, 0, 0]);
        assert_eq!(t.dims, vec![0, 2]);
        assert_eq!(t.get(0), 2);
        assert_eq!(t.get(-5), 0);
        assert_eq!(t.get(7), 0);
        assert_eq!(t.max_degree(), Some(0));
        assert_eq!(t.euler_characteristic(), 2);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"min_degree":-1,"dims":[0,2]}"#);
    }
}
