//! Face lattices of polytopes given by vertex-facet incidences.
//!
//! Faces are the intersections of facet vertex-sets together with the full
//! vertex set. Each face keeps both halves of its Galois pair: its vertex set
//! and the set of facets containing it.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest number of vertices or facets accepted by any constructor.
pub const MAX_WIDTH: usize = 1024;

/// Upper bound on the number of faces enumerated by [`FaceLattice::build`].
pub const MAX_FACES: usize = 1 << 20;

/// Vertices × facets incidence of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n_vertices: usize,
    facets: Vec<BitSet>,
    vertex_rows: Vec<BitSet>,
    vertex_labels: Vec<String>,
    facet_labels: Vec<String>,
}

impl IncidenceMatrix {
    /// Builds a matrix from the vertex list of every facet, with default labels.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let vertex_labels = (0..n_vertices).map(|i| format!("v{i}")).collect();
        let facet_labels = (0..facets.len()).map(|j| format!("F{j}")).collect();
        Self::with_labels(n_vertices, facets, vertex_labels, facet_labels)
    }

    pub fn with_labels(
        n_vertices: usize,
        facets: &[Vec<usize>],
        vertex_labels: Vec<String>,
        facet_labels: Vec<String>,
    ) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidMatrix("no vertices".into()));
        }
        if facets.is_empty() {
            return Err(Error::InvalidMatrix("no facets".into()));
        }
        if n_vertices > MAX_WIDTH || facets.len() > MAX_WIDTH {
            return Err(Error::Limit(format!(
                "{n_vertices} vertices and {} facets exceed the width limit {MAX_WIDTH}",
                facets.len()
            )));
        }
        if vertex_labels.len() != n_vertices {
            return Err(Error::InvalidMatrix(format!(
                "{} vertex labels for {n_vertices} vertices",
                vertex_labels.len()
            )));
        }
        if facet_labels.len() != facets.len() {
            return Err(Error::InvalidMatrix(format!(
                "{} facet labels for {} facets",
                facet_labels.len(),
                facets.len()
            )));
        }
        let mut sets = Vec::with_capacity(facets.len());
        for (j, facet) in facets.iter().enumerate() {
            if let Some(&v) = facet.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidMatrix(format!(
                    "facet {j} references vertex {v}, but there are only {n_vertices} vertices"
                )));
            }
            sets.push(BitSet::from_indices(n_vertices, facet.iter().copied()));
        }
        Self::from_sets(n_vertices, sets, vertex_labels, facet_labels)
    }

    pub(crate) fn from_sets(
        n_vertices: usize,
        facets: Vec<BitSet>,
        vertex_labels: Vec<String>,
        facet_labels: Vec<String>,
    ) -> Result<Self> {
        let n_facets = facets.len();
        let mut vertex_rows = vec![BitSet::empty(n_facets); n_vertices];
        for (j, facet) in facets.iter().enumerate() {
            for v in facet.iter() {
                vertex_rows[v].insert(j);
            }
        }
        let m = IncidenceMatrix {
            n_vertices,
            facets,
            vertex_rows,
            vertex_labels,
            facet_labels,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let mut seen: HashMap<&BitSet, usize> = HashMap::new();
        for (j, facet) in self.facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::InvalidMatrix(format!("facet {j} contains no vertex")));
            }
            if facet.is_full() {
                return Err(Error::InvalidMatrix(format!("facet {j} contains every vertex")));
            }
            if let Some(k) = seen.insert(facet, j) {
                return Err(Error::InvalidMatrix(format!(
                    "facets {k} and {j} have identical vertex sets"
                )));
            }
        }
        let mut seen: HashMap<&BitSet, usize> = HashMap::new();
        for (v, row) in self.vertex_rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidMatrix(format!("vertex {v} lies in no facet")));
            }
            if row.is_full() {
                return Err(Error::InvalidMatrix(format!("vertex {v} lies in every facet")));
            }
            if let Some(u) = seen.insert(row, v) {
                return Err(Error::InvalidMatrix(format!(
                    "vertices {u} and {v} lie in identical sets of facets"
                )));
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn incident(&self, vertex: usize, facet: usize) -> bool {
        self.facets[facet].contains(vertex)
    }

    /// Vertex set of a facet.
    pub fn facet(&self, facet: usize) -> &BitSet {
        &self.facets[facet]
    }

    pub fn facets(&self) -> &[BitSet] {
        &self.facets
    }

    /// Facets containing a vertex.
    pub fn vertex_facets(&self, vertex: usize) -> &BitSet {
        &self.vertex_rows[vertex]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn facet_labels(&self) -> &[String] {
        &self.facet_labels
    }

    /// Facet vertex lists, sorted.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(BitSet::to_vec).collect()
    }

    /// Incidence of the dual polytope: vertices and facets swap roles.
    pub fn transpose(&self) -> IncidenceMatrix {
        IncidenceMatrix {
            n_vertices: self.facets.len(),
            facets: self.vertex_rows.clone(),
            vertex_rows: self.facets.clone(),
            vertex_labels: self.facet_labels.clone(),
            facet_labels: self.vertex_labels.clone(),
        }
    }

    /// Vertices lying in every facet of `facets`; all vertices for the empty set.
    pub fn common_vertices(&self, facets: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n_vertices);
        for j in facets.iter() {
            out.intersect_with(&self.facets[j]);
        }
        out
    }

    /// Facets containing every vertex of `vertices`; all facets for the empty set.
    pub fn common_facets(&self, vertices: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.facets.len());
        for v in vertices.iter() {
            out.intersect_with(&self.vertex_rows[v]);
        }
        out
    }
}

/// A face stored as its Galois pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: BitSet,
    /// Every facet of the polytope containing this face.
    pub facets: BitSet,
    /// Lattice height; the empty face has rank 0 and dimension is `rank - 1`.
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    matrix: IncidenceMatrix,
    faces: Vec<Face>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
    dim: usize,
    f_vector: Vec<usize>,
}

impl FaceLattice {
    /// Enumerates and validates the face lattice of `matrix`.
    ///
    /// Faces are sorted by rank, then lexicographically by vertex list, so the
    /// empty face has index 0 and the polytope itself is last.
    pub fn build(matrix: &IncidenceMatrix) -> Result<Self> {
        let n = matrix.n_vertices();
        let mut sets: Vec<BitSet> = Vec::new();
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        let full = BitSet::full(n);
        seen.insert(full.clone(), ());
        sets.push(full);
        for facet in matrix.facets() {
            if seen.insert(facet.clone(), ()).is_none() {
                sets.push(facet.clone());
            }
        }
        let mut cursor = 1;
        while cursor < sets.len() {
            let current = sets[cursor].clone();
            cursor += 1;
            for facet in matrix.facets() {
                let meet = current.intersection(facet);
                if meet == current || seen.contains_key(&meet) {
                    continue;
                }
                seen.insert(meet.clone(), ());
                sets.push(meet);
                if sets.len() > MAX_FACES {
                    return Err(Error::Limit(format!("more than {MAX_FACES} faces")));
                }
            }
        }
        let empty = BitSet::empty(n);
        if !seen.contains_key(&empty) {
            sets.push(empty);
        }

        // Lower covers of a face G are the maximal sets among G ∩ F for facets F not containing G.
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let position: HashMap<BitSet, usize> =
            sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
        for (g, set) in sets.iter().enumerate() {
            let mut candidates: Vec<usize> = Vec::new();
            for facet in matrix.facets() {
                if set.is_subset(facet) {
                    continue;
                }
                let meet = set.intersection(facet);
                let idx = *position
                    .get(&meet)
                    .expect("face set is closed under facet intersection");
                candidates.push(idx);
            }
            candidates.sort_unstable();
            candidates.dedup();
            // Larger sets first; a candidate is maximal if no earlier kept one contains it.
            candidates.sort_by(|&a, &b| sets[b].len().cmp(&sets[a].len()).then(a.cmp(&b)));
            let mut maximal: Vec<usize> = Vec::new();
            for c in candidates {
                if !maximal.iter().any(|&m| sets[c].is_subset(&sets[m])) {
                    maximal.push(c);
                }
            }
            maximal.sort_unstable();
            lower[g] = maximal;
        }

        // Ranks by longest chain from the empty face; sets are in increasing size order.
        let mut rank = vec![0usize; sets.len()];
        for g in 0..sets.len() {
            rank[g] = lower[g].iter().map(|&c| rank[c] + 1).max().unwrap_or(0);
        }
        for g in 0..sets.len() {
            if let Some(&bad) = lower[g].iter().find(|&&c| rank[c] + 1 != rank[g]) {
                return Err(Error::NotPolytopal(format!(
                    "not graded: face {:?} covers {:?} across {} ranks",
                    sets[g],
                    sets[bad],
                    rank[g] - rank[bad]
                )));
            }
        }

        // Final order: rank, then lexicographic vertex list.
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then_with(|| sets[a].cmp(&sets[b])));
        let mut renumber = vec![0usize; sets.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let faces: Vec<Face> = order
            .iter()
            .map(|&old| Face {
                facets: matrix.common_facets(&sets[old]),
                vertices: sets[old].clone(),
                rank: rank[old],
            })
            .collect();
        let lower_new: Vec<Vec<usize>> = order
            .iter()
            .map(|&old| {
                let mut covers: Vec<usize> = lower[old].iter().map(|&c| renumber[c]).collect();
                covers.sort_unstable();
                covers
            })
            .collect();
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
        for (g, covers) in lower_new.iter().enumerate() {
            for &c in covers {
                upper[c].push(g);
            }
        }
        for covers in &mut upper {
            covers.sort_unstable();
        }
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let top = faces.len() - 1;
        let dim = faces[top].rank.saturating_sub(1);
        let mut f_vector = vec![0usize; dim];
        for face in &faces {
            if face.rank >= 1 && face.rank <= dim {
                f_vector[face.rank - 1] += 1;
            }
        }
        let lattice = FaceLattice {
            matrix: matrix.clone(),
            faces,
            lower: lower_new,
            upper,
            index,
            dim,
            f_vector,
        };
        lattice.validate()?;
        Ok(lattice)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 1 {
            return Err(Error::NotPolytopal("dimension below 1".into()));
        }
        let top = self.top();
        if self.faces[0].rank != 0 || !self.faces[0].vertices.is_empty() {
            return Err(Error::NotPolytopal("the empty face is missing".into()));
        }
        let atoms = &self.upper[0];
        for &a in atoms {
            if self.faces[a].vertices.len() != 1 {
                return Err(Error::NotPolytopal(format!(
                    "minimal nonempty face {:?} is not a single vertex",
                    self.faces[a].vertices
                )));
            }
        }
        if atoms.len() != self.matrix.n_vertices() {
            let missing = (0..self.matrix.n_vertices())
                .find(|&v| {
                    !atoms
                        .iter()
                        .any(|&a| self.faces[a].vertices.contains(v))
                })
                .unwrap_or(0);
            return Err(Error::NotPolytopal(format!("vertex {missing} is not an atom")));
        }
        let coatoms = &self.lower[top];
        if coatoms.len() != self.matrix.n_facets() {
            let missing = (0..self.matrix.n_facets())
                .find(|&j| {
                    !coatoms
                        .iter()
                        .any(|&c| &self.faces[c].vertices == self.matrix.facet(j))
                })
                .unwrap_or(0);
            return Err(Error::NotPolytopal(format!("facet {missing} is not a coatom")));
        }
        // Diamond property: every length-2 interval has exactly two middle elements.
        let mut count: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.faces.len() {
            count.clear();
            for &y in &self.upper[x] {
                for &z in &self.upper[y] {
                    *count.entry(z).or_default() += 1;
                }
            }
            if let Some((&z, &c)) = count.iter().filter(|(_, &c)| c != 2).min() {
                return Err(Error::NotPolytopal(format!(
                    "diamond property fails: interval [{:?}, {:?}] has {c} middle elements",
                    self.faces[x].vertices, self.faces[z].vertices
                )));
            }
        }
        let euler: i64 = self
            .f_vector
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        let expected = if self.dim.is_multiple_of(2) { 0 } else { 2 };
        if euler != expected {
            return Err(Error::NotPolytopal(format!(
                "Euler relation fails: alternating sum {euler}, expected {expected}"
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &IncidenceMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Face counts `f_0, ..., f_{d-1}`.
    pub fn f_vector(&self) -> &[usize] {
        &self.f_vector
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, sigma: usize) -> Result<&Face> {
        self.faces.get(sigma).ok_or(Error::FaceIndex(sigma))
    }

    /// Index of the empty face.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the polytope itself.
    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Faces covered by `sigma`.
    pub fn lower_covers(&self, sigma: usize) -> Result<&[usize]> {
        self.lower.get(sigma).map(Vec::as_slice).ok_or(Error::FaceIndex(sigma))
    }

    /// Faces covering `sigma`.
    pub fn upper_covers(&self, sigma: usize) -> Result<&[usize]> {
        self.upper.get(sigma).map(Vec::as_slice).ok_or(Error::FaceIndex(sigma))
    }

    pub fn find(&self, vertices: &BitSet) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Face of the dual lattice corresponding to `sigma` (same Galois pair, swapped).
    pub fn dual_face_in(&self, dual: &FaceLattice, sigma: usize) -> Result<usize> {
        let face = self.face(sigma)?;
        dual.find(&face.facets).ok_or_else(|| {
            Error::Inconsistency(format!("face {sigma} has no counterpart in the dual lattice"))
        })
    }

    /// Face lattice of the dual polytope.
    pub fn dual(&self) -> FaceLattice {
        // The transpose of a polytope incidence is again one; rebuilding cannot fail.
        FaceLattice::build(&self.matrix.transpose())
            .expect("dual of a validated polytope lattice is a polytope lattice")
    }

    pub fn face_vertex_count(&self, sigma: usize) -> Result<usize> {
        Ok(self.face(sigma)?.vertices.len())
    }

    /// Vertex count of the dual face: the number of facets containing `sigma`.
    pub fn dual_face_vertex_count(&self, sigma: usize) -> Result<usize> {
        Ok(self.face(sigma)?.facets.len())
    }

    /// Number of facets of the face `sigma` itself.
    pub fn face_facet_count(&self, sigma: usize) -> Result<usize> {
        let covers = self.lower_covers(sigma)?;
        if sigma == self.bottom() {
            return Err(Error::Undefined("the empty face has no facets".into()));
        }
        Ok(covers.len())
    }

    /// Facet count of the dual face: the number of faces covering `sigma`.
    pub fn dual_face_facet_count(&self, sigma: usize) -> Result<usize> {
        let covers = self.upper_covers(sigma)?;
        if sigma == self.top() {
            return Err(Error::Undefined("the dual face of the polytope is empty".into()));
        }
        Ok(covers.len())
    }

    /// Faces of a given rank, in index order.
    pub fn faces_of_rank(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.rank == rank)
            .map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex3() -> IncidenceMatrix {
        let facets: Vec<Vec<usize>> = (0..4)
            .map(|j| (0..4).filter(|&i| i != j).collect())
            .collect();
        IncidenceMatrix::from_facets(4, &facets).unwrap()
    }

    fn cube3() -> IncidenceMatrix {
        let facets: Vec<Vec<usize>> = (0..6)
            .map(|j| {
                let (axis, bit) = (j / 2, j % 2);
                (0..8).filter(|v| (v >> axis) & 1 == bit).collect()
            })
            .collect();
        IncidenceMatrix::from_facets(8, &facets).unwrap()
    }

    #[test]
    fn simplex_lattice() {
        let l = FaceLattice::build(&simplex3()).unwrap();
        assert_eq!(l.f_vector(), &[4, 6, 4]);
        assert_eq!(l.len(), 16);
        assert_eq!(l.dim(), 3);
    }

    #[test]
    fn cube_lattice_and_counts() {
        let l = FaceLattice::build(&cube3()).unwrap();
        assert_eq!(l.f_vector(), &[8, 12, 6]);
        assert_eq!(l.len(), 28);
        assert_eq!(l.face_vertex_count(l.bottom()).unwrap(), 0);
        assert_eq!(l.face_vertex_count(l.top()).unwrap(), 8);
        assert_eq!(l.dual_face_vertex_count(l.top()).unwrap(), 0);
        assert_eq!(l.face_facet_count(l.top()).unwrap(), 6);
        assert_eq!(l.dual_face_facet_count(l.bottom()).unwrap(), 8);
        for sq in l.faces_of_rank(3) {
            assert_eq!(l.face_vertex_count(sq).unwrap(), 4);
            assert_eq!(l.face_facet_count(sq).unwrap(), 4);
            assert_eq!(l.dual_face_facet_count(sq).unwrap(), 1);
        }
        for e in l.faces_of_rank(2) {
            assert_eq!(l.face_facet_count(e).unwrap(), 2);
        }
        for v in l.faces_of_rank(1) {
            assert_eq!(l.dual_face_vertex_count(v).unwrap(), 3);
            assert_eq!(l.dual_face_facet_count(v).unwrap(), 3);
        }
    }

    #[test]
    fn count_errors() {
        let l = FaceLattice::build(&cube3()).unwrap();
        assert!(matches!(l.face_facet_count(0), Err(Error::Undefined(_))));
        assert!(matches!(l.dual_face_facet_count(l.top()), Err(Error::Undefined(_))));
        assert!(matches!(l.face_vertex_count(999), Err(Error::FaceIndex(999))));
        assert!(matches!(l.dual_face_vertex_count(999), Err(Error::FaceIndex(999))));
    }

    #[test]
    fn segment_is_admitted() {
        let m = IncidenceMatrix::from_facets(2, &[vec![0], vec![1]]).unwrap();
        let l = FaceLattice::build(&m).unwrap();
        assert_eq!(l.dim(), 1);
        assert_eq!(l.f_vector(), &[2]);
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn rejects_structural_defects() {
        let dup = IncidenceMatrix::from_facets(3, &[vec![0, 1], vec![0, 1], vec![2]]);
        assert!(matches!(dup, Err(Error::InvalidMatrix(m)) if m.contains("facets 0 and 1")));
        let empty_row = IncidenceMatrix::from_facets(3, &[vec![0], vec![1]]);
        assert!(matches!(empty_row, Err(Error::InvalidMatrix(m)) if m.contains("vertex 2")));
        let empty_col = IncidenceMatrix::from_facets(2, &[vec![0], vec![], vec![1]]);
        assert!(matches!(empty_col, Err(Error::InvalidMatrix(m)) if m.contains("facet 1")));
        let twin_vertices = IncidenceMatrix::from_facets(3, &[vec![0, 1], vec![2]]);
        assert!(matches!(twin_vertices, Err(Error::InvalidMatrix(m)) if m.contains("vertices 0 and 1")));
        let out_of_range = IncidenceMatrix::from_facets(2, &[vec![0], vec![5]]);
        assert!(matches!(out_of_range, Err(Error::InvalidMatrix(m)) if m.contains("facet 1")));
        let all = IncidenceMatrix::from_facets(2, &[vec![0, 1], vec![1]]);
        assert!(matches!(all, Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn rejects_non_polytopal() {
        // A square with one extra facet cutting across two opposite vertices.
        let m = IncidenceMatrix::from_facets(
            4,
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(FaceLattice::build(&m), Err(Error::NotPolytopal(_))));

        // Nested facets: {0} ⊂ {0,1}.
        let m = IncidenceMatrix::from_facets(3, &[vec![0], vec![0, 1], vec![1, 2], vec![2]]).unwrap();
        assert!(matches!(FaceLattice::build(&m), Err(Error::NotPolytopal(_))));

        // Three "facets" pairwise meeting in single vertices, but with a vertex in only one facet.
        let m = IncidenceMatrix::from_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(FaceLattice::build(&m), Err(Error::NotPolytopal(_))));
    }

    #[test]
    fn galois_pairs_are_closed() {
        let m = cube3();
        let l = FaceLattice::build(&m).unwrap();
        for face in l.faces() {
            assert_eq!(m.common_facets(&face.vertices), face.facets);
            if face.rank <= l.dim() {
                assert_eq!(m.common_vertices(&face.facets), face.vertices);
            }
        }
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let l = FaceLattice::build(&cube3()).unwrap();
        let d = l.dual();
        assert_eq!(d.f_vector(), &[6, 12, 8]);
        for sigma in 0..l.len() {
            let tau = l.dual_face_in(&d, sigma).unwrap();
            assert_eq!(
                l.face_vertex_count(sigma).unwrap(),
                d.dual_face_vertex_count(tau).unwrap()
            );
            assert_eq!(l.faces()[sigma].rank + d.faces()[tau].rank, l.dim() + 1);
        }
        let dd = d.dual();
        assert_eq!(dd.matrix(), l.matrix());
        assert_eq!(dd.faces(), l.faces());
    }
}
