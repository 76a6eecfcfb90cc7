//! Combinatorial isomorphism of incidence matrices by backtracking.
//!
//! Two polytopes are combinatorially equivalent iff their vertex-facet
//! incidences agree after relabeling vertices and facets, since atoms and
//! coatoms generate the whole face lattice.

use crate::bitset::BitSet;
use crate::lattice::IncidenceMatrix;

/// Default number of search nodes before a search is reported inconclusive.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// Vertex `v` of the source is sent to `vertex_map[v]` of the target.
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(Isomorphism),
    /// The search space was exhausted.
    NotIsomorphic,
    /// The node budget ran out before a decision.
    Inconclusive { explored: u64 },
}

impl IsoSearch {
    pub fn found(&self) -> Option<&Isomorphism> {
        match self {
            IsoSearch::Found(iso) => Some(iso),
            _ => None,
        }
    }
}

/// Searches for an incidence-preserving relabeling from `a` onto `b`.
pub fn find_isomorphism(a: &IncidenceMatrix, b: &IncidenceMatrix, budget: u64) -> IsoSearch {
    if a.n_vertices() != b.n_vertices() || a.n_facets() != b.n_facets() {
        return IsoSearch::NotIsomorphic;
    }
    let (va, fa) = signatures(a);
    let (vb, fb) = signatures(b);
    let mut sorted_a = va.clone();
    let mut sorted_b = vb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return IsoSearch::NotIsomorphic;
    }
    let n_facets = a.n_facets();
    let facet_candidates: Vec<BitSet> = fa
        .iter()
        .map(|sig| BitSet::from_indices(n_facets, (0..n_facets).filter(|&g| &fb[g] == sig)))
        .collect();
    if facet_candidates.iter().any(BitSet::is_empty) {
        return IsoSearch::NotIsomorphic;
    }
    let vertex_candidates: Vec<Vec<usize>> = va
        .iter()
        .map(|sig| (0..b.n_vertices()).filter(|&w| &vb[w] == sig).collect())
        .collect();

    let mut search = Search {
        a,
        b,
        order: traversal_order(a),
        vertex_candidates,
        vertex_map: vec![usize::MAX; a.n_vertices()],
        used: vec![false; b.n_vertices()],
        explored: 0,
        budget,
    };
    match search.extend(0, facet_candidates) {
        Outcome::Found(facet_map) => IsoSearch::Found(Isomorphism {
            vertex_map: search.vertex_map,
            facet_map,
        }),
        Outcome::Exhausted => IsoSearch::NotIsomorphic,
        Outcome::OutOfBudget => IsoSearch::Inconclusive {
            explored: search.explored,
        },
    }
}

/// Checks that a proposed relabeling maps the incidences of `a` exactly onto those of `b`.
pub fn verify_isomorphism(a: &IncidenceMatrix, b: &IncidenceMatrix, iso: &Isomorphism) -> bool {
    let bijective = |map: &[usize], n: usize| {
        let mut hit = vec![false; n];
        map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
    };
    a.n_vertices() == b.n_vertices()
        && a.n_facets() == b.n_facets()
        && bijective(&iso.vertex_map, b.n_vertices())
        && bijective(&iso.facet_map, b.n_facets())
        && (0..a.n_vertices()).all(|v| {
            (0..a.n_facets())
                .all(|f| a.incident(v, f) == b.incident(iso.vertex_map[v], iso.facet_map[f]))
        })
}

type Signature = (usize, Vec<usize>);

/// Degree plus the sorted sizes of neighbors, for vertices and facets.
fn signatures(m: &IncidenceMatrix) -> (Vec<Signature>, Vec<Signature>) {
    let vertices = (0..m.n_vertices())
        .map(|v| {
            let row = m.vertex_facets(v);
            let mut sizes: Vec<usize> = row.iter().map(|f| m.facet(f).len()).collect();
            sizes.sort_unstable();
            (row.len(), sizes)
        })
        .collect();
    let facets = (0..m.n_facets())
        .map(|f| {
            let col = m.facet(f);
            let mut degrees: Vec<usize> = col.iter().map(|v| m.vertex_facets(v).len()).collect();
            degrees.sort_unstable();
            (col.len(), degrees)
        })
        .collect();
    (vertices, facets)
}

/// Vertices in breadth-first order over shared facets, so each new vertex is constrained early.
fn traversal_order(m: &IncidenceMatrix) -> Vec<usize> {
    let n = m.n_vertices();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for f in m.vertex_facets(v).iter() {
                for u in m.facet(f).iter() {
                    if !seen[u] {
                        seen[u] = true;
                        order.push(u);
                    }
                }
            }
        }
    }
    order
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    a: &'a IncidenceMatrix,
    b: &'a IncidenceMatrix,
    order: Vec<usize>,
    vertex_candidates: Vec<Vec<usize>>,
    vertex_map: Vec<usize>,
    used: Vec<bool>,
    explored: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, facet_candidates: Vec<BitSet>) -> Outcome {
        self.explored += 1;
        if self.explored > self.budget {
            return Outcome::OutOfBudget;
        }
        if depth == self.order.len() {
            // Facet columns are pairwise distinct, so each candidate set is now a singleton.
            let map: Option<Vec<usize>> = facet_candidates
                .iter()
                .map(|c| (c.len() == 1).then(|| c.iter().next().unwrap()))
                .collect();
            return match map {
                Some(map) => Outcome::Found(map),
                None => Outcome::Exhausted,
            };
        }
        let v = self.order[depth];
        let row = self.a.vertex_facets(v);
        for i in 0..self.vertex_candidates[v].len() {
            let w = self.vertex_candidates[v][i];
            if self.used[w] {
                continue;
            }
            let image_row = self.b.vertex_facets(w);
            let image_complement = image_row.complement();
            let mut refined = facet_candidates.clone();
            let mut feasible = true;
            for (f, cand) in refined.iter_mut().enumerate() {
                if row.contains(f) {
                    cand.intersect_with(image_row);
                } else {
                    cand.intersect_with(&image_complement);
                }
                if cand.is_empty() {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }
            self.used[w] = true;
            self.vertex_map[v] = w;
            match self.extend(depth + 1, refined) {
                Outcome::Exhausted => {}
                done => return done,
            }
            self.used[w] = false;
            self.vertex_map[v] = usize::MAX;
        }
        Outcome::Exhausted
    }
}
