//! Vertex-facet graphs, maximum matchings and Hall-violation certificates.
//!
//! The vertex-facet graph joins a vertex to a facet when they are
//! non-incident; the incident variant uses the complementary edge set.
//! A certificate either carries a matching that covers one side or a set of
//! nodes whose neighborhood is strictly smaller than the set itself.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::IncidenceMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GraphMode {
    /// Edges join non-incident vertex-facet pairs.
    NonIncident,
    /// Edges join incident vertex-facet pairs.
    Incident,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Vertices,
    Facets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Assigned,
    NoAssignment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoveredSide {
    Vertices,
    Facets,
    Both,
    None,
}

#[derive(Clone, Debug)]
pub struct VertexFacetGraph {
    mode: GraphMode,
    vertex_adj: Vec<BitSet>,
    facet_adj: Vec<BitSet>,
}

impl VertexFacetGraph {
    pub fn build(m: &IncidenceMatrix, mode: GraphMode) -> Self {
        let pick = |incident: &BitSet| match mode {
            GraphMode::Incident => incident.clone(),
            GraphMode::NonIncident => incident.complement(),
        };
        VertexFacetGraph {
            mode,
            vertex_adj: (0..m.n_vertices()).map(|v| pick(m.vertex_facets(v))).collect(),
            facet_adj: m.facets().iter().map(pick).collect(),
        }
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_adj.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facet_adj.len()
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Vertices => self.n_vertices(),
            Side::Facets => self.n_facets(),
        }
    }

    pub fn has_edge(&self, vertex: usize, facet: usize) -> bool {
        self.vertex_adj[vertex].contains(facet)
    }

    /// Facets adjacent to a vertex.
    pub fn vertex_neighbors(&self, vertex: usize) -> &BitSet {
        &self.vertex_adj[vertex]
    }

    /// Vertices adjacent to a facet.
    pub fn facet_neighbors(&self, facet: usize) -> &BitSet {
        &self.facet_adj[facet]
    }

    fn adjacency(&self, side: Side) -> &[BitSet] {
        match side {
            Side::Vertices => &self.vertex_adj,
            Side::Facets => &self.facet_adj,
        }
    }

    /// Union of the neighbors of `nodes`, which lie on `side`.
    pub fn neighborhood(&self, side: Side, nodes: &[usize]) -> BitSet {
        let other = match side {
            Side::Vertices => self.n_facets(),
            Side::Facets => self.n_vertices(),
        };
        let adj = self.adjacency(side);
        let mut out = BitSet::empty(other);
        for &x in nodes {
            out.union_with(&adj[x]);
        }
        out
    }

    /// All edges as `(vertex, facet)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertex_adj
            .iter()
            .enumerate()
            .flat_map(|(v, row)| row.iter().map(move |f| (v, f)))
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_adj.iter().map(BitSet::len).sum()
    }

    fn adjacency_lists(&self, side: Side) -> Vec<Vec<usize>> {
        self.adjacency(side).iter().map(BitSet::to_vec).collect()
    }
}

/// A set of nodes on one side whose neighborhood is smaller than the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallWitness {
    pub side: Side,
    pub members: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

impl HallWitness {
    /// Recounts the neighborhood directly from the graph.
    pub fn verify(&self, graph: &VertexFacetGraph) -> bool {
        let n = graph.neighborhood(self.side, &self.members);
        n.to_vec() == self.neighborhood && n.len() < self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    pub mode: GraphMode,
    pub outcome: Outcome,
    /// Matched `(vertex, facet)` pairs, sorted by vertex.
    pub matching: Vec<(usize, usize)>,
    pub covered_side: CoveredSide,
    pub hall_witness: Option<HallWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl MatchingCertificate {
    /// Structural check of every certificate invariant against `graph`.
    pub fn verify(&self, graph: &VertexFacetGraph) -> std::result::Result<(), String> {
        let mut used_v = vec![false; graph.n_vertices()];
        let mut used_f = vec![false; graph.n_facets()];
        for &(v, f) in &self.matching {
            if v >= graph.n_vertices() || f >= graph.n_facets() || !graph.has_edge(v, f) {
                return Err(format!("pair ({v}, {f}) is not an edge"));
            }
            if std::mem::replace(&mut used_v[v], true) || std::mem::replace(&mut used_f[f], true) {
                return Err(format!("pair ({v}, {f}) overlaps another pair"));
            }
        }
        let all_v = used_v.iter().all(|&u| u);
        let all_f = used_f.iter().all(|&u| u);
        match (self.outcome, self.covered_side) {
            (Outcome::Assigned, CoveredSide::None) => return Err("assigned but nothing covered".into()),
            (Outcome::Assigned, CoveredSide::Vertices) if !all_v => return Err("vertices not covered".into()),
            (Outcome::Assigned, CoveredSide::Facets) if !all_f => return Err("facets not covered".into()),
            (Outcome::Assigned, CoveredSide::Both) if !(all_v && all_f) => {
                return Err("matching is not perfect".into())
            }
            (Outcome::NoAssignment, CoveredSide::None) => match &self.hall_witness {
                Some(w) if w.verify(graph) => {}
                Some(_) => return Err("Hall witness does not violate the Hall condition".into()),
                None => return Err("no assignment but no Hall witness".into()),
            },
            (Outcome::NoAssignment, _) => return Err("no assignment but a covered side".into()),
            _ => {}
        }
        Ok(())
    }
}

/// Hopcroft–Karp on left nodes `0..adj.len()`; returns the mates of left and right nodes.
///
/// Neighbors are scanned in the order given, so the result is deterministic.
fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        mate_l: &mut [Option<usize>],
        mate_r: &mut [Option<usize>],
        dist: &mut [usize],
    ) -> bool {
        for &r in &adj[u] {
            let next = mate_r[r];
            let ok = match next {
                None => true,
                Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, mate_l, mate_r, dist),
            };
            if ok {
                mate_l[u] = Some(r);
                mate_r[r] = Some(u);
                return true;
            }
        }
        dist[u] = INF;
        false
    }

    loop {
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found_free = false;
        while let Some(u) = queue.pop_front() {
            for &r in &adj[u] {
                match mate_r[r] {
                    None => found_free = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found_free {
            break;
        }
        let mut progressed = false;
        for u in 0..n_left {
            if mate_l[u].is_none() && augment(u, adj, &mut mate_l, &mut mate_r, &mut dist) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    (mate_l, mate_r)
}

fn matching_size(adj: &[Vec<usize>], n_right: usize) -> usize {
    hopcroft_karp(adj, n_right).0.iter().flatten().count()
}

/// Maximum matching, as `(vertex, facet)` pairs sorted by vertex.
pub fn maximum_matching(g: &VertexFacetGraph) -> Vec<(usize, usize)> {
    let adj = g.adjacency_lists(Side::Vertices);
    let (mate_l, _) = hopcroft_karp(&adj, g.n_facets());
    mate_l
        .iter()
        .enumerate()
        .filter_map(|(v, f)| f.map(|f| (v, f)))
        .collect()
}

/// Left nodes reachable from the unmatched `root` by alternating paths.
///
/// For a maximum matching their neighborhood is exactly the right nodes met on
/// the way, all matched, so it is one smaller than the set (König).
fn alternating_reach(
    adj: &[Vec<usize>],
    n_right: usize,
    mate_r: &[Option<usize>],
    root: usize,
) -> Vec<usize> {
    let mut seen_l = vec![false; adj.len()];
    let mut seen_r = vec![false; n_right];
    let mut queue = VecDeque::from([root]);
    seen_l[root] = true;
    while let Some(u) = queue.pop_front() {
        for &r in &adj[u] {
            if std::mem::replace(&mut seen_r[r], true) {
                continue;
            }
            let w = mate_r[r].expect("no augmenting path from a maximum matching");
            if !std::mem::replace(&mut seen_l[w], true) {
                queue.push_back(w);
            }
        }
    }
    (0..adj.len()).filter(|&u| seen_l[u]).collect()
}

/// Drops members in index order while the remainder still contains a Hall violator.
///
/// The result is an inclusion-minimal violating set.
fn shrink_witness(adj: &[Vec<usize>], n_right: usize, mut members: Vec<usize>) -> Vec<usize> {
    let mut i = 0;
    while i < members.len() {
        let rest: Vec<usize> = members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &u)| u)
            .collect();
        let sub: Vec<Vec<usize>> = rest.iter().map(|&u| adj[u].clone()).collect();
        if matching_size(&sub, n_right) < rest.len() {
            members = rest;
        } else {
            i += 1;
        }
    }
    members
}

/// Attempts to cover `side`; on failure returns a minimal Hall witness on that side.
fn cover(g: &VertexFacetGraph, side: Side) -> (Vec<(usize, usize)>, Option<HallWitness>) {
    let adj = g.adjacency_lists(side);
    let n_right = match side {
        Side::Vertices => g.n_facets(),
        Side::Facets => g.n_vertices(),
    };
    let (mate_l, mate_r) = hopcroft_karp(&adj, n_right);
    let mut pairs: Vec<(usize, usize)> = mate_l
        .iter()
        .enumerate()
        .filter_map(|(u, r)| r.map(|r| (u, r)))
        .map(|(u, r)| match side {
            Side::Vertices => (u, r),
            Side::Facets => (r, u),
        })
        .collect();
    pairs.sort_unstable();
    let witness = mate_l.iter().position(Option::is_none).map(|root| {
        let reach = alternating_reach(&adj, n_right, &mate_r, root);
        let members = shrink_witness(&adj, n_right, reach);
        let neighborhood = g.neighborhood(side, &members).to_vec();
        HallWitness {
            side,
            members,
            neighborhood,
        }
    });
    (pairs, witness)
}

fn certificate(
    g: &VertexFacetGraph,
    side: Side,
    warning: Option<String>,
) -> MatchingCertificate {
    let (matching, hall_witness) = cover(g, side);
    let (outcome, covered_side) = if hall_witness.is_some() {
        (Outcome::NoAssignment, CoveredSide::None)
    } else if matching.len() == g.n_vertices() && matching.len() == g.n_facets() {
        (Outcome::Assigned, CoveredSide::Both)
    } else {
        match side {
            Side::Vertices => (Outcome::Assigned, CoveredSide::Vertices),
            Side::Facets => (Outcome::Assigned, CoveredSide::Facets),
        }
    };
    MatchingCertificate {
        mode: g.mode(),
        outcome,
        matching,
        covered_side,
        hall_witness,
        warning,
    }
}

/// Decides whether a vertex-facet assignment exists.
///
/// Only the smaller side can be covered, so an assignment exists iff the
/// maximum matching saturates it; with equal sides the vertex side is tried.
pub fn decide_assignment(m: &IncidenceMatrix) -> MatchingCertificate {
    let g = VertexFacetGraph::build(m, GraphMode::NonIncident);
    let side = if m.n_vertices() <= m.n_facets() {
        Side::Vertices
    } else {
        Side::Facets
    };
    certificate(&g, side, None)
}

/// Decides whether vertices map injectively to incident facets.
pub fn decide_incident_assignment(m: &IncidenceMatrix) -> MatchingCertificate {
    let g = VertexFacetGraph::build(m, GraphMode::Incident);
    let warning = (m.n_vertices() > m.n_facets()).then(|| {
        format!(
            "more vertices ({}) than facets ({}); no injective map can exist",
            m.n_vertices(),
            m.n_facets()
        )
    });
    certificate(&g, Side::Vertices, warning)
}

/// Vertices adjacent to none of `facets` in the non-incidence graph.
pub fn non_neighborhood(g: &VertexFacetGraph, facets: &BitSet) -> Result<BitSet> {
    if g.mode() != GraphMode::NonIncident {
        return Err(Error::Precondition(
            "non-neighborhoods are defined on the non-incidence graph".into(),
        ));
    }
    if facets.is_empty() {
        return Err(Error::Precondition("the facet set is empty".into()));
    }
    Ok(g.neighborhood(Side::Facets, &facets.to_vec()).complement())
}
