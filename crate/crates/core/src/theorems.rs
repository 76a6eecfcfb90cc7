//! Face-level criteria for vertex-facet assignments and their cross-checks.
//!
//! Three independent routes decide the same question:
//!
//! * the matching route in [`crate::matching`],
//! * the face bound: `f0(σ) + f0(σ*) <= max(f0(P), f0(P*))` for every face `σ`,
//! * the facet-subset route: for `f0(P) >= f_{d-1}(P)`, every set of `k` facets
//!   meets in at most `f0(P) - k` vertices (exhaustive).
//!
//! The facet-majority condition (`σ` or `σ*` has at least as many facets as
//! vertices, for every face) is sufficient for the face bound and always holds
//! in dimension at most 6.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::isomorphism::{find_isomorphism, IsoSearch, DEFAULT_BUDGET};
use crate::lattice::{FaceLattice, IncidenceMatrix};
use crate::matching::{decide_assignment, Outcome};

/// Largest facet count the exhaustive facet-subset check accepts.
pub const MAX_SUBSET_FACETS: usize = 20;

/// Largest face count for which the self-duality search runs.
pub const MAX_SELF_DUAL_FACES: usize = 10_000;

/// Dimension up to which the facet-majority condition is guaranteed.
pub const MAJORITY_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceViolation {
    pub face: usize,
    pub rank: usize,
    pub vertices: Vec<usize>,
    /// `f0(σ)`
    pub n_vertices: usize,
    /// `f0(σ*)`: facets containing the face.
    pub n_dual_vertices: usize,
    /// `max(f0(P), f0(P*))`
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceBound {
    pub holds: bool,
    pub violation: Option<FaceViolation>,
}

/// Sizes around a face that failed the facet-majority condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MajorityFailure {
    pub face: usize,
    pub rank: usize,
    pub n_vertices: usize,
    pub n_facets: usize,
    pub n_dual_vertices: usize,
    pub n_dual_facets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetMajority {
    pub holds: bool,
    pub failures: Vec<MajorityFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetSubsetCheck {
    pub holds: bool,
    /// Whether the check ran on the dual (transposed) incidence.
    pub on_dual: bool,
    pub subsets_checked: u64,
    /// First violating facet subset and the vertices common to all of them.
    pub violation: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_simple: bool,
    pub is_simplicial: bool,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub n_faces: usize,
    pub face_bound_holds: bool,
    pub violating_face: Option<FaceViolation>,
    pub facet_majority_holds: bool,
    pub facet_majority_failures: Vec<MajorityFailure>,
    pub is_simple: bool,
    pub is_simplicial: bool,
    pub matching_verdict: Outcome,
}

/// Scans every face, including the empty face and the polytope, for the face bound.
pub fn check_face_bound(l: &FaceLattice) -> FaceBound {
    let m = l.matrix();
    let bound = m.n_vertices().max(m.n_facets());
    // Faces are ordered by rank, so the first hit has minimal rank.
    let violation = l.faces().iter().enumerate().find_map(|(i, face)| {
        let (a, b) = (face.vertices.len(), face.facets.len());
        (a + b > bound).then(|| FaceViolation {
            face: i,
            rank: face.rank,
            vertices: face.vertices.to_vec(),
            n_vertices: a,
            n_dual_vertices: b,
            bound,
        })
    });
    FaceBound {
        holds: violation.is_none(),
        violation,
    }
}

/// Checks that every face or its dual face has at least as many facets as vertices.
///
/// The empty polytope counts as having no vertices and no facets, so the
/// empty face and the polytope itself always pass.
pub fn check_facet_majority(l: &FaceLattice) -> FacetMajority {
    let (bottom, top) = (l.bottom(), l.top());
    let mut failures = Vec::new();
    for (i, face) in l.faces().iter().enumerate() {
        let n_vertices = face.vertices.len();
        let n_facets = if i == bottom { 0 } else { l.lower_covers(i).map_or(0, <[usize]>::len) };
        let n_dual_vertices = face.facets.len();
        let n_dual_facets = if i == top { 0 } else { l.upper_covers(i).map_or(0, <[usize]>::len) };
        if n_facets < n_vertices && n_dual_facets < n_dual_vertices {
            failures.push(MajorityFailure {
                face: i,
                rank: face.rank,
                n_vertices,
                n_facets,
                n_dual_vertices,
                n_dual_facets,
            });
        }
    }
    FacetMajority {
        holds: failures.is_empty(),
        failures,
    }
}

/// Exhaustive facet-subset check on `m` itself; needs `f0 >= f_{d-1}`.
pub fn check_facet_subsets(m: &IncidenceMatrix) -> Result<FacetSubsetCheck> {
    let (n, f) = (m.n_vertices(), m.n_facets());
    if n < f {
        return Err(Error::Precondition(format!(
            "facet-subset check needs at least as many vertices as facets ({n} < {f}); apply it to the dual"
        )));
    }
    if f > MAX_SUBSET_FACETS {
        return Err(Error::Limit(format!(
            "{f} facets exceed the exhaustive subset limit {MAX_SUBSET_FACETS}"
        )));
    }
    let mut checked = 0u64;
    for mask in 1u64..(1u64 << f) {
        checked += 1;
        let chosen = BitSet::from_indices(f, (0..f).filter(|j| mask >> j & 1 == 1));
        let common = m.common_vertices(&chosen);
        let k = chosen.len();
        if common.len() + k > n {
            return Ok(FacetSubsetCheck {
                holds: false,
                on_dual: false,
                subsets_checked: checked,
                violation: Some((chosen.to_vec(), common.to_vec())),
            });
        }
    }
    Ok(FacetSubsetCheck {
        holds: true,
        on_dual: false,
        subsets_checked: checked,
        violation: None,
    })
}

/// Runs [`check_facet_subsets`] on whichever of `P`, `P*` satisfies its hypothesis.
pub fn facet_subset_oracle(m: &IncidenceMatrix) -> Result<FacetSubsetCheck> {
    if m.n_vertices() >= m.n_facets() {
        check_facet_subsets(m)
    } else {
        let mut check = check_facet_subsets(&m.transpose())?;
        check.on_dual = true;
        Ok(check)
    }
}

pub fn classify(l: &FaceLattice) -> Classification {
    let m = l.matrix();
    let d = l.dim();
    Classification {
        is_simple: (0..m.n_vertices()).all(|v| m.vertex_facets(v).len() == d),
        is_simplicial: m.facets().iter().all(|f| f.len() == d),
        dim: d,
    }
}

/// Runs every check on a built lattice and enforces the implications between them.
pub fn analyze(l: &FaceLattice) -> Result<TheoremReport> {
    let bound = check_face_bound(l);
    let majority = check_facet_majority(l);
    let class = classify(l);
    let verdict = decide_assignment(l.matrix()).outcome;
    let report = TheoremReport {
        dim: l.dim(),
        f_vector: l.f_vector().to_vec(),
        n_faces: l.len(),
        face_bound_holds: bound.holds,
        violating_face: bound.violation,
        facet_majority_holds: majority.holds,
        facet_majority_failures: majority.failures,
        is_simple: class.is_simple,
        is_simplicial: class.is_simplicial,
        matching_verdict: verdict,
    };
    report.check_consistency()?;
    Ok(report)
}

pub fn full_report(m: &IncidenceMatrix) -> Result<TheoremReport> {
    analyze(&FaceLattice::build(m)?)
}

impl TheoremReport {
    pub fn assigned(&self) -> bool {
        self.matching_verdict == Outcome::Assigned
    }

    /// Checks the implication chain between the independent verdicts.
    pub fn check_consistency(&self) -> Result<()> {
        if self.face_bound_holds != self.assigned() {
            return Err(Error::Inconsistency(format!(
                "face bound says {}, matching says {:?}",
                self.face_bound_holds, self.matching_verdict
            )));
        }
        if self.facet_majority_holds && !self.face_bound_holds {
            return Err(Error::Inconsistency(
                "facet-majority condition holds but the face bound fails".into(),
            ));
        }
        if self.dim <= MAJORITY_DIM && !self.facet_majority_holds {
            return Err(Error::Inconsistency(format!(
                "facet-majority condition fails in dimension {}",
                self.dim
            )));
        }
        if (self.is_simple || self.is_simplicial) && !self.assigned() {
            return Err(Error::Inconsistency(
                "simple or simplicial polytope without an assignment".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntiAutomorphism {
    /// Vertex `v` is sent to the facet `vertex_to_facet[v]`.
    pub vertex_to_facet: Vec<usize>,
    pub facet_to_vertex: Vec<usize>,
    /// Image of every face, by face index.
    pub face_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SelfDuality {
    Found(AntiAutomorphism),
    /// Proven absent (count mismatch or exhausted search).
    Absent,
    Inconclusive { reason: String },
}

/// Looks for an order-reversing bijection of the face lattice onto itself.
pub fn search_self_dual_antiautomorphism(l: &FaceLattice) -> Result<SelfDuality> {
    search_self_dual_with_budget(l, DEFAULT_BUDGET)
}

pub fn search_self_dual_with_budget(l: &FaceLattice, budget: u64) -> Result<SelfDuality> {
    let m = l.matrix();
    if m.n_vertices() != m.n_facets() {
        return Ok(SelfDuality::Absent);
    }
    if l.len() > MAX_SELF_DUAL_FACES {
        return Ok(SelfDuality::Inconclusive {
            reason: format!("{} faces exceed the search limit {MAX_SELF_DUAL_FACES}", l.len()),
        });
    }
    let iso = match find_isomorphism(m, &m.transpose(), budget) {
        IsoSearch::Found(iso) => iso,
        IsoSearch::NotIsomorphic => return Ok(SelfDuality::Absent),
        IsoSearch::Inconclusive { explored } => {
            return Ok(SelfDuality::Inconclusive {
                reason: format!("search budget exhausted after {explored} nodes"),
            })
        }
    };
    // A face with facet set T goes to the face whose vertex set is the image of T.
    let n = m.n_vertices();
    let face_map = l
        .faces()
        .iter()
        .map(|face| {
            let image = BitSet::from_indices(n, face.facets.iter().map(|f| iso.facet_map[f]));
            l.find(&image).ok_or_else(|| {
                Error::Inconsistency(format!("anti-automorphism image {image:?} is not a face"))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let anti = AntiAutomorphism {
        vertex_to_facet: iso.vertex_map,
        facet_to_vertex: iso.facet_map,
        face_map,
    };
    if !verify_antiautomorphism(l, &anti.face_map) {
        return Err(Error::Inconsistency("face map is not order-reversing".into()));
    }
    Ok(SelfDuality::Found(anti))
}

/// Checks that `face_map` is a bijection reversing ranks and cover relations.
pub fn verify_antiautomorphism(l: &FaceLattice, face_map: &[usize]) -> bool {
    let total = l.len();
    if face_map.len() != total {
        return false;
    }
    let mut hit = vec![false; total];
    for &y in face_map {
        if y >= total || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    let top_rank = l.dim() + 1;
    (0..total).all(|x| {
        l.faces()[face_map[x]].rank + l.faces()[x].rank == top_rank
            && l.upper_covers(x)
                .unwrap()
                .iter()
                .all(|&y| l.upper_covers(face_map[y]).unwrap().contains(&face_map[x]))
    })
}
