//! Incidence-level polytope constructions: standard families, free join,
//! pyramid, vertex truncation, connected sum along simplex facets, and
//! stacked polytopes.
//!
//! Every constructor validates its output by building the face lattice, so a
//! [`PolytopeSpec`] always carries a checked polytope lattice.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{FaceLattice, IncidenceMatrix, MAX_WIDTH};

#[derive(Clone, Debug)]
pub struct PolytopeSpec {
    pub name: String,
    /// Construction expression that reproduces this polytope.
    pub provenance: String,
    lattice: FaceLattice,
}

impl PolytopeSpec {
    /// Validates `matrix` as a polytope of dimension `dim`.
    pub fn new(
        name: impl Into<String>,
        provenance: impl Into<String>,
        matrix: IncidenceMatrix,
        dim: Option<usize>,
    ) -> Result<Self> {
        let provenance = provenance.into();
        let lattice =
            FaceLattice::build(&matrix).map_err(|e| Error::construction(&provenance, e))?;
        if let Some(dim) = dim {
            if lattice.dim() != dim {
                return Err(Error::construction(
                    &provenance,
                    format!("expected dimension {dim}, lattice has dimension {}", lattice.dim()),
                ));
            }
        }
        Ok(PolytopeSpec {
            name: name.into(),
            provenance,
            lattice,
        })
    }

    pub fn from_lattice(name: impl Into<String>, provenance: impl Into<String>, lattice: FaceLattice) -> Self {
        PolytopeSpec {
            name: name.into(),
            provenance: provenance.into(),
            lattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn matrix(&self) -> &IncidenceMatrix {
        self.lattice.matrix()
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FaceLattice {
        self.lattice
    }

    pub fn n_vertices(&self) -> usize {
        self.matrix().n_vertices()
    }

    pub fn n_facets(&self) -> usize {
        self.matrix().n_facets()
    }
}

fn labeled(
    provenance: &str,
    n_vertices: usize,
    facets: Vec<BitSet>,
    vertex_labels: Vec<String>,
    facet_labels: Vec<String>,
    dim: usize,
) -> Result<PolytopeSpec> {
    let matrix = IncidenceMatrix::from_sets(n_vertices, facets, vertex_labels, facet_labels)
        .map_err(|e| Error::construction(provenance, e))?;
    PolytopeSpec::new(provenance, provenance, matrix, Some(dim))
}

fn check_dim(expr: &str, d: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::construction(expr, "dimension must be at least 1"));
    }
    Ok(())
}

fn check_width(expr: &str, count: usize) -> Result<()> {
    if count > MAX_WIDTH {
        return Err(Error::Limit(format!(
            "`{expr}` needs {count} elements, more than the width limit {MAX_WIDTH}"
        )));
    }
    Ok(())
}

/// `2^d`, or a value above the width limit when that would overflow.
fn pow2(d: usize) -> usize {
    if d >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        1 << d
    }
}

/// The d-simplex; facet `j` is opposite vertex `j`.
pub fn simplex(d: usize) -> Result<PolytopeSpec> {
    let expr = format!("simplex({d})");
    check_dim(&expr, d)?;
    check_width(&expr, d.saturating_add(1))?;
    let n = d + 1;
    let facets = (0..n)
        .map(|j| BitSet::from_indices(n, (0..n).filter(|&i| i != j)))
        .collect();
    let vertex_labels = (0..n).map(|i| format!("v{i}")).collect();
    let facet_labels = (0..n).map(|j| format!("F{j}")).collect();
    labeled(&expr, n, facets, vertex_labels, facet_labels, d)
}

fn sign_label(bits: usize, d: usize) -> String {
    (0..d).map(|i| if (bits >> i) & 1 == 1 { '+' } else { '-' }).collect()
}

/// The d-cube. Vertex `b` has sign `+` in coordinate `i` iff bit `i` of `b` is set;
/// facet `2i` is `x_i = -1` and facet `2i + 1` is `x_i = +1`.
pub fn cube(d: usize) -> Result<PolytopeSpec> {
    let expr = format!("cube({d})");
    check_dim(&expr, d)?;
    let n = pow2(d);
    check_width(&expr, n)?;
    let facets = (0..2 * d)
        .map(|j| {
            let (axis, bit) = (j / 2, j % 2);
            BitSet::from_indices(n, (0..n).filter(|v| (v >> axis) & 1 == bit))
        })
        .collect();
    let vertex_labels = (0..n).map(|b| sign_label(b, d)).collect();
    let facet_labels = (0..2 * d)
        .map(|j| format!("x{}{}", j / 2 + 1, if j % 2 == 1 { '+' } else { '-' }))
        .collect();
    labeled(&expr, n, facets, vertex_labels, facet_labels, d)
}

/// The d-dimensional cross-polytope. Vertex `2i` is `-e_i`, vertex `2i + 1` is `+e_i`;
/// facet `b` is the orthant whose sign in coordinate `i` is bit `i` of `b`.
pub fn cross_polytope(d: usize) -> Result<PolytopeSpec> {
    let expr = format!("cross({d})");
    check_dim(&expr, d)?;
    let m = pow2(d);
    check_width(&expr, m)?;
    let n = 2 * d;
    let facets = (0..m)
        .map(|b| BitSet::from_indices(n, (0..d).map(|i| 2 * i + ((b >> i) & 1))))
        .collect();
    let vertex_labels = (0..n)
        .map(|v| format!("{}e{}", if v % 2 == 1 { '+' } else { '-' }, v / 2 + 1))
        .collect();
    let facet_labels = (0..m).map(|b| sign_label(b, d)).collect();
    labeled(&expr, n, facets, vertex_labels, facet_labels, d)
}

/// The dual polytope: vertices and facets trade places.
pub fn dual(p: &PolytopeSpec) -> PolytopeSpec {
    let expr = format!("dual({})", p.provenance);
    PolytopeSpec::from_lattice(expr.clone(), expr, p.lattice().dual())
}

fn prefixed<'a>(prefix: &str, labels: &'a [String]) -> impl Iterator<Item = String> + 'a {
    let prefix = prefix.to_string();
    labels.iter().map(move |l| format!("{prefix}.{l}"))
}

/// Free join: the vertex sets are placed side by side and every facet of one
/// operand is joined with the whole of the other.
///
/// Facets `0..m1` are `F ∪ V2` for the facets `F` of `p1`; the rest are `V1 ∪ F`
/// for the facets of `p2`.
pub fn free_join(p1: &PolytopeSpec, p2: &PolytopeSpec) -> Result<PolytopeSpec> {
    let expr = format!("join({},{})", p1.provenance, p2.provenance);
    let (a, b) = (p1.matrix(), p2.matrix());
    let (n1, n2) = (a.n_vertices(), b.n_vertices());
    let n = n1 + n2;
    check_width(&expr, n.max(a.n_facets() + b.n_facets()))?;
    let all1 = BitSet::full(n1).shifted(n, 0);
    let all2 = BitSet::full(n2).shifted(n, n1);
    let mut facets = Vec::with_capacity(a.n_facets() + b.n_facets());
    for f in a.facets() {
        facets.push(f.shifted(n, 0).union(&all2));
    }
    for f in b.facets() {
        facets.push(all1.union(&f.shifted(n, n1)));
    }
    let vertex_labels = prefixed("p1", a.vertex_labels())
        .chain(prefixed("p2", b.vertex_labels()))
        .collect();
    let facet_labels = prefixed("p1", a.facet_labels())
        .chain(prefixed("p2", b.facet_labels()))
        .collect();
    labeled(&expr, n, facets, vertex_labels, facet_labels, p1.dim() + p2.dim() + 1)
}

/// Pyramid over `p`. The apex is the last vertex and the base the last facet;
/// facet `j < m` is facet `j` of `p` extended by the apex.
pub fn pyramid(p: &PolytopeSpec) -> Result<PolytopeSpec> {
    let expr = format!("pyramid({})", p.provenance);
    let m = p.matrix();
    let n = m.n_vertices() + 1;
    check_width(&expr, n.max(m.n_facets() + 1))?;
    let apex = n - 1;
    let mut facets: Vec<BitSet> = m
        .facets()
        .iter()
        .map(|f| {
            let mut g = f.shifted(n, 0);
            g.insert(apex);
            g
        })
        .collect();
    facets.push(BitSet::full(m.n_vertices()).shifted(n, 0));
    let mut vertex_labels = m.vertex_labels().to_vec();
    vertex_labels.push("apex".into());
    let mut facet_labels = m.facet_labels().to_vec();
    facet_labels.push("base".into());
    labeled(&expr, n, facets, vertex_labels, facet_labels, p.dim() + 1)
}

/// Cuts off a simple vertex `v`.
///
/// The remaining vertices keep their relative order; the new vertices, one per
/// edge at `v`, follow in order of the edge's other endpoint. The new simplex
/// facet is appended last.
pub fn truncate_simple_vertex(p: &PolytopeSpec, v: usize) -> Result<PolytopeSpec> {
    let expr = format!("truncate({},{v})", p.provenance);
    let m = p.matrix();
    let l = p.lattice();
    let d = p.dim();
    if v >= m.n_vertices() {
        return Err(Error::construction(
            &expr,
            format!("vertex {v} out of range (polytope has {} vertices)", m.n_vertices()),
        ));
    }
    let degree = m.vertex_facets(v).len();
    if degree != d {
        return Err(Error::construction(
            &expr,
            format!("vertex {v} is not simple: it lies in {degree} facets, dimension is {d}"),
        ));
    }
    let atom = l
        .find(&BitSet::from_indices(m.n_vertices(), [v]))
        .expect("every vertex is an atom");
    let mut neighbors: Vec<usize> = l
        .upper_covers(atom)?
        .iter()
        .map(|&e| {
            let mut ends = l.faces()[e].vertices.clone();
            ends.remove(v);
            ends.iter().next().expect("an edge has two vertices")
        })
        .collect();
    neighbors.sort_unstable();
    if neighbors.len() != d {
        return Err(Error::construction(
            &expr,
            format!("vertex {v} has {} edges, expected {d}", neighbors.len()),
        ));
    }

    let kept: Vec<usize> = (0..m.n_vertices()).filter(|&u| u != v).collect();
    let n = kept.len() + d;
    check_width(&expr, n)?;
    let mut renumber = vec![usize::MAX; m.n_vertices()];
    for (i, &u) in kept.iter().enumerate() {
        renumber[u] = i;
    }
    let cut_index = |k: usize| kept.len() + k;

    let mut facets = Vec::with_capacity(m.n_facets() + 1);
    for f in m.facets() {
        let mut g = BitSet::from_indices(n, f.iter().filter(|&u| u != v).map(|u| renumber[u]));
        if f.contains(v) {
            for (k, &u) in neighbors.iter().enumerate() {
                if f.contains(u) {
                    g.insert(cut_index(k));
                }
            }
        }
        facets.push(g);
    }
    facets.push(BitSet::from_indices(n, (0..d).map(cut_index)));

    let labels = m.vertex_labels();
    let vertex_labels = kept
        .iter()
        .map(|&u| labels[u].clone())
        .chain(neighbors.iter().map(|&u| format!("cut.{}~{}", labels[v], labels[u])))
        .collect();
    let mut facet_labels = m.facet_labels().to_vec();
    facet_labels.push(format!("cut.{}", labels[v]));
    labeled(&expr, n, facets, vertex_labels, facet_labels, d)
}

/// Connected sum along simplex facets `fp` of `p` and `fq` of `q`.
///
/// `gluing[i]` is the vertex of `fq` identified with the `i`-th smallest vertex of
/// `fp`; `None` pairs both vertex lists in sorted order. The vertices of `p` come
/// first, followed by the unglued vertices of `q`. Facets of `p` (without `fp`)
/// precede those of `q` (without `fq`).
pub fn connected_sum(
    p: &PolytopeSpec,
    q: &PolytopeSpec,
    fp: usize,
    fq: usize,
    gluing: Option<&[usize]>,
) -> Result<PolytopeSpec> {
    let expr = format!("sum({},{},{fp},{fq})", p.provenance, q.provenance);
    let (a, b) = (p.matrix(), q.matrix());
    let d = p.dim();
    if q.dim() != d {
        return Err(Error::construction(
            &expr,
            format!("dimensions differ: {d} and {}", q.dim()),
        ));
    }
    if fp >= a.n_facets() {
        return Err(Error::construction(&expr, format!("facet {fp} out of range for the first operand")));
    }
    if fq >= b.n_facets() {
        return Err(Error::construction(&expr, format!("facet {fq} out of range for the second operand")));
    }
    let glued_p = a.facet(fp).to_vec();
    let glued_q = b.facet(fq).to_vec();
    if glued_p.len() != d {
        return Err(Error::construction(
            &expr,
            format!("facet {fp} of the first operand has {} vertices, not a simplex", glued_p.len()),
        ));
    }
    if glued_q.len() != d {
        return Err(Error::construction(
            &expr,
            format!("facet {fq} of the second operand has {} vertices, not a simplex", glued_q.len()),
        ));
    }
    let images: Vec<usize> = match gluing {
        None => glued_q.clone(),
        Some(map) => {
            let mut sorted = map.to_vec();
            sorted.sort_unstable();
            if sorted != glued_q {
                return Err(Error::construction(
                    &expr,
                    format!("gluing {map:?} is not a bijection onto the vertices {glued_q:?} of facet {fq}"),
                ));
            }
            map.to_vec()
        }
    };

    let np = a.n_vertices();
    let mut q_to_new = vec![usize::MAX; b.n_vertices()];
    for (&pv, &qv) in glued_p.iter().zip(&images) {
        q_to_new[qv] = pv;
    }
    let mut next = np;
    let mut q_kept = Vec::new();
    for (qv, slot) in q_to_new.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
            q_kept.push(qv);
        }
    }
    let n = next;
    check_width(&expr, n.max(a.n_facets() + b.n_facets()))?;

    let mut facets = Vec::new();
    let mut facet_labels = Vec::new();
    for (j, f) in a.facets().iter().enumerate() {
        if j != fp {
            facets.push(f.shifted(n, 0));
            facet_labels.push(format!("p.{}", a.facet_labels()[j]));
        }
    }
    for (j, f) in b.facets().iter().enumerate() {
        if j != fq {
            facets.push(BitSet::from_indices(n, f.iter().map(|u| q_to_new[u])));
            facet_labels.push(format!("q.{}", b.facet_labels()[j]));
        }
    }
    let vertex_labels = prefixed("p", a.vertex_labels())
        .chain(q_kept.iter().map(|&u| format!("q.{}", b.vertex_labels()[u])))
        .collect();
    let mut spec = labeled(&expr, n, facets, vertex_labels, facet_labels, d)?;
    if gluing.is_some() {
        spec.name = format!("{expr} glued by {images:?}");
    }
    Ok(spec)
}

/// Index of the lexicographically smallest facet (by sorted vertex list) among `candidates`.
fn smallest_facet(m: &IncidenceMatrix, candidates: impl Iterator<Item = usize>) -> usize {
    candidates
        .min_by(|&x, &y| m.facet(x).cmp(m.facet(y)))
        .expect("at least one candidate facet")
}

/// A d-simplex with `k` further simplices stacked on it by connected sum.
///
/// Each step glues onto the lexicographically smallest facet created by the
/// previous step (the first step uses the smallest facet overall).
pub fn stacked(d: usize, k: usize) -> Result<PolytopeSpec> {
    let expr = format!("stacked({d},{k})");
    let base = simplex(d)?;
    if k == 0 {
        return Ok(PolytopeSpec { name: expr.clone(), provenance: expr, ..base });
    }
    if d < 2 {
        return Err(Error::construction(&expr, "stacking needs dimension at least 2"));
    }
    let brick = simplex(d)?;
    let brick_facet = smallest_facet(brick.matrix(), 0..brick.n_facets());
    let mut current = base;
    let mut fresh = 0..current.n_facets();
    for _ in 0..k {
        let target = smallest_facet(current.matrix(), fresh.clone());
        current = connected_sum(&current, &brick, target, brick_facet, None)
            .map_err(|e| Error::construction(&expr, e))?;
        let m = current.n_facets();
        fresh = m - d..m;
    }
    let m = current.matrix();
    let matrix = IncidenceMatrix::from_sets(
        m.n_vertices(),
        m.facets().to_vec(),
        (0..m.n_vertices()).map(|i| format!("v{i}")).collect(),
        (0..m.n_facets()).map(|j| format!("F{j}")).collect(),
    )?;
    PolytopeSpec::new(expr.clone(), expr, matrix, Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::{find_isomorphism, DEFAULT_BUDGET};

    fn isomorphic(a: &PolytopeSpec, b: &PolytopeSpec) -> bool {
        find_isomorphism(a.matrix(), b.matrix(), DEFAULT_BUDGET).found().is_some()
    }

    #[test]
    fn simplices() {
        assert_eq!(simplex(1).unwrap().lattice().f_vector(), &[2]);
        assert_eq!(simplex(3).unwrap().lattice().f_vector(), &[4, 6, 4]);
        let s6 = simplex(6).unwrap();
        assert_eq!((s6.n_vertices(), s6.n_facets()), (7, 7));
        assert!(simplex(0).is_err());
    }

    #[test]
    fn cubes() {
        assert_eq!(cube(3).unwrap().lattice().f_vector(), &[8, 12, 6]);
        let c4 = cube(4).unwrap();
        assert_eq!((c4.n_vertices(), c4.n_facets()), (16, 8));
        assert!(isomorphic(&cube(1).unwrap(), &simplex(1).unwrap()));
        assert!(cube(0).is_err());
        assert!(matches!(cube(11), Err(Error::Limit(_))));
    }

    #[test]
    fn cross_polytopes() {
        assert_eq!(cross_polytope(3).unwrap().lattice().f_vector(), &[6, 12, 8]);
        let x4 = cross_polytope(4).unwrap();
        assert_eq!((x4.n_vertices(), x4.n_facets()), (8, 16));
        assert!(isomorphic(&cross_polytope(3).unwrap(), &dual(&cube(3).unwrap())));
        assert!(matches!(cross_polytope(64), Err(Error::Limit(_))));
    }

    #[test]
    fn duals() {
        assert_eq!(dual(&cube(3).unwrap()).lattice().f_vector(), &[6, 12, 8]);
        let s = simplex(4).unwrap();
        assert_eq!(dual(&s).lattice().f_vector(), s.lattice().f_vector());
        let x = cross_polytope(4).unwrap();
        let xx = dual(&dual(&x));
        assert_eq!(xx.matrix(), x.matrix());
        assert_eq!(xx.provenance, "dual(dual(cross(4)))");
    }

    #[test]
    fn joins() {
        let seg = simplex(1).unwrap();
        let j = free_join(&seg, &seg).unwrap();
        assert_eq!(j.dim(), 3);
        assert!(isomorphic(&j, &simplex(3).unwrap()));
        let j = free_join(&cube(3).unwrap(), &cross_polytope(3).unwrap()).unwrap();
        assert_eq!(j.dim(), 7);
        assert_eq!((j.n_vertices(), j.n_facets()), (14, 14));
        assert_eq!(j.provenance, "join(cube(3),cross(3))");
        assert_eq!(j.matrix().vertex_labels()[0], "p1.---");
    }

    #[test]
    fn pyramids() {
        assert!(isomorphic(&pyramid(&simplex(3).unwrap()).unwrap(), &simplex(4).unwrap()));
        assert_eq!(pyramid(&cube(2).unwrap()).unwrap().lattice().f_vector(), &[5, 8, 5]);
        let p = pyramid(&cube(3).unwrap()).unwrap();
        assert_eq!((p.n_vertices(), p.n_facets(), p.dim()), (9, 7, 4));
    }

    #[test]
    fn truncations() {
        let c = cube(3).unwrap();
        for v in 0..8 {
            let t = truncate_simple_vertex(&c, v).unwrap();
            assert_eq!(t.lattice().f_vector(), &[10, 15, 7]);
            let cut = t.matrix().facet(t.n_facets() - 1);
            assert_eq!(cut.len(), 3);
        }
        let t = truncate_simple_vertex(&simplex(3).unwrap(), 2).unwrap();
        assert_eq!(t.lattice().f_vector(), &[6, 9, 5]);
    }

    #[test]
    fn truncation_errors() {
        let p = pyramid(&cube(2).unwrap()).unwrap();
        let err = truncate_simple_vertex(&p, 4).unwrap_err();
        assert!(err.to_string().contains("not simple"), "{err}");
        assert!(truncate_simple_vertex(&p, 9).unwrap_err().to_string().contains("out of range"));
    }

    #[test]
    fn simplex_sums() {
        let s = simplex(3).unwrap();
        for fp in 0..4 {
            for fq in 0..4 {
                let b = connected_sum(&s, &s, fp, fq, None).unwrap();
                assert_eq!(b.lattice().f_vector(), &[5, 9, 6]);
            }
        }
        let glued = connected_sum(&s, &s, 0, 0, Some(&[3, 1, 2])).unwrap();
        assert_eq!(glued.lattice().f_vector(), &[5, 9, 6]);
    }

    #[test]
    fn sum_errors() {
        let s = simplex(3).unwrap();
        let c = cube(3).unwrap();
        assert!(connected_sum(&s, &c, 0, 0, None).unwrap_err().to_string().contains("not a simplex"));
        assert!(connected_sum(&s, &simplex(2).unwrap(), 0, 0, None)
            .unwrap_err()
            .to_string()
            .contains("dimensions differ"));
        assert!(connected_sum(&s, &s, 0, 0, Some(&[0, 1, 2]))
            .unwrap_err()
            .to_string()
            .contains("not a bijection"));
        // Segments glued at a point leave a vertex in no facet.
        let seg = simplex(1).unwrap();
        assert!(connected_sum(&seg, &seg, 0, 0, None).is_err());
    }

    #[test]
    fn stacked_three_polytopes() {
        for k in 0..=10 {
            let s = stacked(3, k).unwrap();
            assert_eq!(s.lattice().f_vector(), &[4 + k, 6 + 3 * k, 4 + 2 * k], "k = {k}");
        }
    }

    #[test]
    fn stacked_higher_dimensions() {
        for d in 2..=5 {
            for k in 0..=4 {
                let s = stacked(d, k).unwrap();
                assert_eq!(s.n_vertices(), d + 1 + k);
                assert_eq!(s.n_facets(), d + 1 + k * (d - 1));
            }
        }
        assert!(stacked(1, 1).is_err());
    }
}
