use proptest::prelude::*;

use polyassign::constructions::{dual, free_join};
use polyassign::isomorphism::{find_isomorphism, DEFAULT_BUDGET};
use polyassign::theorems::{check_face_bound, check_facet_subsets, facet_subset_oracle};
use polyassign::{
    decide_assignment, decide_incident_assignment, maximum_matching, non_neighborhood,
    parse_construction, BitSet, GraphMode, IncidenceMatrix, Outcome, PolytopeDocument,
    PolytopeSpec, Side, VertexFacetGraph,
};

/// A base polytope, possibly wrapped in a pyramid or a dual.
fn operand_strategy() -> impl Strategy<Value = String> + Clone {
    let leaf = prop_oneof![
        (1..=4usize).prop_map(|d| format!("simplex({d})")),
        (1..=3usize).prop_map(|d| format!("cube({d})")),
        (1..=3usize).prop_map(|d| format!("cross({d})")),
        (1..=3usize).prop_map(|k| format!("stacked(3,{k})")),
        Just("truncate(cube(3),0)".to_string()),
    ];
    (leaf, 0..3u8).prop_map(|(e, w)| match w {
        0 => e,
        1 => format!("pyramid({e})"),
        _ => format!("dual({e})"),
    })
}

/// Operands and joins of two operands.
fn expr_strategy() -> impl Strategy<Value = String> {
    let wrapped = operand_strategy();
    prop_oneof![
        2 => wrapped.clone(),
        1 => (wrapped.clone(), wrapped).prop_map(|(a, b)| format!("join({a},{b})")),
    ]
}

fn build_within(exprs: impl Strategy<Value = String>, max_side: usize) -> impl Strategy<Value = PolytopeSpec> {
    exprs.prop_filter_map("too large", move |e| {
        let spec = parse_construction(&e).ok()?;
        (spec.n_vertices() <= max_side && spec.n_facets() <= max_side && spec.lattice().len() <= 4000)
            .then_some(spec)
    })
}

fn polytope(max_side: usize) -> impl Strategy<Value = PolytopeSpec> {
    build_within(expr_strategy(), max_side)
}

fn operand(max_side: usize) -> impl Strategy<Value = PolytopeSpec> {
    build_within(operand_strategy(), max_side)
}

/// Arbitrary incidence matrices (not necessarily polytopal) for matching checks.
fn matrix(max_v: usize, max_f: usize) -> impl Strategy<Value = IncidenceMatrix> {
    (2..=max_v, 2..=max_f)
        .prop_flat_map(|(nv, nf)| prop::collection::vec(prop::collection::vec(any::<bool>(), nv), nf))
        .prop_filter_map("degenerate matrix", |rows| {
            let nv = rows[0].len();
            let facets: Vec<Vec<usize>> = rows
                .iter()
                .map(|r| (0..nv).filter(|&v| r[v]).collect())
                .collect();
            IncidenceMatrix::from_facets(nv, &facets).ok()
        })
}

fn brute_matching(g: &VertexFacetGraph) -> usize {
    fn go(g: &VertexFacetGraph, v: usize, used: &mut Vec<bool>) -> usize {
        if v == g.n_vertices() {
            return 0;
        }
        let mut best = go(g, v + 1, used);
        for f in g.vertex_neighbors(v).iter() {
            if !used[f] {
                used[f] = true;
                best = best.max(1 + go(g, v + 1, used));
                used[f] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; g.n_facets()])
}

/// Exhaustive Hall check on one side.
fn hall_holds(g: &VertexFacetGraph, side: Side) -> bool {
    let n = g.side_len(side);
    (1u32..1 << n).all(|mask| {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        g.neighborhood(side, &members).len() >= members.len()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hopcroft_karp_matches_brute_force(m in matrix(8, 8), incident in any::<bool>()) {
        let mode = if incident { GraphMode::Incident } else { GraphMode::NonIncident };
        let g = VertexFacetGraph::build(&m, mode);
        prop_assert_eq!(maximum_matching(&g).len(), brute_matching(&g));
    }

    #[test]
    fn verdict_agrees_with_exhaustive_hall(m in matrix(7, 7)) {
        let g = VertexFacetGraph::build(&m, GraphMode::NonIncident);
        let c = decide_assignment(&m);
        prop_assert!(c.verify(&g).is_ok());
        let small = if m.n_vertices() <= m.n_facets() { Side::Vertices } else { Side::Facets };
        let assigned = c.outcome == Outcome::Assigned;
        prop_assert_eq!(assigned, hall_holds(&g, small));
    }

    #[test]
    fn witnesses_are_inclusion_minimal(m in matrix(8, 8), incident in any::<bool>()) {
        let c = if incident { decide_incident_assignment(&m) } else { decide_assignment(&m) };
        let g = VertexFacetGraph::build(&m, c.mode);
        prop_assert!(c.verify(&g).is_ok());
        if let Some(w) = &c.hall_witness {
            prop_assert!(w.neighborhood.len() < w.members.len());
            for drop in 0..w.members.len() {
                let rest: Vec<usize> = w.members.iter().enumerate()
                    .filter(|&(i, _)| i != drop).map(|(_, &u)| u).collect();
                let sub = (1u32..1 << rest.len()).all(|mask| {
                    let t: Vec<usize> = (0..rest.len()).filter(|&i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
                    g.neighborhood(w.side, &t).len() >= t.len()
                });
                prop_assert!(sub, "removing {} leaves a violator", w.members[drop]);
            }
        }
    }

    #[test]
    fn verdict_is_invariant_under_transpose(m in matrix(8, 8)) {
        prop_assert_eq!(decide_assignment(&m).outcome, decide_assignment(&m.transpose()).outcome);
    }

    #[test]
    fn non_neighborhood_is_the_intersection_face(p in polytope(12)) {
        let m = p.matrix();
        let g = VertexFacetGraph::build(m, GraphMode::NonIncident);
        let nf = m.n_facets();
        for mask in 1u32..1 << nf {
            let t = BitSet::from_indices(nf, (0..nf).filter(|&j| mask >> j & 1 == 1));
            let common = m.common_vertices(&t);
            prop_assert_eq!(&non_neighborhood(&g, &t).unwrap(), &common);
            prop_assert!(p.lattice().find(&common).is_some());
        }
    }

    #[test]
    fn face_bound_matches_matching(p in polytope(16)) {
        let bound = check_face_bound(p.lattice());
        let c = decide_assignment(p.matrix());
        prop_assert_eq!(bound.holds, c.outcome == Outcome::Assigned);
        prop_assert_eq!(check_face_bound(&p.lattice().dual()).holds, bound.holds);
    }

    #[test]
    fn facet_subset_oracle_agrees_when_it_runs(p in polytope(14)) {
        let verdict = decide_assignment(p.matrix()).outcome == Outcome::Assigned;
        if let Ok(check) = facet_subset_oracle(p.matrix()) {
            prop_assert_eq!(check.holds, verdict);
        }
        if p.n_facets() <= p.n_vertices() {
            prop_assert_eq!(check_facet_subsets(p.matrix()).unwrap().holds, verdict);
        }
    }

    #[test]
    fn lattices_are_eulerian(p in polytope(24)) {
        let l = p.lattice();
        prop_assert!(l.validate().is_ok());
        let euler: i64 = l.f_vector().iter().enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum();
        prop_assert_eq!(euler, if l.dim() % 2 == 0 { 0 } else { 2 });
    }

    #[test]
    fn dual_is_an_involution(p in polytope(24)) {
        let back = p.lattice().dual().dual();
        prop_assert_eq!(back.f_vector(), p.lattice().f_vector());
        prop_assert_eq!(back.matrix(), p.matrix());
    }

    #[test]
    fn documents_round_trip(p in polytope(24)) {
        let doc = PolytopeDocument::from_spec(&p);
        let parsed = PolytopeDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_matrix().unwrap().facet_lists(), p.matrix().facet_lists());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn join_census_is_the_product(a in operand(10), b in operand(10)) {
        let j = free_join(&a, &b).unwrap();
        prop_assert_eq!(j.dim(), a.dim() + b.dim() + 1);
        prop_assert_eq!(j.n_vertices(), a.n_vertices() + b.n_vertices());
        prop_assert_eq!(j.n_facets(), a.n_facets() + b.n_facets());
        prop_assert_eq!(j.lattice().len(), a.lattice().len() * b.lattice().len());
        // Every pair (σ1, σ2) gives the face σ1 ∪ σ2 of rank rank(σ1) + rank(σ2).
        let n1 = a.n_vertices();
        let nj = j.n_vertices();
        for f1 in a.lattice().faces() {
            for f2 in b.lattice().faces() {
                let mut vs = f1.vertices.shifted(nj, 0);
                vs.union_with(&f2.vertices.shifted(nj, n1));
                let idx = j.lattice().find(&vs);
                prop_assert!(idx.is_some());
                prop_assert_eq!(j.lattice().faces()[idx.unwrap()].rank, f1.rank + f2.rank);
            }
        }
    }

    #[test]
    fn dual_of_join_is_join_of_duals(a in operand(8), b in operand(8)) {
        let lhs = dual(&free_join(&a, &b).unwrap());
        let rhs = free_join(&dual(&a), &dual(&b)).unwrap();
        prop_assert!(find_isomorphism(lhs.matrix(), rhs.matrix(), DEFAULT_BUDGET).found().is_some());
    }
}
