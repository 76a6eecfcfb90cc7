//! The built-in corpus and its cross-checking runner.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::expr::parse_construction;
use crate::lattice::FaceLattice;
use crate::matching::{decide_assignment, GraphMode, Outcome, VertexFacetGraph};
use crate::theorems::{analyze, check_face_bound, facet_subset_oracle, MAX_SUBSET_FACETS};

/// Base polytopes whose pairwise free joins are part of the corpus.
const JOIN_OPERANDS: [&str; 5] = [
    "simplex(3)",
    "cube(3)",
    "cross(3)",
    "pyramid(cube(2))",
    "truncate(cube(3),0)",
];

/// Truncated cube glued to a stacked 3-polytope along the cut triangle.
pub fn glued_cube_expr(k: usize) -> String {
    format!("sum(truncate(cube(3),0),stacked(3,{k}),6,0)")
}

pub fn corpus_expressions() -> Vec<String> {
    let mut out = Vec::new();
    for family in ["simplex", "cube", "cross"] {
        for d in 1..=7 {
            out.push(format!("{family}({d})"));
        }
    }
    for family in ["simplex", "cube", "cross"] {
        for d in 1..=7 {
            out.push(format!("pyramid({family}({d}))"));
        }
    }
    out.push("truncate(cube(3),0)".into());
    out.push("truncate(simplex(3),0)".into());
    for k in [5, 10] {
        out.push(format!("stacked(3,{k})"));
    }
    out.push("stacked(4,4)".into());
    out.push("stacked(5,3)".into());
    for (i, a) in JOIN_OPERANDS.iter().enumerate() {
        for b in &JOIN_OPERANDS[i..] {
            out.push(format!("join({a},{b})"));
        }
    }
    out.push("join(cube(3),dual(cube(3)))".into());
    out.push("join(cube(3),cross(4))".into());
    out.push("join(cube(4),cross(3))".into());
    out.push("join(cube(4),cross(4))".into());
    for k in 1..=10 {
        out.push(glued_cube_expr(k));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRow {
    pub name: String,
    pub dim: usize,
    pub f0: usize,
    pub f_last: usize,
    pub matching: Option<Outcome>,
    pub face_bound: Option<bool>,
    /// `None` when the exhaustive check does not apply at this size.
    pub facet_subsets: Option<bool>,
    pub facet_majority: Option<bool>,
    pub simple: bool,
    pub simplicial: bool,
    pub agree: bool,
    pub note: String,
}

fn evaluate(expr: &str) -> CorpusRow {
    let mut row = CorpusRow {
        name: expr.to_string(),
        dim: 0,
        f0: 0,
        f_last: 0,
        matching: None,
        face_bound: None,
        facet_subsets: None,
        facet_majority: None,
        simple: false,
        simplicial: false,
        agree: false,
        note: String::new(),
    };
    if let Err(e) = fill(&mut row, expr) {
        row.agree = false;
        row.note = e.to_string();
    }
    row
}

fn fill(row: &mut CorpusRow, expr: &str) -> Result<()> {
    let spec = parse_construction(expr)?;
    let m = spec.matrix();
    row.dim = spec.dim();
    row.f0 = m.n_vertices();
    row.f_last = m.n_facets();
    let report = analyze(spec.lattice())?;
    row.matching = Some(report.matching_verdict);
    row.face_bound = Some(report.face_bound_holds);
    row.facet_majority = Some(report.facet_majority_holds);
    row.simple = report.is_simple;
    row.simplicial = report.is_simplicial;

    let mut problems = Vec::new();
    if m.n_vertices().min(m.n_facets()) <= MAX_SUBSET_FACETS {
        let check = facet_subset_oracle(m)?;
        row.facet_subsets = Some(check.holds);
        if check.holds != report.assigned() {
            problems.push("facet-subset check disagrees");
        }
    }
    let certificate = decide_assignment(m);
    if certificate
        .verify(&VertexFacetGraph::build(m, GraphMode::NonIncident))
        .is_err()
    {
        problems.push("certificate fails verification");
    }
    let dual: FaceLattice = spec.lattice().dual();
    if check_face_bound(&dual).holds != report.face_bound_holds {
        problems.push("face bound not invariant under duality");
    }
    if report.dim == 7 && !report.assigned() {
        let bound = m.n_vertices().max(m.n_facets());
        let has_3face = spec
            .lattice()
            .faces()
            .iter()
            .any(|f| f.rank == 4 && f.vertices.len() + f.facets.len() > bound);
        if !has_3face {
            problems.push("no violating 3-face in dimension 7");
        }
    }
    row.agree = problems.is_empty();
    row.note = problems.join("; ");
    Ok(())
}

/// Evaluates every expression in parallel; rows come back in input order.
pub fn run_corpus(exprs: &[String]) -> Vec<CorpusRow> {
    exprs.par_iter().map(|e| evaluate(e)).collect()
}

fn verdict_cell(o: Option<Outcome>) -> &'static str {
    match o {
        Some(Outcome::Assigned) => "ASSIGNED",
        Some(Outcome::NoAssignment) => "NO_ASSIGNMENT",
        None => "-",
    }
}

fn bool_cell(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

const HEADER: [&str; 12] = [
    "name",
    "dim",
    "f0",
    "f_last",
    "matching",
    "face_bound",
    "facet_subsets",
    "facet_majority",
    "simple",
    "simplicial",
    "agree",
    "note",
];

fn cells(row: &CorpusRow) -> [String; 12] {
    [
        row.name.clone(),
        row.dim.to_string(),
        row.f0.to_string(),
        row.f_last.to_string(),
        verdict_cell(row.matching).into(),
        bool_cell(row.face_bound).into(),
        bool_cell(row.facet_subsets).into(),
        bool_cell(row.facet_majority).into(),
        bool_cell(Some(row.simple)).into(),
        bool_cell(Some(row.simplicial)).into(),
        bool_cell(Some(row.agree)).into(),
        row.note.clone(),
    ]
}

pub fn render_table(rows: &[CorpusRow]) -> String {
    let body: Vec<[String; 12]> = rows.iter().map(cells).collect();
    let mut widths = HEADER.map(str::len);
    for r in &body {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cols: &[String]| {
        cols.iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&HEADER.map(String::from));
    out.push('\n');
    for r in &body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

pub fn render_csv(rows: &[CorpusRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(HEADER)
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    for r in rows {
        writer
            .write_record(cells(r))
            .map_err(|e| std::io::Error::other(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
