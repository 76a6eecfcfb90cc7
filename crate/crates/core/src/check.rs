//! The `check` pipeline behind the CLI: build, decide, cross-check, report.

use serde::Serialize;

use crate::constructions::PolytopeSpec;
use crate::error::{Error, Result};
use crate::matching::{
    decide_assignment, decide_incident_assignment, GraphMode, MatchingCertificate, Outcome,
    VertexFacetGraph,
};
use crate::theorems::{analyze, facet_subset_oracle, FacetSubsetCheck, TheoremReport};

/// Process exit codes shared by every subcommand.
pub mod exit {
    pub const ASSIGNED: u8 = 0;
    pub const NO_ASSIGNMENT: u8 = 1;
    pub const INPUT_ERROR: u8 = 2;
    pub const INCONSISTENCY: u8 = 3;
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Inconsistency(_) => exit::INCONSISTENCY,
        _ => exit::INPUT_ERROR,
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Map vertices injectively to incident facets instead.
    pub incident: bool,
    /// Also run the exhaustive facet-subset check.
    pub oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeSummary {
    pub name: String,
    pub provenance: String,
    pub dim: usize,
    pub n_vertices: usize,
    pub n_facets: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleResult {
    Ran(FacetSubsetCheck),
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub polytope: PolytopeSummary,
    pub mode: GraphMode,
    pub verdict: Outcome,
    pub theorems: TheoremReport,
    pub certificate: MatchingCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_subset_oracle: Option<OracleResult>,
    pub exit_code: u8,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

pub fn run_check(spec: &PolytopeSpec, options: CheckOptions) -> Result<CheckReport> {
    let m = spec.matrix();
    let theorems = analyze(spec.lattice())?;
    let (mode, certificate) = if options.incident {
        (GraphMode::Incident, decide_incident_assignment(m))
    } else {
        (GraphMode::NonIncident, decide_assignment(m))
    };
    let graph = VertexFacetGraph::build(m, mode);
    certificate
        .verify(&graph)
        .map_err(|e| Error::Inconsistency(format!("certificate check failed: {e}")))?;

    let facet_subset_oracle = if options.oracle {
        Some(match facet_subset_oracle(m) {
            Ok(check) => {
                if check.holds != theorems.assigned() {
                    return Err(Error::Inconsistency(format!(
                        "facet-subset check says {}, matching says {:?}",
                        check.holds, theorems.matching_verdict
                    )));
                }
                OracleResult::Ran(check)
            }
            Err(e @ (Error::Limit(_) | Error::Precondition(_))) => OracleResult::Skipped {
                reason: e.to_string(),
            },
            Err(e) => return Err(e),
        })
    } else {
        None
    };

    let verdict = certificate.outcome;
    Ok(CheckReport {
        polytope: PolytopeSummary {
            name: spec.name.clone(),
            provenance: spec.provenance.clone(),
            dim: spec.dim(),
            n_vertices: m.n_vertices(),
            n_facets: m.n_facets(),
        },
        mode,
        verdict,
        theorems,
        certificate,
        facet_subset_oracle,
        exit_code: match verdict {
            Outcome::Assigned => exit::ASSIGNED,
            Outcome::NoAssignment => exit::NO_ASSIGNMENT,
        },
    })
}
