//! JSON polytope documents: vertex labels plus sorted facet vertex lists.

use serde::{Deserialize, Serialize};

use crate::constructions::PolytopeSpec;
use crate::error::{Error, Result};
use crate::lattice::IncidenceMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl PolytopeDocument {
    pub fn from_matrix(
        name: impl Into<String>,
        dim: usize,
        m: &IncidenceMatrix,
        provenance: Option<String>,
    ) -> Self {
        PolytopeDocument {
            name: name.into(),
            dim,
            vertices: m.vertex_labels().to_vec(),
            facets: m.facet_lists(),
            facet_labels: Some(m.facet_labels().to_vec()),
            provenance,
        }
    }

    pub fn from_spec(spec: &PolytopeSpec) -> Self {
        Self::from_matrix(
            spec.name.clone(),
            spec.dim(),
            spec.matrix(),
            Some(spec.provenance.clone()),
        )
    }

    pub fn to_matrix(&self) -> Result<IncidenceMatrix> {
        let facet_labels = match &self.facet_labels {
            Some(labels) => labels.clone(),
            None => (0..self.facets.len()).map(|j| format!("F{j}")).collect(),
        };
        for (j, facet) in self.facets.iter().enumerate() {
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != facet.len() {
                return Err(Error::InvalidMatrix(format!("facet {j} lists a vertex twice")));
            }
        }
        IncidenceMatrix::with_labels(self.vertices.len(), &self.facets, self.vertices.clone(), facet_labels)
    }

    /// Validates the document as a polytope of its declared dimension.
    pub fn to_spec(&self) -> Result<PolytopeSpec> {
        let provenance = self.provenance.clone().unwrap_or_else(|| self.name.clone());
        PolytopeSpec::new(self.name.clone(), provenance, self.to_matrix()?, Some(self.dim))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cube, free_join, simplex};

    #[test]
    fn round_trip() {
        let spec = free_join(&cube(2).unwrap(), &simplex(2).unwrap()).unwrap();
        let doc = PolytopeDocument::from_spec(&spec);
        let back = PolytopeDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_matrix().unwrap(), *spec.matrix());
        assert_eq!(back.to_spec().unwrap().dim(), 5);
    }

    #[test]
    fn minimal_document() {
        let text = r#"{"name": "triangle", "dim": 2, "vertices": ["a", "b", "c"],
                       "facets": [[0, 1], [1, 2], [0, 2]]}"#;
        let doc = PolytopeDocument::from_json(text).unwrap();
        let spec = doc.to_spec().unwrap();
        assert_eq!(spec.matrix().facet_labels()[2], "F2");
        assert_eq!(spec.provenance, "triangle");
    }

    #[test]
    fn rejects_bad_documents() {
        let wrong_dim = r#"{"name": "t", "dim": 3, "vertices": ["a", "b", "c"],
                            "facets": [[0, 1], [1, 2], [0, 2]]}"#;
        assert!(PolytopeDocument::from_json(wrong_dim).unwrap().to_spec().is_err());
        let bad_index = r#"{"name": "t", "dim": 2, "vertices": ["a", "b", "c"],
                            "facets": [[0, 1], [1, 7], [0, 2]]}"#;
        let err = PolytopeDocument::from_json(bad_index).unwrap().to_spec().unwrap_err();
        assert!(err.to_string().contains("facet 1"), "{err}");
        let repeated = r#"{"name": "t", "dim": 2, "vertices": ["a", "b", "c"],
                           "facets": [[0, 0, 1], [1, 2], [0, 2]]}"#;
        assert!(PolytopeDocument::from_json(repeated).unwrap().to_matrix().is_err());
        assert!(PolytopeDocument::from_json("{").is_err());
    }
}
