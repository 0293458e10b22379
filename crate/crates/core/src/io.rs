//! JSON interchange format for complexes:
//! `{"n":4,"labels":["x","y","z","w"],"facets":[[0,1],[0,2],[1,2],[3]]}`
//! with 0-based vertex indices and optional labels.

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    facets: Vec<Vec<usize>>,
}

/// Parse a complex from its JSON representation.
pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex JSON: {e}")))?;
    let mut faces = Vec::with_capacity(file.facets.len());
    for facet in &file.facets {
        let mut mask = 0u64;
        for &v in facet {
            if v >= file.n {
                return Err(Error::Domain(format!(
                    "facet vertex {} out of range for n = {}",
                    v, file.n
                )));
            }
            mask |= 1 << v;
        }
        faces.push(Face(mask));
    }
    SimplicialComplex::from_facets(file.n, &faces, file.labels)
}

/// Serialize a complex to the JSON interchange format.
pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    let facets: Vec<Vec<usize>> = complex
        .facets()
        .map(|f| (0..complex.n()).filter(|&v| f.contains(v)).collect())
        .collect();
    let file = ComplexFile {
        n: complex.n(),
        labels: Some(complex.labels().to_vec()),
        facets,
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}
