#![allow(dead_code)]

use std::sync::Arc;

use ispace_core::fixtures;
use ispace_core::pair::{CupComplex, ManifoldPair};
use ispace_core::simplicial::{decompose, parse_complex, InputDocument, PseudomanifoldDecomposition};

pub fn decomposition(doc: &InputDocument) -> PseudomanifoldDecomposition {
    let x = parse_complex(doc).unwrap();
    decompose(&x, doc.singular_vertex).unwrap()
}

pub fn pair(doc: &InputDocument) -> Arc<ManifoldPair> {
    Arc::new(ManifoldPair::from_decomposition(&decomposition(doc)).unwrap())
}

pub fn pair_named(name: &str) -> Arc<ManifoldPair> {
    pair(&fixtures::document_by_name(name).unwrap())
}

pub fn valid_pairs() -> Vec<(String, Arc<ManifoldPair>)> {
    fixtures::valid_documents().iter().map(|d| (d.name.clone(), pair(d))).collect()
}

/// Every complex the bundled examples put in front of the engine.
pub fn bundled_complexes() -> Vec<(String, CupComplex)> {
    let mut out = Vec::new();
    for doc in fixtures::valid_documents() {
        let d = decomposition(&doc);
        out.push((format!("{} X", doc.name), CupComplex::new(d.x.clone())));
        out.push((format!("{} M", doc.name), CupComplex::new(d.exterior.clone())));
        out.push((format!("{} L", doc.name), CupComplex::new(d.link.clone())));
    }
    out
}
