//! Bundled triangulations.

use serde::Serialize;

use crate::simplicial::{InputDocument, SimplicialComplex, VertexId};

fn complex(facets: Vec<Vec<VertexId>>) -> SimplicialComplex {
    SimplicialComplex::from_facets(&facets).expect("bundled fixture is well formed")
}

fn document(name: &str, dimension: usize, facets: Vec<Vec<VertexId>>, singular_vertex: VertexId) -> InputDocument {
    InputDocument { name: name.to_string(), dimension, facets, singular_vertex }
}

fn facets_of(k: &SimplicialComplex) -> Vec<Vec<VertexId>> {
    k.facets().iter().map(|f| f.vertices().to_vec()).collect()
}

/// Circle as the boundary of a triangle.
pub fn triangle_boundary() -> SimplicialComplex {
    complex(vec![vec![0, 1], vec![1, 2], vec![0, 2]])
}

/// Closed disk as a single 2-simplex.
pub fn solid_triangle() -> SimplicialComplex {
    complex(vec![vec![0, 1, 2]])
}

/// Minimal 7-vertex torus.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    complex(facets)
}

/// Annulus with inner square `0..4` and outer square `4..8`.
pub fn annulus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..4u32 {
        let j = (i + 1) % 4;
        facets.push(vec![i, j, 4 + i]);
        facets.push(vec![j, 4 + i, 4 + j]);
    }
    complex(facets)
}

/// Five-triangle Moebius band.
pub fn mobius_band() -> SimplicialComplex {
    complex(vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 0], vec![4, 0, 1]])
}

/// `triangle x circle` with three layers; vertex `(a, j)` is `3j + a`.
/// Each prism is split along the staircase `a0 a1 a2 a2'`, `a0 a1 a1' a2'`, `a0 a0' a1' a2'`.
pub fn solid_torus() -> SimplicialComplex {
    let v = |a: u32, j: u32| 3 * (j % 3) + a;
    let mut facets = Vec::new();
    for j in 0..3 {
        let (b, t) = (j, j + 1);
        facets.push(vec![v(0, b), v(1, b), v(2, b), v(2, t)]);
        facets.push(vec![v(0, b), v(1, b), v(1, t), v(2, t)]);
        facets.push(vec![v(0, b), v(0, t), v(1, t), v(2, t)]);
    }
    complex(facets)
}

/// Octahedron boundary with the north pole marked: apex 0, equator 1..=4, south pole 5.
pub fn octahedron_marked() -> InputDocument {
    let mut facets = Vec::new();
    for i in 1..=4u32 {
        let j = i % 4 + 1;
        facets.push(vec![0, i, j]);
        facets.push(vec![i, j, 5]);
    }
    document("octahedron-marked", 2, facets, 0)
}

/// Cone on the triangle boundary (a disk) with a second cone point glued on.
pub fn disk_cone_s1() -> InputDocument {
    let x = triangle_boundary().cone(3);
    let x = SimplicialComplex::closure(x.facets().iter().cloned().chain(triangle_boundary().cone(4).facets().iter().cloned()));
    document("disk-cone-s1", 2, facets_of(&x), 4)
}

/// Solid torus closed off by the cone on its boundary torus.
pub fn x2_cone_torus() -> InputDocument {
    let m = solid_torus();
    let mut facets = facets_of(&m);
    facets.extend(facets_of(&m.boundary_complex().cone(9)));
    document("x2-cone-torus", 3, facets, 9)
}

/// Boundary of the 4-simplex with one vertex marked: a 3-ball coned off along its 2-sphere.
pub fn s3_marked() -> InputDocument {
    let facets = (0..5u32).map(|omit| (0..5u32).filter(|&v| v != omit).collect()).collect();
    document("s3-marked", 3, facets, 0)
}

/// Moebius band coned off along its boundary circle, the projective plane.
pub fn mobius_cone() -> InputDocument {
    let m = mobius_band();
    let mut facets = facets_of(&m);
    facets.extend(facets_of(&m.boundary_complex().cone(5)));
    document("mobius-cone", 2, facets, 5)
}

/// Annulus with both boundary circles coned to one apex: the pinched torus.
pub fn pinched_torus() -> InputDocument {
    let a = annulus();
    let mut facets = facets_of(&a);
    facets.extend(facets_of(&a.boundary_complex().cone(8)));
    document("pinched-torus", 2, facets, 8)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub n: usize,
    pub facets: usize,
    pub link: &'static str,
    pub exterior: &'static str,
    /// Whether the decomposition is accepted.
    pub valid: bool,
}

const CATALOG: &[(&str, &str, &str, bool)] = &[
    ("octahedron-marked", "circle", "disk", true),
    ("disk-cone-s1", "circle", "disk", true),
    ("x2-cone-torus", "torus", "solid torus", true),
    ("s3-marked", "2-sphere", "3-ball", true),
    ("mobius-cone", "circle", "Moebius band", false),
    ("pinched-torus", "two circles", "annulus", false),
];

pub fn document_by_name(name: &str) -> Option<InputDocument> {
    match name {
        "octahedron-marked" => Some(octahedron_marked()),
        "disk-cone-s1" => Some(disk_cone_s1()),
        "x2-cone-torus" => Some(x2_cone_torus()),
        "s3-marked" => Some(s3_marked()),
        "mobius-cone" => Some(mobius_cone()),
        "pinched-torus" => Some(pinched_torus()),
        _ => None,
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|&(name, link, exterior, valid)| {
            let doc = document_by_name(name).expect("catalog entry");
            CatalogEntry { name, n: doc.dimension, facets: doc.facets.len(), link, exterior, valid }
        })
        .collect()
}

/// The accepted bundled decompositions.
pub fn valid_documents() -> Vec<InputDocument> {
    CATALOG.iter().filter(|e| e.3).map(|e| document_by_name(e.0).expect("catalog entry")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{decompose, parse_complex};

    #[test]
    fn closed_surfaces_and_manifolds() {
        assert_eq!(torus7().euler_characteristic(), 0);
        assert!(torus7().is_closed_pseudomanifold());
        assert_eq!(annulus().euler_characteristic(), 0);
        assert_eq!(mobius_band().euler_characteristic(), 0);
        let st = solid_torus();
        assert_eq!(st.count(3), 9);
        assert_eq!(st.euler_characteristic(), 0);
        let b = st.boundary_complex();
        assert_eq!((b.count(0), b.count(1), b.count(2)), (9, 27, 18));
        assert!(b.is_closed_pseudomanifold());
    }

    #[test]
    fn catalog_matches_decompositions() {
        for entry in catalog() {
            let doc = document_by_name(entry.name).unwrap();
            let x = parse_complex(&doc).unwrap();
            let d = decompose(&x, doc.singular_vertex);
            if entry.name == "pinched-torus" {
                assert!(d.is_err());
            } else {
                assert_eq!(d.unwrap().n, entry.n, "{}", entry.name);
            }
        }
        let names: Vec<_> = catalog().iter().map(|e| e.name).collect();
        for required in ["octahedron-marked", "x2-cone-torus", "disk-cone-s1"] {
            assert!(names.contains(&required));
        }
        assert_eq!(catalog(), catalog());
    }
}
