use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::SystoleError;
use crate::geometry::{UnitVec3, Vec3};

/// Subdivision depth above which [`build_mesh`] refuses to allocate.
pub const MAX_LEVEL: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshEdge {
    pub a: usize,
    pub b: usize,
    /// Great-circle angle between the endpoints, radians.
    pub angle: f64,
}

/// Centrally symmetric geodesic triangulation of S², read as a mesh of RP².
///
/// Vertices are closed under v ↦ −v and `antipode[i]` is the index of −vᵢ
/// (bitwise exact, since midpoint normalization commutes with negation).
#[derive(Clone, Debug)]
pub struct RP2Mesh {
    level: usize,
    vertices: Vec<UnitVec3>,
    antipode: Vec<usize>,
    edges: Vec<MeshEdge>,
    faces: Vec<[usize; 3]>,
}

const ICOSAHEDRON_FACES: [[usize; 3]; 20] = [
    [0, 11, 5],
    [0, 5, 1],
    [0, 1, 7],
    [0, 7, 10],
    [0, 10, 11],
    [1, 5, 9],
    [5, 11, 4],
    [11, 10, 2],
    [10, 7, 6],
    [7, 1, 8],
    [3, 9, 4],
    [3, 4, 2],
    [3, 2, 6],
    [3, 6, 8],
    [3, 8, 9],
    [4, 9, 5],
    [2, 4, 11],
    [6, 2, 10],
    [8, 6, 7],
    [9, 8, 1],
];

fn icosahedron() -> Vec<UnitVec3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    raw.iter()
        .map(|&p| UnitVec3::normalize(Vec3::from(p)).expect("nonzero"))
        .collect()
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Icosahedron refined `level` times by edge midpoints projected to the sphere.
pub fn build_mesh(level: usize) -> Result<RP2Mesh, SystoleError> {
    if level > MAX_LEVEL {
        return Err(SystoleError::LevelOutOfRange {
            level,
            max: MAX_LEVEL,
        });
    }
    let mut vertices = icosahedron();
    let mut antipode: Vec<usize> = (0..vertices.len())
        .map(|i| {
            let target = (-vertices[i]).vec();
            vertices
                .iter()
                .position(|w| w.vec() == target)
                .expect("icosahedron is centrally symmetric")
        })
        .collect();
    let mut faces: Vec<[usize; 3]> = ICOSAHEDRON_FACES.to_vec();

    for _ in 0..level {
        let mut midpoint: HashMap<(usize, usize), usize> =
            HashMap::with_capacity(faces.len() * 3 / 2);
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        let mut mid = |a: usize, b: usize, verts: &mut Vec<UnitVec3>| -> usize {
            *midpoint.entry(edge_key(a, b)).or_insert_with(|| {
                let m = UnitVec3::normalize(verts[a].vec() + verts[b].vec())
                    .expect("edge is not antipodal");
                verts.push(m);
                verts.len() - 1
            })
        };
        for &[a, b, c] in &faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            new_faces.push([a, ab, ca]);
            new_faces.push([b, bc, ab]);
            new_faces.push([c, ca, bc]);
            new_faces.push([ab, bc, ca]);
        }
        let old = antipode.len();
        antipode.resize(vertices.len(), usize::MAX);
        for (&(a, b), &m) in &midpoint {
            let mirror = midpoint[&edge_key(antipode[a], antipode[b])];
            antipode[m] = mirror;
        }
        debug_assert!(antipode[old..].iter().all(|&j| j != usize::MAX));
        faces = new_faces;
    }

    let mut keys: Vec<(usize, usize)> = faces
        .iter()
        .flat_map(|&[a, b, c]| [edge_key(a, b), edge_key(b, c), edge_key(c, a)])
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let edges = keys
        .into_iter()
        .map(|(a, b)| MeshEdge {
            a,
            b,
            angle: vertices[a].angle_to(vertices[b]),
        })
        .collect();

    Ok(RP2Mesh {
        level,
        vertices,
        antipode,
        edges,
        faces,
    })
}

impl RP2Mesh {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vertices(&self) -> &[UnitVec3] {
        &self.vertices
    }

    pub fn antipode(&self, i: usize) -> usize {
        self.antipode[i]
    }

    pub fn antipodes(&self) -> &[usize] {
        &self.antipode
    }

    pub fn edges(&self) -> &[MeshEdge] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Largest edge angle, the mesh size h.
    pub fn max_edge_angle(&self) -> f64 {
        self.edges.iter().map(|e| e.angle).fold(0.0, f64::max)
    }

    /// Vertex adjacency lists, sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Index of the edge joining `a` and `b`, if any.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = edge_key(a, b);
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&key)).ok()
    }

    pub fn expected_vertex_count(level: usize) -> usize {
        10 * 4usize.pow(level as u32) + 2
    }

    pub fn expected_edge_count(level: usize) -> usize {
        30 * 4usize.pow(level as u32)
    }
}
