//! Ideal triangulations of cusped orientable 3-manifolds and their
//! hyperbolic structures.
//!
//! Tetrahedron faces and vertices are labelled `0..4`, face `f` being the one
//! opposite vertex `f`. Face `f` of tetrahedron `t` is glued to face
//! `perm[f]` of tetrahedron `tet`, vertex `i` going to vertex `perm[i]`.
//! With every tetrahedron positively oriented, orientability forces every
//! gluing permutation to be odd.
//!
//! Edge `{a,b}` and its opposite edge carry the same shape parameter: `z` on
//! `01`/`23`, `z' = 1/(1-z)` on `02`/`13` and `z'' = 1 - 1/z` on `03`/`12`.

pub mod census;
pub mod cusp;
pub mod equations;
mod format;
pub mod isomorphism;
pub mod mpq;
pub mod perm;
pub mod solver;
pub mod volume;

use thiserror::Error;

pub use cusp::{CuspEdge, PeripheralCurve};
pub use equations::{gluing_system, FillingInstruction, GluingRow, GluingSystem, RowKind};
pub use format::{parse_triangulation, serialize_triangulation};
pub use isomorphism::{isomorphic, Isomorphism};
pub use mpq::{verify_mpq_geometry, Agreement, MpqGeometryError, MpqGeometryReport};
pub use perm::Perm4;
pub use solver::{solve_geometric, ShapeAssignment, SolveStatus, SolverParams};
pub use volume::{bloch_wigner, volume};

/// The six edges of a tetrahedron, indexed `0..6`.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between vertices {a} and {b}"),
    }
}

/// Which of `z`, `z'`, `z''` (as `0`, `1`, `2`) sits on edge `{a,b}`.
pub fn shape_slot(a: usize, b: usize) -> usize {
    match edge_index(a, b) {
        0 | 5 => 0,
        1 | 4 => 1,
        _ => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("tetrahedron {tet} face {face} is unglued")]
    UngluedFace { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} reglued")]
    FaceReglued { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face}: target face {declared} disagrees with the permutation image {implied}")]
    TargetFaceMismatch { tet: usize, face: usize, declared: usize, implied: usize },
    #[error("tetrahedron {tet} face {face}: gluing is not an involution")]
    InconsistentInvolution { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face}: orientation-reversing permutation {perm}")]
    OrientationReversing { tet: usize, face: usize, perm: Perm4 },
    #[error("{edges} edge classes for {tets} tetrahedra")]
    WrongEdgeCount { edges: usize, tets: usize },
    #[error("{found} vertex classes but {declared} cusps declared")]
    CuspCount { declared: usize, found: usize },
    #[error("cusp {cusp}: bad representative")]
    CuspRepresentative { cusp: usize },
    #[error("cusp {cusp}: vertex link has Euler characteristic {euler}, not a torus")]
    NonTorusLink { cusp: usize, euler: i64 },
    #[error("cusp {cusp}: basis change {matrix:?} does not have determinant 1")]
    BadBasisChange { cusp: usize, matrix: [i64; 4] },
    #[error("cusp {cusp}: no peripheral basis found in the cusp triangulation")]
    NoPeripheralBasis { cusp: usize },
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A validated ideal triangulation. Immutable once built.
#[derive(Debug, Clone)]
pub struct IdealTriangulation {
    gluings: Vec<[Gluing; 4]>,
    cusp_reps: Vec<(usize, usize)>,
    /// Per cusp `[a, b, c, d]`: meridian `a·m + b·l`, longitude `c·m + d·l`
    /// in terms of the traced curves `m`, `l`.
    basis_changes: Vec<[i64; 4]>,
    edge_of: Vec<[usize; 6]>,
    num_edges: usize,
    cusp_of: Vec<[usize; 4]>,
    traced: Vec<(PeripheralCurve, PeripheralCurve)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense labels numbered by first appearance.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[x] = label[r];
        }
        (out, next)
    }
}

impl IdealTriangulation {
    /// Validates gluing data and cusp representatives and derives edge
    /// classes, cusps and traced peripheral curves.
    pub fn new(gluings: Vec<[Gluing; 4]>, cusp_reps: Vec<(usize, usize)>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.tet >= n {
                    return Err(TriangulationError::UngluedFace { tet: t, face: f });
                }
                let target = g.perm.apply(f);
                if g.tet == t && target == f {
                    return Err(TriangulationError::SelfGluedFace { tet: t, face: f });
                }
                let back = gluings[g.tet][target];
                if back.tet != t || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::InconsistentInvolution { tet: t, face: f });
                }
                if g.perm.is_even() {
                    return Err(TriangulationError::OrientationReversing { tet: t, face: f, perm: g.perm });
                }
            }
        }

        let mut edges = UnionFind::new(6 * n);
        let mut verts = UnionFind::new(4 * n);
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                for v in (0..4).filter(|&v| v != f) {
                    verts.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
                }
                for &(a, b) in EDGES.iter().filter(|&&(a, b)| a != f && b != f) {
                    let image = edge_index(g.perm.apply(a), g.perm.apply(b));
                    edges.union(6 * t + edge_index(a, b), 6 * g.tet + image);
                }
            }
        }
        let (edge_labels, num_edges) = edges.labels();
        if num_edges != n {
            return Err(TriangulationError::WrongEdgeCount { edges: num_edges, tets: n });
        }
        let (vert_labels, num_classes) = verts.labels();
        if num_classes != cusp_reps.len() {
            return Err(TriangulationError::CuspCount { declared: cusp_reps.len(), found: num_classes });
        }
        let mut class_to_cusp = vec![usize::MAX; num_classes];
        for (c, &(t, v)) in cusp_reps.iter().enumerate() {
            if t >= n || v >= 4 {
                return Err(TriangulationError::CuspRepresentative { cusp: c });
            }
            let class = vert_labels[4 * t + v];
            if class_to_cusp[class] != usize::MAX {
                return Err(TriangulationError::CuspRepresentative { cusp: c });
            }
            class_to_cusp[class] = c;
        }
        let edge_of = (0..n).map(|t| std::array::from_fn(|e| edge_labels[6 * t + e])).collect();
        let cusp_of = (0..n).map(|t| std::array::from_fn(|v| class_to_cusp[vert_labels[4 * t + v]])).collect();

        let mut tri = IdealTriangulation {
            gluings,
            basis_changes: vec![[1, 0, 0, 1]; cusp_reps.len()],
            cusp_reps,
            edge_of,
            num_edges,
            cusp_of,
            traced: Vec::new(),
        };
        let topology = cusp::CuspTopology::new(&tri);
        for c in 0..tri.num_cusps() {
            let euler = topology.euler_characteristic(c);
            if euler != 0 {
                return Err(TriangulationError::NonTorusLink { cusp: c, euler });
            }
        }
        tri.traced = (0..tri.num_cusps())
            .map(|c| topology.trace_basis(&tri, c).ok_or(TriangulationError::NoPeripheralBasis { cusp: c }))
            .collect::<Result<_, _>>()?;
        Ok(tri)
    }

    /// Like [`IdealTriangulation::new`], numbering cusps by the first
    /// `(tet, vertex)` of each vertex class.
    pub fn from_gluings(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        let mut verts = UnionFind::new(4 * n);
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.tet >= n {
                    return Err(TriangulationError::UngluedFace { tet: t, face: f });
                }
                for v in (0..4).filter(|&v| v != f) {
                    verts.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
                }
            }
        }
        let (labels, count) = verts.labels();
        let reps = (0..count)
            .map(|c| {
                let k = labels.iter().position(|&l| l == c).expect("every label occurs");
                (k / 4, k % 4)
            })
            .collect();
        Self::new(gluings, reps)
    }

    /// Replaces the peripheral basis of `cusp` by `a·m + b·l`, `c·m + d·l`
    /// relative to the traced curves.
    pub fn with_basis_change(mut self, cusp: usize, matrix: [i64; 4]) -> Result<Self, TriangulationError> {
        let [a, b, c, d] = matrix;
        if cusp >= self.num_cusps() || a * d - b * c != 1 {
            return Err(TriangulationError::BadBasisChange { cusp, matrix });
        }
        self.basis_changes[cusp] = matrix;
        Ok(self)
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.gluings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_cusps(&self) -> usize {
        self.cusp_reps.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn cusp_representatives(&self) -> &[(usize, usize)] {
        &self.cusp_reps
    }

    pub fn basis_change(&self, cusp: usize) -> [i64; 4] {
        self.basis_changes[cusp]
    }

    /// Edge class of edge `{a,b}` of tetrahedron `tet`.
    pub fn edge_class(&self, tet: usize, a: usize, b: usize) -> usize {
        self.edge_of[tet][edge_index(a, b)]
    }

    pub fn cusp_of_vertex(&self, tet: usize, vertex: usize) -> usize {
        self.cusp_of[tet][vertex]
    }

    /// Number of tetrahedron edges in each edge class.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_edges];
        for row in &self.edge_of {
            for &e in row {
                deg[e] += 1;
            }
        }
        deg
    }

    /// The traced meridian and longitude of `cusp`, before any basis change.
    pub fn traced_curves(&self, cusp: usize) -> &(PeripheralCurve, PeripheralCurve) {
        &self.traced[cusp]
    }

    /// The same triangulation with tetrahedron `t` renamed `tet_map[t]` and
    /// its vertices relabelled by `vertex_maps[t]`. Peripheral curves are
    /// retraced, so basis changes are dropped.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Result<Self, TriangulationError> {
        let n = self.num_tetrahedra();
        assert_eq!(tet_map.len(), n);
        assert_eq!(vertex_maps.len(), n);
        let placeholder = Gluing { tet: 0, perm: Perm4::IDENTITY };
        let mut gluings = vec![[placeholder; 4]; n];
        for t in 0..n {
            let sigma = vertex_maps[t];
            for f in 0..4 {
                let g = self.gluings[t][f];
                let perm = vertex_maps[g.tet].compose(g.perm).compose(sigma.inverse());
                gluings[tet_map[t]][sigma.apply(f)] = Gluing { tet: tet_map[g.tet], perm };
            }
        }
        let reps = self.cusp_reps.iter().map(|&(t, v)| (tet_map[t], vertex_maps[t].apply(v))).collect();
        IdealTriangulation::new(gluings, reps)
    }
}
