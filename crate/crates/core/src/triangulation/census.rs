//! Bundled triangulations.
//!
//! The magic manifold file glues two triangular drums, each cut into three
//! tetrahedra. Its `basis` lines put the exceptional slopes of every cusp at
//! `{∞, -3, -2, -1, 0}`, equivalently cusp shape `3/2 + i√7/2`.

use super::{parse_triangulation, IdealTriangulation};

pub const FIGURE_EIGHT_TRI: &str = include_str!("../../data/figure_eight.tri");
pub const FIGURE_EIGHT_SISTER_TRI: &str = include_str!("../../data/figure_eight_sister.tri");
pub const MAGIC_TRI: &str = include_str!("../../data/magic.tri");

/// `6Λ(π/3)`, twice the volume of the regular ideal tetrahedron.
pub const FIGURE_EIGHT_VOLUME: f64 = 2.029_883_212_819_307;

/// Volume of the complete structure on the magic manifold, as found by the solver.
pub const MAGIC_VOLUME: f64 = 5.333_489_566_898_12;

/// Cusps filled by `M_{p,q}`; the remaining cusp stays complete.
pub const MPQ_CUSPS: (usize, usize) = (0, 1);

pub fn figure_eight() -> IdealTriangulation {
    parse_triangulation(FIGURE_EIGHT_TRI).expect("bundled figure-eight data is valid")
}

pub fn figure_eight_sister() -> IdealTriangulation {
    parse_triangulation(FIGURE_EIGHT_SISTER_TRI).expect("bundled sister data is valid")
}

pub fn magic_manifold() -> IdealTriangulation {
    parse_triangulation(MAGIC_TRI).expect("bundled magic manifold data is valid")
}

/// Every bundled triangulation with its name.
pub fn bundled() -> Vec<(&'static str, IdealTriangulation)> {
    vec![("figure-eight", figure_eight()), ("figure-eight sister", figure_eight_sister()), ("magic", magic_manifold())]
}
