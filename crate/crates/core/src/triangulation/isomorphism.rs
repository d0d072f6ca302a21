//! Combinatorial isomorphism of triangulations.
//!
//! Since triangulations are connected, the image of tetrahedron 0 together
//! with its vertex relabelling determines the whole map. The search tries
//! every target tetrahedron and each of the twelve even relabellings.

use std::collections::VecDeque;

use super::{IdealTriangulation, Perm4};

/// Tetrahedron `t` goes to `tet_map[t]` with vertices relabelled by `vertex_maps[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm4>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism { tet_map: (0..n).collect(), vertex_maps: vec![Perm4::IDENTITY; n] }
    }

    /// Checks that the map is a bijection carrying every gluing of `a` onto one of `b`.
    pub fn verify(&self, a: &IdealTriangulation, b: &IdealTriangulation) -> bool {
        let n = a.num_tetrahedra();
        if b.num_tetrahedra() != n || self.tet_map.len() != n || self.vertex_maps.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &t in &self.tet_map {
            if t >= n || hit[t] {
                return false;
            }
            hit[t] = true;
        }
        if !self.vertex_maps.iter().all(|p| p.is_even()) {
            return false;
        }
        (0..n).all(|t| {
            let sigma = self.vertex_maps[t];
            (0..4).all(|f| {
                let g = a.gluing(t, f);
                let image = b.gluing(self.tet_map[t], sigma.apply(f));
                image.tet == self.tet_map[g.tet]
                    && image.perm == self.vertex_maps[g.tet].compose(g.perm).compose(sigma.inverse())
            })
        })
    }
}

fn degree_profile(t: &IdealTriangulation) -> Vec<usize> {
    let mut d = t.edge_degrees();
    d.sort_unstable();
    d
}

/// Extends `0 ↦ (target, sigma)` along gluings; `None` on any conflict.
fn propagate(a: &IdealTriangulation, b: &IdealTriangulation, target: usize, sigma: Perm4) -> Option<Isomorphism> {
    let n = a.num_tetrahedra();
    let mut tet_map = vec![usize::MAX; n];
    let mut vertex_maps = vec![Perm4::IDENTITY; n];
    let mut used = vec![false; n];
    tet_map[0] = target;
    vertex_maps[0] = sigma;
    used[target] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        let s = vertex_maps[t];
        for f in 0..4 {
            let g = a.gluing(t, f);
            let image = b.gluing(tet_map[t], s.apply(f));
            let forced = image.perm.compose(s).compose(g.perm.inverse());
            if tet_map[g.tet] == usize::MAX {
                if used[image.tet] {
                    return None;
                }
                tet_map[g.tet] = image.tet;
                vertex_maps[g.tet] = forced;
                used[image.tet] = true;
                queue.push_back(g.tet);
            } else if tet_map[g.tet] != image.tet || vertex_maps[g.tet] != forced {
                return None;
            }
        }
    }
    Some(Isomorphism { tet_map, vertex_maps })
}

/// An orientation-preserving combinatorial isomorphism `a → b`, if any.
pub fn isomorphic(a: &IdealTriangulation, b: &IdealTriangulation) -> Option<Isomorphism> {
    if a.num_tetrahedra() != b.num_tetrahedra()
        || a.num_cusps() != b.num_cusps()
        || degree_profile(a) != degree_profile(b)
    {
        return None;
    }
    for target in 0..b.num_tetrahedra() {
        for sigma in Perm4::even() {
            if let Some(iso) = propagate(a, b, target, sigma) {
                if iso.verify(a, b) {
                    return Some(iso);
                }
            }
        }
    }
    None
}
