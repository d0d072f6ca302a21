//! Cusp cross-sections.
//!
//! Truncating vertex `v` of tetrahedron `t` gives a cusp triangle `(t,v)`
//! whose corners are labelled by the other three vertices. Its corners run
//! counterclockwise in the order `(a,b,c)` exactly when `(v,a,b,c)` is an even
//! permutation. The side opposite corner `f` lies in face `f`. The corner at
//! `w` has the shape parameter of edge `{v,w}`.
//!
//! Peripheral curves are closed edge paths in the cusp triangulation. Their
//! holonomy is read off a push-off to the left: each corner the push-off cuts
//! counts `+1` when the corner lies to its left and `-1` when it lies to its
//! right.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;

use super::{shape_slot, IdealTriangulation};

/// A side of cusp triangle `(tet, vertex)` traversed from corner `from` to
/// corner `to`; it lies in the face opposite the fourth label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspEdge {
    pub tet: usize,
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

/// A closed edge path in a cusp triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralCurve {
    pub edges: Vec<CuspEdge>,
}

/// Corner `(tet, vertex, at)`: the corner at label `at` of cusp triangle `(tet, vertex)`.
type Corner = (usize, usize, usize);
/// Side `(tet, vertex, face)` of cusp triangle `(tet, vertex)`.
type Side = (usize, usize, usize);

fn third(v: usize, a: usize, b: usize) -> usize {
    6 - v - a - b
}

/// `(v,a,b,·)` is even.
pub(crate) fn is_ccw(v: usize, a: usize, b: usize) -> bool {
    let p = [v, a, b, third(v, a, b)];
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// The corner following `a` counterclockwise in cusp triangle `(·, v)`.
fn ccw_next(v: usize, a: usize) -> usize {
    (0..4).find(|&b| b != v && b != a && is_ccw(v, a, b)).expect("three corners")
}

fn twin(tri: &IdealTriangulation, (t, v, f): Side) -> Side {
    let g = tri.gluing(t, f);
    (g.tet, g.perm.apply(v), g.perm.apply(f))
}

impl CuspEdge {
    fn face(&self) -> usize {
        third(self.vertex, self.from, self.to)
    }

    /// The same oriented edge seen from the triangle on its left.
    fn left_form(self, tri: &IdealTriangulation) -> CuspEdge {
        if is_ccw(self.vertex, self.from, self.to) {
            return self;
        }
        let g = tri.gluing(self.tet, self.face());
        CuspEdge {
            tet: g.tet,
            vertex: g.perm.apply(self.vertex),
            from: g.perm.apply(self.from),
            to: g.perm.apply(self.to),
        }
    }

    fn reversed(self, tri: &IdealTriangulation) -> CuspEdge {
        CuspEdge { from: self.to, to: self.from, ..self }.left_form(tri)
    }

    fn left_side(&self) -> Side {
        (self.tet, self.vertex, self.face())
    }
}

/// A crossing of a cusp side, leaving through side instance `out` and
/// entering the neighbouring triangle through its instance `into`.
#[derive(Debug, Clone, Copy)]
struct Crossing {
    out: Side,
    into: Side,
}

pub(crate) struct CuspTopology {
    corner_class: HashMap<Corner, usize>,
    cusp_of_class: Vec<usize>,
    triangles: Vec<usize>,
}

impl CuspTopology {
    pub(crate) fn new(tri: &IdealTriangulation) -> Self {
        let n = tri.num_tetrahedra();
        let mut parent: Vec<usize> = (0..16 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let idx = |t: usize, v: usize, w: usize| 16 * t + 4 * v + w;
        for t in 0..n {
            for f in 0..4 {
                let g = tri.gluing(t, f);
                for v in (0..4).filter(|&v| v != f) {
                    for w in (0..4).filter(|&w| w != f && w != v) {
                        let a = find(&mut parent, idx(t, v, w));
                        let b = find(&mut parent, idx(g.tet, g.perm.apply(v), g.perm.apply(w)));
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut corner_class = HashMap::new();
        let mut label = HashMap::new();
        let mut cusp_of_class = Vec::new();
        for t in 0..n {
            for v in 0..4 {
                for w in (0..4).filter(|&w| w != v) {
                    let root = find(&mut parent, idx(t, v, w));
                    let next = label.len();
                    let id = *label.entry(root).or_insert_with(|| {
                        cusp_of_class.push(tri.cusp_of_vertex(t, v));
                        next
                    });
                    corner_class.insert((t, v, w), id);
                }
            }
        }
        let mut triangles = vec![0; tri.num_cusps()];
        for t in 0..n {
            for v in 0..4 {
                triangles[tri.cusp_of_vertex(t, v)] += 1;
            }
        }
        CuspTopology { corner_class, cusp_of_class, triangles }
    }

    pub(crate) fn euler_characteristic(&self, cusp: usize) -> i64 {
        let vertices = self.cusp_of_class.iter().filter(|&&c| c == cusp).count() as i64;
        let triangles = self.triangles[cusp] as i64;
        vertices - 3 * triangles / 2 + triangles
    }

    fn head(&self, e: &CuspEdge) -> usize {
        self.corner_class[&(e.tet, e.vertex, e.to)]
    }

    fn tail(&self, e: &CuspEdge) -> usize {
        self.corner_class[&(e.tet, e.vertex, e.from)]
    }

    /// Cusp vertices in increasing order and one left-form edge per cusp side.
    fn skeleton(&self, tri: &IdealTriangulation, cusp: usize) -> (Vec<usize>, Vec<CuspEdge>) {
        let vertices: Vec<usize> = (0..self.cusp_of_class.len()).filter(|&k| self.cusp_of_class[k] == cusp).collect();
        let mut edges = Vec::new();
        for t in 0..tri.num_tetrahedra() {
            for v in (0..4).filter(|&v| tri.cusp_of_vertex(t, v) == cusp) {
                for f in (0..4).filter(|&f| f != v) {
                    let side = (t, v, f);
                    if twin(tri, side) < side {
                        continue;
                    }
                    let a = (0..4).find(|&a| a != v && a != f && is_ccw(v, a, third(v, f, a))).unwrap();
                    edges.push(CuspEdge { tet: t, vertex: v, from: a, to: third(v, f, a) });
                }
            }
        }
        (vertices, edges)
    }

    /// A traced meridian/longitude pair with intersection number `+1`.
    pub(crate) fn trace_basis(
        &self,
        tri: &IdealTriangulation,
        cusp: usize,
    ) -> Option<(PeripheralCurve, PeripheralCurve)> {
        let (vertices, edges) = self.skeleton(tri, cusp);
        let root = *vertices.first()?;
        // BFS tree: parent edge directed from parent to child
        let mut via: HashMap<usize, CuspEdge> = HashMap::new();
        let mut depth: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        let mut tree_edges = Vec::new();
        while let Some(x) = queue.pop_front() {
            for (i, e) in edges.iter().enumerate() {
                for dir in [*e, e.reversed(tri)] {
                    if self.tail(&dir) == x && !depth.contains_key(&self.head(&dir)) {
                        depth.insert(self.head(&dir), depth[&x] + 1);
                        via.insert(self.head(&dir), dir);
                        tree_edges.push(i);
                        queue.push_back(self.head(&dir));
                    }
                }
            }
        }
        let path_up = |mut x: usize| {
            // edges from x up to the root, each directed towards the root
            let mut out = Vec::new();
            while x != root {
                let e = via[&x];
                out.push(e.reversed(tri));
                x = self.tail(&e);
            }
            out
        };
        let mut cycles = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            if tree_edges.contains(&i) {
                continue;
            }
            let (mut up_a, mut up_b) = (path_up(self.head(e)), path_up(self.tail(e)));
            // drop the shared part of the two root paths
            while let (Some(x), Some(y)) = (up_a.last(), up_b.last()) {
                if x == y {
                    up_a.pop();
                    up_b.pop();
                } else {
                    break;
                }
            }
            // head --up_a--> apex --reverse(up_b)--> tail --e--> head
            let mut cycle: Vec<CuspEdge> = up_a;
            cycle.extend(up_b.iter().rev().map(|d| d.reversed(tri)));
            cycle.push(*e);
            let curve = PeripheralCurve { edges: cycle };
            if self.push_off(tri, &curve).is_some() && self.push_off(tri, &self.reverse(tri, &curve)).is_some() {
                cycles.push(curve);
            }
        }
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                match self.intersection(tri, &cycles[i], &cycles[j]) {
                    Some(1) => return Some((cycles[i].clone(), cycles[j].clone())),
                    Some(-1) => return Some((cycles[i].clone(), self.reverse(tri, &cycles[j]))),
                    _ => {}
                }
            }
        }
        None
    }

    fn reverse(&self, tri: &IdealTriangulation, c: &PeripheralCurve) -> PeripheralCurve {
        PeripheralCurve { edges: c.edges.iter().rev().map(|e| e.reversed(tri)).collect() }
    }

    /// Corners of the fan at the head of `e_in`, counterclockwise from the
    /// corner of the triangle left of `e_out` to the corner of the triangle
    /// left of `e_in`.
    fn sector(&self, tri: &IdealTriangulation, e_in: &CuspEdge, e_out: &CuspEdge) -> Option<Vec<Corner>> {
        let end = (e_in.tet, e_in.vertex, e_in.to);
        let mut c = (e_out.tet, e_out.vertex, e_out.from);
        let mut fan = vec![c];
        while c != end {
            let (t, v, a) = c;
            let g = tri.gluing(t, ccw_next(v, a));
            c = (g.tet, g.perm.apply(v), g.perm.apply(a));
            fan.push(c);
            if fan.len() > 12 * tri.num_tetrahedra() {
                return None;
            }
        }
        Some(fan)
    }

    fn crossings(&self, tri: &IdealTriangulation, curve: &PeripheralCurve) -> Option<Vec<Crossing>> {
        let k = curve.edges.len();
        let mut out = Vec::new();
        for i in 0..k {
            let (e_in, e_out) = (&curve.edges[i], &curve.edges[(i + 1) % k]);
            if self.head(e_in) != self.tail(e_out) {
                return None;
            }
            let fan = self.sector(tri, e_in, e_out)?;
            // travel runs clockwise around the vertex, from the end of the fan back to its start
            for j in (0..fan.len() - 1).rev() {
                let (t, v, a) = fan[j];
                let into = (t, v, ccw_next(v, a));
                out.push(Crossing { out: twin(tri, into), into });
            }
        }
        Some(cancel_backtracks(out))
    }

    /// Signed corner counts `[z, z', z'']` per tetrahedron along the left push-off.
    pub(crate) fn push_off(&self, tri: &IdealTriangulation, curve: &PeripheralCurve) -> Option<Vec<[i64; 3]>> {
        let xs = self.crossings(tri, curve)?;
        if xs.is_empty() {
            return None;
        }
        let mut row = vec![[0i64; 3]; tri.num_tetrahedra()];
        for i in 0..xs.len() {
            let (t, v, f_in) = xs[i].into;
            let (t2, v2, f_out) = xs[(i + 1) % xs.len()].out;
            if (t, v) != (t2, v2) || f_in == f_out {
                return None;
            }
            let z = third(v, f_in, f_out);
            let sign = if is_ccw(v, f_in, f_out) { -1 } else { 1 };
            row[t][shape_slot(v, z)] += sign;
        }
        Some(row)
    }

    /// Algebraic intersection `α·β`, positive when `α` crosses `β` from its left to its right.
    pub(crate) fn intersection(
        &self,
        tri: &IdealTriangulation,
        alpha: &PeripheralCurve,
        beta: &PeripheralCurve,
    ) -> Option<i64> {
        let xs = self.crossings(tri, alpha)?;
        let mut total = 0;
        for e in &beta.edges {
            let left = e.left_side();
            for x in &xs {
                if x.out == left {
                    total += 1;
                } else if x.into == left {
                    total -= 1;
                }
            }
        }
        Some(total)
    }

    /// Places every triangle of `cusp` in the plane, corner positions indexed
    /// by vertex label. Meaningful at structures complete at `cusp`.
    fn develop(
        &self,
        tri: &IdealTriangulation,
        cusp: usize,
        shapes: &[Complex64],
    ) -> HashMap<(usize, usize), [Complex64; 4]> {
        let mut placed: HashMap<(usize, usize), [Complex64; 4]> = HashMap::new();
        let Some(start) = (0..tri.num_tetrahedra())
            .flat_map(|t| (0..4).map(move |v| (t, v)))
            .find(|&(t, v)| tri.cusp_of_vertex(t, v) == cusp)
        else {
            return placed;
        };
        let (t, v) = start;
        let a = (0..4).find(|&a| a != v).unwrap();
        let b = ccw_next(v, a);
        let mut pos = [Complex64::new(0.0, 0.0); 4];
        pos[b] = Complex64::new(1.0, 0.0);
        pos[third(v, a, b)] = pos[b] * corner_parameter(shapes[t], shape_slot(v, a));
        placed.insert(start, pos);
        let mut queue = VecDeque::from([start]);
        while let Some((t, v)) = queue.pop_front() {
            let here = placed[&(t, v)];
            for f in (0..4).filter(|&f| f != v) {
                let g = tri.gluing(t, f);
                let key = (g.tet, g.perm.apply(v));
                if placed.contains_key(&key) {
                    continue;
                }
                let mut pos = [Complex64::new(0.0, 0.0); 4];
                for w in (0..4).filter(|&w| w != v && w != f) {
                    pos[g.perm.apply(w)] = here[w];
                }
                // at a known corner `a` with ccw order (a, b, c): c - a = (b - a)·ρ
                let (nv, unknown) = (key.1, g.perm.apply(f));
                let a = (0..4).find(|&a| a != nv && a != unknown).unwrap();
                let b = ccw_next(nv, a);
                let c = third(nv, a, b);
                let rho = corner_parameter(shapes[key.0], shape_slot(nv, a));
                if unknown == c {
                    pos[c] = pos[a] + (pos[b] - pos[a]) * rho;
                } else {
                    pos[b] = pos[a] + (pos[c] - pos[a]) / rho;
                }
                placed.insert(key, pos);
                queue.push_back(key);
            }
        }
        placed
    }

    /// Translation of a closed edge path at a structure complete at its cusp.
    pub(crate) fn translation(
        &self,
        tri: &IdealTriangulation,
        curve: &PeripheralCurve,
        shapes: &[Complex64],
    ) -> Option<Complex64> {
        let first = curve.edges.first()?;
        let placed = self.develop(tri, tri.cusp_of_vertex(first.tet, first.vertex), shapes);
        curve.edges.iter().map(|e| placed.get(&(e.tet, e.vertex)).map(|p| p[e.to] - p[e.from])).sum()
    }
}

/// Drops pairs of consecutive crossings through the same side and back,
/// cyclically. Holonomy and intersection counts are unchanged.
fn cancel_backtracks(xs: Vec<Crossing>) -> Vec<Crossing> {
    let mut stack: Vec<Crossing> = Vec::with_capacity(xs.len());
    for x in xs {
        match stack.last() {
            Some(top) if top.into == x.out => {
                stack.pop();
            }
            _ => stack.push(x),
        }
    }
    let mut start = 0;
    while stack.len() - start >= 2 && stack[stack.len() - 1].into == stack[start].out {
        stack.pop();
        start += 1;
    }
    stack.drain(..start);
    stack
}

/// `z`, `1/(1-z)` or `1 - 1/z`.
pub fn corner_parameter(z: Complex64, slot: usize) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match slot {
        0 => z,
        1 => one / (one - z),
        _ => one - one / z,
    }
}

/// Holonomy rows `(meridian, longitude)` of `cusp` after the basis change.
pub(crate) fn peripheral_rows(tri: &IdealTriangulation, cusp: usize) -> (Vec<[i64; 3]>, Vec<[i64; 3]>) {
    let topo = CuspTopology::new(tri);
    let (m, l) = tri.traced_curves(cusp);
    let rm = topo.push_off(tri, m).expect("traced curves have push-offs");
    let rl = topo.push_off(tri, l).expect("traced curves have push-offs");
    let [a, b, c, d] = tri.basis_change(cusp);
    let combine = |x: i64, y: i64| -> Vec<[i64; 3]> {
        rm.iter().zip(&rl).map(|(p, q)| std::array::from_fn(|s| x * p[s] + y * q[s])).collect()
    };
    (combine(a, b), combine(c, d))
}

/// The cusp shape `translation(l) / translation(m)` of the traced curves at a
/// complete structure. `None` when the structure is not complete at `cusp`.
pub fn traced_cusp_shape(tri: &IdealTriangulation, cusp: usize, shapes: &[Complex64]) -> Option<Complex64> {
    let topo = CuspTopology::new(tri);
    let (m, l) = tri.traced_curves(cusp);
    Some(topo.translation(tri, l, shapes)? / topo.translation(tri, m, shapes)?)
}

/// Intersection number of the traced meridian with the traced longitude.
pub fn traced_intersection(tri: &IdealTriangulation, cusp: usize) -> i64 {
    let topo = CuspTopology::new(tri);
    let (m, l) = tri.traced_curves(cusp);
    topo.intersection(tri, m, l).expect("traced curves have push-offs")
}
