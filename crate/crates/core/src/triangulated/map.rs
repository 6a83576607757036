//! Combinatorial ideal triangulations.
//!
//! Triangle corners `0, 1, 2` are counter-clockwise. Side `i` is opposite
//! corner `i` and runs from corner `i + 1` to corner `i + 2`. Every edge has a
//! direction; its forward side agrees with it and the other side (if any)
//! runs against it. Interior edges get ids `0..interior`, boundary edges
//! follow.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::surface::{CutComponent, SurfaceSpec};
use crate::unionfind::UnionFind;

pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub tri: usize,
    pub side: usize,
}

#[inline]
pub(crate) fn m3(x: usize) -> usize {
    x % 3
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    pub(crate) side_edge: Vec<[EdgeId; 3]>,
    pub(crate) side_fwd: Vec<[bool; 3]>,
    pub(crate) corner_vertex: Vec<[u32; 3]>,
    /// Forward side first. Boundary edges have no second side.
    pub(crate) edge_sides: Vec<[Option<SideRef>; 2]>,
    pub(crate) interior: usize,
    pub(crate) vertices: usize,
    pub(crate) boundary_vertex: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Boundary,
    Glue(usize),
}

/// Isomorphism between two triangulations preserving orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub tri: Vec<usize>,
    pub rot: Vec<usize>,
    pub edge: Vec<EdgeId>,
    pub vertex: Vec<u32>,
}

impl Iso {
    pub fn is_identity(&self) -> bool {
        self.tri.iter().enumerate().all(|(i, &t)| i == t) && self.rot.iter().all(|&r| r == 0)
    }
}

/// Flip frame of an edge `e = PR` shared by triangles `PQR` and `RSP`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    pub t1: usize,
    pub t2: usize,
    /// Corners of `P, Q, R` in `t1`.
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// Corners of `P, S, R` in `t2`.
    pub p2: usize,
    pub s: usize,
    pub r2: usize,
}

impl IdealTriangulation {
    /// Fan triangulation of a polygon word realising the signature.
    ///
    /// With boundary the word is `B^q1 [a b a' b']^g [c c']^p [d B^qi d']`,
    /// otherwise `[a b a' b']^g [c c']^(p-1)`.
    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self> {
        let mut word = Vec::new();
        let mut pairs = 0usize;
        let mut pair = |word: &mut Vec<Letter>| {
            pairs += 1;
            word.push(Letter::Glue(pairs - 1));
            pairs - 1
        };
        let b = spec.boundary_points.len();
        if b >= 1 {
            for _ in 0..spec.boundary_points[0] {
                word.push(Letter::Boundary);
            }
        }
        for _ in 0..spec.genus {
            let x = pair(&mut word);
            let y = pair(&mut word);
            word.push(Letter::Glue(x));
            word.push(Letter::Glue(y));
        }
        let folds = if b >= 1 { spec.interior_points } else { spec.interior_points.saturating_sub(1) };
        for _ in 0..folds {
            let x = pair(&mut word);
            word.push(Letter::Glue(x));
        }
        for &q in spec.boundary_points.iter().skip(1) {
            let x = pair(&mut word);
            for _ in 0..q {
                word.push(Letter::Boundary);
            }
            word.push(Letter::Glue(x));
        }
        let n = word.len();
        if n < 3 {
            return Err(Error::InvalidSurface(format!("polygon word of length {n}")));
        }
        let interior = pairs + n - 3;
        let boundary_sides = word.iter().filter(|l| **l == Letter::Boundary).count();

        // edge id and orientation of every polygon side
        let mut side_info = vec![(0usize, true); n];
        let mut first_seen = vec![None; pairs];
        let mut uf = UnionFind::new(n);
        let mut next_boundary = interior;
        for (j, l) in word.iter().enumerate() {
            match *l {
                Letter::Boundary => {
                    side_info[j] = (next_boundary, true);
                    next_boundary += 1;
                }
                Letter::Glue(x) => match first_seen[x] {
                    None => {
                        first_seen[x] = Some(j);
                        side_info[j] = (x, true);
                    }
                    Some(j1) => {
                        side_info[j] = (x, false);
                        uf.union(j1, (j + 1) % n);
                        uf.union((j1 + 1) % n, j);
                    }
                },
            }
        }
        let (corner_class, vertices) = uf.labels();

        let f = n - 2;
        let diag = |i: usize| pairs + i - 2;
        let mut side_edge = vec![[0; 3]; f];
        let mut side_fwd = vec![[true; 3]; f];
        let mut corner_vertex = vec![[0u32; 3]; f];
        for i in 1..=n - 2 {
            let t = i - 1;
            corner_vertex[t] =
                [corner_class[0] as u32, corner_class[i] as u32, corner_class[i + 1] as u32];
            let (e0, f0) = side_info[i];
            let (e1, f1) = if i + 1 == n - 1 { side_info[n - 1] } else { (diag(i + 1), false) };
            let (e2, f2) = if i == 1 { side_info[0] } else { (diag(i), true) };
            side_edge[t] = [e0, e1, e2];
            side_fwd[t] = [f0, f1, f2];
        }
        let mut edge_sides = vec![[None, None]; interior + boundary_sides];
        for t in 0..f {
            for i in 0..3 {
                let e = side_edge[t][i];
                let slot = if side_fwd[t][i] { 0 } else { 1 };
                edge_sides[e][slot] = Some(SideRef { tri: t, side: i });
            }
        }
        let mut tri = IdealTriangulation {
            side_edge,
            side_fwd,
            corner_vertex,
            edge_sides,
            interior,
            vertices,
            boundary_vertex: vec![false; vertices],
        };
        tri.mark_boundary_vertices();
        tri.check_signature(spec)?;
        Ok(tri)
    }

    fn mark_boundary_vertices(&mut self) {
        let mut bv = vec![false; self.vertices];
        for e in self.interior..self.edge_sides.len() {
            let s = self.edge_sides[e][0].unwrap();
            bv[self.corner_vertex[s.tri][m3(s.side + 1)] as usize] = true;
            bv[self.corner_vertex[s.tri][m3(s.side + 2)] as usize] = true;
        }
        self.boundary_vertex = bv;
    }

    fn check_signature(&self, spec: &SurfaceSpec) -> Result<()> {
        let bcount = self.boundary_vertex.iter().filter(|&&b| b).count() as u32;
        let ok = self.vertices as u32 == spec.marked_points()
            && bcount == spec.boundary_marked()
            && self.interior as i64 == spec.complexity();
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!("triangulation does not realise {spec:?}")))
        }
    }

    pub fn num_triangles(&self) -> usize {
        self.side_edge.len()
    }

    pub fn num_interior(&self) -> usize {
        self.interior
    }

    pub fn num_edges(&self) -> usize {
        self.edge_sides.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn is_boundary_vertex(&self, v: u32) -> bool {
        self.boundary_vertex[v as usize]
    }

    pub fn is_interior_edge(&self, e: EdgeId) -> bool {
        e < self.interior
    }

    pub(crate) fn side_edge(&self, s: SideRef) -> EdgeId {
        self.side_edge[s.tri][s.side]
    }

    pub(crate) fn side_fwd(&self, s: SideRef) -> bool {
        self.side_fwd[s.tri][s.side]
    }

    pub(crate) fn other_side(&self, s: SideRef) -> Option<SideRef> {
        let [a, b] = self.edge_sides[self.side_edge(s)];
        if a == Some(s) {
            b
        } else {
            a
        }
    }

    pub fn vertex(&self, tri: usize, corner: usize) -> u32 {
        self.corner_vertex[tri][corner]
    }

    /// Endpoints of an edge in the direction of the edge.
    pub fn edge_endpoints(&self, e: EdgeId) -> (u32, u32) {
        let s = self.edge_sides[e][0].unwrap();
        (self.corner_vertex[s.tri][m3(s.side + 1)], self.corner_vertex[s.tri][m3(s.side + 2)])
    }

    /// An interior edge whose two sides lie in distinct triangles.
    pub fn is_flippable(&self, e: EdgeId) -> bool {
        match self.edge_sides.get(e) {
            Some([Some(a), Some(b)]) => a.tri != b.tri,
            _ => false,
        }
    }

    pub(crate) fn frame(&self, e: EdgeId) -> Result<Frame> {
        if !self.is_flippable(e) {
            let why = if e >= self.interior { "boundary edge" } else { "self-folded edge" };
            return Err(Error::NotFlippable(format!("edge {e} is a {why}")));
        }
        let [Some(s1), Some(s2)] = self.edge_sides[e] else { unreachable!() };
        Ok(Frame {
            t1: s1.tri,
            t2: s2.tri,
            q: s1.side,
            r: m3(s1.side + 1),
            p: m3(s1.side + 2),
            s: s2.side,
            p2: m3(s2.side + 1),
            r2: m3(s2.side + 2),
        })
    }

    /// Replace the diagonal `PR` of the square `PQRS` by `QS`, reusing the
    /// edge id. Afterwards `t1 = (P, Q, S)` and `t2 = (Q, R, S)`.
    pub fn flip(&mut self, e: EdgeId) -> Result<()> {
        let fr = self.frame(e)?;
        let (t1, t2) = (fr.t1, fr.t2);
        let vp = self.corner_vertex[t1][fr.p];
        let vq = self.corner_vertex[t1][fr.q];
        let vr = self.corner_vertex[t1][fr.r];
        let vs = self.corner_vertex[t2][fr.s];
        let get = |t: usize, i: usize| (self.side_edge[t][i], self.side_fwd[t][i]);
        let a = get(t1, fr.r);
        let b = get(t1, fr.p);
        let c = get(t2, fr.p2);
        let d = get(t2, fr.r2);
        let old = [
            SideRef { tri: t1, side: fr.r },
            SideRef { tri: t1, side: fr.p },
            SideRef { tri: t2, side: fr.p2 },
            SideRef { tri: t2, side: fr.r2 },
        ];
        let new = [
            SideRef { tri: t1, side: 2 },
            SideRef { tri: t2, side: 2 },
            SideRef { tri: t2, side: 0 },
            SideRef { tri: t1, side: 1 },
        ];
        let remap = |s: Option<SideRef>| {
            s.map(|s| match old.iter().position(|&o| o == s) {
                Some(k) => new[k],
                None => s,
            })
        };
        let mut touched: Vec<EdgeId> = [a.0, b.0, c.0, d.0].into_iter().collect();
        touched.sort_unstable();
        touched.dedup();
        for x in touched {
            let [s0, s1] = self.edge_sides[x];
            self.edge_sides[x] = [remap(s0), remap(s1)];
        }
        self.corner_vertex[t1] = [vp, vq, vs];
        self.side_edge[t1] = [e, d.0, a.0];
        self.side_fwd[t1] = [true, d.1, a.1];
        self.corner_vertex[t2] = [vq, vr, vs];
        self.side_edge[t2] = [c.0, e, b.0];
        self.side_fwd[t2] = [c.1, false, b.1];
        self.edge_sides[e] = [Some(SideRef { tri: t1, side: 0 }), Some(SideRef { tri: t2, side: 1 })];
        Ok(())
    }

    /// Union-find over corners gluing across the interior edges that are
    /// not cut. Classes are the marked points of the cut surface.
    fn corner_classes(&self, is_cut: &[bool]) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(3 * self.num_triangles());
        let c = |t: usize, i: usize| 3 * t + m3(i);
        for e in 0..self.interior {
            if is_cut[e] {
                continue;
            }
            let [Some(s), Some(o)] = self.edge_sides[e] else { continue };
            uf.union(c(s.tri, s.side + 1), c(o.tri, o.side + 2));
            uf.union(c(s.tri, s.side + 2), c(o.tri, o.side + 1));
        }
        uf.labels()
    }

    /// Components of the surface cut along the given interior edges.
    pub fn cut_components(&self, cut: &[EdgeId]) -> Vec<CutComponent> {
        let nt = self.num_triangles();
        let mut is_cut = vec![false; self.num_edges()];
        for &e in cut {
            is_cut[e] = true;
        }
        let (cls, nclass) = self.corner_classes(&is_cut);
        let corner = |t: usize, i: usize| cls[3 * t + m3(i)];

        let mut tri_uf = UnionFind::new(nt);
        for e in 0..self.interior {
            if let [Some(s), Some(o)] = self.edge_sides[e] {
                if !is_cut[e] {
                    tri_uf.union(s.tri, o.tri);
                }
            }
        }
        let (tri_comp, ncomp) = tri_uf.labels();

        let mut boundary_sides = Vec::new();
        for e in 0..self.num_edges() {
            if e >= self.interior || is_cut[e] {
                for s in self.edge_sides[e].iter().flatten() {
                    boundary_sides.push(*s);
                }
            }
        }
        let mut on_boundary = vec![false; nclass];
        let mut cycles = UnionFind::new(nclass);
        for s in &boundary_sides {
            let u = corner(s.tri, s.side + 1);
            let v = corner(s.tri, s.side + 2);
            on_boundary[u] = true;
            on_boundary[v] = true;
            cycles.union(u, v);
        }
        let mut class_comp = vec![0; nclass];
        let mut class_rep = vec![0u32; nclass];
        for t in 0..nt {
            for i in 0..3 {
                class_comp[corner(t, i)] = tri_comp[t];
                class_rep[corner(t, i)] = self.corner_vertex[t][i];
            }
        }

        let mut out = Vec::with_capacity(ncomp);
        for k in 0..ncomp {
            let faces = (0..nt).filter(|&t| tri_comp[t] == k).count() as i64;
            let inner_edges = (0..self.interior)
                .filter(|&e| !is_cut[e])
                .filter(|&e| tri_comp[self.edge_sides[e][0].unwrap().tri] == k)
                .count() as i64;
            let bsides = boundary_sides.iter().filter(|s| tri_comp[s.tri] == k).count() as i64;
            let classes: Vec<usize> = (0..nclass).filter(|&c| class_comp[c] == k).collect();
            let mut roots: Vec<usize> = classes
                .iter()
                .filter(|&&c| on_boundary[c])
                .map(|&c| cycles.find(c))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            roots.sort_unstable();
            let chi = classes.len() as i64 - (inner_edges + bsides) + faces;
            let b = roots.len() as i64;
            let genus = ((2 - b - chi) / 2) as u32;
            let mut boundary_points = Vec::new();
            let mut parent_points = Vec::new();
            for &r in &roots {
                let members: Vec<usize> = classes
                    .iter()
                    .copied()
                    .filter(|&c| on_boundary[c] && cycles.find(c) == r)
                    .collect();
                boundary_points.push(members.len() as u32);
                parent_points.extend(members.iter().map(|&c| class_rep[c]));
            }
            let interior: Vec<usize> = classes.iter().copied().filter(|&c| !on_boundary[c]).collect();
            parent_points.extend(interior.iter().map(|&c| class_rep[c]));
            out.push(CutComponent {
                spec: SurfaceSpec { genus, boundary_points, interior_points: interior.len() as u32 },
                parent_points,
            });
        }
        out
    }

    /// All orientation-preserving isomorphisms `self → other`.
    pub fn isomorphisms(&self, other: &IdealTriangulation) -> Vec<Iso> {
        let nt = self.num_triangles();
        if nt != other.num_triangles()
            || self.num_edges() != other.num_edges()
            || self.interior != other.interior
            || self.vertices != other.vertices
        {
            return Vec::new();
        }
        let mut out = Vec::new();
        for u0 in 0..nt {
            for r0 in 0..3 {
                if let Some(iso) = self.try_iso(other, u0, r0) {
                    out.push(iso);
                }
            }
        }
        out
    }

    fn try_iso(&self, other: &IdealTriangulation, u0: usize, r0: usize) -> Option<Iso> {
        let nt = self.num_triangles();
        let mut tri = vec![usize::MAX; nt];
        let mut rot = vec![0usize; nt];
        let mut used = vec![false; nt];
        let mut edge = vec![usize::MAX; self.num_edges()];
        let mut vertex = vec![u32::MAX; self.vertices];
        let mut stack = vec![0usize];
        tri[0] = u0;
        rot[0] = r0;
        used[u0] = true;
        while let Some(t) = stack.pop() {
            let (u, r) = (tri[t], rot[t]);
            for i in 0..3 {
                let j = m3(i + r);
                let v = self.corner_vertex[t][i] as usize;
                let w = other.corner_vertex[u][j];
                if vertex[v] == u32::MAX {
                    vertex[v] = w;
                } else if vertex[v] != w {
                    return None;
                }
                let e = self.side_edge[t][i];
                let e2 = other.side_edge[u][j];
                if (e < self.interior) != (e2 < other.interior) {
                    return None;
                }
                if edge[e] == usize::MAX {
                    edge[e] = e2;
                } else if edge[e] != e2 {
                    return None;
                }
                if e >= self.interior {
                    continue;
                }
                let here = SideRef { tri: t, side: i };
                let there = self.other_side(here).unwrap();
                let img = other.other_side(SideRef { tri: u, side: j }).unwrap();
                let r2 = m3(img.side + 3 - there.side);
                if tri[there.tri] == usize::MAX {
                    if used[img.tri] {
                        return None;
                    }
                    tri[there.tri] = img.tri;
                    rot[there.tri] = r2;
                    used[img.tri] = true;
                    stack.push(there.tri);
                } else if tri[there.tri] != img.tri || rot[there.tri] != r2 {
                    return None;
                }
            }
        }
        if tri.contains(&usize::MAX) {
            return None;
        }
        Some(Iso { tri, rot, edge, vertex })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g: u32, b: &[u32], p: u32) -> SurfaceSpec {
        SurfaceSpec::new(g, b.to_vec(), p).unwrap()
    }

    #[test]
    fn fan_realises_signatures() {
        for s in [
            spec(0, &[6], 0),
            spec(1, &[], 1),
            spec(0, &[], 4),
            spec(0, &[], 5),
            spec(0, &[1], 1),
            spec(0, &[1, 1], 0),
            spec(1, &[2], 0),
            spec(2, &[], 1),
            spec(0, &[2, 1, 3], 2),
        ] {
            let t = IdealTriangulation::from_spec(&s).unwrap();
            assert_eq!(t.num_interior() as i64, s.complexity(), "{s:?}");
            let comps = t.cut_components(&[]);
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].spec.canonical(), s.canonical(), "{s:?}");
        }
    }

    #[test]
    fn flips_are_involutions_up_to_isomorphism() {
        let s = spec(0, &[], 5);
        let t0 = IdealTriangulation::from_spec(&s).unwrap();
        for e in 0..t0.num_interior() {
            if !t0.is_flippable(e) {
                continue;
            }
            let mut t = t0.clone();
            t.flip(e).unwrap();
            let comps = t.cut_components(&[]);
            assert_eq!(comps[0].spec.canonical(), s);
            t.flip(e).unwrap();
            assert!(t.isomorphisms(&t0).iter().any(|iso| iso.edge.iter().enumerate().all(|(i, &j)| i == j)));
        }
    }

    #[test]
    fn punctured_monogon_is_self_folded() {
        let mut t = IdealTriangulation::from_spec(&spec(0, &[1], 1)).unwrap();
        assert_eq!(t.num_interior(), 1);
        assert!(!t.is_flippable(0));
        assert!(t.flip(0).is_err());
    }
}
