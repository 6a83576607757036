//! Arcs on general surfaces through normal coordinates.

pub mod map;
pub mod normal;
mod comb;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, NormalArc};
use crate::error::{Error, Result};
use crate::surface::{CutResult, SurfaceSpec};
pub use map::{EdgeId, IdealTriangulation, Iso};
pub use normal::{Carrier, Decoded, Pieces, Trace};

/// Reference triangulation plus the operations that need it.
#[derive(Clone, Debug)]
pub struct NormalModel {
    pub(crate) t0: IdealTriangulation,
}

/// A mapping class given by a flip word from the reference triangulation and
/// an isomorphism from the reference triangulation to the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipClass {
    pub word: Vec<EdgeId>,
    pub iso: Iso,
}

impl NormalModel {
    pub fn new(spec: &SurfaceSpec) -> Result<Self> {
        Ok(NormalModel { t0: IdealTriangulation::from_spec(spec)? })
    }

    pub fn reference(&self) -> &IdealTriangulation {
        &self.t0
    }

    pub fn omega(&self) -> usize {
        self.t0.interior
    }

    /// The arc described by an edge of the reference triangulation.
    pub fn edge_arc(&self, e: EdgeId) -> NormalArc {
        NormalArc::from_coords_unchecked(Carrier::Edge(e).coords(&self.t0))
    }

    /// Decode coordinates relative to the reference triangulation.
    pub fn carrier(&self, a: &NormalArc) -> Result<Carrier> {
        let c = a.coords();
        if c.len() != self.omega() {
            return Err(Error::SurfaceMismatch(format!(
                "{} coordinates on a surface with {} interior edges",
                c.len(),
                self.omega()
            )));
        }
        let neg: Vec<usize> = (0..c.len()).filter(|&i| c[i] < 0).collect();
        match neg.as_slice() {
            [] => {
                let w: Vec<u32> = c.iter().map(|&x| x as u32).collect();
                match normal::decode(&self.t0, &w) {
                    Decoded::Arc(p) => Ok(Carrier::Normal(p)),
                    Decoded::NotAnArc => {
                        Err(Error::InvalidArc(format!("{c:?} is not a single essential arc")))
                    }
                    Decoded::Ambiguous => {
                        Err(Error::Internal(format!("{c:?} decodes to several arcs")))
                    }
                }
            }
            [g] if c[*g] == -1 && c.iter().filter(|&&x| x != 0).count() == 1 => {
                Ok(Carrier::Edge(*g))
            }
            _ => Err(Error::InvalidArc(format!("{c:?} has malformed negative entries"))),
        }
    }

    pub fn arc_of(&self, c: &Carrier) -> NormalArc {
        NormalArc::from_coords_unchecked(c.coords(&self.t0))
    }

    /// Smallest-index flip that strictly shortens `c`.
    pub(crate) fn reducing_flip(map: &IdealTriangulation, c: &Carrier) -> Option<EdgeId> {
        (0..map.interior).find(|&e| {
            map.is_flippable(e) && normal::weight_after_flip(map, e, c) < c.weight(map, e)
        })
    }

    /// Flip `map` until `target` is an edge, carrying `others` along.
    /// Returns the edge and the flips performed.
    pub(crate) fn reduce(
        map: &mut IdealTriangulation,
        target: &mut Carrier,
        others: &mut [Carrier],
    ) -> Result<(EdgeId, Vec<EdgeId>)> {
        let mut word = Vec::new();
        loop {
            if let Carrier::Edge(g) = target {
                return Ok((*g, word));
            }
            let e = Self::reducing_flip(map, target)
                .ok_or_else(|| Error::Internal("no reducing flip for a normal arc".into()))?;
            normal::flip_carrier(map, e, target);
            for o in others.iter_mut() {
                normal::flip_carrier(map, e, o);
            }
            map.flip(e)?;
            word.push(e);
        }
    }

    /// Replay a flip word from the reference triangulation.
    pub fn replay(&self, word: &[EdgeId]) -> Result<IdealTriangulation> {
        let mut m = self.t0.clone();
        for &e in word {
            m.flip(e)?;
        }
        Ok(m)
    }

    /// Carry an arc on `replay(word)` back to the reference triangulation and
    /// return its coordinates there.
    pub fn pull_back(&self, word: &[EdgeId], mut c: Carrier) -> Result<NormalArc> {
        let mut map = self.replay(word)?;
        for &e in word.iter().rev() {
            normal::flip_carrier(&map, e, &mut c);
            map.flip(e)?;
        }
        Ok(NormalArc::from_coords_unchecked(c.coords(&map)))
    }

    /// Carry an arc from the reference triangulation to `replay(word)`.
    pub fn push_forward(&self, word: &[EdgeId], mut c: Carrier) -> Result<(IdealTriangulation, Carrier)> {
        let mut map = self.t0.clone();
        for &e in word {
            normal::flip_carrier(&map, e, &mut c);
            map.flip(e)?;
        }
        Ok((map, c))
    }

    pub fn intersection(&self, a: &NormalArc, b: &NormalArc) -> Result<u32> {
        if a == b {
            return Ok(0);
        }
        let ca = self.carrier(a)?;
        let cb = self.carrier(b)?;
        Ok(self.intersection_carriers(&ca, core::slice::from_ref(&cb))?[0])
    }

    /// Intersection numbers of `a` with every arc of `bs`.
    pub fn intersection_carriers(&self, a: &Carrier, bs: &[Carrier]) -> Result<Vec<u32>> {
        let mut map = self.t0.clone();
        let mut ta = a.clone();
        let mut tb = bs.to_vec();
        let (g, _) = Self::reduce(&mut map, &mut ta, &mut tb)?;
        Ok(tb.iter().map(|c| c.weight(&map, g)).collect())
    }

    /// Triangulation containing all given pairwise disjoint arcs as edges.
    pub(crate) fn realise(&self, arcs: &[Carrier]) -> Result<(IdealTriangulation, Vec<EdgeId>, Vec<EdgeId>)> {
        let mut map = self.t0.clone();
        let mut cs = arcs.to_vec();
        let mut word = Vec::new();
        let mut edges = Vec::with_capacity(cs.len());
        for i in 0..cs.len() {
            let (head, rest) = cs.split_at_mut(i + 1);
            let target = &mut head[i];
            let (g, w) = Self::reduce(&mut map, target, rest)?;
            word.extend(w);
            edges.push(g);
        }
        // earlier arcs stay edges; re-read them after all flips
        let edges = cs
            .iter()
            .map(|c| match c {
                Carrier::Edge(g) => Ok(*g),
                Carrier::Normal(_) => Err(Error::Internal("realised arc left an edge".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((map, edges, word))
    }

    pub fn cut(&self, arcs: &[Arc]) -> Result<CutResult> {
        let cs = arcs
            .iter()
            .map(|a| self.carrier(a.as_normal().ok_or_else(|| Error::SurfaceMismatch("chord on a triangulated surface".into()))?))
            .collect::<Result<Vec<_>>>()?;
        let (map, edges, _) = self.realise(&cs)?;
        Ok(CutResult { components: map.cut_components(&edges) })
    }

    /// All arcs with coordinate sum at most `bound`, together with every
    /// edge of the reference triangulation.
    pub fn enumerate(&self, bound: u32, limit: usize) -> Result<Vec<NormalArc>> {
        let n = self.omega();
        let mut out: Vec<NormalArc> = (0..n).map(|e| self.edge_arc(e)).collect();
        let mut w = vec![0u32; n];
        let mut visited = 0usize;
        // odometer over vectors with sum <= bound
        loop {
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Ok(out);
                }
                let sum: u32 = w.iter().sum();
                if sum < bound {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
                i += 1;
            }
            visited += 1;
            if visited > limit {
                return Err(Error::SizeGuard { what: "weight vectors", limit });
            }
            if let Decoded::Arc(_) = normal::decode(&self.t0, &w) {
                out.push(NormalArc::from_coords_unchecked(w.iter().map(|&x| x as i32).collect()));
            }
        }
    }

    /// Canonical trace of an arc on the reference triangulation, and the
    /// marked points at its start and end.
    pub fn endpoints(&self, c: &Carrier) -> Result<(u32, u32)> {
        match c {
            Carrier::Edge(g) => Ok(self.t0.edge_endpoints(*g)),
            Carrier::Normal(p) => {
                let tr = normal::trace(&self.t0, p)
                    .ok_or_else(|| Error::Internal("stored arc does not trace".into()))?;
                Ok((self.t0.vertex(tr.start.0, tr.start.1), self.t0.vertex(tr.end.0, tr.end.1)))
            }
        }
    }

    /// Apply a mapping class to an arc.
    pub fn act(&self, g: &FlipClass, a: &NormalArc) -> Result<NormalArc> {
        let c = self.carrier(a)?.push_iso(&g.iso);
        self.pull_back(&g.word, c)
    }

    /// Mapping classes reachable by flip words of length at most `max_len`
    /// whose result is isomorphic to the reference triangulation.
    pub fn flip_classes(&self, max_len: usize, limit: usize) -> Result<Vec<FlipClass>> {
        let mut out = Vec::new();
        let mut frontier: Vec<(Vec<EdgeId>, IdealTriangulation)> = vec![(Vec::new(), self.t0.clone())];
        let mut explored = 0usize;
        for depth in 0..=max_len {
            let mut next = Vec::new();
            for (word, map) in &frontier {
                for iso in self.t0.isomorphisms(map) {
                    if depth == 0 && iso.is_identity() {
                        continue;
                    }
                    out.push(FlipClass { word: word.clone(), iso });
                }
                if depth == max_len {
                    continue;
                }
                for e in 0..map.interior {
                    if !map.is_flippable(e) || word.last() == Some(&e) {
                        continue;
                    }
                    explored += 1;
                    if explored > limit {
                        return Err(Error::SizeGuard { what: "flip words", limit });
                    }
                    let mut m = map.clone();
                    m.flip(e)?;
                    let mut w = word.clone();
                    w.push(e);
                    next.push((w, m));
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_through_normal_coordinates() {
        for n in 4..=8u32 {
            let m = NormalModel::new(&SurfaceSpec::polygon(n)).unwrap();
            let arcs = m.enumerate(2 * n, 1 << 20).unwrap();
            assert_eq!(arcs.len() as u32, n * (n - 3) / 2, "n = {n}");
        }
    }

    #[test]
    fn every_arc_reduces_to_an_edge() {
        for spec in [
            SurfaceSpec::new(1, vec![], 1).unwrap(),
            SurfaceSpec::punctured_sphere(4),
            SurfaceSpec::new(0, vec![1, 1], 0).unwrap(),
            SurfaceSpec::new(0, vec![2], 1).unwrap(),
        ] {
            let m = NormalModel::new(&spec).unwrap();
            for a in m.enumerate(4, 1 << 20).unwrap() {
                let mut c = m.carrier(&a).unwrap();
                let mut map = m.t0.clone();
                NormalModel::reduce(&mut map, &mut c, &mut []).unwrap();
                let back = m.pull_back(&[], m.carrier(&a).unwrap()).unwrap();
                assert_eq!(back, a);
            }
        }
    }

    #[test]
    fn punctured_torus_slopes() {
        // reference edges are the slopes of a standard triangulation; the
        // intersection of slopes p/q and r/s is |ps - qr| - 1 for arcs
        let m = NormalModel::new(&SurfaceSpec::new(1, vec![], 1).unwrap()).unwrap();
        let arcs = m.enumerate(6, 1 << 20).unwrap();
        // every edge is disjoint from the other two edges
        for e in 0..3 {
            for f in 0..3 {
                if e != f {
                    assert_eq!(m.intersection(&m.edge_arc(e), &m.edge_arc(f)).unwrap(), 0);
                }
            }
        }
        // intersection is symmetric
        for a in arcs.iter().take(20) {
            for b in arcs.iter().take(20) {
                assert_eq!(m.intersection(a, b).unwrap(), m.intersection(b, a).unwrap());
            }
        }
    }
}
