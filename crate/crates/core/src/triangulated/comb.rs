//! Combing an arc along an oriented edge, and tightening edge-crossing
//! sequences back into normal position.

use alloc::vec;
use alloc::vec::Vec;

use super::map::{m3, EdgeId, IdealTriangulation, SideRef};
use super::normal::{self, Carrier, Pieces};
use super::NormalModel;
use crate::arcs::NormalArc;
use crate::error::{Error, Result};

/// A path from a corner to a corner, given by the sides it crosses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CornerPath {
    pub start: (usize, usize),
    /// `(exit side, entry side)` for every crossing.
    pub hops: Vec<(SideRef, SideRef)>,
    pub end: (usize, usize),
}

/// Corner of `side` at the start (or end) of its edge.
fn edge_corner(map: &IdealTriangulation, side: SideRef, at_start: bool) -> usize {
    let (a, b) = (m3(side.side + 1), m3(side.side + 2));
    let (start, end) = if map.side_fwd(side) { (a, b) } else { (b, a) };
    if at_start {
        start
    } else {
        end
    }
}

/// Across glued sides `x` and `y`, corner `x + 1` meets corner `y + 2`.
fn across(x: SideRef, y: SideRef, c: usize) -> usize {
    if c == m3(x.side + 1) {
        m3(y.side + 2)
    } else {
        m3(y.side + 1)
    }
}

/// What a tightened path turned out to be.
pub(crate) enum Tight {
    Arc(Carrier),
    /// Boundary-parallel or null-homotopic.
    Peripheral,
}

impl CornerPath {
    /// Cancel back-tracking and slide the ends off edges at their own
    /// vertex until the path is normal.
    pub fn tighten(mut self, map: &IdealTriangulation) -> Result<Tight> {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < self.hops.len() {
                if self.hops[i].1 == self.hops[i + 1].0 {
                    self.hops.drain(i..i + 2);
                    changed = true;
                    i = i.saturating_sub(1);
                } else {
                    i += 1;
                }
            }
            if let Some(&(x, y)) = self.hops.first() {
                if x.side != self.start.1 {
                    self.start = (y.tri, across(x, y, self.start.1));
                    self.hops.remove(0);
                    changed = true;
                }
            }
            if let Some(&(x, y)) = self.hops.last() {
                if y.side != self.end.1 {
                    self.end = (x.tri, across(y, x, self.end.1));
                    self.hops.pop();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if self.hops.is_empty() {
            if self.start.0 != self.end.0 {
                return Err(Error::Internal("crossing-free path changes triangle".into()));
            }
            let (t, c, d) = (self.start.0, self.start.1, self.end.1);
            if c == d {
                return Ok(Tight::Peripheral);
            }
            let e = map.side_edge[t][3 - c - d];
            return Ok(if e < map.interior { Tight::Arc(Carrier::Edge(e)) } else { Tight::Peripheral });
        }
        let mut p = vec![Pieces::default(); map.num_triangles()];
        p[self.start.0].term[self.start.1] += 1;
        for w in self.hops.windows(2) {
            let (entry, exit) = (w[0].1, w[1].0);
            p[entry.tri].corner[3 - entry.side - exit.side] += 1;
        }
        p[self.end.0].term[self.end.1] += 1;
        if normal::trace(map, &p).is_none() {
            return Err(Error::Internal("tightened path is not a simple arc".into()));
        }
        Ok(Tight::Arc(Carrier::Normal(p)))
    }
}

impl NormalModel {
    /// Reduce `x` to an edge by the canonical shortening flips, carrying
    /// `others` along.
    pub(crate) fn as_edge(&self, x: &Carrier, others: &mut [Carrier]) -> Result<(IdealTriangulation, EdgeId, Vec<EdgeId>)> {
        let mut map = self.t0.clone();
        let mut tx = x.clone();
        let (g, word) = Self::reduce(&mut map, &mut tx, others)?;
        Ok((map, g, word))
    }

    /// Endpoints of `x` as `(start, end)` of the edge it becomes under the
    /// canonical shortening flips.
    pub fn canonical_ends(&self, x: &NormalArc) -> Result<(u32, u32)> {
        let (map, g, _) = self.as_edge(&self.carrier(x)?, &mut [])?;
        Ok(map.edge_endpoints(g))
    }

    /// Comb `b` along `x`, pushing crossings towards the start of `x` when
    /// `head_at_start`, else towards its end. Peripheral pieces are dropped.
    pub fn comb(&self, b: &NormalArc, x: &NormalArc, head_at_start: bool) -> Result<Vec<NormalArc>> {
        let cb = self.carrier(b)?;
        let cx = self.carrier(x)?;
        let mut carried = [cb];
        let (map, g, word) = self.as_edge(&cx, &mut carried)?;
        let [cb] = carried;
        let Carrier::Normal(p) = &cb else {
            return Ok(vec![b.clone()]);
        };
        if cb.weight(&map, g) == 0 {
            return Ok(vec![b.clone()]);
        }
        let tr = normal::trace(&map, p).ok_or_else(|| Error::Internal("arc does not trace".into()))?;
        let cuts: Vec<usize> = (0..tr.hops.len()).filter(|&i| tr.hops[i].edge == g).collect();
        let hops: Vec<(SideRef, SideRef)> = tr.hops.iter().map(|h| (h.from, h.to)).collect();
        let mut pieces = Vec::with_capacity(cuts.len() + 1);
        let mut start = tr.start;
        let mut from = 0usize;
        for &c in &cuts {
            let arrive = hops[c].0;
            let end = (arrive.tri, edge_corner(&map, arrive, head_at_start));
            pieces.push(CornerPath { start, hops: hops[from..c].to_vec(), end });
            let leave = hops[c].1;
            start = (leave.tri, edge_corner(&map, leave, head_at_start));
            from = c + 1;
        }
        pieces.push(CornerPath { start, hops: hops[from..].to_vec(), end: tr.end });
        let mut out = Vec::new();
        for piece in pieces {
            if let Tight::Arc(c) = piece.tighten(&map)? {
                out.push(self.pull_back(&word, c)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}
