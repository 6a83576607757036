//! Single arcs in normal position with respect to an ideal triangulation.
//!
//! Inside a triangle an arc consists of corner strands (cutting off a corner)
//! and terminal strands (from a corner to the opposite side). Along side `i`,
//! read counter-clockwise, come the strands around corner `i + 1`, then the
//! terminals from corner `i`, then the strands around corner `i + 2`.

use alloc::vec;
use alloc::vec::Vec;

use super::map::{m3, EdgeId, IdealTriangulation, SideRef};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pieces {
    pub corner: [u32; 3],
    pub term: [u32; 3],
}

impl Pieces {
    pub fn side_weight(&self, i: usize) -> u32 {
        self.corner[m3(i + 1)] + self.corner[m3(i + 2)] + self.term[i]
    }

    fn rotated(&self, r: usize) -> Pieces {
        let mut out = Pieces::default();
        for c in 0..3 {
            out.corner[m3(c + r)] = self.corner[c];
            out.term[m3(c + r)] = self.term[c];
        }
        out
    }
}

/// An arc relative to a triangulation: either one of its edges or a normal
/// arc given by per-triangle piece counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Carrier {
    Edge(EdgeId),
    Normal(Vec<Pieces>),
}

impl Carrier {
    pub fn weight(&self, map: &IdealTriangulation, e: EdgeId) -> u32 {
        match self {
            Carrier::Edge(_) => 0,
            Carrier::Normal(p) => {
                let s = map.edge_sides[e][0].unwrap();
                p[s.tri].side_weight(s.side)
            }
        }
    }

    pub fn total_weight(&self, map: &IdealTriangulation) -> u32 {
        (0..map.interior).map(|e| self.weight(map, e)).sum()
    }

    /// Coordinates over interior edges: weights, or `-1` on the edge itself.
    pub fn coords(&self, map: &IdealTriangulation) -> Vec<i32> {
        match self {
            Carrier::Edge(g) => {
                let mut v = vec![0; map.interior];
                v[*g] = -1;
                v
            }
            Carrier::Normal(_) => (0..map.interior).map(|e| self.weight(map, e) as i32).collect(),
        }
    }

    /// Transport along an isomorphism of triangulations.
    pub fn push_iso(&self, iso: &super::map::Iso) -> Carrier {
        match self {
            Carrier::Edge(g) => Carrier::Edge(iso.edge[*g]),
            Carrier::Normal(p) => {
                let mut out = vec![Pieces::default(); p.len()];
                for (t, pc) in p.iter().enumerate() {
                    out[iso.tri[t]] = pc.rotated(iso.rot[t]);
                }
                Carrier::Normal(out)
            }
        }
    }
}

/// One crossing of an arc with an interior edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hop {
    pub edge: EdgeId,
    /// Position along the edge in its own direction.
    pub pos: u32,
    pub from: SideRef,
    pub to: SideRef,
}

/// An arc followed from one terminal to the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// `(triangle, corner)` of the first terminal.
    pub start: (usize, usize),
    pub hops: Vec<Hop>,
    pub end: (usize, usize),
}

fn side_weight(map: &IdealTriangulation, p: &[Pieces], s: SideRef) -> u32 {
    let _ = map;
    p[s.tri].side_weight(s.side)
}

/// Follows the strands starting at the first terminal. Fails unless the
/// pieces form exactly one arc.
pub fn trace(map: &IdealTriangulation, p: &[Pieces]) -> Option<Trace> {
    let terminals: u32 = p.iter().map(|x| x.term.iter().sum::<u32>()).sum();
    if terminals != 2 {
        return None;
    }
    let total: u32 = (0..map.interior)
        .map(|e| {
            let s = map.edge_sides[e][0].unwrap();
            p[s.tri].side_weight(s.side)
        })
        .sum();
    for e in map.interior..map.num_edges() {
        let s = map.edge_sides[e][0].unwrap();
        if p[s.tri].side_weight(s.side) != 0 {
            return None;
        }
    }
    let (t0, v0) = (0..p.len())
        .flat_map(|t| (0..3).map(move |v| (t, v)))
        .find(|&(t, v)| p[t].term[v] > 0)?;
    let mut hops = Vec::new();
    let mut side = SideRef { tri: t0, side: v0 };
    let mut pos = p[t0].corner[m3(v0 + 1)];
    loop {
        if hops.len() as u32 >= total {
            return None;
        }
        let w = side_weight(map, p, side);
        let edge = map.side_edge(side);
        let other = map.other_side(side)?;
        let q = if map.side_fwd(side) { pos } else { w - 1 - pos };
        hops.push(Hop { edge, pos: q, from: side, to: other });
        let p2 = if map.side_fwd(other) { q } else { w - 1 - q };
        let x = &p[other.tri];
        let i = other.side;
        if p2 < x.corner[m3(i + 1)] {
            let j = p2;
            let exit = SideRef { tri: other.tri, side: m3(i + 2) };
            pos = side_weight(map, p, exit) - 1 - j;
            side = exit;
        } else if p2 < x.corner[m3(i + 1)] + x.term[i] {
            if hops.len() as u32 != total {
                return None;
            }
            return Some(Trace { start: (t0, v0), hops, end: (other.tri, i) });
        } else {
            let j = w - 1 - p2;
            side = SideRef { tri: other.tri, side: m3(i + 1) };
            pos = j;
        }
    }
}

/// Solve for corner counts given side weights and terminal counts.
fn solve(weights: [u32; 3], term: [u32; 3]) -> Option<Pieces> {
    let w: i64 = weights.iter().map(|&x| x as i64).sum();
    let t: i64 = term.iter().map(|&x| x as i64).sum();
    if w < t || (w - t) % 2 != 0 {
        return None;
    }
    let s = (w - t) / 2;
    let mut corner = [0u32; 3];
    for i in 0..3 {
        let c = s - weights[i] as i64 + term[i] as i64;
        if c < 0 {
            return None;
        }
        corner[i] = c as u32;
    }
    Some(Pieces { corner, term })
}

/// Outcome of decoding a weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Arc(Vec<Pieces>),
    NotAnArc,
    Ambiguous,
}

/// Decode interior edge weights into the unique single arc they describe.
pub fn decode(map: &IdealTriangulation, weights: &[u32]) -> Decoded {
    let nt = map.num_triangles();
    let tri_weights: Vec<[u32; 3]> = (0..nt)
        .map(|t| {
            let mut w = [0; 3];
            for i in 0..3 {
                let e = map.side_edge[t][i];
                w[i] = if e < map.interior { weights[e] } else { 0 };
            }
            w
        })
        .collect();
    let odd: Vec<usize> =
        (0..nt).filter(|&t| tri_weights[t].iter().sum::<u32>() % 2 == 1).collect();
    let mut placements: Vec<Vec<(usize, usize, u32)>> = Vec::new();
    match odd.as_slice() {
        [] => {
            for t in 0..nt {
                for v in 0..3 {
                    placements.push(vec![(t, v, 2)]);
                }
            }
        }
        [a, b] => {
            for v in 0..3 {
                for u in 0..3 {
                    placements.push(vec![(*a, v, 1), (*b, u, 1)]);
                }
            }
        }
        _ => return Decoded::NotAnArc,
    }
    let mut found: Option<Vec<Pieces>> = None;
    'outer: for pl in placements {
        let mut pieces = Vec::with_capacity(nt);
        for t in 0..nt {
            let mut term = [0u32; 3];
            for &(tt, v, c) in &pl {
                if tt == t {
                    term[v] = c;
                }
            }
            match solve(tri_weights[t], term) {
                Some(p) => pieces.push(p),
                None => continue 'outer,
            }
        }
        if trace(map, &pieces).is_some() {
            match &found {
                None => found = Some(pieces),
                Some(f) if *f == pieces => {}
                Some(_) => return Decoded::Ambiguous,
            }
        }
    }
    match found {
        Some(p) => Decoded::Arc(p),
        None => Decoded::NotAnArc,
    }
}

fn overlap(a: (u32, u32), b: (u32, u32)) -> u32 {
    a.1.min(b.1).saturating_sub(a.0.max(b.0))
}

/// Pieces of `t1` and `t2` after flipping `e`, or `None` when the arc becomes
/// the new diagonal.
pub(crate) fn flipped_pieces(
    map: &IdealTriangulation,
    e: EdgeId,
    p: &[Pieces],
) -> Option<(usize, Pieces, usize, Pieces)> {
    let fr = map.frame(e).ok()?;
    let x = p[fr.t1];
    let y = p[fr.t2];
    let (p1, nq, r1) = (x.corner[fr.p], x.corner[fr.q], x.corner[fr.r]);
    let (pb, qe, ra) = (x.term[fr.p], x.term[fr.q], x.term[fr.r]);
    let (pp2, ns, rr2) = (y.corner[fr.p2], y.corner[fr.s], y.corner[fr.r2]);
    let (se, pc, rd) = (y.term[fr.s], y.term[fr.p2], y.term[fr.r2]);
    let w = p1 + qe + r1;
    debug_assert_eq!(w, pp2 + se + rr2);
    let ia = (0, p1);
    let iq = (p1, p1 + qe);
    let ib = (p1 + qe, w);
    let id = (0, pp2);
    let is = (pp2, pp2 + se);
    let ic = (pp2 + se, w);
    if overlap(iq, is) > 0 {
        return None;
    }
    let ad = overlap(ia, id);
    let ac = overlap(ia, ic);
    let as_ = overlap(ia, is);
    let bc = overlap(ib, ic);
    let bd = overlap(ib, id);
    let bs = overlap(ib, is);
    let qd = overlap(iq, id);
    let qc = overlap(iq, ic);
    let n1 = Pieces { corner: [ad, nq + ra + ac, ns + rd + bd], term: [pb + pc, qd, as_] };
    let n2 = Pieces { corner: [nq + pb + bd, bc, ns + pc + ac], term: [qc, ra + rd, bs] };
    Some((fr.t1, n1, fr.t2, n2))
}

/// Transport an arc across the flip of `e`. `map` is the triangulation before
/// the flip.
pub fn flip_carrier(map: &IdealTriangulation, e: EdgeId, c: &mut Carrier) {
    match c {
        Carrier::Edge(g) if *g == e => {
            let fr = map.frame(e).expect("flip of a non-flippable edge");
            let mut v = vec![Pieces::default(); map.num_triangles()];
            v[fr.t1].term[0] = 1;
            v[fr.t2].term[1] = 1;
            *c = Carrier::Normal(v);
        }
        Carrier::Edge(_) => {}
        Carrier::Normal(p) => match flipped_pieces(map, e, p) {
            None => *c = Carrier::Edge(e),
            Some((t1, n1, t2, n2)) => {
                p[t1] = n1;
                p[t2] = n2;
            }
        },
    }
}

/// Weight of the new diagonal after flipping `e`.
pub(crate) fn weight_after_flip(map: &IdealTriangulation, e: EdgeId, c: &Carrier) -> u32 {
    match c {
        Carrier::Edge(g) if *g == e => 1,
        Carrier::Edge(_) => 0,
        Carrier::Normal(p) => match flipped_pieces(map, e, p) {
            None => 0,
            Some((_, n1, _, _)) => n1.side_weight(0),
        },
    }
}
