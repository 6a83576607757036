//! The graphs `A^[k](S)` and `B^[k](S)`, strata and stars.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::Multiarc;
use crate::error::{Error, Result};
use crate::surface::{Backend, Surface};
use crate::universe::ArcUniverse;

/// Default cap on the number of vertices a build may produce.
pub const VERTEX_LIMIT: usize = 2_000_000;

/// How much of the graph to construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphMode {
    /// Every vertex and edge. Only available for polygons.
    Complete,
    /// Vertices within `radius` of `center`, built from arcs whose
    /// coordinate sum is at most `arc_bound`.
    Ball { center: Multiarc, radius: usize, arc_bound: u32 },
}

/// Whether a graph object is the whole graph or a bounded piece of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Ball { center: Multiarc, radius: usize, arc_bound: u32 },
}

#[derive(Clone, Debug)]
pub struct MultiarcGraph {
    surface: Surface,
    k: usize,
    vertices: Vec<Multiarc>,
    index: BTreeMap<Multiarc, usize>,
    adj: Vec<Vec<usize>>,
    completeness: Completeness,
}

/// Cache of `m(ν)` keyed by universe indices.
pub(crate) struct MinCache<'a> {
    surface: &'a Surface,
    universe: &'a ArcUniverse,
    memo: BTreeMap<Vec<usize>, Option<u32>>,
}

impl<'a> MinCache<'a> {
    pub(crate) fn new(surface: &'a Surface, universe: &'a ArcUniverse) -> Self {
        MinCache { surface, universe, memo: BTreeMap::new() }
    }

    pub(crate) fn get(&mut self, nu: &[usize]) -> Result<Option<u32>> {
        let rest = self.surface.complexity() as i64 - nu.len() as i64;
        if rest >= 2 {
            return Ok(Some(0));
        }
        if let Some(v) = self.memo.get(nu) {
            return Ok(*v);
        }
        let v = self.surface.min_intersection(&self.universe.multiarc(nu))?;
        self.memo.insert(nu.to_vec(), v);
        Ok(v)
    }
}

/// Neighbours of `v` among multiarcs drawn from the universe.
pub(crate) fn universe_neighbors(
    u: &ArcUniverse,
    cache: &mut MinCache<'_>,
    v: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for p in 0..v.len() {
        let a = v[p];
        let rest: Vec<usize> = v.iter().copied().filter(|&x| x != a).collect();
        let Some(m) = cache.get(&rest)? else { continue };
        for b in 0..u.len() {
            if v.contains(&b) || u.intersection(a, b) != m {
                continue;
            }
            if rest.iter().all(|&r| u.disjoint(r, b)) {
                let mut w = rest.clone();
                w.push(b);
                w.sort_unstable();
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_k(surface: &Surface, k: usize) -> Result<()> {
    let omega = surface.complexity();
    if k == 0 || k > omega {
        return Err(Error::KOutOfRange { k, omega: omega as i64 });
    }
    Ok(())
}

impl MultiarcGraph {
    /// Build `A^[k](S)`.
    pub fn build(surface: &Surface, k: usize, mode: GraphMode) -> Result<Self> {
        Self::build_limited(surface, k, mode, VERTEX_LIMIT)
    }

    pub fn build_limited(surface: &Surface, k: usize, mode: GraphMode, limit: usize) -> Result<Self> {
        check_k(surface, k)?;
        match mode {
            GraphMode::Complete => {
                if surface.backend() != Backend::Polygon {
                    return Err(Error::UnsupportedBackend(
                        "complete graphs need a finite arc set; use ball mode",
                    ));
                }
                let u = ArcUniverse::new(surface, 0)?;
                Self::complete_from_universe(surface, &u, k, limit)
            }
            GraphMode::Ball { center, radius, arc_bound } => {
                let u = ArcUniverse::new(surface, arc_bound)?;
                Self::ball_from_universe(surface, &u, k, &center, radius, limit)
            }
        }
    }

    /// Every `k`-multiarc of a complete universe.
    pub fn complete_from_universe(surface: &Surface, u: &ArcUniverse, k: usize, limit: usize) -> Result<Self> {
        check_k(surface, k)?;
        if !u.is_complete() {
            return Err(Error::IncompleteGraph("the arc pool is not complete"));
        }
        let verts = u.multiarcs(k, limit)?;
        let mut cache = MinCache::new(surface, u);
        let lookup: BTreeMap<Vec<usize>, usize> =
            verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = Vec::with_capacity(verts.len());
        for v in &verts {
            let mut nb: Vec<usize> = universe_neighbors(u, &mut cache, v)?
                .into_iter()
                .map(|w| lookup[&w])
                .collect();
            nb.sort_unstable();
            adj.push(nb);
        }
        Ok(Self::assemble(surface, k, u, verts, adj, Completeness::Complete))
    }

    /// Ball of the given radius around `center`.
    pub fn ball_from_universe(
        surface: &Surface,
        u: &ArcUniverse,
        k: usize,
        center: &Multiarc,
        radius: usize,
        limit: usize,
    ) -> Result<Self> {
        check_k(surface, k)?;
        let c = surface.multiarc(center.arcs().to_vec())?;
        if c.len() != k {
            return Err(Error::Precondition(format!("center has {} arcs, expected {k}", c.len())));
        }
        let c = u.indices(&c).ok_or_else(|| {
            Error::BoundExhausted("center uses arcs beyond the coordinate bound".into())
        })?;
        let mut cache = MinCache::new(surface, u);
        let mut lookup: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut verts = vec![c.clone()];
        let mut dist = vec![0usize];
        lookup.insert(c, 0);
        let mut raw_adj: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let nb = universe_neighbors(u, &mut cache, &verts[i])?;
            if dist[i] < radius {
                for w in &nb {
                    if !lookup.contains_key(w) {
                        if verts.len() >= limit {
                            return Err(Error::SizeGuard { what: "ball vertices", limit });
                        }
                        lookup.insert(w.clone(), verts.len());
                        verts.push(w.clone());
                        dist.push(dist[i] + 1);
                        queue.push_back(verts.len() - 1);
                    }
                }
            }
            if raw_adj.len() <= i {
                raw_adj.resize(i + 1, Vec::new());
            }
            raw_adj[i] = nb;
        }
        raw_adj.resize(verts.len(), Vec::new());
        // sort vertices lexicographically for stable output
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.sort_by(|&a, &b| verts[a].cmp(&verts[b]));
        let mut pos = vec![0; verts.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for (old, nb) in raw_adj.iter().enumerate() {
            let mut list: Vec<usize> =
                nb.iter().filter_map(|w| lookup.get(w)).map(|&j| pos[j]).collect();
            list.sort_unstable();
            adj[pos[old]] = list;
        }
        let sorted: Vec<Vec<usize>> = order.iter().map(|&o| verts[o].clone()).collect();
        let completeness = Completeness::Ball {
            center: center.clone(),
            radius,
            arc_bound: u.bound(),
        };
        Ok(Self::assemble(surface, k, u, sorted, adj, completeness))
    }

    fn assemble(
        surface: &Surface,
        k: usize,
        u: &ArcUniverse,
        verts: Vec<Vec<usize>>,
        adj: Vec<Vec<usize>>,
        completeness: Completeness,
    ) -> Self {
        let vertices: Vec<Multiarc> = verts.iter().map(|v| u.multiarc(v)).collect();
        Self::from_parts(surface.clone(), k, vertices, adj, completeness)
    }

    /// Assemble a graph from explicit vertices and symmetric sorted
    /// adjacency lists.
    pub fn from_parts(
        surface: Surface,
        k: usize,
        vertices: Vec<Multiarc>,
        adj: Vec<Vec<usize>>,
        completeness: Completeness,
    ) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        MultiarcGraph { surface, k, vertices, index, adj, completeness }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn completeness(&self) -> &Completeness {
        &self.completeness
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Multiarc] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Multiarc {
        &self.vertices[i]
    }

    pub fn index_of(&self, m: &Multiarc) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn require(&self, m: &Multiarc) -> Result<usize> {
        self.index_of(m).ok_or_else(|| Error::NotInGraph(format!("{m}")))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adj.iter().enumerate() {
            for &j in nb {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Induced subgraph on the given vertex indices. Returns the subgraph and
    /// the parent index of each new vertex.
    pub fn induced(&self, keep: &[usize]) -> (MultiarcGraph, Vec<usize>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut pos = vec![usize::MAX; self.len()];
        for (n, &o) in keep.iter().enumerate() {
            pos[o] = n;
        }
        let adj = keep
            .iter()
            .map(|&o| {
                self.adj[o].iter().filter(|&&j| pos[j] != usize::MAX).map(|&j| pos[j]).collect()
            })
            .collect();
        let verts = keep.iter().map(|&o| self.vertices[o].clone()).collect();
        (
            Self::from_parts(self.surface.clone(), self.k, verts, adj, self.completeness.clone()),
            keep,
        )
    }

    /// Induced subgraph on vertices containing `nu`.
    pub fn stratum(&self, nu: &Multiarc) -> Result<MultiarcGraph> {
        self.surface.multiarc(nu.arcs().to_vec())?;
        if nu.len() > self.k {
            return Err(Error::Precondition(format!("|ν| = {} exceeds k = {}", nu.len(), self.k)));
        }
        Ok(self.induced(&self.stratum_indices(nu)).0)
    }

    pub fn stratum_indices(&self, nu: &Multiarc) -> Vec<usize> {
        (0..self.len()).filter(|&i| nu.is_subset(&self.vertices[i])).collect()
    }

    /// `nu` together with its neighbours.
    pub fn star(&self, nu: &Multiarc) -> Result<MultiarcGraph> {
        let i = self.require(nu)?;
        let mut keep = self.adj[i].clone();
        keep.push(i);
        Ok(self.induced(&keep).0)
    }

    /// Breadth-first distances, `usize::MAX` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components as sorted index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// All-pairs distances as a flat row-major table.
    pub fn distance_table(&self) -> Vec<u32> {
        let n = self.len();
        let mut out = vec![u32::MAX; n * n];
        for s in 0..n {
            for (t, d) in self.bfs(s).into_iter().enumerate() {
                out[s * n + t] = if d == usize::MAX { u32::MAX } else { d as u32 };
            }
        }
        out
    }

    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.len() {
            for d in self.bfs(s) {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }
}

/// Per-arc flags for `B^[k]`: non-separating or ear.
fn good_arcs(surface: &Surface, u: &ArcUniverse) -> Result<Vec<bool>> {
    u.arcs()
        .iter()
        .map(|a| {
            let t = surface.topological_type(a)?;
            Ok(!t.separating || t.ear)
        })
        .collect()
}

/// Build `B^[k](S)`: vertices of `A^[k]` containing a non-separating arc or an
/// ear, joined when they are `A^[k]`-adjacent and the exchanged arcs form a
/// nice pair.
pub fn b_graph(surface: &Surface, k: usize, mode: GraphMode) -> Result<MultiarcGraph> {
    check_k(surface, k)?;
    let (u, a) = match &mode {
        GraphMode::Complete => {
            if surface.backend() != Backend::Polygon {
                return Err(Error::UnsupportedBackend("complete graphs need a finite arc set"));
            }
            let u = ArcUniverse::new(surface, 0)?;
            let g = MultiarcGraph::complete_from_universe(surface, &u, k, VERTEX_LIMIT)?;
            (u, g)
        }
        GraphMode::Ball { center, radius, arc_bound } => {
            let u = ArcUniverse::new(surface, *arc_bound)?;
            let g = MultiarcGraph::ball_from_universe(surface, &u, k, center, *radius, VERTEX_LIMIT)?;
            (u, g)
        }
    };
    b_graph_from(surface, &u, &a)
}

/// Restrict an `A^[k]` graph built over `u` to `B^[k]`.
pub fn b_graph_from(surface: &Surface, u: &ArcUniverse, a: &MultiarcGraph) -> Result<MultiarcGraph> {
    let good = good_arcs(surface, u)?;
    let keep: Vec<usize> = (0..a.len())
        .filter(|&i| a.vertex(i).iter().any(|x| good[u.index_of(x).unwrap()]))
        .collect();
    let (sub, _) = a.induced(&keep);
    let mut nice: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut adj = vec![Vec::new(); sub.len()];
    for (i, j) in sub.edges() {
        let (x, y) = (sub.vertex(i), sub.vertex(j));
        let nu = x.intersection(y);
        let p = u.index_of(&x.difference(&nu).arcs()[0]).unwrap();
        let q = u.index_of(&y.difference(&nu).arcs()[0]).unwrap();
        let key = (p.min(q), p.max(q));
        let ok = match nice.get(&key) {
            Some(&v) => v,
            None => {
                let v = good[p] && good[q] && surface.nice_pair(u.arc(p), u.arc(q))?;
                nice.insert(key, v);
                v
            }
        };
        if ok {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    Ok(MultiarcGraph::from_parts(
        surface.clone(),
        a.k(),
        sub.vertices().to_vec(),
        adj,
        a.completeness().clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::Arc;

    fn poly(n: u32, k: usize) -> MultiarcGraph {
        MultiarcGraph::build(&Surface::polygon(n).unwrap(), k, GraphMode::Complete).unwrap()
    }

    #[test]
    fn pentagon_is_a_five_cycle() {
        let g = poly(5, 1);
        assert_eq!(g.len(), 5);
        assert_eq!(g.num_edges(), 5);
        assert!((0..5).all(|i| g.degree(i) == 2));
        let f = poly(5, 2);
        assert_eq!(f.len(), 5);
        assert!((0..5).all(|i| f.degree(i) == 2));
    }

    #[test]
    fn hexagon_counts() {
        let g1 = poly(6, 1);
        assert_eq!(g1.len(), 9);
        let g2 = poly(6, 2);
        assert_eq!(g2.len(), 21);
        let g3 = poly(6, 3);
        assert_eq!(g3.len(), 14);
        assert!((0..14).all(|i| g3.degree(i) == 3));
        assert_eq!(g3.num_edges(), 21);
    }

    #[test]
    fn heptagon_and_octagon_counts() {
        let c7: Vec<usize> = (1..=4).map(|k| poly(7, k).len()).collect();
        assert_eq!(c7, vec![14, 56, 84, 42]);
        let c8: Vec<usize> = (1..=5).map(|k| poly(8, k).len()).collect();
        assert_eq!(c8, vec![20, 120, 300, 330, 132]);
    }

    #[test]
    fn stratum_and_star() {
        let g = poly(6, 2);
        let nu = Multiarc::chords(&[(0, 3)]);
        let st = g.stratum(&nu).unwrap();
        assert!(st.vertices().iter().all(|v| v.contains(&Arc::chord(0, 3))));
        assert_eq!(st.len(), 4);
        let v = Multiarc::chords(&[(0, 2), (0, 3)]);
        let star = g.star(&v).unwrap();
        assert_eq!(star.len(), g.degree(g.index_of(&v).unwrap()) + 1);
        assert!(g.star(&Multiarc::chords(&[(0, 2), (1, 3)])).is_err());
    }

    #[test]
    fn k_range_checked() {
        let s = Surface::polygon(6).unwrap();
        assert!(matches!(
            MultiarcGraph::build(&s, 4, GraphMode::Complete),
            Err(Error::KOutOfRange { k: 4, omega: 3 })
        ));
        assert!(MultiarcGraph::build(&s, 0, GraphMode::Complete).is_err());
    }

    #[test]
    fn ball_around_polygon_vertex_matches_complete_graph() {
        let s = Surface::polygon(7).unwrap();
        let full = MultiarcGraph::build(&s, 2, GraphMode::Complete).unwrap();
        let c = Multiarc::chords(&[(0, 2), (0, 3)]);
        let ball = MultiarcGraph::build(&s, 2, GraphMode::Ball { center: c.clone(), radius: 2, arc_bound: 0 }).unwrap();
        let d = full.bfs(full.index_of(&c).unwrap());
        let expect = d.iter().filter(|&&x| x <= 2).count();
        assert_eq!(ball.len(), expect);
        assert!(!ball.is_complete());
    }

    #[test]
    fn b_graph_pentagon_and_decagon() {
        let s5 = Surface::polygon(5).unwrap();
        let b5 = b_graph(&s5, 1, GraphMode::Complete).unwrap();
        assert_eq!(b5.len(), 5);
        assert_eq!(b5.num_edges(), 0);
        let s10 = Surface::polygon(10).unwrap();
        let b10 = b_graph(&s10, 1, GraphMode::Complete).unwrap();
        assert_eq!(b10.len(), 10);
        assert!(b10.is_connected());
    }
}
