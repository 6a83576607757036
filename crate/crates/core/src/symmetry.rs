//! Mapping classes acting on multiarcs, the edge map to (k-1)-multiarcs,
//! induced automorphisms, and automorphism groups of finite graphs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, Multiarc};
use crate::error::{Error, Result};
use crate::graph::{GraphMode, MultiarcGraph};
use crate::polygon::Dihedral;
use crate::surface::{Model, Surface};
use crate::triangulated::FlipClass;

#[derive(Clone, Debug)]
pub enum MappingClass {
    Dihedral(Dihedral),
    /// Flip word from the reference triangulation followed by a
    /// combinatorial isomorphism back onto it.
    Flips(FlipClass),
}

impl MappingClass {
    pub fn is_identity(&self) -> bool {
        match self {
            MappingClass::Dihedral(d) => d.shift == 0 && !d.reflect,
            MappingClass::Flips(f) => f.word.is_empty() && f.iso.is_identity(),
        }
    }
}

/// Dihedral group of a polygon, identity first.
pub fn dihedral_group(s: &Surface) -> Result<Vec<MappingClass>> {
    let n = s.polygon_size().ok_or(Error::UnsupportedBackend("dihedral actions need a polygon"))?;
    Ok(Dihedral::all(n).into_iter().map(MappingClass::Dihedral).collect())
}

pub fn act_arc(s: &Surface, g: &MappingClass, a: &Arc) -> Result<Arc> {
    s.validate_arc(a)?;
    match (g, a, &s.model) {
        (MappingClass::Dihedral(d), Arc::Chord(c), Model::Polygon { n }) if d.n == *n => Ok(Arc::Chord(d.apply(*c))),
        (MappingClass::Flips(f), Arc::Normal(x), Model::Triangulated(m)) => Ok(Arc::Normal(m.act(f, x)?)),
        _ => Err(Error::SurfaceMismatch("mapping class does not act on this surface".into())),
    }
}

pub fn act(s: &Surface, g: &MappingClass, mu: &Multiarc) -> Result<Multiarc> {
    let arcs = mu.iter().map(|a| act_arc(s, g, a)).collect::<Result<Vec<_>>>()?;
    Ok(Multiarc::from_arcs_unchecked(arcs))
}

/// A vertex permutation of a finite graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphAutomorphism {
    pub perm: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        GraphAutomorphism { perm: inv }
    }

    /// Non-trivial cycles, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for s in 0..self.perm.len() {
            if seen[s] || self.perm[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut v = self.perm[s];
            while v != s {
                seen[v] = true;
                c.push(v);
                v = self.perm[v];
            }
            out.push(c);
        }
        out
    }
}

/// Whether `perm` is a bijection preserving adjacency and non-adjacency.
pub fn is_automorphism(g: &MultiarcGraph, a: &GraphAutomorphism) -> bool {
    if a.perm.len() != g.len() {
        return false;
    }
    let mut hit = vec![false; g.len()];
    for &p in &a.perm {
        if p >= g.len() || hit[p] {
            return false;
        }
        hit[p] = true;
    }
    (0..g.len()).all(|v| {
        let mut img: Vec<usize> = g.neighbors(v).iter().map(|&w| a.perm[w]).collect();
        img.sort_unstable();
        img == g.neighbors(a.perm[v])
    })
}

/// The permutation of a complete graph induced by a mapping class.
pub fn mapping_class_automorphism(g: &MultiarcGraph, m: &MappingClass) -> Result<GraphAutomorphism> {
    let s = g.surface();
    let perm = g
        .vertices()
        .iter()
        .map(|v| {
            let w = act(s, m, v)?;
            g.index_of(&w).ok_or_else(|| Error::NotInGraph(format!("image {w} of {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let a = GraphAutomorphism { perm };
    if !is_automorphism(g, &a) {
        return Err(Error::Falsified("mapping class does not act as a graph automorphism".into()));
    }
    Ok(a)
}

/// The common (k-1)-multiarc of an edge.
pub fn theta(g: &MultiarcGraph, i: usize, j: usize) -> Result<Multiarc> {
    if i >= g.len() || j >= g.len() || !g.has_edge(i, j) {
        return Err(Error::NotAdjacent(format!("({i}, {j}) is not an edge")));
    }
    Ok(g.vertex(i).intersection(g.vertex(j)))
}

/// Every value of `theta` over the edges of `g`.
pub fn theta_image(g: &MultiarcGraph) -> BTreeSet<Multiarc> {
    g.edges().into_iter().map(|(i, j)| g.vertex(i).intersection(g.vertex(j))).collect()
}

/// Automorphism of `lower` (the graph one level down) given by
/// `μ ↦ θ(A(e))` for any edge `e` with `θ(e) = μ`. Every fibre is checked.
pub fn induced_automorphism(
    upper: &MultiarcGraph,
    lower: &MultiarcGraph,
    a: &GraphAutomorphism,
) -> Result<GraphAutomorphism> {
    if upper.k() < 2 || lower.k() + 1 != upper.k() {
        return Err(Error::Precondition("graphs must be consecutive levels with k ≥ 2".into()));
    }
    if !upper.is_complete() || !lower.is_complete() {
        return Err(Error::IncompleteGraph("the induced automorphism needs complete graphs"));
    }
    let mut map: Vec<Option<usize>> = vec![None; lower.len()];
    for (i, j) in upper.edges() {
        let src = lower.require(&upper.vertex(i).intersection(upper.vertex(j)))?;
        let (ai, aj) = (a.apply(i), a.apply(j));
        let dst = lower.require(&upper.vertex(ai).intersection(upper.vertex(aj)))?;
        match map[src] {
            None => map[src] = Some(dst),
            Some(d) if d == dst => {}
            Some(d) => {
                return Err(Error::Falsified(format!(
                    "induced map is not well defined at {}: {} and {}",
                    lower.vertex(src),
                    lower.vertex(d),
                    lower.vertex(dst)
                )))
            }
        }
    }
    let perm = map
        .into_iter()
        .enumerate()
        .map(|(v, m)| m.ok_or_else(|| Error::Falsified(format!("{} is not the core of an edge", lower.vertex(v)))))
        .collect::<Result<Vec<_>>>()?;
    let out = GraphAutomorphism { perm };
    if !is_automorphism(lower, &out) {
        return Err(Error::Falsified("induced map is not an automorphism".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub order: u128,
    /// Strong generators, in the order they were found.
    pub generators: Vec<GraphAutomorphism>,
    /// Backtracking nodes visited.
    pub nodes: usize,
}

pub const AUT_NODE_LIMIT: usize = 50_000_000;

struct Search<'a> {
    g: &'a MultiarcGraph,
    dist: Vec<u32>,
    sig: Vec<(usize, Vec<u32>)>,
    nodes: usize,
    limit: usize,
}

impl Search<'_> {
    fn d(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.g.len() + v]
    }

    /// Extend `fixed` (pairs source → image) to a full isometry, if any.
    fn extend(&mut self, order: &[usize], map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, pos: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::SizeGuard { what: "automorphism search nodes", limit: self.limit });
        }
        let Some(&v) = order.get(pos) else { return Ok(true) };
        if map[v].is_some() {
            return self.extend(order, map, used, pos + 1);
        }
        let mapped: Vec<(usize, usize)> = (0..order.len()).filter_map(|u| map[u].map(|m| (u, m))).collect();
        let cands: Vec<usize> = match mapped.iter().find(|&&(u, _)| self.d(u, v) == 1) {
            Some(&(_, mu)) => self.g.neighbors(mu).to_vec(),
            None => (0..self.g.len()).collect(),
        };
        for w in cands {
            if used[w] || self.sig[w] != self.sig[v] {
                continue;
            }
            if mapped.iter().any(|&(u, mu)| self.d(u, v) != self.d(mu, w)) {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            if self.extend(order, map, used, pos + 1)? {
                return Ok(true);
            }
            map[v] = None;
            used[w] = false;
        }
        Ok(false)
    }
}

fn orbit(start: usize, gens: &[GraphAutomorphism]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        for g in gens {
            let w = g.apply(v);
            if seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    seen
}

/// Full automorphism group of a finite graph by a stabiliser chain: the
/// order is the product of basic orbit lengths.
pub fn automorphisms(g: &MultiarcGraph) -> Result<AutGroup> {
    automorphisms_limited(g, AUT_NODE_LIMIT)
}

pub fn automorphisms_limited(g: &MultiarcGraph, limit: usize) -> Result<AutGroup> {
    if !g.is_complete() {
        return Err(Error::IncompleteGraph("automorphisms need a complete graph"));
    }
    let n = g.len();
    let dist = g.distance_table();
    let sig = (0..n)
        .map(|v| {
            let mut row: Vec<u32> = dist[v * n..(v + 1) * n].to_vec();
            row.sort_unstable();
            (g.degree(v), row)
        })
        .collect();
    let mut s = Search { g, dist, sig, nodes: 0, limit };
    let mut base: Vec<usize> = Vec::new();
    let mut generators: Vec<GraphAutomorphism> = Vec::new();
    let mut order: u128 = 1;
    for v in 0..n {
        let level_gens_start = generators.len();
        let mut orb = BTreeSet::from([v]);
        for w in 0..n {
            if orb.contains(&w) || s.sig[w] != s.sig[v] || base.iter().any(|&b| s.d(b, v) != s.d(b, w)) {
                continue;
            }
            let mut map = vec![None; n];
            let mut used = vec![false; n];
            for &b in &base {
                map[b] = Some(b);
                used[b] = true;
            }
            map[v] = Some(w);
            used[w] = true;
            let mut ord: Vec<usize> = g.bfs(v).iter().enumerate().map(|(u, &d)| (d, u)).collect::<BTreeSet<_>>().into_iter().map(|(_, u)| u).collect();
            ord.retain(|&u| u != v && !base.contains(&u));
            if s.extend(&ord, &mut map, &mut used, 0)? {
                let a = GraphAutomorphism { perm: map.into_iter().map(Option::unwrap).collect() };
                debug_assert!(is_automorphism(g, &a));
                generators.push(a);
                orb = orbit(v, &generators[level_gens_start..]);
            }
        }
        // Generators found at earlier levels also fix every later base point.
        order *= orb.len() as u128;
        base.push(v);
    }
    Ok(AutGroup { order, generators, nodes: s.nodes })
}

/// All elements of the group generated by `gens`, up to `limit`.
pub fn group_elements(n: usize, gens: &[GraphAutomorphism], limit: usize) -> Result<Vec<GraphAutomorphism>> {
    let id = GraphAutomorphism::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut q = VecDeque::from([id]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::SizeGuard { what: "group elements", limit });
                }
                q.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Outcome of checking the automorphism tower between levels `k` and `k-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub k: usize,
    /// Mapping classes whose induced automorphisms were compared.
    pub mapping_classes: usize,
    /// Dihedral actions all induce distinct automorphisms at level `k`.
    pub faithful: bool,
    /// `φ(F(g)) = F(g)` one level down for every mapping class tested.
    pub commutes: bool,
    /// `φ(A∘B) = φ(A)∘φ(B)` for every pair of generators tested.
    pub homomorphism: bool,
    /// Only the identity of the full group maps to the identity.
    pub kernel_trivial: bool,
    pub group_order: u128,
}

impl TowerReport {
    pub fn holds(&self) -> bool {
        self.faithful && self.commutes && self.homomorphism && self.kernel_trivial
    }
}

/// Check the induced-automorphism tower on a polygon from level `k` to
/// `k-1`, with the full automorphism group at level `k`.
pub fn tower_check(s: &Surface, k: usize, group_limit: usize) -> Result<TowerReport> {
    let upper = MultiarcGraph::build(s, k, GraphMode::Complete)?;
    let lower = MultiarcGraph::build(s, k - 1, GraphMode::Complete)?;
    let d = dihedral_group(s)?;
    let mut seen = BTreeSet::new();
    let mut commutes = true;
    let mut homomorphism = true;
    let mut phis = BTreeMap::new();
    for g in &d {
        let a = mapping_class_automorphism(&upper, g)?;
        let b = mapping_class_automorphism(&lower, g)?;
        let p = induced_automorphism(&upper, &lower, &a)?;
        commutes &= p == b;
        seen.insert(a.clone());
        phis.insert(a, p);
    }
    let faithful = seen.len() == d.len();
    let group = automorphisms(&upper)?;
    let elements = group_elements(upper.len(), &group.generators, group_limit)?;
    let mut kernel_trivial = true;
    for a in &elements {
        let p = induced_automorphism(&upper, &lower, a)?;
        if p.is_identity() && !a.is_identity() {
            kernel_trivial = false;
        }
        phis.insert(a.clone(), p);
    }
    for a in group.generators.iter().chain(seen.iter()) {
        for b in group.generators.iter().chain(seen.iter()) {
            let ab = a.compose(b);
            let lhs = match phis.get(&ab) {
                Some(p) => p.clone(),
                None => induced_automorphism(&upper, &lower, &ab)?,
            };
            homomorphism &= lhs == phis[a].compose(&phis[b]);
        }
    }
    Ok(TowerReport { k, mapping_classes: d.len(), faithful, commutes, homomorphism, kernel_trivial, group_order: group.order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u32, k: usize) -> MultiarcGraph {
        MultiarcGraph::build(&Surface::polygon(n).unwrap(), k, GraphMode::Complete).unwrap()
    }

    #[test]
    fn dihedral_actions() {
        let s = Surface::polygon(6).unwrap();
        let r = MappingClass::Dihedral(Dihedral::rotation(6, 1));
        assert_eq!(act_arc(&s, &r, &Arc::chord(0, 2)).unwrap(), Arc::chord(1, 3));
        let f = MappingClass::Dihedral(Dihedral::reflection(6));
        assert_eq!(act_arc(&s, &f, &Arc::chord(1, 3)).unwrap(), Arc::chord(3, 5));
    }

    #[test]
    fn theta_examples() {
        let g = graph(6, 2);
        let a = g.index_of(&Multiarc::chords(&[(0, 2), (0, 3)])).unwrap();
        let b = g.index_of(&Multiarc::chords(&[(0, 3), (3, 5)])).unwrap();
        assert_eq!(theta(&g, a, b).unwrap(), Multiarc::chords(&[(0, 3)]));
        assert!(theta(&g, a, a).is_err());
        assert_eq!(theta_image(&g).len(), graph(6, 1).len());
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphisms(&graph(5, 2)).unwrap().order, 10);
        assert_eq!(automorphisms(&graph(6, 3)).unwrap().order, 12);
        let a1 = automorphisms(&graph(6, 1)).unwrap().order;
        assert!(a1 >= 12 && a1.is_multiple_of(12));
    }

    #[test]
    fn hexagon_tower() {
        let s = Surface::polygon(6).unwrap();
        let r = tower_check(&s, 2, 100_000).unwrap();
        assert!(r.commutes && r.faithful && r.homomorphism, "{r:?}");
    }
}
