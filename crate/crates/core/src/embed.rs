//! Simplicial maps between multiarc graphs of polygons: sub-polygon
//! embeddings padded by a multiarc, cliques of the arc graph, and the
//! permuting-triple check.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, Chord, Multiarc};
use crate::error::{Error, Result};
use crate::graph::{GraphMode, MultiarcGraph};
use crate::polygon::{self, Dihedral};
use crate::surface::Surface;

/// A polygon realised inside a bigger one: source vertex `i` goes to
/// `vertices[i]`, and every image is padded by `nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceEmbedding {
    pub source_n: u32,
    pub target_n: u32,
    pub vertices: Vec<u32>,
    pub nu: Multiarc,
}

fn polygon_n(s: &Surface) -> Result<u32> {
    s.polygon_size().ok_or(Error::UnsupportedBackend("embeddings are implemented for polygons"))
}

impl SurfaceEmbedding {
    pub fn new(source: &Surface, target: &Surface, vertices: Vec<u32>, nu: Multiarc) -> Result<Self> {
        let (m, n) = (polygon_n(source)?, polygon_n(target)?);
        if vertices.len() != m as usize || vertices.windows(2).any(|w| w[0] >= w[1]) || vertices.iter().any(|&v| v >= n) {
            return Err(Error::Precondition(format!("{vertices:?} is not an increasing choice of {m} vertices of the {n}-gon")));
        }
        let nu = target.multiarc(nu.arcs().to_vec())?;
        let e = SurfaceEmbedding { source_n: m, target_n: n, vertices, nu };
        for d in polygon::diagonals(m) {
            let img = e.map_chord(d);
            if !polygon::is_diagonal(n, img.lo(), img.hi()) {
                return Err(Error::Precondition(format!("{d} maps onto the side {img}")));
            }
            for a in &e.nu {
                let c = a.as_chord().unwrap();
                if c == img || polygon::crosses(c, img) {
                    return Err(Error::Precondition(format!("{a} meets the image arc {img}")));
                }
            }
        }
        Ok(e)
    }

    /// The `region`-th piece of the polygon cut along `nu`.
    pub fn sub_polygon(target: &Surface, nu: &Multiarc, region: usize) -> Result<Self> {
        let n = polygon_n(target)?;
        let chords: Vec<Chord> = nu.iter().filter_map(|a| a.as_chord()).collect();
        let regions = polygon::regions(n, &chords);
        let r = regions.get(region).ok_or_else(|| Error::Precondition(format!("no region {region}")))?;
        if r.len() < 4 {
            return Err(Error::Precondition(format!("region {r:?} is a triangle")));
        }
        Self::new(&Surface::polygon(r.len() as u32)?, target, r.clone(), nu.clone())
    }

    pub fn identity(s: &Surface) -> Result<Self> {
        let n = polygon_n(s)?;
        Self::new(s, s, (0..n).collect(), Multiarc::default())
    }

    pub fn map_chord(&self, c: Chord) -> Chord {
        Chord::new(self.vertices[c.lo() as usize], self.vertices[c.hi() as usize])
    }

    pub fn map_arc(&self, a: &Arc) -> Result<Arc> {
        let c = a.as_chord().ok_or(Error::UnsupportedBackend("embeddings are implemented for polygons"))?;
        if c.hi() >= self.source_n {
            return Err(Error::InvalidArc(format!("{c} is not a chord of the {}-gon", self.source_n)));
        }
        Ok(Arc::Chord(self.map_chord(c)))
    }

    /// `μ ↦ f(μ) ∪ ν`.
    pub fn map_multiarc(&self, mu: &Multiarc) -> Result<Multiarc> {
        let mut arcs = mu.iter().map(|a| self.map_arc(a)).collect::<Result<Vec<_>>>()?;
        arcs.extend(self.nu.iter().cloned());
        Ok(Multiarc::from_arcs_unchecked(arcs))
    }

    /// Target level of the induced map from level `k1`.
    pub fn target_k(&self, k1: usize) -> usize {
        k1 + self.nu.len()
    }
}

/// Every sub-polygon of `target` with at least four vertices cut out by a
/// multiarc of size `1..=max_nu`.
pub fn enumerate_cut_embeddings(target: &Surface, max_nu: usize) -> Result<Vec<SurfaceEmbedding>> {
    let n = polygon_n(target)?;
    let diags = polygon::diagonals(n);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chosen, next)) = stack.pop() {
        if !chosen.is_empty() {
            let chords: Vec<Chord> = chosen.iter().map(|&i| diags[i]).collect();
            let nu = Multiarc::from_arcs_unchecked(chords.iter().map(|&c| Arc::Chord(c)).collect());
            for r in polygon::regions(n, &chords) {
                if r.len() >= 4 {
                    out.push(SurfaceEmbedding::new(&Surface::polygon(r.len() as u32)?, target, r, nu.clone())?);
                }
            }
        }
        if chosen.len() == max_nu {
            continue;
        }
        for i in next..diags.len() {
            if chosen.iter().all(|&j| !polygon::crosses(diags[i], diags[j])) {
                let mut c = chosen.clone();
                c.push(i);
                stack.push((c, i + 1));
            }
        }
    }
    out.sort_by(|a, b| (a.nu.arcs(), &a.vertices).cmp(&(b.nu.arcs(), &b.vertices)));
    Ok(out)
}

/// Images of the vertices of a source graph in a target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub images: Vec<usize>,
}

/// Injective and sends edges to edges.
pub fn is_simplicial_embedding(src: &MultiarcGraph, dst: &MultiarcGraph, m: &VertexMap) -> bool {
    if m.images.len() != src.len() || m.images.iter().any(|&i| i >= dst.len()) {
        return false;
    }
    let distinct: BTreeSet<usize> = m.images.iter().copied().collect();
    distinct.len() == m.images.len() && src.edges().into_iter().all(|(i, j)| dst.has_edge(m.images[i], m.images[j]))
}

/// `μ ↦ f(μ) ∪ ν` between prebuilt complete graphs.
pub fn induced_map_in(e: &SurfaceEmbedding, src: &MultiarcGraph, dst: &MultiarcGraph) -> Result<VertexMap> {
    if dst.k() != e.target_k(src.k()) {
        return Err(Error::Precondition(format!("target level must be {}", e.target_k(src.k()))));
    }
    let images = src
        .vertices()
        .iter()
        .map(|mu| dst.require(&e.map_multiarc(mu)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexMap { images })
}

/// Build both complete graphs and the induced map from level `k1`.
pub fn induced_map(e: &SurfaceEmbedding, k1: usize) -> Result<(MultiarcGraph, MultiarcGraph, VertexMap)> {
    let src = MultiarcGraph::build(&Surface::polygon(e.source_n)?, k1, GraphMode::Complete)?;
    let dst = MultiarcGraph::build(&Surface::polygon(e.target_n)?, e.target_k(k1), GraphMode::Complete)?;
    let m = induced_map_in(e, &src, &dst)?;
    Ok((src, dst, m))
}

/// Vertices of `stratum(ν)` whose other arcs are all images of source
/// diagonals, sorted.
pub fn f_image_of_stratum(e: &SurfaceEmbedding, dst: &MultiarcGraph) -> Vec<usize> {
    let imgs: BTreeSet<Arc> = polygon::diagonals(e.source_n).into_iter().map(|d| Arc::Chord(e.map_chord(d))).collect();
    dst.stratum_indices(&e.nu)
        .into_iter()
        .filter(|&w| dst.vertex(w).difference(&e.nu).iter().all(|a| imgs.contains(a)))
        .collect()
}

/// A witness `(u, v, w)` with `u, v` in `set` and `w` on a geodesic between
/// them but outside `set`, if any.
pub fn convexity_violation(g: &MultiarcGraph, set: &[usize]) -> Option<(usize, usize, usize)> {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let dist: Vec<Vec<usize>> = set.iter().map(|&u| g.bfs(u)).collect();
    for (a, &u) in set.iter().enumerate() {
        for (b, &v) in set.iter().enumerate().skip(a + 1) {
            let d = dist[a][v];
            if d == usize::MAX {
                continue;
            }
            for w in 0..g.len() {
                if !inside.contains(&w) && dist[a][w].saturating_add(dist[b][w]) == d {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermuteVerdict {
    /// The `k+1` arcs permuted by the triple.
    pub arcs: Multiarc,
    /// Vertices adjacent to all three, other than the three.
    pub common_neighbors: Vec<usize>,
    /// Common neighbours using an arc outside `arcs`.
    pub violators: Vec<usize>,
}

impl PermuteVerdict {
    pub fn holds(&self) -> bool {
        self.violators.is_empty()
    }
}

fn permutes(g: &MultiarcGraph, t: [usize; 3]) -> Option<Multiarc> {
    let k = g.k();
    let [a, b, c] = t.map(|i| g.vertex(i));
    let inter = a.intersection(b).intersection(c);
    let union = a.union(b).union(c);
    (k >= 2 && inter.len() == k - 2 && union.len() == k + 1).then_some(union)
}

pub fn check_permute(g: &MultiarcGraph, triple: [usize; 3]) -> Result<PermuteVerdict> {
    let [a, b, c] = triple;
    if [a, b, c].iter().any(|&i| i >= g.len()) {
        return Err(Error::NotInGraph(format!("{triple:?}")));
    }
    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return Err(Error::Precondition("triple is not pairwise adjacent".into()));
    }
    let arcs = permutes(g, triple)
        .ok_or_else(|| Error::Precondition(format!("triple does not permute {} arcs", g.k() + 1)))?;
    let common_neighbors: Vec<usize> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&w| w != b && w != c && g.has_edge(w, b) && g.has_edge(w, c))
        .collect();
    let violators = common_neighbors.iter().copied().filter(|&w| !g.vertex(w).is_subset(&arcs)).collect();
    Ok(PermuteVerdict { arcs, common_neighbors, violators })
}

/// Every pairwise adjacent triple `a < b < c` that permutes `k+1` arcs.
pub fn permuting_triples(g: &MultiarcGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.len() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) && permutes(g, [a, b, c]).is_some() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueReport {
    /// Maximal cliques of the arc graph, as multiarcs, sorted.
    pub cliques: Vec<Multiarc>,
    /// Maximal cliques whose size is not the complexity.
    pub unexpected: Vec<Multiarc>,
    /// The cliques are exactly the triangulations.
    pub bijection: bool,
    /// Cliques sharing all but one vertex are exactly the flips.
    pub flip_graph_matches: bool,
}

pub(crate) fn bron_kerbosch(adj: &[BTreeSet<usize>], r: &mut Vec<usize>, mut p: BTreeSet<usize>, mut x: BTreeSet<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = *p.iter().chain(x.iter()).max_by_key(|&&u| adj[u].intersection(&p).count()).unwrap();
    let cand: Vec<usize> = p.iter().copied().filter(|v| !adj[pivot].contains(v)).collect();
    for v in cand {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]).copied().collect(), x.intersection(&adj[v]).copied().collect(), out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// Maximal sets of pairwise disjoint arcs of a complete arc graph and their
/// flip structure. Disjointness is used rather than the graph's edges, which
/// differ from it only when the complexity is one.
pub fn cliques_to_triangulations(g: &MultiarcGraph) -> Result<CliqueReport> {
    if g.k() != 1 || !g.is_complete() {
        return Err(Error::Precondition("expected the complete arc graph".into()));
    }
    let s = g.surface();
    polygon_n(s)?;
    let omega = s.complexity();
    let mut adj = vec![BTreeSet::new(); g.len()];
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if s.disjoint(&g.vertex(i).arcs()[0], &g.vertex(j).arcs()[0])? {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut raw = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), (0..g.len()).collect(), BTreeSet::new(), &mut raw);
    let mut cliques: Vec<Multiarc> = raw
        .iter()
        .map(|c| Multiarc::from_arcs_unchecked(c.iter().flat_map(|&v| g.vertex(v).iter().cloned()).collect()))
        .collect();
    cliques.sort();
    let unexpected: Vec<Multiarc> = cliques.iter().filter(|c| c.len() != omega).cloned().collect();
    let flips = MultiarcGraph::build(s, omega, GraphMode::Complete)?;
    let bijection = unexpected.is_empty() && cliques.as_slice() == flips.vertices();
    let mut flip_graph_matches = bijection;
    if bijection {
        for i in 0..cliques.len() {
            for j in i + 1..cliques.len() {
                let share = cliques[i].intersection(&cliques[j]).len() + 1 == omega;
                flip_graph_matches &= share == flips.has_edge(i, j);
            }
        }
    }
    Ok(CliqueReport { cliques, unexpected, bijection, flip_graph_matches })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeVerdict {
    pub holds: bool,
    pub mismatches: Vec<(Arc, Arc)>,
}

/// Compare topological types of each arc and its image between arc graphs.
pub fn type_preservation(src: &MultiarcGraph, dst: &MultiarcGraph, m: &VertexMap) -> Result<TypeVerdict> {
    if src.k() != 1 || dst.k() != 1 || m.images.len() != src.len() {
        return Err(Error::Precondition("expected a map between arc graphs".into()));
    }
    let mut mismatches = Vec::new();
    for (v, &w) in m.images.iter().enumerate() {
        let a = &src.vertex(v).arcs()[0];
        let b = &dst.vertex(w).arcs()[0];
        if src.surface().topological_type(a)? != dst.surface().topological_type(b)? {
            mismatches.push((a.clone(), b.clone()));
        }
    }
    Ok(TypeVerdict { holds: mismatches.is_empty(), mismatches })
}

/// All simplicial embeddings between two complete graphs, by backtracking.
pub fn simplicial_embeddings(src: &MultiarcGraph, dst: &MultiarcGraph, limit: usize) -> Result<Vec<VertexMap>> {
    let mut order = Vec::new();
    let mut seen = vec![false; src.len()];
    for s in 0..src.len() {
        if seen[s] {
            continue;
        }
        let d = src.bfs(s);
        let mut comp: Vec<usize> = (0..src.len()).filter(|&v| d[v] != usize::MAX).collect();
        comp.sort_by_key(|&v| d[v]);
        for v in comp {
            seen[v] = true;
            order.push(v);
        }
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; src.len()];
    let mut used = vec![false; dst.len()];
    fn go(
        src: &MultiarcGraph,
        dst: &MultiarcGraph,
        order: &[usize],
        pos: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<VertexMap>,
        limit: usize,
    ) -> Result<()> {
        let Some(&v) = order.get(pos) else {
            if out.len() >= limit {
                return Err(Error::SizeGuard { what: "simplicial embeddings", limit });
            }
            out.push(VertexMap { images: map.clone() });
            return Ok(());
        };
        for w in 0..dst.len() {
            if used[w] || dst.degree(w) < src.degree(v) {
                continue;
            }
            if src.neighbors(v).iter().any(|&u| map[u] != usize::MAX && !dst.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            go(src, dst, order, pos + 1, map, used, out, limit)?;
            map[v] = usize::MAX;
            used[w] = false;
        }
        Ok(())
    }
    go(src, dst, &order, 0, &mut map, &mut used, &mut out, limit)?;
    Ok(out)
}

/// Whether a map from an arc graph is `a ↦ f(a) ∪ ν` for a polygon
/// embedding `f` preserving or reversing the cyclic order.
pub fn is_f_nu_form(src: &MultiarcGraph, dst: &MultiarcGraph, m: &VertexMap) -> Result<bool> {
    if src.k() != 1 {
        return Err(Error::Precondition("the form check is implemented for arc graphs".into()));
    }
    let (sm, tn) = (polygon_n(src.surface())?, polygon_n(dst.surface())?);
    let Some(first) = m.images.first() else { return Ok(true) };
    let core = m.images.iter().fold(dst.vertex(*first).clone(), |acc, &w| acc.intersection(dst.vertex(w)));
    if core.len() + 1 != dst.k() {
        return Ok(false);
    }
    let f: Vec<Chord> = m
        .images
        .iter()
        .map(|&w| dst.vertex(w).difference(&core).arcs()[0].as_chord().unwrap())
        .collect();
    let src_chords: Vec<Chord> = src.vertices().iter().map(|v| v.arcs()[0].as_chord().unwrap()).collect();
    let mut subset: Vec<u32> = (0..sm).collect();
    loop {
        for d in Dihedral::all(sm) {
            let ok = src_chords.iter().zip(&f).all(|(c, img)| {
                let c2 = d.apply(*c);
                Chord::new(subset[c2.lo() as usize], subset[c2.hi() as usize]) == *img
            });
            if ok {
                return Ok(true);
            }
        }
        // next increasing subset of size sm in 0..tn
        let mut i = sm as usize;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if subset[i] < tn - (sm - i as u32) {
                subset[i] += 1;
                for j in i + 1..sm as usize {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{mapping_class_automorphism, MappingClass};

    fn graph(n: u32, k: usize) -> MultiarcGraph {
        MultiarcGraph::build(&Surface::polygon(n).unwrap(), k, GraphMode::Complete).unwrap()
    }

    #[test]
    fn pentagon_into_hexagon() {
        let hex = Surface::polygon(6).unwrap();
        let e = SurfaceEmbedding::sub_polygon(&hex, &Multiarc::chords(&[(0, 4)]), 0).unwrap();
        assert_eq!(e.vertices, vec![0, 1, 2, 3, 4]);
        let (src, dst, m) = induced_map(&e, 1).unwrap();
        assert!(is_simplicial_embedding(&src, &dst, &m));
        let mut img = m.images.clone();
        img.sort();
        assert_eq!(img, f_image_of_stratum(&e, &dst));
        assert_eq!(img, dst.stratum_indices(&e.nu));
        assert_eq!(convexity_violation(&dst, &img), None);
    }

    #[test]
    fn crossing_padding_is_rejected() {
        let hex = Surface::polygon(6).unwrap();
        let quad = Surface::polygon(4).unwrap();
        let r = SurfaceEmbedding::new(&quad, &hex, vec![0, 1, 3, 4], Multiarc::chords(&[(0, 2), (2, 4)]));
        assert!(matches!(r, Err(Error::Precondition(_))));
        let id = SurfaceEmbedding::identity(&hex).unwrap();
        let (_, _, m) = induced_map(&id, 2).unwrap();
        assert!(m.images.iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn collapsing_map_is_not_an_embedding() {
        let g = graph(6, 2);
        let mut m = VertexMap { images: (0..g.len()).collect() };
        assert!(is_simplicial_embedding(&g, &g, &m));
        m.images[1] = m.images[0];
        assert!(!is_simplicial_embedding(&g, &g, &m));
        let r = MappingClass::Dihedral(Dihedral::rotation(6, 1));
        let a = mapping_class_automorphism(&g, &r).unwrap();
        assert!(is_simplicial_embedding(&g, &g, &VertexMap { images: a.perm }));
    }

    #[test]
    fn permute_examples() {
        let g = graph(6, 2);
        let t = [(0, 2), (0, 3)].as_slice();
        let idx = |p: &[(u32, u32)]| g.index_of(&Multiarc::chords(p)).unwrap();
        let v = check_permute(&g, [idx(t), idx(&[(0, 2), (0, 4)]), idx(&[(0, 3), (0, 4)])]).unwrap();
        assert!(v.common_neighbors.is_empty() && v.holds());
        assert!(check_permute(&g, [idx(t), idx(&[(0, 2), (2, 4)]), idx(&[(0, 3), (3, 5)])]).is_err());
        for tr in permuting_triples(&g) {
            assert!(check_permute(&g, tr).unwrap().holds());
        }
    }

    #[test]
    fn cliques_are_triangulations() {
        for (n, count) in [(4, 2), (5, 5), (6, 14), (7, 42)] {
            let r = cliques_to_triangulations(&graph(n, 1)).unwrap();
            assert_eq!(r.cliques.len(), count);
            assert!(r.bijection && r.flip_graph_matches);
        }
    }

    #[test]
    fn ears_go_to_ears() {
        let g = graph(5, 1);
        let maps = simplicial_embeddings(&g, &g, 1000).unwrap();
        assert_eq!(maps.len(), 10);
        for m in &maps {
            assert!(type_preservation(&g, &g, m).unwrap().holds);
            assert!(is_f_nu_form(&g, &g, m).unwrap());
        }
        let h = graph(6, 1);
        let ear = h.index_of(&Multiarc::chords(&[(0, 2)])).unwrap();
        let long = h.index_of(&Multiarc::chords(&[(0, 3)])).unwrap();
        let mut images: Vec<usize> = (0..h.len()).collect();
        images.swap(ear, long);
        assert!(!type_preservation(&h, &h, &VertexMap { images }).unwrap().holds);
    }

    #[test]
    fn cut_embeddings_of_the_hexagon() {
        let hex = Surface::polygon(6).unwrap();
        let all = enumerate_cut_embeddings(&hex, 2).unwrap();
        assert!(all.iter().any(|e| e.source_n == 5));
        for e in &all {
            for k1 in 1..=(e.source_n as usize - 3) {
                let (src, dst, m) = induced_map(e, k1).unwrap();
                if k1 < e.source_n as usize - 3 {
                    assert!(is_simplicial_embedding(&src, &dst, &m));
                }
                let mut img = m.images.clone();
                img.sort();
                assert_eq!(img, f_image_of_stratum(e, &dst));
            }
        }
    }
}
