//! Paths, distances, geodesics, and explicit connecting paths.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, Multiarc, OrientedArc};
use crate::error::{Error, Result};
use crate::graph::{universe_neighbors, MinCache, MultiarcGraph};
use crate::polygon;
use crate::surface::{Model, Surface};
use crate::universe::ArcUniverse;

/// A sequence of vertices of `A^[k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub vertices: Vec<Multiarc>,
}

impl Path {
    pub fn new(vertices: Vec<Multiarc>) -> Self {
        Path { vertices }
    }

    pub fn from_indices(g: &MultiarcGraph, idx: &[usize]) -> Self {
        Path { vertices: idx.iter().map(|&i| g.vertex(i).clone()).collect() }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Option<&Multiarc> {
        self.vertices.first()
    }

    pub fn last(&self) -> Option<&Multiarc> {
        self.vertices.last()
    }

    /// Every vertex is a valid multiarc of the same size and consecutive
    /// vertices are adjacent.
    pub fn validate(&self, s: &Surface) -> Result<()> {
        let Some(first) = self.vertices.first() else {
            return Err(Error::Precondition("empty path".into()));
        };
        for v in &self.vertices {
            if v.len() != first.len() {
                return Err(Error::InvalidMultiarc("vertices of different sizes".into()));
            }
            s.multiarc(v.arcs().to_vec())?;
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            if !s.adjacent(&w[0], &w[1])? {
                return Err(Error::NotAdjacent(format!("step {i}: {} -> {}", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// Cheap check against a graph that already contains every vertex.
    pub fn validate_in(&self, g: &MultiarcGraph) -> Result<()> {
        let idx = self
            .vertices
            .iter()
            .map(|v| g.require(v))
            .collect::<Result<Vec<_>>>()?;
        for (i, w) in idx.windows(2).enumerate() {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::NotAdjacent(format!("step {i}")));
            }
        }
        Ok(())
    }
}

/// Graph distance, qualified by how much of the graph is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// Distance inside an incomplete ball; an upper bound for the true one.
    WithinBall(usize),
    Unknown,
}

pub fn distance(g: &MultiarcGraph, u: &Multiarc, v: &Multiarc) -> Result<Distance> {
    let (i, j) = (g.require(u)?, g.require(v)?);
    let d = g.bfs(i)[j];
    Ok(match (d == usize::MAX, g.is_complete()) {
        (true, true) => Distance::Unknown,
        (true, false) => Distance::Unknown,
        (false, true) => Distance::Exact(d),
        (false, false) => Distance::WithinBall(d),
    })
}

/// Layers of the geodesic DAG between `u` and `v`: vertices `w` with
/// `d(u, w) + d(w, v) = d(u, v)`.
pub fn geodesic_interval(g: &MultiarcGraph, u: usize, v: usize) -> Option<Vec<usize>> {
    let du = g.bfs(u);
    let dv = g.bfs(v);
    let d = du[v];
    if d == usize::MAX {
        return None;
    }
    Some(
        (0..g.len())
            .filter(|&w| du[w] != usize::MAX && dv[w] != usize::MAX && du[w] + dv[w] == d)
            .collect(),
    )
}

/// Number of geodesics from `u` to `v`, saturating.
pub fn geodesic_count(g: &MultiarcGraph, u: usize, v: usize) -> u128 {
    let du = g.bfs(u);
    let dv = g.bfs(v);
    let d = du[v];
    if d == usize::MAX {
        return 0;
    }
    let mut order: Vec<usize> = (0..g.len()).filter(|&w| du[w] != usize::MAX && dv[w] != usize::MAX && du[w] + dv[w] == d).collect();
    order.sort_by_key(|&w| du[w]);
    let mut count = vec![0u128; g.len()];
    count[u] = 1;
    for &w in &order {
        if w == u {
            continue;
        }
        let mut c = 0u128;
        for &x in g.neighbors(w) {
            if du[x] != usize::MAX && du[x] + 1 == du[w] && dv[x] == dv[w] + 1 {
                c = c.saturating_add(count[x]);
            }
        }
        count[w] = c;
    }
    count[v]
}

/// Every geodesic from `u` to `v` as index sequences in lexicographic order.
/// Fails with [`Error::GeodesicOverflow`] when there are more than `cap`.
pub fn all_geodesic_indices(g: &MultiarcGraph, u: usize, v: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    if !g.is_complete() {
        return Err(Error::IncompleteGraph("geodesics need the whole graph"));
    }
    let n = geodesic_count(g, u, v);
    if n > cap as u128 {
        return Err(Error::GeodesicOverflow { cap });
    }
    let dv = g.bfs(v);
    if dv[u] == usize::MAX {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = vec![u];
    fn walk(g: &MultiarcGraph, dv: &[usize], v: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let w = *cur.last().unwrap();
        if w == v {
            out.push(cur.clone());
            return;
        }
        for &x in g.neighbors(w) {
            if dv[x] + 1 == dv[w] {
                cur.push(x);
                walk(g, dv, v, cur, out);
                cur.pop();
            }
        }
    }
    walk(g, &dv, v, &mut cur, &mut out);
    Ok(out)
}

pub fn all_geodesics(g: &MultiarcGraph, u: &Multiarc, v: &Multiarc, cap: usize) -> Result<Vec<Path>> {
    let (i, j) = (g.require(u)?, g.require(v)?);
    Ok(all_geodesic_indices(g, i, j, cap)?
        .into_iter()
        .map(|p| Path::from_indices(g, &p))
        .collect())
}

/// Breadth-first search among vertices containing `fixed`, using arcs of the
/// universe. Returns the vertex sequence from `start` to `goal`.
pub(crate) fn bfs_in_stratum(
    u: &ArcUniverse,
    cache: &mut MinCache<'_>,
    fixed: &[usize],
    start: &[usize],
    goal: &[usize],
) -> Result<Vec<Vec<usize>>> {
    if start == goal {
        return Ok(vec![start.to_vec()]);
    }
    let mut prev: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    prev.insert(start.to_vec(), Vec::new());
    let mut q = VecDeque::from([start.to_vec()]);
    while let Some(x) = q.pop_front() {
        for y in universe_neighbors(u, cache, &x)? {
            if !fixed.iter().all(|f| y.contains(f)) || prev.contains_key(&y) {
                continue;
            }
            prev.insert(y.clone(), x.clone());
            if y == goal {
                let mut path = vec![y];
                loop {
                    let p = prev[path.last().unwrap()].clone();
                    if p.is_empty() {
                        break;
                    }
                    path.push(p);
                }
                path.reverse();
                return Ok(path);
            }
            q.push_back(y);
        }
    }
    Err(Error::BoundExhausted(format!(
        "no path inside the stratum using arcs up to weight {}",
        u.bound()
    )))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Explicit path from `alpha` to `beta` built by induction on `k`.
///
/// A path for `α ∖ a_k → β ∖ b_k` is lifted one step at a time while a
/// travelling arc `t` is kept disjoint from the current vertex; the arc is
/// moved out of the way inside a stratum when needed and finally brought to
/// `b_k`.
pub fn connect(s: &Surface, alpha: &Multiarc, beta: &Multiarc, u: &ArcUniverse) -> Result<Path> {
    let alpha = s.multiarc(alpha.arcs().to_vec())?;
    let beta = s.multiarc(beta.arcs().to_vec())?;
    if alpha.len() != beta.len() || alpha.is_empty() {
        return Err(Error::Precondition("endpoints must have the same positive size".into()));
    }
    if alpha.len() > s.complexity() {
        return Err(Error::KOutOfRange { k: alpha.len(), omega: s.complexity() as i64 });
    }
    let a = u.indices(&alpha).ok_or_else(|| Error::BoundExhausted("alpha outside the arc pool".into()))?;
    let b = u.indices(&beta).ok_or_else(|| Error::BoundExhausted("beta outside the arc pool".into()))?;
    let mut cache = MinCache::new(s, u);
    let idx = connect_rec(s, u, &mut cache, &a, &b)?;
    let mut verts: Vec<Multiarc> = Vec::new();
    for v in idx {
        let m = u.multiarc(&v);
        if verts.last() != Some(&m) {
            verts.push(m);
        }
    }
    let path = Path::new(verts);
    path.validate(s)?;
    Ok(path)
}

fn connect_rec(
    s: &Surface,
    u: &ArcUniverse,
    cache: &mut MinCache<'_>,
    a: &[usize],
    b: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let k = a.len();
    if k == 1 {
        return bfs_in_stratum(u, cache, &[], a, b);
    }
    let omega = s.complexity();
    let (a_rest, ak) = (a[..k - 1].to_vec(), a[k - 1]);
    let b_rest = b[..k - 1].to_vec();
    let gamma = connect_rec(s, u, cache, &a_rest, &b_rest)?;
    let mut t = ak;
    let mut out: Vec<Vec<usize>> = vec![sorted([a_rest.clone(), vec![t]].concat())];
    for w in gamma.windows(2) {
        let (gi, gj) = (&w[0], &w[1]);
        let e = *gi.iter().find(|x| !gj.contains(x)).unwrap();
        let c = *gj.iter().find(|x| !gi.contains(x)).unwrap();
        if t == c {
            t = e;
            continue;
        }
        if k == omega {
            // t and c both complete gi; they are the two diagonals of the
            // remaining quadrilateral, so flip t to c
            out.push(sorted([gi.clone(), vec![c]].concat()));
            t = e;
            continue;
        }
        if !u.disjoint(t, c) {
            let mut avoid = gi.clone();
            avoid.push(c);
            let star = (0..u.len())
                .find(|&x| !avoid.contains(&x) && avoid.iter().all(|&y| u.disjoint(x, y)))
                .ok_or_else(|| Error::BoundExhausted("no arc avoids the next vertex".into()))?;
            let from = sorted([gi.clone(), vec![t]].concat());
            let to = sorted([gi.clone(), vec![star]].concat());
            let detour = bfs_in_stratum(u, cache, gi, &from, &to)?;
            out.extend(detour.into_iter().skip(1));
            t = star;
        }
        out.push(sorted([gj.clone(), vec![t]].concat()));
    }
    let from = sorted([b_rest.clone(), vec![t]].concat());
    let tail = bfs_in_stratum(u, cache, &b_rest, &from, b)?;
    out.extend(tail.into_iter().skip(1));
    Ok(out)
}

/// Unicorn path between two oriented chords. With one crossing the middle
/// arc joins the tail of `a` to the head of `b`.
pub fn unicorn_path(s: &Surface, a: &OrientedArc, b: &OrientedArc) -> Result<Vec<Arc>> {
    let Model::Polygon { n } = s.model else {
        return Err(Error::UnsupportedBackend("unicorn paths are only implemented for polygons"));
    };
    s.validate_arc(&a.arc)?;
    s.validate_arc(&b.arc)?;
    let (Some(at), Some(bh)) = (a.tail_vertex(), b.head_vertex()) else {
        return Err(Error::InvalidArc("orientation must name an endpoint".into()));
    };
    if a.arc == b.arc {
        return Ok(vec![a.arc.clone()]);
    }
    if s.intersection_number(&a.arc, &b.arc)? == 0 {
        return Ok(vec![a.arc.clone(), b.arc.clone()]);
    }
    if !polygon::is_diagonal(n, at, bh) {
        return Err(Error::Precondition(format!(
            "unicorn arc {at}-{bh} is peripheral for this orientation"
        )));
    }
    Ok(vec![a.arc.clone(), Arc::chord(at, bh), b.arc.clone()])
}

/// Unicorn path for the lexicographically least orientation pair that
/// gives an essential middle arc.
pub fn unicorn_path_auto(s: &Surface, a: &Arc, b: &Arc) -> Result<Vec<Arc>> {
    let (ca, cb) = match (a.as_chord(), b.as_chord()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::UnsupportedBackend("unicorn paths are only implemented for polygons")),
    };
    let mut last = None;
    for ha in [ca.lo(), ca.hi()] {
        for hb in [cb.lo(), cb.hi()] {
            let oa = OrientedArc::chord(ca.other_end(ha), ha);
            let ob = OrientedArc::chord(cb.other_end(hb), hb);
            match unicorn_path(s, &oa, &ob) {
                Ok(p) => return Ok(p),
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.unwrap())
}
