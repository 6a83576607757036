//! Combing arcs along an oriented arc, the induced assignment on a
//! multiarc, and path surgery into the star of an arc.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, Head, Multiarc, OrientedArc};
use crate::error::{Error, Result};
use crate::graph::MinCache;
use crate::paths::{bfs_in_stratum, Path};
use crate::polygon;
use crate::surface::{Model, Surface};
use crate::universe::ArcUniverse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombResult {
    pub source: Arc,
    /// Essential arcs produced, sorted and without duplicates.
    pub images: Vec<Arc>,
    /// Every image lies in the context multiarc (empty context: no images).
    pub collapsed: bool,
}

/// Comb `b` along `x`. Arcs disjoint from `x` are returned unchanged.
pub fn comb(s: &Surface, b: &Arc, x: &OrientedArc) -> Result<CombResult> {
    comb_in(s, b, x, &Multiarc::default())
}

/// Comb `b` along `x` and decide collapse relative to `context`.
pub fn comb_in(s: &Surface, b: &Arc, x: &OrientedArc, context: &Multiarc) -> Result<CombResult> {
    s.validate_arc(b)?;
    s.validate_arc(&x.arc)?;
    if *b == x.arc {
        return Err(Error::Precondition("cannot comb an arc along itself".into()));
    }
    let images = if s.intersection_number(b, &x.arc)? == 0 {
        vec![b.clone()]
    } else {
        match &s.model {
            Model::Polygon { n } => {
                let (_, h) = s.oriented_endpoints(x)?;
                let c = b.as_chord().unwrap();
                let mut v: Vec<Arc> = [c.lo(), c.hi()]
                    .into_iter()
                    .filter(|&e| polygon::is_diagonal(*n, e, h))
                    .map(|e| Arc::chord(e, h))
                    .collect();
                v.sort();
                v.dedup();
                v
            }
            Model::Triangulated(m) => {
                let (Some(bn), Some(xn)) = (b.as_normal(), x.arc.as_normal()) else {
                    return Err(Error::InvalidArc("expected normal coordinates".into()));
                };
                let at_start = s.head_at_start(x)?;
                m.comb(bn, xn, at_start)?.into_iter().map(Arc::Normal).collect()
            }
        }
    };
    let collapsed = images.iter().all(|a| context.contains(a));
    Ok(CombResult { source: b.clone(), images, collapsed })
}

/// Union of the combed images of every arc of `alpha`.
pub fn comb_multiarc(s: &Surface, alpha: &Multiarc, x: &OrientedArc) -> Result<Multiarc> {
    let mut out = BTreeSet::new();
    for a in alpha {
        if *a == x.arc {
            out.insert(a.clone());
            continue;
        }
        out.extend(comb(s, a, x)?.images);
    }
    Ok(Multiarc::from_arcs_unchecked(out.into_iter().collect()))
}

/// The arc of `alpha` crossing `x` whose images all lie in `alpha`.
/// More than one such arc is reported as a falsified claim.
pub fn detect_collapse(s: &Surface, alpha: &Multiarc, x: &OrientedArc) -> Result<Option<Arc>> {
    let mut found = Vec::new();
    for a in alpha {
        if *a == x.arc || s.intersection_number(a, &x.arc)? == 0 {
            continue;
        }
        if comb_in(s, a, x, alpha)?.collapsed {
            found.push(a.clone());
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        _ => Err(Error::Falsified(format!("{} arcs collapse along {}", found.len(), x.arc))),
    }
}

/// Injective map from a multiarc into its combed image plus `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub pairs: Vec<(Arc, Arc)>,
}

impl Assignment {
    pub fn get(&self, a: &Arc) -> Option<&Arc> {
        self.pairs.iter().find(|(s, _)| s == a).map(|(_, t)| t)
    }

    pub fn image(&self) -> Multiarc {
        Multiarc::from_arcs_unchecked(self.pairs.iter().map(|(_, t)| t.clone()).collect())
    }
}

/// Bipartite matching by augmenting paths. `owner[r]` is the left vertex
/// matched to right vertex `r`.
struct Matcher<'a> {
    cands: &'a [Vec<usize>],
    owner: Vec<Option<usize>>,
}

impl Matcher<'_> {
    fn augment(&mut self, l: usize, seen: &mut [bool]) -> bool {
        for &r in &self.cands[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if self.owner[r].is_none_or(|o| self.augment(o, seen)) {
                self.owner[r] = Some(l);
                return true;
            }
        }
        false
    }

    fn insert(&mut self, l: usize) -> bool {
        let mut seen = vec![false; self.owner.len()];
        self.augment(l, &mut seen)
    }

    fn left_to_right(&self, left: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; left];
        for (r, o) in self.owner.iter().enumerate() {
            if let Some(l) = o {
                out[*l] = Some(r);
            }
        }
        out
    }
}

/// Complete `alpha` to a triangulation, comb it along `x`, send the
/// collapsing arc to `x` and match the rest injectively into their images.
/// Arcs of `alpha` are matched first, each preferring its least image.
pub fn assignment(s: &Surface, alpha: &Multiarc, x: &OrientedArc) -> Result<Assignment> {
    let t = s.complete_to_triangulation(alpha)?;
    let tri = t.arcs().clone();
    let collapsing = detect_collapse(s, &tri, x)?;
    let order: Vec<Arc> = alpha.iter().chain(tri.iter().filter(|a| !alpha.contains(a))).cloned().collect();
    let mut right: Vec<Arc> = Vec::new();
    let mut cands = Vec::with_capacity(order.len());
    for a in &order {
        let imgs = if Some(a) == collapsing.as_ref() {
            vec![x.arc.clone()]
        } else if *a == x.arc {
            vec![a.clone()]
        } else {
            comb(s, a, x)?.images
        };
        let mut c = Vec::new();
        for i in imgs {
            let r = right.iter().position(|r| *r == i).unwrap_or_else(|| {
                right.push(i.clone());
                right.len() - 1
            });
            c.push(r);
        }
        cands.push(c);
    }
    let mut m = Matcher { cands: &cands, owner: vec![None; right.len()] };
    for l in 0..order.len() {
        if !m.insert(l) {
            return Err(Error::Falsified(format!(
                "no injective assignment of {} along {}",
                tri, x.arc
            )));
        }
    }
    let l2r = m.left_to_right(order.len());
    let mut pairs: Vec<(Arc, Arc)> = order
        .iter()
        .zip(l2r)
        .filter(|(a, _)| alpha.contains(a))
        .map(|(a, r)| (a.clone(), right[r.unwrap()].clone()))
        .collect();
    pairs.sort();
    Ok(Assignment { pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryOutcome {
    pub path: Path,
    /// Runs of vertices disjoint from `x` that were short-cut.
    pub shortcut_steps: usize,
    /// Runs replaced by their combed images.
    pub combed_segments: usize,
    /// Runs replaced by a search inside the stratum of `x`.
    pub fallback_segments: usize,
}

fn orientations(s: &Surface, x: &Arc) -> Result<Vec<OrientedArc>> {
    Ok(match x {
        Arc::Chord(c) => vec![
            OrientedArc { arc: x.clone(), head: Head::Vertex(c.hi()) },
            OrientedArc { arc: x.clone(), head: Head::Vertex(c.lo()) },
        ],
        Arc::Normal(_) => {
            s.validate_arc(x)?;
            vec![
                OrientedArc { arc: x.clone(), head: Head::Terminal(0) },
                OrientedArc { arc: x.clone(), head: Head::Terminal(1) },
            ]
        }
    })
}

fn dedup_path(p: &mut Vec<Multiarc>) {
    p.dedup();
}

/// Combed replacement of the run `p[j..=m]`, swept backwards from `m` so
/// that consecutive vertices keep the images of their shared arcs.
fn comb_run(s: &Surface, p: &[Multiarc], j: usize, m: usize, x: &OrientedArc) -> Result<Vec<Multiarc>> {
    let mut images: BTreeMap<Arc, Vec<Arc>> = BTreeMap::new();
    for v in &p[j..=m] {
        for a in v {
            if !images.contains_key(a) {
                let mut c = if *a == x.arc { vec![a.clone()] } else { comb(s, a, x)?.images };
                c.push(x.arc.clone());
                images.insert(a.clone(), c);
            }
        }
    }
    let mut maps: Vec<BTreeMap<Arc, Arc>> = vec![BTreeMap::new(); m - j + 1];
    maps[m - j] = assignment(s, &p[m], x)?.pairs.into_iter().collect();
    for t in (j..m).rev() {
        let left: Vec<Arc> = p[t].iter().cloned().collect();
        let mut right: Vec<Arc> = Vec::new();
        let mut cands = Vec::new();
        for a in &left {
            let mut c = Vec::new();
            for i in &images[a] {
                let r = right.iter().position(|r| r == i).unwrap_or_else(|| {
                    right.push(i.clone());
                    right.len() - 1
                });
                c.push(r);
            }
            cands.push(c);
        }
        let mut mt = Matcher { cands: &cands, owner: vec![None; right.len()] };
        let next = &maps[t + 1 - j];
        let mut fresh = Vec::new();
        for (l, a) in left.iter().enumerate() {
            match next.get(a).and_then(|img| right.iter().position(|r| r == img)) {
                Some(r) if mt.owner[r].is_none() => mt.owner[r] = Some(l),
                _ => fresh.push(l),
            }
        }
        for l in fresh {
            if !mt.insert(l) {
                return Err(Error::Falsified(format!("no injective assignment of {}", p[t])));
            }
        }
        maps[t - j] = left
            .iter()
            .zip(mt.left_to_right(left.len()))
            .map(|(a, r)| (a.clone(), right[r.unwrap()].clone()))
            .collect();
    }
    Ok(maps
        .into_iter()
        .map(|mp| Multiarc::from_arcs_unchecked(mp.into_values().collect()))
        .collect())
}

fn splice_valid(s: &Surface, p: &[Multiarc], j: usize, m: usize, run: &[Multiarc]) -> Result<Option<Vec<Multiarc>>> {
    let mut seg: Vec<Multiarc> = vec![p[j - 1].clone()];
    seg.extend(run.iter().cloned());
    seg.push(p[m + 1].clone());
    dedup_path(&mut seg);
    for v in &seg {
        if v.len() != p[0].len() || s.multiarc(v.arcs().to_vec()).is_err() {
            return Ok(None);
        }
    }
    for w in seg.windows(2) {
        if !s.adjacent(&w[0], &w[1])? {
            return Ok(None);
        }
    }
    let mut out = p[..j - 1].to_vec();
    out.extend(seg);
    out.extend(p[m + 2..].iter().cloned());
    dedup_path(&mut out);
    Ok(Some(out))
}

/// Turn a path whose ends contain `x` into a path inside the star of `x`
/// that is no longer. The universe is only needed when combing fails and a
/// run has to be replaced by a search inside the stratum; polygons build
/// their own.
pub fn surgery(s: &Surface, path: &Path, x: &Arc, universe: Option<&ArcUniverse>) -> Result<SurgeryOutcome> {
    path.validate(s)?;
    let (Some(first), Some(last)) = (path.first(), path.last()) else {
        return Err(Error::Precondition("empty path".into()));
    };
    if !first.contains(x) || !last.contains(x) {
        return Err(Error::Precondition(format!("path ends must contain {x}")));
    }
    let xs = orientations(s, x)?;
    let mut p = path.vertices.clone();
    dedup_path(&mut p);
    let mut out = SurgeryOutcome { path: Path::new(Vec::new()), shortcut_steps: 0, combed_segments: 0, fallback_segments: 0 };
    let mut own_universe = None;
    while let Some(j) = p.iter().position(|v| !v.contains(x)) {
        let mut m = j;
        while !p[m + 1].contains(x) {
            m += 1;
        }
        let mut disjoint = true;
        for v in &p[j..=m] {
            for a in v {
                if s.intersection_number(a, x)? > 0 {
                    disjoint = false;
                }
            }
        }
        if disjoint {
            let b = p[m].difference(&p[m + 1]);
            let b = b.iter().next().ok_or_else(|| Error::Internal("repeated vertex in path".into()))?.clone();
            let mut start = m;
            while start > j && p[start - 1].contains(&b) {
                start -= 1;
            }
            let run: Vec<Multiarc> = p[start..=m].iter().map(|v| v.exchange(&b, x.clone())).collect();
            if let Some(q) = splice_valid(s, &p, start, m, &run)? {
                p = q;
                out.shortcut_steps += 1;
                continue;
            }
        } else {
            let mut done = false;
            for xo in &xs {
                let run = match comb_run(s, &p, j, m, xo) {
                    Ok(r) => r,
                    Err(Error::Falsified(_)) => continue,
                    Err(e) => return Err(e),
                };
                if run.iter().all(|v| v.iter().all(|a| *a == *x || s.intersection_number(a, x).is_ok_and(|i| i == 0))) {
                    if let Some(q) = splice_valid(s, &p, j, m, &run)? {
                        p = q;
                        out.combed_segments += 1;
                        done = true;
                        break;
                    }
                }
            }
            if done {
                continue;
            }
        }
        let u = match (universe, &s.model) {
            (Some(u), _) => u,
            (None, Model::Polygon { .. }) => own_universe.get_or_insert(ArcUniverse::new(s, 0)?),
            (None, _) => {
                return Err(Error::Precondition("surgery needs an arc universe on this surface".into()));
            }
        };
        let idx = |v: &Multiarc| u.indices(v).ok_or_else(|| Error::NotInGraph(format!("{v} uses arcs outside the universe")));
        let xi = u.index_of(x).ok_or_else(|| Error::NotInGraph(format!("{x} is outside the universe")))?;
        let mut cache = MinCache::new(s, u);
        let found = bfs_in_stratum(u, &mut cache, &[xi], &idx(&p[j - 1])?, &idx(&p[m + 1])?)?;
        let mut q = p[..j - 1].to_vec();
        q.extend(found.iter().map(|v| u.multiarc(v)));
        q.extend(p[m + 2..].iter().cloned());
        dedup_path(&mut q);
        p = q;
        out.fallback_segments += 1;
    }
    let result = Path::new(p);
    result.validate(s)?;
    if result.len() > path.len() {
        return Err(Error::Falsified(format!(
            "surgery lengthened the path from {} to {}",
            path.len(),
            result.len()
        )));
    }
    out.path = result;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphMode, MultiarcGraph};
    use crate::surface::SurfaceSpec;

    fn ch(i: u32, j: u32) -> Arc {
        Arc::chord(i, j)
    }

    #[test]
    fn pentagon_and_hexagon_combing() {
        let p5 = Surface::polygon(5).unwrap();
        let r = comb(&p5, &ch(1, 4), &OrientedArc::chord(0, 2)).unwrap();
        assert_eq!(r.images, vec![ch(2, 4)]);
        let p6 = Surface::polygon(6).unwrap();
        let r = comb(&p6, &ch(2, 5), &OrientedArc::chord(0, 3)).unwrap();
        assert_eq!(r.images, vec![ch(3, 5)]);
        let r = comb(&p6, &ch(1, 4), &OrientedArc::chord(0, 3)).unwrap();
        assert_eq!(r.images, vec![ch(1, 3)]);
        let r = comb(&p6, &ch(1, 3), &OrientedArc::chord(0, 2)).unwrap();
        assert!(r.images.is_empty() && r.collapsed);
    }

    #[test]
    fn collapse_in_a_hexagon_triangulation() {
        let p6 = Surface::polygon(6).unwrap();
        let x = OrientedArc::chord(1, 4);
        let t = Multiarc::chords(&[(0, 2), (0, 3), (0, 4)]);
        assert_eq!(detect_collapse(&p6, &t, &x).unwrap(), Some(ch(0, 3)));
        let a = assignment(&p6, &Multiarc::chords(&[(0, 2)]), &x).unwrap();
        assert_eq!(a.pairs, vec![(ch(0, 2), ch(2, 4))]);
        let a = assignment(&p6, &t, &x).unwrap();
        assert_eq!(a.get(&ch(0, 3)), Some(&ch(1, 4)));
        assert_eq!(a.image().len(), 3);
    }

    #[test]
    fn surgery_shortens_disjoint_runs() {
        let p6 = Surface::polygon(6).unwrap();
        let x = ch(0, 2);
        let path = Path::new(vec![
            Multiarc::chords(&[(0, 2), (3, 5)]),
            Multiarc::chords(&[(0, 3), (3, 5)]),
            Multiarc::chords(&[(0, 2), (3, 5)]),
        ]);
        let o = surgery(&p6, &path, &x, None).unwrap();
        assert_eq!(o.path.len(), 0);
    }

    fn geodesic(g: &MultiarcGraph, a: usize, b: usize) -> Vec<usize> {
        let d = g.bfs(b);
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *g.neighbors(cur).iter().find(|&&n| d[n] + 1 == d[cur]).unwrap();
            out.push(cur);
        }
        out
    }

    #[test]
    fn surgery_on_detours() {
        let mut fallbacks = 0;
        for (n, k, x) in [(6, 2, ch(0, 2)), (6, 2, ch(0, 3)), (6, 3, ch(1, 4)), (7, 2, ch(0, 3)), (7, 4, ch(2, 5)), (7, 3, ch(1, 4))] {
            let s = Surface::polygon(n).unwrap();
            let g = MultiarcGraph::build(&s, k, GraphMode::Complete).unwrap();
            let star = g.stratum_indices(&Multiarc::from_arcs_unchecked(vec![x.clone()]));
            for (i, &u) in star.iter().enumerate().step_by(3) {
                let v = star[(i * 7 + 1) % star.len()];
                for w in (0..g.len()).step_by(5) {
                    let mut idx = geodesic(&g, u, w);
                    idx.extend(geodesic(&g, w, v).into_iter().skip(1));
                    let path = Path::from_indices(&g, &idx);
                    let o = surgery(&s, &path, &x, None).unwrap();
                    assert!(o.path.len() <= path.len());
                    assert!(o.path.vertices.iter().all(|m| m.contains(&x)));
                    assert_eq!(o.path.first(), path.first());
                    assert_eq!(o.path.last(), path.last());
                    if k < s.complexity() {
                        assert_eq!(o.fallback_segments, 0);
                    } else {
                        fallbacks += o.fallback_segments;
                    }
                }
            }
        }
        std::println!("fallbacks at k = omega: {fallbacks}");
    }

    #[test]
    fn surgery_on_flip_paths() {
        let p6 = Surface::polygon(6).unwrap();
        let x = ch(0, 3);
        let path = Path::new(vec![
            Multiarc::chords(&[(0, 2), (0, 3), (0, 4)]),
            Multiarc::chords(&[(0, 2), (0, 4), (2, 4)]),
            Multiarc::chords(&[(0, 4), (1, 4), (2, 4)]),
            Multiarc::chords(&[(0, 4), (1, 3), (1, 4)]),
            Multiarc::chords(&[(0, 3), (0, 4), (1, 3)]),
        ]);
        let o = surgery(&p6, &path, &x, None).unwrap();
        assert!(o.path.len() <= 4);
        assert!(o.path.vertices.iter().all(|v| v.contains(&x)));
    }

    fn chord_of(s: &Surface, a: &Arc) -> (u32, u32) {
        let (u, v) = s.endpoints(a).unwrap();
        (u.min(v), u.max(v))
    }

    #[test]
    fn normal_combing_matches_chords() {
        for n in 5..=7u32 {
            let poly = Surface::polygon(n).unwrap();
            let tri = Surface::triangulated(SurfaceSpec::polygon(n)).unwrap();
            let arcs = tri.enumerate_arcs(0).unwrap().arcs;
            let by_ends: BTreeMap<(u32, u32), Arc> = arcs.iter().map(|a| (chord_of(&tri, a), a.clone())).collect();
            for x in &arcs {
                let (u, v) = chord_of(&tri, x);
                for head in [u, v] {
                    let xn = OrientedArc { arc: x.clone(), head: Head::Vertex(head) };
                    let xc = OrientedArc::chord(u + v - head, head);
                    for b in &arcs {
                        if b == x {
                            continue;
                        }
                        let (bu, bv) = chord_of(&tri, b);
                        let got: Vec<(u32, u32)> =
                            comb(&tri, b, &xn).unwrap().images.iter().map(|a| chord_of(&tri, a)).collect();
                        let mut got = got;
                        got.sort();
                        let want: Vec<(u32, u32)> = comb(&poly, &ch(bu, bv), &xc)
                            .unwrap()
                            .images
                            .iter()
                            .map(|a| (a.as_chord().unwrap().lo(), a.as_chord().unwrap().hi()))
                            .collect();
                        assert_eq!(got, want, "n={n} b={bu}-{bv} x={u}-{v} head {head}");
                        for img in comb(&tri, b, &xn).unwrap().images {
                            assert_eq!(by_ends[&chord_of(&tri, &img)], img);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_combing_gives_disjoint_images() {
        for spec in [
            SurfaceSpec::new(0, vec![], 5).unwrap(),
            SurfaceSpec::new(1, vec![], 2).unwrap(),
            SurfaceSpec::new(0, vec![2], 2).unwrap(),
        ] {
            let s = Surface::triangulated(spec).unwrap();
            let arcs = s.enumerate_arcs(2).unwrap().arcs;
            let arcs = &arcs[..arcs.len().min(40)];
            for x in arcs {
                for h in 0..2u8 {
                    let xo = OrientedArc { arc: x.clone(), head: Head::Terminal(h) };
                    for b in arcs {
                        if b == x {
                            continue;
                        }
                        let r = comb(&s, b, &xo).unwrap();
                        for (i, a) in r.images.iter().enumerate() {
                            s.validate_arc(a).unwrap();
                            assert_eq!(s.intersection_number(a, x).unwrap(), 0, "{a} vs {x}");
                            for c in &r.images[i + 1..] {
                                assert!(s.disjoint(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
