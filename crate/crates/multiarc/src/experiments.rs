//! Finite-instance sweeps. Each returns a [`Verdict`]; `holds` covers only
//! the asserted properties, while `findings` records what was observed
//! without being asserted.

use std::collections::{BTreeMap, BTreeSet};

use multiarc_core::bcounts::{b_connectivity, max_disjoint_separating, nonsep_neighbors};
use multiarc_core::combing::{assignment, comb, detect_collapse, surgery};
use multiarc_core::embed::{
    check_permute, convexity_violation, enumerate_cut_embeddings, f_image_of_stratum, induced_map_in,
    is_simplicial_embedding, permuting_triples,
};
use multiarc_core::paths::all_geodesic_indices;
use multiarc_core::symmetry::{
    automorphisms, dihedral_group, is_automorphism, mapping_class_automorphism, theta_image, tower_check,
};
use multiarc_core::{Arc, Error, GraphMode, Multiarc, MultiarcGraph, OrientedArc, Path, Surface};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliResult;

/// Witness lists are truncated to this many entries; the counts are kept.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub instance: String,
    pub holds: bool,
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
}

impl Verdict {
    fn new(check: &str, instance: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            instance: instance.into(),
            holds: true,
            witnesses: Vec::new(),
            stats: BTreeMap::new(),
            findings: Vec::new(),
        }
    }

    fn fail(&mut self, w: impl Into<String>) {
        self.holds = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w.into());
        }
    }

    fn stat(&mut self, key: &str, v: impl Serialize) {
        self.stats.insert(key.into(), json!(v));
    }
}

pub fn polygon_graph(n: u32, k: usize) -> CliResult<MultiarcGraph> {
    Ok(MultiarcGraph::build(&Surface::polygon(n)?, k, GraphMode::Complete)?)
}

/// Complete graphs `A^[k](n-gon)` for every `k`, built in parallel.
pub fn polygon_graphs(ns: &[u32]) -> CliResult<BTreeMap<(u32, usize), MultiarcGraph>> {
    let keys: Vec<(u32, usize)> = ns.iter().flat_map(|&n| (1..=n as usize - 3).map(move |k| (n, k))).collect();
    keys.par_iter().map(|&(n, k)| Ok(((n, k), polygon_graph(n, k)?))).collect()
}

#[derive(Clone, Copy, Debug)]
pub enum PairMode {
    Exhaustive,
    /// At most this many distinct pairs, drawn with the seed.
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Default)]
struct PairTally {
    pairs: usize,
    geodesics: u64,
    capped: usize,
    bad: Vec<String>,
}

/// Every geodesic between two vertices stays among the vertices containing
/// their common arcs. Checked on the geodesic interval, which is exact, and
/// again on the enumerated geodesics when there are at most `cap` of them.
pub fn convexity_sweep(g: &MultiarcGraph, mode: PairMode, cap: usize) -> CliResult<Verdict> {
    let n = g.len();
    let mut v = Verdict::new("strong_convexity", format!("n={} k={}", g.surface().polygon_size().unwrap_or(0), g.k()));
    let dist = g.distance_table();
    let d = |a: usize, b: usize| dist[a * n + b];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.vertex(a).intersection(g.vertex(b)).is_empty() {
                pairs.push((a, b));
            }
        }
    }
    let total = pairs.len();
    let sampled = match mode {
        PairMode::Sampled { pairs: m, seed } if m < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = sample(&mut rng, total, m).into_vec();
            idx.sort_unstable();
            pairs = idx.into_iter().map(|i| pairs[i]).collect();
            true
        }
        _ => false,
    };
    let tallies: Vec<PairTally> = pairs
        .par_chunks(64)
        .map(|chunk| {
            let mut t = PairTally::default();
            for &(a, b) in chunk {
                t.pairs += 1;
                let nu = g.vertex(a).intersection(g.vertex(b));
                let dab = d(a, b);
                for w in 0..n {
                    if d(a, w).saturating_add(d(w, b)) == dab && !nu.is_subset(g.vertex(w)) {
                        t.bad.push(format!("{} .. {} .. {} leaves {}", g.vertex(a), g.vertex(w), g.vertex(b), nu));
                    }
                }
                match all_geodesic_indices(g, a, b, cap) {
                    Ok(geos) => {
                        t.geodesics += geos.len() as u64;
                        for p in geos {
                            if let Some(&w) = p.iter().find(|&&w| !nu.is_subset(g.vertex(w))) {
                                t.bad.push(format!("geodesic {} -> {} through {}", g.vertex(a), g.vertex(b), g.vertex(w)));
                            }
                        }
                    }
                    Err(Error::GeodesicOverflow { .. }) => t.capped += 1,
                    Err(e) => t.bad.push(e.to_string()),
                }
            }
            t
        })
        .collect();
    let (mut checked, mut geos, mut capped, mut violations) = (0, 0u64, 0, 0);
    for t in tallies {
        checked += t.pairs;
        geos += t.geodesics;
        capped += t.capped;
        violations += t.bad.len();
        for w in t.bad {
            v.fail(w);
        }
    }
    v.stat("vertices", n);
    v.stat("sharing_pairs", total);
    v.stat("pairs_checked", checked);
    v.stat("sampled", sampled);
    v.stat("geodesics_enumerated", geos);
    v.stat("pairs_over_cap", capped);
    v.stat("violations", violations);
    Ok(v)
}

/// A random walk from a vertex containing `x`, then a shortest path to a
/// random vertex of the stratum of `x`.
fn random_path(g: &MultiarcGraph, dist: &[u32], rng: &mut ChaCha8Rng) -> (Vec<usize>, Arc) {
    let n = g.len();
    let start = rng.gen_range(0..n);
    let arcs = g.vertex(start).arcs();
    let x = arcs[rng.gen_range(0..arcs.len())].clone();
    let mut p = vec![start];
    for _ in 0..rng.gen_range(1..=10) {
        let nb = g.neighbors(*p.last().unwrap());
        p.push(nb[rng.gen_range(0..nb.len())]);
    }
    let stratum = g.stratum_indices(&Multiarc::from_arcs_unchecked(vec![x.clone()]));
    let end = stratum[rng.gen_range(0..stratum.len())];
    let mut cur = *p.last().unwrap();
    while cur != end {
        let here = dist[cur * n + end];
        cur = *g.neighbors(cur).iter().find(|&&w| dist[w * n + end] + 1 == here).unwrap();
        p.push(cur);
    }
    (p, x)
}

/// Maximal runs outside the stratum of `x` whose arcs all miss `x`.
fn has_disjoint_run(s: &Surface, p: &Path, x: &Arc) -> CliResult<bool> {
    let mut run_ok: Option<bool> = None;
    for v in &p.vertices {
        if v.contains(x) {
            if run_ok == Some(true) {
                return Ok(true);
            }
            run_ok = None;
            continue;
        }
        let mut ok = true;
        for a in v {
            ok &= s.disjoint(a, x)?;
        }
        run_ok = Some(run_ok.unwrap_or(true) && ok);
    }
    Ok(false)
}

pub fn surgery_sweep(g: &MultiarcGraph, paths: usize, seed: u64) -> CliResult<Verdict> {
    let s = g.surface();
    let mut v = Verdict::new("surgery", format!("n={} k={} paths={paths} seed={seed}", s.polygon_size().unwrap_or(0), g.k()));
    let dist = g.distance_table();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(Vec<usize>, Arc)> = (0..paths).map(|_| random_path(g, &dist, &mut rng)).collect();
    // Per path: failures, left the stratum, strict case, fallbacks, edges saved.
    type PathResult = (Vec<String>, bool, bool, usize, usize);
    let results: Vec<CliResult<PathResult>> = jobs
        .par_iter()
        .map(|(idx, x)| {
            let path = Path::from_indices(g, idx);
            let mut bad = Vec::new();
            let left = path.vertices.iter().any(|w| !w.contains(x));
            let strict = left && has_disjoint_run(s, &path, x)?;
            let out = match surgery(s, &path, x, None) {
                Ok(o) => o,
                Err(e) => return Ok((vec![format!("{e} on a path of length {}", path.len())], left, strict, 0, 0)),
            };
            let q = &out.path;
            if let Err(e) = q.validate(s) {
                bad.push(format!("invalid output: {e}"));
            }
            if q.first() != path.first() || q.last() != path.last() {
                bad.push("endpoints changed".into());
            }
            if !q.vertices.iter().all(|w| w.contains(x)) {
                bad.push(format!("output leaves the stratum of {x}"));
            }
            if q.len() > path.len() || (strict && q.len() >= path.len()) {
                bad.push(format!("length {} -> {} (strict: {strict})", path.len(), q.len()));
            }
            let describe = |b: &String| format!("{b}; x={x}; path {}", path.vertices.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" -> "));
            Ok((bad.iter().map(describe).collect(), left, strict, out.fallback_segments, path.len() - q.len()))
        })
        .collect();
    let (mut left, mut strict, mut fallbacks, mut saved) = (0, 0, 0, 0);
    for r in results {
        let (bad, l, st, f, sv) = r?;
        left += l as usize;
        strict += st as usize;
        fallbacks += f;
        saved += sv;
        for b in bad {
            v.fail(b);
        }
    }
    v.stat("paths", paths);
    v.stat("left_stratum", left);
    v.stat("strict_cases", strict);
    v.stat("fallback_segments", fallbacks);
    v.stat("edges_saved", saved);
    Ok(v)
}

/// Collapse uniqueness and the injective assignment, over every vertex of
/// `A^[k]` for `k <= kmax` and every oriented diagonal.
pub fn combing_sweep(n: u32, kmax: usize) -> CliResult<Verdict> {
    let s = Surface::polygon(n)?;
    let mut v = Verdict::new("combing", format!("n={n} k<={kmax}"));
    let diags = multiarc_core::polygon::diagonals(n);
    let mut cases = 0;
    let mut collapses = 0;
    for k in 1..=kmax.min(n as usize - 3) {
        let g = polygon_graph(n, k)?;
        let res: Vec<(usize, Vec<String>)> = g
            .vertices()
            .par_iter()
            .map(|alpha| {
                let mut bad = Vec::new();
                let mut hit = 0;
                for c in &diags {
                    for x in [OrientedArc::chord(c.lo(), c.hi()), OrientedArc::chord(c.hi(), c.lo())] {
                        let tag = format!("alpha={alpha} x={}->{}", x.tail_vertex().unwrap(), x.head_vertex().unwrap());
                        match detect_collapse(&s, alpha, &x) {
                            Ok(Some(_)) => hit += 1,
                            Ok(None) => {}
                            Err(e) => bad.push(format!("{tag}: {e}")),
                        }
                        let asg = match assignment(&s, alpha, &x) {
                            Ok(a) => a,
                            Err(e) => {
                                bad.push(format!("{tag}: {e}"));
                                continue;
                            }
                        };
                        let targets: BTreeSet<&Arc> = asg.pairs.iter().map(|(_, t)| t).collect();
                        if asg.pairs.len() != alpha.len() || targets.len() != alpha.len() {
                            bad.push(format!("{tag}: assignment is not injective on alpha"));
                        }
                        for (a, t) in &asg.pairs {
                            let ok = *t == x.arc
                                || *a == x.arc && t == a
                                || (*a != x.arc && comb(&s, a, &x).map(|r| r.images.contains(t)).unwrap_or(false));
                            if !ok {
                                bad.push(format!("{tag}: {a} -> {t} is outside its comb image"));
                            }
                        }
                    }
                }
                (hit, bad)
            })
            .collect();
        cases += g.len() * diags.len() * 2;
        for (h, bad) in res {
            collapses += h;
            for b in bad {
                v.fail(b);
            }
        }
    }
    v.stat("cases", cases);
    v.stat("collapses", collapses);
    Ok(v)
}

pub fn tower(n: u32, k: usize, group_limit: usize) -> CliResult<Verdict> {
    let s = Surface::polygon(n)?;
    let mut v = Verdict::new("tower", format!("n={n} k={k}"));
    let upper = polygon_graph(n, k)?;
    let lower = polygon_graph(n, k - 1)?;
    let image = theta_image(&upper);
    let surjective = image.iter().eq(lower.vertices().iter());
    if !surjective {
        v.fail(format!("theta hits {} of {} vertices", image.len(), lower.len()));
    }
    match tower_check(&s, k, group_limit) {
        Ok(r) => {
            for (ok, what) in [
                (r.faithful, "dihedral action is not faithful"),
                (r.commutes, "phi does not commute with the dihedral action"),
                (r.homomorphism, "phi is not a homomorphism"),
                (r.kernel_trivial, "phi has a non-trivial kernel"),
            ] {
                if !ok {
                    v.fail(what);
                }
            }
            v.stat("mapping_classes", r.mapping_classes);
            v.stat("group_order", r.group_order.to_string());
        }
        Err(e @ Error::Falsified(_)) => v.fail(e.to_string()),
        Err(e) => return Err(e.into()),
    }
    v.stat("theta_surjective", surjective);
    Ok(v)
}

/// Cycle notation, `()` for the identity.
pub fn cycle_notation(cycles: &[Vec<usize>]) -> String {
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect()
}

/// Full automorphism group, reported, and the dihedral injection, asserted.
pub fn aut_report(g: &MultiarcGraph, full_group: bool) -> CliResult<Verdict> {
    let s = g.surface();
    let n = s.polygon_size().unwrap_or(0);
    let mut v = Verdict::new("automorphisms", format!("n={n} k={}", g.k()));
    let d = dihedral_group(s)?;
    let mut seen = BTreeSet::new();
    for m in &d {
        let a = mapping_class_automorphism(g, m)?;
        if !is_automorphism(g, &a) {
            v.fail(format!("{m:?} does not act by automorphisms"));
        }
        seen.insert(a);
    }
    if seen.len() != d.len() {
        v.fail(format!("{} dihedral elements give {} automorphisms", d.len(), seen.len()));
    }
    v.stat("dihedral_order", d.len());
    v.stat("dihedral_injects", seen.len() == d.len());
    if full_group {
        let grp = automorphisms(g)?;
        v.stat("order", grp.order.to_string());
        v.stat("generators", grp.generators.iter().map(|a| cycle_notation(&a.cycles())).collect::<Vec<_>>());
        v.stat("search_nodes", grp.nodes);
        let equal = grp.order == d.len() as u128;
        v.findings.push(if equal {
            format!("Aut has order {}, equal to the dihedral group", grp.order)
        } else {
            format!("Aut has order {}, larger than the dihedral group of order {}", grp.order, d.len())
        });
    }
    Ok(v)
}

pub fn permute_sweep(g: &MultiarcGraph) -> CliResult<Verdict> {
    let mut v = Verdict::new("permute", format!("n={} k={}", g.surface().polygon_size().unwrap_or(0), g.k()));
    let triples = permuting_triples(g);
    let res: Vec<CliResult<(usize, Vec<String>)>> = triples
        .par_iter()
        .map(|&t| {
            let r = check_permute(g, t)?;
            let bad = r.violators.iter().map(|&w| format!("{:?}: {} uses an outside arc", t, g.vertex(w))).collect();
            Ok((r.common_neighbors.len(), bad))
        })
        .collect();
    let mut common = 0;
    for r in res {
        let (c, bad) = r?;
        common += c;
        for b in bad {
            v.fail(b);
        }
    }
    v.stat("triples", triples.len());
    v.stat("common_neighbors", common);
    Ok(v)
}

/// Sub-polygon embeddings into every `n`-gon with `5 <= n <= n_max`.
///
/// Asserted: the induced map is a simplicial embedding below the top
/// level of the source, its image is the f-image of the stratum, and that
/// image is strongly convex when it is the whole stratum. At the top level
/// of the source, and for convexity of smaller images, the outcome is
/// reported only.
pub fn embed_check(n_max: u32) -> CliResult<Verdict> {
    let mut v = Verdict::new("embedding", format!("n<={n_max}"));
    let ns: Vec<u32> = (4..=n_max).collect();
    let graphs = polygon_graphs(&ns)?;
    let mut jobs = Vec::new();
    for n in 5..=n_max {
        for e in enumerate_cut_embeddings(&Surface::polygon(n)?, n as usize - 4)? {
            for k1 in 1..=e.source_n as usize - 3 {
                if e.target_k(k1) <= n as usize - 3 {
                    jobs.push((e.clone(), k1));
                }
            }
        }
    }
    #[derive(Default)]
    struct Tally {
        flip_cases: usize,
        flip_simplicial: usize,
        full: usize,
        partial: usize,
        partial_convex: usize,
        bad: Vec<String>,
    }
    let tallies: Vec<CliResult<Tally>> = jobs
        .par_iter()
        .map(|(e, k1)| {
            let mut t = Tally::default();
            let src = &graphs[&(e.source_n, *k1)];
            let dst = &graphs[&(e.target_n, e.target_k(*k1))];
            let tag = format!("{}-gon at {:?} in {}-gon, nu={}, k={k1}", e.source_n, e.vertices, e.target_n, e.nu);
            let m = induced_map_in(e, src, dst)?;
            let simplicial = is_simplicial_embedding(src, dst, &m);
            if *k1 == e.source_n as usize - 3 {
                t.flip_cases += 1;
                t.flip_simplicial += simplicial as usize;
            } else if !simplicial {
                t.bad.push(format!("{tag}: not a simplicial embedding"));
            }
            let mut image = m.images.clone();
            image.sort_unstable();
            if image != f_image_of_stratum(e, dst) {
                t.bad.push(format!("{tag}: image differs from the f-image of the stratum"));
            }
            let convex = convexity_violation(dst, &image).is_none();
            if image.len() == dst.stratum_indices(&e.nu).len() {
                t.full += 1;
                if !convex {
                    t.bad.push(format!("{tag}: full stratum image is not convex"));
                }
            } else {
                t.partial += 1;
                t.partial_convex += convex as usize;
            }
            Ok(t)
        })
        .collect();
    let mut sum = Tally::default();
    for t in tallies {
        let t = t?;
        sum.flip_cases += t.flip_cases;
        sum.flip_simplicial += t.flip_simplicial;
        sum.full += t.full;
        sum.partial += t.partial;
        sum.partial_convex += t.partial_convex;
        for b in t.bad {
            v.fail(b);
        }
    }
    v.stat("cases", jobs.len());
    v.stat("full_stratum_images", sum.full);
    v.stat("partial_images", sum.partial);
    v.stat("partial_images_convex", sum.partial_convex);
    v.stat("top_level_cases", sum.flip_cases);
    v.stat("top_level_simplicial", sum.flip_simplicial);
    v.findings.push(format!(
        "at the top level of the source {} of {} induced maps are simplicial",
        sum.flip_simplicial, sum.flip_cases
    ));
    v.findings.push(format!("{} of {} images smaller than their stratum are strongly convex", sum.partial_convex, sum.partial));
    Ok(v)
}

/// Pairwise disjoint families of separating arcs, all sizes.
fn separating_families(s: &Surface, arc_bound: u32, limit: usize) -> CliResult<Vec<Multiarc>> {
    let mut sep = Vec::new();
    for a in s.enumerate_arcs(arc_bound)?.arcs {
        if s.is_separating(&a)? && !s.is_ear(&a)? {
            sep.push(a);
        }
    }
    let mut disjoint = vec![vec![false; sep.len()]; sep.len()];
    for i in 0..sep.len() {
        for j in i + 1..sep.len() {
            let d = s.disjoint(&sep[i], &sep[j])?;
            disjoint[i][j] = d;
            disjoint[j][i] = d;
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chosen, next)) = stack.pop() {
        if !chosen.is_empty() {
            out.push(Multiarc::from_arcs_unchecked(chosen.iter().map(|&i| sep[i].clone()).collect()));
            if out.len() > limit {
                return Err(Error::SizeGuard { what: "separating families", limit }.into());
            }
        }
        for i in next..sep.len() {
            if chosen.iter().all(|&j| disjoint[i][j]) {
                let mut c = chosen.clone();
                c.push(i);
                stack.push((c, i + 1));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Separating arcs on a punctured sphere `s`, and connectivity of
/// `B^[1]` of the `b_polygon`-gon.
pub fn counts(s: &Surface, arc_bound: u32, b_polygon: u32, limit: usize) -> CliResult<Verdict> {
    let p = s.spec().interior_points;
    let mut v = Verdict::new("separating_counts", format!("S_0,{p} weight<={arc_bound}; B^[1]({b_polygon}-gon)"));
    let r = max_disjoint_separating(s, arc_bound)?;
    if !r.within_bound {
        v.fail(format!("{} disjoint separating arcs: {}", r.observed, r.witness));
    }
    if let Some(w) = &r.warning {
        v.findings.push(w.clone());
    }
    v.stat("max_separating_observed", r.observed);
    v.stat("max_separating_bound", r.bound);
    v.stat("max_separating_witness", r.witness.to_string());
    let fams = separating_families(s, arc_bound, limit)?;
    let res: Vec<CliResult<(usize, usize, Option<String>)>> = fams
        .par_iter()
        .map(|mu| {
            let n = nonsep_neighbors(s, mu, arc_bound)?;
            let bad = (n.nonseparating_disjoint < n.required)
                .then(|| format!("{mu}: {} non-separating disjoint arcs, need {}", n.nonseparating_disjoint, n.required));
            Ok((n.nonseparating_disjoint, n.b_neighbors.len(), bad))
        })
        .collect();
    let (mut least, mut least_b) = (usize::MAX, usize::MAX);
    for r in res {
        let (c, b, bad) = r?;
        least = least.min(c);
        least_b = least_b.min(b);
        if let Some(b) = bad {
            v.fail(b);
        }
    }
    v.stat("separating_only_multiarcs", fams.len());
    v.stat("fewest_nonseparating_disjoint", least);
    v.stat("fewest_b_neighbors", least_b);
    let b = b_connectivity(&Surface::polygon(b_polygon)?, GraphMode::Complete)?;
    if b.components != 1 {
        v.fail(format!("B^[1]({b_polygon}-gon) has {} components", b.components));
    }
    v.stat("b_vertices", b.vertices);
    v.stat("b_components", b.components);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_hold() {
        let g = polygon_graph(6, 2).unwrap();
        assert!(convexity_sweep(&g, PairMode::Exhaustive, 1000).unwrap().holds);
        assert!(surgery_sweep(&g, 50, 7).unwrap().holds);
        assert!(permute_sweep(&g).unwrap().holds);
        assert!(combing_sweep(6, 2).unwrap().holds);
    }

    #[test]
    fn sampling_is_seeded() {
        let g = polygon_graph(7, 3).unwrap();
        let a = convexity_sweep(&g, PairMode::Sampled { pairs: 100, seed: 3 }, 1000).unwrap();
        let b = convexity_sweep(&g, PairMode::Sampled { pairs: 100, seed: 3 }, 1000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stats["pairs_checked"], json!(100));
    }

    #[test]
    fn cycles_print() {
        assert_eq!(cycle_notation(&[vec![0, 1, 2], vec![3, 4]]), "(0 1 2)(3 4)");
        assert_eq!(cycle_notation(&[]), "()");
    }
}
