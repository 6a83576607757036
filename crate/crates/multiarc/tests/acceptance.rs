//! Acceptance checks, one PASS/FAIL line each. Exact counts are compared
//! against small brute-force enumerators written here from scratch.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::process::Command;
use std::time::Instant;

use multiarc::experiments::{self, PairMode};
use multiarc_core::symmetry::automorphisms;
use multiarc_core::{GraphMode, Multiarc, MultiarcGraph, Surface, SurfaceSpec};

type Diag = (u32, u32);

fn diagonals(n: u32) -> Vec<Diag> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if !(i == 0 && j == n - 1) {
                out.push((i, j));
            }
        }
    }
    out
}

fn cross(a: Diag, b: Diag) -> bool {
    let inside = |x: u32| a.0 < x && x < a.1;
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shared && inside(b.0) != inside(b.1)
}

/// Triangulations of the polygon on `verts` (in cyclic order) by choosing
/// the apex over the edge `verts[0] verts[last]`.
fn triangulations(verts: &[u32]) -> Vec<BTreeSet<Diag>> {
    if verts.len() < 3 {
        return vec![BTreeSet::new()];
    }
    let (first, last) = (verts[0], verts[verts.len() - 1]);
    let mut out = Vec::new();
    for m in 1..verts.len() - 1 {
        let apex = verts[m];
        for l in triangulations(&verts[..=m]) {
            for r in triangulations(&verts[m..]) {
                let mut t: BTreeSet<Diag> = l.union(&r).copied().collect();
                if m > 1 {
                    t.insert((first.min(apex), first.max(apex)));
                }
                if m < verts.len() - 2 {
                    t.insert((apex.min(last), apex.max(last)));
                }
                out.push(t);
            }
        }
    }
    out
}

/// Brute-force `A^[k]`: every k-set of pairwise non-crossing diagonals,
/// joined when they share k-1 diagonals and the other two cross exactly
/// when k is the number of diagonals in a triangulation.
struct Brute {
    vertices: Vec<BTreeSet<Diag>>,
    adj: Vec<BTreeSet<usize>>,
}

fn brute(n: u32, k: usize) -> Brute {
    let d = diagonals(n);
    let omega = n as usize - 3;
    let mut vertices = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((c, next)) = stack.pop() {
        if c.len() == k {
            vertices.push(c.iter().map(|&i| d[i]).collect::<BTreeSet<_>>());
            continue;
        }
        for i in next..d.len() {
            if c.iter().all(|&j| !cross(d[i], d[j])) {
                let mut c2 = c.clone();
                c2.push(i);
                stack.push((c2, i + 1));
            }
        }
    }
    vertices.sort();
    let mut adj = vec![BTreeSet::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let a: Vec<&Diag> = vertices[i].difference(&vertices[j]).collect();
            let b: Vec<&Diag> = vertices[j].difference(&vertices[i]).collect();
            if a.len() == 1 && cross(*a[0], *b[0]) == (k == omega) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Brute { vertices, adj }
}

fn as_set(m: &Multiarc) -> BTreeSet<Diag> {
    m.iter()
        .map(|a| {
            let c = a.as_chord().unwrap();
            (c.lo(), c.hi())
        })
        .collect()
}

fn lib_graph(n: u32, k: usize) -> MultiarcGraph {
    MultiarcGraph::build(&Surface::polygon(n).unwrap(), k, GraphMode::Complete).unwrap()
}

fn same_graph(b: &Brute, g: &MultiarcGraph) -> Result<(), String> {
    let verts: Vec<BTreeSet<Diag>> = g.vertices().iter().map(as_set).collect();
    if verts != b.vertices {
        return Err(format!("vertex sets differ: {} vs {}", verts.len(), b.vertices.len()));
    }
    let edges: usize = b.adj.iter().map(|a| a.len()).sum::<usize>() / 2;
    if edges != g.num_edges() {
        return Err(format!("{} edges, brute force has {edges}", g.num_edges()));
    }
    for (i, j) in g.edges() {
        if !b.adj[i].contains(&j) {
            return Err(format!("extra edge {} -- {}", g.vertex(i), g.vertex(j)));
        }
    }
    Ok(())
}

fn catalan(m: u64) -> u64 {
    (0..m).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn criterion_1() -> Result<String, String> {
    let t = Instant::now();
    for n in 5..=8u32 {
        let g = lib_graph(n, n as usize - 3);
        let want: BTreeSet<BTreeSet<Diag>> = triangulations(&(0..n).collect::<Vec<_>>()).into_iter().collect();
        if want.len() as u64 != catalan(n as u64 - 2) {
            return Err(format!("oracle gives {} triangulations of the {n}-gon", want.len()));
        }
        let got: BTreeSet<BTreeSet<Diag>> = g.vertices().iter().map(as_set).collect();
        if got != want || g.len() != want.len() {
            return Err(format!("{n}-gon: {} vertices, expected {}", g.len(), want.len()));
        }
        if (0..g.len()).any(|v| g.degree(v) != n as usize - 3) {
            return Err(format!("{n}-gon flip graph is not regular"));
        }
        let mut seen = vec![false; g.len()];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = q.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        if seen.contains(&false) {
            return Err(format!("{n}-gon flip graph is disconnected"));
        }
    }
    Ok(format!("Catalan 5, 14, 42, 132; regular and connected in {:.2?}", t.elapsed()))
}

fn criterion_2() -> Result<String, String> {
    let (a1, a2) = (lib_graph(6, 1), lib_graph(6, 2));
    if (a1.len(), a1.num_edges(), a2.len()) != (9, 21, 21) {
        return Err(format!("hexagon: {} / {} / {}", a1.len(), a1.num_edges(), a2.len()));
    }
    let mut graphs = 0;
    for n in 4..=8u32 {
        for k in 1..=n as usize - 3 {
            same_graph(&brute(n, k), &lib_graph(n, k)).map_err(|e| format!("n={n} k={k}: {e}"))?;
            graphs += 1;
        }
    }
    Ok(format!("A^[1](hexagon) 9 vertices 21 edges, A^[2] 21 vertices; {graphs} graphs match brute force"))
}

fn criterion_3() -> Result<String, String> {
    let mut pairs = 0;
    let mut sampled = 0;
    for n in 5..=8u32 {
        for k in 1..=n as usize - 3 {
            let mode = if n == 8 { PairMode::Sampled { pairs: 10_000, seed: 0x5eed } } else { PairMode::Exhaustive };
            let v = experiments::convexity_sweep(&lib_graph(n, k), mode, 1_000_000).map_err(|e| e.to_string())?;
            if !v.holds {
                return Err(format!("{}: {:?}", v.instance, v.witnesses));
            }
            if v.stats["pairs_over_cap"] != 0 {
                return Err(format!("{}: capped pairs", v.instance));
            }
            let c = v.stats["pairs_checked"].as_u64().unwrap();
            pairs += c;
            if n == 8 {
                sampled += c;
            }
        }
    }
    Ok(format!("{pairs} pairs, none leaves its stratum ({sampled} at n=8, sampled where over 10^4)"))
}

fn criterion_4() -> Result<String, String> {
    let mut strict = 0;
    let mut instances = 0;
    for n in 5..=7u32 {
        for k in 1..=n as usize - 3 {
            let v = experiments::surgery_sweep(&lib_graph(n, k), 1000, 40 + n as u64 * 10 + k as u64)
                .map_err(|e| e.to_string())?;
            if !v.holds {
                return Err(format!("{}: {:?}", v.instance, v.witnesses));
            }
            strict += v.stats["strict_cases"].as_u64().unwrap();
            instances += 1;
        }
    }
    Ok(format!("{instances} instances x 1000 paths; {strict} strict shortenings"))
}

fn criterion_5() -> Result<String, String> {
    let mut cases = 0;
    for n in [6, 7] {
        let v = experiments::combing_sweep(n, 3).map_err(|e| e.to_string())?;
        if !v.holds {
            return Err(format!("{}: {:?}", v.instance, v.witnesses));
        }
        cases += v.stats["cases"].as_u64().unwrap();
    }
    Ok(format!("{cases} (alpha, x) cases"))
}

fn criterion_6() -> Result<String, String> {
    for n in [6, 7u32] {
        let v = experiments::tower(n, 2, 100_000).map_err(|e| e.to_string())?;
        if !v.holds {
            return Err(format!("{}: {:?}", v.instance, v.witnesses));
        }
        // theta is onto: every diagonal is the common arc of some edge.
        let b = brute(n, 2);
        let mut hit = BTreeSet::new();
        for (i, nb) in b.adj.iter().enumerate() {
            for &j in nb {
                hit.extend(b.vertices[i].intersection(&b.vertices[j]).copied());
            }
        }
        if hit.len() != diagonals(n).len() {
            return Err(format!("n={n}: theta misses {} diagonals", diagonals(n).len() - hit.len()));
        }
    }
    Ok("theta onto; phi well defined, equivariant, a homomorphism with trivial kernel".into())
}

/// Number of automorphisms of a small graph by plain backtracking.
fn count_automorphisms(adj: &[BTreeSet<usize>]) -> u64 {
    fn go(adj: &[BTreeSet<usize>], map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let v = map.len();
        if v == adj.len() {
            return 1;
        }
        let mut total = 0;
        for w in 0..adj.len() {
            if used[w] || adj[w].len() != adj[v].len() {
                continue;
            }
            if (0..v).all(|u| adj[v].contains(&u) == adj[w].contains(&map[u])) {
                used[w] = true;
                map.push(w);
                total += go(adj, map, used);
                map.pop();
                used[w] = false;
            }
        }
        total
    }
    go(adj, &mut Vec::new(), &mut vec![false; adj.len()])
}

fn criterion_7() -> Result<String, String> {
    for (n, want) in [(5u32, 10u64), (6, 12)] {
        let b = brute(n, n as usize - 3);
        let oracle = count_automorphisms(&b.adj);
        let lib = automorphisms(&lib_graph(n, n as usize - 3)).map_err(|e| e.to_string())?.order;
        if oracle != want || lib != want as u128 {
            return Err(format!("{n}-gon flip graph: oracle {oracle}, library {lib}, expected {want}"));
        }
    }
    let mut checked = 0;
    for n in 5..=8u32 {
        for k in 1..=n as usize - 3 {
            let b = brute(n, k);
            let index: BTreeMap<&BTreeSet<Diag>, usize> = b.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
            let mut perms = BTreeSet::new();
            for r in 0..n {
                for reflect in [false, true] {
                    let f = |x: u32| if reflect { (r + n - x) % n } else { (x + r) % n };
                    let perm: Vec<usize> = b
                        .vertices
                        .iter()
                        .map(|v| index[&v.iter().map(|&(i, j)| (f(i).min(f(j)), f(i).max(f(j)))).collect::<BTreeSet<_>>()])
                        .collect();
                    for (i, nb) in b.adj.iter().enumerate() {
                        if nb.iter().any(|&j| !b.adj[perm[i]].contains(&perm[j])) {
                            return Err(format!("n={n} k={k}: dihedral element is not an automorphism"));
                        }
                    }
                    perms.insert(perm);
                }
            }
            if perms.len() != 2 * n as usize {
                return Err(format!("n={n} k={k}: dihedral group does not inject"));
            }
            let v = experiments::aut_report(&lib_graph(n, k), false).map_err(|e| e.to_string())?;
            if !v.holds {
                return Err(format!("{}: {:?}", v.instance, v.witnesses));
            }
            checked += 1;
        }
    }
    Ok(format!("orders 10 and 12; dihedral injection on {checked} graphs"))
}

fn criterion_8() -> Result<String, String> {
    let mut triples = 0;
    for (n, k) in [(6u32, 2usize), (7, 2), (8, 3)] {
        let v = experiments::permute_sweep(&lib_graph(n, k)).map_err(|e| e.to_string())?;
        if !v.holds {
            return Err(format!("{}: {:?}", v.instance, v.witnesses));
        }
        // Recount from scratch on the brute-force graph.
        let b = brute(n, k);
        let mut count = 0;
        for a in 0..b.vertices.len() {
            for &c1 in b.adj[a].iter().filter(|&&c1| c1 > a) {
                for &c2 in b.adj[c1].iter().filter(|&&c2| c2 > c1 && b.adj[a].contains(&c2)) {
                    let union: BTreeSet<Diag> = [a, c1, c2].iter().flat_map(|&i| b.vertices[i].iter().copied()).collect();
                    let inter: BTreeSet<Diag> =
                        b.vertices[a].intersection(&b.vertices[c1]).filter(|d| b.vertices[c2].contains(d)).copied().collect();
                    if union.len() != k + 1 || inter.len() + 2 != k {
                        continue;
                    }
                    count += 1;
                    for &w in &b.adj[a] {
                        if w != c1 && w != c2 && b.adj[c1].contains(&w) && b.adj[c2].contains(&w) && !b.vertices[w].is_subset(&union) {
                            return Err(format!("n={n} k={k}: brute force finds a violator"));
                        }
                    }
                }
            }
        }
        if v.stats["triples"] != count {
            return Err(format!("n={n} k={k}: {} triples, brute force {count}", v.stats["triples"]));
        }
        triples += count;
    }
    Ok(format!("{triples} triples, every common neighbour permutes the same arcs"))
}

fn criterion_9() -> Result<String, String> {
    let v = experiments::embed_check(8).map_err(|e| e.to_string())?;
    if !v.holds {
        return Err(format!("{:?}", v.witnesses));
    }
    Ok(format!(
        "{} cases, {} full-stratum images convex; {}",
        v.stats["cases"],
        v.stats["full_stratum_images"],
        v.findings.join("; ")
    ))
}

fn criterion_10() -> Result<String, String> {
    let s = Surface::triangulated(SurfaceSpec::punctured_sphere(5)).map_err(|e| e.to_string())?;
    let v = experiments::counts(&s, 4, 10, 1_000_000).map_err(|e| e.to_string())?;
    if !v.holds {
        return Err(format!("{:?}", v.witnesses));
    }
    Ok(format!(
        "max {} <= 5 disjoint separating arcs; >= {} non-separating arcs next to {} separating-only multiarcs; B^[1](decagon) has {} component",
        v.stats["max_separating_observed"],
        v.stats["fewest_nonseparating_disjoint"],
        v.stats["separating_only_multiarcs"],
        v.stats["b_components"]
    ))
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_multiarc")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn criterion_11() -> Result<String, String> {
    let runs: [&[&str]; 5] = [
        &["build", "--polygon", "7", "--k", "2"],
        &["surgery", "--polygon", "7", "--k", "3", "--paths", "300", "--seed", "11"],
        &["convexity-sweep", "--polygon", "8", "--k", "3", "--pairs", "2000", "--seed", "3"],
        &["aut", "--polygon", "6", "--k", "2"],
        &["build", "--surface", "-", "--k", "1", "--radius", "2", "--arc-bound", "3"],
    ];
    let spec = std::env::temp_dir().join(format!("multiarc-acceptance-{}.json", std::process::id()));
    std::fs::write(&spec, r#"{"genus":1,"boundary_points":[],"interior_points":1}"#).map_err(|e| e.to_string())?;
    let spec_arg = spec.to_str().unwrap().to_string();
    for r in runs {
        let args: Vec<&str> = r.iter().map(|&a| if a == "-" { spec_arg.as_str() } else { a }).collect();
        let mut one = args.clone();
        one.extend(["--deterministic", "--threads", "1"]);
        let mut many = args.clone();
        many.extend(["--deterministic", "--threads", "4"]);
        let (a, b, c) = (run_bin(&one)?, run_bin(&many)?, run_bin(&one)?);
        if a != b || a != c {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    let _ = std::fs::remove_file(&spec);
    Ok(format!("{} commands byte-identical across runs and thread counts", runs.len()))
}

fn main() {
    type Check = fn() -> Result<String, String>;
    let criteria: [(&str, Check); 11] = [
        ("flip graph oracle", criterion_1),
        ("graph counts", criterion_2),
        ("strong convexity", criterion_3),
        ("surgery soundness", criterion_4),
        ("combing lemmas", criterion_5),
        ("automorphism tower", criterion_6),
        ("automorphism reports", criterion_7),
        ("permuting triples", criterion_8),
        ("embedding converse", criterion_9),
        ("separating counts", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:.1?}]", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
