use std::collections::BTreeMap;
use std::sync::OnceLock;

use multiarc_core::combing::{comb, surgery};
use multiarc_core::graph::GraphMode;
use multiarc_core::polygon::Dihedral;
use multiarc_core::symmetry::{act, act_arc, theta, MappingClass};
use multiarc_core::*;
use proptest::prelude::*;

fn graphs() -> &'static BTreeMap<(u32, usize), MultiarcGraph> {
    static G: OnceLock<BTreeMap<(u32, usize), MultiarcGraph>> = OnceLock::new();
    G.get_or_init(|| {
        let mut m = BTreeMap::new();
        for n in 5..=7u32 {
            let s = Surface::polygon(n).unwrap();
            for k in 1..=(n as usize - 3) {
                m.insert((n, k), MultiarcGraph::build(&s, k, GraphMode::Complete).unwrap());
            }
        }
        m
    })
}

fn chord(n: u32, pick: usize) -> Arc {
    let d = polygon::diagonals(n);
    Arc::Chord(d[pick % d.len()])
}

fn dihedral(n: u32, pick: usize) -> MappingClass {
    let all = Dihedral::all(n);
    MappingClass::Dihedral(all[pick % all.len()])
}

fn random_path(g: &MultiarcGraph, start: usize, steps: &[usize]) -> Vec<usize> {
    let mut p = vec![start];
    for &s in steps {
        let nb = g.neighbors(*p.last().unwrap());
        p.push(nb[s % nb.len()]);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn polygon_intersections(n in 4u32..=9, i in 0usize..64, j in 0usize..64) {
        let s = Surface::polygon(n).unwrap();
        let (a, b) = (chord(n, i), chord(n, j));
        let x = s.intersection_number(&a, &b).unwrap();
        prop_assert_eq!(x, s.intersection_number(&b, &a).unwrap());
        prop_assert!(x <= 1);
        if a == b {
            prop_assert_eq!(x, 0);
        } else if x == 0 {
            prop_assert!(s.multiarc(vec![a, b]).is_ok());
        }
    }

    #[test]
    fn ears_count(n in 4u32..=10) {
        let s = Surface::polygon(n).unwrap();
        let ears: Vec<Arc> = polygon::diagonals(n).into_iter().map(Arc::Chord).filter(|a| s.is_ear(a).unwrap()).collect();
        let want: Vec<Arc> = if n == 4 { polygon::diagonals(4).into_iter().map(Arc::Chord).collect() } else {
            let mut v: Vec<Arc> = (0..n).map(|i| Arc::chord(i, (i + 2) % n)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(ears, want);
    }

    #[test]
    fn types_are_dihedral_invariant(n in 5u32..=9, i in 0usize..64, g in 0usize..32) {
        let s = Surface::polygon(n).unwrap();
        let a = chord(n, i);
        let b = act_arc(&s, &dihedral(n, g), &a).unwrap();
        prop_assert_eq!(s.topological_type(&a).unwrap(), s.topological_type(&b).unwrap());
    }

    #[test]
    fn combing_along_x(n in 5u32..=9, i in 0usize..64, j in 0usize..64, head in any::<bool>()) {
        let s = Surface::polygon(n).unwrap();
        let (b, x) = (chord(n, i), chord(n, j));
        prop_assume!(b != x);
        let c = x.as_chord().unwrap();
        let xo = if head { OrientedArc::chord(c.lo(), c.hi()) } else { OrientedArc::chord(c.hi(), c.lo()) };
        let r = comb(&s, &b, &xo).unwrap();
        for img in &r.images {
            prop_assert_eq!(s.intersection_number(img, &x).unwrap(), 0);
            if *img != x {
                prop_assert_eq!(&comb(&s, img, &xo).unwrap().images, &vec![img.clone()]);
            }
        }
        if s.intersection_number(&b, &x).unwrap() == 0 {
            prop_assert_eq!(r.images, vec![b]);
        }
    }

    #[test]
    fn dihedral_action_is_simplicial(n in 5u32..=7, k in 1usize..=4, u in 0usize..400, step in 0usize..16, g in 0usize..16) {
        prop_assume!(k <= n as usize - 3);
        let gr = &graphs()[&(n, k)];
        let s = gr.surface();
        let u = u % gr.len();
        let v = gr.neighbors(u)[step % gr.degree(u)];
        let m = dihedral(n, g);
        let (x, y) = (act(s, &m, gr.vertex(u)).unwrap(), act(s, &m, gr.vertex(v)).unwrap());
        prop_assert!(s.adjacent(&x, &y).unwrap());
        if k >= 2 {
            let t = theta(gr, u, v).unwrap();
            prop_assert_eq!(act(s, &m, &t).unwrap(), x.intersection(&y));
        }
        for (a, b) in gr.vertex(u).iter().zip(gr.vertex(v).iter()) {
            let (ga, gb) = (act_arc(s, &m, a).unwrap(), act_arc(s, &m, b).unwrap());
            prop_assert_eq!(s.intersection_number(a, b).unwrap(), s.intersection_number(&ga, &gb).unwrap());
        }
    }

    #[test]
    fn surgery_is_sound(n in 5u32..=7, k in 1usize..=4, start in 0usize..400, steps in proptest::collection::vec(0usize..64, 1..10), pick in 0usize..8) {
        prop_assume!(k <= n as usize - 3);
        let g = &graphs()[&(n, k)];
        let s = g.surface();
        let walk = random_path(g, start % g.len(), &steps);
        let first = g.vertex(walk[0]);
        let x = first.arcs()[pick % k].clone();
        let back = g.bfs(walk[0]);
        let mut cur = *walk.last().unwrap();
        let mut idx = walk.clone();
        while back[cur] > 0 {
            cur = *g.neighbors(cur).iter().find(|&&w| back[w] + 1 == back[cur]).unwrap();
            idx.push(cur);
        }
        idx.dedup();
        let path = Path::from_indices(g, &idx);
        let out = surgery(s, &path, &x, None).unwrap();
        prop_assert!(out.path.len() <= path.len());
        prop_assert_eq!(out.path.first(), path.first());
        prop_assert_eq!(out.path.last(), path.last());
        prop_assert!(out.path.vertices.iter().all(|v| v.contains(&x)));
        out.path.validate(s).unwrap();
    }
}

fn normal_specs() -> Vec<SurfaceSpec> {
    vec![
        SurfaceSpec::new(1, vec![], 1).unwrap(),
        SurfaceSpec::new(0, vec![], 5).unwrap(),
        SurfaceSpec::new(0, vec![2], 2).unwrap(),
        SurfaceSpec::new(1, vec![1], 0).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Carrying an arc along flips and back gives the same coordinates.
    #[test]
    fn transport_round_trip(which in 0usize..4, pick in 0usize..1000, word in proptest::collection::vec(0usize..32, 0..8)) {
        let s = Surface::triangulated(normal_specs()[which].clone()).unwrap();
        let m = s.normal().unwrap();
        let arcs = s.enumerate_arcs(4).unwrap().arcs;
        let a = arcs[pick % arcs.len()].as_normal().unwrap().clone();
        let mut t = m.reference().clone();
        let mut w = Vec::new();
        for e in word {
            let e = e % t.num_interior();
            if t.is_flippable(e) {
                t.flip(e).unwrap();
                w.push(e);
            }
        }
        let (_, c) = m.push_forward(&w, m.carrier(&a).unwrap()).unwrap();
        prop_assert_eq!(m.pull_back(&w, c).unwrap(), a);
    }

    #[test]
    fn normal_intersections_symmetric(which in 0usize..4, i in 0usize..1000, j in 0usize..1000) {
        let s = Surface::triangulated(normal_specs()[which].clone()).unwrap();
        let arcs = s.enumerate_arcs(4).unwrap().arcs;
        let (a, b) = (&arcs[i % arcs.len()], &arcs[j % arcs.len()]);
        let x = s.intersection_number(a, b).unwrap();
        prop_assert_eq!(x, s.intersection_number(b, a).unwrap());
        if a == b {
            prop_assert_eq!(x, 0);
        }
        if x == 0 && a != b {
            prop_assert!(s.multiarc(vec![a.clone(), b.clone()]).is_ok());
        }
    }
}
