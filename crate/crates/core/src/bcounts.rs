//! Bounded counts around separating arcs, and connectivity of `B^[1]`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::{Arc, Multiarc};
use crate::embed::bron_kerbosch;
use crate::error::{Error, Result};
use crate::graph::{b_graph, GraphMode};
use crate::surface::Surface;
use crate::symmetry::{act_arc, MappingClass};

/// Largest family of pairwise disjoint separating arcs found by a bounded
/// search, against the bound `2p - 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub instance: String,
    pub observed: usize,
    pub bound: usize,
    pub within_bound: bool,
    pub arcs_searched: usize,
    pub witness: Multiarc,
    pub warning: Option<String>,
}

fn punctures(s: &Surface) -> Result<u32> {
    let sp = s.spec();
    if sp.genus != 0 || !sp.boundary_points.is_empty() || sp.interior_points < 4 {
        return Err(Error::Precondition(format!("expected a sphere with at least 4 punctures, got {sp:?}")));
    }
    Ok(sp.interior_points)
}

pub fn max_disjoint_separating(s: &Surface, arc_bound: u32) -> Result<CountReport> {
    let p = punctures(s)?;
    let arcs = s.enumerate_arcs(arc_bound)?.arcs;
    let sep: Vec<Arc> = arcs
        .iter()
        .filter_map(|a| s.is_separating(a).map(|x| x.then(|| a.clone())).transpose())
        .collect::<Result<_>>()?;
    let mut adj = vec![BTreeSet::new(); sep.len()];
    for i in 0..sep.len() {
        for j in i + 1..sep.len() {
            if s.disjoint(&sep[i], &sep[j])? {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), (0..sep.len()).collect(), BTreeSet::new(), &mut cliques);
    let best = cliques.into_iter().max_by_key(|c| c.len()).unwrap_or_default();
    let bound = (2 * p - 5) as usize;
    let witness = Multiarc::from_arcs_unchecked(best.iter().map(|&i| sep[i].clone()).collect());
    let warning = sep.is_empty().then(|| format!("no separating arc within weight {arc_bound}"));
    Ok(CountReport {
        instance: format!("S_0,{p} weight <= {arc_bound}"),
        observed: witness.len(),
        bound,
        within_bound: witness.len() <= bound,
        arcs_searched: arcs.len(),
        witness,
        warning,
    })
}

/// `B^[k]` vertices found next to a multiarc with no non-separating arc and
/// no ear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborReport {
    pub mu: Multiarc,
    /// Non-separating arcs disjoint from `mu`.
    pub nonseparating_disjoint: usize,
    /// Adjacent vertices of `A^[k]` that lie in `B^[k]`.
    pub b_neighbors: Vec<Multiarc>,
    /// What the count must reach: `p - 1` disjoint non-separating arcs on a
    /// punctured sphere, else more than `k + 1` neighbours.
    pub required: usize,
    pub holds: bool,
}

fn good(s: &Surface, a: &Arc) -> Result<bool> {
    let t = s.topological_type(a)?;
    Ok(!t.separating || t.ear)
}

pub fn nonsep_neighbors(s: &Surface, mu: &Multiarc, arc_bound: u32) -> Result<NeighborReport> {
    let mu = s.multiarc(mu.arcs().to_vec())?;
    for a in &mu {
        if good(s, a)? {
            return Err(Error::Precondition(format!("{a} is non-separating or an ear, so {mu} is already in B")));
        }
    }
    let arcs = s.enumerate_arcs(arc_bound)?.arcs;
    let mut nonseparating_disjoint = 0;
    let mut found = BTreeSet::new();
    for b in &arcs {
        if mu.contains(b) || !good(s, b)? {
            continue;
        }
        let disjoint = mu.iter().map(|a| s.disjoint(a, b)).collect::<Result<Vec<_>>>()?;
        if disjoint.iter().all(|&d| d) && !s.is_separating(b)? {
            nonseparating_disjoint += 1;
        }
        for (i, a) in mu.iter().enumerate() {
            if !disjoint.iter().enumerate().all(|(j, &d)| d || j == i) {
                continue;
            }
            let w = mu.exchange(a, b.clone());
            if s.adjacent(&mu, &w)? {
                found.insert(w);
            }
        }
    }
    let b_neighbors: Vec<Multiarc> = found.into_iter().collect();
    let sp = s.spec();
    let sphere = sp.genus == 0 && sp.boundary_points.is_empty();
    let (required, holds) = if sphere {
        let r = (sp.interior_points - 1) as usize;
        (r, nonseparating_disjoint >= r && b_neighbors.len() > mu.len() + 1)
    } else {
        (mu.len() + 2, b_neighbors.len() > mu.len() + 1)
    };
    Ok(NeighborReport { mu, nonseparating_disjoint, b_neighbors, required, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BConnectivity {
    pub vertices: usize,
    pub components: usize,
    pub isolated: usize,
    /// False when the graph is a ball, so the count says nothing global.
    pub complete: bool,
}

pub fn b_connectivity(s: &Surface, mode: GraphMode) -> Result<BConnectivity> {
    let b = b_graph(s, 1, mode)?;
    let comps = b.components();
    Ok(BConnectivity {
        vertices: b.len(),
        components: comps.len(),
        isolated: comps.iter().filter(|c| c.len() == 1).count(),
        complete: b.is_complete(),
    })
}

/// Distinct arcs among `g^t(a)` for `t = 0..=t_max`, after each step.
pub fn orbit_counts(s: &Surface, g: &MappingClass, a: &Arc, t_max: usize) -> Result<Vec<usize>> {
    let mut seen = BTreeSet::from([a.clone()]);
    let mut cur = a.clone();
    let mut out = vec![1];
    for _ in 0..t_max {
        cur = act_arc(s, g, &cur)?;
        seen.insert(cur.clone());
        out.push(seen.len());
    }
    Ok(out)
}
