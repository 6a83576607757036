//! A finite, indexed pool of arcs with precomputed intersection numbers.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arcs::{Arc, Multiarc};
use crate::error::{Error, Result};
use crate::surface::{Model, Surface};
use crate::polygon;

#[derive(Clone, Debug)]
pub struct ArcUniverse {
    arcs: Vec<Arc>,
    index: BTreeMap<Arc, usize>,
    inter: Vec<u32>,
    complete: bool,
    bound: u32,
}

impl ArcUniverse {
    /// Every arc with coordinate sum at most `bound` (all diagonals for
    /// polygons), sorted.
    pub fn new(surface: &Surface, bound: u32) -> Result<Self> {
        let en = surface.enumerate_arcs(bound)?;
        Self::from_arcs(surface, en.arcs, en.complete, bound)
    }

    /// Universe over an explicit list of arcs.
    pub fn from_arcs(surface: &Surface, mut arcs: Vec<Arc>, complete: bool, bound: u32) -> Result<Self> {
        arcs.sort();
        arcs.dedup();
        let n = arcs.len();
        let mut inter = alloc::vec![0u32; n * n];
        match &surface.model {
            Model::Polygon { .. } => {
                for a in &arcs {
                    surface.validate_arc(a)?;
                }
                for i in 0..n {
                    for j in 0..n {
                        let (x, y) = (arcs[i].as_chord().unwrap(), arcs[j].as_chord().unwrap());
                        inter[i * n + j] = polygon::crosses(x, y) as u32;
                    }
                }
            }
            Model::Triangulated(m) => {
                let carriers = arcs
                    .iter()
                    .map(|a| surface.carrier(a))
                    .collect::<Result<Vec<_>>>()?;
                for i in 0..n {
                    let row = m.intersection_carriers(&carriers[i], &carriers)?;
                    for j in 0..n {
                        inter[i * n + j] = if i == j { 0 } else { row[j] };
                    }
                }
                for i in 0..n {
                    for j in 0..i {
                        if inter[i * n + j] != inter[j * n + i] {
                            return Err(Error::Internal("asymmetric intersection numbers".into()));
                        }
                    }
                }
            }
        }
        let index = arcs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Ok(ArcUniverse { arcs, index, inter, complete, bound })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> &Arc {
        &self.arcs[i]
    }

    pub fn index_of(&self, a: &Arc) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn intersection(&self, i: usize, j: usize) -> u32 {
        self.inter[i * self.arcs.len() + j]
    }

    pub fn disjoint(&self, i: usize, j: usize) -> bool {
        i != j && self.intersection(i, j) == 0
    }

    /// Indices of a multiarc, or `None` if some arc is outside the pool.
    pub fn indices(&self, m: &Multiarc) -> Option<Vec<usize>> {
        let mut v: Vec<usize> = m.iter().map(|a| self.index_of(a)).collect::<Option<_>>()?;
        v.sort_unstable();
        Some(v)
    }

    pub fn multiarc(&self, idx: &[usize]) -> Multiarc {
        Multiarc::from_arcs_unchecked(idx.iter().map(|&i| self.arcs[i].clone()).collect())
    }

    /// All sets of `k` pairwise disjoint arcs, as sorted index lists in
    /// lexicographic order.
    pub fn multiarcs(&self, k: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend(0, k, &mut cur, &mut out, limit)?;
        Ok(out)
    }

    fn extend(
        &self,
        from: usize,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if cur.len() == k {
            if out.len() >= limit {
                return Err(Error::SizeGuard { what: "multiarc enumeration", limit });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for i in from..self.arcs.len() {
            if cur.iter().all(|&j| self.disjoint(i, j)) {
                cur.push(i);
                self.extend(i + 1, k, cur, out, limit)?;
                cur.pop();
            }
        }
        Ok(())
    }
}
