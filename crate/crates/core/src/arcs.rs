//! Arcs, multiarcs and triangulations, with the operations that dispatch on
//! the arc model of a [`Surface`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::polygon;
use crate::surface::{Model, Surface, SurfaceSpec};
use crate::triangulated::{normal, Carrier, EdgeId, NormalModel};

/// Chord of a polygon, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    lo: u32,
    hi: u32,
}

impl Chord {
    /// Unordered pair `{i, j}`. Panics when `i == j`.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i != j, "a chord needs two distinct vertices");
        Chord { lo: i.min(j), hi: i.max(j) }
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn has_endpoint(&self, v: u32) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other_end(&self, v: u32) -> u32 {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Normal coordinates over the interior edges of the reference
/// triangulation. An edge of that triangulation is `-1` at its own index and
/// zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalArc {
    coords: Vec<i32>,
}

impl NormalArc {
    /// Coordinates are checked when the arc is used on a surface.
    pub fn from_coords_unchecked(coords: Vec<i32>) -> Self {
        NormalArc { coords }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn weight(&self) -> i64 {
        self.coords.iter().map(|&c| c.max(0) as i64).sum()
    }
}

impl fmt::Display for NormalArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Isotopy class of an essential simple arc.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    Chord(Chord),
    Normal(NormalArc),
}

impl Arc {
    pub fn chord(i: u32, j: u32) -> Self {
        Arc::Chord(Chord::new(i, j))
    }

    pub fn as_chord(&self) -> Option<Chord> {
        match self {
            Arc::Chord(c) => Some(*c),
            Arc::Normal(_) => None,
        }
    }

    pub fn as_normal(&self) -> Option<&NormalArc> {
        match self {
            Arc::Normal(n) => Some(n),
            Arc::Chord(_) => None,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Chord(c) => c.fmt(f),
            Arc::Normal(n) => n.fmt(f),
        }
    }
}

/// Which end of an oriented arc is its head.
///
/// Chords name the head vertex. A normal arc with distinct endpoints may
/// also name its head vertex; in general it names an end of the edge the arc
/// becomes under the canonical shortening flips: `0` for the start of that
/// edge, `1` for its end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    Vertex(u32),
    Terminal(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedArc {
    pub arc: Arc,
    pub head: Head,
}

impl OrientedArc {
    /// Chord oriented from `tail` to `head`.
    pub fn chord(tail: u32, head: u32) -> Self {
        OrientedArc { arc: Arc::chord(tail, head), head: Head::Vertex(head) }
    }

    pub fn reversed(&self) -> Self {
        let head = match (&self.arc, self.head) {
            (Arc::Chord(c), Head::Vertex(v)) => Head::Vertex(c.other_end(v)),
            (_, Head::Terminal(t)) => Head::Terminal(1 - t),
            (_, h) => h,
        };
        OrientedArc { arc: self.arc.clone(), head }
    }

    pub fn head_vertex(&self) -> Option<u32> {
        match self.head {
            Head::Vertex(v) => Some(v),
            Head::Terminal(_) => None,
        }
    }

    pub fn tail_vertex(&self) -> Option<u32> {
        match (&self.arc, self.head) {
            (Arc::Chord(c), Head::Vertex(v)) => Some(c.other_end(v)),
            _ => None,
        }
    }
}

/// A set of pairwise disjoint distinct arcs, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multiarc {
    arcs: Vec<Arc>,
}

impl Multiarc {
    /// Sorts and deduplicates without checking disjointness.
    pub fn from_arcs_unchecked(mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        arcs.dedup();
        Multiarc { arcs }
    }

    pub fn chords(pairs: &[(u32, u32)]) -> Self {
        Self::from_arcs_unchecked(pairs.iter().map(|&(i, j)| Arc::chord(i, j)).collect())
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Arc> {
        self.arcs.iter()
    }

    pub fn contains(&self, a: &Arc) -> bool {
        self.arcs.binary_search(a).is_ok()
    }

    pub fn is_subset(&self, other: &Multiarc) -> bool {
        self.arcs.iter().all(|a| other.contains(a))
    }

    pub fn intersection(&self, other: &Multiarc) -> Multiarc {
        Multiarc { arcs: self.arcs.iter().filter(|a| other.contains(a)).cloned().collect() }
    }

    pub fn union(&self, other: &Multiarc) -> Multiarc {
        let mut v = self.arcs.clone();
        v.extend(other.arcs.iter().cloned());
        Self::from_arcs_unchecked(v)
    }

    pub fn difference(&self, other: &Multiarc) -> Multiarc {
        Multiarc { arcs: self.arcs.iter().filter(|a| !other.contains(a)).cloned().collect() }
    }

    pub fn without(&self, a: &Arc) -> Multiarc {
        Multiarc { arcs: self.arcs.iter().filter(|b| *b != a).cloned().collect() }
    }

    pub fn with(&self, a: Arc) -> Multiarc {
        let mut v = self.arcs.clone();
        v.push(a);
        Self::from_arcs_unchecked(v)
    }

    /// `self ∖ {old} ∪ {new}`.
    pub fn exchange(&self, old: &Arc, new: Arc) -> Multiarc {
        self.without(old).with(new)
    }
}

impl fmt::Display for Multiarc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Multiarc {
    type Item = &'a Arc;
    type IntoIter = core::slice::Iter<'a, Arc>;
    fn into_iter(self) -> Self::IntoIter {
        self.arcs.iter()
    }
}

/// A maximal multiarc. On the normal-coordinate model it also remembers a
/// flip word from the reference triangulation that realises it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    arcs: Multiarc,
    word: Vec<EdgeId>,
}

impl Triangulation {
    pub fn arcs(&self) -> &Multiarc {
        &self.arcs
    }

    pub fn flip_word(&self) -> &[EdgeId] {
        &self.word
    }
}

/// Topological type of an arc: what cutting along it produces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcType {
    pub separating: bool,
    pub ear: bool,
    pub components: Vec<SurfaceSpec>,
}

/// Result of enumerating arcs up to a coordinate bound.
#[derive(Clone, Debug)]
pub struct ArcEnumeration {
    pub arcs: Vec<Arc>,
    /// True only when the enumeration provably lists every arc.
    pub complete: bool,
}

/// Number of weight vectors visited before enumeration gives up.
pub const ENUMERATION_LIMIT: usize = 5_000_000;

impl Surface {
    pub fn validate_arc(&self, a: &Arc) -> Result<()> {
        match (&self.model, a) {
            (Model::Polygon { n }, Arc::Chord(c)) => {
                if polygon::is_diagonal(*n, c.lo(), c.hi()) {
                    Ok(())
                } else {
                    Err(Error::InvalidArc(format!("{c} is not a diagonal of the {n}-gon")))
                }
            }
            (Model::Triangulated(m), Arc::Normal(x)) => m.carrier(x).map(|_| ()),
            _ => Err(Error::SurfaceMismatch(format!("{a} does not belong to this arc model"))),
        }
    }

    pub(crate) fn carrier(&self, a: &Arc) -> Result<Carrier> {
        let m = self.normal().ok_or(Error::UnsupportedBackend("normal coordinates"))?;
        match a {
            Arc::Normal(x) => m.carrier(x),
            Arc::Chord(_) => Err(Error::SurfaceMismatch("chord on a triangulated surface".into())),
        }
    }

    /// Validated multiarc: distinct, essential and pairwise disjoint arcs.
    pub fn multiarc(&self, arcs: Vec<Arc>) -> Result<Multiarc> {
        for a in &arcs {
            self.validate_arc(a)?;
        }
        let n = arcs.len();
        let m = Multiarc::from_arcs_unchecked(arcs);
        if m.len() != n {
            return Err(Error::InvalidMultiarc("repeated arc".into()));
        }
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if self.intersection_number(&m.arcs[i], &m.arcs[j])? != 0 {
                    return Err(Error::InvalidMultiarc(format!(
                        "{} and {} intersect",
                        m.arcs[i], m.arcs[j]
                    )));
                }
            }
        }
        if m.len() > self.complexity() {
            return Err(Error::InvalidMultiarc("more arcs than a triangulation".into()));
        }
        Ok(m)
    }

    /// Geometric intersection number; `i(a, a) = 0`.
    pub fn intersection_number(&self, a: &Arc, b: &Arc) -> Result<u32> {
        match (&self.model, a, b) {
            (Model::Polygon { n }, Arc::Chord(x), Arc::Chord(y)) => {
                self.validate_arc(a)?;
                self.validate_arc(b)?;
                let _ = n;
                Ok(polygon::crosses(*x, *y) as u32)
            }
            (Model::Triangulated(m), Arc::Normal(x), Arc::Normal(y)) => m.intersection(x, y),
            _ => Err(Error::SurfaceMismatch("arcs do not belong to this arc model".into())),
        }
    }

    /// Distinct and with zero intersection.
    pub fn disjoint(&self, a: &Arc, b: &Arc) -> Result<bool> {
        Ok(a != b && self.intersection_number(a, b)? == 0)
    }

    /// Arcs with coordinate sum at most `bound`. The chord model ignores the
    /// bound and always lists every diagonal.
    pub fn enumerate_arcs(&self, bound: u32) -> Result<ArcEnumeration> {
        match &self.model {
            Model::Polygon { n } => Ok(ArcEnumeration {
                arcs: polygon::diagonals(*n).into_iter().map(Arc::Chord).collect(),
                complete: true,
            }),
            Model::Triangulated(m) => {
                let arcs: Vec<Arc> =
                    m.enumerate(bound, ENUMERATION_LIMIT)?.into_iter().map(Arc::Normal).collect();
                // disks are the only case with a finite arc set we can certify
                let complete = match self.spec().as_polygon() {
                    Some(n) => arcs.len() as u32 == n * (n - 3) / 2,
                    None => false,
                };
                Ok(ArcEnumeration { arcs, complete })
            }
        }
    }

    pub fn topological_type(&self, a: &Arc) -> Result<ArcType> {
        let cut = self.cut(core::slice::from_ref(a))?;
        Ok(ArcType {
            separating: cut.components.len() > 1,
            ear: cut.components.iter().any(|c| c.is_triangle()),
            components: cut.signature(),
        })
    }

    pub fn is_separating(&self, a: &Arc) -> Result<bool> {
        Ok(self.topological_type(a)?.separating)
    }

    /// Cuts off a triangle.
    pub fn is_ear(&self, a: &Arc) -> Result<bool> {
        match (&self.model, a) {
            (Model::Polygon { n }, Arc::Chord(c)) => {
                self.validate_arc(a)?;
                Ok(polygon::is_ear(*n, *c))
            }
            _ => Ok(self.topological_type(a)?.ear),
        }
    }

    /// Distinct disjoint arcs, each non-separating or an ear, whose union
    /// leaves exactly one component of positive complexity.
    pub fn nice_pair(&self, a: &Arc, b: &Arc) -> Result<bool> {
        if !self.disjoint(a, b)? {
            return Ok(false);
        }
        for x in [a, b] {
            let t = self.topological_type(x)?;
            if t.separating && !t.ear {
                return Ok(false);
            }
        }
        Ok(self.cut(&[a.clone(), b.clone()])?.positive_components() == 1)
    }

    /// Minimal intersection `m(ν)` between two arcs disjoint from `ν`. `None`
    /// when fewer than two such arcs exist.
    ///
    /// If `S ∖ ν` has total complexity at least two, two disjoint arcs exist.
    /// With complexity one the only positive piece is a quadrilateral (two
    /// arcs crossing once) or a punctured monogon (one arc).
    pub fn min_intersection(&self, nu: &Multiarc) -> Result<Option<u32>> {
        let rest = self.complexity() as i64 - nu.len() as i64;
        if rest >= 2 {
            return Ok(Some(0));
        }
        if rest < 1 {
            return Ok(None);
        }
        match &self.model {
            Model::Polygon { .. } => Ok(Some(1)),
            Model::Triangulated(_) => {
                let cut = self.cut(nu.arcs())?;
                let quad = cut
                    .components
                    .iter()
                    .any(|c| c.complexity() == 1 && c.spec.as_polygon() == Some(4));
                Ok(if quad { Some(1) } else { None })
            }
        }
    }

    /// Adjacency in `A^[k]`: sharing `k-1` arcs with `i(a, b) = m(ν)`.
    pub fn adjacent(&self, x: &Multiarc, y: &Multiarc) -> Result<bool> {
        if x.len() != y.len() || x.is_empty() {
            return Ok(false);
        }
        let nu = x.intersection(y);
        if nu.len() + 1 != x.len() {
            return Ok(false);
        }
        let a = &x.difference(&nu).arcs[0];
        let b = &y.difference(&nu).arcs[0];
        match self.min_intersection(&nu)? {
            Some(m) => Ok(self.intersection_number(a, b)? == m),
            None => Ok(false),
        }
    }

    /// The reference triangulation. For polygons this is the fan at `0`.
    pub fn reference_triangulation(&self) -> Triangulation {
        match &self.model {
            Model::Polygon { n } => Triangulation {
                arcs: Multiarc::from_arcs_unchecked((2..n - 1).map(|j| Arc::chord(0, j)).collect()),
                word: Vec::new(),
            },
            Model::Triangulated(m) => Triangulation {
                arcs: Multiarc::from_arcs_unchecked(
                    (0..m.omega()).map(|e| Arc::Normal(m.edge_arc(e))).collect(),
                ),
                word: Vec::new(),
            },
        }
    }

    /// Checks that a multiarc is a triangulation and wraps it.
    pub fn triangulation(&self, m: Multiarc) -> Result<Triangulation> {
        if m.len() != self.complexity() {
            return Err(Error::InvalidMultiarc(format!(
                "{} arcs where a triangulation has {}",
                m.len(),
                self.complexity()
            )));
        }
        match &self.model {
            Model::Polygon { .. } => Ok(Triangulation { arcs: m, word: Vec::new() }),
            Model::Triangulated(nm) => {
                let cs = m.iter().map(|a| self.carrier(a)).collect::<Result<Vec<_>>>()?;
                let (_, _, word) = nm.realise(&cs)?;
                Ok(Triangulation { arcs: m, word })
            }
        }
    }

    /// Extends a multiarc to a triangulation. Chords are added greedily in
    /// lexicographic order; on normal coordinates the arcs are made edges of
    /// a triangulation by shortening flips.
    pub fn complete_to_triangulation(&self, m: &Multiarc) -> Result<Triangulation> {
        match &self.model {
            Model::Polygon { n } => {
                let mut arcs: Vec<Arc> = m.arcs().to_vec();
                for d in polygon::diagonals(*n) {
                    if arcs.iter().all(|a| !polygon::crosses(a.as_chord().unwrap(), d)) {
                        let a = Arc::Chord(d);
                        if !arcs.contains(&a) {
                            arcs.push(a);
                        }
                    }
                }
                Ok(Triangulation { arcs: Multiarc::from_arcs_unchecked(arcs), word: Vec::new() })
            }
            Model::Triangulated(nm) => {
                let cs = m.iter().map(|a| self.carrier(a)).collect::<Result<Vec<_>>>()?;
                let (_, _, word) = nm.realise(&cs)?;
                let arcs = self.edges_of_word(nm, &word)?;
                Ok(Triangulation { arcs: Multiarc::from_arcs_unchecked(arcs), word })
            }
        }
    }

    fn edges_of_word(&self, nm: &NormalModel, word: &[EdgeId]) -> Result<Vec<Arc>> {
        (0..nm.omega())
            .map(|e| nm.pull_back(word, Carrier::Edge(e)).map(Arc::Normal))
            .collect()
    }

    /// Replace `e` by the other diagonal of the quadrilateral around it.
    pub fn flip(&self, t: &Triangulation, e: &Arc) -> Result<Triangulation> {
        if !t.arcs.contains(e) {
            return Err(Error::NotFlippable(format!("{e} is not in the triangulation")));
        }
        match &self.model {
            Model::Polygon { n } => {
                let chords: Vec<_> = t.arcs.iter().map(|a| a.as_chord().unwrap()).collect();
                let c = e.as_chord().unwrap();
                let inner = polygon::apex(*n, &chords, c, true);
                let outer = polygon::apex(*n, &chords, c, false);
                match (inner, outer) {
                    (Some(x), Some(y)) => Ok(Triangulation {
                        arcs: t.arcs.exchange(e, Arc::chord(x, y)),
                        word: Vec::new(),
                    }),
                    _ => Err(Error::InvalidMultiarc("not a triangulation".into())),
                }
            }
            Model::Triangulated(nm) => {
                let map = nm.replay(&t.word)?;
                let mut target = None;
                for g in 0..nm.omega() {
                    if Arc::Normal(nm.pull_back(&t.word, Carrier::Edge(g))?) == *e {
                        target = Some(g);
                    }
                }
                let g = target.ok_or_else(|| Error::Internal("arc is not an edge".into()))?;
                if !map.is_flippable(g) {
                    return Err(Error::NotFlippable(format!("{e} is self-folded")));
                }
                let mut word = t.word.clone();
                word.push(g);
                let new = nm.pull_back(&word, Carrier::Edge(g))?;
                Ok(Triangulation { arcs: t.arcs.exchange(e, Arc::Normal(new)), word })
            }
        }
    }

    /// Endpoints of an arc as marked point labels.
    pub fn endpoints(&self, a: &Arc) -> Result<(u32, u32)> {
        match a {
            Arc::Chord(c) => {
                self.validate_arc(a)?;
                Ok((c.lo(), c.hi()))
            }
            Arc::Normal(_) => {
                let m = self.normal().ok_or(Error::UnsupportedBackend("normal coordinates"))?;
                m.endpoints(&self.carrier(a)?)
            }
        }
    }

    /// Endpoint labels of an oriented arc, tail first.
    pub fn oriented_endpoints(&self, x: &OrientedArc) -> Result<(u32, u32)> {
        let (s, t) = match (&x.arc, x.head) {
            (Arc::Normal(n), Head::Terminal(_)) => {
                let m = self.normal().ok_or(Error::UnsupportedBackend("normal coordinates"))?;
                self.validate_arc(&x.arc)?;
                m.canonical_ends(n)?
            }
            _ => self.endpoints(&x.arc)?,
        };
        match x.head {
            Head::Vertex(v) if v == t && v != s => Ok((s, t)),
            Head::Vertex(v) if v == s && v != t => Ok((t, s)),
            Head::Terminal(1) => Ok((s, t)),
            Head::Terminal(0) => Ok((t, s)),
            _ => Err(Error::InvalidArc(format!("head {:?} does not pick an end of {}", x.head, x.arc))),
        }
    }

    /// Whether the head of `x` is the start of its canonical edge.
    pub(crate) fn head_at_start(&self, x: &OrientedArc) -> Result<bool> {
        let n = x.arc.as_normal().ok_or(Error::UnsupportedBackend("normal coordinates"))?;
        let m = self.normal().ok_or(Error::UnsupportedBackend("normal coordinates"))?;
        let (s, t) = m.canonical_ends(n)?;
        match x.head {
            Head::Terminal(0) => Ok(true),
            Head::Terminal(1) => Ok(false),
            Head::Vertex(v) if v == s && v != t => Ok(true),
            Head::Vertex(v) if v == t && v != s => Ok(false),
            _ => Err(Error::InvalidArc(format!("head {:?} does not pick an end of {}", x.head, x.arc))),
        }
    }

    /// Number of boundary-parallel reference edges, used by tests of the
    /// normal model.
    #[doc(hidden)]
    pub fn reference_trace_len(&self, a: &Arc) -> Result<usize> {
        match self.carrier(a)? {
            Carrier::Edge(_) => Ok(0),
            Carrier::Normal(p) => {
                let m = self.normal().unwrap();
                Ok(normal::trace(m.reference(), &p).map(|t| t.hops.len()).unwrap_or(0))
            }
        }
    }
}

/// Marked points touched by the arcs of a multiarc.
pub fn endpoint_set(s: &Surface, m: &Multiarc) -> Result<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for a in m {
        let (x, y) = s.endpoints(a)?;
        out.insert(x);
        out.insert(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hexagon() -> Surface {
        Surface::polygon(6).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let s = hexagon();
        assert_eq!(s.intersection_number(&Arc::chord(0, 2), &Arc::chord(1, 3)).unwrap(), 1);
        assert_eq!(s.intersection_number(&Arc::chord(0, 2), &Arc::chord(0, 3)).unwrap(), 0);
        assert_eq!(s.intersection_number(&Arc::chord(0, 3), &Arc::chord(0, 3)).unwrap(), 0);
        assert!(s.validate_arc(&Arc::chord(0, 1)).is_err());
        assert!(s.validate_arc(&Arc::chord(0, 7)).is_err());
    }

    #[test]
    fn hexagon_cut_and_types() {
        let s = hexagon();
        let cut = s.cut(&[Arc::chord(0, 3)]).unwrap();
        assert_eq!(cut.signature(), vec![SurfaceSpec::polygon(4), SurfaceSpec::polygon(4)]);
        assert!(s.is_ear(&Arc::chord(0, 2)).unwrap());
        assert!(!s.is_ear(&Arc::chord(0, 3)).unwrap());
        assert!(s.cut(&[Arc::chord(0, 3), Arc::chord(1, 4)]).is_err());
    }

    #[test]
    fn hexagon_flip() {
        let s = hexagon();
        let t = s.triangulation(Multiarc::chords(&[(0, 2), (0, 3), (0, 4)])).unwrap();
        let t2 = s.flip(&t, &Arc::chord(0, 3)).unwrap();
        assert_eq!(t2.arcs(), &Multiarc::chords(&[(0, 2), (0, 4), (2, 4)]));
    }

    #[test]
    fn multiarc_validation() {
        let s = hexagon();
        assert!(s.multiarc(vec![Arc::chord(0, 2), Arc::chord(0, 2)]).is_err());
        assert!(s.multiarc(vec![Arc::chord(0, 2), Arc::chord(1, 3)]).is_err());
        assert!(s.multiarc(vec![Arc::chord(0, 2), Arc::chord(2, 4)]).is_ok());
    }

    #[test]
    fn normal_flip_matches_chords() {
        let s = Surface::triangulated(SurfaceSpec::polygon(6)).unwrap();
        let t = s.reference_triangulation();
        let t = s.triangulation(t.arcs().clone()).unwrap();
        let e = t.arcs().arcs()[1].clone();
        let t2 = s.flip(&t, &e).unwrap();
        assert_eq!(t2.arcs().len(), 3);
        let arcs: Vec<_> = t2.arcs().iter().cloned().collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(s.disjoint(&arcs[i], &arcs[j]).unwrap());
            }
        }
        assert_eq!(s.intersection_number(&e, &t2.arcs().difference(t.arcs()).arcs()[0]).unwrap(), 1);
    }
}
