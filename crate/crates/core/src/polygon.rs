//! Chords of a convex polygon with vertices `0..n` in counter-clockwise order.

use alloc::vec;
use alloc::vec::Vec;

use crate::arcs::Chord;
use crate::surface::{CutComponent, CutResult, SurfaceSpec};

/// True when `i` and `j` are distinct and not joined by a polygon side.
pub fn is_diagonal(n: u32, i: u32, j: u32) -> bool {
    if i >= n || j >= n {
        return false;
    }
    let d = (i + n - j) % n;
    d != 0 && d != 1 && d != n - 1
}

/// Strict interleaving of endpoints. Chords sharing an endpoint never cross.
pub fn crosses(a: Chord, b: Chord) -> bool {
    let (p, q) = (a.lo(), a.hi());
    let (r, s) = (b.lo(), b.hi());
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// All diagonals in lexicographic order.
pub fn diagonals(n: u32) -> Vec<Chord> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if is_diagonal(n, i, j) {
                out.push(Chord::new(i, j));
            }
        }
    }
    out
}

/// Ears cut off a single triangle.
pub fn is_ear(n: u32, c: Chord) -> bool {
    let d = c.hi() - c.lo();
    d == 2 || d == n - 2
}

/// Sub-polygons left after cutting along pairwise non-crossing chords. Each
/// component lists its vertices in increasing (hence cyclic) order.
pub fn regions(n: u32, chords: &[Chord]) -> Vec<Vec<u32>> {
    let mut parts: Vec<Vec<u32>> = vec![(0..n).collect()];
    for c in chords {
        let idx = parts
            .iter()
            .position(|p| p.contains(&c.lo()) && p.contains(&c.hi()))
            .expect("non-crossing chords always split some region");
        let p = parts.swap_remove(idx);
        let inner: Vec<u32> = p.iter().copied().filter(|&v| v >= c.lo() && v <= c.hi()).collect();
        let outer: Vec<u32> = p.iter().copied().filter(|&v| v <= c.lo() || v >= c.hi()).collect();
        parts.push(inner);
        parts.push(outer);
    }
    parts.sort();
    parts
}

pub fn cut(n: u32, chords: &[Chord]) -> CutResult {
    let components = regions(n, chords)
        .into_iter()
        .map(|vs| CutComponent {
            spec: SurfaceSpec::polygon(vs.len() as u32),
            parent_points: vs,
        })
        .collect();
    CutResult { components }
}

/// Element `v ↦ ±v + shift (mod n)` of the dihedral group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dihedral {
    pub n: u32,
    pub shift: u32,
    pub reflect: bool,
}

impl Dihedral {
    pub fn identity(n: u32) -> Self {
        Dihedral { n, shift: 0, reflect: false }
    }

    pub fn rotation(n: u32, shift: u32) -> Self {
        Dihedral { n, shift: shift % n, reflect: false }
    }

    /// Reflection fixing vertex `0`.
    pub fn reflection(n: u32) -> Self {
        Dihedral { n, shift: 0, reflect: true }
    }

    pub fn all(n: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(2 * n as usize);
        for reflect in [false, true] {
            for shift in 0..n {
                out.push(Dihedral { n, shift, reflect });
            }
        }
        out
    }

    pub fn apply_vertex(&self, v: u32) -> u32 {
        let v = if self.reflect { (self.n - v % self.n) % self.n } else { v % self.n };
        (v + self.shift) % self.n
    }

    pub fn apply(&self, c: Chord) -> Chord {
        Chord::new(self.apply_vertex(c.lo()), self.apply_vertex(c.hi()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Dihedral) -> Dihedral {
        let z = other.apply_vertex(0);
        let reflect = self.reflect != other.reflect;
        Dihedral { n: self.n, shift: self.apply_vertex(z), reflect }
    }

    pub fn inverse(&self) -> Dihedral {
        if self.reflect {
            *self
        } else {
            Dihedral::rotation(self.n, self.n - self.shift)
        }
    }
}

/// Apex of the triangle on the side of chord `(i, j)` containing `side`
/// (`true` for vertices strictly between `i` and `j`), in triangulation `t`.
pub(crate) fn apex(n: u32, t: &[Chord], c: Chord, inner: bool) -> Option<u32> {
    let joined = |a: u32, b: u32| {
        let d = (a + n - b) % n;
        d == 1 || d == n - 1 || t.contains(&Chord::new(a, b))
    };
    let candidates: Vec<u32> = if inner {
        (c.lo() + 1..c.hi()).collect()
    } else {
        (c.hi() + 1..n).chain(0..c.lo()).collect()
    };
    candidates.into_iter().find(|&v| joined(v, c.lo()) && joined(v, c.hi()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_counts() {
        for n in 4..12u32 {
            assert_eq!(diagonals(n).len() as u32, n * (n - 3) / 2);
        }
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(Chord::new(0, 2), Chord::new(1, 3)));
        assert!(!crosses(Chord::new(0, 2), Chord::new(0, 3)));
        assert!(!crosses(Chord::new(0, 2), Chord::new(3, 5)));
    }

    #[test]
    fn regions_of_fan() {
        let r = regions(6, &[Chord::new(0, 2), Chord::new(0, 3), Chord::new(0, 4)]);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|p| p.len() == 3));
        let r = regions(6, &[Chord::new(0, 3)]);
        assert_eq!(r, vec![vec![0, 1, 2, 3], vec![0, 3, 4, 5]]);
    }

    #[test]
    fn dihedral_group_laws() {
        let n = 7;
        let all = Dihedral::all(n);
        for a in &all {
            let inv = a.inverse();
            assert_eq!(a.compose(&inv), Dihedral::identity(n));
            for b in &all {
                let ab = a.compose(b);
                for v in 0..n {
                    assert_eq!(ab.apply_vertex(v), a.apply_vertex(b.apply_vertex(v)));
                }
            }
        }
        let r = Dihedral::reflection(6);
        assert_eq!(r.apply(Chord::new(1, 3)), Chord::new(3, 5));
        assert_eq!(Dihedral::rotation(6, 1).apply(Chord::new(1, 3)), Chord::new(2, 4));
    }
}
