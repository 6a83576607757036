//! Surface signatures, complexity and cutting.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::arcs::Arc;
use crate::error::{Error, Result};
use crate::polygon;
use crate::triangulated::NormalModel;

/// Topological signature `(g, b, p, q)` of a compact oriented surface with
/// marked points.
///
/// `boundary_points[i]` is the number of marked points on boundary circle `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary_points: Vec<u32>,
    pub interior_points: u32,
}

impl SurfaceSpec {
    /// Validating constructor. Every boundary circle needs a marked point and
    /// the surface needs at least one marked point overall.
    pub fn new(genus: u32, boundary_points: Vec<u32>, interior_points: u32) -> Result<Self> {
        let s = SurfaceSpec { genus, boundary_points, interior_points };
        s.validate()?;
        Ok(s)
    }

    pub fn polygon(n: u32) -> Self {
        SurfaceSpec { genus: 0, boundary_points: alloc::vec![n], interior_points: 0 }
    }

    pub fn punctured_sphere(p: u32) -> Self {
        SurfaceSpec { genus: 0, boundary_points: Vec::new(), interior_points: p }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(i) = self.boundary_points.iter().position(|&q| q == 0) {
            return Err(Error::InvalidSurface(format!(
                "boundary component {i} carries no marked point"
            )));
        }
        if self.interior_points == 0 && self.boundary_points.is_empty() {
            return Err(Error::InvalidSurface("no marked points".into()));
        }
        Ok(())
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_points.len() as u32
    }

    pub fn boundary_marked(&self) -> u32 {
        self.boundary_points.iter().sum()
    }

    pub fn marked_points(&self) -> u32 {
        self.boundary_marked() + self.interior_points
    }

    /// `ω(S) = 6g + 3b + 3p + q − 6`, the number of arcs in a triangulation.
    pub fn complexity(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.boundary_count() as i64 + 3 * self.interior_points as i64
            + self.boundary_marked() as i64
            - 6
    }

    /// Euler characteristic of the underlying compact surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count() as i64
    }

    /// Genus at most one and at most three boundary components, counting
    /// interior marked points as boundary components.
    pub fn is_exceptional(&self) -> bool {
        self.genus <= 1 && self.boundary_count() + self.interior_points <= 3
    }

    /// `Some(n)` when the surface is a disk with `n` boundary points.
    pub fn as_polygon(&self) -> Option<u32> {
        match (self.genus, self.interior_points, self.boundary_points.as_slice()) {
            (0, 0, [n]) => Some(*n),
            _ => None,
        }
    }

    /// Copy with boundary circles sorted, for comparisons up to homeomorphism.
    pub fn canonical(&self) -> Self {
        let mut s = self.clone();
        s.boundary_points.sort_unstable();
        s
    }
}

/// One connected component of a cut surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutComponent {
    pub spec: SurfaceSpec,
    /// Parent marked point of every marked point of the component. A parent
    /// point can appear several times when the cut splits it.
    pub parent_points: Vec<u32>,
}

impl CutComponent {
    pub fn complexity(&self) -> i64 {
        self.spec.complexity()
    }

    pub fn is_triangle(&self) -> bool {
        self.spec.as_polygon() == Some(3)
    }
}

/// Result of cutting along a multiarc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub components: Vec<CutComponent>,
}

impl CutResult {
    /// Sum of complexities over components.
    pub fn complexity_sum(&self) -> i64 {
        self.components.iter().map(|c| c.complexity()).sum()
    }

    pub fn positive_components(&self) -> usize {
        self.components.iter().filter(|c| c.complexity() > 0).count()
    }

    /// Canonical component signatures, sorted.
    pub fn signature(&self) -> Vec<SurfaceSpec> {
        let mut v: Vec<_> = self.components.iter().map(|c| c.spec.canonical()).collect();
        v.sort();
        v
    }
}

/// Which arc model a [`Surface`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Polygon,
    Triangulated,
}

#[derive(Clone, Debug)]
pub(crate) enum Model {
    Polygon { n: u32 },
    Triangulated(Box<NormalModel>),
}

/// A surface together with its arc model. All arc operations go through it.
#[derive(Clone, Debug)]
pub struct Surface {
    spec: SurfaceSpec,
    pub(crate) model: Model,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.backend() == other.backend()
    }
}

impl Surface {
    /// Convex `n`-gon with the chord model, `n ≥ 4`.
    pub fn polygon(n: u32) -> Result<Self> {
        let spec = SurfaceSpec::polygon(n);
        if n < 4 {
            return Err(Error::ComplexityTooLow { omega: spec.complexity() });
        }
        Ok(Surface { spec, model: Model::Polygon { n } })
    }

    /// Any surface with `ω ≥ 1`, using normal coordinates.
    pub fn triangulated(spec: SurfaceSpec) -> Result<Self> {
        spec.validate()?;
        if spec.complexity() < 1 {
            return Err(Error::ComplexityTooLow { omega: spec.complexity() });
        }
        let model = NormalModel::new(&spec)?;
        Ok(Surface { spec, model: Model::Triangulated(Box::new(model)) })
    }

    pub fn new(spec: SurfaceSpec, backend: Backend) -> Result<Self> {
        match backend {
            Backend::Polygon => match spec.as_polygon() {
                Some(n) => Surface::polygon(n),
                None => Err(Error::UnsupportedBackend("the chord model only covers polygons")),
            },
            Backend::Triangulated => Surface::triangulated(spec),
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn backend(&self) -> Backend {
        match self.model {
            Model::Polygon { .. } => Backend::Polygon,
            Model::Triangulated(_) => Backend::Triangulated,
        }
    }

    pub fn complexity(&self) -> usize {
        self.spec.complexity() as usize
    }

    /// Number of polygon vertices for the chord model.
    pub fn polygon_size(&self) -> Option<u32> {
        match self.model {
            Model::Polygon { n } => Some(n),
            Model::Triangulated(_) => None,
        }
    }

    pub fn normal(&self) -> Option<&NormalModel> {
        match &self.model {
            Model::Triangulated(m) => Some(m),
            Model::Polygon { .. } => None,
        }
    }

    /// Cut along a multiarc. The arcs must be valid and pairwise disjoint.
    pub fn cut(&self, arcs: &[Arc]) -> Result<CutResult> {
        let ms = self.multiarc(arcs.to_vec())?;
        match &self.model {
            Model::Polygon { n } => {
                let chords: Vec<_> = ms.iter().map(|a| a.as_chord().unwrap()).collect();
                Ok(polygon::cut(*n, &chords))
            }
            Model::Triangulated(m) => m.cut(ms.arcs()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexity_examples() {
        assert_eq!(SurfaceSpec::polygon(6).complexity(), 3);
        assert_eq!(SurfaceSpec::punctured_sphere(4).complexity(), 6);
        let torus = SurfaceSpec::new(1, alloc::vec![], 1).unwrap();
        assert_eq!(torus.complexity(), 3);
        assert!(torus.is_exceptional());
        let s5 = SurfaceSpec::punctured_sphere(5);
        assert!(!s5.is_exceptional());
        assert!(SurfaceSpec::punctured_sphere(3).is_exceptional());
    }

    #[test]
    fn rejects_bad_signatures() {
        assert!(SurfaceSpec::new(0, alloc::vec![0], 1).is_err());
        assert!(SurfaceSpec::new(1, alloc::vec![], 0).is_err());
        assert!(matches!(
            Surface::triangulated(SurfaceSpec::polygon(3)),
            Err(Error::ComplexityTooLow { omega: 0 })
        ));
        assert!(Surface::polygon(3).is_err());
        assert!(Surface::new(SurfaceSpec::punctured_sphere(4), Backend::Polygon).is_err());
    }
}
