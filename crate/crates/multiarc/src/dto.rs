//! JSON shapes for surfaces, arcs, graphs and paths.

use multiarc_core::graph::Completeness;
use multiarc_core::{Arc, Backend, Multiarc, MultiarcGraph, NormalArc, Surface, SurfaceSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpecDto {
    pub genus: u32,
    /// Marked points on each boundary component.
    #[serde(default)]
    pub boundary_points: Vec<u32>,
    #[serde(default)]
    pub interior_points: u32,
}

impl From<&SurfaceSpec> for SurfaceSpecDto {
    fn from(s: &SurfaceSpec) -> Self {
        SurfaceSpecDto { genus: s.genus, boundary_points: s.boundary_points.clone(), interior_points: s.interior_points }
    }
}

impl SurfaceSpecDto {
    pub fn to_spec(&self) -> CliResult<SurfaceSpec> {
        Ok(SurfaceSpec::new(self.genus, self.boundary_points.clone(), self.interior_points)?)
    }
}

/// `[i, j]` for a chord, `{"coords": [...]}` for normal coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArcDto {
    Chord([u32; 2]),
    Coords { coords: Vec<i32> },
}

impl From<&Arc> for ArcDto {
    fn from(a: &Arc) -> Self {
        match a {
            Arc::Chord(c) => ArcDto::Chord([c.lo(), c.hi()]),
            Arc::Normal(n) => ArcDto::Coords { coords: n.coords().to_vec() },
        }
    }
}

impl ArcDto {
    pub fn to_arc(&self, s: &Surface) -> CliResult<Arc> {
        let a = match self {
            ArcDto::Chord([i, j]) if i != j => Arc::chord(*i, *j),
            ArcDto::Chord(_) => return Err(CliError::Usage("a chord needs two distinct vertices".into())),
            ArcDto::Coords { coords } => Arc::Normal(NormalArc::from_coords_unchecked(coords.clone())),
        };
        s.validate_arc(&a)?;
        Ok(a)
    }
}

pub fn multiarc_dto(m: &Multiarc) -> Vec<ArcDto> {
    m.iter().map(ArcDto::from).collect()
}

pub fn multiarc_from(s: &Surface, arcs: &[ArcDto]) -> CliResult<Multiarc> {
    let arcs = arcs.iter().map(|a| a.to_arc(s)).collect::<CliResult<Vec<_>>>()?;
    Ok(s.multiarc(arcs)?)
}

pub fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Polygon => "polygon",
        Backend::Triangulated => "triangulated",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompletenessDto {
    Complete,
    Ball { center: Vec<ArcDto>, radius: usize, arc_bound: u32 },
}

pub const EDGE_CONVENTION: &str = "min-over-all-pairs";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDto {
    pub surface: SurfaceSpecDto,
    pub backend: String,
    pub k: usize,
    pub complete: bool,
    pub completeness: CompletenessDto,
    /// Edges through `ν` need the minimal intersection over all arc pairs
    /// of the cut surface, even when the two arcs lie in different pieces.
    pub convention: String,
    pub vertices: Vec<Vec<ArcDto>>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&MultiarcGraph> for GraphDto {
    fn from(g: &MultiarcGraph) -> Self {
        let completeness = match g.completeness() {
            Completeness::Complete => CompletenessDto::Complete,
            Completeness::Ball { center, radius, arc_bound } => {
                CompletenessDto::Ball { center: multiarc_dto(center), radius: *radius, arc_bound: *arc_bound }
            }
        };
        GraphDto {
            surface: g.surface().spec().into(),
            backend: backend_name(g.surface().backend()).into(),
            k: g.k(),
            complete: g.is_complete(),
            completeness,
            convention: EDGE_CONVENTION.into(),
            vertices: g.vertices().iter().map(multiarc_dto).collect(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

pub fn surface_for(spec: &SurfaceSpec, backend: &str) -> CliResult<Surface> {
    match backend {
        "polygon" => {
            let n = spec
                .as_polygon()
                .ok_or_else(|| CliError::Usage("the polygon backend needs a disk with boundary points only".into()))?;
            Ok(Surface::polygon(n)?)
        }
        "triangulated" => Ok(Surface::triangulated(spec.clone())?),
        other => Err(CliError::Usage(format!("unknown backend {other}"))),
    }
}

impl GraphDto {
    /// Rebuild the graph, checking every vertex and edge against the surface.
    pub fn to_graph(&self) -> CliResult<MultiarcGraph> {
        if self.convention != EDGE_CONVENTION || self.complete != (self.completeness == CompletenessDto::Complete) {
            return Err(CliError::Usage("unsupported edge convention or inconsistent completeness".into()));
        }
        let s = surface_for(&self.surface.to_spec()?, &self.backend)?;
        let vertices = self.vertices.iter().map(|v| multiarc_from(&s, v)).collect::<CliResult<Vec<_>>>()?;
        let mut adj = vec![Vec::new(); vertices.len()];
        for &[i, j] in &self.edges {
            if i >= vertices.len() || j >= vertices.len() || !s.adjacent(&vertices[i], &vertices[j])? {
                return Err(CliError::Usage(format!("edge [{i}, {j}] is not an edge of the graph")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let completeness = match &self.completeness {
            CompletenessDto::Complete => Completeness::Complete,
            CompletenessDto::Ball { center, radius, arc_bound } => {
                Completeness::Ball { center: multiarc_from(&s, center)?, radius: *radius, arc_bound: *arc_bound }
            }
        };
        Ok(MultiarcGraph::from_parts(s, self.k, vertices, adj, completeness))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDto {
    pub vertices: Vec<Vec<ArcDto>>,
    pub length: usize,
}

impl From<&multiarc_core::Path> for PathDto {
    fn from(p: &multiarc_core::Path) -> Self {
        PathDto { vertices: p.vertices.iter().map(multiarc_dto).collect(), length: p.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use multiarc_core::GraphMode;

    #[test]
    fn arcs_round_trip() {
        let a: ArcDto = serde_json::from_str("[0,2]").unwrap();
        assert_eq!(a, ArcDto::Chord([0, 2]));
        let b: ArcDto = serde_json::from_str(r#"{"coords":[1,0,-1]}"#).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"coords":[1,0,-1]}"#);
    }

    #[test]
    fn graphs_round_trip() {
        let s = Surface::polygon(6).unwrap();
        let g = MultiarcGraph::build(&s, 2, GraphMode::Complete).unwrap();
        let dto = GraphDto::from(&g);
        let text = serde_json::to_string(&dto).unwrap();
        let back: GraphDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back, dto);
        assert_eq!(GraphDto::from(&back.to_graph().unwrap()), dto);
    }
}
