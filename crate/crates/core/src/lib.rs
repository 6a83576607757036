//! Multiarc graphs `A^[k](S)` on compact oriented surfaces with marked points.
//!
//! Two arc models are provided. Convex polygons use chords between labelled
//! vertices, which makes crossing tests exact and cheap. Every other surface
//! uses normal coordinates relative to a fixed ideal triangulation, with flips
//! to compute intersection numbers and cuts.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arcs;
pub mod bcounts;
pub mod combing;
pub mod embed;
pub mod error;
pub mod graph;
pub mod paths;
pub mod polygon;
pub mod surface;
pub mod symmetry;
pub mod triangulated;
pub mod universe;

mod unionfind;

pub use arcs::{Arc, ArcType, Chord, Head, Multiarc, NormalArc, OrientedArc, Triangulation};
pub use error::{Error, Result};
pub use graph::{Completeness, GraphMode, MultiarcGraph};
pub use paths::{Distance, Path};
pub use surface::{Backend, CutComponent, CutResult, Surface, SurfaceSpec};
pub use universe::ArcUniverse;
