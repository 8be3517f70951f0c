//! Hyperbolic planforms on the octagonal lattice.
//!
//! The crate covers Poincaré-disc geometry ([`hypgeo`]), the octagonal
//! lattice and its tessellation by the T(2,3,8) triangle ([`lattice`]), the
//! 96-element symmetry group with its character table and isotropy
//! classification ([`symgroup`]), P1 meshes of the triangle and the octagon
//! ([`mesh`]), a finite-element Laplace–Beltrami eigensolver ([`fem`]), the
//! planform pipeline ([`planforms`]) and the linear stability analysis of the
//! neural-field model ([`neutral`]).

pub mod cli;
pub mod error;
pub mod fem;
pub mod hypgeo;
pub mod lattice;
pub mod mesh;
pub mod neutral;
pub mod planforms;
pub mod symgroup;

pub use error::{Error, Result};
