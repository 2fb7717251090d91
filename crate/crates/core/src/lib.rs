//! Exact Baues-Wirsching cohomology of finite categories with coefficients
//! in natural systems, Grothendieck constructions of diagrams of finite
//! categories, and the spectral sequences relating them.

pub mod error;
pub mod fincat;
pub mod homalg;
pub mod natsys;
pub mod bw;
pub mod report;
pub mod grothendieck;
pub mod instances;
pub mod spectral;
pub mod workbench;

pub use error::{Error, Result};
