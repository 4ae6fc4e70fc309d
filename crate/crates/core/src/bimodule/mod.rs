//! Bimodules over finite linear categories, module homs, bar resolutions and windowed Ext.

#[allow(clippy::module_inception)]
pub mod bimodule;
pub mod bar;
pub mod modhom;

pub use bar::{bar_resolution, ext_window, BarResolution, DEFAULT_DIM_CAP};
pub use bimodule::{Bimodule, OneSidedModule};
pub use modhom::{module_hom, ModuleHom};
