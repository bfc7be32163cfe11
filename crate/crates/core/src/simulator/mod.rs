//! Time-domain finite element bar used as an independent check of the closed
//! forms: a raised-cosine tone burst is driven into a uniform or two-region
//! mesh, integrated with average acceleration, and measured at probes.

pub mod mesh;
pub mod run;
pub mod signal;
pub mod tridiag;

pub use mesh::{assemble, assemble_with_boundary, Assembled, BarMesh, Boundary};
pub use run::{estimated_group_velocity, run, write_series_csv, Gates, SimConfig, SimRecord, DEFAULT_CYCLES};
