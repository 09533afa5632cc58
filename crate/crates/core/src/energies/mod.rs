//! Boundary energies of vertex sets and the exact cut infimum over
//! separating sets.

pub mod capacity;
pub mod cut;
pub mod hausdorff;
pub mod minkowski;
pub mod perimeter;
pub mod report;

pub use capacity::capacity;
pub use cut::{
    boundary_vertex_energy, brute_force_cut_infimum, min_cut_energy, modulus_connecting,
    CutEnergy, CutWitness, Modulus,
};
pub use hausdorff::{codim_hausdorff, Gauge, HausdorffEstimate};
pub use minkowski::{minkowski_content, RadiusSchedule};
pub use perimeter::{edge_perimeter, perimeter, PerimeterMode};
pub use report::{energy_report, EnergyReport};
