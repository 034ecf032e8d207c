//! Gleason elements, division by adapted elements, and explicit surjections
//! from perfectoid Tate algebras onto `K_r^perfd`.

pub mod division;
pub mod schedule;
pub mod surjection;
pub mod wellorder;

pub use crate::adapted::{is_adapted, AdaptedCertificate, AdaptedChecks};
pub use division::{
    divide_step, reconstruct_preimage, rescale_exponent, AdaptedOracle, AdaptedPreimage, DivisionStep, MonomialOracle, Reconstruction,
};
pub use schedule::{
    build_gminus, build_gmultivar, build_gplus, build_lattice, Basis, ConditionChecks, EWindow, GleasonBuild, GleasonSchedule, ScheduleOptions,
    ScheduleStep,
};
pub use surjection::{standard_surjection, SurjectionOptions, SurjectionSpec};
pub use wellorder::{Region, WellOrder};
