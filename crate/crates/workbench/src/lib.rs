//! Experiment harness and command line for the `irreducibles` crate:
//! prime ideal counts against `Li(x)`, per-class Mertens sums, extremal
//! ideals, maxima of `ν`, and progression counts against their main terms.

pub mod cli;
pub mod experiments;
pub mod li;
pub mod report;
pub mod verify;

pub use experiments::{
    build_extremal_ideal, landau_check, max_nu_scan, mertens_by_class, progression_experiment, ExtremalIdeal,
    FieldProgression, MertensTable, NuScan,
};
pub use li::li;
pub use report::{ExperimentReport, Format};
