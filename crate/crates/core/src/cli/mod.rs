//! Config-driven front end: scene files, the four commands and their outputs.

mod commands;
mod config;

pub use commands::{run_field, run_force, run_particle, run_simulate, trajectory_text, FieldReport, ForceReport, ParticleReport, SimulateReport, Sweep};
pub use config::{
    ArrayConfig, DynamicsConfig, FieldConfig, MediumConfig, NumericsConfig, OutputConfig, ParticleConfig, PlaneConfig, PoseConfig, SceneConfig, SourceConfig,
};
