//! Two-dimensional articulatory model of the vocal tract.
//!
//! A [`params::ControlState`] of ten continuous and six discrete controls is
//! solved against a [`geometry::PrototypeLibrary`] into an
//! [`solver::ArticulatorFrame`] of midsagittal contours, which [`views`] turns
//! into sagittal, glottal and palatal scenes.

pub mod cli;
pub mod data;
pub mod geometry;
pub mod params;
pub mod presets;
pub mod sequencer;
pub mod service;
pub mod solver;
pub mod views;

pub use data::Model;
pub use solver::solve;
