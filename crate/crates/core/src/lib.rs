//! Composable adversarial attacks on text models.
//!
//! An attack is assembled from a goal function, a list of constraints, a
//! transformation and a search method. The same components drive data
//! augmentation and adversarial training.

pub mod attack;
pub mod augment;
pub mod component;
pub mod constraints;
pub mod dataset;
pub mod error;
pub mod goal;
pub mod metrics;
pub mod model;
pub mod report;
pub mod resources;
pub mod search;
pub mod text;
pub mod training;
pub mod transform;

pub use error::{Error, Result};
