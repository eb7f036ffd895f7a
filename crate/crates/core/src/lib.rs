//! Diverse clustering particle swarm optimization for dynamic landscapes.
//!
//! The crate has two halves. The optimizer pieces ([`swarm`],
//! [`clustering`], [`population`], [`diversity`]) work against any
//! [`Objective`]. The [`mpb`] module provides the Moving Peaks landscape
//! and [`harness`] ties everything together into seeded, budgeted runs with
//! offline-error and found-peaks metrics.
//!
//! ```no_run
//! use dcpso::harness::{run, ExperimentConfig};
//!
//! let config = ExperimentConfig { environments: 10, ..Default::default() };
//! let result = run(&config, 7).unwrap();
//! println!("offline error {:.3}", result.offline_error);
//! ```

pub mod clustering;
pub mod diversity;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod mpb;
pub mod objective;
pub mod population;
pub mod swarm;

pub use error::{Error, Result};
pub use geometry::Bounds;
pub use objective::{Counted, Objective};
