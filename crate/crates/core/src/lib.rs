//! Electromagnetic information theory toolkit for holographic MIMO.

pub mod channels;
pub mod em;
pub mod error;
pub mod experiments;
pub mod infomeasure;
pub mod limits;
pub mod montecarlo;
pub mod numerics;
pub mod packing;
pub mod sampling;

pub use error::{Error, Result};
