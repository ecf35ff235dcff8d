pub mod cli;
pub mod convexity;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod hyperbolic;
pub mod io;
pub mod lemmas;
pub mod models;
pub mod numerics;
pub mod plot;
pub mod spherical;
pub mod verify;

pub use error::{GeomError, Result};
