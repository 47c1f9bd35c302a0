pub mod cohomology;
pub mod error;
pub mod groupoid;
pub mod homology;
pub mod limits;
pub mod models;
pub mod skew;
pub mod zlinalg;

pub use error::{Error, Result};
