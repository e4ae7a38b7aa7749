pub mod algebra;
pub mod braid;
pub mod burau;
pub mod cli;
pub mod error;
pub mod homcount;
pub mod image;
pub mod tl;

pub use error::{Error, Result};
