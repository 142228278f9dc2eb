pub mod canonical;
pub mod classifier;
pub mod cohomology;
pub mod coloring;
pub mod error;
pub mod gf2;
pub mod gl3;
pub mod prism;
pub mod reduction;
pub mod sector_ops;
pub mod verify;

pub use coloring::{Color, Coloring, NontrivialStats};
pub use error::Error;
