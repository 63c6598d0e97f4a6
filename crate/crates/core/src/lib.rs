pub mod decomp;
pub mod dist;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod random;
pub mod report;
pub mod sidorenko;
pub mod strong;
