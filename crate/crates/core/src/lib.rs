pub mod exact;
pub mod classify;
pub mod graph;
pub mod planar;
pub mod report;
pub mod series;
pub mod symmetry;
