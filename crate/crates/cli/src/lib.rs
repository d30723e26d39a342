//! Command line, SVG rendering and the session service for braided wiring
//! diagrams, on top of `braidwork-core`.

pub mod cli;
pub mod input;
pub mod render;
pub mod report;
pub mod server;

pub use render::{render, RenderSpec};
pub use server::{router, AppState};
