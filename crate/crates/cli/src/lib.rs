//! Library side of the `lineometer` command: input handling, report
//! rendering and SVG charts.

pub mod calibrate;
pub mod input;
pub mod plot;
pub mod render;
pub mod svg;
