//! File formats, orchestration and the command-line front end for
//! pie-glyph plots. The geometry itself lives in `glyphplot_core`.

pub mod cli;
pub mod diagnostics;
pub mod emit;
pub mod geojson;
pub mod spec_file;
pub mod table;

pub use glyphplot_core as core;

pub use cli::{parse_args, run, RunConfig};
pub use diagnostics::{Diagnostic, Severity};
