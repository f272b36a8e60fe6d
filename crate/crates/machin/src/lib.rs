//! File formats, trace text and the command-line front end for `machin-core`.

pub mod cli;
pub mod format;
pub mod text;
pub mod trace_text;
