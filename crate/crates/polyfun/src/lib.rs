//! Text formats, report rendering and the command-line front end for
//! `polyfun-core`.

pub mod cli;
pub mod report;
pub mod text;
