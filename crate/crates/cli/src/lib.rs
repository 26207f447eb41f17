//! Verification harness for the horofunction compactification library.

pub mod checks;
pub mod commands;
pub mod config;
pub mod descriptor;
pub mod report;
pub mod sampling;
