//! Batch front-end for `ncchar`: loads states and groups, runs transforms and
//! criteria, and emits text or JSON run reports.

pub mod cli;
pub mod commands;
pub mod report;
pub mod spec;
