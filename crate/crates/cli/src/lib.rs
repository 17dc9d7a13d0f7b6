#![allow(clippy::result_large_err)]

pub mod commands;
pub mod report;
pub mod spec;
pub mod syntax;
