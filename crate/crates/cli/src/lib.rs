//! Code-source resolution and sweep parsing for the `coverdepth` binary.

pub mod source;
pub mod sweep;
