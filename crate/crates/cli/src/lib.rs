//! Benchmark harness around the `minereduce` solver: instance file parsing,
//! multi-seed experiments with aggregate statistics, paired significance
//! tests, and time-to-target runs.

pub mod experiment;
pub mod instance_format;
pub mod stats;
pub mod ttt;

use minereduce::Algorithm;

/// Stable lowercase names used on the command line and in CSV output.
pub fn algorithm_name(algorithm: Algorithm) -> &'static str {
    match algorithm {
        Algorithm::MsIls => "msils",
        Algorithm::MdmMsIls => "mdm",
        Algorithm::MineReduce => "minereduce",
    }
}

pub fn parse_algorithm(name: &str) -> Option<Algorithm> {
    match name {
        "msils" => Some(Algorithm::MsIls),
        "mdm" => Some(Algorithm::MdmMsIls),
        "minereduce" => Some(Algorithm::MineReduce),
        _ => None,
    }
}
