//! Command implementations behind the `absnum` binary, and the brute-force
//! oracles used by the acceptance suite.

pub mod commands;
pub mod oracle;
