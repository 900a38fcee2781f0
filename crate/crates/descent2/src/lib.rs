//! IO companion to `descent-core`: proof certificates (JSON wire format with
//! an independent verifier), convergence tables, and a seeded fuzz benchmark.

pub mod bench;
pub mod certificate;
pub mod table;
