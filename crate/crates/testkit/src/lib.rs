//! Test support: brute-force oracles and seeded random instances.

pub mod oracle;
pub mod random;
