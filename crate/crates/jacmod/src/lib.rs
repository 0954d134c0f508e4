//! Certified complex-analytic arithmetic in the Jacobian of the modular
//! curves X0(p), for p prime.
//!
//! The library computes Hecke eigenforms by exact linear algebra on Manin
//! symbols, the period lattice by certified Eichler integration, the
//! Abel-Jacobi map on a two-chart analytic model of the curve, and the
//! group law plus the inverse Jacobi problem on the Jacobian, with every
//! analytic step carried out in outward-rounded ball arithmetic.

pub mod ball;
pub mod error;
pub mod linalg;
pub mod series;
pub mod zeros;

pub use error::Error;

/// Working-precision ladder: geometric escalation on certification failure.
pub fn escalate(prec: u32) -> u32 {
    prec.saturating_mul(2)
}

/// CLI entry point; returns the process exit code.
pub fn run_cli() -> i32 {
    eprintln!("jacmod: CLI not wired yet");
    2
}
