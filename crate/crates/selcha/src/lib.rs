//! Certified 2-adic Chabauty data for symmetric squares of odd hyperelliptic
//! curves.
//!
//! The library works with curves `y^2 + y = h(x)` where `h` is monic of
//! degree `2g+1` over the 2-adic integers and the reduction of `h` mod 2
//! satisfies an exponent-set parity condition (`curves::is_good`). For such
//! curves it produces valuation certificates for the logarithm images of the
//! three residue polydisks of the symmetric square, assembles the mod-2
//! image of the projectivised logarithm, and evaluates a rank criterion
//! against Selmer-group input. Exact dyadic densities and a seeded
//! Monte-Carlo model round out the picture.
//!
//! Every numerical statement is computed in exact arithmetic: truncated
//! 2-adic numbers with tracked precision (`dyadic`), bit-packed linear
//! algebra over F_2 (`modp`), and exact dyadic rationals (`density`).
//!
//! The `examples/` directory contains one runnable walkthrough per
//! capability; the `selcha` binary exposes the same operations as
//! subcommands.

pub mod chabauty;
pub mod cli;
pub mod curves;
pub mod density;
pub mod dyadic;
pub mod modp;
pub mod montecarlo;
pub mod series;
