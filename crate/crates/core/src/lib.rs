//! Matrix nuclei at three enrichment levels: boolean contexts, quantale-valued
//! matrices and finite Set-valued profunctors, with checkers for the finite
//! case studies built on top of them.

pub mod bitset;
pub mod cases;
pub mod cli;
pub mod closure;
pub mod context;
pub mod cxt;
pub mod error;
pub mod lattice;
pub mod order;
pub mod quantale;
pub mod report;
pub mod setcat;
pub mod verify;

pub use error::{Error, Result};
