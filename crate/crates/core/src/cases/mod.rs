//! Executable checks for the worked examples: constant matrices, groups and
//! their G-sets, posets, cyclic groups of prime order, and the split
//! coequalizers behind the monadicity arguments.

use serde::Serialize;

use crate::error::{Error, Result};

pub mod coequalizer;
pub mod constant;
pub mod group;
pub mod gset;
pub mod images;
pub mod posets;
pub mod zp;
pub mod zp_table;

/// One named check over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    /// Cases examined.
    pub cases: usize,
    /// Set when the check stopped at a size limit.
    pub skipped: Option<String>,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            pass: true,
            cases: 0,
            skipped: None,
            witness: None,
        }
    }
    pub fn fail(&mut self, w: String) {
        if self.pass {
            self.witness = Some(w);
        }
        self.pass = false;
    }
}

/// A check that runs out of room is reported as skipped rather than failed.
pub(crate) fn guarded(
    name: &'static str,
    run: impl FnOnce() -> Result<CheckOutcome>,
) -> Result<CheckOutcome> {
    match run() {
        Err(Error::Cap { what, size, limit }) => {
            let mut out = CheckOutcome::new(name);
            out.skipped = Some(format!("{what}: {size} exceeds {limit}"));
            Ok(out)
        }
        r => r,
    }
}
