//! Closure operators on subsets of a small carrier and their fixpoints.
//!
//! Fixpoints are produced by NextClosure, which visits closed sets in lectic
//! order: `A < B` iff the least element of the symmetric difference lies in
//! `B`. The first closed set is `c(∅)`, the last is the full carrier.

use crate::bitset::Subset;
use crate::error::{Error, Result};

/// Largest carrier for which [`validate_closure`] checks all `2^n` subsets.
pub const EXHAUSTIVE_VALIDATION_LIMIT: usize = 12;

/// Successor of `current` in lectic order among the closed sets, if any.
pub fn next_closed<F>(n: usize, current: Subset, closure: &F) -> Option<Subset>
where
    F: Fn(Subset) -> Subset,
{
    for i in (0..n).rev() {
        if current.contains(i) {
            continue;
        }
        let candidate = closure(current.below(i).with(i));
        if candidate.difference(current).below(i).is_empty() {
            return Some(candidate);
        }
    }
    None
}

/// All closed sets of `closure` on `0..n`, in lectic order.
pub fn next_closure<F>(n: usize, closure: F) -> Vec<Subset>
where
    F: Fn(Subset) -> Subset,
{
    let mut out = vec![closure(Subset::EMPTY)];
    while let Some(next) = next_closed(n, *out.last().unwrap(), &closure) {
        out.push(next);
    }
    out
}

/// Checks extensivity, monotonicity and idempotence on every subset when the
/// carrier is small enough; larger carriers are accepted unchecked.
pub fn validate_closure<F>(n: usize, closure: &F) -> Result<()>
where
    F: Fn(Subset) -> Subset,
{
    if n > EXHAUSTIVE_VALIDATION_LIMIT {
        return Ok(());
    }
    let images: Vec<Subset> = Subset::all(n).map(|s| closure(s)).collect();
    for s in Subset::all(n) {
        let cs = images[s.0 as usize];
        if !cs.is_subset(Subset::full(n)) {
            return Err(Error::Contract(format!(
                "closure of {s:?} leaves the carrier"
            )));
        }
        if !s.is_subset(cs) {
            return Err(Error::Contract(format!("not extensive at {s:?}")));
        }
        if images[cs.0 as usize] != cs {
            return Err(Error::Contract(format!("not idempotent at {s:?}")));
        }
        // Monotonicity only needs single-element extensions.
        for i in 0..n {
            if !s.contains(i) && !cs.is_subset(images[s.with(i).0 as usize]) {
                return Err(Error::Contract(format!("not monotone at {s:?} + {i}")));
            }
        }
    }
    Ok(())
}

/// All fixpoints of a closure operator in lectic order, after validation.
pub fn closure_fixpoints<F>(n: usize, closure: F) -> Result<Vec<Subset>>
where
    F: Fn(Subset) -> Subset,
{
    validate_closure(n, &closure)?;
    Ok(next_closure(n, closure))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_fixpoints<F: Fn(Subset) -> Subset>(n: usize, c: F) -> Vec<Subset> {
        Subset::all(n).filter(|&s| c(s) == s).collect()
    }

    #[test]
    fn identity_has_all_subsets_as_fixpoints() {
        let fix = closure_fixpoints(2, |s| s).unwrap();
        assert_eq!(fix.len(), 4);
    }

    #[test]
    fn constant_full_has_one_fixpoint() {
        let fix = closure_fixpoints(3, |_| Subset::full(3)).unwrap();
        assert_eq!(fix, vec![Subset::full(3)]);
    }

    #[test]
    fn lectic_order_on_identity() {
        // Least differing element decides, so {0} comes after everything without 0.
        let fix = next_closure(2, |s| s);
        assert_eq!(
            fix,
            vec![
                Subset::EMPTY,
                Subset::from_ids([1]),
                Subset::from_ids([0]),
                Subset::full(2)
            ]
        );
    }

    #[test]
    fn rejects_non_closure() {
        // Complement is neither extensive nor monotone.
        let err = closure_fixpoints(2, |s| Subset::full(2).difference(s)).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        // Extensive and idempotent but not monotone.
        let weird = |s: Subset| {
            if s == Subset::from_ids([0]) {
                Subset::from_ids([0, 1])
            } else {
                s
            }
        };
        let err = closure_fixpoints(3, weird).unwrap_err();
        assert!(err.to_string().contains("monotone"));
    }

    #[test]
    fn matches_brute_force_on_upward_closure() {
        // Close under "i in S implies i+1 in S" on 0..6.
        let c = |s: Subset| match s.min() {
            None => s,
            Some(m) => s.union(Subset::full(6).difference(Subset::full(m))),
        };
        let mut fast = closure_fixpoints(6, c).unwrap();
        fast.sort();
        assert_eq!(fast, brute_fixpoints(6, c));
    }
}
