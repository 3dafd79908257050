//! The 1×1 matrix with value a finite set `R`: the monad `X ↦ R^(R^X)`, its
//! algebras on small carriers, and the extension cells between them.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcat::algebra::{canonical_algebra, dedupe_algebras, enumerate_algebras, Algebra};
use crate::setcat::extension::{loose_extension, with_reading};
use crate::setcat::{
    Ctx, FinCategory, LooseReading, Presheaf, PresheafMonad, Profunctor, Side, TightReading,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TxSize {
    pub x: usize,
    /// `|R|^(|R|^|X|)`, in decimal.
    pub predicted: String,
    /// Size of the computed `TX`, when it fits under the caps.
    pub computed: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraCount {
    pub side: &'static str,
    pub carrier: usize,
    pub predicted: usize,
    /// Up to isomorphism; `None` when enumeration hits a cap.
    pub found: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantReport {
    pub r: usize,
    pub tx: Vec<TxSize>,
    pub algebras: Vec<AlgebraCount>,
    /// Carriers where enumeration was out of reach and the power `R^k` was
    /// used as the only algebra.
    pub canonical: Vec<(&'static str, usize)>,
    pub row_carriers: Vec<usize>,
    pub col_carriers: Vec<usize>,
    pub loose: Vec<Vec<usize>>,
    /// Tight cells with a pointwise surjective transpose.
    pub tight: Vec<Vec<usize>>,
    /// Tight cells with a pointwise injective transpose.
    pub tight_injective: Vec<Vec<usize>>,
    /// The expected shape of the tight cells for this `R`, under each reading.
    pub expected_tight: bool,
    pub expected_tight_injective: bool,
}

impl ConstantReport {
    pub fn pass(&self) -> bool {
        self.tx
            .iter()
            .all(|t| t.computed.map_or(true, |c| c.to_string() == t.predicted))
            && self
                .algebras
                .iter()
                .all(|a| a.found.map_or(true, |f| f == a.predicted))
            && self.expected_tight
    }
}

/// Algebras of `R^(R^-)` on a set of size `n`, up to isomorphism. The
/// algebras are the powers `R^k`, so there is one for each `k` with
/// `|R|^k = n`; for `R = ∅` that is `n ∈ {0, 1}`.
pub fn predicted_algebras(r: usize, n: usize) -> usize {
    match r {
        0 => usize::from(n <= 1),
        1 => usize::from(n == 1),
        _ => {
            let mut p = 1;
            while p < n {
                p *= r;
            }
            usize::from(p == n)
        }
    }
}

/// A matrix with a 1 exactly where `σ(i) ≤ τ(j)` in `2 = {0 < 1}`, for some
/// bijections `σ`, `τ`.
fn is_order_on_two(counts: &[Vec<usize>]) -> bool {
    if counts.len() != 2 || counts.iter().any(|r| r.len() != 2) {
        return false;
    }
    let perms = [[0, 1], [1, 0]];
    perms.iter().any(|s| {
        perms
            .iter()
            .any(|t| (0..2).all(|i| (0..2).all(|j| counts[i][j] == usize::from(s[i] <= t[j]))))
    })
}

fn expected(r: usize, loose: &[Vec<usize>], tight: &[Vec<usize>]) -> bool {
    match r {
        0 => is_order_on_two(tight),
        1 => tight == [vec![1]],
        _ => !tight.is_empty() && tight == loose && tight.iter().flatten().any(|&k| k > 0),
    }
}

/// For |R| = `r`: `|TX|` for `|X| ≤ cap`, algebras on carriers `≤ cap`,
/// and the loose and tight cells among the algebras found.
pub fn constant_matrix_report(r: usize, cap: usize, ctx: &mut Ctx) -> Result<ConstantReport> {
    let m = PresheafMonad::new(Profunctor::constant(r));
    let one = FinCategory::discrete(1);
    let mut tx = Vec::new();
    for x in 0..=cap {
        let predicted = BigUint::from(r).pow(
            BigUint::from(r)
                .pow(x as u32)
                .try_into()
                .unwrap_or(u32::MAX),
        );
        let fits = usize::try_from(&predicted).is_ok_and(|v| v <= ctx.max_set);
        let computed = if fits {
            match m.level(Side::Lower, &Presheaf::constant(&one, x), ctx) {
                Ok(l) => Some(l.tx().sizes[0]),
                Err(Error::Cap { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        tx.push(TxSize {
            x,
            predicted: predicted.to_string(),
            computed,
        });
    }
    let mut algebras = Vec::new();
    let (mut rows, mut cols): (Vec<Algebra>, Vec<Algebra>) = (Vec::new(), Vec::new());
    let mut canonical = Vec::new();
    for (side, name) in [(Side::Lower, "rows"), (Side::Upper, "cols")] {
        for n in 0..=cap {
            let found = match enumerate_algebras(&m, side, &Presheaf::constant(&one, n), ctx)
                .and_then(|a| dedupe_algebras(&m, a, ctx))
            {
                Ok(a) => a,
                Err(Error::Cap { .. }) => {
                    algebras.push(AlgebraCount {
                        side: name,
                        carrier: n,
                        predicted: predicted_algebras(r, n),
                        found: None,
                    });
                    // fall back on the algebra `R^k` itself when `|R|^k = n`
                    if let Some(k) = (0..=n).find(|&k| r >= 2 && r.checked_pow(k as u32) == Some(n))
                    {
                        let a = canonical_algebra(&m, side, &Presheaf::constant(&one, k), ctx)?;
                        if side == Side::Lower {
                            &mut rows
                        } else {
                            &mut cols
                        }
                        .push(a);
                        canonical.push((name, n));
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            algebras.push(AlgebraCount {
                side: name,
                carrier: n,
                predicted: predicted_algebras(r, n),
                found: Some(found.len()),
            });
            if side == Side::Lower {
                &mut rows
            } else {
                &mut cols
            }
            .extend(found);
        }
    }
    let row_carriers = rows.iter().map(|a| a.carrier().sizes[0]).collect();
    let col_carriers = cols.iter().map(|a| a.carrier().sizes[0]).collect();
    let e = loose_extension(
        &m,
        rows,
        cols,
        LooseReading::default(),
        TightReading::SurjectiveTranspose,
        ctx,
    )?;
    let loose = e.loose_counts();
    let tight = e.tight_counts();
    let tight_injective = with_reading(&e, TightReading::InjectiveTranspose).tight_counts();
    Ok(ConstantReport {
        r,
        tx,
        algebras,
        canonical,
        row_carriers,
        col_carriers,
        expected_tight: expected(r, &loose, &tight),
        expected_tight_injective: expected(r, &loose, &tight_injective),
        loose,
        tight,
        tight_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions() {
        assert_eq!(
            (0..4).map(|n| predicted_algebras(0, n)).collect::<Vec<_>>(),
            vec![1, 1, 0, 0]
        );
        assert_eq!(
            (0..5).map(|n| predicted_algebras(2, n)).collect::<Vec<_>>(),
            vec![0, 1, 1, 0, 1]
        );
        assert!(is_order_on_two(&[vec![1, 1], vec![1, 0]]));
        assert!(!is_order_on_two(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn r_one() {
        let rep = constant_matrix_report(1, 3, &mut Ctx::default()).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.tight, vec![vec![1]]);
    }

    #[test]
    fn r_zero_counts() {
        let rep = constant_matrix_report(0, 3, &mut Ctx::default()).unwrap();
        assert_eq!(rep.row_carriers, vec![0, 1]);
        assert_eq!(rep.loose, vec![vec![1, 1], vec![1, 0]]);
        assert!(rep.expected_tight_injective);
        assert_eq!(rep.tight, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn r_two_small() {
        let rep = constant_matrix_report(2, 3, &mut Ctx::new(1 << 17, 50_000_000)).unwrap();
        assert_eq!(rep.tx[1].computed, Some(4));
        assert_eq!(rep.row_carriers, vec![1, 2]);
        assert_eq!(rep.col_carriers, vec![1, 2]);
        // cells count maps from the carrier into the set the column is built on
        assert_eq!(rep.loose, vec![vec![0, 1], vec![0, 1]]);
        assert!(!rep.expected_tight);
    }
}
