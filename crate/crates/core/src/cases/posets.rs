//! A poset seen three ways: as an order matrix between discrete categories,
//! whose subterminal algebras are the cuts; as a category, where images of
//! `H^*` are upper sets; and through its Dedekind-MacNeille completion.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bitset::Subset;
use crate::cases::{guarded, CheckOutcome};
use crate::error::Result;
use crate::lattice::OrderTable;
use crate::order::{dm_completion, FinPoset};
use crate::setcat::algebra::{enumerate_algebras, Algebra};
use crate::setcat::extension::loose_extension;
use crate::setcat::natural::for_each_nat;
use crate::setcat::presheaf::{all_presheaves, subterminal};
use crate::setcat::{
    phi_lower, phi_upper, Ctx, FinCategory, LooseReading, Presheaf, PresheafMonad, Profunctor,
    Side, TightReading,
};

fn bits(n: usize, s: Subset) -> Vec<bool> {
    (0..n).map(|i| s.contains(i)).collect()
}

/// `Some(support)` when every set is empty or a singleton.
fn support(p: &Presheaf) -> Option<Subset> {
    p.sizes
        .iter()
        .enumerate()
        .try_fold(Subset(0), |acc, (i, &k)| match k {
            0 => Some(acc),
            1 => Some(Subset(acc.0 | 1 << i)),
            _ => None,
        })
}

fn inclusion_order(sets: &[Subset], reverse: bool) -> OrderTable {
    OrderTable::from_fn(sets.len(), |i, j| {
        let (a, b) = if reverse {
            (sets[j], sets[i])
        } else {
            (sets[i], sets[j])
        };
        a.0 & !b.0 == 0
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetEquivalence {
    pub size: usize,
    pub cuts: usize,
    pub lower_fixpoints: usize,
    pub upper_fixpoints: usize,
    /// Both Kan extensions send subterminal presheaves to subterminal ones,
    /// computing upper and lower bounds.
    pub restricts: bool,
    /// Fixpoints on each side are the cuts, ordered as the completion.
    pub lower_iso: bool,
    pub upper_iso: bool,
}

impl PosetEquivalence {
    pub fn pass(&self) -> bool {
        self.restricts && self.lower_iso && self.upper_iso
    }
}

/// Fixpoints of the Galois connection that the order matrix induces on
/// subterminal presheaves, on both sides, against the DM completion.
pub fn poset_equivalence_check(p: &FinPoset, ctx: &mut Ctx) -> Result<PosetEquivalence> {
    let n = p.len();
    let phi = Profunctor::order_matrix(p);
    let d = FinCategory::discrete(n);
    let dm = dm_completion(p);
    let dm_order = dm.order_table();
    let cuts: BTreeSet<(u64, u64)> = dm.cuts.iter().map(|c| (c.lower.0, c.upper.0)).collect();
    let mut restricts = true;
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    for s in 0..(1u64 << n) {
        let s = Subset(s);
        let x =
            subterminal(&d, &bits(n, s)).expect("every subset is closed in a discrete category");
        let up = phi_upper(&phi, &x, ctx)?.sheaf;
        let down = phi_lower(&phi, &up, ctx)?.sheaf;
        restricts &= support(&up) == Some(p.ub(s)) && support(&down) == Some(p.lb(p.ub(s)));
        if support(&down) == Some(s) {
            lower.push(s);
        }
        let back = phi_lower(&phi, &x, ctx)?.sheaf;
        let again = phi_upper(&phi, &back, ctx)?.sheaf;
        restricts &= support(&back) == Some(p.lb(s)) && support(&again) == Some(p.ub(p.lb(s)));
        if support(&again) == Some(s) {
            upper.push(s);
        }
    }
    let lower_pairs: BTreeSet<(u64, u64)> = lower.iter().map(|&s| (s.0, p.ub(s).0)).collect();
    let upper_pairs: BTreeSet<(u64, u64)> = upper.iter().map(|&s| (p.lb(s).0, s.0)).collect();
    Ok(PosetEquivalence {
        size: n,
        cuts: cuts.len(),
        lower_fixpoints: lower.len(),
        upper_fixpoints: upper.len(),
        restricts,
        lower_iso: lower_pairs == cuts
            && inclusion_order(&lower, false)
                .isomorphism(&dm_order)
                .is_some(),
        upper_iso: upper_pairs == cuts
            && inclusion_order(&upper, true)
                .isomorphism(&dm_order)
                .is_some(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightCuts {
    pub size: usize,
    pub cuts: usize,
    pub rows: usize,
    pub cols: usize,
    pub loose_cells: usize,
    pub tight_cells: usize,
    /// Nonempty tight cells form a bijection rows ↔ cols.
    pub bijective: bool,
    /// The supports of matched row and column are a cut.
    pub cuts_match: bool,
}

impl TightCuts {
    pub fn pass(&self) -> bool {
        self.bijective && self.cuts_match && self.tight_cells == self.cuts
    }
}

fn subterminal_algebras(
    m: &PresheafMonad,
    side: Side,
    n: usize,
    ctx: &mut Ctx,
) -> Result<Vec<(Subset, Algebra)>> {
    let d = FinCategory::discrete(n);
    let mut out = Vec::new();
    for s in 0..(1u64 << n) {
        let x = subterminal(&d, &bits(n, Subset(s))).expect("discrete");
        for a in enumerate_algebras(m, side, &x, ctx)? {
            out.push((Subset(s), a));
        }
    }
    Ok(out)
}

/// Tight cells of the order matrix over subterminal algebras against the cuts.
pub fn poset_tight_cuts(p: &FinPoset, reading: TightReading, ctx: &mut Ctx) -> Result<TightCuts> {
    let n = p.len();
    let m = PresheafMonad::new(Profunctor::order_matrix(p));
    let rows = subterminal_algebras(&m, Side::Lower, n, ctx)?;
    let cols = subterminal_algebras(&m, Side::Upper, n, ctx)?;
    let e = loose_extension(
        &m,
        rows.iter().map(|r| r.1.clone()).collect(),
        cols.iter().map(|c| c.1.clone()).collect(),
        LooseReading::default(),
        reading,
        ctx,
    )?;
    let cuts: BTreeSet<(u64, u64)> = dm_completion(p)
        .cuts
        .iter()
        .map(|c| (c.lower.0, c.upper.0))
        .collect();
    let tight = e.tight_counts();
    let mut pairs = Vec::new();
    for (i, line) in tight.iter().enumerate() {
        for (j, &k) in line.iter().enumerate() {
            for _ in 0..k {
                pairs.push((i, j));
            }
        }
    }
    let distinct =
        |key: fn(&(usize, usize)) -> usize| pairs.iter().map(key).collect::<BTreeSet<_>>().len();
    let bijective = distinct(|c| c.0) == pairs.len()
        && distinct(|c| c.1) == pairs.len()
        && pairs.len() == rows.len()
        && pairs.len() == cols.len();
    let matched: BTreeSet<(u64, u64)> = pairs
        .iter()
        .map(|&(i, j)| (rows[i].0 .0, cols[j].0 .0))
        .collect();
    Ok(TightCuts {
        size: n,
        cuts: cuts.len(),
        rows: rows.len(),
        cols: cols.len(),
        loose_cells: e.loose_counts().iter().flatten().sum(),
        tight_cells: pairs.len(),
        bijective,
        cuts_match: matched == cuts,
    })
}

/// On the poset as a category, `H^*X` is the upper set `ub(supp X)` and its
/// retracts are again such upper sets.
pub fn poset_image_retracts(p: &FinPoset, max_size: usize, ctx: &Ctx) -> Result<CheckOutcome> {
    let name = "retracts of images of H^* are images of lower sets";
    let limit = ctx.budget.limit();
    guarded(name, || {
        let mut ctx = Ctx::new(ctx.max_set, limit);
        let mut out = CheckOutcome::new(name);
        let n = p.len();
        let c = FinCategory::from_poset(p);
        let op = c.opposite();
        let h = Profunctor::hom(&c);
        let lowers: Vec<Subset> = (0..1u64 << n)
            .map(Subset)
            .filter(|&s| p.is_lower_set(s))
            .collect();
        let images: BTreeSet<u64> = lowers.iter().map(|&l| p.ub(l).0).collect();
        for x in all_presheaves(&c, max_size, &mut ctx.budget)? {
            let supp = Subset(
                (0..n)
                    .filter(|&i| x.sizes[i] > 0)
                    .fold(0, |a, i| a | 1 << i),
            );
            let u = phi_upper(&h, &x, &mut ctx)?.sheaf;
            out.cases += 1;
            if support(&u) != Some(p.ub(supp)) {
                out.fail(format!(
                    "H^* of sizes {:?} has sizes {:?}",
                    x.sizes, u.sizes
                ));
                continue;
            }
            let mut bad = None;
            for_each_nat(&op, &u, &u, None, &mut ctx.budget, &mut |e| {
                if e.after(e) == *e {
                    let r: Vec<usize> =
                        e.comps.iter().map(|c| usize::from(!c.is_empty())).collect();
                    let s = r
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .fold(0u64, |a, (i, _)| a | 1 << i);
                    if !images.contains(&s) {
                        bad = Some(s);
                    }
                }
                bad.is_none()
            })?;
            if let Some(s) = bad {
                out.fail(format!(
                    "H^* of sizes {:?} has a retract supported on {s:#b}",
                    x.sizes
                ));
            }
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::posets_up_to_iso;

    fn n_shape() -> FinPoset {
        FinPoset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn antichain_chain_and_n() {
        let mut ctx = Ctx::default();
        let a = poset_equivalence_check(&FinPoset::antichain(2), &mut ctx).unwrap();
        assert!(a.pass());
        assert_eq!((a.lower_fixpoints, a.cuts), (4, 4));
        let c = poset_equivalence_check(&FinPoset::chain(4), &mut ctx).unwrap();
        assert!(c.pass());
        assert_eq!((c.lower_fixpoints, c.cuts), (4, 4));
        assert!(poset_equivalence_check(&n_shape(), &mut ctx)
            .unwrap()
            .pass());
    }

    #[test]
    fn all_posets_up_to_four() {
        let mut ctx = Ctx::default();
        for n in 0..=4 {
            for p in posets_up_to_iso(n) {
                assert!(
                    poset_equivalence_check(&p, &mut ctx).unwrap().pass(),
                    "{p:?}"
                );
            }
        }
    }

    #[test]
    fn tight_cells_are_cuts() {
        let mut ctx = Ctx::default();
        for p in [FinPoset::antichain(2), FinPoset::chain(3), n_shape()] {
            let t = poset_tight_cuts(&p, TightReading::default(), &mut ctx).unwrap();
            assert!(t.pass(), "{t:?}");
        }
    }

    #[test]
    fn image_retracts() {
        let ctx = Ctx::default();
        for p in posets_up_to_iso(3) {
            let out = poset_image_retracts(&p, 2, &ctx).unwrap();
            assert!(out.pass && out.skipped.is_none(), "{out:?}");
        }
    }
}
