//! The nine regimes of a vector `Φ = (Φ₁|Φ_p): 1 ⇸ ℤp` and the restricted
//! adjunctions predicted for them: which sets and which ℤp-sets can occur as
//! retracts of images, the shape of reflexive pairs, and the algebras.

use serde::Serialize;

use crate::cases::coequalizer::{is_injective, is_pullback};
use crate::cases::group::group_as_category;
use crate::cases::gset::{equivariant_maps, retracts, GSet};
use crate::cases::zp::{zp_hom_count, ZpVector};
use crate::cases::{guarded, CheckOutcome};
use crate::error::{Error, Result};
use crate::setcat::algebra::{dedupe_algebras, enumerate_algebras};
use crate::setcat::natural::{Budget, NatTrans};
use crate::setcat::{Ctx, FinCategory, Presheaf, PresheafMonad, Profunctor, Side};

/// The vector as a profunctor from the one-object discrete category.
pub fn vector_profunctor(phi: &ZpVector) -> Profunctor {
    let g = phi.to_gset();
    let cat = group_as_category(&g.group);
    let n = phi.size();
    Profunctor::new(
        FinCategory::discrete(1),
        cat,
        vec![vec![n]],
        vec![vec![(0..n).collect()]],
        g.act.iter().map(|a| vec![a.clone()]).collect(),
    )
    .expect("a ℤp-set is a vector")
}

/// Which sets the cell allows on the `Set` side.
pub fn allowed_set(phi: &ZpVector, n: usize) -> bool {
    match (phi.one, phi.free) {
        (0, 0) => n <= 1,
        (1, 0) => n == 1,
        _ => true,
    }
}

/// Which ℤp-sets the cell allows on the other side.
pub fn allowed_gset(phi: &ZpVector, v: &ZpVector) -> bool {
    let point = v.one == 1 && v.free == 0;
    match (phi.one, phi.free) {
        (0, 0) => point || v.size() == 0,
        (0, _) => point || v.one == 0,
        (1, 0) => point,
        (1, _) => v.one == 1,
        (_, 0) => v.free == 0,
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZpTableReport {
    pub phi: ZpVector,
    pub checks: Vec<CheckOutcome>,
}

impl ZpTableReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn vectors(p: usize, bound: usize) -> Vec<ZpVector> {
    (0..=bound)
        .flat_map(|a| (0..=bound).map(move |b| ZpVector { p, one: a, free: b }))
        .collect()
}

fn small(n: &num_bigint::BigUint, cap: usize) -> Option<usize> {
    usize::try_from(n).ok().filter(|&v| v <= cap)
}

/// Retracts of images on both sides stay inside the predicted categories.
fn check_images(phi: &ZpVector, cap: usize, budget: &mut Budget) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("retracts of images");
    for u in vectors(phi.p, 2) {
        let Some(n) = small(&zp_hom_count(&u, phi)?, usize::MAX) else {
            continue;
        };
        // a set of size n has retracts of every size 1..=n, and only ∅ if n = 0
        let sizes = if n == 0 { vec![0] } else { vec![1, n] };
        out.cases += 1;
        if let Some(&bad) = sizes.iter().find(|&&s| !allowed_set(phi, s)) {
            out.fail(format!(
                "Φ_*({}|{}) has a retract of size {bad}",
                u.one, u.free
            ));
        }
    }
    for l in 0..=3u32 {
        let v = phi.power(l)?;
        if v.size() > cap {
            break;
        }
        let rs = match retracts(&v.to_gset(), budget) {
            Ok(rs) => rs,
            Err(Error::Cap { .. }) => {
                out.skipped = Some(format!("retracts of Φ^{l} exceed the budget"));
                break;
            }
            Err(e) => return Err(e),
        };
        out.cases += 1;
        for r in rs {
            let w = ZpVector::from_gset(&r)?;
            if !allowed_gset(phi, &w) {
                out.fail(format!("Φ^{l} has the retract ({}|{})", w.one, w.free));
            }
        }
    }
    Ok(out)
}

/// Normalizes a reflexive pair on the free parts: base points with
/// `f(b(o)) = b'(f̄ o)` and `g(b(o)) = b'(ḡ o)`. Returns the induced maps on
/// fixed points and on orbits.
fn normal_form(
    u: &GSet,
    v: &GSet,
    f: &[usize],
    g: &[usize],
) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let (uo, vo) = (u.orbits(), v.orbits());
    let orbit_of = |orbits: &[Vec<usize>], x: usize| {
        orbits.iter().position(|o| o.contains(&x)).expect("covered")
    };
    let (ufix, ufree): (Vec<usize>, Vec<usize>) = (0..uo.len()).partition(|&i| uo[i].len() == 1);
    let (vfix, vfree): (Vec<usize>, Vec<usize>) = (0..vo.len()).partition(|&i| vo[i].len() == 1);
    let mut pair = Vec::new();
    for m in [f, g] {
        let fix: Option<Vec<usize>> = ufix
            .iter()
            .map(|&i| vfix.iter().position(|&j| j == orbit_of(&vo, m[uo[i][0]])))
            .collect();
        let free: Option<Vec<usize>> = ufree
            .iter()
            .map(|&i| vfree.iter().position(|&j| j == orbit_of(&vo, m[uo[i][0]])))
            .collect();
        pair.push((fix?, free?));
    }
    let p = u.group.order();
    let k = vfree.len();
    // base points of the target orbits, as offsets within each orbit
    let mut choice = vec![0usize; k];
    loop {
        let base = |j: usize| vo[vfree[j]][choice[j]];
        let ok = ufree.iter().enumerate().all(|(n, &i)| {
            let b = uo[i].iter().copied().find(|&x| f[x] == base(pair[0].1[n]));
            b.is_some_and(|b| g[b] == base(pair[1].1[n]))
        });
        if ok {
            return Some((
                vec![pair[0].0.clone(), pair[1].0.clone()],
                vec![pair[0].1.clone(), pair[1].1.clone()],
            ));
        }
        let mut i = 0;
        while i < k && choice[i] + 1 == p {
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            return None;
        }
        choice[i] += 1;
    }
}

/// Reflexive pairs decompose into fixed and free parts whose equalizer
/// squares are pullbacks of injections.
fn check_reflexive_pairs(p: usize, max_size: usize, budget: &mut Budget) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("reflexive pairs split into fixed and free parts");
    let sets: Vec<ZpVector> = vectors(p, max_size)
        .into_iter()
        .filter(|v| v.size() <= max_size)
        .collect();
    for a in &sets {
        for b in &sets {
            let (u, v) = (a.to_gset(), b.to_gset());
            let maps: Vec<NatTrans> = equivariant_maps(&u, &v, budget)?;
            let backs: Vec<NatTrans> = equivariant_maps(&v, &u, budget)?;
            for f in &maps {
                for g in &maps {
                    let (f, g) = (&f.comps[0], &g.comps[0]);
                    let reflexive = backs.iter().any(|r| {
                        let r = &r.comps[0];
                        (0..u.size()).all(|x| r[f[x]] == x && r[g[x]] == x)
                    });
                    if !reflexive {
                        continue;
                    }
                    out.cases += 1;
                    let ok = normal_form(&u, &v, f, g).is_some_and(|(fix, free)| {
                        let (nf, np) = (b.one, b.free);
                        is_injective(&fix[0], nf)
                            && is_injective(&fix[1], nf)
                            && is_pullback(&fix[0], &fix[1])
                            && is_injective(&free[0], np)
                            && is_injective(&free[1], np)
                            && is_pullback(&free[0], &free[1])
                    });
                    if !ok {
                        out.fail(format!(
                            "({}|{}) ⇉ ({}|{}): f = {f:?}, g = {g:?}",
                            a.one, a.free, b.one, b.free
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Algebras of `Φ_*Φ^*` on small sets, up to isomorphism, against the
/// number of allowed ℤp-sets `V` with `|Φ_*V| = n`.
fn check_algebras(phi: &ZpVector, max_carrier: usize, ctx: &mut Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("algebras match the predicted category");
    let m = PresheafMonad::new(vector_profunctor(phi));
    let one = FinCategory::discrete(1);
    for n in 0..=max_carrier {
        let predicted = vectors(phi.p, max_carrier + 2)
            .into_iter()
            .filter(|v| allowed_gset(phi, v))
            .filter(|v| {
                zp_hom_count(v, phi)
                    .map(|c| small(&c, usize::MAX) == Some(n))
                    .unwrap_or(false)
            })
            .count();
        let found = match enumerate_algebras(&m, Side::Lower, &Presheaf::constant(&one, n), ctx)
            .and_then(|algs| dedupe_algebras(&m, algs, ctx))
        {
            Ok(a) => a.len(),
            Err(Error::Cap { .. }) => {
                out.skipped = Some(format!("carriers from {n} on exceed the size limits"));
                break;
            }
            Err(e) => return Err(e),
        };
        out.cases += 1;
        if found != predicted || (found > 0 && !allowed_set(phi, n)) {
            out.fail(format!(
                "carrier {n}: {found} algebras, {predicted} predicted"
            ));
        }
    }
    Ok(out)
}

/// Each check gets its own budget of `ctx.budget.limit()` steps.
pub fn verify_zp_table(phi: &ZpVector, cap: usize, ctx: &Ctx) -> Result<ZpTableReport> {
    let limit = ctx.budget.limit();
    let checks = vec![
        guarded("retracts of images", || {
            check_images(phi, cap, &mut Budget::new(limit))
        })?,
        guarded("reflexive pairs split into fixed and free parts", || {
            check_reflexive_pairs(phi.p, cap.min(4), &mut Budget::new(limit))
        })?,
        guarded("algebras match the predicted category", || {
            check_algebras(phi, 3, &mut Ctx::new(ctx.max_set, limit))
        })?,
    ];
    Ok(ZpTableReport { phi: *phi, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_vector_has_two_algebras() {
        let phi = ZpVector::new(2, 0, 0).unwrap();
        let m = PresheafMonad::new(vector_profunctor(&phi));
        let mut ctx = Ctx::default();
        let one = FinCategory::discrete(1);
        let total: usize = (0..=3)
            .map(|n| {
                enumerate_algebras(&m, Side::Lower, &Presheaf::constant(&one, n), &mut ctx)
                    .unwrap()
                    .len()
            })
            .sum();
        assert_eq!(total, 2);
        assert!(verify_zp_table(&phi, 4, &ctx).unwrap().pass());
    }

    #[test]
    fn point_vector_has_one_algebra() {
        let phi = ZpVector::new(2, 1, 0).unwrap();
        let ctx = Ctx::default();
        let rep = verify_zp_table(&phi, 4, &ctx).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn free_cell() {
        let phi = ZpVector::new(2, 0, 1).unwrap();
        let ctx = Ctx::default();
        let rep = verify_zp_table(&phi, 4, &ctx).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn all_regimes_at_two() {
        for (a, b) in [
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (1, 2),
            (2, 0),
            (2, 1),
            (2, 2),
        ] {
            let phi = ZpVector::new(2, a, b).unwrap();
            let rep = verify_zp_table(&phi, 8, &Ctx::default()).unwrap();
            assert!(rep.pass(), "{rep:?}");
            assert!(rep.checks.iter().map(|c| c.cases).sum::<usize>() > 0);
        }
    }
}
