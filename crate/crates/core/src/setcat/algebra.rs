//! Eilenberg–Moore algebras of the monads in [`crate::setcat::monad`]:
//! brute-force enumeration, the canonical algebras coming from the other side
//! of the adjunction, free algebras, morphisms and isomorphism.

use crate::error::{Error, Result};
use crate::setcat::kan::Ctx;
use crate::setcat::monad::{Level, PresheafMonad, Side};
use crate::setcat::natural::{for_each_nat, NatTrans};
use crate::setcat::presheaf::Presheaf;

#[derive(Clone, Debug)]
pub struct Algebra {
    pub level: Level,
    /// `a: TX → X`.
    pub structure: NatTrans,
}

impl Algebra {
    pub fn side(&self) -> Side {
        self.level.side
    }

    pub fn carrier(&self) -> &Presheaf {
        &self.level.carrier
    }
}

/// Tables for `Φ^*(f)` as index maps between first extensions.
fn pull_table(from: &Level, to_up: &Level, f: &NatTrans) -> Vec<Vec<usize>> {
    to_up
        .up
        .elems
        .iter()
        .enumerate()
        .map(|(u, cs)| cs.iter().map(|c| from.up.precompose(u, c, f)).collect())
        .collect()
}

/// `a∘η = id` and `a∘μ = a∘T(a)`, given the level on `TX`.
pub fn is_algebra(m: &PresheafMonad, level: &Level, next: &Level, a: &NatTrans) -> bool {
    if a.after(&level.eta()) != NatTrans::identity(&level.carrier) {
        return false;
    }
    associative(level, next, &m.mu(level, next), a)
}

fn associative(level: &Level, next: &Level, mu: &NatTrans, a: &NatTrans) -> bool {
    // T(a)(K) = K ∘ Φ^*(a), where Φ^*(a) sends a cone c on X to c∘a on TX.
    let pull = pull_table(next, level, a);
    next.t.elems.iter().enumerate().all(|(x, ks)| {
        ks.iter().enumerate().all(|(j, k)| {
            let moved = NatTrans {
                comps: pull
                    .iter()
                    .enumerate()
                    .map(|(u, p)| p.iter().map(|&c| k.comps[u][c]).collect())
                    .collect(),
            };
            let ta = level.t.index_of(x, &moved).expect("T preserves naturality");
            a.comps[x][mu.comps[x][j]] == a.comps[x][ta]
        })
    })
}

/// Every algebra structure on `carrier`, by search over maps `TX → X` with
/// `a∘η = id` forced, filtered by associativity on `TTX`.
pub fn enumerate_algebras(
    m: &PresheafMonad,
    side: Side,
    carrier: &Presheaf,
    ctx: &mut Ctx,
) -> Result<Vec<Algebra>> {
    let level = m.level(side, carrier, ctx)?;
    let eta = level.eta();
    if !eta.is_injective() {
        return Ok(Vec::new());
    }
    let next = m.level(side, level.tx(), ctx)?;
    let mu = m.mu(&level, &next);
    let mut fixed: Vec<Vec<Option<usize>>> =
        level.tx().sizes.iter().map(|&n| vec![None; n]).collect();
    for (x, comp) in eta.comps.iter().enumerate() {
        for (e, &k) in comp.iter().enumerate() {
            fixed[x][k] = Some(e);
        }
    }
    let base = m.base(side).clone();
    let mut found = Vec::new();
    for_each_nat(
        &base,
        level.tx(),
        carrier,
        Some(&fixed),
        &mut ctx.budget,
        &mut |a| {
            if associative(&level, &next, &mu, a) {
                found.push(a.clone());
            }
            true
        },
    )?;
    found.sort();
    Ok(found
        .into_iter()
        .map(|structure| Algebra {
            level: level.clone(),
            structure,
        })
        .collect())
}

/// The free algebra `(TX, μ)`.
pub fn free_algebra(m: &PresheafMonad, side: Side, x: &Presheaf, ctx: &mut Ctx) -> Result<Algebra> {
    let l0 = m.level(side, x, ctx)?;
    let l1 = m.level(side, l0.tx(), ctx)?;
    let mu = m.mu(&l0, &l1);
    Ok(Algebra {
        level: l1,
        structure: mu,
    })
}

/// The algebra on the extension of `y` from the other side, with structure
/// `K ↦ K ∘ η_y`. These are exactly the algebras in the image of the
/// comparison functor, so no law search is needed.
pub fn canonical_algebra(
    m: &PresheafMonad,
    side: Side,
    y: &Presheaf,
    ctx: &mut Ctx,
) -> Result<Algebra> {
    let other = m.level(side.flip(), y, ctx)?;
    let eta_y = other.eta();
    let carrier = other.up.sheaf.clone();
    let level = m.level(side, &carrier, ctx)?;
    debug_assert_eq!(level.up.elems, other.t.elems);
    let comps = level
        .t
        .elems
        .iter()
        .enumerate()
        .map(|(x, ks)| {
            ks.iter()
                .map(|k| {
                    let back = NatTrans {
                        comps: eta_y
                            .comps
                            .iter()
                            .enumerate()
                            .map(|(u, e)| e.iter().map(|&d| k.comps[u][d]).collect())
                            .collect(),
                    };
                    other
                        .up
                        .index_of(x, &back)
                        .expect("restriction along the unit is a cone")
                })
                .collect()
        })
        .collect();
    let structure = NatTrans { comps };
    if structure.after(&level.eta()) != NatTrans::identity(&carrier) {
        return Err(Error::law("canonical structure fails the unit law"));
    }
    Ok(Algebra { level, structure })
}

/// Associativity of a structure map, computing `TTX` on the spot.
pub fn verify_algebra(m: &PresheafMonad, alg: &Algebra, ctx: &mut Ctx) -> Result<bool> {
    let next = m.level(alg.side(), alg.level.tx(), ctx)?;
    Ok(is_algebra(m, &alg.level, &next, &alg.structure))
}

/// Natural maps `f: X → Y` with `f∘a = b∘T(f)`.
pub fn algebra_morphisms(
    m: &PresheafMonad,
    a: &Algebra,
    b: &Algebra,
    ctx: &mut Ctx,
) -> Result<Vec<NatTrans>> {
    let base = m.base(a.side()).clone();
    let mut out = Vec::new();
    for_each_nat(
        &base,
        a.carrier(),
        b.carrier(),
        None,
        &mut ctx.budget,
        &mut |f| {
            let tf = m.t_map(&a.level, &b.level, f);
            if f.after(&a.structure) == b.structure.after(&tf) {
                out.push(f.clone());
            }
            true
        },
    )?;
    Ok(out)
}

pub fn algebras_isomorphic(
    m: &PresheafMonad,
    a: &Algebra,
    b: &Algebra,
    ctx: &mut Ctx,
) -> Result<bool> {
    if a.side() != b.side() || a.carrier().sizes != b.carrier().sizes {
        return Ok(false);
    }
    let base = m.base(a.side()).clone();
    let mut found = false;
    for_each_nat(
        &base,
        a.carrier(),
        b.carrier(),
        None,
        &mut ctx.budget,
        &mut |f| {
            if f.is_injective() {
                let tf = m.t_map(&a.level, &b.level, f);
                found = f.after(&a.structure) == b.structure.after(&tf);
            }
            !found
        },
    )?;
    Ok(found)
}

/// Keeps the first algebra of each isomorphism class.
pub fn dedupe_algebras(
    m: &PresheafMonad,
    algs: Vec<Algebra>,
    ctx: &mut Ctx,
) -> Result<Vec<Algebra>> {
    let mut kept: Vec<Algebra> = Vec::new();
    for a in algs {
        let mut dup = false;
        for k in &kept {
            if algebras_isomorphic(m, k, &a, ctx)? {
                dup = true;
                break;
            }
        }
        if !dup {
            kept.push(a);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::category::FinCategory;
    use crate::setcat::presheaf::yoneda_pre;
    use crate::setcat::profunctor::Profunctor;

    fn z2() -> FinCategory {
        FinCategory::one_object(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn constant_one_and_zero() {
        let d = FinCategory::discrete(1);
        let mut ctx = Ctx::default();
        let m1 = PresheafMonad::new(Profunctor::constant(1));
        let counts: Vec<usize> = (0..=3)
            .map(|x| {
                enumerate_algebras(&m1, Side::Lower, &Presheaf::constant(&d, x), &mut ctx)
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![0, 1, 0, 0]);
        let m0 = PresheafMonad::new(Profunctor::constant(0));
        let counts: Vec<usize> = (0..=3)
            .map(|x| {
                enumerate_algebras(&m0, Side::Lower, &Presheaf::constant(&d, x), &mut ctx)
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 0, 0]);
    }

    #[test]
    fn constant_two_small_carriers() {
        let d = FinCategory::discrete(1);
        let mut ctx = Ctx::new(1 << 16, 100_000_000);
        let m = PresheafMonad::new(Profunctor::constant(2));
        assert!(
            enumerate_algebras(&m, Side::Lower, &Presheaf::constant(&d, 0), &mut ctx)
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            enumerate_algebras(&m, Side::Lower, &Presheaf::constant(&d, 1), &mut ctx)
                .unwrap()
                .len(),
            1
        );
        let c = canonical_algebra(&m, Side::Lower, &Presheaf::constant(&d, 1), &mut ctx).unwrap();
        assert_eq!(c.carrier().sizes, vec![2]);
    }

    #[test]
    fn free_algebras_on_representables() {
        let c = FinCategory::from_poset(&FinPoset::chain(3));
        let m = PresheafMonad::new(Profunctor::hom(&c));
        let mut ctx = Ctx::default();
        for a in 0..3 {
            let x = yoneda_pre(&c, a);
            let free = free_algebra(&m, Side::Lower, &x, &mut ctx).unwrap();
            assert!(verify_algebra(&m, &free, &mut ctx).unwrap());
            let all = enumerate_algebras(&m, Side::Lower, free.carrier(), &mut ctx).unwrap();
            assert!(all.iter().any(|b| b.structure == free.structure));
        }
    }

    #[test]
    fn group_trivial_and_empty() {
        let g = z2();
        let m = PresheafMonad::new(Profunctor::hom(&g));
        let mut ctx = Ctx::default();
        // T(∅) = ∅ here, so the empty set carries exactly one algebra.
        let one = enumerate_algebras(&m, Side::Lower, &Presheaf::terminal(&g), &mut ctx).unwrap();
        assert_eq!(one.len(), 1);
        let empty = enumerate_algebras(&m, Side::Lower, &Presheaf::empty(&g), &mut ctx).unwrap();
        assert_eq!(empty.len(), 1);
        let free = enumerate_algebras(&m, Side::Lower, &yoneda_pre(&g, 0), &mut ctx).unwrap();
        assert_eq!(free.len(), 1);
        let two_points =
            enumerate_algebras(&m, Side::Lower, &Presheaf::constant(&g, 2), &mut ctx).unwrap();
        assert!(two_points.is_empty());
    }

    #[test]
    fn canonical_algebras_pass_the_law_check() {
        let g = z2();
        let m = PresheafMonad::new(Profunctor::hom(&g));
        let op = g.opposite();
        let mut ctx = Ctx::default();
        for y in [
            Presheaf::terminal(&op),
            yoneda_pre(&op, 0),
            Presheaf::empty(&op),
        ] {
            let alg = canonical_algebra(&m, Side::Lower, &y, &mut ctx).unwrap();
            assert!(verify_algebra(&m, &alg, &mut ctx).unwrap());
            let co = canonical_algebra(&m, Side::Upper, &alg.carrier().clone(), &mut ctx).unwrap();
            assert!(verify_algebra(&m, &co, &mut ctx).unwrap());
        }
    }

    #[test]
    fn iso_dedupe() {
        let g = z2();
        let m = PresheafMonad::new(Profunctor::hom(&g));
        let mut ctx = Ctx::default();
        let x = yoneda_pre(&g, 0);
        let a = free_algebra(&m, Side::Lower, &x, &mut ctx).unwrap();
        let b = enumerate_algebras(&m, Side::Lower, &x, &mut ctx)
            .unwrap()
            .remove(0);
        assert!(algebras_isomorphic(&m, &a, &b, &mut ctx).unwrap());
        let kept = dedupe_algebras(&m, vec![a, b], &mut ctx).unwrap();
        assert_eq!(kept.len(), 1);
    }
}
