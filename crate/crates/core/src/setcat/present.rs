//! Presenting an algebra by free algebras on representables: the elements of
//! `X` give a cover `p: ∑∇x → X`, and `a∘T(p)` must be a surjective algebra
//! map out of a free algebra, so that `X` is its coequalizer.

use serde::Serialize;

use crate::error::Result;
use crate::setcat::algebra::{free_algebra, Algebra};
use crate::setcat::category::FinCategory;
use crate::setcat::kan::Ctx;
use crate::setcat::monad::PresheafMonad;
use crate::setcat::natural::NatTrans;
use crate::setcat::presheaf::Presheaf;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    /// `a∘μ = a∘T(a)` with sections `η_X`, `η_TX`: the split fork.
    pub split_fork: bool,
    /// The cover `∑∇x → X` is pointwise surjective.
    pub cover_onto: bool,
    /// `a∘T(p)` is pointwise surjective.
    pub onto: bool,
    /// `a∘T(p)` is an algebra map from the free algebra.
    pub morphism: bool,
}

impl Presentation {
    pub fn holds(&self) -> bool {
        self.split_fork && self.cover_onto && self.onto && self.morphism
    }
}

/// One copy of `∇x` per element of `X(x)`, with the Yoneda map into `X`.
pub fn representable_cover(cat: &FinCategory, x: &Presheaf) -> (Presheaf, NatTrans) {
    let n = cat.num_objects();
    let blocks: Vec<(usize, usize)> = (0..n)
        .flat_map(|o| (0..x.sizes[o]).map(move |e| (o, e)))
        .collect();
    let mut offset = vec![vec![0; blocks.len()]; n];
    let mut sizes = vec![0; n];
    for y in 0..n {
        for (b, &(o, _)) in blocks.iter().enumerate() {
            offset[y][b] = sizes[y];
            sizes[y] += cat.hom(y, o).len();
        }
    }
    let act = (0..cat.num_morphisms())
        .map(|f| {
            let (y2, y) = (cat.src(f), cat.tgt(f));
            let mut t = vec![0; sizes[y]];
            for (b, &(o, _)) in blocks.iter().enumerate() {
                for (i, &k) in cat.hom(y, o).iter().enumerate() {
                    let kf = cat.compose(k, f).expect("composable");
                    t[offset[y][b] + i] = offset[y2][b]
                        + cat
                            .hom(y2, o)
                            .iter()
                            .position(|&h| h == kf)
                            .expect("in hom");
                }
            }
            t
        })
        .collect();
    let comps = (0..n)
        .map(|y| {
            let mut c = vec![0; sizes[y]];
            for (b, &(o, e)) in blocks.iter().enumerate() {
                for (i, &k) in cat.hom(y, o).iter().enumerate() {
                    c[offset[y][b] + i] = x.act[k][e];
                }
            }
            c
        })
        .collect();
    (Presheaf { sizes, act }, NatTrans { comps })
}

pub fn check_presentation(m: &PresheafMonad, alg: &Algebra, ctx: &mut Ctx) -> Result<Presentation> {
    let side = alg.side();
    let cat = m.base(side).clone();
    let x = alg.carrier();
    let a = &alg.structure;

    let next = m.level(side, alg.level.tx(), ctx)?;
    let mu = m.mu(&alg.level, &next);
    let ta = m.t_map(&next, &alg.level, a);
    let eta = alg.level.eta();
    let eta_t = next.eta();
    let split_fork = a.after(&mu) == a.after(&ta)
        && a.after(&eta) == NatTrans::identity(x)
        && mu.after(&eta_t) == NatTrans::identity(alg.level.tx())
        && ta.after(&eta_t) == eta.after(a);

    let (g, p) = representable_cover(&cat, x);
    let free = free_algebra(m, side, &g, ctx)?;
    let lg = m.level(side, &g, ctx)?;
    let tp = m.t_map(&lg, &alg.level, &p);
    let q = a.after(&tp);
    let tq = m.t_map(&free.level, &alg.level, &q);
    Ok(Presentation {
        split_fork,
        cover_onto: p.is_surjective(x),
        onto: q.is_surjective(x),
        morphism: q.after(&free.structure) == a.after(&tq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::algebra::enumerate_algebras;
    use crate::setcat::monad::Side;
    use crate::setcat::natural::is_natural;
    use crate::setcat::profunctor::Profunctor;

    fn all_small_presheaves(cat: &FinCategory, max: usize) -> Vec<Presheaf> {
        // subterminal presheaves are enough on a poset; add constants on top
        let mut out = Vec::new();
        for s in 0..(1u64 << cat.num_objects()) {
            let sizes: Vec<usize> = (0..cat.num_objects())
                .map(|i| (s >> i & 1) as usize)
                .collect();
            let act = (0..cat.num_morphisms())
                .map(|f| (0..sizes[cat.tgt(f)]).map(|_| 0).collect::<Vec<_>>())
                .collect();
            let p = Presheaf { sizes, act };
            if p.validate(cat).is_ok() {
                out.push(p);
            }
        }
        for n in 2..=max {
            out.push(Presheaf::constant(cat, n));
        }
        out
    }

    #[test]
    fn cover_is_natural() {
        let c = FinCategory::from_poset(&FinPoset::chain(3));
        let x = Presheaf::constant(&c, 2);
        let (g, p) = representable_cover(&c, &x);
        g.validate(&c).unwrap();
        assert!(is_natural(&c, &g, &x, &p));
        assert!(p.is_surjective(&x));
    }

    #[test]
    fn chain_algebras_are_presented() {
        let c = FinCategory::from_poset(&FinPoset::chain(3));
        let m = PresheafMonad::new(Profunctor::hom(&c));
        let mut ctx = Ctx::default();
        for x in all_small_presheaves(&c, 1) {
            for alg in enumerate_algebras(&m, Side::Lower, &x, &mut ctx).unwrap() {
                assert!(check_presentation(&m, &alg, &mut ctx).unwrap().holds());
            }
        }
    }

    #[test]
    fn z2_algebras_are_presented() {
        let g = FinCategory::one_object(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let m = PresheafMonad::new(Profunctor::hom(&g));
        let mut ctx = Ctx::default();
        let free = crate::setcat::presheaf::yoneda_pre(&g, 0);
        let mut seen = 0;
        for x in [Presheaf::empty(&g), Presheaf::terminal(&g), free] {
            for alg in enumerate_algebras(&m, Side::Lower, &x, &mut ctx).unwrap() {
                assert!(check_presentation(&m, &alg, &mut ctx).unwrap().holds());
                seen += 1;
            }
        }
        assert_eq!(seen, 3);
        for alg in enumerate_algebras(
            &m,
            Side::Upper,
            &Presheaf::terminal(&g.opposite()),
            &mut ctx,
        )
        .unwrap()
        {
            assert!(check_presentation(&m, &alg, &mut ctx).unwrap().holds());
        }
    }
}
