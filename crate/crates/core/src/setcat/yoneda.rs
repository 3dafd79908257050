//! The Yoneda bijection for free algebras on representables: algebra maps
//! from the free algebra on `∇a` into the canonical algebra on `Φ_*β`
//! correspond to elements of `Φ_*β(a)`, by evaluation at `η(id_a)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcat::algebra::{algebra_morphisms, canonical_algebra, free_algebra};
use crate::setcat::kan::Ctx;
use crate::setcat::monad::{PresheafMonad, Side};
use crate::setcat::presheaf::{yoneda_pre, Presheaf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    pub side: &'static str,
    pub object: usize,
    /// Number of algebra maps out of the free algebra.
    pub homs: usize,
    /// Size of the value set `Φ_*β(a)`.
    pub value: usize,
    /// Whether evaluation at the generator is a bijection.
    pub bijective: bool,
}

impl YonedaReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.homs == self.value
    }
}

/// `side = Lower` checks `Alg(∇_Φ a, Φ_*β) ≅ Φ_*β(a)` for a postsheaf `β`;
/// `Upper` is the dual statement, `β` then a presheaf on the source.
pub fn matrix_yoneda_check(
    m: &PresheafMonad,
    side: Side,
    a: usize,
    beta: &Presheaf,
    ctx: &mut Ctx,
) -> Result<YonedaReport> {
    let base = m.base(side).clone();
    if a >= base.num_objects() {
        return Err(Error::input(format!("object {a} out of range")));
    }
    let repr = yoneda_pre(&base, a);
    let level = m.level(side, &repr, ctx)?;
    let free = free_algebra(m, side, &repr, ctx)?;
    let target = canonical_algebra(m, side, beta, ctx)?;
    let homs = algebra_morphisms(m, &free, &target, ctx)?;
    let id_pos = base
        .hom(a, a)
        .iter()
        .position(|&k| k == base.identity(a))
        .expect("identity in its hom set");
    let generator = level.eta().comps[a][id_pos];
    let value = target.carrier().sizes[a];
    let mut seen = vec![false; value];
    let bijective = homs.len() == value
        && homs
            .iter()
            .all(|h| !std::mem::replace(&mut seen[h.comps[a][generator]], true));
    Ok(YonedaReport {
        side: match side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        },
        object: a,
        homs: homs.len(),
        value,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::category::FinCategory;
    use crate::setcat::presheaf::yoneda_post;
    use crate::setcat::profunctor::Profunctor;

    #[test]
    fn poset_hom_counts_the_order() {
        let p = FinPoset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let c = FinCategory::from_poset(&p);
        let m = PresheafMonad::new(Profunctor::hom(&c));
        let mut ctx = Ctx::default();
        for a in 0..3 {
            for b in 0..3 {
                let r =
                    matrix_yoneda_check(&m, Side::Lower, a, &yoneda_post(&c, b), &mut ctx).unwrap();
                assert!(r.holds());
                assert_eq!(r.value, p.leq(a, b) as usize);
                let r =
                    matrix_yoneda_check(&m, Side::Upper, b, &yoneda_pre(&c, a), &mut ctx).unwrap();
                assert!(r.holds());
                assert_eq!(r.value, p.leq(a, b) as usize);
            }
        }
    }

    #[test]
    fn constant_matrix_on_a_point() {
        let d = FinCategory::discrete(1);
        let mut ctx = Ctx::new(1 << 16, 100_000_000);
        for r in 0..=2 {
            let m = PresheafMonad::new(Profunctor::constant(r));
            let rep = matrix_yoneda_check(&m, Side::Lower, 0, &Presheaf::constant(&d, 1), &mut ctx)
                .unwrap();
            assert!(rep.holds());
            assert_eq!(rep.value, r);
        }
    }

    #[test]
    fn empty_row() {
        // Φ(0, −) is empty: the value set of Φ_*Δb at 0 is empty.
        let c = FinCategory::from_poset(&FinPoset::antichain(2));
        let m = PresheafMonad::new(Profunctor::hom(&c));
        let mut ctx = Ctx::default();
        let r = matrix_yoneda_check(&m, Side::Lower, 0, &yoneda_post(&c, 1), &mut ctx).unwrap();
        assert!(r.holds());
        assert_eq!(r.value, 0);
    }
}
