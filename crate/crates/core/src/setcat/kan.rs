//! The two extensions of a profunctor along the Yoneda embeddings.
//!
//! `Φ^*α(u) = Nat(α, Φ(−,u))`, a postsheaf on B, and
//! `Φ_*β(ℓ) = Nat(β, Φ(ℓ,−))`, a presheaf on A. The second is computed as the
//! first for the transposed profunctor.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::setcat::natural::{for_each_nat, Budget, NatTrans, DEFAULT_BUDGET};
use crate::setcat::presheaf::{Presheaf, MAX_SET_SIZE};
use crate::setcat::profunctor::Profunctor;

/// Size limits shared by all constructions.
#[derive(Clone, Debug)]
pub struct Ctx {
    /// Largest component set any construction may produce.
    pub max_set: usize,
    pub budget: Budget,
}

impl Ctx {
    pub fn new(max_set: usize, budget: u64) -> Self {
        Ctx {
            max_set,
            budget: Budget::new(budget),
        }
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::new(MAX_SET_SIZE, DEFAULT_BUDGET)
    }
}

/// Largest number of stored component entries (elements times cone size)
/// in one extension component, independent of `max_set`.
pub const MAX_STORED_ENTRIES: usize = 1 << 24;

/// A computed extension: the functor together with the cone behind each element.
#[derive(Clone, Debug)]
pub struct Extension {
    pub sheaf: Presheaf,
    /// `elems[u][i]`: the natural transformation that is element `i` at `u`.
    pub elems: Vec<Vec<NatTrans>>,
    index: Vec<HashMap<NatTrans, usize>>,
}

impl Extension {
    pub fn index_of(&self, u: usize, t: &NatTrans) -> Option<usize> {
        self.index[u].get(t).copied()
    }

    /// Index of `c ∘ f` at `u`, for `c` an element of another extension.
    pub fn precompose(&self, u: usize, c: &NatTrans, f: &NatTrans) -> usize {
        self.index_of(u, &c.after(f))
            .expect("cones are closed under precomposition")
    }
}

/// `Φ^*α`, with `α` a presheaf on the source of `Φ`; the result is a
/// presheaf on the opposite of the target.
pub fn phi_upper(phi: &Profunctor, alpha: &Presheaf, ctx: &mut Ctx) -> Result<Extension> {
    alpha.validate(&phi.source)?;
    let nb = phi.target.num_objects();
    let mut elems = Vec::with_capacity(nb);
    for u in 0..nb {
        let col = phi.column(u);
        let mut found = Vec::new();
        let mut over = false;
        let max = ctx
            .max_set
            .min(MAX_STORED_ENTRIES / alpha.total_size().max(1));
        for_each_nat(&phi.source, alpha, &col, None, &mut ctx.budget, &mut |t| {
            found.push(t.clone());
            over = found.len() > max;
            !over
        })?;
        if over {
            return Err(Error::cap(
                format!("extension component at object {u}"),
                found.len(),
                max,
            ));
        }
        found.sort();
        elems.push(found);
    }
    let index: Vec<HashMap<NatTrans, usize>> = elems
        .iter()
        .map(|es| es.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let act = (0..phi.target.num_morphisms())
        .map(|h| {
            let (u, u2) = (phi.target.src(h), phi.target.tgt(h));
            elems[u]
                .iter()
                .map(|c| {
                    let moved = NatTrans {
                        comps: c
                            .comps
                            .iter()
                            .enumerate()
                            .map(|(x, cx)| cx.iter().map(|&v| phi.lact[h][x][v]).collect())
                            .collect(),
                    };
                    index[u2][&moved]
                })
                .collect()
        })
        .collect();
    let sheaf = Presheaf {
        sizes: elems.iter().map(Vec::len).collect(),
        act,
    };
    Ok(Extension {
        sheaf,
        elems,
        index,
    })
}

pub fn phi_lower(phi: &Profunctor, beta: &Presheaf, ctx: &mut Ctx) -> Result<Extension> {
    phi_upper(&phi.transpose(), beta, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::category::FinCategory;
    use crate::setcat::natural::nat_transforms;
    use crate::setcat::presheaf::{yoneda_post, yoneda_pre};

    #[test]
    fn representables_go_to_corepresentables() {
        let c = FinCategory::from_poset(&FinPoset::from_relations(3, &[(0, 1), (0, 2)]).unwrap());
        let h = Profunctor::hom(&c);
        let mut ctx = Ctx::default();
        let op = c.opposite();
        for a in 0..3 {
            let up = phi_upper(&h, &yoneda_pre(&c, a), &mut ctx).unwrap();
            up.sheaf.validate(&op).unwrap();
            assert_eq!(up.sheaf.sizes, yoneda_post(&c, a).sizes);
            let down = phi_lower(&h, &yoneda_post(&c, a), &mut ctx).unwrap();
            down.sheaf.validate(&c).unwrap();
            assert_eq!(down.sheaf.sizes, yoneda_pre(&c, a).sizes);
        }
        let empty = phi_upper(&h, &Presheaf::empty(&c), &mut ctx).unwrap();
        assert_eq!(empty.sheaf, Presheaf::terminal(&op));
        let empty = phi_lower(&h, &Presheaf::empty(&op), &mut ctx).unwrap();
        assert_eq!(empty.sheaf, Presheaf::terminal(&c));
    }

    #[test]
    fn group_cones_from_free_orbit() {
        let g = FinCategory::one_object(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let h = Profunctor::hom(&g);
        let mut ctx = Ctx::default();
        let up = phi_upper(&h, &yoneda_pre(&g, 0), &mut ctx).unwrap();
        assert_eq!(up.sheaf.sizes, vec![2]);
        // Free left action: the nontrivial element swaps the two cones.
        assert_eq!(up.sheaf.act[1], vec![1, 0]);
        let down = phi_lower(&h, &yoneda_post(&g, 0), &mut ctx).unwrap();
        assert_eq!(down.sheaf.sizes, vec![2]);
        assert_eq!(down.sheaf.act[1], vec![1, 0]);
    }

    #[test]
    fn adjunction_counts() {
        let c = FinCategory::from_poset(&FinPoset::chain(2));
        let h = Profunctor::hom(&c);
        let op = c.opposite();
        let mut ctx = Ctx::default();
        let alphas = [
            yoneda_pre(&c, 0),
            yoneda_pre(&c, 1),
            Presheaf::terminal(&c),
            Presheaf::constant(&c, 2),
        ];
        let betas = [
            yoneda_post(&c, 0),
            yoneda_post(&c, 1),
            Presheaf::terminal(&op),
            Presheaf::empty(&op),
        ];
        for a in &alphas {
            let up = phi_upper(&h, a, &mut ctx).unwrap();
            for b in &betas {
                let down = phi_lower(&h, b, &mut ctx).unwrap();
                let lhs = nat_transforms(&op, b, &up.sheaf, &mut ctx.budget)
                    .unwrap()
                    .len();
                let rhs = nat_transforms(&c, a, &down.sheaf, &mut ctx.budget)
                    .unwrap()
                    .len();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cap_is_reported() {
        let phi = Profunctor::constant(3);
        let d = FinCategory::discrete(1);
        let mut ctx = Ctx::new(8, DEFAULT_BUDGET);
        let err = phi_upper(&phi, &Presheaf::constant(&d, 2), &mut ctx).unwrap_err();
        assert!(matches!(err, Error::Cap { .. }));
    }
}
