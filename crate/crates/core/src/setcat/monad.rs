//! The monad `T = Φ_*Φ^*` on presheaves over A and, through the transposed
//! profunctor, the monad `Φ^*Φ_*` on postsheaves over B whose algebras are the
//! coalgebras of the comonad.

use crate::error::{Error, Result};
use crate::setcat::kan::{phi_upper, Ctx, Extension};
use crate::setcat::natural::NatTrans;
use crate::setcat::presheaf::Presheaf;
use crate::setcat::profunctor::Profunctor;

/// Which of the two monads a construction refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Φ_*Φ^*` on presheaves over A.
    Lower,
    /// `Φ^*Φ_*` on postsheaves over B.
    Upper,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PresheafMonad {
    pub phi: Profunctor,
    psi: Profunctor,
}

/// `X`, its first extension `P` and `TX = P` extended back.
#[derive(Clone, Debug)]
pub struct Level {
    pub side: Side,
    pub carrier: Presheaf,
    pub up: Extension,
    pub t: Extension,
}

impl Level {
    pub fn tx(&self) -> &Presheaf {
        &self.t.sheaf
    }

    /// `η: X → TX`, sending `e ∈ X(x)` to the cone `c ↦ c_x(e)`.
    pub fn eta(&self) -> NatTrans {
        let comps = self
            .carrier
            .sizes
            .iter()
            .enumerate()
            .map(|(x, &n)| {
                (0..n)
                    .map(|e| {
                        let k = NatTrans {
                            comps: self
                                .up
                                .elems
                                .iter()
                                .map(|cs| cs.iter().map(|c| c.comps[x][e]).collect())
                                .collect(),
                        };
                        self.t
                            .index_of(x, &k)
                            .expect("evaluation cones are natural")
                    })
                    .collect()
            })
            .collect();
        NatTrans { comps }
    }
}

/// `ε: P → (extension of TX)`, sending `c ∈ P(u)` to the cone `k ↦ k_u(c)`.
/// `next` must be the level built on `TX`.
pub fn eval_cones(level: &Level, next: &Level) -> Vec<Vec<usize>> {
    level
        .up
        .elems
        .iter()
        .enumerate()
        .map(|(u, cs)| {
            (0..cs.len())
                .map(|c| {
                    let d = NatTrans {
                        comps: level
                            .t
                            .elems
                            .iter()
                            .map(|ks| ks.iter().map(|k| k.comps[u][c]).collect())
                            .collect(),
                    };
                    next.up
                        .index_of(u, &d)
                        .expect("evaluation cones are natural")
                })
                .collect()
        })
        .collect()
}

impl PresheafMonad {
    pub fn new(phi: Profunctor) -> Self {
        let psi = phi.transpose();
        PresheafMonad { phi, psi }
    }

    /// The profunctor whose first extension starts the given side, and its transpose.
    pub fn sides(&self, side: Side) -> (&Profunctor, &Profunctor) {
        match side {
            Side::Lower => (&self.phi, &self.psi),
            Side::Upper => (&self.psi, &self.phi),
        }
    }

    pub fn base(&self, side: Side) -> &crate::setcat::FinCategory {
        &self.sides(side).0.source
    }

    pub fn level(&self, side: Side, carrier: &Presheaf, ctx: &mut Ctx) -> Result<Level> {
        let (own, other) = self.sides(side);
        let up = phi_upper(own, carrier, ctx)?;
        let t = phi_upper(other, &up.sheaf, ctx)?;
        Ok(Level {
            side,
            carrier: carrier.clone(),
            up,
            t,
        })
    }

    /// `T(f): TX → TY` for `f: X → Y`, as `K ↦ K ∘ (c ↦ c∘f)`.
    pub fn t_map(&self, from: &Level, to: &Level, f: &NatTrans) -> NatTrans {
        let pull: Vec<Vec<usize>> = to
            .up
            .elems
            .iter()
            .enumerate()
            .map(|(u, cs)| cs.iter().map(|c| from.up.precompose(u, c, f)).collect())
            .collect();
        let comps = from
            .t
            .elems
            .iter()
            .enumerate()
            .map(|(x, ks)| {
                ks.iter()
                    .map(|k| {
                        let moved = NatTrans {
                            comps: pull
                                .iter()
                                .enumerate()
                                .map(|(u, p)| p.iter().map(|&c| k.comps[u][c]).collect())
                                .collect(),
                        };
                        to.t.index_of(x, &moved).expect("T preserves naturality")
                    })
                    .collect()
            })
            .collect();
        NatTrans { comps }
    }

    /// `μ: TTX → TX`, with `next` the level built on `TX`.
    pub fn mu(&self, level: &Level, next: &Level) -> NatTrans {
        let eps = eval_cones(level, next);
        let comps = next
            .t
            .elems
            .iter()
            .enumerate()
            .map(|(x, ks)| {
                ks.iter()
                    .map(|k| {
                        let back = NatTrans {
                            comps: eps
                                .iter()
                                .enumerate()
                                .map(|(u, e)| e.iter().map(|&d| k.comps[u][d]).collect())
                                .collect(),
                        };
                        level
                            .t
                            .index_of(x, &back)
                            .expect("multiplication lands in TX")
                    })
                    .collect()
            })
            .collect();
        NatTrans { comps }
    }

    /// Unit laws `μ∘η_T = id = μ∘T(η)` at `X`, and associativity on `TTTX`
    /// when that level fits in the limits. Returns which laws were checked.
    pub fn check_laws(
        &self,
        side: Side,
        carrier: &Presheaf,
        ctx: &mut Ctx,
    ) -> Result<MonadLawReport> {
        let l0 = self.level(side, carrier, ctx)?;
        let l1 = self.level(side, l0.tx(), ctx)?;
        let eta = l0.eta();
        let mu = self.mu(&l0, &l1);
        let id = NatTrans::identity(l0.tx());
        if mu.after(&l1.eta()) != id {
            return Err(Error::law("μ ∘ ηT is not the identity"));
        }
        if mu.after(&self.t_map(&l0, &l1, &eta)) != id {
            return Err(Error::law("μ ∘ Tη is not the identity"));
        }
        let mut saved = ctx.clone();
        let associativity = match self.level(side, l1.tx(), &mut saved) {
            Ok(l2) => {
                *ctx = saved;
                let mu_t = self.mu(&l1, &l2);
                let t_mu = self.t_map(&l2, &l1, &mu);
                if mu.after(&mu_t) != mu.after(&t_mu) {
                    return Err(Error::law("μ ∘ μT differs from μ ∘ Tμ"));
                }
                true
            }
            Err(Error::Cap { .. }) => false,
            Err(e) => return Err(e),
        };
        Ok(MonadLawReport {
            unit: true,
            associativity,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonadLawReport {
    pub unit: bool,
    pub associativity: bool,
}
