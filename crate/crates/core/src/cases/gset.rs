//! Finite right G-sets as presheaves on the one-object category of G. A left
//! G-set is stored as a right set over the opposite group.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cases::group::{group_as_category, FinGroup};
use crate::error::{Error, Result};
use crate::setcat::natural::{for_each_nat, Budget, NatTrans};
use crate::setcat::{phi_upper, Ctx, Presheaf, Profunctor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub group: FinGroup,
    /// `act[g][x] = x·g`, with `x·(gh) = (x·g)·h`.
    pub act: Vec<Vec<usize>>,
}

/// How a G-set splits into orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Empty,
    Singleton,
    /// `G × I` with `I` of the given size.
    Free(usize),
    Other {
        orbit_sizes: Vec<usize>,
    },
}

impl GSet {
    pub fn new(group: FinGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = act.first().map_or(0, Vec::len);
        if act.len() != group.order()
            || act
                .iter()
                .any(|a| a.len() != n || a.iter().any(|&v| v >= n))
        {
            return Err(Error::input("action table must be |G| maps of one carrier"));
        }
        if (0..n).any(|x| act[group.identity][x] != x) {
            return Err(Error::law("identity does not act trivially"));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.op(g, h);
                if (0..n).any(|x| act[gh][x] != act[h][act[g][x]]) {
                    return Err(Error::law(format!("x·({g}{h}) differs from (x·{g})·{h}")));
                }
            }
        }
        Ok(GSet { group, act })
    }

    pub fn empty(group: &FinGroup) -> Self {
        GSet {
            group: group.clone(),
            act: vec![Vec::new(); group.order()],
        }
    }

    pub fn singleton(group: &FinGroup) -> Self {
        GSet {
            group: group.clone(),
            act: vec![vec![0]; group.order()],
        }
    }

    /// The right cosets `Hg` with `(Hg)·k = Hgk`.
    pub fn cosets(group: &FinGroup, h: &[usize]) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..group.order() {
            let mut c: Vec<usize> = h.iter().map(|&x| group.op(x, g)).collect();
            c.sort_unstable();
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
        let act = (0..group.order())
            .map(|k| {
                classes
                    .iter()
                    .map(|c| {
                        let mut d: Vec<usize> = c.iter().map(|&x| group.op(x, k)).collect();
                        d.sort_unstable();
                        classes
                            .iter()
                            .position(|e| *e == d)
                            .expect("cosets are permuted")
                    })
                    .collect()
            })
            .collect();
        GSet {
            group: group.clone(),
            act,
        }
    }

    /// `G × I`, elements `i·|G| + g`.
    pub fn free(group: &FinGroup, copies: usize) -> Self {
        let regular = GSet::cosets(group, &[group.identity]);
        (0..copies).fold(GSet::empty(group), |acc, _| acc.sum(&regular))
    }

    pub fn size(&self) -> usize {
        self.act[0].len()
    }

    pub fn sum(&self, other: &GSet) -> GSet {
        let n = self.size();
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&v| v + n)).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            act,
        }
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.act.iter().map(|a| a[x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.act[g][x] == x)
            .collect()
    }

    pub fn is_free(&self) -> bool {
        (0..self.size()).all(|x| self.stabilizer(x).len() == 1)
    }

    pub fn shape(&self) -> Shape {
        let orbits = self.orbits();
        if orbits.is_empty() {
            Shape::Empty
        } else if self.is_free() {
            Shape::Free(orbits.len())
        } else if self.size() == 1 {
            Shape::Singleton
        } else {
            Shape::Other {
                orbit_sizes: orbits.iter().map(Vec::len).collect(),
            }
        }
    }

    /// Orbit types as indices into `group.subgroup_classes()`, sorted; equal
    /// signatures mean isomorphic G-sets.
    pub fn signature(&self) -> Vec<usize> {
        let classes = self.group.subgroup_classes();
        let mut sig: Vec<usize> = self
            .orbits()
            .iter()
            .map(|o| {
                let st = self.stabilizer(o[0]);
                classes
                    .iter()
                    .position(|c| (0..self.group.order()).any(|g| self.group.conjugate(c, g) == st))
                    .expect("stabilizers are subgroups")
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    pub fn is_isomorphic(&self, other: &GSet) -> bool {
        self.group == other.group && self.signature() == other.signature()
    }

    pub fn to_presheaf(&self) -> Presheaf {
        Presheaf {
            sizes: vec![self.size()],
            act: self.act.clone(),
        }
    }

    pub fn from_presheaf(group: &FinGroup, p: &Presheaf) -> Result<Self> {
        GSet::new(group.clone(), p.act.clone())
    }

    /// Restriction of the action to an invariant subset, renumbered in order.
    pub fn restrict(&self, keep: &[usize]) -> GSet {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let act = self
            .act
            .iter()
            .map(|a| keep.iter().map(|x| pos[&a[*x]]).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            act,
        }
    }
}

/// Every right G-set with at most `max_size` points, one per isomorphism class.
pub fn iso_classes(group: &FinGroup, max_size: usize) -> Vec<GSet> {
    let types: Vec<GSet> = group
        .subgroup_classes()
        .iter()
        .map(|h| GSet::cosets(group, h))
        .collect();
    let mut out = Vec::new();
    fn go(types: &[GSet], start: usize, acc: GSet, room: usize, out: &mut Vec<GSet>) {
        out.push(acc.clone());
        for (i, t) in types.iter().enumerate().skip(start) {
            if t.size() <= room {
                go(types, i, acc.sum(t), room - t.size(), out);
            }
        }
    }
    go(&types, 0, GSet::empty(group), max_size, &mut out);
    out.sort_by_key(|x| (x.size(), x.signature()));
    out
}

/// All equivariant maps `x → y`.
pub fn equivariant_maps(x: &GSet, y: &GSet, budget: &mut Budget) -> Result<Vec<NatTrans>> {
    let cat = group_as_category(&x.group);
    crate::setcat::natural::nat_transforms(&cat, &x.to_presheaf(), &y.to_presheaf(), budget)
}

/// `H^*X`: equivariant maps into the regular action, with `(g·f)(x) = g(f(x))`,
/// returned as a right set over the opposite group.
pub fn gset_upper(x: &GSet, ctx: &mut Ctx) -> Result<GSet> {
    let cat = group_as_category(&x.group);
    let up = phi_upper(&Profunctor::hom(&cat), &x.to_presheaf(), ctx)?;
    GSet::new(x.group.opposite(), up.sheaf.act)
}

/// Retracts of `x`, one per equivariant idempotent, as invariant subsets.
pub fn retracts(x: &GSet, budget: &mut Budget) -> Result<Vec<GSet>> {
    let cat = group_as_category(&x.group);
    let p = x.to_presheaf();
    let mut out = Vec::new();
    for_each_nat(&cat, &p, &p, None, budget, &mut |e| {
        if e.after(e) == *e {
            let mut image = e.comps[0].clone();
            image.sort_unstable();
            image.dedup();
            out.push(x.restrict(&image));
        }
        true
    })?;
    Ok(out)
}

/// Result of checking one section/retraction pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractCheck {
    pub source: Shape,
    pub retract: Shape,
    /// Free sources give free retracts, singletons give singletons.
    pub pass: bool,
}

/// `s: Y → X`, `r: X → Y` with `r∘s = id`, both equivariant.
pub fn check_free_retract(x: &GSet, y: &GSet, s: &[usize], r: &[usize]) -> Result<RetractCheck> {
    let ok_map = |from: &GSet, to: &GSet, f: &[usize]| {
        f.len() == from.size()
            && f.iter().all(|&v| v < to.size())
            && (0..from.group.order())
                .all(|g| (0..from.size()).all(|a| f[from.act[g][a]] == to.act[g][f[a]]))
    };
    if !ok_map(y, x, s) || !ok_map(x, y, r) || (0..y.size()).any(|i| r[s[i]] != i) {
        return Err(Error::Contract(
            "not an equivariant section/retraction pair".into(),
        ));
    }
    let (source, retract) = (x.shape(), y.shape());
    let pass = match source {
        Shape::Empty | Shape::Free(_) => matches!(retract, Shape::Empty | Shape::Free(_)),
        Shape::Singleton => retract == Shape::Singleton,
        Shape::Other { .. } => true,
    };
    Ok(RetractCheck {
        source,
        retract,
        pass,
    })
}

/// A map `f: X → G×J` factors as `X ≅ G×I → G×J` with `I = f⁻¹({e}×J)`.
/// Returns `|I|` when `(i, g) ↦ i·g` is a bijection `I×G → X` and `f` is
/// `id × k` on it.
pub fn free_factorization(x: &GSet, copies: usize, f: &[usize]) -> Option<usize> {
    let g = &x.group;
    let n = g.order();
    let e = g.identity;
    // element i·n + h of G×J is (h, i) under the free action
    let fiber: Vec<usize> = (0..x.size()).filter(|&a| f[a] % n == e).collect();
    let mut hit = vec![false; x.size()];
    for &i in &fiber {
        for h in 0..n {
            let a = x.act[h][i];
            if std::mem::replace(&mut hit[a], true) {
                return None;
            }
            let expected = (f[i] / n) * n + h;
            if f[a] != expected || f[i] / n >= copies {
                return None;
            }
        }
    }
    hit.iter().all(|&b| b).then_some(fiber.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcat::natural::DEFAULT_BUDGET;

    #[test]
    fn regular_and_cosets() {
        let s3 = FinGroup::symmetric3();
        let g = GSet::free(&s3, 1);
        GSet::new(s3.clone(), g.act.clone()).unwrap();
        assert_eq!(g.shape(), Shape::Free(1));
        let h = s3.subgroups()[1].clone();
        let c = GSet::cosets(&s3, &h);
        GSet::new(s3.clone(), c.act.clone()).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(GSet::singleton(&s3).shape(), Shape::Singleton);
    }

    #[test]
    fn class_counts() {
        // Z2: a copies of the point and b free orbits with a + 2b ≤ 3
        assert_eq!(iso_classes(&FinGroup::cyclic(2), 3).len(), 6);
        let s3 = iso_classes(&FinGroup::symmetric3(), 3);
        assert!(s3
            .iter()
            .all(|x| GSet::new(x.group.clone(), x.act.clone()).is_ok()));
    }

    #[test]
    fn upper_examples() {
        let z3 = FinGroup::cyclic(3);
        let mut ctx = Ctx::default();
        let g = gset_upper(&GSet::free(&z3, 1), &mut ctx).unwrap();
        assert_eq!(g.size(), 3);
        assert!(g.is_free());
        assert_eq!(
            gset_upper(&GSet::singleton(&z3), &mut ctx).unwrap().size(),
            0
        );
        assert_eq!(gset_upper(&GSet::free(&z3, 2), &mut ctx).unwrap().size(), 9);
        assert_eq!(gset_upper(&GSet::empty(&z3), &mut ctx).unwrap().size(), 1);
    }

    #[test]
    fn retracts_of_free_are_free() {
        let z2 = FinGroup::cyclic(2);
        let x = GSet::free(&z2, 2);
        let mut b = Budget::new(DEFAULT_BUDGET);
        let rs = retracts(&x, &mut b).unwrap();
        assert!(!rs.is_empty());
        assert!(rs.iter().all(|y| matches!(y.shape(), Shape::Free(_))));
    }

    #[test]
    fn retract_contract() {
        let z2 = FinGroup::cyclic(2);
        let x = GSet::free(&z2, 1);
        let check = check_free_retract(&x, &x, &[0, 1], &[0, 1]).unwrap();
        assert!(check.pass);
        assert_eq!(check.retract, Shape::Free(1));
        assert!(check_free_retract(&x, &x, &[0, 1], &[1, 0]).is_err());
        let p = GSet::singleton(&z2);
        assert!(check_free_retract(&p, &p, &[0], &[0]).unwrap().pass);
    }

    #[test]
    fn factorization_through_free() {
        let z3 = FinGroup::cyclic(3);
        let x = GSet::free(&z3, 2);
        let target = GSet::free(&z3, 2);
        let mut b = Budget::new(DEFAULT_BUDGET);
        let maps = equivariant_maps(&x, &target, &mut b).unwrap();
        assert_eq!(maps.len(), 36);
        assert!(maps
            .iter()
            .all(|f| free_factorization(&x, 2, &f.comps[0]) == Some(2)));
    }
}
