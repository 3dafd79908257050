//! Images of `H^*` for a group `G` and their retracts: the image is empty or
//! free, a retract of a free G-set is free, and maps into free G-sets come
//! from free G-sets.

use serde::Serialize;

use crate::cases::group::{group_as_category, FinGroup};
use crate::cases::gset::{
    check_free_retract, equivariant_maps, free_factorization, gset_upper, iso_classes, GSet, Shape,
};
use crate::cases::{guarded, CheckOutcome};
use crate::error::Result;
use crate::setcat::natural::{for_each_nat, Budget};
use crate::setcat::Ctx;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSuite {
    pub group: String,
    pub order: usize,
    pub max_size: usize,
    pub checks: Vec<CheckOutcome>,
}

impl GroupSuite {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Retracts of `x` with their section and retraction, one per idempotent.
pub fn retract_pairs(x: &GSet, budget: &mut Budget) -> Result<Vec<(GSet, Vec<usize>, Vec<usize>)>> {
    let cat = group_as_category(&x.group);
    let p = x.to_presheaf();
    let mut out = Vec::new();
    for_each_nat(&cat, &p, &p, None, budget, &mut |e| {
        let e = &e.comps[0];
        if (0..e.len()).all(|i| e[e[i]] == e[i]) {
            let mut image = e.clone();
            image.sort_unstable();
            image.dedup();
            let r = e
                .iter()
                .map(|v| image.binary_search(v).expect("in the image"))
                .collect();
            out.push((x.restrict(&image), image, r));
        }
        true
    })?;
    Ok(out)
}

/// `H^*X` is empty unless `X ≅ G×I`, and then it is `G^I`: a point for `I = ∅`,
/// otherwise free on `|G|^(|I|-1)` orbits.
fn predicted_image(g: &FinGroup, x: &GSet) -> Shape {
    match x.shape() {
        Shape::Empty => Shape::Singleton,
        Shape::Free(i) => Shape::Free(g.order().pow(i as u32 - 1)),
        _ => Shape::Empty,
    }
}

fn same_shape(a: &Shape, b: &Shape) -> bool {
    // over the trivial group the point is also free on one orbit
    a == b
        || matches!(
            (a, b),
            (Shape::Singleton, Shape::Free(1)) | (Shape::Free(1), Shape::Singleton)
        )
}

fn point_or_free(s: &Shape) -> bool {
    matches!(s, Shape::Empty | Shape::Singleton | Shape::Free(_))
}

fn check_images(g: &FinGroup, classes: &[GSet], ctx: &mut Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("images are empty, a point, or free");
    for x in classes {
        let u = gset_upper(x, ctx)?;
        out.cases += 1;
        let (got, want) = (u.shape(), predicted_image(g, x));
        if !same_shape(&got, &want) {
            out.fail(format!(
                "X with orbit types {:?}: image {got:?}, predicted {want:?}",
                x.signature()
            ));
        }
    }
    Ok(out)
}

fn check_image_retracts(classes: &[GSet], ctx: &mut Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("retracts of images are a point or free");
    for x in classes {
        let u = gset_upper(x, ctx)?;
        for (r, s, t) in retract_pairs(&u, &mut ctx.budget)? {
            out.cases += 1;
            let rc = check_free_retract(&u, &r, &s, &t)?;
            if !point_or_free(&rc.retract) || !rc.pass {
                out.fail(format!(
                    "image of {:?} has a retract of shape {:?}",
                    x.signature(),
                    rc.retract
                ));
            }
        }
    }
    Ok(out)
}

fn check_free_retracts(classes: &[GSet], budget: &mut Budget) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("retracts of free G-sets are free");
    for x in classes
        .iter()
        .filter(|x| matches!(x.shape(), Shape::Free(_) | Shape::Singleton))
    {
        for (r, s, t) in retract_pairs(x, budget)? {
            out.cases += 1;
            let rc = check_free_retract(x, &r, &s, &t)?;
            if !rc.pass {
                out.fail(format!(
                    "{:?} has a retract of shape {:?}",
                    rc.source, rc.retract
                ));
            }
        }
    }
    Ok(out)
}

/// Any map `X → G×J` forces `X ≅ G×I` and is `id × k` on it.
fn check_maps_into_free(
    g: &FinGroup,
    classes: &[GSet],
    budget: &mut Budget,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("maps into free G-sets factor through G×I");
    for x in classes {
        for j in 1..=2 {
            let target = GSet::free(g, j);
            for f in equivariant_maps(x, &target, budget)? {
                out.cases += 1;
                let orbits = x.orbits().len();
                if free_factorization(x, j, &f.comps[0]) != Some(orbits) {
                    out.fail(format!("{:?} → G×{j} by {:?}", x.signature(), f.comps[0]));
                }
            }
        }
    }
    Ok(out)
}

/// All four checks over the iso-classes of G-sets with at most `max_size` points.
pub fn group_image_suite(
    name: &str,
    g: &FinGroup,
    max_size: usize,
    ctx: &Ctx,
) -> Result<GroupSuite> {
    let classes = iso_classes(g, max_size);
    let limit = ctx.budget.limit();
    let fresh = || Ctx::new(ctx.max_set, limit);
    let checks = vec![
        guarded("images are empty, a point, or free", || {
            check_images(g, &classes, &mut fresh())
        })?,
        guarded("retracts of images are a point or free", || {
            check_image_retracts(&classes, &mut fresh())
        })?,
        guarded("retracts of free G-sets are free", || {
            check_free_retracts(&classes, &mut Budget::new(limit))
        })?,
        guarded("maps into free G-sets factor through G×I", || {
            check_maps_into_free(g, &classes, &mut Budget::new(limit))
        })?,
    ];
    Ok(GroupSuite {
        group: name.to_string(),
        order: g.order(),
        max_size,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_up_to_four() {
        let s = group_image_suite("Z2", &FinGroup::cyclic(2), 4, &Ctx::default()).unwrap();
        assert!(s.pass(), "{s:?}");
        assert!(s.checks.iter().all(|c| c.cases > 0 && c.skipped.is_none()));
    }

    #[test]
    fn trivial_group() {
        let s = group_image_suite("1", &FinGroup::trivial(), 3, &Ctx::default()).unwrap();
        assert!(s.pass(), "{s:?}");
    }

    #[test]
    fn section_and_retraction_compose_to_identity() {
        let x = GSet::free(&FinGroup::cyclic(3), 2);
        let mut b = Budget::new(1_000_000);
        let pairs = retract_pairs(&x, &mut b).unwrap();
        assert!(pairs
            .iter()
            .all(|(r, s, t)| (0..r.size()).all(|i| t[s[i]] == i)));
        // identity, and one projection onto each orbit per choice of image point
        assert_eq!(pairs.len(), 1 + 2 * 3);
    }
}
