//! G-sets over a cyclic group of prime order, which split as `X₁` fixed
//! points plus `X_p` free orbits.

use num_bigint::BigUint;
use serde::Serialize;

use crate::cases::group::FinGroup;
use crate::cases::gset::{equivariant_maps, GSet};
use crate::error::{Error, Result};
use crate::setcat::natural::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZpVector {
    pub p: usize,
    pub one: usize,
    pub free: usize,
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl ZpVector {
    pub fn new(p: usize, one: usize, free: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(ZpVector { p, one, free })
    }

    pub fn size(&self) -> usize {
        self.one + self.p * self.free
    }

    /// Fixed points first, then the free orbits as blocks of `p`.
    pub fn to_gset(&self) -> GSet {
        let g = FinGroup::cyclic(self.p);
        let points = GSet {
            group: g.clone(),
            act: vec![(0..self.one).collect(); self.p],
        };
        points.sum(&GSet::free(&g, self.free))
    }

    /// Orbit counts of a G-set over `ℤp`; fails if some orbit is neither a point nor free.
    pub fn from_gset(x: &GSet) -> Result<Self> {
        let p = x.group.order();
        let mut v = ZpVector::new(p, 0, 0)?;
        for o in x.orbits() {
            match o.len() {
                1 => v.one += 1,
                n if n == p => v.free += 1,
                n => {
                    return Err(Error::law(format!(
                        "orbit of size {n} over a group of order {p}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// `Φ^L`, the `L`-fold power with the diagonal action, as orbit counts.
    pub fn power(&self, l: u32) -> Result<ZpVector> {
        let all = (self.size() as u128).checked_pow(l);
        let fixed = (self.one as u128).checked_pow(l);
        match (all, fixed) {
            (Some(a), Some(f)) if a <= usize::MAX as u128 => {
                ZpVector::new(self.p, f as usize, ((a - f) / self.p as u128) as usize)
            }
            _ => Err(Error::cap("power of a vector", u128::MAX, usize::MAX)),
        }
    }
}

/// `Y₁^{X₁} (Y₁ + pY_p)^{X_p}`.
pub fn zp_hom_count(x: &ZpVector, y: &ZpVector) -> Result<BigUint> {
    if x.p != y.p {
        return Err(Error::input("vectors over different groups"));
    }
    let one = BigUint::from(y.one).pow(x.one as u32);
    let free = BigUint::from(y.size()).pow(x.free as u32);
    Ok(one * free)
}

/// Counts equivariant maps by enumeration.
pub fn zp_hom_bruteforce(x: &ZpVector, y: &ZpVector, budget: &mut Budget) -> Result<u64> {
    if x.p != y.p {
        return Err(Error::input("vectors over different groups"));
    }
    Ok(equivariant_maps(&x.to_gset(), &y.to_gset(), budget)?.len() as u64)
}

/// Every map `X → Y` checked for equivariance; for tiny sets only.
pub fn zp_hom_naive(x: &ZpVector, y: &ZpVector) -> u64 {
    let (gx, gy) = (x.to_gset(), y.to_gset());
    let (n, m) = (gx.size(), gy.size());
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        if (0..x.p).all(|g| (0..n).all(|a| f[gx.act[g][a]] == gy.act[g][f[a]])) {
            count += 1;
        }
        let mut i = 0;
        while i < n && f[i] + 1 == m {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        f[i] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcat::natural::DEFAULT_BUDGET;

    #[test]
    fn examples() {
        let v = |p, a, b| ZpVector::new(p, a, b).unwrap();
        let mut b = Budget::new(DEFAULT_BUDGET);
        assert_eq!(
            zp_hom_count(&v(2, 1, 1), &v(2, 1, 1)).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            zp_hom_bruteforce(&v(2, 1, 1), &v(2, 1, 1), &mut b).unwrap(),
            3
        );
        assert_eq!(
            zp_hom_count(&v(2, 0, 0), &v(2, 0, 0)).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            zp_hom_count(&v(3, 0, 1), &v(3, 1, 1)).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(zp_hom_naive(&v(3, 0, 1), &v(3, 1, 1)), 4);
    }

    #[test]
    fn formula_matches_naive_for_p2() {
        for (x1, xp, y1, yp) in (0..3).flat_map(|a| {
            (0..2).flat_map(move |b| (0..3).flat_map(move |c| (0..2).map(move |d| (a, b, c, d))))
        }) {
            let (x, y) = (
                ZpVector::new(2, x1, xp).unwrap(),
                ZpVector::new(2, y1, yp).unwrap(),
            );
            assert_eq!(
                zp_hom_count(&x, &y).unwrap(),
                BigUint::from(zp_hom_naive(&x, &y))
            );
        }
    }

    #[test]
    fn decomposition_roundtrip() {
        let v = ZpVector::new(3, 2, 1).unwrap();
        assert_eq!(ZpVector::from_gset(&v.to_gset()).unwrap(), v);
        assert!(ZpVector::new(4, 0, 0).is_err());
        let p = ZpVector::new(2, 1, 1).unwrap().power(2).unwrap();
        assert_eq!((p.one, p.free), (1, 4));
    }
}
