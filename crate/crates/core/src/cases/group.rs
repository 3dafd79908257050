//! Small finite groups given by multiplication tables.

use crate::error::{Error, Result};
use crate::setcat::FinCategory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    /// `mul[g][h] = gh`.
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FinGroup {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0
            || mul
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
        {
            return Err(Error::input(
                "group table must be a nonempty square over 0..n",
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::law(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::law("no identity element"))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                    .ok_or_else(|| Error::law(format!("{g} has no inverse")))
            })
            .collect::<Result<_>>()?;
        Ok(FinGroup {
            mul,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FinGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(mul).expect("cyclic groups are groups")
    }

    /// Permutations of three points, composed as functions: `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        FinGroup::new(mul).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn op(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    /// The opposite group, `g ·' h = hg`.
    pub fn opposite(&self) -> FinGroup {
        let n = self.order();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| self.mul[b][a]).collect())
            .collect();
        FinGroup {
            mul,
            identity: self.identity,
            inverse: self.inverse.clone(),
        }
    }

    /// All subgroups as sorted element lists.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut out: Vec<Vec<usize>> = Vec::new();
        // every subgroup of these small groups is generated by at most two elements
        for a in 0..n {
            for b in a..n {
                let h = self.generated(&[a, b]);
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out.sort_by_key(|h| (h.len(), h.clone()));
        out
    }

    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut h = vec![self.identity];
        let mut i = 0;
        while i < h.len() {
            for &g in gens {
                let x = self.mul[h[i]][g];
                if !h.contains(&x) {
                    h.push(x);
                }
            }
            i += 1;
        }
        h.sort_unstable();
        h
    }

    pub fn conjugate(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut c: Vec<usize> = h
            .iter()
            .map(|&x| self.mul[self.mul[self.inverse[g]][x]][g])
            .collect();
        c.sort_unstable();
        c
    }

    /// One subgroup from each conjugacy class.
    pub fn subgroup_classes(&self) -> Vec<Vec<usize>> {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for h in self.subgroups() {
            if !reps
                .iter()
                .any(|r| (0..self.order()).any(|g| self.conjugate(r, g) == h))
            {
                reps.push(h);
            }
        }
        reps
    }
}

/// One object whose morphisms are the group elements, `g∘h = gh`.
pub fn group_as_category(g: &FinGroup) -> FinCategory {
    FinCategory::one_object(&g.mul, g.identity).expect("a group is a one-object category")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        assert_eq!(FinGroup::cyclic(2).mul, vec![vec![0, 1], vec![1, 0]]);
        let s3 = FinGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_ne!(s3.op(1, 2), s3.op(2, 1));
        assert_eq!(s3.subgroups().len(), 6);
        assert_eq!(s3.subgroup_classes().len(), 4);
        assert_eq!(FinGroup::cyclic(4).subgroups().len(), 3);
    }

    #[test]
    fn categories() {
        let t = group_as_category(&FinGroup::trivial());
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        let c = group_as_category(&FinGroup::cyclic(2));
        assert_eq!(c.compose(1, 1), Some(0));
        assert_eq!(
            group_as_category(&FinGroup::symmetric3()).num_morphisms(),
            6
        );
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FinGroup::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FinGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FinGroup::new(vec![]).is_err());
    }
}
