//! Profunctors `Φ: A^op × B → Set` with explicit action tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::FinPoset;
use crate::setcat::category::FinCategory;
use crate::setcat::presheaf::{Postsheaf, Presheaf, MAX_SET_SIZE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    pub source: FinCategory,
    pub target: FinCategory,
    /// `sizes[a][b] = |Φ(a,b)|`.
    pub sizes: Vec<Vec<usize>>,
    /// `ract[g][b]` for `g: a → a'` in A maps `Φ(a',b) → Φ(a,b)`.
    pub ract: Vec<Vec<Vec<usize>>>,
    /// `lact[h][a]` for `h: b → b'` in B maps `Φ(a,b) → Φ(a,b')`.
    pub lact: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct ProfunctorJson {
    sizes: Vec<Vec<usize>>,
    ract: Vec<Vec<Vec<usize>>>,
    lact: Vec<Vec<Vec<usize>>>,
}

impl Profunctor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        sizes: Vec<Vec<usize>>,
        ract: Vec<Vec<Vec<usize>>>,
        lact: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let p = Profunctor {
            source,
            target,
            sizes,
            ract,
            lact,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let (na, nb) = (self.source.num_objects(), self.target.num_objects());
        if self.sizes.len() != na || self.sizes.iter().any(|r| r.len() != nb) {
            return Err(Error::input(format!("profunctor sizes must be {na}×{nb}")));
        }
        if let Some(&s) = self.sizes.iter().flatten().find(|&&s| s > MAX_SET_SIZE) {
            return Err(Error::cap("profunctor component size", s, MAX_SET_SIZE));
        }
        if self.ract.len() != self.source.num_morphisms() || self.ract.iter().any(|r| r.len() != nb)
        {
            return Err(Error::input(
                "ract needs one table per A-morphism and B-object",
            ));
        }
        if self.lact.len() != self.target.num_morphisms() || self.lact.iter().any(|r| r.len() != na)
        {
            return Err(Error::input(
                "lact needs one table per B-morphism and A-object",
            ));
        }
        for b in 0..nb {
            self.column(b)
                .validate(&self.source)
                .map_err(|e| Error::input(format!("column {b}: {e}")))?;
        }
        for a in 0..na {
            self.row(a)
                .validate(&self.target.opposite())
                .map_err(|e| Error::input(format!("row {a}: {e}")))?;
        }
        for g in 0..self.source.num_morphisms() {
            let (a, a2) = (self.source.src(g), self.source.tgt(g));
            for h in 0..self.target.num_morphisms() {
                let (b, b2) = (self.target.src(h), self.target.tgt(h));
                for e in 0..self.sizes[a2][b] {
                    let one = self.lact[h][a][self.ract[g][b][e]];
                    let two = self.ract[g][b2][self.lact[h][a2][e]];
                    if one != two {
                        return Err(Error::law(format!(
                            "actions do not commute: A-morphism {g}, B-morphism {h}, element {e} of Φ({a2},{b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Φ(−, u)` as a presheaf on A.
    pub fn column(&self, u: usize) -> Presheaf {
        Presheaf {
            sizes: self.sizes.iter().map(|r| r[u]).collect(),
            act: self.ract.iter().map(|g| g[u].clone()).collect(),
        }
    }

    /// `Φ(ℓ, −)` as a postsheaf on B.
    pub fn row(&self, l: usize) -> Postsheaf {
        Presheaf {
            sizes: self.sizes[l].clone(),
            act: self.lact.iter().map(|h| h[l].clone()).collect(),
        }
    }

    /// `Ψ: (B^op)^op × A^op → Set`, `Ψ(b, a) = Φ(a, b)`: swaps the roles of
    /// presheaves and postsheaves.
    pub fn transpose(&self) -> Profunctor {
        let (na, nb) = (self.source.num_objects(), self.target.num_objects());
        Profunctor {
            source: self.target.opposite(),
            target: self.source.opposite(),
            sizes: (0..nb)
                .map(|b| (0..na).map(|a| self.sizes[a][b]).collect())
                .collect(),
            ract: self.lact.clone(),
            lact: self.ract.clone(),
        }
    }

    /// Hom profunctor `H(a, b) = C(a, b)`, elements indexed by position in the hom set.
    pub fn hom(cat: &FinCategory) -> Profunctor {
        let n = cat.num_objects();
        let idx = |a: usize, b: usize, f: usize| {
            cat.hom(a, b)
                .iter()
                .position(|&k| k == f)
                .expect("in hom set")
        };
        let sizes = (0..n)
            .map(|a| (0..n).map(|b| cat.hom(a, b).len()).collect())
            .collect();
        let ract = (0..cat.num_morphisms())
            .map(|g| {
                let (a, a2) = (cat.src(g), cat.tgt(g));
                (0..n)
                    .map(|b| {
                        cat.hom(a2, b)
                            .iter()
                            .map(|&k| idx(a, b, cat.compose(k, g).expect("composable")))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let lact = (0..cat.num_morphisms())
            .map(|h| {
                let (b, b2) = (cat.src(h), cat.tgt(h));
                (0..n)
                    .map(|a| {
                        cat.hom(a, b)
                            .iter()
                            .map(|&k| idx(a, b2, cat.compose(h, k).expect("composable")))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Profunctor {
            source: cat.clone(),
            target: cat.clone(),
            sizes,
            ract,
            lact,
        }
    }

    /// The 1×1 matrix with value `R = 0..r` over discrete one-object categories.
    pub fn constant(r: usize) -> Profunctor {
        let one = FinCategory::discrete(1);
        Profunctor {
            source: one.clone(),
            target: one,
            sizes: vec![vec![r]],
            ract: vec![vec![(0..r).collect()]],
            lact: vec![vec![(0..r).collect()]],
        }
    }

    /// Order matrix `Φ(x, y) = 1 iff x ≤ y` over discrete categories.
    pub fn order_matrix(p: &FinPoset) -> Profunctor {
        let n = p.len();
        let d = FinCategory::discrete(n);
        let sizes: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| usize::from(p.leq(x, y))).collect())
            .collect();
        let ract = (0..n)
            .map(|a| (0..n).map(|b| (0..sizes[a][b]).collect()).collect())
            .collect();
        let lact = (0..n)
            .map(|b| (0..n).map(|a| (0..sizes[a][b]).collect()).collect())
            .collect();
        Profunctor {
            source: d.clone(),
            target: d,
            sizes,
            ract,
            lact,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "sizes": self.sizes,
            "ract": self.ract,
            "lact": self.lact,
        })
    }

    /// Reads `{"source":cat?, "target":cat?, "sizes", "ract", "lact"}`; missing
    /// categories default to `default_cat` (the category file given to the CLI).
    pub fn from_json(v: &serde_json::Value, default_cat: Option<&FinCategory>) -> Result<Self> {
        let cat_at = |key: &str| -> Result<FinCategory> {
            match v.get(key) {
                Some(c) => FinCategory::from_json(c),
                None => default_cat.cloned().ok_or_else(|| {
                    Error::input(format!("profunctor JSON: missing \"{key}\" category"))
                }),
            }
        };
        let (source, target) = (cat_at("source")?, cat_at("target")?);
        let body: ProfunctorJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("profunctor JSON: {e}")))?;
        Profunctor::new(source, target, body.sizes, body.ract, body.lact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_profunctor_is_valid() {
        let c = FinCategory::from_poset(&FinPoset::from_relations(3, &[(0, 1), (0, 2)]).unwrap());
        let h = Profunctor::hom(&c);
        h.validate().unwrap();
        h.transpose().validate().unwrap();
        let g = FinCategory::one_object(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 0).unwrap();
        let hg = Profunctor::hom(&g);
        hg.validate().unwrap();
        assert_eq!(hg.transpose().transpose(), hg);
    }

    #[test]
    fn rejects_broken_actions() {
        let g = FinCategory::one_object(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let mut h = Profunctor::hom(&g);
        h.lact[1][0] = vec![0, 0];
        assert!(h.validate().is_err());
    }

    #[test]
    fn order_matrix_and_json() {
        let p = FinPoset::chain(2);
        let m = Profunctor::order_matrix(&p);
        m.validate().unwrap();
        assert_eq!(m.sizes, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(Profunctor::from_json(&m.to_json(), None).unwrap(), m);
        Profunctor::constant(3).validate().unwrap();
    }
}
