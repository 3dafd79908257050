//! Set-valued functors on finite categories.
//!
//! A presheaf on `C` assigns a set `0..sizes[x]` to each object and, to each
//! morphism `f: x → y`, a function `act[f]: at(y) → at(x)`. A postsheaf on
//! `C` is stored as a presheaf on `C^op` with the same morphism ids, so
//! `act[f]` then runs `at(x) → at(y)`.

use crate::error::{Error, Result};
use crate::setcat::category::FinCategory;
use crate::setcat::natural::Budget;

/// Default limit on the size of any single component set.
pub const MAX_SET_SIZE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presheaf {
    pub sizes: Vec<usize>,
    /// `act[f][e]` for `e` in the set at `tgt f`.
    pub act: Vec<Vec<usize>>,
}

/// Postsheaves are presheaves on the opposite category.
pub type Postsheaf = Presheaf;

impl Presheaf {
    /// Validates shapes and functoriality against `cat`.
    pub fn new(cat: &FinCategory, sizes: Vec<usize>, act: Vec<Vec<usize>>) -> Result<Self> {
        let p = Presheaf { sizes, act };
        p.validate(cat)?;
        Ok(p)
    }

    pub fn validate(&self, cat: &FinCategory) -> Result<()> {
        if self.sizes.len() != cat.num_objects() {
            return Err(Error::input(format!(
                "presheaf has {} components for {} objects",
                self.sizes.len(),
                cat.num_objects()
            )));
        }
        if self.act.len() != cat.num_morphisms() {
            return Err(Error::input(format!(
                "presheaf has {} action tables for {} morphisms",
                self.act.len(),
                cat.num_morphisms()
            )));
        }
        for f in 0..cat.num_morphisms() {
            let (x, y) = (cat.src(f), cat.tgt(f));
            let table = &self.act[f];
            if table.len() != self.sizes[y] || table.iter().any(|&v| v >= self.sizes[x]) {
                return Err(Error::input(format!(
                    "action of morphism {f} is not a map at({y}) → at({x})"
                )));
            }
            if cat.is_identity(f) && table.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::law(format!(
                    "identity {f} does not act as the identity"
                )));
            }
        }
        for g in 0..cat.num_morphisms() {
            for f in 0..cat.num_morphisms() {
                let Some(gf) = cat.compose(g, f) else {
                    continue;
                };
                // act(g∘f) = act(f) ∘ act(g)
                for e in 0..self.sizes[cat.tgt(g)] {
                    if self.act[gf][e] != self.act[f][self.act[g][e]] {
                        return Err(Error::law(format!(
                            "functoriality fails at {g}∘{f}, element {e}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(cat: &FinCategory) -> Self {
        Presheaf {
            sizes: vec![0; cat.num_objects()],
            act: vec![Vec::new(); cat.num_morphisms()],
        }
    }

    /// Constant at the set `0..n`, every morphism acting as the identity.
    pub fn constant(cat: &FinCategory, n: usize) -> Self {
        Presheaf {
            sizes: vec![n; cat.num_objects()],
            act: vec![(0..n).collect(); cat.num_morphisms()],
        }
    }

    pub fn terminal(cat: &FinCategory) -> Self {
        Self::constant(cat, 1)
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Coproduct, with the elements of `other` placed after those of `self`.
    pub fn sum(&self, cat: &FinCategory, other: &Presheaf) -> Presheaf {
        let sizes = self
            .sizes
            .iter()
            .zip(&other.sizes)
            .map(|(a, b)| a + b)
            .collect();
        let act = (0..cat.num_morphisms())
            .map(|f| {
                let shift = self.sizes[cat.src(f)];
                self.act[f]
                    .iter()
                    .copied()
                    .chain(other.act[f].iter().map(|&v| v + shift))
                    .collect()
            })
            .collect();
        Presheaf { sizes, act }
    }
}

/// The subterminal presheaf supported on `support`, if that set is closed
/// under the action (downward along morphisms).
pub fn subterminal(cat: &FinCategory, support: &[bool]) -> Option<Presheaf> {
    let sizes: Vec<usize> = support.iter().map(|&b| usize::from(b)).collect();
    let act = (0..cat.num_morphisms())
        .map(|f| vec![0; sizes[cat.tgt(f)]])
        .collect();
    let p = Presheaf { sizes, act };
    p.validate(cat).is_ok().then_some(p)
}

/// Every presheaf with all sets of size at most `max_size`, with repetitions
/// up to isomorphism.
pub fn all_presheaves(
    cat: &FinCategory,
    max_size: usize,
    budget: &mut Budget,
) -> Result<Vec<Presheaf>> {
    let n = cat.num_objects();
    let free: Vec<usize> = (0..cat.num_morphisms())
        .filter(|&f| !cat.is_identity(f))
        .collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; n];
    loop {
        let mut p = Presheaf {
            sizes: sizes.clone(),
            act: (0..cat.num_morphisms())
                .map(|f| (0..sizes[cat.tgt(f)]).collect())
                .collect(),
        };
        // an odometer over every table of every non-identity morphism
        let digits: Vec<(usize, usize)> = free
            .iter()
            .flat_map(|&f| (0..sizes[cat.tgt(f)]).map(move |e| (f, e)))
            .collect();
        let ok = digits.iter().all(|&(f, _)| sizes[cat.src(f)] > 0);
        if ok {
            for &(f, e) in &digits {
                p.act[f][e] = 0;
            }
            loop {
                budget.spend(1)?;
                if p.validate(cat).is_ok() {
                    out.push(p.clone());
                }
                let mut i = 0;
                while i < digits.len() {
                    let (f, e) = digits[i];
                    if p.act[f][e] + 1 < sizes[cat.src(f)] {
                        p.act[f][e] += 1;
                        break;
                    }
                    p.act[f][e] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
        }
        let mut i = 0;
        while i < n && sizes[i] == max_size {
            sizes[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(out);
        }
        sizes[i] += 1;
    }
}

/// `∇a = hom(−, a)` with precomposition; elements indexed by position in `hom(x, a)`.
pub fn yoneda_pre(cat: &FinCategory, a: usize) -> Presheaf {
    let sizes: Vec<usize> = (0..cat.num_objects())
        .map(|x| cat.hom(x, a).len())
        .collect();
    let act = (0..cat.num_morphisms())
        .map(|f| {
            let (x, y) = (cat.src(f), cat.tgt(f));
            cat.hom(y, a)
                .iter()
                .map(|&k| {
                    let kf = cat.compose(k, f).expect("composable");
                    cat.hom(x, a)
                        .iter()
                        .position(|&h| h == kf)
                        .expect("in hom set")
                })
                .collect()
        })
        .collect();
    Presheaf { sizes, act }
}

/// `Δa = hom(a, −)` as a presheaf on the opposite category.
pub fn yoneda_post(cat: &FinCategory, a: usize) -> Postsheaf {
    yoneda_pre(&cat.opposite(), a)
}
