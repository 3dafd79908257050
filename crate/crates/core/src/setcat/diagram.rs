//! Diagrams in a finite category, their cone and cocone sheaves, and the
//! limit inferior / superior found by a representability search.

use crate::bitset::Subset;
use crate::error::{Error, Result};
use crate::order::FinPoset;
use crate::setcat::category::FinCategory;
use crate::setcat::kan::{phi_lower, phi_upper, Ctx};
use crate::setcat::presheaf::{Postsheaf, Presheaf};
use crate::setcat::profunctor::Profunctor;

/// A functor `D → C` given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub source: FinCategory,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FinFunctor {
    pub fn new(
        source: FinCategory,
        target: &FinCategory,
        obj: Vec<usize>,
        mor: Vec<usize>,
    ) -> Result<Self> {
        let f = FinFunctor { source, obj, mor };
        f.validate(target)?;
        Ok(f)
    }

    pub fn validate(&self, target: &FinCategory) -> Result<()> {
        let d = &self.source;
        if self.obj.len() != d.num_objects() || self.mor.len() != d.num_morphisms() {
            return Err(Error::input(
                "functor tables do not match the source category",
            ));
        }
        if let Some(&x) = self.obj.iter().find(|&&x| x >= target.num_objects()) {
            return Err(Error::input(format!(
                "object {x} is not in the target category"
            )));
        }
        for (h, &m) in self.mor.iter().enumerate() {
            if m >= target.num_morphisms()
                || target.src(m) != self.obj[d.src(h)]
                || target.tgt(m) != self.obj[d.tgt(h)]
            {
                return Err(Error::law(format!(
                    "morphism {h} is not sent between the images of its ends"
                )));
            }
        }
        for a in 0..d.num_objects() {
            if self.mor[d.identity(a)] != target.identity(self.obj[a]) {
                return Err(Error::law(format!("identity of {a} is not preserved")));
            }
        }
        for g in 0..d.num_morphisms() {
            for f in 0..d.num_morphisms() {
                if let Some(gf) = d.compose(g, f) {
                    if target.compose(self.mor[g], self.mor[f]) != Some(self.mor[gf]) {
                        return Err(Error::law(format!("composite {g}∘{f} is not preserved")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            source: self.source.opposite(),
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }

    /// The discrete diagram picking out the given objects.
    pub fn discrete(target: &FinCategory, objects: &[usize]) -> Result<Self> {
        let mor = objects.iter().map(|&x| target.identity(x)).collect();
        FinFunctor::new(
            FinCategory::discrete(objects.len()),
            target,
            objects.to_vec(),
            mor,
        )
    }

    pub fn identity(cat: &FinCategory) -> Self {
        FinFunctor {
            source: cat.clone(),
            obj: (0..cat.num_objects()).collect(),
            mor: (0..cat.num_morphisms()).collect(),
        }
    }

    /// A subset of a poset, seen as a discrete diagram in the poset category.
    pub fn poset_subset(p: &FinPoset, cat: &FinCategory, s: Subset) -> Result<Self> {
        p.check_subset(s)?;
        let objects: Vec<usize> = (0..p.len()).filter(|&i| s.contains(i)).collect();
        FinFunctor::discrete(cat, &objects)
    }
}

/// All cones over `f` with apex `x`, each as a list of legs `x → F(d)`.
fn cones(cat: &FinCategory, f: &FinFunctor, x: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    let d = &f.source;
    let n = d.num_objects();
    let mut out = Vec::new();
    let mut legs = vec![usize::MAX; n];
    fn go(
        cat: &FinCategory,
        f: &FinFunctor,
        x: usize,
        i: usize,
        legs: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        let d = &f.source;
        if i == legs.len() {
            if out.len() == limit {
                return Err(Error::cap(format!("cones with apex {x}"), limit + 1, limit));
            }
            out.push(legs.clone());
            return Ok(());
        }
        for &m in cat.hom(x, f.obj[i]) {
            legs[i] = m;
            // every morphism of D between objects already chosen must commute
            let ok = (0..d.num_morphisms()).all(|h| {
                let (s, t) = (d.src(h), d.tgt(h));
                s > i || t > i || cat.compose(f.mor[h], legs[s]) == Some(legs[t])
            });
            if ok {
                go(cat, f, x, i + 1, legs, out, limit)?;
            }
        }
        legs[i] = usize::MAX;
        Ok(())
    }
    go(cat, f, x, 0, &mut legs, &mut out, limit)?;
    Ok(out)
}

/// Cones over `f`: a presheaf on `C`, acting by precomposition.
pub fn diagram_presheaf(cat: &FinCategory, f: &FinFunctor, ctx: &Ctx) -> Result<Presheaf> {
    f.validate(cat)?;
    let at: Vec<Vec<Vec<usize>>> = (0..cat.num_objects())
        .map(|x| cones(cat, f, x, ctx.max_set))
        .collect::<Result<_>>()?;
    let act = (0..cat.num_morphisms())
        .map(|g| {
            let (x2, x) = (cat.src(g), cat.tgt(g));
            at[x]
                .iter()
                .map(|legs| {
                    let moved: Vec<usize> = legs
                        .iter()
                        .map(|&m| cat.compose(m, g).expect("composable"))
                        .collect();
                    at[x2]
                        .iter()
                        .position(|c| *c == moved)
                        .expect("cones pull back to cones")
                })
                .collect()
        })
        .collect();
    Ok(Presheaf {
        sizes: at.iter().map(Vec::len).collect(),
        act,
    })
}

/// Cocones under `f`: a postsheaf on `C`. An empty diagram has exactly one
/// cocone at every object, so this is then the terminal postsheaf.
pub fn diagram_postsheaf(cat: &FinCategory, f: &FinFunctor, ctx: &Ctx) -> Result<Postsheaf> {
    diagram_presheaf(&cat.opposite(), &f.opposite(), ctx)
}

/// An object `x` and element `e ∈ P(x)` with `k ↦ P(k)(e)` a bijection `C(−, x) ≅ P`.
pub fn representing(cat: &FinCategory, p: &Presheaf) -> Option<(usize, usize)> {
    (0..cat.num_objects()).find_map(|x| {
        (0..p.sizes[x])
            .find(|&e| {
                (0..cat.num_objects()).all(|y| {
                    let hom = cat.hom(y, x);
                    if hom.len() != p.sizes[y] {
                        return false;
                    }
                    let mut seen = vec![false; hom.len()];
                    hom.iter()
                        .all(|&k| !std::mem::replace(&mut seen[p.act[k][e]], true))
                })
            })
            .map(|e| (x, e))
    })
}

/// The object representing `H_*` of the cocone postsheaf, if there is one.
pub fn liminf_cat(cat: &FinCategory, f: &FinFunctor, ctx: &mut Ctx) -> Result<Option<usize>> {
    let beta = diagram_postsheaf(cat, f, ctx)?;
    let down = phi_lower(&Profunctor::hom(cat), &beta, ctx)?;
    Ok(representing(cat, &down.sheaf).map(|(x, _)| x))
}

/// The object corepresenting `H^*` of the cone presheaf, if there is one.
pub fn limsup_cat(cat: &FinCategory, f: &FinFunctor, ctx: &mut Ctx) -> Result<Option<usize>> {
    let alpha = diagram_presheaf(cat, f, ctx)?;
    let up = phi_upper(&Profunctor::hom(cat), &alpha, ctx)?;
    Ok(representing(&cat.opposite(), &up.sheaf).map(|(x, _)| x))
}
