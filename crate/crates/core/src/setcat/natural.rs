//! Natural transformations between presheaves: representation, checks and a
//! backtracking enumerator with forward propagation along morphisms.

use crate::error::{Error, Result};
use crate::setcat::category::FinCategory;
use crate::setcat::presheaf::Presheaf;

/// Default number of candidate assignments a search may try.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTrans {
    /// `comps[x][e]` is the image of `e ∈ F(x)`.
    pub comps: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(p: &Presheaf) -> Self {
        NatTrans {
            comps: p.sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &NatTrans) -> NatTrans {
        NatTrans {
            comps: first
                .comps
                .iter()
                .zip(&self.comps)
                .map(|(a, b)| a.iter().map(|&v| b[v]).collect())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| {
            let mut seen = c.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Surjective onto a codomain with the given component sizes.
    pub fn is_surjective(&self, codomain: &Presheaf) -> bool {
        self.comps.iter().zip(&codomain.sizes).all(|(c, &n)| {
            let mut hit = vec![false; n];
            c.iter().for_each(|&v| hit[v] = true);
            hit.into_iter().all(|b| b)
        })
    }
}

/// Checks component shapes and every naturality square.
pub fn is_natural(cat: &FinCategory, from: &Presheaf, to: &Presheaf, t: &NatTrans) -> bool {
    if t.comps.len() != cat.num_objects() {
        return false;
    }
    for x in 0..cat.num_objects() {
        if t.comps[x].len() != from.sizes[x] || t.comps[x].iter().any(|&v| v >= to.sizes[x]) {
            return false;
        }
    }
    (0..cat.num_morphisms()).all(|f| {
        let (x, y) = (cat.src(f), cat.tgt(f));
        (0..from.sizes[y]).all(|e| t.comps[x][from.act[f][e]] == to.act[f][t.comps[y][e]])
    })
}

/// Counts candidate assignments and fails once the limit is passed.
#[derive(Clone, Debug)]
pub struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    pub fn spend(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::cap("enumeration budget", self.used, self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    cat: &'a FinCategory,
    from: &'a Presheaf,
    to: &'a Presheaf,
    slots: Vec<(usize, usize)>,
    assign: Vec<Vec<usize>>,
    trail: Vec<(usize, usize)>,
    stack: Vec<(usize, usize, usize)>,
}

impl Search<'_> {
    /// Assigns `(y, e) ↦ v` and everything it forces; false on a conflict.
    fn propagate(&mut self, y: usize, e: usize, v: usize) -> bool {
        self.stack.clear();
        self.stack.push((y, e, v));
        while let Some((y, e, v)) = self.stack.pop() {
            let cur = self.assign[y][e];
            if cur != UNSET {
                if cur != v {
                    return false;
                }
                continue;
            }
            self.assign[y][e] = v;
            self.trail.push((y, e));
            for &f in self.cat.morphisms_into(y) {
                let x = self.cat.src(f);
                self.stack.push((x, self.from.act[f][e], self.to.act[f][v]));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (y, e) = self.trail.pop().expect("nonempty");
            self.assign[y][e] = UNSET;
        }
    }

    /// Depth-first search with an explicit stack of `(slot, next value, trail mark)`.
    fn run(
        &mut self,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&NatTrans) -> bool,
    ) -> Result<bool> {
        let mut frames: Vec<(usize, usize, usize)> = Vec::new();
        let mut start = 0;
        loop {
            let mut i = start;
            while i < self.slots.len() && self.assign[self.slots[i].0][self.slots[i].1] != UNSET {
                i += 1;
            }
            if i == self.slots.len() {
                if !visit(&NatTrans {
                    comps: self.assign.clone(),
                }) {
                    return Ok(false);
                }
            } else {
                frames.push((i, 0, self.trail.len()));
            }
            loop {
                let Some(top) = frames.last_mut() else {
                    return Ok(true);
                };
                let (i, v, mark) = *top;
                self.undo(mark);
                let (y, e) = self.slots[i];
                if v >= self.to.sizes[y] {
                    frames.pop();
                    continue;
                }
                top.1 = v + 1;
                budget.spend(1)?;
                if self.propagate(y, e, v) {
                    start = i + 1;
                    break;
                }
            }
        }
    }
}

/// Visits every natural transformation `from → to` extending the optional
/// partial assignment `fixed` (`fixed[x][e] = Some(v)` forces `e ↦ v`).
/// `visit` returns false to stop early; the result is false if it did.
pub fn for_each_nat(
    cat: &FinCategory,
    from: &Presheaf,
    to: &Presheaf,
    fixed: Option<&[Vec<Option<usize>>]>,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&NatTrans) -> bool,
) -> Result<bool> {
    if from.sizes.len() != cat.num_objects() || to.sizes.len() != cat.num_objects() {
        return Err(Error::input(
            "presheaves live over different base categories",
        ));
    }
    // Objects with many incoming morphisms force the most, so go first.
    let mut objs: Vec<usize> = (0..cat.num_objects()).collect();
    objs.sort_by_key(|&y| (std::cmp::Reverse(cat.morphisms_into(y).len()), y));
    let slots = objs
        .iter()
        .flat_map(|&y| (0..from.sizes[y]).map(move |e| (y, e)))
        .collect();
    let mut s = Search {
        cat,
        from,
        to,
        slots,
        assign: from.sizes.iter().map(|&n| vec![UNSET; n]).collect(),
        trail: Vec::new(),
        stack: Vec::new(),
    };
    if let Some(fixed) = fixed {
        for (x, row) in fixed.iter().enumerate() {
            for (e, v) in row.iter().enumerate() {
                if let Some(v) = *v {
                    if v >= to.sizes[x] || !s.propagate(x, e, v) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    s.run(budget, visit)
}

/// All natural transformations `from → to`, in lexicographic order of components.
pub fn nat_transforms(
    cat: &FinCategory,
    from: &Presheaf,
    to: &Presheaf,
    budget: &mut Budget,
) -> Result<Vec<NatTrans>> {
    let mut out = Vec::new();
    for_each_nat(cat, from, to, None, budget, &mut |t| {
        out.push(t.clone());
        true
    })?;
    out.sort();
    Ok(out)
}

pub fn count_nat_transforms(
    cat: &FinCategory,
    from: &Presheaf,
    to: &Presheaf,
    budget: &mut Budget,
) -> Result<u64> {
    let mut n = 0u64;
    for_each_nat(cat, from, to, None, budget, &mut |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// Pointwise image factorization `t = mono ∘ epi` through a sub-presheaf of `to`.
/// Image elements keep the order they have in `to`.
pub fn epi_mono_factorize(
    cat: &FinCategory,
    to: &Presheaf,
    t: &NatTrans,
) -> (Presheaf, NatTrans, NatTrans) {
    let image: Vec<Vec<usize>> = t
        .comps
        .iter()
        .zip(&to.sizes)
        .map(|(c, &n)| {
            let mut hit = vec![false; n];
            c.iter().for_each(|&v| hit[v] = true);
            (0..n).filter(|&v| hit[v]).collect()
        })
        .collect();
    let pos = |x: usize, v: usize| image[x].binary_search(&v).expect("in image");
    let sizes = image.iter().map(Vec::len).collect();
    let act = (0..cat.num_morphisms())
        .map(|f| {
            let (x, y) = (cat.src(f), cat.tgt(f));
            image[y].iter().map(|&v| pos(x, to.act[f][v])).collect()
        })
        .collect();
    let epi = NatTrans {
        comps: t
            .comps
            .iter()
            .enumerate()
            .map(|(x, c)| c.iter().map(|&v| pos(x, v)).collect())
            .collect(),
    };
    let mono = NatTrans { comps: image };
    (Presheaf { sizes, act }, epi, mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::presheaf::{yoneda_post, yoneda_pre};

    fn z2() -> FinCategory {
        FinCategory::one_object(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn examples() {
        let c = FinCategory::from_poset(&FinPoset::chain(3));
        let mut b = Budget::default();
        for a in 0..3 {
            let ya = yoneda_pre(&c, a);
            assert_eq!(nat_transforms(&c, &ya, &ya, &mut b).unwrap().len(), 1);
        }
        let e = Presheaf::empty(&c);
        assert_eq!(
            nat_transforms(&c, &e, &yoneda_pre(&c, 1), &mut b)
                .unwrap()
                .len(),
            1
        );
        let g = z2();
        let free = yoneda_pre(&g, 0);
        assert_eq!(free.act[1], vec![1, 0]);
        assert_eq!(nat_transforms(&g, &free, &free, &mut b).unwrap().len(), 2);
    }

    #[test]
    fn yoneda_counts() {
        let c = FinCategory::from_poset(&FinPoset::from_relations(3, &[(0, 2), (1, 2)]).unwrap());
        let mut b = Budget::default();
        let f = yoneda_pre(&c, 2).sum(&c, &yoneda_pre(&c, 0));
        f.validate(&c).unwrap();
        for a in 0..3 {
            let n = nat_transforms(&c, &yoneda_pre(&c, a), &f, &mut b)
                .unwrap()
                .len();
            assert_eq!(n, f.sizes[a]);
        }
        // Discrete base: representables are points.
        let d = FinCategory::discrete(3);
        assert_eq!(yoneda_pre(&d, 1).sizes, vec![0, 1, 0]);
        assert_eq!(yoneda_post(&c, 0).sizes, vec![1, 0, 1]);
    }

    #[test]
    fn matches_filtered_brute_force() {
        let g = z2();
        let free = yoneda_pre(&g, 0);
        let x = free.sum(&g, &Presheaf::terminal(&g));
        let mut b = Budget::default();
        let found = nat_transforms(&g, &x, &x, &mut b).unwrap();
        let mut brute = Vec::new();
        for code in 0..27usize {
            let comp = vec![code % 3, code / 3 % 3, code / 9];
            let t = NatTrans { comps: vec![comp] };
            if is_natural(&g, &x, &x, &t) {
                brute.push(t);
            }
        }
        brute.sort();
        assert_eq!(found, brute);
    }

    #[test]
    fn fixed_values_and_budget() {
        let g = z2();
        let free = yoneda_pre(&g, 0);
        let mut b = Budget::default();
        let mut n = 0;
        let fixed = vec![vec![Some(1), None]];
        for_each_nat(&g, &free, &free, Some(&fixed), &mut b, &mut |t| {
            assert_eq!(t.comps[0], vec![1, 0]);
            n += 1;
            true
        })
        .unwrap();
        assert_eq!(n, 1);
        let mut tiny = Budget::new(1);
        let big = Presheaf::constant(&g, 5);
        assert!(matches!(
            nat_transforms(&g, &big, &big, &mut tiny),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn factorization() {
        let g = z2();
        let free = yoneda_pre(&g, 0);
        let two = free.sum(&g, &free);
        let fold = NatTrans {
            comps: vec![vec![0, 1, 0, 1]],
        };
        assert!(is_natural(&g, &two, &free, &fold));
        let (img, epi, mono) = epi_mono_factorize(&g, &free, &fold);
        assert_eq!(img, free);
        assert_eq!(epi, fold);
        assert_eq!(mono, NatTrans::identity(&free));
        let id = NatTrans::identity(&two);
        let (_, epi, mono) = epi_mono_factorize(&g, &two, &id);
        assert_eq!((epi.clone(), mono), (id.clone(), id));
        let c = FinCategory::discrete(1);
        let bang = NatTrans {
            comps: vec![vec![0, 0]],
        };
        let (_, epi, mono) = epi_mono_factorize(&c, &Presheaf::terminal(&c), &bang);
        assert_eq!(epi, bang);
        assert_eq!(mono.comps, vec![vec![0]]);
    }
}
