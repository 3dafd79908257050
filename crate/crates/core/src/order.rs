//! Finite posets on dense ordinals `0..n`, their bound operators and the
//! Dedekind–MacNeille completion by cuts.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::{Subset, MAX_CARRIER};
use crate::closure::next_closure;
use crate::error::{Error, Result};
use crate::lattice::OrderTable;

/// Default upper bound on the number of poset elements accepted by the CLI.
pub const DEFAULT_MAX_ELEMENTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    n: usize,
    /// `down[y]` holds every `x ≤ y`.
    down: Vec<Subset>,
    /// `up[x]` holds every `y ≥ x`.
    up: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// Validates the three partial order axioms exhaustively.
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if n > MAX_CARRIER {
            return Err(Error::cap("poset size", n, MAX_CARRIER));
        }
        if let Some(r) = leq.iter().position(|row| row.len() != n) {
            return Err(Error::input(format!(
                "row {r} of leq has {} entries, expected {n}",
                leq[r].len()
            )));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::input(format!("not reflexive: {x} ≰ {x}")));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x][y] && leq[y][x] {
                    return Err(Error::input(format!("not antisymmetric: {x} ≤ {y} ≤ {x}")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[x][y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y][z] && !leq[x][z] {
                        return Err(Error::input(format!(
                            "not transitive: {x} ≤ {y} ≤ {z} but {x} ≰ {z}"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(n, |x, y| leq[x][y]))
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::new((0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect())
    }

    fn from_table_unchecked(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let down = (0..n)
            .map(|y| Subset::from_ids((0..n).filter(|&x| leq(x, y))))
            .collect();
        let up = (0..n)
            .map(|x| Subset::from_ids((0..n).filter(|&y| leq(x, y))))
            .collect();
        FinPoset { n, down, up }
    }

    pub fn chain(n: usize) -> Self {
        Self::from_table_unchecked(n, |x, y| x <= y)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_table_unchecked(n, |x, y| x == y)
    }

    /// Smallest order containing the given strict relations (reflexive-transitive closure).
    pub fn from_relations(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in edges {
            if x >= n || y >= n {
                return Err(Error::input(format!(
                    "relation ({x},{y}) out of range for {n} elements"
                )));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::new(leq)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn down(&self, x: usize) -> Subset {
        self.down[x]
    }

    pub fn up(&self, x: usize) -> Subset {
        self.up[x]
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    pub fn order_table(&self) -> OrderTable {
        OrderTable::from_fn(self.n, |x, y| self.leq(x, y))
    }

    /// Opposite order.
    pub fn dual(&self) -> FinPoset {
        FinPoset {
            n: self.n,
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.is_subset(self.full()) {
            Ok(())
        } else {
            let bad = s.difference(self.full()).min().unwrap_or(0);
            Err(Error::input(format!(
                "element {bad} out of range for {} elements",
                self.n
            )))
        }
    }

    pub fn subset_from_ids(&self, ids: &[usize]) -> Result<Subset> {
        match ids.iter().find(|&&i| i >= self.n) {
            Some(i) => Err(Error::input(format!(
                "element {i} out of range for {} elements",
                self.n
            ))),
            None => Ok(Subset::from_ids(ids.iter().copied())),
        }
    }

    /// `{ ℓ | ∀y∈S. ℓ ≤ y }`, without validation.
    pub fn lb(&self, s: Subset) -> Subset {
        s.iter()
            .fold(self.full(), |acc, y| acc.intersection(self.down[y]))
    }

    /// `{ u | ∀x∈S. x ≤ u }`, without validation.
    pub fn ub(&self, s: Subset) -> Subset {
        s.iter()
            .fold(self.full(), |acc, x| acc.intersection(self.up[x]))
    }

    pub fn is_lower_set(&self, s: Subset) -> bool {
        s.iter().all(|y| self.down[y].is_subset(s))
    }

    pub fn is_upper_set(&self, s: Subset) -> bool {
        s.iter().all(|x| self.up[x].is_subset(s))
    }

    /// Least element of `s`, if `s` has one.
    pub fn least(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.up[x]))
    }

    /// Greatest element of `s`, if `s` has one.
    pub fn greatest(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.down[x]))
    }

    pub fn join(&self, s: Subset) -> Option<usize> {
        self.least(self.ub(s))
    }

    pub fn meet(&self, s: Subset) -> Option<usize> {
        self.greatest(self.lb(s))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson {
            n: self.n,
            leq: self.leq_table(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: PosetJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("poset JSON: {e}")))?;
        if p.leq.len() != p.n {
            return Err(Error::input(format!(
                "poset JSON: n = {} but leq has {} rows",
                p.n,
                p.leq.len()
            )));
        }
        Self::new(p.leq)
    }

    /// Image of the poset under a relabeling `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FinPoset {
        let mut inv = vec![0; self.n];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        Self::from_table_unchecked(self.n, |a, b| self.leq(inv[a], inv[b]))
    }

    /// Canonical form up to isomorphism: the lexicographically least strict
    /// order matrix over all relabelings. Only meant for small catalogs.
    pub fn canonical_key(&self) -> Vec<u64> {
        let n = self.n;
        let mut best: Option<Vec<u64>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let key: Vec<u64> = (0..n)
                .map(|a| {
                    let mut row = 0u64;
                    for b in 0..n {
                        if self.leq(p[a], p[b]) {
                            row |= 1 << b;
                        }
                    }
                    row
                })
                .collect();
            if best.as_ref().is_none_or(|bk| key < *bk) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// `lower_bounds` with range checking.
pub fn lower_bounds(p: &FinPoset, s: Subset) -> Result<Subset> {
    p.check_subset(s)?;
    Ok(p.lb(s))
}

/// `upper_bounds` with range checking.
pub fn upper_bounds(p: &FinPoset, s: Subset) -> Result<Subset> {
    p.check_subset(s)?;
    Ok(p.ub(s))
}

/// Join of the lower bounds of the upper bounds of `S`, if it exists in `P`.
pub fn liminf(p: &FinPoset, s: Subset) -> Result<Option<usize>> {
    p.check_subset(s)?;
    Ok(p.join(p.lb(p.ub(s))))
}

/// Meet of the upper bounds of the lower bounds of `S`, if it exists in `P`.
pub fn limsup(p: &FinPoset, s: Subset) -> Result<Option<usize>> {
    p.check_subset(s)?;
    Ok(p.meet(p.ub(p.lb(s))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub lower: Subset,
    pub upper: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMLattice {
    pub cuts: Vec<Cut>,
    /// Cut index of `(↓x, ↑x)` for each element `x`.
    pub embed: Vec<usize>,
}

#[derive(Serialize)]
struct CutJson {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

#[derive(Serialize)]
struct DmJson {
    cuts: Vec<CutJson>,
    embed: Vec<usize>,
}

impl DMLattice {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.cuts[i].lower.is_subset(self.cuts[j].lower)
    }

    pub fn order_table(&self) -> OrderTable {
        OrderTable::from_fn(self.len(), |i, j| self.leq(i, j))
    }

    pub fn index_of_lower(&self, lower: Subset) -> Option<usize> {
        self.cuts.binary_search_by(|c| c.lower.cmp(&lower)).ok()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Meet of a family of cuts: intersect the lower sets.
    pub fn meet(&self, items: &[usize]) -> usize {
        let full = self.cuts[self.top()].lower;
        let lower = items
            .iter()
            .fold(full, |acc, &i| acc.intersection(self.cuts[i].lower));
        self.index_of_lower(lower)
            .expect("cuts are closed under intersection of lower sets")
    }

    /// Join of a family of cuts: intersect the upper sets.
    pub fn join(&self, items: &[usize]) -> usize {
        let full = self.cuts[self.bottom()].upper;
        let upper = items
            .iter()
            .fold(full, |acc, &i| acc.intersection(self.cuts[i].upper));
        self.cuts
            .iter()
            .position(|c| c.upper == upper)
            .expect("cuts are closed under intersection of upper sets")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = DmJson {
            cuts: self
                .cuts
                .iter()
                .map(|c| CutJson {
                    lower: c.lower.to_vec(),
                    upper: c.upper.to_vec(),
                })
                .collect(),
            embed: self.embed.clone(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self.cuts.iter().map(|c| format!("{:?}", c.lower)).collect();
        self.order_table().to_dot("dm", &labels)
    }
}

/// All cuts of `P`, sorted by lower-set bitset value.
pub fn dm_completion(p: &FinPoset) -> DMLattice {
    let mut lowers = next_closure(p.len(), |s| p.lb(p.ub(s)));
    lowers.sort();
    finish_dm(p, lowers)
}

/// Same result as [`dm_completion`] by scanning every subset; test oracle.
pub fn dm_completion_bruteforce(p: &FinPoset) -> DMLattice {
    let lowers: Vec<Subset> = Subset::all(p.len())
        .filter(|&s| p.lb(p.ub(s)) == s)
        .collect();
    finish_dm(p, lowers)
}

fn finish_dm(p: &FinPoset, lowers: Vec<Subset>) -> DMLattice {
    let cuts: Vec<Cut> = lowers
        .into_iter()
        .map(|l| Cut {
            lower: l,
            upper: p.ub(l),
        })
        .collect();
    let embed = (0..p.len())
        .map(|x| {
            cuts.binary_search_by(|c| c.lower.cmp(&p.down(x)))
                .expect("principal down-sets are cuts")
        })
        .collect();
    DMLattice { cuts, embed }
}

/// One representative poset per isomorphism class on exactly `n` elements.
///
/// Grows naturally labeled posets one element at a time (the new element is
/// maximal, its strict down-set a lower set of the old ones) and keeps one
/// poset per canonical form.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    use std::collections::BTreeMap;
    let mut level: Vec<FinPoset> = vec![FinPoset::chain(0)];
    for k in 0..n {
        let mut next: BTreeMap<Vec<u64>, FinPoset> = BTreeMap::new();
        for p in &level {
            for s in Subset::all(k).filter(|&s| p.is_lower_set(s)) {
                let q = FinPoset::from_table_unchecked(k + 1, |x, y| {
                    if y == k {
                        x == k || s.contains(x)
                    } else {
                        x < k && p.leq(x, y)
                    }
                });
                next.entry(q.canonical_key()).or_insert(q);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// Representatives of every poset on `0..=max_n` elements.
pub fn poset_catalog(max_n: usize) -> Vec<FinPoset> {
    (0..=max_n).flat_map(posets_up_to_iso).collect()
}

/// A random poset: random strict upper-triangular relation, transitive
/// closure, then a random relabeling.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinPoset {
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                edges.push((x, y));
            }
        }
    }
    let p = FinPoset::from_relations(n, &edges).expect("upper-triangular relations are acyclic");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    p.relabel(&perm)
}
