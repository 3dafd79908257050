//! Formal contexts (boolean matrices), derivation operators and the concept
//! lattice.

use serde::{Deserialize, Serialize};

use crate::bitset::{Subset, MAX_CARRIER};
use crate::closure::next_closure;
use crate::error::{Error, Result};
use crate::lattice::OrderTable;
use crate::order::FinPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    /// `rows[x]` is the set of attributes of object `x`.
    rows: Vec<Subset>,
    /// `cols[u]` is the set of objects having attribute `u`.
    cols: Vec<Subset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    pub extent: Subset,
    pub intent: Subset,
}

#[derive(Serialize, Deserialize)]
struct ContextJson {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<bool>>,
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let (m, k) = (objects.len(), attributes.len());
        if m > MAX_CARRIER || k > MAX_CARRIER {
            return Err(Error::cap("context dimension", m.max(k), MAX_CARRIER));
        }
        if incidence.len() != m {
            return Err(Error::input(format!(
                "{m} objects but {} incidence rows",
                incidence.len()
            )));
        }
        if let Some(r) = incidence.iter().position(|row| row.len() != k) {
            return Err(Error::input(format!(
                "incidence row {r} has {} entries, expected {k}",
                incidence[r].len()
            )));
        }
        let rows: Vec<Subset> = incidence
            .iter()
            .map(|row| Subset::from_ids((0..k).filter(|&u| row[u])))
            .collect();
        let cols = (0..k)
            .map(|u| Subset::from_ids((0..m).filter(|&x| incidence[x][u])))
            .collect();
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
        })
    }

    /// Context with generated names `g0..`, `m0..`.
    pub fn from_matrix(incidence: Vec<Vec<bool>>) -> Result<Self> {
        let m = incidence.len();
        let k = incidence.first().map_or(0, Vec::len);
        Self::new(
            (0..m).map(|i| format!("g{i}")).collect(),
            (0..k).map(|i| format!("m{i}")).collect(),
            incidence,
        )
    }

    pub fn from_fn(m: usize, k: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let inc = (0..m).map(|x| (0..k).map(|u| f(x, u)).collect()).collect();
        Self::new(
            (0..m).map(|i| format!("g{i}")).collect(),
            (0..k).map(|i| format!("m{i}")).collect(),
            inc,
        )
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, x: usize, u: usize) -> bool {
        self.rows[x].contains(u)
    }

    pub fn incidence(&self) -> Vec<Vec<bool>> {
        (0..self.num_objects())
            .map(|x| {
                (0..self.num_attributes())
                    .map(|u| self.incident(x, u))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// `{ u | ∀x∈L. Φ(x,u) }`, without range checks.
    pub fn up(&self, l: Subset) -> Subset {
        l.iter()
            .fold(Subset::full(self.num_attributes()), |acc, x| {
                acc.intersection(self.rows[x])
            })
    }

    /// `{ ℓ | ∀y∈U. Φ(ℓ,y) }`, without range checks.
    pub fn down(&self, u: Subset) -> Subset {
        u.iter().fold(Subset::full(self.num_objects()), |acc, y| {
            acc.intersection(self.cols[y])
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ContextJson {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            incidence: self.incidence(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let c: ContextJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("context JSON: {e}")))?;
        Self::new(c.objects, c.attributes, c.incidence)
    }
}

fn check_range(s: Subset, n: usize, what: &str) -> Result<()> {
    match s.difference(Subset::full(n)).min() {
        Some(i) => Err(Error::input(format!(
            "{what} {i} out of range for {n} {what}s"
        ))),
        None => Ok(()),
    }
}

pub fn derive_up(c: &FormalContext, l: Subset) -> Result<Subset> {
    check_range(l, c.num_objects(), "object")?;
    Ok(c.up(l))
}

pub fn derive_down(c: &FormalContext, u: Subset) -> Result<Subset> {
    check_range(u, c.num_attributes(), "attribute")?;
    Ok(c.down(u))
}

/// Concepts of a context, sorted by extent bitset value, with their order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptLattice {
    pub concepts: Vec<Concept>,
}

#[derive(Serialize)]
struct ConceptJson {
    extent: Vec<usize>,
    intent: Vec<usize>,
}

#[derive(Serialize)]
struct LatticeJson {
    concepts: Vec<ConceptJson>,
    covers: Vec<(usize, usize)>,
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(self.concepts[j].extent)
    }

    pub fn order_table(&self) -> OrderTable {
        OrderTable::from_fn(self.len(), |i, j| self.leq(i, j))
    }

    /// Intents ordered by reverse inclusion.
    pub fn intent_order_table(&self) -> OrderTable {
        OrderTable::from_fn(self.len(), |i, j| {
            self.concepts[j].intent.is_subset(self.concepts[i].intent)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LatticeJson {
            concepts: self
                .concepts
                .iter()
                .map(|c| ConceptJson {
                    extent: c.extent.to_vec(),
                    intent: c.intent.to_vec(),
                })
                .collect(),
            covers: self.order_table().covers(),
        })
        .expect("serializable")
    }

    pub fn to_dot(&self, ctx: &FormalContext) -> String {
        let name = |ids: Vec<usize>, names: &[String]| {
            ids.into_iter()
                .map(|i| names[i].clone())
                .collect::<Vec<_>>()
                .join(",")
        };
        let labels: Vec<String> = self
            .concepts
            .iter()
            .map(|c| {
                format!(
                    "{{{}}} / {{{}}}",
                    name(c.extent.to_vec(), &ctx.objects),
                    name(c.intent.to_vec(), &ctx.attributes)
                )
            })
            .collect();
        self.order_table().to_dot("concepts", &labels)
    }
}

/// All concepts, enumerated with NextClosure on the smaller side.
pub fn nucleus(c: &FormalContext) -> ConceptLattice {
    let (m, k) = (c.num_objects(), c.num_attributes());
    let mut concepts: Vec<Concept> = if m <= k {
        next_closure(m, |l| c.down(c.up(l)))
            .into_iter()
            .map(|e| Concept {
                extent: e,
                intent: c.up(e),
            })
            .collect()
    } else {
        next_closure(k, |u| c.up(c.down(u)))
            .into_iter()
            .map(|i| Concept {
                extent: c.down(i),
                intent: i,
            })
            .collect()
    };
    concepts.sort();
    ConceptLattice { concepts }
}

/// Scans all `2^m` extents; test oracle for [`nucleus`].
pub fn nucleus_bruteforce(c: &FormalContext) -> ConceptLattice {
    let concepts = Subset::all(c.num_objects())
        .filter(|&l| c.down(c.up(l)) == l)
        .map(|e| Concept {
            extent: e,
            intent: c.up(e),
        })
        .collect();
    ConceptLattice { concepts }
}

/// The context `Φ(x,y) ⟺ x ≤ y` of a poset.
pub fn order_context(p: &FinPoset) -> FormalContext {
    let n = p.len();
    FormalContext::from_fn(n, n, |x, y| p.leq(x, y)).expect("square table of valid size")
}
