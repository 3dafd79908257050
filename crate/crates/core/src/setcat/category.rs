//! Finite categories given by explicit morphism and composition tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::FinPoset;

/// Default limit on the number of morphisms.
pub const MAX_MORPHISMS: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    /// `compose[g][f] = g∘f`, defined when `tgt f = src g`.
    compose: Vec<Vec<Option<usize>>>,
    /// `hom[a][b]`: morphism ids `a → b`, ascending.
    hom: Vec<Vec<Vec<usize>>>,
    /// Morphisms with target `y`.
    into: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    src: usize,
    tgt: usize,
}

#[derive(Serialize, Deserialize)]
struct CategoryJson {
    objects: usize,
    morphisms: Vec<MorphismJson>,
    identity: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

impl FinCategory {
    /// Validates table shapes, identity laws and associativity exhaustively.
    pub fn new(
        n_objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let m = morphisms.len();
        if m > MAX_MORPHISMS {
            return Err(Error::cap("morphism count", m, MAX_MORPHISMS));
        }
        for (i, &(s, t)) in morphisms.iter().enumerate() {
            if s >= n_objects || t >= n_objects {
                return Err(Error::input(format!(
                    "morphism {i} has an endpoint outside 0..{n_objects}"
                )));
            }
        }
        let (src, tgt): (Vec<usize>, Vec<usize>) = morphisms.into_iter().unzip();
        if identity.len() != n_objects {
            return Err(Error::input(format!(
                "{} identities for {n_objects} objects",
                identity.len()
            )));
        }
        for (a, &i) in identity.iter().enumerate() {
            if i >= m || src[i] != a || tgt[i] != a {
                return Err(Error::input(format!(
                    "identity of object {a} is not an endomorphism of {a}"
                )));
            }
        }
        if compose.len() != m || compose.iter().any(|r| r.len() != m) {
            return Err(Error::input(format!("composition table must be {m}×{m}")));
        }
        for g in 0..m {
            for f in 0..m {
                let composable = tgt[f] == src[g];
                match compose[g][f] {
                    Some(h) if !composable => {
                        return Err(Error::input(format!(
                            "composite {g}∘{f} = {h} given but {f} and {g} do not compose"
                        )));
                    }
                    None if composable => {
                        return Err(Error::input(format!("composite {g}∘{f} missing")));
                    }
                    Some(h) if h >= m || src[h] != src[f] || tgt[h] != tgt[g] => {
                        return Err(Error::input(format!(
                            "composite {g}∘{f} = {h} has the wrong endpoints"
                        )));
                    }
                    _ => {}
                }
            }
        }
        for f in 0..m {
            if compose[identity[tgt[f]]][f] != Some(f) || compose[f][identity[src[f]]] != Some(f) {
                return Err(Error::input(format!("identity law fails at morphism {f}")));
            }
        }
        for h in 0..m {
            for g in (0..m).filter(|&g| tgt[g] == src[h]) {
                let hg = compose[h][g].expect("checked");
                for f in (0..m).filter(|&f| tgt[f] == src[g]) {
                    let gf = compose[g][f].expect("checked");
                    if compose[hg][f] != compose[h][gf] {
                        return Err(Error::input(format!(
                            "associativity fails at ({h},{g},{f})"
                        )));
                    }
                }
            }
        }
        Ok(Self::assemble(n_objects, src, tgt, identity, compose))
    }

    fn assemble(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Self {
        let mut hom = vec![vec![Vec::new(); n_objects]; n_objects];
        let mut into = vec![Vec::new(); n_objects];
        for f in 0..src.len() {
            hom[src[f]][tgt[f]].push(f);
            into[tgt[f]].push(f);
        }
        FinCategory {
            n_objects,
            src,
            tgt,
            identity,
            compose,
            hom,
            into,
        }
    }

    /// Objects `0..n`, identities only.
    pub fn discrete(n: usize) -> Self {
        let compose = (0..n)
            .map(|g| (0..n).map(|f| (f == g).then_some(f)).collect())
            .collect();
        Self::assemble(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            compose,
        )
    }

    /// One morphism `x → y` for each `x ≤ y`.
    pub fn from_poset(p: &FinPoset) -> Self {
        let n = p.len();
        let mut id = vec![vec![usize::MAX; n]; n];
        let mut morphisms = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) {
                    id[x][y] = morphisms.len();
                    morphisms.push((x, y));
                }
            }
        }
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for (g, &(y, z)) in morphisms.iter().enumerate() {
            for (f, &(x, y2)) in morphisms.iter().enumerate() {
                if y == y2 {
                    compose[g][f] = Some(id[x][z]);
                }
            }
        }
        let identity = (0..n).map(|x| id[x][x]).collect();
        let (src, tgt) = morphisms.into_iter().unzip();
        Self::assemble(n, src, tgt, identity, compose)
    }

    /// One object whose endomorphisms are `0..n` with `compose[g][h] = table[g][h]`.
    pub fn one_object(table: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = table.len();
        let compose = table
            .iter()
            .map(|r| r.iter().map(|&v| Some(v)).collect())
            .collect();
        Self::new(1, vec![(0, 0); n], vec![unit], compose)
    }

    pub fn opposite(&self) -> Self {
        let m = self.num_morphisms();
        let compose = (0..m)
            .map(|g| (0..m).map(|f| self.compose[f][g]).collect())
            .collect();
        Self::assemble(
            self.n_objects,
            self.tgt.clone(),
            self.src.clone(),
            self.identity.clone(),
            compose,
        )
    }

    pub fn num_objects(&self) -> usize {
        self.n_objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g∘f`, or `None` when `tgt f ≠ src g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    pub fn morphisms_into(&self, y: usize) -> &[usize] {
        &self.into[y]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CategoryJson {
            objects: self.n_objects,
            morphisms: self
                .src
                .iter()
                .zip(&self.tgt)
                .map(|(&src, &tgt)| MorphismJson { src, tgt })
                .collect(),
            identity: self.identity.clone(),
            compose: self.compose.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let c: CategoryJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::input(format!("category JSON: {e}")))?;
        Self::new(
            c.objects,
            c.morphisms.into_iter().map(|m| (m.src, m.tgt)).collect(),
            c.identity,
            c.compose,
        )
    }
}
