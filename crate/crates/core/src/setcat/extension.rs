//! Loose and tight extension matrices between the algebras of the two monads.
//!
//! A row is an algebra `(X, a)` of `Φ_*Φ^*`, a column an algebra `(Y, b)` of
//! `Φ^*Φ_*`. The loose cell holds the maps `f: X → Φ_*Y` with
//! `Φ_*(b) ∘ f = η ∘ f` (or, read literally, `T(f) = Φ_*(b) ∘ f ∘ a`); the
//! tight cell keeps those with `f` mono and a transpose `f': Y → Φ^*X` of the
//! chosen kind.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcat::algebra::{algebra_morphisms, canonical_algebra, Algebra};
use crate::setcat::kan::Ctx;
use crate::setcat::monad::PresheafMonad;
use crate::setcat::natural::{for_each_nat, NatTrans};

/// What "the transpose is epi" is taken to mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TightReading {
    /// `f'` pointwise surjective as a map of postsheaves.
    SurjectiveTranspose,
    /// `f'` epi in the opposite of postsheaves, i.e. pointwise injective.
    InjectiveTranspose,
}

/// Which condition selects the loose maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LooseReading {
    /// `f` lands in the equalizer of `Φ_*(b)` and `η`.
    Equalizer,
    /// `T(f) = Φ_*(b) ∘ f ∘ a` on all of `TX`. Empty as soon as `T` is far
    /// from the identity, e.g. for a constant matrix with two values.
    Square,
    /// [`LooseReading::Equalizer`] plus `f` an algebra map into `(Φ_*Y, Φ_*η_Y)`.
    MorphismEqualizer,
}

impl Default for LooseReading {
    fn default() -> Self {
        LooseReading::Equalizer
    }
}

impl Default for TightReading {
    fn default() -> Self {
        TightReading::SurjectiveTranspose
    }
}

/// Every `g` in the image of `f` satisfies `g_u(b(d)) = d_x(g)`.
pub fn equalizes(col: &Algebra, f: &NatTrans) -> bool {
    f.comps.iter().enumerate().all(|(x, fx)| {
        fx.iter().all(|&gi| {
            let g = &col.level.up.elems[x][gi];
            col.level.t.elems.iter().enumerate().all(|(u, ds)| {
                ds.iter()
                    .enumerate()
                    .all(|(di, d)| g.comps[u][col.structure.comps[u][di]] == d.comps[x][gi])
            })
        })
    })
}

/// The morphism half: `f(a(K))_u(y) = K_u(f'_u(y))`.
pub fn is_morphism_into_canonical(row: &Algebra, col: &Algebra, f: &NatTrans) -> bool {
    let ft = transpose(row, col, f);
    row.level.t.elems.iter().enumerate().all(|(x, ks)| {
        ks.iter().enumerate().all(|(j, k)| {
            let g = &col.level.up.elems[x][f.comps[x][row.structure.comps[x][j]]];
            ft.comps.iter().enumerate().all(|(u, fu)| {
                fu.iter()
                    .enumerate()
                    .all(|(y, &c)| g.comps[u][y] == k.comps[u][c])
            })
        })
    })
}

pub fn is_loose(row: &Algebra, col: &Algebra, f: &NatTrans, reading: LooseReading) -> bool {
    match reading {
        LooseReading::Equalizer => equalizes(col, f),
        LooseReading::Square => square_commutes(row, col, f),
        LooseReading::MorphismEqualizer => {
            equalizes(col, f) && is_morphism_into_canonical(row, col, f)
        }
    }
}

/// Commutation of the defining square for `f: X → Φ_*Y`. The roles of the
/// two sides are symmetric, so the same check serves the transposed square.
pub fn square_commutes(row: &Algebra, col: &Algebra, f: &NatTrans) -> bool {
    let pull: Vec<Vec<usize>> = col
        .level
        .t
        .elems
        .iter()
        .enumerate()
        .map(|(u, ds)| {
            ds.iter()
                .map(|d| row.level.up.precompose(u, d, f))
                .collect()
        })
        .collect();
    row.level.t.elems.iter().enumerate().all(|(x, ks)| {
        ks.iter().enumerate().all(|(j, k)| {
            let g = &col.level.up.elems[x][f.comps[x][row.structure.comps[x][j]]];
            pull.iter().enumerate().all(|(u, p)| {
                p.iter()
                    .enumerate()
                    .all(|(di, &c)| k.comps[u][c] == g.comps[u][col.structure.comps[u][di]])
            })
        })
    })
}

/// `f': Y → Φ^*X`, sending `y ∈ Y(u)` to the cone `e ↦ f_x(e)_u(y)`.
pub fn transpose(row: &Algebra, col: &Algebra, f: &NatTrans) -> NatTrans {
    let comps = col
        .carrier()
        .sizes
        .iter()
        .enumerate()
        .map(|(u, &n)| {
            (0..n)
                .map(|y| {
                    let cone = NatTrans {
                        comps: f
                            .comps
                            .iter()
                            .enumerate()
                            .map(|(x, fx)| {
                                fx.iter()
                                    .map(|&i| col.level.up.elems[x][i].comps[u][y])
                                    .collect()
                            })
                            .collect(),
                    };
                    row.level
                        .up
                        .index_of(u, &cone)
                        .expect("transposes are cones")
                })
                .collect()
        })
        .collect();
    NatTrans { comps }
}

pub fn is_tight(row: &Algebra, col: &Algebra, f: &NatTrans, reading: TightReading) -> bool {
    if !f.is_injective() {
        return false;
    }
    let ft = transpose(row, col, f);
    match reading {
        TightReading::SurjectiveTranspose => ft.is_surjective(&row.level.up.sheaf),
        TightReading::InjectiveTranspose => ft.is_injective(),
    }
}

/// All loose maps for one (row, column) pair.
pub fn loose_cell(
    m: &PresheafMonad,
    row: &Algebra,
    col: &Algebra,
    reading: LooseReading,
    ctx: &mut Ctx,
) -> Result<Vec<NatTrans>> {
    if row.side() == col.side() {
        return Err(Error::input(
            "rows and columns must be algebras for the two different monads",
        ));
    }
    let base = m.base(row.side()).clone();
    let mut out = Vec::new();
    for_each_nat(
        &base,
        row.carrier(),
        &col.level.up.sheaf,
        None,
        &mut ctx.budget,
        &mut |f| {
            if is_loose(row, col, f, reading) {
                out.push(f.clone());
            }
            true
        },
    )?;
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub loose: Vec<NatTrans>,
    /// Indices into `loose`.
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ExtensionMatrix {
    pub rows: Vec<Algebra>,
    pub cols: Vec<Algebra>,
    pub loose_reading: LooseReading,
    pub reading: TightReading,
    pub cells: Vec<Vec<Cell>>,
}

impl ExtensionMatrix {
    pub fn loose_counts(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|r| r.iter().map(|c| c.loose.len()).collect())
            .collect()
    }

    pub fn tight_counts(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|r| r.iter().map(|c| c.tight.len()).collect())
            .collect()
    }

    pub fn to_json(&self, witnesses: bool) -> serde_json::Value {
        let carrier = |a: &Algebra| serde_json::json!(a.carrier().sizes);
        let mut v = serde_json::json!({
            "loose_reading": self.loose_reading,
            "tight_reading": self.reading,
            "rows": self.rows.iter().map(carrier).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(carrier).collect::<Vec<_>>(),
            "loose": self.loose_counts(),
            "tight": self.tight_counts(),
        });
        if witnesses {
            let w: Vec<serde_json::Value> = self
                .cells
                .iter()
                .enumerate()
                .flat_map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.loose.is_empty())
                        .map(move |(j, c)| {
                            serde_json::json!({
                                "row": i,
                                "col": j,
                                "loose": c.loose.iter().map(|f| &f.comps).collect::<Vec<_>>(),
                                "tight": c.tight,
                            })
                        })
                })
                .collect();
            v["witnesses"] = serde_json::Value::Array(w);
        }
        v
    }
}

/// Loose cells, with the tight subset and the transposed square checked on
/// every loose map.
pub fn loose_extension(
    m: &PresheafMonad,
    rows: Vec<Algebra>,
    cols: Vec<Algebra>,
    loose_reading: LooseReading,
    reading: TightReading,
    ctx: &mut Ctx,
) -> Result<ExtensionMatrix> {
    let mut cells = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut line = Vec::with_capacity(cols.len());
        for col in &cols {
            let loose = loose_cell(m, row, col, loose_reading, ctx)?;
            for f in &loose {
                let ft = transpose(row, col, f);
                if transpose(col, row, &ft) != *f {
                    return Err(Error::law("transposing twice does not return the map"));
                }
                if loose_reading == LooseReading::Square && !is_loose(col, row, &ft, loose_reading)
                {
                    return Err(Error::law("a loose map has a transpose that is not loose"));
                }
            }
            line.push(Cell {
                loose,
                tight: Vec::new(),
            });
        }
        cells.push(line);
    }
    Ok(tight_extension(ExtensionMatrix {
        rows,
        cols,
        loose_reading,
        reading,
        cells,
    }))
}

/// Fills the tight subsets of a loose matrix.
pub fn tight_extension(mut e: ExtensionMatrix) -> ExtensionMatrix {
    for (i, row) in e.rows.iter().enumerate() {
        for (j, col) in e.cols.iter().enumerate() {
            let cell = &mut e.cells[i][j];
            cell.tight = (0..cell.loose.len())
                .filter(|&k| is_tight(row, col, &cell.loose[k], e.reading))
                .collect();
        }
    }
    e
}

/// Same matrix under another reading.
pub fn with_reading(e: &ExtensionMatrix, reading: TightReading) -> ExtensionMatrix {
    tight_extension(ExtensionMatrix {
        reading,
        ..e.clone()
    })
}

/// For each cell, the sizes of `Alg(X, Φ_*Y)` and `Alg(Y, Φ^*X)` with the
/// targets carrying their canonical structures: the hom-sets that a loose
/// cell is conjectured to match.
pub fn adjunction_counts(
    m: &PresheafMonad,
    e: &ExtensionMatrix,
    ctx: &mut Ctx,
) -> Result<Vec<Vec<(usize, usize)>>> {
    let lower: Vec<Algebra> = e
        .cols
        .iter()
        .map(|c| canonical_algebra(m, c.side().flip(), c.carrier(), ctx))
        .collect::<Result<_>>()?;
    let upper: Vec<Algebra> = e
        .rows
        .iter()
        .map(|r| canonical_algebra(m, r.side().flip(), r.carrier(), ctx))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(e.rows.len());
    for (row, up) in e.rows.iter().zip(&upper) {
        let mut line = Vec::with_capacity(e.cols.len());
        for (col, low) in e.cols.iter().zip(&lower) {
            line.push((
                algebra_morphisms(m, row, low, ctx)?.len(),
                algebra_morphisms(m, col, up, ctx)?.len(),
            ));
        }
        out.push(line);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;
    use crate::setcat::algebra::{enumerate_algebras, free_algebra};
    use crate::setcat::category::FinCategory;
    use crate::setcat::monad::Side;
    use crate::setcat::presheaf::{yoneda_post, yoneda_pre, Presheaf};
    use crate::setcat::profunctor::Profunctor;

    fn algebras_on(m: &PresheafMonad, side: Side, sizes: &[usize], ctx: &mut Ctx) -> Vec<Algebra> {
        let d = FinCategory::discrete(1);
        sizes
            .iter()
            .flat_map(|&n| enumerate_algebras(m, side, &Presheaf::constant(&d, n), ctx).unwrap())
            .collect()
    }

    #[test]
    fn constant_zero_loose_is_the_order_on_two() {
        let m = PresheafMonad::new(Profunctor::constant(0));
        let mut ctx = Ctx::default();
        let rows = algebras_on(&m, Side::Lower, &[0, 1, 2], &mut ctx);
        let cols = algebras_on(&m, Side::Upper, &[0, 1, 2], &mut ctx);
        assert_eq!((rows.len(), cols.len()), (2, 2));
        for lr in [
            LooseReading::Equalizer,
            LooseReading::Square,
            LooseReading::MorphismEqualizer,
        ] {
            let e = loose_extension(
                &m,
                rows.clone(),
                cols.clone(),
                lr,
                TightReading::InjectiveTranspose,
                &mut ctx,
            )
            .unwrap();
            assert_eq!(e.loose_counts(), vec![vec![1, 1], vec![1, 0]]);
            assert_eq!(e.tight_counts(), e.loose_counts());
            let adj = adjunction_counts(&m, &e, &mut ctx).unwrap();
            assert_eq!(adj.len(), 2);
            let s = with_reading(&e, TightReading::SurjectiveTranspose);
            assert_eq!(s.tight_counts(), vec![vec![0, 1], vec![1, 0]]);
        }
    }

    #[test]
    fn constant_one_is_a_single_cell() {
        let m = PresheafMonad::new(Profunctor::constant(1));
        let mut ctx = Ctx::default();
        let rows = algebras_on(&m, Side::Lower, &[0, 1, 2, 3], &mut ctx);
        let cols = algebras_on(&m, Side::Upper, &[0, 1, 2, 3], &mut ctx);
        for lr in [LooseReading::Equalizer, LooseReading::Square] {
            let e = loose_extension(
                &m,
                rows.clone(),
                cols.clone(),
                lr,
                TightReading::default(),
                &mut ctx,
            )
            .unwrap();
            assert_eq!(e.tight_counts(), vec![vec![1]]);
        }
    }

    #[test]
    fn free_and_cofree_on_the_same_object() {
        let c = FinCategory::from_poset(&FinPoset::chain(2));
        let m = PresheafMonad::new(Profunctor::hom(&c));
        let mut ctx = Ctx::default();
        for a in 0..2 {
            let row = free_algebra(&m, Side::Lower, &yoneda_pre(&c, a), &mut ctx).unwrap();
            let col = free_algebra(&m, Side::Upper, &yoneda_post(&c, a), &mut ctx).unwrap();
            for lr in [LooseReading::Equalizer, LooseReading::Square] {
                assert!(!loose_cell(&m, &row, &col, lr, &mut ctx).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn antichain_loose_exceeds_cuts() {
        let p = FinPoset::antichain(2);
        let m = PresheafMonad::new(Profunctor::order_matrix(&p));
        let mut ctx = Ctx::default();
        let subterminal = |s: u64| Presheaf {
            sizes: (0..2).map(|i| (s >> i & 1) as usize).collect(),
            act: (0..2)
                .map(|i| (0..(s >> i & 1) as usize).collect())
                .collect(),
        };
        let rows: Vec<Algebra> = (0..4)
            .flat_map(|s| enumerate_algebras(&m, Side::Lower, &subterminal(s), &mut ctx).unwrap())
            .collect();
        let cols: Vec<Algebra> = (0..4)
            .flat_map(|s| enumerate_algebras(&m, Side::Upper, &subterminal(s), &mut ctx).unwrap())
            .collect();
        assert_eq!((rows.len(), cols.len()), (4, 4));
        for lr in [LooseReading::Equalizer, LooseReading::Square] {
            let e = loose_extension(
                &m,
                rows.clone(),
                cols.clone(),
                lr,
                TightReading::default(),
                &mut ctx,
            )
            .unwrap();
            let loose: usize = e.loose_counts().iter().flatten().sum();
            let tight: usize = e.tight_counts().iter().flatten().sum();
            assert_eq!(tight, 4);
            assert!(loose > tight);
        }
    }

    #[test]
    fn constant_two_loose_counts_maps() {
        let m = PresheafMonad::new(Profunctor::constant(2));
        let d = FinCategory::discrete(1);
        let mut ctx = Ctx::new(1 << 17, 50_000_000);
        let rows: Vec<Algebra> = (0..3)
            .map(|n| {
                canonical_algebra(&m, Side::Lower, &Presheaf::constant(&d, n), &mut ctx).unwrap()
            })
            .collect();
        let cols: Vec<Algebra> = (0..2)
            .map(|n| {
                canonical_algebra(&m, Side::Upper, &Presheaf::constant(&d, n), &mut ctx).unwrap()
            })
            .collect();
        let e = loose_extension(
            &m,
            rows.clone(),
            cols.clone(),
            LooseReading::Equalizer,
            TightReading::default(),
            &mut ctx,
        )
        .unwrap();
        // rows have carriers 2^w, the column built on z has an equalizer of size z
        let expect: Vec<Vec<usize>> = [1u32, 2, 4]
            .iter()
            .map(|&x| (0..2usize).map(|z| z.pow(x)).collect())
            .collect();
        assert_eq!(e.loose_counts(), expect);
        let sq = loose_extension(
            &m,
            rows,
            cols,
            LooseReading::Square,
            TightReading::default(),
            &mut ctx,
        )
        .unwrap();
        assert!(sq.loose_counts().iter().flatten().all(|&n| n == 0));
    }
}
