//! Parallel pairs of finite maps, their equalizers, and the split
//! coequalizer `R^E ← R^X ⇇ R^Y` obtained by exponentiating.

use serde::Serialize;

use crate::error::{Error, Result};

/// Maps `0..n → 0..m` as value tables.
pub type Map = Vec<usize>;

/// The equalizer `{x | f(x) = g(x)}` as an increasing list.
pub fn equalizer(f: &[usize], g: &[usize]) -> Vec<usize> {
    (0..f.len()).filter(|&x| f[x] == g[x]).collect()
}

/// Some `r: Y → X` with `r∘f = r∘g = id`.
pub fn common_retraction(f: &[usize], g: &[usize], y: usize) -> Option<Map> {
    let mut r = vec![None; y];
    for (x, (&a, &b)) in f.iter().zip(g).enumerate() {
        for t in [a, b] {
            match r[t] {
                None => r[t] = Some(x),
                Some(v) if v == x => {}
                Some(_) => return None,
            }
        }
    }
    Some(r.into_iter().map(|v| v.unwrap_or(0)).collect())
}

pub fn is_injective(f: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// The square `e, e` over `f, g` is a pullback: `f(x) = g(x')` forces `x = x' ∈ E`.
pub fn is_pullback(f: &[usize], g: &[usize]) -> bool {
    (0..f.len()).all(|x| (0..g.len()).all(|x2| f[x] != g[x2] || (x == x2 && f[x] == g[x])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    /// `R` nonempty, `f` injective and the square a pullback.
    pub in_hypothesis: bool,
    /// The split coequalizer equations with the splitting built from `r ∈ R`.
    pub split: bool,
}

/// Functions `0..n → 0..r`, indexed in base `r` with the first point least significant.
struct Powers {
    r: usize,
    n: usize,
}

impl Powers {
    fn count(&self) -> usize {
        self.r.pow(self.n as u32)
    }
    fn decode(&self, mut i: usize) -> Vec<usize> {
        (0..self.n)
            .map(|_| {
                let d = i % self.r;
                i /= self.r;
                d
            })
            .collect()
    }
    fn encode(&self, h: &[usize]) -> usize {
        h.iter().rev().fold(0, |acc, &d| acc * self.r + d)
    }
}

/// Checks the splitting of `R^E ←R^e− R^X ⇇(R^f, R^g)− R^Y` for `R = 0..r`:
/// with `q = R^e`, `s = e_r` (extend by `r₀`) and `t = f_r`, it verifies
/// `q∘R^f = q∘R^g`, `q∘s = id`, `R^f∘t = id` and `R^g∘t = s∘q`.
pub fn check_split_coequalizer(
    r: usize,
    f: &[usize],
    g: &[usize],
    y: usize,
) -> Result<SplitReport> {
    if f.len() != g.len() || f.iter().chain(g).any(|&v| v >= y) {
        return Err(Error::input(
            "f and g must be maps between the same finite sets",
        ));
    }
    let in_hypothesis = r > 0 && is_injective(f, y) && is_pullback(f, g);
    if !in_hypothesis {
        return Ok(SplitReport {
            in_hypothesis,
            split: false,
        });
    }
    let x = f.len();
    let e = equalizer(f, g);
    let (pe, px, py) = (
        Powers { r, n: e.len() },
        Powers { r, n: x },
        Powers { r, n: y },
    );
    let fill = 0;
    let q = |h: &[usize]| -> Vec<usize> { e.iter().map(|&i| h[i]).collect() };
    let s = |k: &[usize]| -> Vec<usize> {
        let mut h = vec![fill; x];
        for (j, &i) in e.iter().enumerate() {
            h[i] = k[j];
        }
        h
    };
    let t = |h: &[usize]| -> Vec<usize> {
        let mut u = vec![fill; y];
        for (i, &fi) in f.iter().enumerate() {
            u[fi] = h[i];
        }
        u
    };
    let pull = |m: &[usize], u: &[usize]| -> Vec<usize> { m.iter().map(|&v| u[v]).collect() };
    let fork = (0..py.count()).all(|i| {
        let u = py.decode(i);
        q(&pull(f, &u)) == q(&pull(g, &u))
    });
    let sections = (0..pe.count()).all(|i| pe.encode(&q(&s(&pe.decode(i)))) == i)
        && (0..px.count()).all(|i| {
            let h = px.decode(i);
            let th = t(&h);
            pull(f, &th) == h && pull(g, &th) == s(&q(&h))
        });
    Ok(SplitReport {
        in_hypothesis,
        split: fork && sections,
    })
}

/// Every pair of maps `X ⇉ Y` with `|X| = x`, `|Y| = y`.
pub fn all_pairs(x: usize, y: usize) -> Vec<(Map, Map)> {
    let maps: Vec<Map> = if y == 0 && x > 0 {
        Vec::new()
    } else {
        let p = Powers { r: y.max(1), n: x };
        (0..p.count()).map(|i| p.decode(i)).collect()
    };
    maps.iter()
        .flat_map(|f| maps.iter().map(move |g| (f.clone(), g.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_maps_split_trivially() {
        let f = vec![0, 2];
        let rep = check_split_coequalizer(2, &f, &f, 3).unwrap();
        assert!(rep.in_hypothesis && rep.split);
    }

    #[test]
    fn reflexive_pairs_are_pullbacks_of_injections() {
        for x in 0..=3 {
            for y in 0..=3 {
                for (f, g) in all_pairs(x, y) {
                    if common_retraction(&f, &g, y).is_some() {
                        assert!(is_injective(&f, y) && is_injective(&g, y) && is_pullback(&f, &g));
                        for r in 1..=3 {
                            assert!(check_split_coequalizer(r, &f, &g, y).unwrap().split);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_r_is_out_of_hypothesis() {
        assert!(
            !check_split_coequalizer(0, &[0], &[0], 1)
                .unwrap()
                .in_hypothesis
        );
    }

    #[test]
    fn non_pullback_is_out_of_hypothesis() {
        // f(0) = g(1) with 0 ≠ 1
        assert!(
            !check_split_coequalizer(2, &[0, 1], &[2, 0], 3)
                .unwrap()
                .in_hypothesis
        );
    }
}
