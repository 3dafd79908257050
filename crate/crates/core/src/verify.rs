//! The `verify` suites. Each suite is a list of claims checked exhaustively
//! on small instances; sweeps run in parallel and are reassembled in
//! parameter order, so reports do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bitset::Subset;
use crate::cases::coequalizer::{
    all_pairs, check_split_coequalizer, common_retraction, is_injective, is_pullback,
};
use crate::cases::constant::constant_matrix_report;
use crate::cases::group::{group_as_category, FinGroup};
use crate::cases::gset::{gset_upper, GSet};
use crate::cases::images::group_image_suite;
use crate::cases::posets::{poset_equivalence_check, poset_image_retracts, poset_tight_cuts};
use crate::cases::zp::{zp_hom_bruteforce, zp_hom_count, ZpVector};
use crate::cases::zp_table::verify_zp_table;
use crate::context::{nucleus, nucleus_bruteforce, order_context, FormalContext};
use crate::error::{Error, Result};
use crate::order::{
    dm_completion, dm_completion_bruteforce, liminf, limsup, posets_up_to_iso, random_poset,
    FinPoset,
};
use crate::quantale::{
    qderive_down, qderive_up, transfer_enrichment, transfer_vector, Quantale, QuantaleMatrix,
};
use crate::report::{Claim, Report};
use crate::setcat::algebra::{canonical_algebra, enumerate_algebras, free_algebra, Algebra};
use crate::setcat::extension::{adjunction_counts, loose_extension};
use crate::setcat::natural::Budget;
use crate::setcat::present::check_presentation;
use crate::setcat::presheaf::{all_presheaves, subterminal, yoneda_pre};
use crate::setcat::{
    liminf_cat, limsup_cat, matrix_yoneda_check, Ctx, FinCategory, FinFunctor, LooseReading,
    Presheaf, PresheafMonad, Profunctor, Side, TightReading,
};

pub const SUITES: [&str; 7] = [
    "posets",
    "groups",
    "zp",
    "constants",
    "quantale",
    "setcat",
    "conjectures",
];

/// Fixed seed for the random parts of the sweeps.
pub const SWEEP_SEED: u64 = 0x5eed_0f_c075;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_size: usize,
    pub budget: u64,
    /// Largest component set in Set-valued constructions.
    pub max_set: usize,
    pub eps: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_size: 5,
            budget: 10_000_000,
            max_set: 1 << 17,
            eps: 1e-9,
        }
    }
}

impl VerifyConfig {
    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.max_set, self.budget)
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Report> {
    let claims = match name {
        "posets" => posets_suite(cfg)?,
        "groups" => groups_suite(cfg)?,
        "zp" => zp_suite(cfg)?,
        "constants" => constants_suite(cfg)?,
        "quantale" => quantale_suite(cfg)?,
        "setcat" => setcat_suite(cfg)?,
        "conjectures" => conjecture_probes(cfg)?,
        other => {
            return Err(Error::input(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(Report {
        suite: name.to_string(),
        claims,
    })
}

fn first_failure<T: Send, F>(items: &[T], check: F) -> Option<Value>
where
    T: Sync,
    F: Fn(&T) -> Option<Value> + Sync,
{
    // parallel, but the earliest failing item wins
    items
        .par_iter()
        .map(|x| check(x))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

fn sweep_claim<T: Sync + Send>(
    id: &str,
    anchor: &str,
    params: Value,
    items: &[T],
    check: impl Fn(&T) -> Option<Value> + Sync,
) -> Claim {
    let w = first_failure(items, check);
    Claim::new(id, anchor, params, w.is_none())
        .with_witness(w)
        .with_evidence(json!({ "cases": items.len() }))
}

// ---------------------------------------------------------------- posets

/// Why `dm_completion(p)` fails the lattice properties, if it does.
pub fn dm_defect(p: &FinPoset) -> Option<String> {
    let dm = dm_completion(p);
    if !dm.order_table().is_complete_lattice() {
        return Some("not a complete lattice".into());
    }
    let n = p.len();
    let embed = |s: Subset| -> Vec<usize> { s.iter().map(|x| dm.embed[x]).collect() };
    for s in Subset::all(n) {
        if let Some(j) = p.join(s) {
            if dm.join(&embed(s)) != dm.embed[j] {
                return Some(format!("join of {:?} is not preserved", s.to_vec()));
            }
        }
        if let Some(m) = p.meet(s) {
            if dm.meet(&embed(s)) != dm.embed[m] {
                return Some(format!("meet of {:?} is not preserved", s.to_vec()));
            }
        }
    }
    for (i, c) in dm.cuts.iter().enumerate() {
        if dm.join(&embed(c.lower)) != i || dm.meet(&embed(c.upper)) != i {
            return Some(format!(
                "cut {i} is not both a join and a meet of embedded elements"
            ));
        }
    }
    None
}

pub fn random_posets(count: usize, max_n: usize) -> Vec<FinPoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_n);
            let d = rng.gen_range(0.1..0.7);
            random_poset(&mut rng, n, d)
        })
        .collect()
}

fn poset_json(p: &FinPoset) -> Value {
    p.to_json()
}

pub fn dm_claims(max_n: usize, random: usize, random_max: usize) -> Vec<Claim> {
    let all: Vec<FinPoset> = (0..=max_n).flat_map(posets_up_to_iso).collect();
    let rand = random_posets(random, random_max);
    let defect =
        |p: &FinPoset| dm_defect(p).map(|d| json!({ "poset": poset_json(p), "defect": d }));
    let agree =
        |p: &FinPoset| (dm_completion(p) != dm_completion_bruteforce(p)).then(|| poset_json(p));
    vec![
        sweep_claim(
            "dm.lattice",
            "the completion is a complete lattice preserving existing joins and meets, each cut a join and a meet of embedded elements",
            json!({ "posets_up_to": max_n }),
            &all,
            defect,
        ),
        sweep_claim(
            "dm.lattice.random",
            "same properties on random posets",
            json!({ "count": random, "max_n": random_max, "seed": SWEEP_SEED }),
            &rand,
            defect,
        ),
        sweep_claim("dm.oracle", "cuts agree with brute-force enumeration", json!({ "posets_up_to": max_n }), &all, agree),
    ]
}

fn all_contexts(m: usize, k: usize) -> Vec<FormalContext> {
    (0..1u64 << (m * k))
        .map(|bits| {
            FormalContext::from_fn(m, k, |i, j| bits >> (i * k + j) & 1 == 1)
                .expect("small context")
        })
        .collect()
}

fn random_contexts(count: usize, m: usize, k: usize) -> Vec<FormalContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED ^ 0xfca);
    (0..count)
        .map(|_| {
            let d: f64 = rng.gen_range(0.2..0.8);
            let t: Vec<Vec<bool>> = (0..m)
                .map(|_| (0..k).map(|_| rng.gen_bool(d)).collect())
                .collect();
            FormalContext::from_matrix(t).expect("rectangular")
        })
        .collect()
}

pub fn fca_claims(max_side: usize, random: usize, random_side: usize) -> Vec<Claim> {
    let check = |c: &FormalContext| {
        let mut a = nucleus(c).concepts;
        let mut b = nucleus_bruteforce(c).concepts;
        a.sort();
        b.sort();
        (a != b).then(|| json!({ "incidence": c.incidence() }))
    };
    let mut claims = Vec::new();
    let exhaustive: Vec<FormalContext> = (0..=max_side)
        .flat_map(|m| (0..=max_side).flat_map(move |k| all_contexts(m, k)))
        .collect();
    claims.push(sweep_claim(
        "fca.oracle",
        "NextClosure finds exactly the fixpoints of the derivation pair",
        json!({ "max_rows": max_side, "max_cols": max_side }),
        &exhaustive,
        check,
    ));
    let rand = random_contexts(random, random_side, random_side);
    claims.push(sweep_claim(
        "fca.oracle.random",
        "same on random contexts",
        json!({ "count": random, "rows": random_side, "cols": random_side, "seed": SWEEP_SEED ^ 0xfca }),
        &rand,
        check,
    ));
    claims
}

pub fn order_context_claim(max_n: usize) -> Claim {
    let all: Vec<FinPoset> = (0..=max_n).flat_map(posets_up_to_iso).collect();
    sweep_claim(
        "fca.order_context",
        "the concept lattice of the order context is the completion",
        json!({ "posets_up_to": max_n }),
        &all,
        |p| {
            let l = nucleus(&order_context(p)).order_table();
            l.isomorphism(&dm_completion(p).order_table())
                .is_none()
                .then(|| poset_json(p))
        },
    )
}

pub fn poset_case_claims(max_n: usize, tight_n: usize, cfg: &VerifyConfig) -> Vec<Claim> {
    let all: Vec<FinPoset> = (0..=max_n).flat_map(posets_up_to_iso).collect();
    let small: Vec<FinPoset> = (0..=tight_n.min(max_n))
        .flat_map(posets_up_to_iso)
        .collect();
    let equiv = |p: &FinPoset| match poset_equivalence_check(p, &mut cfg.ctx()) {
        Ok(r) if r.pass() => None,
        Ok(r) => Some(json!({ "poset": poset_json(p), "report": r })),
        Err(e) => Some(json!({ "poset": poset_json(p), "error": e.to_string() })),
    };
    let tight = |p: &FinPoset| match poset_tight_cuts(p, TightReading::default(), &mut cfg.ctx()) {
        Ok(r) if r.pass() => None,
        Ok(r) => Some(json!({ "poset": poset_json(p), "report": r })),
        Err(e) => Some(json!({ "poset": poset_json(p), "error": e.to_string() })),
    };
    let retr = |p: &FinPoset, size: usize| match poset_image_retracts(p, size, &cfg.ctx()) {
        Ok(c) if c.pass && c.skipped.is_none() => None,
        Ok(c) => Some(json!({ "poset": poset_json(p), "check": c })),
        Err(e) => Some(json!({ "poset": poset_json(p), "error": e.to_string() })),
    };
    let tiny: Vec<FinPoset> = (0..=max_n.min(3)).flat_map(posets_up_to_iso).collect();
    vec![
        sweep_claim(
            "posets.equivalence",
            "fixpoints of the restricted Galois connection are the cuts, on both sides",
            json!({ "posets_up_to": max_n }),
            &all,
            equiv,
        ),
        sweep_claim(
            "posets.tight_cuts",
            "tight cells over subterminal algebras biject with the cuts",
            json!({ "posets_up_to": tight_n.min(max_n), "tight_reading": TightReading::default() }),
            &small,
            tight,
        ),
        sweep_claim(
            "posets.image_retracts",
            "retracts of images of H^* are upper sets of lower sets",
            json!({ "posets_up_to": max_n, "presheaf_sets_up_to": 1 }),
            &all,
            |p| retr(p, 1),
        ),
        sweep_claim(
            "posets.image_retracts.wide",
            "same, over presheaves with sets of size up to 2",
            json!({ "posets_up_to": max_n.min(3), "presheaf_sets_up_to": 2 }),
            &tiny,
            |p| retr(p, 2),
        ),
    ]
}

fn posets_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let n = cfg.max_size.min(6);
    let mut claims = dm_claims(n, 200, 8);
    claims.extend(fca_claims(n.min(4), 100, 10));
    claims.push(order_context_claim(n));
    claims.extend(poset_case_claims(n, 4, cfg));
    Ok(claims)
}

// ---------------------------------------------------------------- groups

pub fn named_groups() -> Vec<(&'static str, FinGroup)> {
    vec![
        ("1", FinGroup::trivial()),
        ("Z2", FinGroup::cyclic(2)),
        ("Z3", FinGroup::cyclic(3)),
        ("S3", FinGroup::symmetric3()),
    ]
}

pub fn group_claims(max_size: usize, cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let groups = named_groups();
    let suites: Vec<Result<_>> = groups
        .par_iter()
        .map(|(name, g)| group_image_suite(name, g, max_size, &cfg.ctx()))
        .collect();
    let mut claims = Vec::new();
    for s in suites {
        let s = s?;
        for (i, c) in s.checks.iter().enumerate() {
            let id = format!(
                "groups.{}.{}",
                s.group,
                ["image", "image_retracts", "free_retracts", "maps_into_free"][i]
            );
            claims.push(Claim::from_check(
                id,
                json!({ "group": s.group, "order": s.order, "max_size": max_size }),
                c,
            ));
        }
    }
    Ok(claims)
}

fn groups_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for (name, g) in named_groups() {
        let c = group_as_category(&g);
        let ok = c.num_objects() == 1
            && c.num_morphisms() == g.order()
            && (0..g.order()).all(|a| (0..g.order()).all(|b| c.compose(a, b) == Some(g.op(a, b))));
        claims.push(Claim::new(
            format!("groups.{name}.category"),
            "a group is a one-object category composing by multiplication",
            json!({ "group": name }),
            ok,
        ));
    }
    let z3 = FinGroup::cyclic(3);
    let mut ctx = cfg.ctx();
    let sizes: Vec<usize> = [GSet::free(&z3, 1), GSet::singleton(&z3), GSet::free(&z3, 2)]
        .iter()
        .map(|x| gset_upper(x, &mut ctx).map(|u| u.size()))
        .collect::<Result<_>>()?;
    claims.push(
        Claim::new(
            "groups.upper_examples",
            "H^* of G, of the point and of G+G has 3, 0 and 9 elements for G = Z3",
            json!({ "group": "Z3" }),
            sizes == [3, 0, 9],
        )
        .with_evidence(json!({ "sizes": sizes })),
    );
    claims.extend(group_claims(cfg.max_size.min(6), cfg)?);
    Ok(claims)
}

// ---------------------------------------------------------------- zp

pub fn zp_hom_claim(primes: &[usize], bound: usize, budget: u64) -> Claim {
    let mut cases = Vec::new();
    for &p in primes {
        for x1 in 0..=bound {
            for xp in 0..=bound {
                for y1 in 0..=bound {
                    for yp in 0..=bound {
                        cases.push((p, x1, xp, y1, yp));
                    }
                }
            }
        }
    }
    sweep_claim(
        "zp.hom_formula",
        "equivariant maps between Zp-sets number Y1^X1 (Y1 + pYp)^Xp",
        json!({ "primes": primes, "orbit_counts_up_to": bound }),
        &cases,
        |&(p, x1, xp, y1, yp)| {
            let (x, y) = (
                ZpVector {
                    p,
                    one: x1,
                    free: xp,
                },
                ZpVector {
                    p,
                    one: y1,
                    free: yp,
                },
            );
            let formula = zp_hom_count(&x, &y).ok()?;
            match zp_hom_bruteforce(&x, &y, &mut Budget::new(budget)) {
                Ok(b) if formula == b.into() => None,
                Ok(b) => Some(
                    json!({ "case": [p, x1, xp, y1, yp], "formula": formula.to_string(), "brute": b }),
                ),
                Err(e) => Some(json!({ "case": [p, x1, xp, y1, yp], "error": e.to_string() })),
            }
        },
    )
}

fn zp_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let v = |a, b| ZpVector {
        p: 2,
        one: a,
        free: b,
    };
    let three = zp_hom_count(&v(1, 1), &v(1, 1))?;
    let mut claims = vec![Claim::new(
        "zp.example",
        "for p = 2 there are 3 maps (1|1) → (1|1)",
        json!({ "p": 2, "x": [1, 1], "y": [1, 1] }),
        three == 3u32.into(),
    )];
    claims.push(zp_hom_claim(&[2, 3], cfg.max_size.min(2), cfg.budget));
    let regimes: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let reports: Vec<Result<_>> = regimes
        .par_iter()
        .map(|&(a, b)| verify_zp_table(&v(a, b), 4, &cfg.ctx()))
        .collect();
    for r in reports {
        let r = r?;
        for c in &r.checks {
            let id = format!(
                "zp.table.{}_{}.{}",
                r.phi.one,
                r.phi.free,
                c.name.split(' ').next().unwrap_or("check")
            );
            claims.push(Claim::from_check(
                id,
                json!({ "p": 2, "phi": [r.phi.one, r.phi.free], "cap": 4 }),
                c,
            ));
        }
    }
    Ok(claims)
}

// ---------------------------------------------------------------- constants

pub fn constant_claims(cap: usize, cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for r in 0..=2 {
        let rep = constant_matrix_report(r, cap, &mut cfg.ctx())?;
        let params = json!({ "r": r, "cap": cap });
        let tx_ok = rep
            .tx
            .iter()
            .all(|t| t.computed.map_or(true, |c| c.to_string() == t.predicted));
        claims.push(
            Claim::new(
                format!("constants.{r}.tx"),
                "TX has |R|^(|R|^|X|) elements",
                params.clone(),
                tx_ok,
            )
            .with_evidence(json!(rep.tx)),
        );
        let alg_ok = rep
            .algebras
            .iter()
            .all(|a| a.found.map_or(true, |f| f == a.predicted));
        claims.push(
            Claim::new(
                format!("constants.{r}.algebras"),
                "algebras are the powers of R",
                params.clone(),
                alg_ok,
            )
            .with_evidence(json!({ "counts": rep.algebras, "canonical": rep.canonical })),
        );
        let anchor = match r {
            0 => "the tight extension is the order on 2",
            1 => "the tight extension is a single cell with one entry",
            _ => "the tight extension equals the loose one",
        };
        let cells = json!({
            "rows": rep.row_carriers,
            "cols": rep.col_carriers,
            "loose": rep.loose,
            "tight": rep.tight,
            "tight_injective_transpose": rep.tight_injective,
            "holds_with_injective_transpose": rep.expected_tight_injective,
        });
        let witness = (!rep.expected_tight).then(|| cells.clone());
        claims.push(
            Claim::new(
                format!("constants.{r}.tight"),
                anchor,
                params,
                rep.expected_tight,
            )
            .with_witness(witness)
            .with_evidence(cells),
        );
    }
    Ok(claims)
}

pub fn split_coequalizer_claims(max: usize) -> Vec<Claim> {
    let pairs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..=max)
        .flat_map(|x| {
            (0..=max).flat_map(move |y| all_pairs(x, y).into_iter().map(move |(f, g)| (y, f, g)))
        })
        .filter(|(y, f, g)| common_retraction(f, g, *y).is_some())
        .collect();
    let item1 = sweep_claim(
        "constants.reflexive_pairs",
        "in a reflexive pair both maps are injective and the equalizer square is a pullback",
        json!({ "max_x": max, "max_y": max }),
        &pairs,
        |(y, f, g)| {
            (!(is_injective(f, *y) && is_injective(g, *y) && is_pullback(f, g)))
                .then(|| json!({ "f": f, "g": g }))
        },
    );
    let item2 = sweep_claim(
        "constants.split_coequalizer",
        "exponentiating a reflexive pair into a nonempty R gives a split coequalizer",
        json!({ "max_x": max, "max_y": max, "r": [1, 2, 3] }),
        &pairs,
        |(y, f, g)| {
            (1..=3).find_map(|r| match check_split_coequalizer(r, f, g, *y) {
                Ok(s) if s.in_hypothesis && s.split => None,
                Ok(s) => Some(json!({ "f": f, "g": g, "r": r, "report": s })),
                Err(e) => Some(json!({ "f": f, "g": g, "r": r, "error": e.to_string() })),
            })
        },
    );
    vec![item1, item2]
}

fn constants_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let mut claims = constant_claims(3, cfg)?;
    claims.extend(split_coequalizer_claims(3));
    let mut ctx = cfg.ctx();
    let one = FinCategory::discrete(1);
    for r in 0..=2 {
        let m = PresheafMonad::new(Profunctor::constant(r));
        let mut assoc = Vec::new();
        let mut ok = true;
        for n in 0..=2 {
            match m.check_laws(Side::Lower, &Presheaf::constant(&one, n), &mut ctx) {
                Ok(l) => assoc.push(l.associativity),
                Err(Error::Cap { .. }) => break,
                Err(_) => ok = false,
            }
        }
        claims.push(
            Claim::new(
                format!("constants.{r}.monad"),
                "unit and associativity laws",
                json!({ "r": r }),
                ok,
            )
            .with_evidence(
                json!({ "carriers_checked": assoc.len(), "associativity_checked": assoc }),
            ),
        );
    }
    Ok(claims)
}

// ---------------------------------------------------------------- quantale

fn random_entry(rng: &mut ChaCha8Rng, q: Quantale) -> f64 {
    let special = rng.gen_bool(0.15);
    match q {
        Quantale::UnitProduct if special => [0.0, 1.0][rng.gen_range(0..2)],
        Quantale::UnitProduct => rng.gen_range(0.0..1.0),
        Quantale::ExtPlus if special => [0.0, f64::INFINITY][rng.gen_range(0..2)],
        Quantale::ExtPlus => rng.gen_range(0.0..5.0),
    }
}

/// Distance in the `[0,1]` picture, where `[0,∞]` is read through `e^{-x}`.
fn unit_distance(q: Quantale, a: &[f64], b: &[f64]) -> f64 {
    let lift = |v: f64| {
        if q == Quantale::ExtPlus {
            (-v).exp()
        } else {
            v
        }
    };
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (lift(x) - lift(y)).abs())
        .fold(0.0, f64::max)
}

pub fn transfer_claim(count: usize, max_dim: usize, eps: f64) -> Claim {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED ^ 0x9a);
    let cases: Vec<(QuantaleMatrix, Vec<f64>, Vec<f64>)> = (0..count)
        .map(|i| {
            let q = if i % 2 == 0 {
                Quantale::UnitProduct
            } else {
                Quantale::ExtPlus
            };
            let (m, k) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
            let e = (0..m)
                .map(|_| (0..k).map(|_| random_entry(&mut rng, q)).collect())
                .collect();
            let alpha = (0..m).map(|_| random_entry(&mut rng, q)).collect();
            let beta = (0..k).map(|_| random_entry(&mut rng, q)).collect();
            (
                QuantaleMatrix::new(q, e).expect("entries in range"),
                alpha,
                beta,
            )
        })
        .collect();
    sweep_claim(
        "quantale.transfer",
        "both derivations commute with the transfer between [0,1] and [0,∞]",
        json!({ "count": count, "max_dim": max_dim, "eps": eps, "seed": SWEEP_SEED ^ 0x9a }),
        &cases,
        |(m, alpha, beta)| {
            let q = m.quantale;
            let t = transfer_enrichment(m);
            let up = transfer_vector(q, &qderive_up(m, alpha).ok()?);
            let up2 = qderive_up(&t, &transfer_vector(q, alpha)).ok()?;
            let down = transfer_vector(q, &qderive_down(m, beta).ok()?);
            let down2 = qderive_down(&t, &transfer_vector(q, beta)).ok()?;
            let d =
                unit_distance(t.quantale, &up, &up2).max(unit_distance(t.quantale, &down, &down2));
            (d > eps || d.is_nan()).then(|| json!({ "matrix": m.to_json(), "distance": d }))
        },
    )
}

fn quantale_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for q in [Quantale::UnitProduct, Quantale::ExtPlus] {
        let laws = q.check_laws();
        claims.push(
            Claim::new(
                format!("quantale.{}.laws", q.tag()),
                "tensor is associative, unital and monotone; the residual is adjoint to it",
                json!({ "quantale": q.tag() }),
                laws.is_ok(),
            )
            .with_witness(laws.err().map(|e| json!(e))),
        );
    }
    claims.push(transfer_claim(1000, 5, cfg.eps));
    claims.push(exact_nucleus_claim());
    Ok(claims)
}

fn exact_nucleus_claim() -> Claim {
    use crate::quantale::{exact_nucleus_bruteforce, q_nucleus, NucleusMode};
    let sub = vec![0.0, 0.25, 0.5, 1.0];
    let mut cases = Vec::new();
    for a in &sub {
        for b in &sub {
            for c in &sub {
                for d in &sub {
                    cases.push(vec![vec![*a, *b], vec![*c, *d]]);
                }
            }
        }
    }
    sweep_claim(
        "quantale.exact",
        "exact nuclei over a finite sub-carrier agree with brute force",
        json!({ "subcarrier": sub, "shape": [2, 2] }),
        &cases,
        |e| {
            let m = QuantaleMatrix::new(Quantale::UnitProduct, e.clone())
                .ok()?
                .with_subcarrier(sub.clone())
                .ok()?;
            let fast = q_nucleus(&m, NucleusMode::Exact { budget: 1 << 20 }).ok()?;
            (fast != exact_nucleus_bruteforce(&m)).then(|| json!({ "entries": e }))
        },
    )
}

// ---------------------------------------------------------------- setcat

/// Small profunctors on which the Set-valued constructions are exercised.
pub fn setcat_corpus() -> Vec<(&'static str, Profunctor)> {
    let v = FinPoset::from_relations(3, &[(0, 1), (0, 2)]).expect("poset");
    let z2 = group_as_category(&FinGroup::cyclic(2));
    vec![
        (
            "hom.chain2",
            Profunctor::hom(&FinCategory::from_poset(&FinPoset::chain(2))),
        ),
        (
            "hom.chain3",
            Profunctor::hom(&FinCategory::from_poset(&FinPoset::chain(3))),
        ),
        ("hom.vee", Profunctor::hom(&FinCategory::from_poset(&v))),
        ("hom.z2", Profunctor::hom(&z2)),
        (
            "order.antichain2",
            Profunctor::order_matrix(&FinPoset::antichain(2)),
        ),
        (
            "order.chain3",
            Profunctor::order_matrix(&FinPoset::chain(3)),
        ),
        ("order.vee", Profunctor::order_matrix(&v)),
        ("constant.0", Profunctor::constant(0)),
        ("constant.1", Profunctor::constant(1)),
        ("constant.2", Profunctor::constant(2)),
        (
            "vector.z2.1_1",
            crate::cases::zp_table::vector_profunctor(&ZpVector {
                p: 2,
                one: 1,
                free: 1,
            }),
        ),
    ]
}

/// Values `β` for the Yoneda check: representables, the terminal and the
/// empty presheaf over the other base.
fn yoneda_values(cat: &FinCategory) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = (0..cat.num_objects()).map(|b| yoneda_pre(cat, b)).collect();
    out.push(Presheaf::terminal(cat));
    out.push(Presheaf::empty(cat));
    out
}

/// The Yoneda corpus leaves out the vector instance, whose free algebras on
/// representables are past the set-size cap.
pub fn yoneda_claims(cfg: &VerifyConfig) -> Vec<Claim> {
    let corpus: Vec<_> = setcat_corpus()
        .into_iter()
        .filter(|(n, _)| !n.starts_with("vector."))
        .collect();
    corpus
        .par_iter()
        .map(|(name, phi)| {
            let m = PresheafMonad::new(phi.clone());
            let mut ctx = cfg.ctx();
            let mut checked = 0;
            let mut skipped = 0;
            let mut witness = None;
            for side in [Side::Lower, Side::Upper] {
                let other = m.base(side.flip()).clone();
                for a in 0..m.base(side).num_objects() {
                    for beta in yoneda_values(&other) {
                        match matrix_yoneda_check(&m, side, a, &beta, &mut ctx) {
                            Ok(r) if r.holds() => checked += 1,
                            Ok(r) => {
                                witness.get_or_insert(json!({ "report": r, "beta": beta.sizes }));
                            }
                            Err(Error::Cap { .. }) => skipped += 1,
                            Err(e) => {
                                witness.get_or_insert(json!({ "error": e.to_string() }));
                            }
                        }
                    }
                }
            }
            Claim::new(
                format!("setcat.yoneda.{name}"),
                "algebra maps out of a free algebra on a representable are elements, by evaluation at the generator",
                json!({ "instance": name }),
                witness.is_none() && checked > 0,
            )
            .with_witness(witness)
            .with_evidence(json!({ "checked": checked, "skipped_at_cap": skipped }))
        })
        .collect()
}

fn small_carriers(m: &PresheafMonad, side: Side, cfg: &VerifyConfig) -> Vec<Presheaf> {
    let cat = m.base(side);
    all_presheaves(cat, 1, &mut Budget::new(cfg.budget)).unwrap_or_default()
}

fn setcat_suite(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let mut claims = yoneda_claims(cfg);
    for (name, phi) in setcat_corpus() {
        let m = PresheafMonad::new(phi);
        let mut ctx = cfg.ctx();
        let (mut unit, mut assoc, mut presented, mut algebras) = (0, 0, 0, 0);
        let mut witness = None;
        for side in [Side::Lower, Side::Upper] {
            for x in small_carriers(&m, side, cfg) {
                match m.check_laws(side, &x, &mut ctx) {
                    Ok(l) => {
                        unit += 1;
                        assoc += usize::from(l.associativity);
                    }
                    Err(Error::Cap { .. }) => continue,
                    Err(e) => {
                        witness.get_or_insert(json!({ "sizes": x.sizes, "error": e.to_string() }));
                    }
                }
                if side == Side::Lower {
                    let algs = match enumerate_algebras(&m, side, &x, &mut ctx) {
                        Ok(a) => a,
                        Err(Error::Cap { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    for a in algs {
                        algebras += 1;
                        match check_presentation(&m, &a, &mut ctx) {
                            Ok(p) if p.holds() => presented += 1,
                            Ok(p) => {
                                witness
                                    .get_or_insert(json!({ "sizes": x.sizes, "presentation": p }));
                            }
                            Err(Error::Cap { .. }) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
        claims.push(
            Claim::new(
                format!("setcat.monad.{name}"),
                "monad laws hold and every algebra is a quotient of a free algebra by a split fork",
                json!({ "instance": name, "carrier_sets_up_to": 1 }),
                witness.is_none(),
            )
            .with_witness(witness)
            .with_evidence(json!({ "unit": unit, "associativity": assoc, "algebras": algebras, "presented": presented })),
        );
    }
    claims.push(liminf_claim(cfg.max_size.min(4), cfg));
    claims.push(cyclic_identity_record(cfg)?);
    Ok(claims)
}

pub fn liminf_claim(max_n: usize, cfg: &VerifyConfig) -> Claim {
    let all: Vec<FinPoset> = (0..=max_n).flat_map(posets_up_to_iso).collect();
    sweep_claim(
        "setcat.liminf",
        "on a poset, the categorical liminf and limsup of a subset are the order ones",
        json!({ "posets_up_to": max_n }),
        &all,
        |p| {
            let c = FinCategory::from_poset(p);
            let mut ctx = cfg.ctx();
            Subset::all(p.len()).find_map(|s| {
                let d = FinFunctor::poset_subset(p, &c, s).ok()?;
                let got = (
                    liminf_cat(&c, &d, &mut ctx).ok()?,
                    limsup_cat(&c, &d, &mut ctx).ok()?,
                );
                let want = (liminf(p, s).ok()?, limsup(p, s).ok()?);
                (got != want).then(|| json!({ "poset": poset_json(p), "subset": s.to_vec() }))
            })
        },
    )
}

/// Whether the identity diagram of Z4 has a categorical liminf or limsup is
/// recorded, not asserted.
fn cyclic_identity_record(cfg: &VerifyConfig) -> Result<Claim> {
    let c = group_as_category(&FinGroup::cyclic(4));
    let d = FinFunctor::identity(&c);
    let mut ctx = cfg.ctx();
    let inf = liminf_cat(&c, &d, &mut ctx)?;
    let sup = limsup_cat(&c, &d, &mut ctx)?;
    Ok(Claim::evidence(
        "setcat.z4_identity",
        "liminf and limsup of the identity diagram of Z4, where they exist",
        json!({ "group": "Z4" }),
        json!({ "liminf": inf, "limsup": sup }),
    ))
}

// ---------------------------------------------------------------- conjectures

struct Instance {
    name: String,
    monad: PresheafMonad,
    rows: Vec<Algebra>,
    cols: Vec<Algebra>,
    /// Number of cuts, when the minimal completion is known.
    cuts: Option<usize>,
}

fn subterminal_algebras(m: &PresheafMonad, side: Side, ctx: &mut Ctx) -> Result<Vec<Algebra>> {
    let cat = m.base(side).clone();
    let n = cat.num_objects();
    let mut out = Vec::new();
    for s in Subset::all(n) {
        if let Some(x) = subterminal(&cat, &(0..n).map(|i| s.contains(i)).collect::<Vec<_>>()) {
            out.extend(enumerate_algebras(m, side, &x, ctx)?);
        }
    }
    Ok(out)
}

fn probe_instances(cfg: &VerifyConfig) -> Result<Vec<Instance>> {
    let mut ctx = cfg.ctx();
    let mut out = Vec::new();
    let v = FinPoset::from_relations(3, &[(0, 1), (0, 2)]).expect("poset");
    let n4 = FinPoset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).expect("poset");
    let posets = [
        ("order.chain1", FinPoset::chain(1)),
        ("order.antichain2", FinPoset::antichain(2)),
        ("order.chain2", FinPoset::chain(2)),
        ("order.chain3", FinPoset::chain(3)),
        ("order.vee", v.clone()),
        ("order.wedge", v.dual()),
        ("order.antichain3", FinPoset::antichain(3)),
        ("order.n", n4),
    ];
    for (name, p) in posets {
        let m = PresheafMonad::new(Profunctor::order_matrix(&p));
        let rows = subterminal_algebras(&m, Side::Lower, &mut ctx)?;
        let cols = subterminal_algebras(&m, Side::Upper, &mut ctx)?;
        out.push(Instance {
            name: name.into(),
            monad: m,
            rows,
            cols,
            cuts: Some(dm_completion(&p).len()),
        });
    }
    let one = FinCategory::discrete(1);
    for r in 0..=2 {
        let m = PresheafMonad::new(Profunctor::constant(r));
        let (rows, cols) = if r < 2 {
            let mut alg = |side| -> Result<Vec<Algebra>> {
                let mut v = Vec::new();
                for n in 0..=2 {
                    v.extend(enumerate_algebras(
                        &m,
                        side,
                        &Presheaf::constant(&one, n),
                        &mut ctx,
                    )?);
                }
                Ok(v)
            };
            (alg(Side::Lower)?, alg(Side::Upper)?)
        } else {
            let mut canon = |side| -> Result<Vec<Algebra>> {
                (0..2)
                    .map(|k| canonical_algebra(&m, side, &Presheaf::constant(&one, k), &mut ctx))
                    .collect()
            };
            (canon(Side::Lower)?, canon(Side::Upper)?)
        };
        out.push(Instance {
            name: format!("constant.{r}"),
            monad: m,
            rows,
            cols,
            cuts: None,
        });
    }
    for (name, phi) in [
        (
            "hom.chain2",
            Profunctor::hom(&FinCategory::from_poset(&FinPoset::chain(2))),
        ),
        (
            "hom.z2",
            Profunctor::hom(&group_as_category(&FinGroup::cyclic(2))),
        ),
    ] {
        let m = PresheafMonad::new(phi);
        let mut free = |side: Side| -> Result<Vec<Algebra>> {
            let cat = m.base(side).clone();
            (0..cat.num_objects())
                .map(|a| free_algebra(&m, side, &yoneda_pre(&cat, a), &mut ctx))
                .collect()
        };
        let (rows, cols) = (free(Side::Lower)?, free(Side::Upper)?);
        out.push(Instance {
            name: name.into(),
            monad: m,
            rows,
            cols,
            cuts: None,
        });
    }
    Ok(out)
}

/// Evidence for the two conjectures: loose cells against the hom-sets of
/// the adjunction between the algebra categories, and the size of the
/// tight part against the cuts where those are known. Never fails.
pub fn conjecture_probes(cfg: &VerifyConfig) -> Result<Vec<Claim>> {
    let instances = probe_instances(cfg)?;
    let mut claims = Vec::new();
    for inst in instances {
        let mut ctx = cfg.ctx();
        let e = loose_extension(
            &inst.monad,
            inst.rows.clone(),
            inst.cols.clone(),
            LooseReading::default(),
            TightReading::default(),
            &mut ctx,
        )?;
        let loose = e.loose_counts();
        let tight = e.tight_counts();
        let adj = match adjunction_counts(&inst.monad, &e, &mut ctx) {
            Ok(a) => Some(a),
            Err(Error::Cap { .. }) => None,
            Err(err) => return Err(err),
        };
        let carriers = |v: &[Algebra]| {
            v.iter()
                .map(|a| a.carrier().sizes.clone())
                .collect::<Vec<_>>()
        };
        let mut ev = json!({
            "rows": carriers(&inst.rows),
            "cols": carriers(&inst.cols),
            "loose": loose,
            "tight": tight,
        });
        if let Some(adj) = &adj {
            let lower: Vec<Vec<usize>> = adj
                .iter()
                .map(|r| r.iter().map(|c| c.0).collect())
                .collect();
            let upper: Vec<Vec<usize>> = adj
                .iter()
                .map(|r| r.iter().map(|c| c.1).collect())
                .collect();
            ev["hom_into_lower"] = json!(lower);
            ev["hom_into_upper"] = json!(upper);
            ev["loose_matches_lower"] = json!(lower == loose);
            ev["loose_matches_upper"] = json!(upper == loose);
        }
        claims.push(Claim::evidence(
            format!("conjectures.adjunction.{}", inst.name),
            "loose cells compared with the hom-sets of the adjunction between algebras",
            json!({ "instance": inst.name }),
            ev,
        ));
        let tight_total: usize = tight.iter().flatten().sum();
        let mut ev = json!({
            "tight_cells": tight_total,
            "loose_cells": loose.iter().flatten().sum::<usize>(),
            "rows": inst.rows.len(),
            "cols": inst.cols.len(),
        });
        if let Some(c) = inst.cuts {
            ev["cuts"] = json!(c);
            ev["tight_is_completion"] = json!(c == tight_total);
        }
        claims.push(Claim::evidence(
            format!("conjectures.tight_minimal.{}", inst.name),
            "size of the tight extension against the minimal completion",
            json!({ "instance": inst.name }),
            ev,
        ));
    }
    Ok(claims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert_eq!(
            run_suite("nope", &VerifyConfig::default())
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn dm_defect_on_small_posets() {
        for p in posets_up_to_iso(3) {
            assert_eq!(dm_defect(&p), None);
        }
    }

    #[test]
    fn split_claims_pass() {
        assert!(split_coequalizer_claims(2).iter().all(|c| c.pass));
    }

    #[test]
    fn transfer_passes() {
        assert!(transfer_claim(50, 3, 1e-9).pass);
    }
}
