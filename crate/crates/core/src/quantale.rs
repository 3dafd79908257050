//! Matrices valued in `([0,1], ×, 1)` or `([0,∞], +, 0)`, their derivation
//! operators and nuclei.
//!
//! `[0,∞]` is ordered by reversed numeric order, so its top is `0`, its bottom
//! is `∞`, and its infimum is the numeric maximum.

use serde_json::Value;

use crate::error::{Error, Result};

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Tolerance for sub-carrier membership and closure checks.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantale {
    UnitProduct,
    ExtPlus,
}

impl Quantale {
    pub fn tag(self) -> &'static str {
        match self {
            Quantale::UnitProduct => "unit-interval-product",
            Quantale::ExtPlus => "extended-nonneg-plus",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "unit-interval-product" => Ok(Quantale::UnitProduct),
            "extended-nonneg-plus" => Ok(Quantale::ExtPlus),
            other => Err(Error::input(format!("unknown quantale {other:?}"))),
        }
    }

    pub fn unit(self) -> f64 {
        match self {
            Quantale::UnitProduct => 1.0,
            Quantale::ExtPlus => 0.0,
        }
    }

    pub fn top(self) -> f64 {
        self.unit()
    }

    pub fn bottom(self) -> f64 {
        match self {
            Quantale::UnitProduct => 0.0,
            Quantale::ExtPlus => f64::INFINITY,
        }
    }

    pub fn contains(self, v: f64) -> bool {
        match self {
            Quantale::UnitProduct => (0.0..=1.0).contains(&v),
            Quantale::ExtPlus => v >= 0.0,
        }
    }

    pub fn check(self, v: f64) -> Result<()> {
        if v.is_nan() || !self.contains(v) {
            Err(Error::input(format!(
                "value {v} is outside the carrier of {}",
                self.tag()
            )))
        } else {
            Ok(())
        }
    }

    pub fn tensor(self, a: f64, b: f64) -> f64 {
        match self {
            Quantale::UnitProduct => a * b,
            Quantale::ExtPlus => a + b,
        }
    }

    /// Quantale order, not numeric order.
    pub fn leq(self, a: f64, b: f64) -> bool {
        match self {
            Quantale::UnitProduct => a <= b,
            Quantale::ExtPlus => a >= b,
        }
    }

    /// `t ⊸ s`: the greatest `r` with `t ⊗ r ≤ s`.
    pub fn residual(self, t: f64, s: f64) -> f64 {
        match self {
            Quantale::UnitProduct => {
                if t <= s {
                    1.0
                } else {
                    (s / t).min(1.0)
                }
            }
            Quantale::ExtPlus => {
                if t == f64::INFINITY || s <= t {
                    0.0
                } else {
                    s - t
                }
            }
        }
    }

    /// Binary infimum in the quantale order.
    pub fn meet(self, a: f64, b: f64) -> f64 {
        match self {
            Quantale::UnitProduct => a.min(b),
            Quantale::ExtPlus => a.max(b),
        }
    }

    /// Sample grid used for law checks: 101 points across the carrier, with
    /// `∞` standing in for the last point of `[0,∞]`.
    pub fn grid(self) -> Vec<f64> {
        match self {
            Quantale::UnitProduct => (0..=100).map(|i| i as f64 / 100.0).collect(),
            Quantale::ExtPlus => (0..100)
                .map(|i| i as f64 / 10.0)
                .chain([f64::INFINITY])
                .collect(),
        }
    }

    /// Checks unit, commutativity, associativity, monotonicity and the
    /// residual adjunction on the grid. Returns the first failure.
    pub fn check_laws(self) -> std::result::Result<(), String> {
        let g = self.grid();
        let close = |a: f64, b: f64| {
            a == b || (a - b).abs() <= MEMBERSHIP_TOL * (1.0 + a.abs().max(b.abs()))
        };
        let leq_tol = |a: f64, b: f64| self.leq(a, b) || close(a, b);
        for &a in &g {
            if !close(self.tensor(a, self.unit()), a) {
                return Err(format!("unit fails at {a}"));
            }
            for &b in &g {
                if !close(self.tensor(a, b), self.tensor(b, a)) {
                    return Err(format!("commutativity fails at {a},{b}"));
                }
                let r = self.residual(a, b);
                for &t in &g {
                    // Adjunction: a ⊗ t ≤ b ⟺ t ≤ (a ⊸ b).
                    let lhs = self.leq(self.tensor(a, t), b);
                    let rhs = self.leq(t, r);
                    if lhs != rhs && !(leq_tol(self.tensor(a, t), b) && leq_tol(t, r)) {
                        return Err(format!("adjunction fails at t={a}, r={t}, s={b}"));
                    }
                    if !close(
                        self.tensor(self.tensor(a, b), t),
                        self.tensor(a, self.tensor(b, t)),
                    ) {
                        return Err(format!("associativity fails at {a},{b},{t}"));
                    }
                    if self.leq(a, b) && !leq_tol(self.tensor(a, t), self.tensor(b, t)) {
                        return Err(format!("monotonicity fails at {a},{b},{t}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()).min(1e300))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantaleMatrix {
    pub quantale: Quantale,
    entries: Vec<Vec<f64>>,
    subcarrier: Option<Vec<f64>>,
}

impl QuantaleMatrix {
    pub fn new(quantale: Quantale, entries: Vec<Vec<f64>>) -> Result<Self> {
        let k = entries.first().map_or(0, Vec::len);
        for (r, row) in entries.iter().enumerate() {
            if row.len() != k {
                return Err(Error::input(format!(
                    "row {r} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for &v in row {
                quantale.check(v)?;
            }
        }
        Ok(QuantaleMatrix {
            quantale,
            entries,
            subcarrier: None,
        })
    }

    /// Attaches a finite sub-carrier for exact mode. It must contain the top,
    /// be closed under the residual, and contain every entry.
    pub fn with_subcarrier(mut self, values: Vec<f64>) -> Result<Self> {
        let q = self.quantale;
        let mut vals = values;
        for &v in &vals {
            q.check(v)?;
        }
        vals.sort_by(|a, b| a.partial_cmp(b).expect("no NaN after check"));
        vals.dedup_by(|a, b| approx_eq(*a, *b, MEMBERSHIP_TOL));
        let member = |v: f64| vals.iter().any(|&w| approx_eq(v, w, MEMBERSHIP_TOL));
        if !member(q.top()) {
            return Err(Error::Config(format!(
                "sub-carrier lacks the top element {}",
                q.top()
            )));
        }
        for &t in &vals {
            for &s in &vals {
                let r = q.residual(t, s);
                if !member(r) {
                    return Err(Error::Config(format!(
                        "sub-carrier not closed under residual: {t} ⊸ {s} = {r}"
                    )));
                }
            }
        }
        for row in &self.entries {
            for &v in row {
                if !member(v) {
                    return Err(Error::Config(format!(
                        "entry {v} is not in the sub-carrier"
                    )));
                }
            }
        }
        self.subcarrier = Some(vals);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn subcarrier(&self) -> Option<&[f64]> {
        self.subcarrier.as_deref()
    }

    pub fn get(&self, x: usize, u: usize) -> f64 {
        self.entries[x][u]
    }

    fn check_vector(&self, v: &[f64], len: usize, what: &str) -> Result<()> {
        if v.len() != len {
            return Err(Error::input(format!(
                "{what} vector has length {}, expected {len}",
                v.len()
            )));
        }
        v.iter().try_for_each(|&x| self.quantale.check(x))
    }

    /// `β(u) = inf_x (α(x) ⊸ Φ(x,u))`.
    pub fn up_unchecked(&self, alpha: &[f64]) -> Vec<f64> {
        let q = self.quantale;
        (0..self.cols())
            .map(|u| {
                (0..self.rows()).fold(q.top(), |acc, x| {
                    q.meet(acc, q.residual(alpha[x], self.entries[x][u]))
                })
            })
            .collect()
    }

    /// `α(ℓ) = inf_y (β(y) ⊸ Φ(ℓ,y))`.
    pub fn down_unchecked(&self, beta: &[f64]) -> Vec<f64> {
        let q = self.quantale;
        (0..self.rows())
            .map(|l| {
                (0..self.cols()).fold(q.top(), |acc, y| {
                    q.meet(acc, q.residual(beta[y], self.entries[l][y]))
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let enc = |v: f64| {
            if v.is_infinite() {
                Value::from("inf")
            } else {
                Value::from(v)
            }
        };
        let mut obj = serde_json::Map::new();
        obj.insert("quantale".into(), self.quantale.tag().into());
        obj.insert(
            "entries".into(),
            Value::Array(
                self.entries
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|&v| enc(v)).collect()))
                    .collect(),
            ),
        );
        if let Some(sc) = &self.subcarrier {
            obj.insert(
                "subcarrier".into(),
                Value::Array(sc.iter().map(|&v| enc(v)).collect()),
            );
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let tag = v
            .get("quantale")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::input("matrix JSON: missing string field \"quantale\""))?;
        let q = Quantale::from_tag(tag)?;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("matrix JSON: missing array field \"entries\""))?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::input("matrix JSON: each row must be an array"))?
                    .iter()
                    .map(decode_value)
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = QuantaleMatrix::new(q, entries)?;
        match v.get("subcarrier") {
            None | Some(Value::Null) => Ok(m),
            Some(Value::Array(sc)) => {
                m.with_subcarrier(sc.iter().map(decode_value).collect::<Result<_>>()?)
            }
            Some(_) => Err(Error::input("matrix JSON: \"subcarrier\" must be an array")),
        }
    }
}

/// Reads a number, or the string `"inf"`.
pub fn decode_value(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::input(format!("bad number {n}"))),
        Value::String(s) if s == "inf" || s == "+inf" => Ok(f64::INFINITY),
        other => Err(Error::input(format!(
            "expected a number or \"inf\", got {other}"
        ))),
    }
}

pub fn encode_vector(v: &[f64]) -> Value {
    Value::Array(
        v.iter()
            .map(|&x| {
                if x.is_infinite() {
                    Value::from("inf")
                } else {
                    Value::from(x)
                }
            })
            .collect(),
    )
}

pub fn qderive_up(m: &QuantaleMatrix, alpha: &[f64]) -> Result<Vec<f64>> {
    m.check_vector(alpha, m.rows(), "object")?;
    Ok(m.up_unchecked(alpha))
}

pub fn qderive_down(m: &QuantaleMatrix, beta: &[f64]) -> Result<Vec<f64>> {
    m.check_vector(beta, m.cols(), "attribute")?;
    Ok(m.down_unchecked(beta))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QPair {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NucleusMode {
    /// Enumerate vectors over the sub-carrier; `budget` bounds the vector count.
    Exact { budget: u128 },
    /// Iterate the closure from generators; finds fixpoints heuristically.
    Approximate { eps: f64, max_iter: usize },
}

fn vec_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
        .find(|o| o.is_ne())
        .unwrap_or(a.len().cmp(&b.len()))
}

fn vec_close(a: &[f64], b: &[f64], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| approx_eq(x, y, eps))
}

/// Every vector of length `len` over `vals`, visited in lexicographic order.
fn for_each_vector(vals: &[f64], len: usize, mut f: impl FnMut(&[f64])) {
    let mut idx = vec![0usize; len];
    let mut cur: Vec<f64> = vec![vals[0]; len];
    loop {
        f(&cur);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < vals.len() {
                cur[i] = vals[idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = vals[0];
        }
    }
}

/// Fixpoint pairs `(α, β)` with `β = up(α)` and `α = down(β)`, sorted by `α`.
pub fn q_nucleus(m: &QuantaleMatrix, mode: NucleusMode) -> Result<Vec<QPair>> {
    let mut out = match mode {
        NucleusMode::Exact { budget } => exact_nucleus(m, budget)?,
        NucleusMode::Approximate { eps, max_iter } => approximate_nucleus(m, eps, max_iter)?,
    };
    out.sort_by(|a, b| vec_cmp(&a.alpha, &b.alpha));
    Ok(out)
}

fn exact_nucleus(m: &QuantaleMatrix, budget: u128) -> Result<Vec<QPair>> {
    let vals = m
        .subcarrier()
        .ok_or_else(|| Error::Config("exact mode needs a sub-carrier".into()))?
        .to_vec();
    let by_objects = m.rows() <= m.cols();
    let len = if by_objects { m.rows() } else { m.cols() };
    let count = (vals.len() as u128)
        .checked_pow(len as u32)
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::cap("sub-carrier vectors", count, budget));
    }
    let mut out = Vec::new();
    for_each_vector(&vals, len, |v| {
        if by_objects {
            let beta = m.up_unchecked(v);
            if vec_close(&m.down_unchecked(&beta), v, MEMBERSHIP_TOL) {
                out.push(QPair {
                    alpha: v.to_vec(),
                    beta,
                });
            }
        } else {
            let alpha = m.down_unchecked(v);
            if vec_close(&m.up_unchecked(&alpha), v, MEMBERSHIP_TOL) {
                out.push(QPair {
                    alpha,
                    beta: v.to_vec(),
                });
            }
        }
    });
    Ok(out)
}

/// All pairs over the sub-carrier satisfying both equations; test oracle.
pub fn exact_nucleus_bruteforce(m: &QuantaleMatrix) -> Vec<QPair> {
    let vals = m.subcarrier().expect("sub-carrier").to_vec();
    let mut alphas = Vec::new();
    for_each_vector(&vals, m.rows(), |a| alphas.push(a.to_vec()));
    let mut betas = Vec::new();
    for_each_vector(&vals, m.cols(), |b| betas.push(b.to_vec()));
    let mut out = Vec::new();
    for a in &alphas {
        for b in &betas {
            if vec_close(&m.up_unchecked(a), b, MEMBERSHIP_TOL)
                && vec_close(&m.down_unchecked(b), a, MEMBERSHIP_TOL)
            {
                out.push(QPair {
                    alpha: a.clone(),
                    beta: b.clone(),
                });
            }
        }
    }
    out
}

/// Largest object count for which every crisp object subset seeds a run.
const CRISP_SUBSET_LIMIT: usize = 12;

fn approximate_nucleus(m: &QuantaleMatrix, eps: f64, max_iter: usize) -> Result<Vec<QPair>> {
    let q = m.quantale;
    let (rows, cols) = (m.rows(), m.cols());
    let mut seeds: Vec<Vec<f64>> = Vec::new();
    if rows <= CRISP_SUBSET_LIMIT {
        for bits in 0u64..1 << rows {
            seeds.push(
                (0..rows)
                    .map(|x| {
                        if bits >> x & 1 == 1 {
                            q.top()
                        } else {
                            q.bottom()
                        }
                    })
                    .collect(),
            );
        }
    } else {
        seeds.push(vec![q.bottom(); rows]);
        for x in 0..rows {
            let mut s = vec![q.bottom(); rows];
            s[x] = q.top();
            seeds.push(s);
        }
    }
    // Attribute-side seeds: a single attribute at a level taken from the matrix.
    let mut levels: Vec<f64> = m.entries.iter().flatten().copied().collect();
    levels.push(q.top());
    levels.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    levels.dedup();
    for u in 0..cols {
        for &t in &levels {
            let mut beta = vec![q.bottom(); cols];
            beta[u] = t;
            seeds.push(m.down_unchecked(&beta));
        }
    }

    let mut found: Vec<QPair> = Vec::new();
    for seed in seeds {
        let mut alpha = seed;
        let mut converged = false;
        let mut delta = f64::INFINITY;
        for _ in 0..max_iter.max(1) {
            let beta = m.up_unchecked(&alpha);
            let next = m.down_unchecked(&beta);
            delta = alpha
                .iter()
                .zip(&next)
                .map(|(a, b)| if a == b { 0.0 } else { (a - b).abs() })
                .fold(0.0, f64::max);
            alpha = next;
            if delta <= eps {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence {
                iterations: max_iter,
                delta,
            });
        }
        let beta = m.up_unchecked(&alpha);
        if !found.iter().any(|p| vec_close(&p.alpha, &alpha, eps)) {
            found.push(QPair { alpha, beta });
        }
    }
    Ok(found)
}

/// Entrywise `x ↦ e^{-x}` into `[0,1]`, or `x ↦ -ln x` (with `0 ↦ ∞`) into `[0,∞]`.
pub fn transfer_value(from: Quantale, v: f64) -> f64 {
    match from {
        Quantale::ExtPlus => (-v).exp(),
        Quantale::UnitProduct => {
            if v == 0.0 {
                f64::INFINITY
            } else {
                // `0.0 - ln` keeps `-ln 1` at +0.
                0.0 - v.ln()
            }
        }
    }
}

pub fn transfer_vector(from: Quantale, v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| transfer_value(from, x)).collect()
}

pub fn other(q: Quantale) -> Quantale {
    match q {
        Quantale::UnitProduct => Quantale::ExtPlus,
        Quantale::ExtPlus => Quantale::UnitProduct,
    }
}

/// Moves a matrix to the other quantale. Any sub-carrier is dropped, since
/// its image is generally not representable exactly.
pub fn transfer_enrichment(m: &QuantaleMatrix) -> QuantaleMatrix {
    let from = m.quantale;
    let entries: Vec<Vec<f64>> = m.entries.iter().map(|r| transfer_vector(from, r)).collect();
    QuantaleMatrix {
        quantale: other(from),
        entries,
        subcarrier: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest `t` on a fine grid with `t ⊗ a ≤ s`, searched in quantale order.
    fn grid_residual(q: Quantale, a: f64, s: f64) -> f64 {
        let grid: Vec<f64> = match q {
            Quantale::UnitProduct => (0..=10_000).map(|i| i as f64 / 10_000.0).collect(),
            Quantale::ExtPlus => (0..=10_000).map(|i| i as f64 / 1000.0).collect(),
        };
        grid.into_iter()
            .filter(|&t| q.leq(q.tensor(t, a), s))
            .fold(q.bottom(), |best, t| if q.leq(best, t) { t } else { best })
    }

    #[test]
    fn laws_hold_on_grid() {
        Quantale::UnitProduct.check_laws().unwrap();
        Quantale::ExtPlus.check_laws().unwrap();
    }

    #[test]
    fn one_by_one_examples() {
        let m = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![0.5]]).unwrap();
        assert_eq!(qderive_up(&m, &[0.25]).unwrap(), vec![1.0]);
        assert!((grid_residual(Quantale::UnitProduct, 0.25, 0.5) - 1.0).abs() < 1e-9);
        let m = QuantaleMatrix::new(Quantale::ExtPlus, vec![vec![2.0]]).unwrap();
        assert_eq!(qderive_up(&m, &[5.0]).unwrap(), vec![0.0]);
        assert!(grid_residual(Quantale::ExtPlus, 5.0, 2.0).abs() < 1e-9);
        assert_eq!(qderive_down(&m, &[5.0]).unwrap(), vec![0.0]);
        assert!((qderive_down(&m, &[0.5]).unwrap()[0] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn residual_matches_grid_oracle() {
        for q in [Quantale::UnitProduct, Quantale::ExtPlus] {
            for &(a, s) in &[(0.25, 0.5), (0.5, 0.25), (0.8, 0.2), (1.0, 0.3), (0.0, 0.7)] {
                let r = q.residual(a, s);
                let g = grid_residual(q, a, s);
                assert!((r - g).abs() < 2e-3, "{q:?} {a} {s}: {r} vs {g}");
            }
        }
    }

    #[test]
    fn unit_and_bottom_vectors() {
        let m = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![0.3, 0.9], vec![0.6, 0.2]])
            .unwrap();
        assert_eq!(qderive_up(&m, &[1.0, 1.0]).unwrap(), vec![0.3, 0.2]);
        assert_eq!(qderive_down(&m, &[1.0, 1.0]).unwrap(), vec![0.3, 0.2]);
        assert_eq!(qderive_down(&m, &[0.0, 0.0]).unwrap(), vec![1.0, 1.0]);
        assert!(qderive_up(&m, &[f64::NAN, 1.0]).is_err());
        assert!(qderive_up(&m, &[1.5, 1.0]).is_err());
    }

    #[test]
    fn exact_mode_examples() {
        let m = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![1.0]])
            .unwrap()
            .with_subcarrier(vec![0.0, 1.0])
            .unwrap();
        let n = q_nucleus(&m, NucleusMode::Exact { budget: 1 << 20 }).unwrap();
        assert_eq!(
            n,
            vec![QPair {
                alpha: vec![1.0],
                beta: vec![1.0]
            }]
        );
        assert_eq!(n, exact_nucleus_bruteforce(&m));

        let ones = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![1.0; 3]; 2])
            .unwrap()
            .with_subcarrier(vec![0.0, 0.5, 1.0])
            .unwrap();
        let n = q_nucleus(&ones, NucleusMode::Exact { budget: 1 << 20 }).unwrap();
        assert_eq!(
            n,
            vec![QPair {
                alpha: vec![1.0; 2],
                beta: vec![1.0; 3]
            }]
        );
    }

    #[test]
    fn subcarrier_validation() {
        let m = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![0.5]]).unwrap();
        assert!(matches!(
            m.clone().with_subcarrier(vec![0.0, 0.5]),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            m.clone().with_subcarrier(vec![0.0, 0.3, 0.5, 1.0]),
            Err(Error::Config(_))
        ));
        assert!(m.with_subcarrier(vec![0.0, 0.25, 0.5, 1.0]).is_ok());
        let e = QuantaleMatrix::new(Quantale::ExtPlus, vec![vec![1.0]]).unwrap();
        assert!(e
            .with_subcarrier(vec![0.0, 1.0, 2.0, f64::INFINITY])
            .is_ok());
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfer_value(Quantale::ExtPlus, 0.0), 1.0);
        assert!((transfer_value(Quantale::ExtPlus, std::f64::consts::LN_2) - 0.5).abs() < 1e-12);
        assert_eq!(transfer_value(Quantale::UnitProduct, 0.0), f64::INFINITY);
        assert_eq!(transfer_value(Quantale::ExtPlus, f64::INFINITY), 0.0);
        assert_eq!(
            transfer_value(Quantale::UnitProduct, 1.0).to_bits(),
            0.0f64.to_bits()
        );
    }

    #[test]
    fn approximate_mode_finds_exact_fixpoints() {
        let m = QuantaleMatrix::new(Quantale::UnitProduct, vec![vec![1.0, 0.5], vec![0.5, 1.0]])
            .unwrap()
            .with_subcarrier(vec![0.0, 0.25, 0.5, 1.0])
            .unwrap();
        let exact = q_nucleus(&m, NucleusMode::Exact { budget: 1 << 20 }).unwrap();
        let approx = q_nucleus(
            &m,
            NucleusMode::Approximate {
                eps: DEFAULT_EPS,
                max_iter: DEFAULT_MAX_ITER,
            },
        )
        .unwrap();
        for p in &approx {
            assert!(exact.iter().any(|e| vec_close(&e.alpha, &p.alpha, 1e-9)));
        }
    }

    #[test]
    fn json_round_trip_with_inf() {
        let v = serde_json::json!({"quantale": "extended-nonneg-plus", "entries": [[0.0, "inf"]], "subcarrier": [0.0, "inf"]});
        let m = QuantaleMatrix::from_json(&v).unwrap();
        assert_eq!(m.get(0, 1), f64::INFINITY);
        assert_eq!(QuantaleMatrix::from_json(&m.to_json()).unwrap(), m);
        assert!(
            QuantaleMatrix::from_json(&serde_json::json!({"quantale": "x", "entries": []}))
                .is_err()
        );
    }
}
