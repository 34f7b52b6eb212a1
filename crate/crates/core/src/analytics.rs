//! Closed forms, weight recursions and the constant `C` for Bouch trees.
//!
//! Exact routines work on [`BouchParams`] and big integers and are limited to
//! generations whose weight fits in memory. The log-domain routines only need
//! `a0` and handle any generation: every quantity is normalized by `E_j`, so
//! nothing overflows even when `E_j` itself has more digits than atoms in the
//! universe.

use crate::bigcount::{factorial, ln_big, range_product};
use crate::error::{Error, Result};
use crate::logdomain::{ln_factorial, ln_factorial_per_unit};
use crate::params::BouchParams;
use crate::sparse::Sparse;
use num_bigint::BigUint;
use serde::Serialize;
use std::f64::consts::LN_2;

/// Largest `L_j` for which weights are computed exactly.
pub const MAX_EXACT_BONDS: u64 = 1_000_000;

/// Series terms below this are dropped.
pub const SERIES_CUTOFF: f64 = 1e-300;

/// Relative slack allowed for floating-point log arithmetic in bound checks.
pub const LOG_REL_BUDGET: f64 = 1e-9;

/// `L_j`, checked to agree between the telescoped and closed forms.
pub fn bond_count(params: &BouchParams, j: usize) -> Result<Sparse> {
    params.bond_count(j)
}

fn small_bond_count(params: &BouchParams, j: usize, limit: u64) -> Result<u64> {
    let l = params.bond_count(j)?;
    match l.to_u64() {
        Some(v) if v <= limit => Ok(v),
        _ => Err(Error::too_large(
            format!("L_{j} for a0={}", params.a0()),
            limit,
        )),
    }
}

/// `W_j` computed exactly from the backbone weights.
///
/// Backbone bond `i` (counted from the root) carries weight
/// `1 + (ℓ - i) + L_{j-1}·(b - ⌈i b/ℓ⌉ + 1)`; between two attachment points
/// those weights are consecutive integers, so each run is a range product.
pub fn exact_weight(params: &BouchParams, j: usize) -> Result<BigUint> {
    small_bond_count(params, j, MAX_EXACT_BONDS)?;
    let ell1 = params.ell(1).to_u64().expect("bounded");
    let mut w = factorial(ell1);
    let mut prev_l = ell1;
    for k in 2..=j {
        let ell = params.ell(k).to_u64().expect("bounded");
        let b = params.b(k).to_u64().expect("bounded");
        let spacing = ell / b;
        let mut backbone = BigUint::from(1u32);
        for r in 1..=b {
            let below = prev_l * (b - r + 1);
            let lo = 1 + ell - r * spacing + below;
            let hi = ell - (r - 1) * spacing + below;
            backbone *= range_product(lo, hi);
        }
        w = w.pow(b as u32) * backbone;
        prev_l = ell + b * prev_l;
    }
    Ok(w)
}

/// The recursion `W_j <= W_{j-1}^{b_j} L_j^{ℓ_j}`, iterated exactly from
/// `W_1 = ℓ_1!`.
pub fn paper_weight_bound_exact(params: &BouchParams, j: usize) -> Result<BigUint> {
    small_bond_count(params, j, MAX_EXACT_BONDS)?;
    let mut w = factorial(params.ell(1).to_u64().expect("bounded"));
    for k in 2..=j {
        let l = params.bond_count(k)?.to_biguint().expect("bounded");
        let ell = params.ell(k).to_u64().expect("bounded");
        let b = params.b(k).to_u64().expect("bounded");
        w = w.pow(b as u32) * l.pow(ell as u32);
    }
    Ok(w)
}

/// Log-domain view of the tower `a_k = 2^(a_{k-1})`.
#[derive(Debug, Clone)]
pub(crate) struct Tower {
    a: Vec<f64>,
}

impl Tower {
    pub(crate) fn new(a0: u64, upto: usize) -> Self {
        let mut a = vec![a0 as f64];
        for k in 1..=upto {
            let prev = a[k - 1];
            a.push(if prev > 1100.0 {
                f64::INFINITY
            } else {
                prev.exp2()
            });
        }
        Tower { a }
    }

    fn ln_a(&self, k: usize) -> f64 {
        if k == 0 {
            self.a[0].ln()
        } else {
            self.a[k - 1] * LN_2
        }
    }

    /// `ln E_k`
    pub(crate) fn ln_e(&self, k: usize) -> f64 {
        2.0 * self.ln_a(k)
    }

    /// `(x 2^-x)^2`, flushed to zero once it underflows.
    fn decay(x: f64) -> f64 {
        if x > 1100.0 {
            0.0
        } else {
            let r = x * (-x).exp2();
            r * r
        }
    }

    /// `E_{k-2}/E_{k-1} = (a_{k-2}/2^{a_{k-2}})^2`, `k >= 2`.
    pub(crate) fn ratio(&self, k: usize) -> f64 {
        Self::decay(self.a[k - 2])
    }

    /// `4 Σ_{m=2}^{k} E_{m-2}/E_{m-1}`; zero for `k < 2`.
    pub(crate) fn ratio_sum(&self, k: usize) -> f64 {
        4.0 * (2..=k).map(|m| self.ratio(m)).sum::<f64>()
    }

    /// `ln L_k = ln E_k + ln(1 + ratio_sum(k))`.
    pub(crate) fn ln_l(&self, k: usize) -> f64 {
        self.ln_e(k) + self.ratio_sum(k).ln_1p()
    }

    /// `(4 E_{k-2}/E_{k-1}) ln L_k`, expanded so that the huge `ln E_k`
    /// cancels against the tiny ratio.
    pub(crate) fn weight_increment(&self, k: usize) -> f64 {
        let x = self.a[k - 2];
        let main = if x > 1100.0 {
            0.0
        } else {
            8.0 * LN_2 * x * x * (-x).exp2()
        };
        main + 4.0 * self.ratio(k) * self.ratio_sum(k).ln_1p()
    }
}

/// A bound on `ln W_j` carried as `ln W_j / E_j`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LogWeightBound {
    pub j: usize,
    /// Upper bound on `ln W_j / E_j`.
    pub log_w_per_e: f64,
    /// `ln E_j`.
    pub ln_e: f64,
    /// `ln W_j` itself when it is finite in `f64`.
    pub log_w: Option<f64>,
}

/// Iterates `ln W_j/E_j <= ln W_{j-1}/E_{j-1} + (4E_{j-2}/E_{j-1}) ln L_j`
/// from `ln W_1 = ln(E_1!)`.
pub fn paper_weight_bound_log(a0: u64, j: usize) -> Result<LogWeightBound> {
    check_args(a0, j)?;
    let tower = Tower::new(a0, j);
    let mut per_e = ln_factorial_per_unit(tower.ln_e(1));
    for k in 2..=j {
        per_e += tower.weight_increment(k);
    }
    let ln_e = tower.ln_e(j);
    let log_w = Some(per_e * ln_e.exp()).filter(|v| v.is_finite());
    Ok(LogWeightBound {
        j,
        log_w_per_e: per_e,
        ln_e,
        log_w,
    })
}

/// Which arithmetic [`paper_weight_bound`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Exact,
    Log,
}

#[derive(Debug, Clone)]
pub enum WeightBound {
    Exact(BigUint),
    Log(LogWeightBound),
}

pub fn paper_weight_bound(params: &BouchParams, j: usize, mode: BoundMode) -> Result<WeightBound> {
    match mode {
        BoundMode::Exact => paper_weight_bound_exact(params, j).map(WeightBound::Exact),
        BoundMode::Log => paper_weight_bound_log(params.a0(), j).map(WeightBound::Log),
    }
}

fn check_args(a0: u64, j: usize) -> Result<()> {
    if a0 == 0 {
        return Err(Error::InvalidParameter("a0 must be >= 1".into()));
    }
    if j == 0 {
        return Err(Error::InvalidParameter("generation must be >= 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesTerm {
    pub k: usize,
    pub value: f64,
}

/// A positive series summed until its terms drop below [`SERIES_CUTOFF`].
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Series {
    pub sum: f64,
    pub terms: Vec<SeriesTerm>,
    /// Index of the first dropped term.
    pub truncation_k: usize,
    /// Twice the first dropped term; bounds everything that was dropped.
    pub tail_bound: f64,
}

fn sum_series(mut term: impl FnMut(usize) -> f64) -> Series {
    let mut terms = Vec::new();
    let mut k = 2;
    loop {
        let t = term(k);
        if t < SERIES_CUTOFF {
            let sum = terms.iter().fold(0.0, |acc, t: &SeriesTerm| acc + t.value);
            return Series {
                sum,
                terms,
                truncation_k: k,
                tail_bound: 2.0 * t,
            };
        }
        terms.push(SeriesTerm { k, value: t });
        k += 1;
    }
}

// The tower outruns f64 after a handful of levels, so this depth is ample.
const TOWER_DEPTH: usize = 16;

/// `ε₀ = 4 Σ_{k>=2} (a_{k-2}/2^{a_{k-2}})^2` with its truncation data.
pub fn epsilon0_series(a0: u64) -> Series {
    let tower = Tower::new(a0.max(1), TOWER_DEPTH);
    sum_series(|k| 4.0 * tower.ratio(k))
}

pub fn epsilon0(a0: u64) -> f64 {
    epsilon0_series(a0).sum
}

/// `ε₀`, `C₁`, `C₂` and `C = e^{C₂}` for a given `a0`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstantsReport {
    pub a0: u64,
    pub epsilon0: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// `ln(E_1!)/E_1`
    pub log_w1_per_e1: f64,
    pub terms: Vec<SeriesTerm>,
    pub truncation_k: usize,
    pub tail_bound: f64,
    pub epsilon0_truncation_k: usize,
    pub epsilon0_tail_bound: f64,
}

/// `C₁ = Σ_{k>=2} [(8 ln 2) a²/2^a + 4 ln(1+ε₀) a²/4^a]` with `a = a_{k-2}`,
/// i.e. the weight increments with `ln L_k` majorized by `ln E_k + ln(1+ε₀)`;
/// `C₂ = C₁ + ln(E_1!)/E_1`.
pub fn constants(a0: u64) -> Result<ConstantsReport> {
    check_args(a0, 1)?;
    let eps = epsilon0_series(a0);
    let tower = Tower::new(a0, TOWER_DEPTH);
    let log1p_eps = eps.sum.ln_1p();
    let c1_series = sum_series(|k| {
        let x = tower.a[k - 2];
        if x > 1100.0 {
            return 0.0;
        }
        let decay = (-x).exp2();
        8.0 * LN_2 * x * x * decay + 4.0 * log1p_eps * x * x * decay * decay
    });
    let log_w1_per_e1 = ln_factorial_per_unit(tower.ln_e(1));
    let c2 = c1_series.sum + log_w1_per_e1;
    Ok(ConstantsReport {
        a0,
        epsilon0: eps.sum,
        c1: c1_series.sum,
        c2,
        c: c2.exp(),
        log_w1_per_e1,
        terms: c1_series.terms,
        truncation_k: c1_series.truncation_k,
        tail_bound: c1_series.tail_bound,
        epsilon0_truncation_k: eps.truncation_k,
        epsilon0_tail_bound: eps.tail_bound,
    })
}

/// Outcome of checking `W_j <= C^{L_j}` for one generation.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub a0: u64,
    pub j: usize,
    pub mode: &'static str,
    pub epsilon0: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub truncation_k: usize,
    /// `ln L_j`
    pub ln_l: f64,
    /// `L_j / E_j`
    pub l_over_e: f64,
    /// Upper bound on (or exact value of) `ln W_j / E_j`.
    pub log_w_per_e: f64,
    /// `ln W_j`, when finite.
    pub log_w: Option<f64>,
    /// `(C₂ L_j - ln W_j)/L_j`
    pub margin_per_bond: f64,
    /// Per-generation constant: the partial sum `ln W_j/E_j` itself.
    pub tight_c2: f64,
    /// `ln(L_j!)`, when `L_j` fits in `f64`.
    pub log_l_factorial: Option<f64>,
    /// Lower bound on `ln N_j = ln(L_j!) - ln W_j`.
    pub log_n_lower: Option<f64>,
    /// `ln(L_j!) - L_j ln C`
    pub log_n_target: Option<f64>,
    pub passed: bool,
}

fn finish(mut r: BoundReport) -> Result<BoundReport> {
    let slack = LOG_REL_BUDGET * r.c2.abs().max(1.0);
    let per_e_ok = r.log_w_per_e <= r.c2 + slack;
    let margin_ok = r.margin_per_bond >= -slack;
    let n_ok = match (r.log_n_lower, r.log_n_target) {
        (Some(lo), Some(t)) => lo >= t - slack * r.ln_l.exp(),
        _ => true,
    };
    r.passed = per_e_ok && margin_ok && n_ok;
    if !r.passed {
        return Err(Error::BoundViolated(format!(
            "a0={} j={}: ln W/E = {} vs C2 = {}, margin {}",
            r.a0, r.j, r.log_w_per_e, r.c2, r.margin_per_bond
        )));
    }
    Ok(r)
}

/// Certifies `ln W_j <= C₂ E_j <= C₂ L_j` in the log domain, for any `j`.
pub fn verify_main_bound(a0: u64, j: usize) -> Result<BoundReport> {
    check_args(a0, j)?;
    let cst = constants(a0)?;
    let wb = paper_weight_bound_log(a0, j)?;
    let tower = Tower::new(a0, j);
    let l_over_e = 1.0 + tower.ratio_sum(j);
    let ln_l = tower.ln_l(j);
    let l = ln_l.exp();
    let log_l_factorial = l.is_finite().then(|| ln_factorial(l));
    let log_n_lower = log_l_factorial.zip(wb.log_w).map(|(f, w)| f - w);
    let log_n_target = log_l_factorial.map(|f| f - l * cst.c2);
    finish(BoundReport {
        a0,
        j,
        mode: "log",
        epsilon0: cst.epsilon0,
        c1: cst.c1,
        c2: cst.c2,
        c: cst.c,
        truncation_k: cst.truncation_k,
        ln_l,
        l_over_e,
        log_w_per_e: wb.log_w_per_e,
        log_w: wb.log_w,
        margin_per_bond: cst.c2 - wb.log_w_per_e / l_over_e,
        tight_c2: wb.log_w_per_e,
        log_l_factorial,
        log_n_lower,
        log_n_target,
        passed: false,
    })
}

/// Same certificate using the exact weight of the materializable `T_j`.
pub fn verify_main_bound_exact(a0: u64, j: usize) -> Result<BoundReport> {
    let params = BouchParams::new(a0, j)?;
    let cst = constants(a0)?;
    let w = exact_weight(&params, j)?;
    let l = small_bond_count(&params, j, MAX_EXACT_BONDS)?;
    let e = params.e(j).to_u64().expect("E_j <= L_j");
    let log_w = ln_big(&w);
    let fact = factorial(l);
    let n = &fact / &w;
    let log_fact = ln_big(&fact);
    let bound_w = paper_weight_bound_exact(&params, j)?;
    if w > bound_w {
        return Err(Error::BoundViolated(format!(
            "exact W_{j} exceeds the recursive bound"
        )));
    }
    finish(BoundReport {
        a0,
        j,
        mode: "exact",
        epsilon0: cst.epsilon0,
        c1: cst.c1,
        c2: cst.c2,
        c: cst.c,
        truncation_k: cst.truncation_k,
        ln_l: (l as f64).ln(),
        l_over_e: l as f64 / e as f64,
        log_w_per_e: log_w / e as f64,
        log_w: Some(log_w),
        margin_per_bond: (cst.c2 * l as f64 - log_w) / l as f64,
        tight_c2: log_w / e as f64,
        log_l_factorial: Some(log_fact),
        log_n_lower: Some(ln_big(&n)),
        log_n_target: Some(log_fact - l as f64 * cst.c2),
        passed: false,
    })
}

/// How the bonds of `T_j` are distributed between backbone and branches.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureReport {
    pub a0: u64,
    pub j: usize,
    pub epsilon0: f64,
    /// `L_j/E_j`, within `[1, 1+ε₀]`.
    pub l_over_e: f64,
    /// `E_j/L_j`, the share of bonds in first-generation branches.
    pub first_generation_fraction: f64,
    /// `ℓ_j/L_j`
    pub backbone_fraction: f64,
    /// `4 (a_{j-2}/2^{a_{j-2}})^2`
    pub backbone_bound: f64,
    /// Whether the exact rational checks could be run.
    pub exact: bool,
    /// `E_j <= L_j <= (1 + s) E_j` with `s` the longest exact partial sum of
    /// the `ε₀` series available (all of whose terms are positive, so `s <= ε₀`).
    pub exact_sandwich_holds: Option<bool>,
    /// `ℓ_j E_{j-1} <= 4 E_{j-2} L_j`.
    pub exact_backbone_holds: Option<bool>,
    pub passed: bool,
}

pub fn structure_fractions(a0: u64, j: usize) -> Result<StructureReport> {
    check_args(a0, j)?;
    if j < 2 {
        return Err(Error::InvalidParameter(
            "structure fractions need j >= 2".into(),
        ));
    }
    let eps = epsilon0(a0);
    let tower = Tower::new(a0, j);
    let s = tower.ratio_sum(j);
    let l_over_e = 1.0 + s;
    let backbone_bound = 4.0 * tower.ratio(j);
    let backbone_fraction = backbone_bound / l_over_e;

    let (sandwich, backbone) = match BouchParams::new(a0, j) {
        Ok(p) => {
            let l = p.bond_count(j)?;
            let e = p.e(j);
            let s_upper = match BouchParams::new(a0, j + 1) {
                Ok(next) => next.ratio_sum(j + 1),
                Err(_) => p.ratio_sum(j),
            };
            let upper = e * &(&Sparse::one() + &s_upper);
            let sandwich = *e <= l && l <= upper;
            let lhs = p.ell(j) * p.e(j - 1);
            let rhs = &(&Sparse::from_u64(4) * p.e(j - 2)) * &l;
            (Some(sandwich), Some(lhs <= rhs))
        }
        Err(Error::TooLarge { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    let tol = 1e-12;
    let float_ok = l_over_e >= 1.0
        && s <= eps * (1.0 + tol)
        && backbone_fraction <= backbone_bound * (1.0 + tol);
    Ok(StructureReport {
        a0,
        j,
        epsilon0: eps,
        l_over_e,
        first_generation_fraction: 1.0 / l_over_e,
        backbone_fraction,
        backbone_bound,
        exact: sandwich.is_some(),
        exact_sandwich_holds: sandwich,
        exact_backbone_holds: backbone,
        passed: float_ok && sandwich.unwrap_or(true) && backbone.unwrap_or(true),
    })
}
