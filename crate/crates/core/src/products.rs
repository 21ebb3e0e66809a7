//! Infinite products `prod (1 + a_n)` of bicomplex factors.
//!
//! A product converges to a nonsingular limit exactly when both idempotent
//! component products do, and then `sum Log w_n` converges as well. The
//! analysis tracks the running product and the running log sum
//! componentwise; a product whose component magnitude collapses is reported
//! as diverging to zero rather than converging. Divergence otherwise needs
//! the same kind of evidence as for series: factors that stay away from 1,
//! a log sum whose dyadic block increments stop shrinking, or overflow.

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Complex, IdempotentPair};
use crate::error::{Error, Result};
use crate::series::{AnalysisConfig, BlockSumMonitor, DecayMonitor, NonNegativeTracker, Verdict, Window, OVERFLOW_GUARD};
use crate::transcendental::{self, log_components, BranchIndex, LatticeCoordinates};

/// A component magnitude below this is treated as having collapsed to zero.
pub const UNDERFLOW_GUARD: f64 = 1e-30;

const EXTRAPOLATION_SAMPLES: usize = 6;
const COMPARISON_FLOOR: f64 = 1e-250;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductVerdict {
    ConvergedNonsingular,
    DivergedToZero,
    Diverged,
    Inconclusive,
    SingularTerm,
}

/// Richardson extrapolation of the log sum over power-of-two checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    /// `exp` of the extrapolated log sum.
    pub limit: Bicomplex,
    pub log_sum: Bicomplex,
    /// Difference between the two finest estimates at the chosen order.
    pub error_estimate: f64,
    /// Number of elimination steps; 0 means the raw log sum was kept.
    pub order: u32,
}

/// Result of [`evaluate_product`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub verdict: ProductVerdict,
    /// Last partial product.
    pub limit_estimate: Bicomplex,
    pub terms_used: u64,
    /// Largest spread of the partial products over the final window.
    pub tail_delta: f64,
    /// `w_n -> 1` is consistent with the tail (no evidence against it).
    pub necessary_condition_ok: bool,
    /// `sum ||Log w_n||` converged and the product converged.
    pub absolute: bool,
    /// `sum_{k<=n} Log w_k`, principal branch per term.
    pub log_sum: Bicomplex,
    /// `ln |p'_n|`, `ln |p''_n|`.
    pub log_magnitudes: [f64; 2],
    /// Verdict for `sum ||Log w_n||`.
    pub via_log_norms: Verdict,
    /// Verdict for `sum ||w_n - 1||`.
    pub via_deviation_norms: Verdict,
    /// The two absolute-convergence criteria agree.
    pub criteria_agreement: bool,
    /// 1-based index of the first singular factor.
    pub singular_index: Option<u64>,
    pub extrapolation: Option<Extrapolation>,
}

/// Running products `P_k = w_1 ... w_(k+1)` of the first `n_max` factors.
pub fn partial_products(terms: impl IntoIterator<Item = Bicomplex>, n_max: usize) -> Result<Vec<Bicomplex>> {
    if n_max < 1 {
        return Err(Error::InvalidConfig("n_max must be at least 1".into()));
    }
    let mut acc = Bicomplex::ONE;
    let mut out = Vec::with_capacity(n_max.min(1 << 20));
    for (i, w) in terms.into_iter().take(n_max).enumerate() {
        let index = i as u64 + 1;
        if !w.is_finite() {
            return Err(Error::NonFiniteTerm { index });
        }
        acc = acc.checked_mul(w).map_err(|_| Error::NonFinitePartial { index })?;
        out.push(acc);
    }
    Ok(out)
}

fn pair_dist(a: IdempotentPair, b: IdempotentPair) -> f64 {
    a.zip_with(b, |x, y| x - y).euclid()
}

/// Convergence verdict for `prod w_n`, consuming at most `max_terms` factors.
///
/// Stops at the first singular factor, once the product verdict and both
/// absolute-convergence criteria are resolved, or when the budget runs out.
pub fn evaluate_product(terms: impl IntoIterator<Item = Bicomplex>, cfg: AnalysisConfig) -> Result<ProductReport> {
    cfg.validate()?;
    let one = Complex::new(1.0, 0.0);
    let mut p = IdempotentPair::new(one, one);
    let mut s = IdempotentPair::new(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    let mut log_mag = [0.0f64; 2];
    let mut products = Window::new(cfg.window);
    let mut logs = Window::new(cfg.window);
    let mut deviations = Window::new(cfg.window);
    let mut min_log_mag = Window::new(cfg.window);
    let mut decay = DecayMonitor::new(cfg.tol);
    let mut log_blocks = [BlockSumMonitor::new(cfg.tol), BlockSumMonitor::new(cfg.tol)];
    let mut via_log = NonNegativeTracker::new(cfg.tol, cfg.window);
    let mut via_dev = NonNegativeTracker::new(cfg.tol, cfg.window);
    let mut checkpoints: Vec<IdempotentPair> = Vec::new();
    let mut next_checkpoint = 1u64;

    let mut used = 0u64;
    let mut settled: Option<ProductVerdict> = None;
    let mut singular_index = None;
    let mut current = ProductVerdict::Inconclusive;

    let necessary_ok = |deviations: &Window<f64>, decay: &DecayMonitor| {
        let small = deviations.is_full() && deviations.iter().all(|&d| d < 10.0 * cfg.tol);
        small || !decay.not_decaying()
    };
    let heading_to_zero = |mins: &Window<f64>| {
        let v: Vec<f64> = mins.iter().copied().collect();
        mins.is_full() && v.windows(2).all(|x| x[1] < x[0])
    };

    for w in terms.into_iter().take(cfg.max_terms as usize) {
        used += 1;
        if !w.is_finite() {
            return Err(Error::NonFiniteTerm { index: used });
        }
        if w.is_singular() {
            singular_index = Some(used);
            settled = Some(ProductVerdict::SingularTerm);
            break;
        }
        let wp = w.to_idempotent();
        let lw = log_components(wp);
        p = p.zip_with(wp, |a, b| a * b);
        s = s.zip_with(lw, |a, b| a + b);
        log_mag[0] += lw.p1.re;
        log_mag[1] += lw.p2.re;
        let deviation = (w - Bicomplex::ONE).euclid();
        products.push(p);
        logs.push(s);
        deviations.push(deviation);
        min_log_mag.push(log_mag[0].min(log_mag[1]));
        decay.push(deviation);
        log_blocks[0].push(s.p1);
        log_blocks[1].push(s.p2);
        via_log.push(lw.euclid());
        via_dev.push(deviation);
        if used == next_checkpoint {
            checkpoints.push(s);
            next_checkpoint *= 2;
        }

        if settled.is_none() {
            let toward_zero = heading_to_zero(&min_log_mag);
            let logs_unsettled = log_blocks.iter().any(BlockSumMonitor::not_settling);
            let collapsed = log_mag[0].min(log_mag[1]) < UNDERFLOW_GUARD.ln();
            if collapsed && toward_zero && (!necessary_ok(&deviations, &decay) || logs_unsettled) {
                settled = Some(ProductVerdict::DivergedToZero);
            } else if log_mag[0].max(log_mag[1]) > OVERFLOW_GUARD.ln()
                || ((decay.not_decaying() || logs_unsettled) && !toward_zero)
            {
                settled = Some(ProductVerdict::Diverged);
            }
        }
        current = match settled {
            Some(v) => v,
            None => converged_verdict(&products, &logs, &deviations, p, cfg.tol),
        };
        if current != ProductVerdict::Inconclusive && via_log.verdict().is_resolved() && via_dev.verdict().is_resolved()
        {
            break;
        }
    }

    let verdict = settled.unwrap_or(current);
    let (log_v, dev_v) = match verdict {
        ProductVerdict::SingularTerm => (Verdict::Inconclusive, Verdict::Inconclusive),
        _ => (via_log.verdict(), via_dev.verdict()),
    };
    let extrapolation = match verdict {
        ProductVerdict::ConvergedNonsingular | ProductVerdict::Inconclusive => richardson(&checkpoints, s),
        _ => None,
    };
    Ok(ProductReport {
        verdict,
        limit_estimate: p.to_bicomplex(),
        terms_used: used,
        tail_delta: products.spread(pair_dist),
        necessary_condition_ok: necessary_ok(&deviations, &decay),
        absolute: log_v == Verdict::Converged && verdict == ProductVerdict::ConvergedNonsingular,
        log_sum: s.to_bicomplex(),
        log_magnitudes: log_mag,
        via_log_norms: log_v,
        via_deviation_norms: dev_v,
        criteria_agreement: log_v == dev_v,
        singular_index,
        extrapolation,
    })
}

fn converged_verdict(
    products: &Window<IdempotentPair>,
    logs: &Window<IdempotentPair>,
    deviations: &Window<f64>,
    p: IdempotentPair,
    tol: f64,
) -> ProductVerdict {
    if products.is_full()
        && deviations.iter().all(|&d| d < 10.0 * tol)
        && logs.spread(pair_dist) < tol
        && products.spread(pair_dist) < tol
        && !p.to_bicomplex().is_singular()
    {
        ProductVerdict::ConvergedNonsingular
    } else {
        ProductVerdict::Inconclusive
    }
}

/// Richardson table on log sums at `n = 1, 2, 4, ...`, assuming an error
/// expansion in powers of `1/n`. Picks the order whose two finest entries
/// agree best.
fn richardson(checkpoints: &[IdempotentPair], last: IdempotentPair) -> Option<Extrapolation> {
    if checkpoints.len() < 3 {
        return None;
    }
    let samples = &checkpoints[checkpoints.len().saturating_sub(EXTRAPOLATION_SAMPLES)..];
    let mut table: Vec<Vec<IdempotentPair>> = vec![samples.to_vec()];
    for j in 1..samples.len() {
        let prev = &table[j - 1];
        let factor = 1.0 / (2f64.powi(j as i32) - 1.0);
        let next = prev
            .windows(2)
            .map(|x| x[1].zip_with(x[0], |fine, coarse| fine + (fine - coarse) * factor))
            .collect();
        table.push(next);
    }
    let (order, error) = table
        .iter()
        .enumerate()
        .filter(|(_, col)| col.len() >= 2)
        .map(|(j, col)| (j, pair_dist(col[col.len() - 1], col[col.len() - 2])))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    let chosen = if order == 0 {
        last
    } else {
        *table[order].last()?
    };
    let log_sum = chosen.to_bicomplex();
    Some(Extrapolation {
        limit: chosen.map(Complex::exp).to_bicomplex(),
        log_sum,
        error_estimate: error,
        order: order as u32,
    })
}

/// Result of [`log_sum_equivalence`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogSumEquivalence {
    /// `p_N`, multiplied in the `z1 + i2 z2` basis.
    pub product_limit: Bicomplex,
    /// `S_N = sum Log w_n`, principal branch per term.
    pub log_sum: Bicomplex,
    pub exp_of_log_sum: Bicomplex,
    /// Largest `||exp(S_n) - p_n|| / max(1, ||p_n||)` over compared `n`.
    pub max_discrepancy: f64,
    pub worst_index: u64,
    pub terms_used: u64,
    /// Steps compared; comparison stops once `p_n` underflows or overflows.
    pub terms_compared: u64,
    /// `S_N - Log p_N` in period coordinates, when `p_N` is nonsingular.
    pub lattice_offset: Option<LatticeCoordinates>,
    /// The same offset as a branch shift, when it lies on that sublattice.
    pub branch_offset: Option<BranchIndex>,
    /// Last index at which the lattice offset changed.
    pub offset_settled_at: u64,
}

/// Compares `p_n = prod w_k` with `exp(sum Log w_k)` along the sequence and
/// records the period-lattice offset between `sum Log w_k` and `Log p_n`.
pub fn log_sum_equivalence(terms: impl IntoIterator<Item = Bicomplex>, n_max: u64) -> Result<LogSumEquivalence> {
    let mut p = Bicomplex::ONE;
    let mut s = Bicomplex::ZERO;
    let mut comparing = true;
    let (mut worst, mut worst_index) = (0.0f64, 0u64);
    let (mut used, mut compared) = (0u64, 0u64);
    let mut offset: Option<(i64, i64)> = None;
    let mut settled_at = 0u64;
    for w in terms.into_iter().take(n_max as usize) {
        used += 1;
        if !w.is_finite() {
            return Err(Error::NonFiniteTerm { index: used });
        }
        if w.is_singular() {
            return Err(Error::SingularTerm { index: used });
        }
        s += transcendental::log_principal(w)?;
        if !comparing {
            continue;
        }
        p *= w;
        let size = p.euclid();
        if !(p.is_finite() && (COMPARISON_FLOOR..=OVERFLOW_GUARD).contains(&size)) {
            comparing = false;
            continue;
        }
        compared = used;
        let e = transcendental::exp(s)?;
        let d = (e - p).euclid() / size;
        if d > worst {
            worst = d;
            worst_index = used;
        }
        if let Ok(lp) = transcendental::log_principal(p) {
            let k = LatticeCoordinates::of(s - lp).nearest();
            if offset != Some(k) {
                offset = Some(k);
                settled_at = used;
            }
        }
    }
    let lattice = transcendental::log_principal(p).ok().filter(|_| comparing).map(|lp| LatticeCoordinates::of(s - lp));
    Ok(LogSumEquivalence {
        product_limit: p,
        log_sum: s,
        exp_of_log_sum: transcendental::exp(s)?,
        max_discrepancy: worst,
        worst_index,
        terms_used: used,
        terms_compared: compared,
        lattice_offset: lattice,
        branch_offset: lattice.and_then(|l| l.branch_index()),
        offset_settled_at: settled_at,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionVerdict {
    Converged,
    Diverged,
    Inconclusive,
    /// Some factor has `Re P1(w) <= 0` or `Re P2(w) <= 0`.
    HypothesisViolated,
}

impl From<Verdict> for CriterionVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Converged => CriterionVerdict::Converged,
            Verdict::Diverged => CriterionVerdict::Diverged,
            Verdict::Inconclusive => CriterionVerdict::Inconclusive,
        }
    }
}

/// Result of [`absolute_convergence_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsoluteCheck {
    /// Verdict for `sum ||Log w_n||`.
    pub via_log_norms: CriterionVerdict,
    /// Verdict for `sum ||w_n - 1||`.
    pub via_deviation_norms: CriterionVerdict,
    pub agree: bool,
    /// First factor with a non-positive real part in either component.
    pub hypothesis_violated_at: Option<u64>,
    pub terms_used: u64,
    pub log_norm_sum: f64,
    pub deviation_norm_sum: f64,
}

/// Runs both absolute-convergence criteria over the factors. They are
/// equivalent when every factor has `Re P1(w) > 0` and `Re P2(w) > 0`; the
/// check stops at the first factor violating that.
pub fn absolute_convergence_check(
    terms: impl IntoIterator<Item = Bicomplex>,
    cfg: AnalysisConfig,
) -> Result<AbsoluteCheck> {
    cfg.validate()?;
    let mut via_log = NonNegativeTracker::new(cfg.tol, cfg.window);
    let mut via_dev = NonNegativeTracker::new(cfg.tol, cfg.window);
    let mut used = 0u64;
    let mut violated = None;
    for w in terms.into_iter().take(cfg.max_terms as usize) {
        used += 1;
        if !w.is_finite() {
            return Err(Error::NonFiniteTerm { index: used });
        }
        if w.is_singular() {
            return Err(Error::SingularTerm { index: used });
        }
        let wp = w.to_idempotent();
        if !(wp.p1.re > 0.0 && wp.p2.re > 0.0) {
            violated = Some(used);
            break;
        }
        via_log.push(log_components(wp).euclid());
        via_dev.push((w - Bicomplex::ONE).euclid());
        if via_log.verdict().is_resolved() && via_dev.verdict().is_resolved() {
            break;
        }
    }
    let (a, b) = match violated {
        Some(_) => (CriterionVerdict::HypothesisViolated, CriterionVerdict::HypothesisViolated),
        None => (via_log.verdict().into(), via_dev.verdict().into()),
    };
    Ok(AbsoluteCheck {
        via_log_norms: a,
        via_deviation_norms: b,
        agree: a == b,
        hypothesis_violated_at: violated,
        terms_used: used,
        log_norm_sum: via_log.sum(),
        deviation_norm_sum: via_dev.sum(),
    })
}

/// Result of [`log_bound_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogBound {
    /// `||Log(1 + w)|| >= ||w|| / 2`
    pub lower_ok: bool,
    /// `||Log(1 + w)|| <= 3 ||w|| / 2`
    pub upper_ok: bool,
    /// `||Log(1 + w)|| / ||w||`, 1 at `w = 0`.
    pub ratio: f64,
    pub norm: f64,
    pub log_norm: f64,
}

/// Tests `||w||/2 <= ||Log(1 + w)|| <= 3||w||/2` for `||w|| < 1/2`.
///
/// The complex inequality does not carry over to the Euclidean norm on
/// bicomplex numbers: the idempotent components of `w` can reach modulus
/// `sqrt(2) ||w||`, past the disc where the complex bound holds. The upper
/// bound fails for `w = -0.7 e1` (`||w|| ~ 0.495`, ratio ~ 1.72). It does
/// hold whenever both components have modulus below 1/2, see
/// [`componentwise_log_bound`].
pub fn log_bound_check(w: Bicomplex) -> Result<LogBound> {
    let norm = w.finite_or("log bound argument")?.euclid();
    if norm >= 0.5 {
        return Err(Error::Precondition(format!("||w|| = {norm} is not below 1/2")));
    }
    if norm == 0.0 {
        return Ok(LogBound {
            lower_ok: true,
            upper_ok: true,
            ratio: 1.0,
            norm,
            log_norm: 0.0,
        });
    }
    let log_norm = transcendental::log1p(w)?.euclid();
    Ok(LogBound {
        lower_ok: log_norm >= 0.5 * norm,
        upper_ok: log_norm <= 1.5 * norm,
        ratio: log_norm / norm,
        norm,
        log_norm,
    })
}

/// The complex bound applied to each idempotent component, for
/// `|w'|, |w''| < 1/2`: returns whether
/// `|z|/2 <= |Log(1 + z)| <= 3|z|/2` holds for both.
pub fn componentwise_log_bound(w: Bicomplex) -> Result<[bool; 2]> {
    let p = w.finite_or("log bound argument")?.to_idempotent();
    let check = |z: Complex| -> Result<bool> {
        let r = z.norm();
        if r >= 0.5 {
            return Err(Error::Precondition(format!("component modulus {r} is not below 1/2")));
        }
        let l = transcendental::principal_ln(Complex::new(1.0, 0.0) + z).norm();
        Ok(0.5 * r <= l && l <= 1.5 * r)
    };
    Ok([check(p.p1)?, check(p.p2)?])
}
