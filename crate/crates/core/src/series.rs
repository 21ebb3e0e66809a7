//! Convergence analysis of bicomplex series and power series.
//!
//! A bicomplex series converges exactly when both idempotent component
//! series do, so every analysis here runs two complex trackers side by side
//! and combines their verdicts. Verdicts are numerical evidence, not proofs:
//!
//! * **converged**: the last `window` partial sums are pairwise closer than
//!   `tol` (a Cauchy window), per component.
//! * **diverged**: only on explicit evidence. Partial sums beyond
//!   [`OVERFLOW_GUARD`], or term magnitudes that stop shrinking: the mean
//!   magnitude over the dyadic block `(n/2, n]` stays above 0.95 of the
//!   previous block's for three consecutive blocks while each block still
//!   contributes more than `tol`. Likewise when the block increments
//!   `S(2^k) - S(2^(k-1))` of the partial sums stop shrinking. For series of non-negative terms a
//!   block ratio at or above `2^-(1 + 0.02)` (local power-law exponent at
//!   most 1.02, the harmonic borderline) is also accepted as evidence.
//! * **inconclusive** otherwise, including an exhausted budget.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Complex, IdempotentPair};
use crate::error::{Error, Result};

/// Partial sums (or products) beyond this magnitude count as divergence.
pub const OVERFLOW_GUARD: f64 = 1e150;

/// Block ratio at or above which terms are considered not to tend to zero.
pub const NONDECAY_RATIO: f64 = 0.95;

/// Margin over the harmonic exponent for the non-negative power-law test.
pub const POWER_LAW_MARGIN: f64 = 0.02;

const BLOCKS_REQUIRED: u32 = 3;
/// Dyadic blocks ending before this index give no divergence evidence. A
/// shuffled prefix of a convergent sequence looks exactly like terms that
/// never decay, so evidence from short horizons would call a mere
/// rearrangement divergent. Prefixes up to about 10^4 terms are tolerated;
/// the price is that divergence is declared after ~6.5e4 terms at the
/// earliest.
const FIRST_JUDGED_BLOCK_END: u64 = 1 << 14;

/// Budget and tolerance for a convergence analysis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub tol: f64,
    pub window: usize,
    pub max_terms: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tol: 1e-10,
            window: 8,
            max_terms: 1_000_000,
        }
    }
}

impl AnalysisConfig {
    pub fn new(tol: f64, window: usize, max_terms: u64) -> Self {
        AnalysisConfig { tol, window, max_terms }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if self.window < 2 {
            return Err(Error::InvalidConfig(format!("window must be at least 2, got {}", self.window)));
        }
        if self.max_terms < self.window as u64 {
            return Err(Error::InvalidConfig(format!(
                "max_terms ({}) must be at least window ({})",
                self.max_terms, self.window
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

impl Verdict {
    /// Verdict of a sum of independent parts: converged only if all parts
    /// converge, diverged as soon as one part diverges.
    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Converged;
        for v in parts {
            match v {
                Verdict::Diverged => return Verdict::Diverged,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Converged => {}
            }
        }
        out
    }

    pub fn is_resolved(self) -> bool {
        self != Verdict::Inconclusive
    }
}

/// Fixed-capacity ring of the most recent values.
#[derive(Clone, Debug)]
pub(crate) struct Window<T> {
    buf: VecDeque<T>,
    cap: usize,
}

impl<T: Copy> Window<T> {
    pub(crate) fn new(cap: usize) -> Self {
        Window {
            buf: VecDeque::with_capacity(cap),
            cap,
        }
    }

    pub(crate) fn push(&mut self, x: T) {
        if self.buf.len() == self.cap {
            self.buf.pop_front();
        }
        self.buf.push_back(x);
    }

    pub(crate) fn is_full(&self) -> bool {
        self.buf.len() == self.cap
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.buf.iter()
    }

    /// Largest pairwise distance.
    pub(crate) fn spread(&self, dist: impl Fn(T, T) -> f64) -> f64 {
        let mut worst = 0.0f64;
        for (i, &a) in self.buf.iter().enumerate() {
            for &b in self.buf.iter().skip(i + 1) {
                worst = worst.max(dist(a, b));
            }
        }
        worst
    }
}

/// Watches term magnitudes over dyadic blocks `(2^(k-1), 2^k]`.
#[derive(Clone, Debug)]
pub(crate) struct DecayMonitor {
    tol: f64,
    n: u64,
    block_start: u64,
    block_end: u64,
    block_sum: f64,
    prev_mean: Option<f64>,
    nondecay_streak: u32,
    slow_streak: u32,
}

impl DecayMonitor {
    pub(crate) fn new(tol: f64) -> Self {
        DecayMonitor {
            tol,
            n: 0,
            block_start: 0,
            block_end: 1,
            block_sum: 0.0,
            prev_mean: None,
            nondecay_streak: 0,
            slow_streak: 0,
        }
    }

    pub(crate) fn push(&mut self, magnitude: f64) {
        self.n += 1;
        self.block_sum += magnitude;
        if self.n < self.block_end {
            return;
        }
        let mean = self.block_sum / (self.block_end - self.block_start) as f64;
        if let Some(prev) = self.prev_mean {
            if self.n >= FIRST_JUDGED_BLOCK_END && prev > 0.0 {
                let ratio = mean / prev;
                let significant = self.block_sum > self.tol;
                let bump = |streak: &mut u32, hit: bool| *streak = if significant && hit { *streak + 1 } else { 0 };
                bump(&mut self.nondecay_streak, ratio >= NONDECAY_RATIO);
                bump(&mut self.slow_streak, ratio >= 2f64.powf(-(1.0 + POWER_LAW_MARGIN)));
            }
        }
        self.prev_mean = Some(mean);
        self.block_sum = 0.0;
        self.block_start = self.block_end;
        self.block_end *= 2;
    }

    /// Magnitudes have stopped shrinking.
    pub(crate) fn not_decaying(&self) -> bool {
        self.nondecay_streak >= BLOCKS_REQUIRED
    }

    /// Magnitudes shrink no faster than `n^-(1 + margin)`.
    pub(crate) fn slower_than_summable(&self) -> bool {
        self.slow_streak >= BLOCKS_REQUIRED
    }
}

/// Watches increments of partial sums over dyadic blocks,
/// `S(2^k) - S(2^(k-1))`. They tend to zero for a convergent series (Cauchy
/// criterion at dyadic scale) and stay put for `sum 1/n`.
#[derive(Clone, Debug)]
pub(crate) struct BlockSumMonitor {
    tol: f64,
    n: u64,
    block_end: u64,
    last_checkpoint: Complex,
    prev_increment: Option<f64>,
    streak: u32,
}

impl BlockSumMonitor {
    pub(crate) fn new(tol: f64) -> Self {
        BlockSumMonitor {
            tol,
            n: 0,
            block_end: 1,
            last_checkpoint: Complex::new(0.0, 0.0),
            prev_increment: None,
            streak: 0,
        }
    }

    pub(crate) fn push(&mut self, partial_sum: Complex) {
        self.n += 1;
        if self.n < self.block_end {
            return;
        }
        let increment = (partial_sum - self.last_checkpoint).norm();
        if let Some(prev) = self.prev_increment {
            if self.n >= FIRST_JUDGED_BLOCK_END {
                let stalled = increment > self.tol && increment >= NONDECAY_RATIO * prev;
                self.streak = if stalled { self.streak + 1 } else { 0 };
            }
        }
        self.prev_increment = Some(increment);
        self.last_checkpoint = partial_sum;
        self.block_end *= 2;
    }

    pub(crate) fn not_settling(&self) -> bool {
        self.streak >= BLOCKS_REQUIRED
    }
}

/// Running analysis of one complex series.
#[derive(Clone, Debug)]
pub(crate) struct ComplexTracker {
    tol: f64,
    sum: Complex,
    sums: Window<Complex>,
    last_term: f64,
    decay: DecayMonitor,
    blocks: BlockSumMonitor,
    overflow: bool,
}

impl ComplexTracker {
    pub(crate) fn new(cfg: &AnalysisConfig) -> Self {
        ComplexTracker {
            tol: cfg.tol,
            sum: Complex::new(0.0, 0.0),
            sums: Window::new(cfg.window),
            last_term: f64::INFINITY,
            decay: DecayMonitor::new(cfg.tol),
            blocks: BlockSumMonitor::new(cfg.tol),
            overflow: false,
        }
    }

    pub(crate) fn push(&mut self, term: Complex) {
        self.sum += term;
        self.sums.push(self.sum);
        self.last_term = term.norm();
        self.decay.push(self.last_term);
        self.blocks.push(self.sum);
        if self.sum.norm().is_nan() || self.sum.norm() > OVERFLOW_GUARD {
            self.overflow = true;
        }
    }

    pub(crate) fn spread(&self) -> f64 {
        self.sums.spread(|a, b| (a - b).norm())
    }

    pub(crate) fn verdict(&self) -> Verdict {
        if self.overflow || self.decay.not_decaying() || self.blocks.not_settling() {
            Verdict::Diverged
        } else if self.sums.is_full() && self.last_term < self.tol && self.spread() < self.tol {
            Verdict::Converged
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Running analysis of a series of non-negative reals.
#[derive(Clone, Debug)]
pub(crate) struct NonNegativeTracker {
    tol: f64,
    sum: f64,
    sums: Window<f64>,
    decay: DecayMonitor,
}

impl NonNegativeTracker {
    pub(crate) fn new(tol: f64, window: usize) -> Self {
        NonNegativeTracker {
            tol,
            sum: 0.0,
            sums: Window::new(window),
            decay: DecayMonitor::new(tol),
        }
    }

    pub(crate) fn push(&mut self, term: f64) {
        self.sum += term;
        self.sums.push(self.sum);
        self.decay.push(term);
    }

    pub(crate) fn sum(&self) -> f64 {
        self.sum
    }

    /// Partial sums are non-decreasing, so the spread is last minus first.
    pub(crate) fn spread(&self) -> f64 {
        match (self.sums.iter().next(), self.sums.iter().last()) {
            (Some(a), Some(b)) => b - a,
            _ => f64::INFINITY,
        }
    }

    pub(crate) fn verdict(&self) -> Verdict {
        if self.sum.is_nan() || self.sum > OVERFLOW_GUARD || self.decay.not_decaying() || self.decay.slower_than_summable() {
            Verdict::Diverged
        } else if self.sums.is_full() && self.spread() < self.tol {
            Verdict::Converged
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Result of [`analyze_series`] and [`eval_power_series`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub verdict: Verdict,
    /// Last partial sum.
    pub limit_estimate: Bicomplex,
    pub terms_used: u64,
    /// Largest idempotent-component spread over the final window.
    pub tail_delta: f64,
    /// Absolute convergence established: `sum ||c_n||` converged, and with
    /// it the series itself.
    pub absolute: bool,
    /// Verdict for `sum ||c_n||`.
    pub absolute_verdict: Verdict,
    /// Verdicts for the `e1` and `e2` component series.
    pub component_verdicts: [Verdict; 2],
}

/// Running sums `S_k = c_1 + ... + c_(k+1)` of the first `n_max` terms.
pub fn partial_sums(terms: impl IntoIterator<Item = Bicomplex>, n_max: usize) -> Result<Vec<Bicomplex>> {
    if n_max < 1 {
        return Err(Error::InvalidConfig("n_max must be at least 1".into()));
    }
    let mut acc = Bicomplex::ZERO;
    let mut out = Vec::with_capacity(n_max.min(1 << 20));
    for (i, c) in terms.into_iter().take(n_max).enumerate() {
        let index = i as u64 + 1;
        if !c.is_finite() {
            return Err(Error::NonFiniteTerm { index });
        }
        acc = acc.checked_add(c).map_err(|_| Error::NonFinitePartial { index })?;
        out.push(acc);
    }
    Ok(out)
}

/// Convergence verdict for `sum c_n`, consuming at most `max_terms` terms.
///
/// Terms are pulled lazily. The analysis stops once both the series verdict
/// and the absolute verdict are resolved, or the budget runs out. The
/// absolute series is judged at `tol / sqrt(2)`: since
/// `|c'|, |c''| <= sqrt(2) ||c||`, an absolutely converged window is also a
/// converged window for both components.
pub fn analyze_series(terms: impl IntoIterator<Item = Bicomplex>, cfg: AnalysisConfig) -> Result<SeriesReport> {
    cfg.validate()?;
    let mut comps = [ComplexTracker::new(&cfg), ComplexTracker::new(&cfg)];
    let mut abs = NonNegativeTracker::new(cfg.tol / std::f64::consts::SQRT_2, cfg.window);
    let mut used = 0u64;
    let (mut verdicts, mut abs_verdict) = ([Verdict::Inconclusive; 2], Verdict::Inconclusive);
    for c in terms.into_iter().take(cfg.max_terms as usize) {
        used += 1;
        if !c.is_finite() {
            return Err(Error::NonFiniteTerm { index: used });
        }
        let p = c.to_idempotent();
        comps[0].push(p.p1);
        comps[1].push(p.p2);
        abs.push(c.euclid());
        verdicts = [comps[0].verdict(), comps[1].verdict()];
        abs_verdict = abs.verdict();
        let combined = Verdict::all(verdicts);
        if combined == Verdict::Diverged || (combined.is_resolved() && abs_verdict.is_resolved()) {
            break;
        }
    }
    let verdict = Verdict::all(verdicts);
    if verdict == Verdict::Diverged {
        // sum ||c_n|| < inf would force convergence
        abs_verdict = Verdict::Diverged;
    }
    let limit = IdempotentPair::new(comps[0].sum, comps[1].sum).to_bicomplex();
    Ok(SeriesReport {
        verdict,
        limit_estimate: limit,
        terms_used: used,
        tail_delta: comps[0].spread().max(comps[1].spread()),
        absolute: abs_verdict == Verdict::Converged && verdict == Verdict::Converged,
        absolute_verdict: abs_verdict,
        component_verdicts: verdicts,
    })
}

/// Result of [`analyze_complex_series`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSeriesReport {
    pub verdict: Verdict,
    pub limit_estimate: Complex,
    pub terms_used: u64,
    pub tail_delta: f64,
}

/// The same heuristic on a single complex series; stops as soon as its
/// verdict resolves.
pub fn analyze_complex_series(
    terms: impl IntoIterator<Item = Complex>,
    cfg: AnalysisConfig,
) -> Result<ComplexSeriesReport> {
    cfg.validate()?;
    let mut t = ComplexTracker::new(&cfg);
    let mut used = 0u64;
    let mut verdict = Verdict::Inconclusive;
    for c in terms.into_iter().take(cfg.max_terms as usize) {
        used += 1;
        if !c.is_finite() {
            return Err(Error::NonFiniteTerm { index: used });
        }
        t.push(c);
        verdict = t.verdict();
        if verdict.is_resolved() {
            break;
        }
    }
    Ok(ComplexSeriesReport {
        verdict,
        limit_estimate: t.sum,
        terms_used: used,
        tail_delta: t.spread(),
    })
}

/// Result of [`analyze_nonnegative`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonNegativeReport {
    pub verdict: Verdict,
    pub sum: f64,
    pub terms_used: u64,
    pub tail_delta: f64,
}

/// Verdict for a series of non-negative reals such as `sum ||c_n||`.
pub fn analyze_nonnegative(terms: impl IntoIterator<Item = f64>, cfg: AnalysisConfig) -> Result<NonNegativeReport> {
    cfg.validate()?;
    let mut t = NonNegativeTracker::new(cfg.tol, cfg.window);
    let mut used = 0u64;
    let mut verdict = Verdict::Inconclusive;
    for a in terms.into_iter().take(cfg.max_terms as usize) {
        used += 1;
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::NonFiniteTerm { index: used });
        }
        t.push(a);
        verdict = t.verdict();
        if verdict.is_resolved() {
            break;
        }
    }
    Ok(NonNegativeReport {
        verdict,
        sum: t.sum(),
        terms_used: used,
        tail_delta: t.spread(),
    })
}

/// Analyzes `sum_{n>=0} c_n w^n` through `c_n w^n = c'_n w'^n e1 + c''_n w''^n e2`.
pub fn eval_power_series(
    coeffs: impl IntoIterator<Item = Bicomplex>,
    w: Bicomplex,
    cfg: AnalysisConfig,
) -> Result<SeriesReport> {
    let wp = w.finite_or("power series argument")?.to_idempotent();
    let mut power = IdempotentPair::new(Complex::new(1.0, 0.0), Complex::new(1.0, 0.0));
    let terms = coeffs.into_iter().map(move |c| {
        let term = c.to_idempotent().zip_with(power, |a, b| a * b);
        power = power.zip_with(wp, |a, b| a * b);
        term.to_bicomplex()
    });
    analyze_series(terms, cfg)
}
