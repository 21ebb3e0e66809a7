//! Trigonometric form, exponential and the multi-branch logarithm.
//!
//! Everything is computed on the idempotent components: `exp` and `Log` act
//! on `w = w' e1 + w'' e2` as `f(w') e1 + f(w'') e2`. The `e^{z1}(cos z2 +
//! i2 sin z2)` form and the `Log|w|_{i1} + i2 Arg_{i1} w` form are exposed as
//! cross-checks ([`exp_euler`], [`log_direct`]), not as the primary route.
//!
//! Period lattice. `exp(w) = exp(w + d)` exactly when
//! `d = 2 pi i1 (k1 e1 + k2 e2)` for integers `k1, k2`. The branch shifts
//! `2 pi (m i1 + n i2)` form the index-2 sublattice `k1 + k2` even; the odd
//! cosets (for instance `pi (i1 + i2) = 2 pi i1 e2`) are periods too, so the
//! principal logarithm of `exp(w)` can differ from `w` by a half-step in the
//! `(m, n)` coordinates. [`LatticeCoordinates`] reports both views.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Complex, IdempotentPair, DEFAULT_SINGULAR_TOL};
use crate::error::{Error, Result};

/// Principal complex log with `Im` in `(-pi, pi]`. A negative-zero imaginary
/// part is read as `+0` so the negative real axis maps to `+pi`.
pub fn principal_ln(z: Complex) -> Complex {
    let z = canonical_zero(z);
    Complex::new(z.norm().ln(), z.im.atan2(z.re))
}

/// Principal complex square root: `Re > 0`, or `Re = 0` and `Im >= 0`.
pub fn principal_sqrt(z: Complex) -> Complex {
    canonical_zero(z).sqrt()
}

#[inline]
fn canonical_zero(z: Complex) -> Complex {
    if z.im == 0.0 {
        Complex::new(z.re, 0.0)
    } else {
        z
    }
}

fn nonsingular(w: Bicomplex) -> Result<()> {
    let v = w.singularity(DEFAULT_SINGULAR_TOL);
    if v.is_singular {
        Err(Error::SingularOperand {
            cn_magnitude: v.cn_magnitude,
            tolerance: v.tolerance_used,
        })
    } else {
        Ok(())
    }
}

/// Bicomplex exponential, `exp(w') e1 + exp(w'') e2`.
pub fn exp(w: Bicomplex) -> Result<Bicomplex> {
    let w = w.finite_or("exp argument")?;
    w.to_idempotent().map(Complex::exp).to_bicomplex().finite_or("exp")
}

/// `e^{z1} (cos z2 + i2 sin z2)` with complex `cos`/`sin` on `C(i1)`.
pub fn exp_euler(w: Bicomplex) -> Bicomplex {
    let r = w.z1.exp();
    Bicomplex::new(r * w.z2.cos(), r * w.z2.sin())
}

/// `r_c (cos Theta_c0 + i2 sin Theta_c0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigForm {
    /// Complex modulus `|w|_{i1} = sqrt(P1(w) P2(w))`, principal root.
    pub r_c: Complex,
    /// Principal complex argument, `Re` in `(-pi, pi]`.
    pub theta_c0: Complex,
}

impl TrigForm {
    /// The `m`-th branch of the complex argument, `Theta_c0 + 2 pi m`.
    pub fn argument_branch(&self, m: i64) -> Complex {
        self.theta_c0 + 2.0 * PI * m as f64
    }

    /// `r_c (cos Theta + i2 sin Theta)` with complex `cos`/`sin`.
    pub fn reconstruct(&self) -> Bicomplex {
        Bicomplex::new(self.r_c * self.theta_c0.cos(), self.r_c * self.theta_c0.sin())
    }
}

/// Trigonometric representation of a nonsingular `w`.
///
/// With `r_c` fixed as the principal root, `Theta` is pinned by
/// `e^{i1 Theta} = P2(w) / r_c`, so `Theta = -i1 Log(P2(w) / r_c)`. This
/// agrees with `i1 log sqrt(P1/P2)` up to the sign ambiguity of the square
/// root (a shift of `pi`).
pub fn trig_form(w: Bicomplex) -> Result<TrigForm> {
    nonsingular(w)?;
    let p = w.to_idempotent();
    let r_c = principal_sqrt(p.p1 * p.p2);
    let l = principal_ln(p.p2 / r_c);
    let theta_c0 = Complex::new(l.im, -l.re);
    Ok(TrigForm { r_c, theta_c0 })
}

/// Index `(m, n)` of the logarithm branch shifted by `2 pi (m i1 + n i2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchIndex {
    pub m: i64,
    pub n: i64,
}

impl BranchIndex {
    pub const PRINCIPAL: BranchIndex = BranchIndex { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        BranchIndex { m, n }
    }

    /// `2 pi (m i1 + n i2)`
    pub fn shift(self) -> Bicomplex {
        Bicomplex::from_four_reals(0.0, 2.0 * PI * self.m as f64, 2.0 * PI * self.n as f64, 0.0)
    }
}

/// Principal bicomplex logarithm `Log(w') e1 + Log(w'') e2`.
pub fn log_principal(w: Bicomplex) -> Result<Bicomplex> {
    nonsingular(w)?;
    w.to_idempotent().map(principal_ln).to_bicomplex().finite_or("log")
}

/// `Log w + 2 pi (m i1 + n i2)`.
pub fn log_branch(w: Bicomplex, b: BranchIndex) -> Result<Bicomplex> {
    Ok(log_principal(w)? + b.shift())
}

/// `log|r_c| + i1 Arg r_c + i2 Theta_c0`, assembled from the trigonometric
/// form.
///
/// Agrees with [`log_principal`] modulo the period lattice. Exact agreement
/// fails whenever the components `Arg(r_c) -/+ Re Theta_c0` of the direct
/// form leave `(-pi, pi]`; see [`direct_log_agrees`].
pub fn log_direct(w: Bicomplex) -> Result<Bicomplex> {
    let t = trig_form(w)?;
    let lr = principal_ln(t.r_c);
    Ok(Bicomplex::new(lr, t.theta_c0))
}

/// Whether [`log_direct`] reproduces [`log_principal`] exactly (as opposed
/// to differing by a lattice period): both imaginary parts of the direct
/// form's idempotent components must lie in `(-pi, pi]`.
pub fn direct_log_agrees(w: Bicomplex) -> Result<bool> {
    let p = log_direct(w)?.to_idempotent();
    let inside = |z: Complex| z.im > -PI && z.im <= PI;
    Ok(inside(p.p1) && inside(p.p2))
}

/// Coordinates of a lattice offset `d` in the period basis: `d` is a period
/// when `k1`, `k2` are integers and the residual vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCoordinates {
    /// `Im P1(d) / 2 pi`
    pub k1: f64,
    /// `Im P2(d) / 2 pi`
    pub k2: f64,
    /// `sqrt(Re P1(d)^2 + Re P2(d)^2)`, zero for a true period.
    pub residual: f64,
}

impl LatticeCoordinates {
    pub fn of(d: Bicomplex) -> Self {
        let p = d.to_idempotent();
        LatticeCoordinates {
            k1: p.p1.im / (2.0 * PI),
            k2: p.p2.im / (2.0 * PI),
            residual: p.p1.re.hypot(p.p2.re),
        }
    }

    pub fn nearest(&self) -> (i64, i64) {
        (self.k1.round() as i64, self.k2.round() as i64)
    }

    /// Largest distance of `k1`, `k2` from their nearest integers.
    pub fn integrality_defect(&self) -> f64 {
        (self.k1 - self.k1.round()).abs().max((self.k2 - self.k2.round()).abs())
    }

    /// The `(m, n)` branch with `2 pi (m i1 + n i2) = d`, when the nearest
    /// lattice point lies on that sublattice (`k1 + k2` even).
    pub fn branch_index(&self) -> Option<BranchIndex> {
        let (k1, k2) = self.nearest();
        ((k1 + k2) % 2 == 0).then(|| BranchIndex::new((k1 + k2) / 2, (k2 - k1) / 2))
    }
}

/// Series route is used below this norm.
pub const LOG1P_SERIES_RADIUS: f64 = 0.25;
const LOG1P_MAX_TERMS: u32 = 64;
const LOG1P_REL_CUTOFF: f64 = 1e-17;

/// `Log(1 + w)`.
///
/// For `||w|| < 0.25` sums `w - w^2/2 + w^3/3 - ...` in bicomplex
/// arithmetic (accurate near 0); otherwise evaluates `log_principal(1 + w)`.
/// Both routes give the principal branch: `||w|| < 0.25` keeps each
/// idempotent component inside the unit disc.
pub fn log1p(w: Bicomplex) -> Result<Bicomplex> {
    let w = w.finite_or("log1p argument")?;
    if w.euclid() < LOG1P_SERIES_RADIUS {
        Ok(log1p_series(w))
    } else {
        log_principal(Bicomplex::ONE + w)
    }
}

/// The alternating power series for `Log(1 + w)`, from `n = 1`, truncated
/// once a term falls below `1e-17` of the running sum or after 64 terms.
pub fn log1p_series(w: Bicomplex) -> Bicomplex {
    let mut acc = Bicomplex::ZERO;
    let mut power = w;
    for n in 1..=LOG1P_MAX_TERMS {
        let term = power / n as f64;
        if n % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
        if term.euclid() < LOG1P_REL_CUTOFF * acc.euclid() {
            break;
        }
        power *= w;
    }
    acc
}

/// Principal bicomplex square root, componentwise.
pub fn sqrt(w: Bicomplex) -> Result<Bicomplex> {
    nonsingular(w)?;
    w.to_idempotent().map(principal_sqrt).to_bicomplex().finite_or("sqrt")
}

/// Idempotent components of `Log w`, without reassembly.
pub(crate) fn log_components(p: IdempotentPair) -> IdempotentPair {
    p.map(principal_ln)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp(Bicomplex::ZERO).unwrap(), Bicomplex::ONE);
        let m1 = exp(Bicomplex::I2.scale(PI)).unwrap();
        assert!((m1 + Bicomplex::ONE).euclid() < 1e-15, "{m1:?}");
        let w = Bicomplex::from_four_reals(0.3, -0.7, 1.1, 0.2);
        let shifted = w + BranchIndex::new(1, -2).shift();
        assert!(exp(shifted).unwrap().approx_eq(exp(w).unwrap(), 1e-13));
    }

    #[test]
    fn exp_matches_euler_form() {
        let w = Bicomplex::from_four_reals(0.4, 1.3, -0.8, 0.6);
        assert!(exp(w).unwrap().approx_eq(exp_euler(w), 1e-14));
    }

    #[test]
    fn exp_overflow_is_an_error() {
        assert!(matches!(exp(Bicomplex::from_real(800.0)), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn half_lattice_is_a_period() {
        // pi (i1 + i2) is not of the form 2 pi (m i1 + n i2) but exp of it is 1
        let d = (Bicomplex::I1 + Bicomplex::I2).scale(PI);
        assert!(exp(d).unwrap().approx_eq(Bicomplex::ONE, 1e-15));
        let k = LatticeCoordinates::of(d);
        assert_eq!(k.nearest(), (0, 1));
        assert_eq!(k.branch_index(), None);
        let k = LatticeCoordinates::of(BranchIndex::new(3, -1).shift());
        assert_eq!(k.branch_index(), Some(BranchIndex::new(3, -1)));
    }

    #[test]
    fn trig_form_examples() {
        let t = trig_form(Bicomplex::ONE).unwrap();
        assert_eq!((t.r_c, t.theta_c0), (c(1.0, 0.0), c(0.0, 0.0)));

        // cos T = 0, sin T = 1 -> T = pi/2
        let t = trig_form(Bicomplex::I2).unwrap();
        assert!((t.r_c * t.r_c - c(1.0, 0.0)).norm() < 1e-15);
        assert!((t.theta_c0 - c(PI / 2.0, 0.0)).norm() < 1e-15);
        assert!((t.theta_c0.cos()).norm() < 1e-15 && (t.theta_c0.sin() - 1.0).norm() < 1e-15);

        let w = exp(Bicomplex::I2.scale(0.3)).unwrap().scale(2.0);
        let t = trig_form(w).unwrap();
        assert!((t.r_c - c(2.0, 0.0)).norm() < 1e-15);
        assert!((t.theta_c0 - c(0.3, 0.0)).norm() < 1e-15);
        assert!(t.reconstruct().approx_eq(w, 1e-14));
        assert_eq!(t.argument_branch(-1), t.theta_c0 - 2.0 * PI);
    }

    #[test]
    fn trig_form_agrees_with_ratio_formula_mod_pi() {
        let w = Bicomplex::from_four_reals(-0.6, 1.2, 0.9, -0.3);
        let t = trig_form(w).unwrap();
        let p = w.to_idempotent();
        let ratio = c(0.0, 1.0) * principal_ln(principal_sqrt(p.p1 / p.p2));
        let diff = (t.theta_c0 - ratio) / PI;
        assert!(diff.im.abs() < 1e-12 && (diff.re - diff.re.round()).abs() < 1e-12);
        assert!(trig_form(Bicomplex::E1).is_err());
    }

    #[test]
    fn log_examples() {
        assert_eq!(log_principal(Bicomplex::ONE).unwrap(), Bicomplex::ZERO);
        // j = e1 - e2, Log(-1) = i1 pi
        let l = log_principal(Bicomplex::J).unwrap();
        let expect = Bicomplex::E2 * Bicomplex::I1.scale(PI);
        assert!(l.approx_eq(expect, 1e-15), "{l:?}");
        let u = Bicomplex::from_four_reals(0.2, 0.1, 0.3, 0.0);
        assert!(log_principal(exp(u).unwrap()).unwrap().approx_eq(u, 1e-15));
        assert!(log_principal(Bicomplex::E1).is_err());
    }

    #[test]
    fn log_branch_examples() {
        assert_eq!(log_branch(Bicomplex::ONE, BranchIndex::PRINCIPAL).unwrap(), Bicomplex::ZERO);
        assert_eq!(
            log_branch(Bicomplex::ONE, BranchIndex::new(1, 0)).unwrap(),
            Bicomplex::I1.scale(2.0 * PI)
        );
        let w = Bicomplex::from_four_reals(-1.5, 0.25, 0.75, 2.0);
        let back = exp(log_branch(w, BranchIndex::new(3, -1)).unwrap()).unwrap();
        assert!(back.approx_eq(w, 1e-13));
    }

    #[test]
    fn negative_real_axis_is_upper_side() {
        assert_eq!(principal_ln(c(-1.0, -0.0)).im, PI);
        assert_eq!(principal_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
    }

    #[test]
    fn direct_log_matches_inside_principal_region() {
        let w = exp(Bicomplex::from_four_reals(0.2, 0.3, -0.4, 0.1)).unwrap();
        assert!(direct_log_agrees(w).unwrap());
        assert!(log_direct(w).unwrap().approx_eq(log_principal(w).unwrap(), 1e-14));
        // Arg r_c = 1.5, Theta = -2.5: Arg r_c - Theta = 4 leaves (-pi, pi]
        let w = IdempotentPair::new(c(0.0, 4.0).exp(), c(0.0, -1.0).exp()).to_bicomplex();
        assert!(!direct_log_agrees(w).unwrap());
        let d = log_direct(w).unwrap() - log_principal(w).unwrap();
        let k = LatticeCoordinates::of(d);
        assert!(k.integrality_defect() < 1e-12 && k.residual < 1e-12);
        assert_eq!(k.nearest(), (1, 0));
        assert!(exp(log_direct(w).unwrap()).unwrap().approx_eq(w, 1e-14));
    }

    #[test]
    fn log1p_examples() {
        assert_eq!(log1p(Bicomplex::ZERO).unwrap(), Bicomplex::ZERO);
        let w = Bicomplex::from_real(0.4);
        let l = log1p(w).unwrap();
        assert!((l.z1.re - 1.4f64.ln()).abs() < 1e-15);
        let r = l.euclid() / w.euclid();
        assert!((0.5..=1.5).contains(&r));
        let w = Bicomplex::I2.scale(0.1);
        let series = log1p_series(w);
        let direct = log_principal(Bicomplex::ONE + w).unwrap();
        assert!((series - direct).euclid() < 1e-15);
        assert!(log1p(-Bicomplex::E1).is_err());
    }

    #[test]
    fn log1p_series_stays_accurate_near_zero() {
        let w = Bicomplex::from_four_reals(1e-12, -3e-13, 2e-12, 5e-13);
        let l = log1p(w).unwrap();
        // first-order term dominates; relative error ~ ||w||
        assert!((l - w).euclid() <= 2.0 * w.euclid() * w.euclid());
    }

    #[test]
    fn sqrt_squares_back() {
        let w = Bicomplex::from_four_reals(-2.0, 0.5, 1.0, -0.25);
        let s = sqrt(w).unwrap();
        assert!((s * s).approx_eq(w, 1e-14));
        let p = s.to_idempotent();
        assert!(p.p1.re >= 0.0 && p.p2.re >= 0.0);
        assert!(sqrt(Bicomplex::E2).is_err());
    }

    #[test]
    fn log_components_match_reassembled_log() {
        let w = Bicomplex::from_four_reals(0.9, -0.1, 0.4, 0.2);
        let via = log_components(w.to_idempotent()).to_bicomplex();
        assert_eq!(via, log_principal(w).unwrap());
    }
}
