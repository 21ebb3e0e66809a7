//! The bicomplex ring `T = { z1 + i2 z2 : z1, z2 in C(i1) }`.
//!
//! Units obey `i1^2 = i2^2 = -1`, `j = i1 i2 = i2 i1`, `j^2 = 1`. Values are
//! stored as the pair `(z1, z2)`; the idempotent form
//! `w = P1(w) e1 + P2(w) e2` with `e1 = (1 + j)/2`, `e2 = (1 - j)/2` is
//! computed on demand and turns every ring operation into two independent
//! complex operations.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `C(i1)`; `im` is the coefficient of `i1`.
pub type Complex = Complex64;

/// Default relative tolerance for null-cone membership.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-12;

#[inline]
fn mul_i(z: Complex) -> Complex {
    Complex::new(-z.im, z.re)
}

/// A bicomplex number `z1 + i2 z2`.
///
/// Equality is exact and componentwise; use [`Bicomplex::approx_eq`] for
/// tolerance-based comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "FourReals", from = "FourReals")]
pub struct Bicomplex {
    pub z1: Complex,
    pub z2: Complex,
}

/// Serialized shape of a [`Bicomplex`]: `x1 + x2 i1 + x3 i2 + x4 j`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct FourReals {
    x1: f64,
    x2: f64,
    x3: f64,
    x4: f64,
}

impl From<Bicomplex> for FourReals {
    fn from(w: Bicomplex) -> Self {
        let [x1, x2, x3, x4] = w.to_four_reals();
        FourReals { x1, x2, x3, x4 }
    }
}

impl From<FourReals> for Bicomplex {
    fn from(f: FourReals) -> Self {
        Bicomplex::from_four_reals(f.x1, f.x2, f.x3, f.x4)
    }
}

/// The three bicomplex conjugations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugation {
    /// `conj(z1) + i2 conj(z2)`
    Dag1,
    /// `z1 - i2 z2`
    Dag2,
    /// `conj(z1) - i2 conj(z2)`
    Dag3,
}

impl Conjugation {
    pub const ALL: [Conjugation; 3] = [Conjugation::Dag1, Conjugation::Dag2, Conjugation::Dag3];
}

/// Coefficients `(p1, p2)` of `e1` and `e2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdempotentPair {
    pub p1: Complex,
    pub p2: Complex,
}

impl IdempotentPair {
    pub const fn new(p1: Complex, p2: Complex) -> Self {
        IdempotentPair { p1, p2 }
    }

    /// `p1 e1 + p2 e2` back in the `z1 + i2 z2` basis.
    pub fn to_bicomplex(self) -> Bicomplex {
        Bicomplex::from_idempotent(self)
    }

    pub fn map(self, mut f: impl FnMut(Complex) -> Complex) -> Self {
        IdempotentPair {
            p1: f(self.p1),
            p2: f(self.p2),
        }
    }

    pub fn zip_with(self, other: Self, mut f: impl FnMut(Complex, Complex) -> Complex) -> Self {
        IdempotentPair {
            p1: f(self.p1, other.p1),
            p2: f(self.p2, other.p2),
        }
    }

    /// Euclidean norm of the represented bicomplex number; uses
    /// `2 ||w||^2 = |p1|^2 + |p2|^2`.
    pub fn euclid(self) -> f64 {
        (0.5 * (self.p1.norm_sqr() + self.p2.norm_sqr())).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.p1.is_finite() && self.p2.is_finite()
    }
}

/// Hyperbolic (duplex) number `x + j y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Duplex {
    pub x: f64,
    pub y: f64,
}

impl Duplex {
    pub const fn new(x: f64, y: f64) -> Self {
        Duplex { x, y }
    }

    /// Embeds as `z1 = x`, `z2 = i1 y`.
    pub fn to_bicomplex(self) -> Bicomplex {
        Bicomplex::new(Complex::new(self.x, 0.0), Complex::new(0.0, self.y))
    }
}

impl From<Duplex> for Bicomplex {
    fn from(d: Duplex) -> Self {
        d.to_bicomplex()
    }
}

/// An element `re + i2 im` of `C(i2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexI2 {
    pub re: f64,
    pub im: f64,
}

/// The three squared moduli and the Euclidean norm of a bicomplex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moduli {
    /// `|w|_{i1}^2 = w w^{dag2}`, equal to `CN(w)`.
    pub mod_i1_sq: Complex,
    /// `|w|_{i2}^2 = w w^{dag1}`.
    pub mod_i2_sq: ComplexI2,
    /// `|w|_j^2 = w w^{dag3}`.
    pub mod_j_sq: Duplex,
    /// `sqrt(|z1|^2 + |z2|^2)`.
    pub euclid: f64,
}

/// Outcome of a null-cone membership test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityVerdict {
    pub is_singular: bool,
    /// `|CN(w)|`
    pub cn_magnitude: f64,
    /// `tol * max(1, ||w||^2)`, the threshold `cn_magnitude` was held against.
    pub tolerance_used: f64,
    /// `min(|P1(w)|, |P2(w)|)`
    pub min_component: f64,
    /// `max(|P1(w)|, |P2(w)|)`
    pub max_component: f64,
}

impl SingularityVerdict {
    /// The same test phrased on idempotent components:
    /// `min(|P1|, |P2|) <= tolerance_used / max(|P1|, |P2|)`.
    pub fn componentwise_singular(&self) -> bool {
        if self.max_component == 0.0 {
            return true;
        }
        self.min_component <= self.tolerance_used / self.max_component
    }
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::new(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
    pub const I1: Bicomplex = Bicomplex::new(Complex::new(0.0, 1.0), Complex::new(0.0, 0.0));
    pub const I2: Bicomplex = Bicomplex::new(Complex::new(0.0, 0.0), Complex::new(1.0, 0.0));
    pub const J: Bicomplex = Bicomplex::new(Complex::new(0.0, 0.0), Complex::new(0.0, 1.0));
    /// `(1 + j) / 2`
    pub const E1: Bicomplex = Bicomplex::new(Complex::new(0.5, 0.0), Complex::new(0.0, 0.5));
    /// `(1 - j) / 2`
    pub const E2: Bicomplex = Bicomplex::new(Complex::new(0.5, 0.0), Complex::new(0.0, -0.5));

    pub const fn new(z1: Complex, z2: Complex) -> Self {
        Bicomplex { z1, z2 }
    }

    pub const fn from_real(x: f64) -> Self {
        Bicomplex::new(Complex::new(x, 0.0), Complex::new(0.0, 0.0))
    }

    /// Embeds `z` in `C(i1)`.
    pub const fn from_complex(z: Complex) -> Self {
        Bicomplex::new(z, Complex::new(0.0, 0.0))
    }

    /// `x1 + x2 i1 + x3 i2 + x4 j`, i.e. `z1 = x1 + i1 x2`, `z2 = x3 + i1 x4`.
    pub const fn from_four_reals(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Bicomplex::new(Complex::new(x1, x2), Complex::new(x3, x4))
    }

    pub const fn to_four_reals(self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    pub fn is_finite(self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    /// Passes `self` through, or reports which operation went non-finite.
    pub fn finite_or(self, op: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { op })
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        (self + rhs).finite_or("add")
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        (self - rhs).finite_or("sub")
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        (self * rhs).finite_or("mul")
    }

    pub fn scale(self, k: f64) -> Self {
        Bicomplex::new(self.z1 * k, self.z2 * k)
    }

    pub fn conj(self, kind: Conjugation) -> Self {
        match kind {
            Conjugation::Dag1 => Bicomplex::new(self.z1.conj(), self.z2.conj()),
            Conjugation::Dag2 => Bicomplex::new(self.z1, -self.z2),
            Conjugation::Dag3 => Bicomplex::new(self.z1.conj(), -self.z2.conj()),
        }
    }

    /// Complex square norm `CN(w) = z1^2 + z2^2`.
    pub fn cn(self) -> Complex {
        self.z1 * self.z1 + self.z2 * self.z2
    }

    /// `P1(w) = z1 - i1 z2`
    pub fn p1(self) -> Complex {
        self.z1 - mul_i(self.z2)
    }

    /// `P2(w) = z1 + i1 z2`
    pub fn p2(self) -> Complex {
        self.z1 + mul_i(self.z2)
    }

    pub fn to_idempotent(self) -> IdempotentPair {
        IdempotentPair::new(self.p1(), self.p2())
    }

    /// `z1 = (p1 + p2)/2`, `z2 = i1 (p1 - p2)/2`.
    pub fn from_idempotent(p: IdempotentPair) -> Self {
        let z1 = (p.p1 + p.p2) * 0.5;
        let z2 = mul_i(p.p1 - p.p2) * 0.5;
        Bicomplex::new(z1, z2)
    }

    /// `||w||^2 = |z1|^2 + |z2|^2`
    pub fn norm_sqr(self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    /// Euclidean R^4 norm.
    pub fn euclid(self) -> f64 {
        let [a, b, c, d] = self.to_four_reals();
        a.hypot(b).hypot(c.hypot(d))
    }

    pub fn norms(self) -> Moduli {
        let i1 = self * self.conj(Conjugation::Dag2);
        let i2 = self * self.conj(Conjugation::Dag1);
        let jj = self * self.conj(Conjugation::Dag3);
        Moduli {
            // w w^{dag2} = z1^2 + z2^2 + i2 0
            mod_i1_sq: i1.z1,
            // w w^{dag1} has real z1 and real z2
            mod_i2_sq: ComplexI2 {
                re: i2.z1.re,
                im: i2.z2.re,
            },
            // w w^{dag3} has real z1 and purely i1-imaginary z2
            mod_j_sq: Duplex::new(jj.z1.re, jj.z2.im),
            euclid: self.euclid(),
        }
    }

    /// Null-cone test at the default tolerance.
    pub fn is_singular(self) -> bool {
        self.singularity(DEFAULT_SINGULAR_TOL).is_singular
    }

    /// `|CN(w)| <= tol * max(1, ||w||^2)`: relative for large `w`, absolute
    /// near zero, so verdicts are stable under scaling.
    pub fn singularity(self, tol: f64) -> SingularityVerdict {
        let cn_magnitude = self.cn().norm();
        let tolerance_used = tol * self.norm_sqr().max(1.0);
        let (a, b) = (self.p1().norm(), self.p2().norm());
        SingularityVerdict {
            is_singular: cn_magnitude <= tolerance_used,
            cn_magnitude,
            tolerance_used,
            min_component: a.min(b),
            max_component: a.max(b),
        }
    }

    /// `w^{-1} = w^{dag2} / CN(w)`.
    pub fn inverse(self) -> Result<Self> {
        self.inverse_with_tol(DEFAULT_SINGULAR_TOL)
    }

    pub fn inverse_with_tol(self, tol: f64) -> Result<Self> {
        let verdict = self.singularity(tol);
        if verdict.is_singular {
            return Err(Error::SingularOperand {
                cn_magnitude: verdict.cn_magnitude,
                tolerance: verdict.tolerance_used,
            });
        }
        let cn = self.cn();
        Bicomplex::new(self.z1 / cn, -self.z2 / cn).finite_or("inverse")
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        self.checked_mul(rhs.inverse()?)
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// [`Bicomplex::inverse`].
    pub fn powi(self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self };
        let mut e = k.unsigned_abs();
        let mut base = base;
        let mut acc = Bicomplex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc.finite_or("powi")
    }

    /// `||self - other|| <= rel_tol * max(1, ||self||, ||other||)`.
    pub fn approx_eq(self, other: Self, rel_tol: f64) -> bool {
        let scale = self.euclid().max(other.euclid()).max(1.0);
        (self - other).euclid() <= rel_tol * scale
    }

    /// Projects back onto the duplex subring, if `self` lies in it.
    pub fn to_duplex(self) -> Option<Duplex> {
        (self.z1.im == 0.0 && self.z2.re == 0.0).then(|| Duplex::new(self.z1.re, self.z2.im))
    }
}

impl From<f64> for Bicomplex {
    fn from(x: f64) -> Self {
        Bicomplex::from_real(x)
    }
}

impl From<Complex> for Bicomplex {
    fn from(z: Complex) -> Self {
        Bicomplex::from_complex(z)
    }
}

impl From<IdempotentPair> for Bicomplex {
    fn from(p: IdempotentPair) -> Self {
        Bicomplex::from_idempotent(p)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    // (a1 + i2 a2)(b1 + i2 b2) = (a1 b1 - a2 b2) + i2 (a1 b2 + a2 b1)
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(
            self.z1 * rhs.z1 - self.z2 * rhs.z2,
            self.z1 * rhs.z2 + self.z2 * rhs.z1,
        )
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, k: f64) -> Bicomplex {
        self.scale(k)
    }
}

impl Div<f64> for Bicomplex {
    type Output = Bicomplex;
    fn div(self, k: f64) -> Bicomplex {
        Bicomplex::new(self.z1 / k, self.z2 / k)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.z1, -self.z2)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Bicomplex) {
        *self = *self + rhs;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, rhs: Bicomplex) {
        *self = *self - rhs;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, rhs: Bicomplex) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Self {
        iter.fold(Bicomplex::ZERO, Add::add)
    }
}

impl std::iter::Product for Bicomplex {
    fn product<I: Iterator<Item = Bicomplex>>(iter: I) -> Self {
        iter.fold(Bicomplex::ONE, Mul::mul)
    }
}
