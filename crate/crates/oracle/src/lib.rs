//! Double-double reference arithmetic for cross-checking the bicomplex
//! library in tests.
//!
//! Nothing here depends on the library under test. Values carry roughly
//! 106 bits of mantissa, which is enough to brute-force 10^6-term partial
//! products and leave the f64 implementation as the only source of visible
//! rounding. Bicomplex products are formed in the `z1 + i2 z2` basis, never
//! through the idempotent components, so the oracle does not share the
//! implementation's route.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step from the f64 root doubles the precision
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }

    pub fn powi(self, k: u32) -> Self {
        let mut base = self;
        let mut acc = Dd::ONE;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        // long division: two correction steps
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Complex number over [`Dd`]; `i` squares to -1.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn new(re: impl Into<Dd>, im: impl Into<Dd>) -> Self {
        DdComplex {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn scale(self, k: Dd) -> Self {
        DdComplex {
            re: self.re * k,
            im: self.im * k,
        }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, rhs: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, rhs: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, rhs: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

/// `z1 + i2 z2` with `z1, z2` over [`DdComplex`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdBicomplex {
    pub z1: DdComplex,
    pub z2: DdComplex,
}

impl DdBicomplex {
    pub const ONE: DdBicomplex = DdBicomplex {
        z1: DdComplex::ONE,
        z2: DdComplex::ZERO,
    };

    /// `x1 + x2 i1 + x3 i2 + x4 j`.
    pub fn from_four(x1: impl Into<Dd>, x2: impl Into<Dd>, x3: impl Into<Dd>, x4: impl Into<Dd>) -> Self {
        DdBicomplex {
            z1: DdComplex::new(x1, x2),
            z2: DdComplex::new(x3, x4),
        }
    }

    pub fn scale(self, k: Dd) -> Self {
        DdBicomplex {
            z1: self.z1.scale(k),
            z2: self.z2.scale(k),
        }
    }

    pub fn to_four(self) -> [f64; 4] {
        [
            self.z1.re.to_f64(),
            self.z1.im.to_f64(),
            self.z2.re.to_f64(),
            self.z2.im.to_f64(),
        ]
    }

    /// Euclidean R^4 norm, rounded to f64.
    pub fn norm(self) -> f64 {
        self.to_four().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Add for DdBicomplex {
    type Output = DdBicomplex;
    fn add(self, rhs: DdBicomplex) -> DdBicomplex {
        DdBicomplex {
            z1: self.z1 + rhs.z1,
            z2: self.z2 + rhs.z2,
        }
    }
}

impl Mul for DdBicomplex {
    type Output = DdBicomplex;
    // (a1 + i2 a2)(b1 + i2 b2) = (a1 b1 - a2 b2) + i2 (a1 b2 + a2 b1)
    fn mul(self, rhs: DdBicomplex) -> DdBicomplex {
        DdBicomplex {
            z1: self.z1 * rhs.z1 - self.z2 * rhs.z2,
            z2: self.z1 * rhs.z2 + self.z2 * rhs.z1,
        }
    }
}

/// Brute-force `prod_{n=1}^{n_max} term(n)` in double-double.
pub fn partial_product(n_max: u64, mut term: impl FnMut(u64) -> DdBicomplex) -> DdBicomplex {
    (1..=n_max).fold(DdBicomplex::ONE, |acc, n| acc * term(n))
}

/// Brute-force `sum_{n=1}^{n_max} term(n)` in double-double.
pub fn partial_sum(n_max: u64, mut term: impl FnMut(u64) -> DdBicomplex) -> DdBicomplex {
    (1..=n_max).fold(DdBicomplex::default(), |acc, n| acc + term(n))
}

/// `1 + c * f` for a bicomplex constant `c` given by four reals and a
/// double-double real factor `f`.
pub fn one_plus_scaled(c: [f64; 4], f: Dd) -> DdBicomplex {
    DdBicomplex::ONE + DdBicomplex::from_four(c[0], c[1], c[2], c[3]).scale(f)
}

/// Infinite-product limits for `1 + c f(n)`, `c = 0.3 + 0.4 i2`, as four
/// reals `x1 + x2 i1 + x3 i2 + x4 j`. Computed at 60 digits by
/// `scripts/product_limits.py` from closed forms (sinh, Gamma, q-Pochhammer)
/// and cross-checked there against accelerated direct products.
#[allow(clippy::excessive_precision)] // digits kept as generated
pub mod limits {
    /// f(n) = 1/n^2
    pub const INV_SQUARE: [f64; 4] = [1.4129585332899061536, 0.0, 0.86023170143099147261, 0.0];
    /// f(n) = 1/n^3
    pub const INV_CUBE: [f64; 4] = [1.3442275429724605347, 0.0, 0.53265392908262875054, 0.0];
    /// f(n) = 2^-n
    pub const GEOMETRIC_HALF: [f64; 4] = [1.270927713006838756, 0.0, 0.48198536372500676298, 0.0];
}
