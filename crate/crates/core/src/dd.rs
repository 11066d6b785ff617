//! Double-double arithmetic for word products and discriminants, where
//! plain `f64` loses most of its digits to cancellation.

use std::ops::{Add, Div, Mul, Neg, Sub};

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

/// `a·d − b·c` with one rounding (Kahan).
#[inline]
pub(crate) fn diff_of_products(a: f64, d: f64, b: f64, c: f64) -> f64 {
    let w = b * c;
    let e = b.mul_add(-c, w);
    a.mul_add(d, -w) + e
}

/// `a·e + b·g` with one rounding.
#[inline]
pub(crate) fn sum_of_products(a: f64, e: f64, b: f64, g: f64) -> f64 {
    diff_of_products(a, e, -b, g)
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn new(x: f64) -> Self {
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

    /// Square root, one Newton step from the `f64` estimate. Negative input gives 0.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::new(0.0);
        }
        let x = self.hi.sqrt();
        let sq = Dd::new(x) * Dd::new(x);
        let r = (self - sq).to_f64() / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
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

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Row-major 2×2 matrix in double-double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DdMat(pub [Dd; 4]);

impl DdMat {
    pub const IDENTITY: DdMat = DdMat([
        Dd { hi: 1.0, lo: 0.0 },
        Dd { hi: 0.0, lo: 0.0 },
        Dd { hi: 0.0, lo: 0.0 },
        Dd { hi: 1.0, lo: 0.0 },
    ]);

    pub fn from_f64(m: [f64; 4]) -> Self {
        DdMat(m.map(Dd::new))
    }

    /// Adjugate; the inverse up to the scalar `det`.
    pub fn adjugate(&self) -> Self {
        let [a, b, c, d] = self.0;
        DdMat([d, -b, -c, a])
    }

    pub fn mul(&self, o: &DdMat) -> DdMat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        DdMat([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    /// `−(a − d)² − 4bc`, which is `4 det − tr²`.
    pub fn discriminant(&self) -> Dd {
        let [a, b, c, d] = self.0;
        let u = a - d;
        -(u * u) - Dd::new(4.0) * b * c
    }

    /// `t · self · t⁻¹` for `t` of determinant one.
    pub fn conjugated_by(&self, t: &DdMat) -> DdMat {
        t.mul(self).mul(&t.adjugate())
    }

    /// Fixed point `((a − d)/2c, √disc / 2|c|)`; `None` when `disc ≤ 0` or `c = 0`.
    pub fn fixed_point(&self) -> Option<(f64, f64)> {
        let [a, _, c, d] = self.0;
        let disc = self.discriminant();
        if !(disc.hi > 0.0) || c.hi == 0.0 {
            return None;
        }
        let two_c = Dd::new(2.0) * c;
        let x = (a - d) / two_c;
        let y = disc.sqrt() / two_c.abs();
        Some((x.to_f64(), y.to_f64()))
    }

    pub fn round(&self) -> [f64; 4] {
        self.0.map(Dd::to_f64)
    }
}
