//! Scalar abstraction for the boundary functionals: plain `f64` for evaluation,
//! [`Dual`] for exact directional derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic and the handful of elementary functions the functionals need.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(self) -> f64;
    fn ln_1p(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;

    /// `ln(1+z)/z`, continuous at `z = 0`.
    fn lnrel(self) -> Self {
        let z = self.value();
        if z.abs() < 1e-4 {
            // 1 - z/2 + z²/3 - z³/4 + z⁴/5
            let c = [1.0, -0.5, 1.0 / 3.0, -0.25, 0.2];
            horner(self, &c)
        } else {
            self.ln_1p() / self
        }
    }

    /// `ln(1+z)/z` given `l = ln(1+z)` already computed.
    fn lnrel_with(self, l: Self) -> Self {
        if self.value().abs() < 1e-4 {
            self.lnrel()
        } else {
            l / self
        }
    }

    /// `(e^z - 1)/z`, continuous at `z = 0`.
    fn exprel(self) -> Self {
        let z = self.value();
        if z.abs() < 1e-4 {
            let c = [1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];
            horner(self, &c)
        } else {
            self.exp_m1() / self
        }
    }

    /// `self^p` for positive `self`.
    fn powf(self, p: f64) -> Self {
        (self.ln() * p).exp()
    }
}

fn horner<T: Real>(z: T, c: &[f64]) -> T {
    let mut acc = T::cst(c[c.len() - 1]);
    for &ci in c.iter().rev().skip(1) {
        acc = acc * z + ci;
    }
    acc
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
    #[inline]
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
}

/// First-order dual number `v + d·δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }
}

impl Add for Dual {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for Dual {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.v / o.v;
        Self::new(q, (self.d - q * o.d) / o.v)
    }
}

impl Neg for Dual {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d)
    }
}

impl Add<f64> for Dual {
    type Output = Self;
    #[inline]
    fn add(self, o: f64) -> Self {
        Self::new(self.v + o, self.d)
    }
}

impl Sub<f64> for Dual {
    type Output = Self;
    #[inline]
    fn sub(self, o: f64) -> Self {
        Self::new(self.v - o, self.d)
    }
}

impl Mul<f64> for Dual {
    type Output = Self;
    #[inline]
    fn mul(self, o: f64) -> Self {
        Self::new(self.v * o, self.d * o)
    }
}

impl Div<f64> for Dual {
    type Output = Self;
    #[inline]
    fn div(self, o: f64) -> Self {
        Self::new(self.v / o, self.d / o)
    }
}

impl Real for Dual {
    fn cst(v: f64) -> Self {
        Self::new(v, 0.0)
    }
    fn value(self) -> f64 {
        self.v
    }
    fn ln_1p(self) -> Self {
        Self::new(self.v.ln_1p(), self.d / (1.0 + self.v))
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        Self::new(e, self.d * e)
    }
    fn exp_m1(self) -> Self {
        Self::new(self.v.exp_m1(), self.d * self.v.exp())
    }
    fn ln(self) -> Self {
        Self::new(self.v.ln(), self.d / self.v)
    }
    fn powf(self, p: f64) -> Self {
        let a = self.v.powf(p);
        Self::new(a, self.d * p * self.v.powf(p - 1.0))
    }
}
