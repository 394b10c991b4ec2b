//! Second-order forward-mode jets.
//!
//! A [`Jet2`] carries a value together with first and second derivatives with
//! respect to a single scalar parameter. Arithmetic on jets propagates
//! derivatives by the product/quotient rules, and [`Jet2::chain`] applies a
//! scalar function given its value and first two derivatives at the point:
//!
//! ```text
//! (g ∘ f)'  = g'(f) f'
//! (g ∘ f)'' = g''(f) f'^2 + g'(f) f''
//! ```
//!
//! This is enough to push radial profiles through weight transforms and
//! differential operators without writing out derivative formulas by hand.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value plus first and second derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    /// f(s)
    pub v: f64,
    /// f'(s)
    pub d1: f64,
    /// f''(s)
    pub d2: f64,
}

impl Jet2 {
    /// A constant: derivatives vanish.
    #[inline]
    pub fn constant(v: f64) -> Self {
        Jet2 { v, d1: 0.0, d2: 0.0 }
    }

    /// The identity seed: value `s`, unit first derivative.
    #[inline]
    pub fn variable(s: f64) -> Self {
        Jet2 { v: s, d1: 1.0, d2: 0.0 }
    }

    /// Compose with a scalar function given `g(v)`, `g'(v)`, `g''(v)`.
    #[inline]
    pub fn chain(self, g: f64, dg: f64, d2g: f64) -> Self {
        Jet2 {
            v: g,
            d1: dg * self.d1,
            d2: d2g * self.d1 * self.d1 + dg * self.d2,
        }
    }

    #[inline]
    pub fn powi(self, k: i32) -> Self {
        let g = self.v.powi(k);
        let dg = f64::from(k) * self.v.powi(k - 1);
        let d2g = f64::from(k) * f64::from(k - 1) * self.v.powi(k - 2);
        self.chain(g, dg, d2g)
    }

    /// Real power. Requires `v > 0` unless the exponent is a non-negative
    /// integer (use [`Jet2::powi`] for those).
    #[inline]
    pub fn powf(self, a: f64) -> Self {
        let g = self.v.powf(a);
        let dg = a * self.v.powf(a - 1.0);
        let d2g = a * (a - 1.0) * self.v.powf(a - 2.0);
        self.chain(g, dg, d2g)
    }

    #[inline]
    pub fn sqrt(self) -> Self {
        let g = self.v.sqrt();
        self.chain(g, 0.5 / g, -0.25 / (g * self.v))
    }

    #[inline]
    pub fn exp(self) -> Self {
        let g = self.v.exp();
        self.chain(g, g, g)
    }

    #[inline]
    pub fn ln(self) -> Self {
        self.chain(self.v.ln(), 1.0 / self.v, -1.0 / (self.v * self.v))
    }

    #[inline]
    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    #[inline]
    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    #[inline]
    pub fn recip(self) -> Self {
        let g = 1.0 / self.v;
        self.chain(g, -g * g, 2.0 * g * g * g)
    }

    /// True if value and both derivatives are finite.
    #[inline]
    pub fn is_finite(self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    #[inline]
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    #[inline]
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    #[inline]
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[inline]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    #[inline]
    fn neg(self) -> Jet2 {
        Jet2 { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn add(self, c: f64) -> Jet2 {
        Jet2 { v: self.v + c, ..self }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn sub(self, c: f64) -> Jet2 {
        Jet2 { v: self.v - c, ..self }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn mul(self, c: f64) -> Jet2 {
        Jet2 { v: self.v * c, d1: self.d1 * c, d2: self.d2 * c }
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    #[inline]
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

impl Sub<Jet2> for f64 {
    type Output = Jet2;
    #[inline]
    fn sub(self, j: Jet2) -> Jet2 {
        Jet2 { v: self - j.v, d1: -j.d1, d2: -j.d2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn product_rule() {
        // d/ds [s^2 * sin s] = 2 s sin s + s^2 cos s
        let s = 1.3_f64;
        let j = Jet2::variable(s).powi(2) * Jet2::variable(s).sin();
        assert!(close(j.v, s * s * s.sin(), 1e-15));
        assert!(close(j.d1, 2.0 * s * s.sin() + s * s * s.cos(), 1e-14));
        assert!(close(
            j.d2,
            2.0 * s.sin() + 4.0 * s * s.cos() - s * s * s.sin(),
            1e-14
        ));
    }

    #[test]
    fn quotient_matches_power() {
        let s = 0.7;
        let a = Jet2::constant(1.0) / Jet2::variable(s).powi(3);
        let b = Jet2::variable(s).powi(-3);
        assert!(close(a.v, b.v, 1e-14));
        assert!(close(a.d1, b.d1, 1e-13));
        assert!(close(a.d2, b.d2, 1e-13));
    }

    #[test]
    fn chain_through_exp_ln() {
        // exp(ln s) is the identity where defined
        let s = 2.9;
        let j = Jet2::variable(s).ln().exp();
        assert!(close(j.v, s, 1e-14));
        assert!(close(j.d1, 1.0, 1e-13));
        assert!(j.d2.abs() < 1e-13);
    }
}
