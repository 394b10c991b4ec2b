//! Radial fields and their differential operators.
//!
//! For a radial function u(x) = w(|x|) on an annulus or ball in `R^n`, every
//! second-order differential quantity reduces to (w, w', w'') at the radius:
//!
//! ```text
//! |∇u|        = |w'|
//! Δu          = w'' + (n−1) w'/s          (n w''(0) at the origin)
//! Δ_∞ u       = w''  if w' ≠ 0, else 0    (normalized infinity Laplacian)
//! Δ^♠ u       = Δ_∞ u − Δu
//! |∇²u|_F     = sqrt(w''² + (n−1)(w'/s)²) (√n |w''(0)| at the origin)
//! ```
//!
//! A [`RadialField`] bundles a profile with its domain and validates at
//! construction the structural conditions the inequality checkers rely on:
//! positive range below a declared bound, a Dirichlet outer boundary when
//! claimed, and a smooth origin on balls.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::profiles::{CompositionMap, Profile};
use crate::quadrature::unit_sphere_area;
use crate::tol;
use crate::weights::WeightSpec;

/// Laplacian of a radial function from its jet at radius `s`.
pub fn laplacian_jet(j: Jet2, s: f64, n: u32) -> f64 {
    if s == 0.0 {
        f64::from(n) * j.d2
    } else {
        j.d2 + f64::from(n - 1) * j.d1 / s
    }
}

/// Normalized infinity Laplacian: second derivative in the gradient
/// direction, zero where the gradient vanishes. The zero test is exact —
/// critical points of the library profiles land on exact floating-point
/// zeros of w'.
pub fn infinity_laplacian_jet(j: Jet2) -> f64 {
    if j.d1 != 0.0 {
        j.d2
    } else {
        0.0
    }
}

/// The spade operator Δ^♠ = Δ_∞ − Δ.
pub fn spade_jet(j: Jet2, s: f64, n: u32) -> f64 {
    infinity_laplacian_jet(j) - laplacian_jet(j, s, n)
}

/// Frobenius norm of the Hessian of a radial function.
pub fn hessian_frobenius_jet(j: Jet2, s: f64, n: u32) -> f64 {
    if s == 0.0 {
        f64::from(n).sqrt() * j.d2.abs()
    } else {
        let radial = j.d1 / s;
        (j.d2 * j.d2 + f64::from(n - 1) * radial * radial).sqrt()
    }
}

/// The odd power map Φ_p(x) = |x|^{p−2} x, with Φ_p(0) = 0.
pub fn phi_p(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(p - 1.0) * x.signum()
    }
}

/// A positive radial profile on a ball or annulus.
#[derive(Debug, Clone, Serialize)]
pub struct RadialField {
    pub profile: Profile,
    /// Ambient dimension.
    pub n: u32,
    /// Inner radius (0 for a ball).
    pub r_in: f64,
    /// Outer radius.
    pub r_out: f64,
    /// Declared strict upper bound for the range of w; the profile is
    /// validated to stay inside (0, range_bound) on the open domain.
    pub range_bound: f64,
    /// Whether the outer boundary is a Dirichlet zero.
    pub dirichlet: bool,
}

impl RadialField {
    pub fn new(
        profile: Profile,
        n: u32,
        r_in: f64,
        r_out: f64,
        range_bound: f64,
        dirichlet: bool,
    ) -> Result<Self> {
        profile.validate()?;
        if n < 2 {
            return Err(Error::Domain(format!("dimension n = {n} must be >= 2")));
        }
        if !(r_in >= 0.0 && r_in < r_out && r_out.is_finite()) {
            return Err(Error::Domain(format!(
                "radii must satisfy 0 <= r_in < r_out < ∞, got [{r_in}, {r_out}]"
            )));
        }
        if !(range_bound > 0.0) {
            return Err(Error::Domain(format!(
                "range bound must be positive, got {range_bound}"
            )));
        }
        let field = RadialField { profile, n, r_in, r_out, range_bound, dirichlet };

        if dirichlet {
            let w_out = field.jet(r_out).v;
            if w_out.abs() > tol::DIRICHLET_ZERO {
                return Err(Error::Domain(format!(
                    "field declared Dirichlet but w(r_out) = {w_out:e}"
                )));
            }
        }

        // positivity and range on a dense interior probe grid
        let m = tol::FIELD_PROBE_POINTS;
        for i in 1..=m {
            let s = r_in + (r_out - r_in) * i as f64 / (m + 1) as f64;
            let j = field.jet(s);
            if !j.is_finite() {
                return Err(Error::NonFinite(format!(
                    "profile jet not finite at s = {s}"
                )));
            }
            if !(j.v > 0.0 && j.v < range_bound) {
                return Err(Error::Domain(format!(
                    "profile leaves (0, {range_bound}) at s = {s}: w = {}",
                    j.v
                )));
            }
        }

        // on a ball the profile must be smooth at the origin
        if r_in == 0.0 {
            let d0 = field.jet(0.0).d1;
            if d0.abs() > tol::ORIGIN_SLOPE_ZERO {
                return Err(Error::Domain(format!(
                    "ball profile has non-vanishing origin slope w'(0) = {d0:e}"
                )));
            }
        }

        Ok(field)
    }

    /// Evaluate (w, w', w'') at radius `s`.
    pub fn jet(&self, s: f64) -> Jet2 {
        self.profile.jet(s)
    }

    pub fn grad_norm(&self, s: f64) -> f64 {
        self.jet(s).d1.abs()
    }

    pub fn laplacian(&self, s: f64) -> f64 {
        laplacian_jet(self.jet(s), s, self.n)
    }

    pub fn infinity_laplacian(&self, s: f64) -> f64 {
        infinity_laplacian_jet(self.jet(s))
    }

    pub fn spade(&self, s: f64) -> f64 {
        spade_jet(self.jet(s), s, self.n)
    }

    pub fn hessian_frobenius(&self, s: f64) -> f64 {
        hessian_frobenius_jet(self.jet(s), s, self.n)
    }

    /// Whether w' changes sign strictly inside the domain (degenerate
    /// critical points on the probe grid count). Checkers note such fields
    /// in their reports because split-operator terms can vanish there.
    pub fn has_interior_critical_point(&self) -> bool {
        let m = tol::FIELD_PROBE_POINTS;
        let mut prev: Option<f64> = None;
        for i in 1..=m {
            let s = self.r_in + (self.r_out - self.r_in) * i as f64 / (m + 1) as f64;
            let d = self.jet(s).d1;
            if d == 0.0 {
                return true;
            }
            if let Some(p) = prev {
                if p * d < 0.0 {
                    return true;
                }
            }
            prev = Some(d);
        }
        false
    }

    /// The boundary term of the weighted integration by parts:
    ///
    /// ```text
    /// θ_n [ r_out^{n−1} Φ_p(w'(r_out)) H_C(w(r_out))
    ///     − r_in^{n−1}  Φ_p(w'(r_in))  H_C(w(r_in)) ]
    /// ```
    ///
    /// On a ball the inner term vanishes. For a Dirichlet field with C ≤ 0
    /// and the ball geometry, the flux is ≤ 0, which is what lets the
    /// checkers drop it on the favorable side.
    pub fn boundary_flux(&self, p: f64, weight: &WeightSpec) -> Result<f64> {
        let theta = unit_sphere_area(self.n);
        let nm1 = (self.n - 1) as i32;
        let outer_jet = self.jet(self.r_out);
        let outer = self.r_out.powi(nm1)
            * phi_p(outer_jet.d1, p)
            * weight.eval_big_h(clamp_range(outer_jet.v))?;
        let inner = if self.r_in > 0.0 {
            let ij = self.jet(self.r_in);
            self.r_in.powi(nm1) * phi_p(ij.d1, p) * weight.eval_big_h(clamp_range(ij.v))?
        } else {
            0.0
        };
        Ok(theta * (outer - inner))
    }

    /// Compose the field with a scalar map, producing the field of W̃(w).
    /// The range bound is transported through the (increasing) map.
    pub fn compose(&self, map: CompositionMap) -> Result<RadialField> {
        map.validate()?;
        let new_bound = map.image_bound(self.range_bound);
        RadialField::new(
            Profile::Composed {
                inner: Box::new(self.profile.clone()),
                map,
            },
            self.n,
            self.r_in,
            self.r_out,
            new_bound,
            self.dirichlet, // W̃(0) = 0 preserves the Dirichlet boundary
        )
    }

    /// The same field with the profile scaled by `c > 0` (range bound scales
    /// along).
    pub fn scaled(&self, c: f64) -> Result<RadialField> {
        let map = CompositionMap::Linear { slope: c };
        let new_bound = if self.range_bound.is_finite() {
            self.range_bound * c
        } else {
            f64::INFINITY
        };
        RadialField::new(
            Profile::Composed {
                inner: Box::new(self.profile.clone()),
                map,
            },
            self.n,
            self.r_in,
            self.r_out,
            new_bound,
            self.dirichlet,
        )
    }
}

/// Boundary evaluations can land an ulp outside [0, ∞) through cancellation;
/// snap those to 0 so H_C sees its exact boundary value.
fn clamp_range(v: f64) -> f64 {
    if v.abs() <= tol::DIRICHLET_ZERO {
        0.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightFamily;

    fn parabola_disk() -> RadialField {
        RadialField::new(
            Profile::Parabola { amplitude: 1.0 },
            2,
            0.0,
            1.0,
            f64::INFINITY,
            true,
        )
        .unwrap()
    }

    #[test]
    fn operators_on_parabola() {
        let f = parabola_disk();
        assert_eq!(f.laplacian(0.5), -4.0);
        assert_eq!(f.laplacian(0.0), -4.0); // n w''(0)
        assert_eq!(f.infinity_laplacian(0.5), -2.0);
        assert_eq!(f.spade(0.5), 2.0);
        let h = f.hessian_frobenius(0.5);
        assert!((h - 8.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn spade_in_higher_dimension() {
        let f = RadialField::new(
            Profile::Parabola { amplitude: 1.0 },
            5,
            0.0,
            1.0,
            f64::INFINITY,
            true,
        )
        .unwrap();
        assert_eq!(f.spade(0.5), 8.0);
    }

    #[test]
    fn harmonic_shell_is_harmonic() {
        let f = RadialField::new(
            Profile::HarmonicShell { n: 3 },
            3,
            1.0,
            4.0,
            1.0,
            false,
        )
        .unwrap();
        for i in 1..100 {
            let s = 1.0 + 3.0 * f64::from(i) / 100.0;
            assert!(f.laplacian(s).abs() < 1e-12, "Δ at {s} = {}", f.laplacian(s));
        }
        // w = 1 - 1/s in n = 3: |w'(2)| = 1/4, Δ_∞(2) = w'' = -2/8
        assert!((f.grad_norm(2.0) - 0.25).abs() < 1e-15);
        assert!((f.infinity_laplacian(2.0) + 0.25).abs() < 1e-15);
        let h1 = f.hessian_frobenius(1.0);
        assert!((h1 - 6.0_f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn dirichlet_flag_enforced() {
        let bad = RadialField::new(
            Profile::Polynomial { coeffs: vec![1.0, 0.0, -0.5] }, // w(1) = 0.5
            2,
            0.0,
            1.0,
            f64::INFINITY,
            true,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn flux_example_parabola_cubic() {
        // w = 1 - s², p = 3, h ≡ 1, C = −1 on the unit disk:
        // Φ_3(w'(1)) = Φ_3(−2) = −4, H_C(0) = 1 → flux = −4 θ_2
        let f = parabola_disk();
        let w = WeightSpec::new(WeightFamily::Constant { value: 1.0 }, -1.0).unwrap();
        let flux = f.boundary_flux(3.0, &w).unwrap();
        let theta2 = unit_sphere_area(2);
        assert!((flux + 4.0 * theta2).abs() < 1e-12, "flux = {flux}");
    }

    #[test]
    fn exact_zero_infinity_laplacian_at_interior_critical_point() {
        // 1 - (s-2)² on the annulus [1,3]: w'(2) = 0 exactly in floats,
        // so Δ_∞(2) = 0 by the convention, while w''(2) = -2.
        let f = RadialField::new(
            Profile::Polynomial { coeffs: vec![-3.0, 4.0, -1.0] },
            3,
            1.0,
            3.0,
            f64::INFINITY,
            false,
        )
        .unwrap();
        assert_eq!(f.jet(2.0).d1, 0.0);
        assert_eq!(f.infinity_laplacian(2.0), 0.0);
        assert!(f.has_interior_critical_point());
    }

    #[test]
    fn composition_scales_derivatives() {
        let f = parabola_disk();
        let g = f.scaled(2.0).unwrap();
        let (a, b) = (f.jet(0.3), g.jet(0.3));
        assert_eq!(b.v, 2.0 * a.v);
        assert_eq!(b.d1, 2.0 * a.d1);
        assert_eq!(b.d2, 2.0 * a.d2);
    }
}
