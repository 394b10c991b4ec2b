//! Radial profile library.
//!
//! A profile is a scalar function `w(s)` of the radius, evaluated as a
//! second-order jet so that every differential operator downstream gets
//! exact derivatives rather than finite differences. The library profiles
//! are the ones the verification battery uses; solver output enters through
//! [`SolutionProfile`], and composition with a scalar map through
//! [`Profile::Composed`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::spline::NotAKnotSpline;

/// The scalar maps `W̃` used when composing a profile, carried together with
/// their derivative `W = W̃'`. All maps satisfy `W̃(0) = 0` and are strictly
/// increasing on their domain, so composition preserves positivity.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum CompositionMap {
    /// W̃(λ) = c λ with c > 0.
    Linear { slope: f64 },
    /// W̃(λ) = λ^k with integer k ≥ 1.
    Power { k: u32 },
    /// W̃(λ) = 1 − (1−λ)^β with β in (0,1]; defined for λ < 1.
    /// Its derivative W(λ) = β (1−λ)^{β−1} blows up as λ → 1, which is
    /// exactly the regularizing change of unknown used for touchdown-type
    /// profiles.
    OneMinusPower { beta: f64 },
}

impl CompositionMap {
    pub fn validate(&self) -> Result<()> {
        match self {
            CompositionMap::Linear { slope } => {
                if !(slope.is_finite() && *slope > 0.0) {
                    return Err(Error::Domain(format!(
                        "linear map slope must be positive, got {slope}"
                    )));
                }
            }
            CompositionMap::Power { k } => {
                if *k < 1 {
                    return Err(Error::Domain("power map needs k >= 1".into()));
                }
            }
            CompositionMap::OneMinusPower { beta } => {
                if !(*beta > 0.0 && *beta <= 1.0) {
                    return Err(Error::Domain(format!(
                        "one-minus-power map needs β in (0,1], got {beta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// (W̃(λ), W(λ), W'(λ)) — the map value and its first two derivatives.
    pub fn w_values(&self, lambda: f64) -> (f64, f64, f64) {
        match self {
            CompositionMap::Linear { slope } => (slope * lambda, *slope, 0.0),
            CompositionMap::Power { k } => {
                let k = *k;
                let v = lambda.powi(k as i32);
                let d1 = f64::from(k) * lambda.powi(k as i32 - 1);
                let d2 = f64::from(k) * f64::from(k - 1) * lambda.powi(k as i32 - 2);
                (v, d1, d2)
            }
            CompositionMap::OneMinusPower { beta } => {
                let b = *beta;
                let one_m = 1.0 - lambda;
                (
                    1.0 - one_m.powf(b),
                    b * one_m.powf(b - 1.0),
                    b * (1.0 - b) * one_m.powf(b - 2.0),
                )
            }
        }
    }

    /// Push a jet through the map.
    pub fn jet(&self, f: Jet2) -> Jet2 {
        let (v, d1, d2) = self.w_values(f.v);
        f.chain(v, d1, d2)
    }

    /// Image of an upper range bound under the (increasing) map.
    pub fn image_bound(&self, bound: f64) -> f64 {
        if !bound.is_finite() {
            return match self {
                CompositionMap::OneMinusPower { .. } => 1.0,
                _ => f64::INFINITY,
            };
        }
        self.w_values(bound).0
    }
}

/// A twice-differentiable radial profile.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    /// a (1 − s²)
    Parabola { amplitude: f64 },
    /// a (1 − s²)^k
    ParabolaPower { amplitude: f64, k: u32 },
    /// a cos(π s / 2)
    CosineBump { amplitude: f64 },
    /// 1 − s^{2−n}; harmonic on annuli in dimension n ≥ 3.
    HarmonicShell { n: u32 },
    /// ln s; harmonic on annuli in dimension 2.
    LogShell,
    /// Σ coeffs[i] s^i
    Polynomial { coeffs: Vec<f64> },
    /// Spline reconstruction of solver output (see [`SolutionProfile`]).
    Solution(SolutionProfile),
    /// W̃ applied to another profile.
    Composed {
        inner: Box<Profile>,
        map: CompositionMap,
    },
}

impl Profile {
    /// Evaluate (w, w', w'') at radius `s`.
    pub fn jet(&self, s: f64) -> Jet2 {
        let x = Jet2::variable(s);
        match self {
            Profile::Parabola { amplitude } => (1.0 - x * x) * *amplitude,
            Profile::ParabolaPower { amplitude, k } => {
                (1.0 - x * x).powi(*k as i32) * *amplitude
            }
            Profile::CosineBump { amplitude } => {
                (x * std::f64::consts::FRAC_PI_2).cos() * *amplitude
            }
            Profile::HarmonicShell { n } => 1.0 - x.powf(2.0 - f64::from(*n)),
            Profile::LogShell => x.ln(),
            Profile::Polynomial { coeffs } => {
                let mut acc = Jet2::constant(0.0);
                for &c in coeffs.iter().rev() {
                    acc = acc * x + c;
                }
                acc
            }
            Profile::Solution(sp) => sp.jet(s),
            Profile::Composed { inner, map } => map.jet(inner.jet(s)),
        }
    }

    /// Validate internal parameters (not the field-level range conditions).
    pub fn validate(&self) -> Result<()> {
        match self {
            Profile::Parabola { amplitude }
            | Profile::ParabolaPower { amplitude, .. }
            | Profile::CosineBump { amplitude } => {
                if !(amplitude.is_finite() && *amplitude > 0.0) {
                    return Err(Error::Domain(format!(
                        "profile amplitude must be positive, got {amplitude}"
                    )));
                }
                if let Profile::ParabolaPower { k, .. } = self {
                    if *k < 1 {
                        return Err(Error::Domain("parabola power needs k >= 1".into()));
                    }
                }
                Ok(())
            }
            Profile::HarmonicShell { n } => {
                if *n < 3 {
                    return Err(Error::Domain(
                        "the power-type harmonic shell needs n >= 3; use log_shell for n = 2"
                            .into(),
                    ));
                }
                Ok(())
            }
            Profile::LogShell => Ok(()),
            Profile::Polynomial { coeffs } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Domain(
                        "polynomial coefficients must be finite and non-empty".into(),
                    ));
                }
                Ok(())
            }
            Profile::Solution(_) => Ok(()),
            Profile::Composed { inner, map } => {
                map.validate()?;
                inner.validate()
            }
        }
    }

    /// Short name for report rows.
    pub fn descriptor(&self) -> String {
        match self {
            Profile::Parabola { amplitude } => format!("parabola(a={amplitude})"),
            Profile::ParabolaPower { amplitude, k } => {
                format!("parabola_power(a={amplitude}, k={k})")
            }
            Profile::CosineBump { amplitude } => format!("cosine_bump(a={amplitude})"),
            Profile::HarmonicShell { n } => format!("harmonic_shell(n={n})"),
            Profile::LogShell => "log_shell".into(),
            Profile::Polynomial { coeffs } => format!("polynomial(degree={})", coeffs.len() - 1),
            Profile::Solution(sp) => format!("solution({})", sp.source),
            Profile::Composed { inner, map } => {
                let m = match map {
                    CompositionMap::Linear { slope } => format!("linear(slope={slope})"),
                    CompositionMap::Power { k } => format!("power(k={k})"),
                    CompositionMap::OneMinusPower { beta } => {
                        format!("one_minus_power(beta={beta})")
                    }
                };
                format!("{} . {}", m, inner.descriptor())
            }
        }
    }
}

/// Discrete solver output turned into a twice-differentiable profile.
///
/// The spline is built in the even coordinate ξ = s², which makes w'(0) = 0
/// exact by construction (w'(s) = 2 s W'(s²)) — a plain spline in `s` would
/// leave an O(Δ³) spurious slope at the origin.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionProfile {
    #[serde(skip)]
    spline: NotAKnotSpline,
    /// Provenance (file path or "solver"), echoed in reports.
    pub source: String,
    /// Outer radius of the sampled ball.
    pub radius: f64,
}

impl SolutionProfile {
    /// Build from samples `w_i = w(s_i)` on an increasing grid with
    /// `s_0 = 0`.
    pub fn from_samples(s: &[f64], w: &[f64], source: impl Into<String>) -> Result<Self> {
        if s.len() != w.len() || s.len() < 4 {
            return Err(Error::Degenerate(
                "solution profile needs at least four matching samples".into(),
            ));
        }
        if s[0] != 0.0 {
            return Err(Error::Domain(
                "solution samples must start at the origin s = 0".into(),
            ));
        }
        let xi: Vec<f64> = s.iter().map(|&v| v * v).collect();
        let spline = NotAKnotSpline::new(xi, w.to_vec())?;
        Ok(SolutionProfile {
            spline,
            source: source.into(),
            radius: *s.last().unwrap(),
        })
    }

    pub fn jet(&self, s: f64) -> Jet2 {
        let xi = s * s;
        let v = self.spline.eval(xi);
        let d1 = self.spline.deriv1(xi);
        let d2 = self.spline.deriv2(xi);
        Jet2 {
            v,
            d1: 2.0 * s * d1,
            d2: 2.0 * d1 + 4.0 * xi * d2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_jet() {
        let p = Profile::Parabola { amplitude: 1.0 };
        let j = p.jet(0.5);
        assert_eq!(j.v, 0.75);
        assert_eq!(j.d1, -1.0);
        assert_eq!(j.d2, -2.0);
    }

    #[test]
    fn squared_parabola_jet() {
        // w = (1-s²)²: w' = -4s(1-s²), w'' = -4 + 12 s²
        let p = Profile::ParabolaPower { amplitude: 1.0, k: 2 };
        let s = 0.6;
        let j = p.jet(s);
        let q = 1.0 - s * s;
        assert!((j.v - q * q).abs() < 1e-15);
        assert!((j.d1 - (-4.0 * s * q)).abs() < 1e-14);
        assert!((j.d2 - (-4.0 + 12.0 * s * s)).abs() < 1e-14);
    }

    #[test]
    fn polynomial_horner() {
        // 2 + 3s - s³
        let p = Profile::Polynomial { coeffs: vec![2.0, 3.0, 0.0, -1.0] };
        let s = 1.7;
        let j = p.jet(s);
        assert!((j.v - (2.0 + 3.0 * s - s * s * s)).abs() < 1e-13);
        assert!((j.d1 - (3.0 - 3.0 * s * s)).abs() < 1e-13);
        assert!((j.d2 - (-6.0 * s)).abs() < 1e-13);
    }

    #[test]
    fn composition_map_chain() {
        // W̃(λ) = λ² over w = 1 - s²: (1-s²)², compare with the direct profile
        let direct = Profile::ParabolaPower { amplitude: 1.0, k: 2 };
        let composed = Profile::Composed {
            inner: Box::new(Profile::Parabola { amplitude: 1.0 }),
            map: CompositionMap::Power { k: 2 },
        };
        for i in 0..20 {
            let s = 0.05 + 0.9 * f64::from(i) / 19.0;
            let a = direct.jet(s);
            let b = composed.jet(s);
            assert!((a.v - b.v).abs() < 1e-14);
            assert!((a.d1 - b.d1).abs() < 1e-13);
            assert!((a.d2 - b.d2).abs() < 1e-13);
        }
    }

    #[test]
    fn solution_profile_origin_slope_is_exact_zero() {
        // samples of a smooth even function
        let n = 64;
        let s: Vec<f64> = (0..=n).map(|i| f64::from(i) / f64::from(n)).collect();
        let w: Vec<f64> = s.iter().map(|&v| (1.0 - v * v) * 0.3).collect();
        let sp = SolutionProfile::from_samples(&s, &w, "test").unwrap();
        assert_eq!(sp.jet(0.0).d1, 0.0);
        // interior derivatives track the parabola
        let j = sp.jet(0.5);
        assert!((j.d1 + 0.3).abs() < 1e-9, "w'(0.5) = {}", j.d1);
        assert!((j.d2 + 0.6).abs() < 1e-7, "w''(0.5) = {}", j.d2);
    }
}
