//! Property tests for the structural identities the library is built on.
//!
//! These check relations that must hold for *every* admissible input —
//! derivative consistency of the weight calculus, chain-rule identities of
//! the composition machinery, sign and scaling laws of the integrals — with
//! randomized parameters.

use gnlab_core::calculus::{
    hessian_frobenius_jet, infinity_laplacian_jet, laplacian_jet, spade_jet, RadialField,
};
use gnlab_core::jet::Jet2;
use gnlab_core::profiles::{CompositionMap, Profile};
use gnlab_core::quadrature::{
    integrate_1d, integrate_radial, weighted_seminorm, IntegrandKind, QuadConfig, RadialMeasure,
};
use gnlab_core::report::{decide, Verdict};
use gnlab_core::weights::{WeightFamily, WeightSpec};

use proptest::prelude::*;

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

fn weight_strategy() -> impl Strategy<Value = WeightSpec> {
    prop_oneof![
        (-0.9..3.0f64).prop_map(|theta| {
            WeightSpec::new(WeightFamily::PowerLaw { theta }, 0.0).unwrap()
        }),
        (0.5..4.0f64).prop_map(|alpha| {
            WeightSpec::new(WeightFamily::PowerLawScaled { alpha }, 0.0).unwrap()
        }),
        (-3.0..3.0f64).prop_map(|alpha| {
            WeightSpec::new(WeightFamily::ShiftedPower { alpha }, 0.0).unwrap()
        }),
        (0.1..10.0f64).prop_map(|value| {
            WeightSpec::new(WeightFamily::Constant { value }, 0.0).unwrap()
        }),
    ]
}

fn profile_strategy() -> impl Strategy<Value = Profile> {
    prop_oneof![
        (0.05..3.0f64).prop_map(|amplitude| Profile::Parabola { amplitude }),
        ((0.05..3.0f64), (1u32..4)).prop_map(|(amplitude, k)| Profile::ParabolaPower {
            amplitude,
            k
        }),
        (0.05..3.0f64).prop_map(|amplitude| Profile::CosineBump { amplitude }),
    ]
}

fn map_strategy() -> impl Strategy<Value = CompositionMap> {
    prop_oneof![
        (0.1..5.0f64).prop_map(|slope| CompositionMap::Linear { slope }),
        (1u32..4).prop_map(|k| CompositionMap::Power { k }),
        (0.1..1.0f64).prop_map(|beta| CompositionMap::OneMinusPower { beta }),
    ]
}

fn close(a: f64, b: f64, rel: f64, abs_floor: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(abs_floor)
}

// ---------------------------------------------------------------------------
// weight calculus
// ---------------------------------------------------------------------------

proptest! {
    /// The antiderivative must differentiate back to the weight:
    /// (H(λ+δ) − H(λ−δ))/(2δ) ≈ h(λ).
    #[test]
    fn antiderivative_differentiates_to_weight(
        w in weight_strategy(),
        lam_frac in 0.05..0.9f64,
    ) {
        let b = if w.upper_bound().is_finite() { w.upper_bound() } else { 2.0 };
        let lam = lam_frac * b;
        let delta = 1e-5 * lam.max(0.1);
        let hi = w.eval_big_h(lam + delta).unwrap();
        let lo = w.eval_big_h(lam - delta).unwrap();
        let fd = (hi - lo) / (2.0 * delta);
        let h = w.eval_h(lam).unwrap();
        prop_assert!(
            close(fd, h, 1e-5, 1e-12),
            "dH/dλ = {fd} vs h = {h} at λ = {lam} for {}", w.descriptor()
        );
    }

    /// G' computed by the product rule must match a central difference of G.
    #[test]
    fn g_prime_matches_finite_difference(
        w in weight_strategy(),
        lam_frac in 0.1..0.85f64,
        use_half in proptest::bool::ANY,
    ) {
        let p = 3.0;
        let e = if use_half { 1.0 / p } else { 2.0 / p };
        let b = if w.upper_bound().is_finite() { w.upper_bound() } else { 2.0 };
        let lam = lam_frac * b;
        let delta = 1e-6 * lam.max(0.1);
        let hi = w.eval_g(p, e, lam + delta).unwrap();
        let lo = w.eval_g(p, e, lam - delta).unwrap();
        let fd = (hi - lo) / (2.0 * delta);
        let gp = w.eval_g_prime(p, e, lam).unwrap();
        prop_assert!(
            close(fd, gp, 1e-4, 1e-10),
            "G' = {gp} vs FD = {fd} at λ = {lam} for {}", w.descriptor()
        );
    }

    /// The quotient form |G'|/h^e must agree with forming both factors.
    #[test]
    fn quotient_form_cancels_weight_powers(
        w in weight_strategy(),
        lam_frac in 0.1..0.85f64,
    ) {
        let p = 4.0;
        let e = 1.0 / p;
        let b = if w.upper_bound().is_finite() { w.upper_bound() } else { 2.0 };
        let lam = lam_frac * b;
        let direct = w.eval_g_prime(p, e, lam).unwrap().abs()
            / w.eval_h(lam).unwrap().powf(e);
        let fused = w.g_prime_over_he(e, lam).unwrap();
        prop_assert!(
            close(direct, fused, 1e-12, 1e-14),
            "direct {direct} vs fused {fused} for {}", w.descriptor()
        );
    }
}

// ---------------------------------------------------------------------------
// jets and differential operators
// ---------------------------------------------------------------------------

proptest! {
    /// Profile jets must agree with central differences of the value and of
    /// the first derivative.
    #[test]
    fn jets_match_finite_differences(
        profile in profile_strategy(),
        s in 0.05..0.95f64,
    ) {
        let delta = 1e-5;
        let j = profile.jet(s);
        let vm = profile.jet(s - delta).v;
        let vp = profile.jet(s + delta).v;
        let d1_fd = (vp - vm) / (2.0 * delta);
        prop_assert!(
            close(j.d1, d1_fd, 1e-6, 1e-8),
            "w' = {} vs FD {} at s = {s} for {}", j.d1, d1_fd, profile.descriptor()
        );
        let dm = profile.jet(s - delta).d1;
        let dp = profile.jet(s + delta).d1;
        let d2_fd = (dp - dm) / (2.0 * delta);
        prop_assert!(
            close(j.d2, d2_fd, 1e-6, 1e-8),
            "w'' = {} vs FD {} at s = {s} for {}", j.d2, d2_fd, profile.descriptor()
        );
    }

    /// The three second-order operators satisfy the exact splitting
    /// (direction-second-derivative) = (split term) + (Laplacian).
    #[test]
    fn operator_splitting_is_exact(
        profile in profile_strategy(),
        s in 0.01..0.99f64,
        n in 2u32..9,
    ) {
        let j = profile.jet(s);
        let lap = laplacian_jet(j, s, n);
        let inf = infinity_laplacian_jet(j);
        let spade = spade_jet(j, s, n);
        let scale = lap.abs().max(inf.abs()).max(1e-300);
        prop_assert!(
            ((inf - lap) - spade).abs() <= 1e-14 * scale,
            "splitting violated: inf={inf} lap={lap} spade={spade}"
        );
    }

    /// Pointwise |Δu| ≤ √n |∇²u|_F: the Laplacian never exceeds the
    /// dimensional multiple of the Hessian norm.
    #[test]
    fn laplacian_bounded_by_hessian_norm(
        profile in profile_strategy(),
        s in 0.01..0.99f64,
        n in 2u32..9,
    ) {
        let j = profile.jet(s);
        let lap = laplacian_jet(j, s, n).abs();
        let hess = hessian_frobenius_jet(j, s, n);
        prop_assert!(
            lap <= f64::from(n).sqrt() * hess * (1.0 + 1e-12),
            "lap {lap} > sqrt(n) * hess {hess}"
        );
    }

    /// Chain rule through a composition map: gradient is multiplicative,
    /// the Laplacian and the direction-second-derivative pick up the
    /// curvature term, the split term is exactly multiplicative.
    #[test]
    fn composition_chain_rule_identities(
        profile in profile_strategy(),
        map in map_strategy(),
        s in 0.01..0.99f64,
        n in 2u32..9,
    ) {
        let inner = profile.jet(s);
        // keep the inner range inside (0,1) for the one-minus-power map
        let inner = if matches!(map, CompositionMap::OneMinusPower { .. }) && inner.v >= 1.0 {
            return Ok(()); // skip: outside the map's domain
        } else {
            inner
        };
        let composed = map.jet(inner);
        let (_, w1, w2) = map.w_values(inner.v);

        // ∇(W̃∘w) = W(w) ∇w
        prop_assert!(close(composed.d1, w1 * inner.d1, 1e-10, 1e-12));

        // Δ(W̃∘w) = W'(w)|∇w|² + W(w)Δw
        let lap_c = laplacian_jet(composed, s, n);
        let lap_i = laplacian_jet(inner, s, n);
        let want = w2 * inner.d1 * inner.d1 + w1 * lap_i;
        prop_assert!(
            close(lap_c, want, 1e-9, 1e-10),
            "Laplacian chain rule: {lap_c} vs {want}"
        );

        // same structure for the second derivative in the gradient direction
        let inf_c = infinity_laplacian_jet(composed);
        let inf_i = infinity_laplacian_jet(inner);
        if inner.d1 != 0.0 && composed.d1 != 0.0 {
            let want = w2 * inner.d1 * inner.d1 + w1 * inf_i;
            prop_assert!(
                close(inf_c, want, 1e-9, 1e-10),
                "direction-derivative chain rule: {inf_c} vs {want}"
            );
            // and the split term is exactly multiplicative
            let spade_c = spade_jet(composed, s, n);
            let spade_i = spade_jet(inner, s, n);
            prop_assert!(
                close(spade_c, w1 * spade_i, 1e-9, 1e-10),
                "split-term multiplicativity: {spade_c} vs {}", w1 * spade_i
            );
        }
    }
}

// ---------------------------------------------------------------------------
// integrals: signs, volumes, scaling
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Dirichlet field + offset C ≤ 0 forces a non-positive boundary term.
    #[test]
    fn dirichlet_flux_never_positive(
        amplitude in 0.05..3.0f64,
        n in 2u32..9,
        p in 2.0..6.0f64,
        c in -2.0..0.0f64,
        theta in -0.9..3.0f64,
    ) {
        let field = RadialField::new(
            Profile::Parabola { amplitude }, n, 0.0, 1.0, f64::INFINITY, true,
        ).unwrap();
        let w = WeightSpec::new(WeightFamily::PowerLaw { theta }, c).unwrap();
        let flux = field.boundary_flux(p, &w).unwrap();
        prop_assert!(flux <= 0.0, "flux = {flux} must not be positive");
    }

    /// Integrating 1 over the annulus must reproduce the closed-form volume.
    #[test]
    fn unit_integrand_matches_volume(
        n in 2u32..9,
        r_in in 0.0..0.5f64,
        width in 0.3..2.0f64,
    ) {
        let m = RadialMeasure::new(n, r_in, r_in + width).unwrap();
        let got = integrate_radial(|_| 1.0, &m, &QuadConfig::default()).unwrap();
        prop_assert!(got.converged);
        prop_assert!(
            close(got.value, m.volume(), 1e-10, 1e-14),
            "quadrature {} vs volume {}", got.value, m.volume()
        );
    }

    /// For p = 2, h ≡ 1, and a profile with sign-definite curvature, the
    /// gradient energy equals ∫ u |Δu| by parts.
    #[test]
    fn gradient_energy_by_parts(
        amplitude in 0.05..3.0f64,
        n in 2u32..9,
    ) {
        let field = RadialField::new(
            Profile::Parabola { amplitude }, n, 0.0, 1.0, f64::INFINITY, true,
        ).unwrap();
        let w = WeightSpec::new(WeightFamily::Constant { value: 1.0 }, 0.0).unwrap();
        let cfg = QuadConfig::default();
        let grad = weighted_seminorm(&field, &w, IntegrandKind::GradPH, 2.0, &cfg).unwrap();
        let m = RadialMeasure::new(n, 0.0, 1.0).unwrap();
        let parts = integrate_radial(
            |s| { let j = field.jet(s); j.v * laplacian_jet(j, s, n).abs() },
            &m,
            &cfg,
        ).unwrap();
        prop_assert!(
            close(grad.value, parts.value, 1e-8, 1e-12),
            "∫|∇u|² = {} vs ∫u|Δu| = {}", grad.value, parts.value
        );
    }

    /// Rescaling the profile by c multiplies every weighted integral with a
    /// degree-θ homogeneous weight by c^{p+θ}, hence leaves the
    /// left/right ratio of the Hessian-route check invariant.
    #[test]
    fn weighted_integrals_scale_homogeneously(
        amplitude in 0.1..1.0f64,
        n in 2u32..7,
        p in (2.0..5.0f64),
        theta in -0.5..2.0f64,
        c in prop_oneof![Just(0.5), Just(2.0), Just(10.0)],
    ) {
        let field = RadialField::new(
            Profile::Parabola { amplitude }, n, 0.0, 1.0, f64::INFINITY, true,
        ).unwrap();
        let scaled = field.scaled(c).unwrap();
        let w = WeightSpec::new(WeightFamily::PowerLaw { theta }, 0.0).unwrap();
        let cfg = QuadConfig::default();
        let factor = c.powf(p + theta);
        for kind in [IntegrandKind::GradPH, IntegrandKind::HessTH, IntegrandKind::LapTH] {
            let base = weighted_seminorm(&field, &w, kind, p, &cfg).unwrap();
            let big = weighted_seminorm(&scaled, &w, kind, p, &cfg).unwrap();
            // each run is only as accurate as its own error band (for tiny
            // integrals the absolute tolerance floor dominates), so compare
            // within the combined bands
            let band = 3.0 * (big.abs_error_estimate + factor * base.abs_error_estimate);
            prop_assert!(
                (big.value - factor * base.value).abs() <= band.max(1e-15),
                "{}: {} vs {} × {} (band {})",
                kind.name(), big.value, factor, base.value, band
            );
        }
    }

    /// Doubling the panel budget must preserve convergence and keep the two
    /// answers within each other's error bands.
    #[test]
    fn budget_doubling_is_consistent(
        pow in 0.2..0.8f64,
        center in 0.2..0.8f64,
    ) {
        let f = move |x: f64| (x - center).abs().powf(-pow);
        let small = QuadConfig { budget: 20_000, ..QuadConfig::default() };
        let large = QuadConfig { budget: 40_000, ..QuadConfig::default() };
        let a = integrate_1d(f, 0.0, 1.0, &small).unwrap();
        let b = integrate_1d(f, 0.0, 1.0, &large).unwrap();
        if a.converged {
            prop_assert!(b.converged, "more budget may not lose convergence");
            let band = 3.0 * (a.abs_error_estimate + b.abs_error_estimate);
            prop_assert!(
                (a.value - b.value).abs() <= band.max(1e-12),
                "answers drifted apart: {} vs {}", a.value, b.value
            );
        }
    }
}

// ---------------------------------------------------------------------------
// verdict logic
// ---------------------------------------------------------------------------

proptest! {
    /// The three-valued verdict must be sound: `holds` only when the bands
    /// are strictly ordered, `fails` only when strictly reversed.
    #[test]
    fn verdict_bands_are_sound(
        l in 0.0..10.0f64,
        r in 0.0..10.0f64,
        sl in 0.0..0.5f64,
        sr in 0.0..0.5f64,
    ) {
        match decide(l, sl, r, sr) {
            Verdict::Holds => prop_assert!(l <= r),
            Verdict::Fails => prop_assert!(l > r),
            Verdict::Inconclusive => {
                // the bands overlap: neither strict ordering can be certified
                prop_assert!(l + 3.0 * sl > r - 3.0 * sr);
                prop_assert!(l - 3.0 * sl <= r + 3.0 * sr);
            }
        }
    }

    /// Composing jets through `chain` agrees with evaluating the composed
    /// closed form (sin ∘ scale here).
    #[test]
    fn jet_chain_matches_closed_form(s in 0.1..3.0f64, a in 0.2..2.0f64) {
        let x = Jet2::variable(s);
        let composed = (x * a).sin();
        prop_assert!(close(composed.v, (a * s).sin(), 1e-14, 1e-16));
        prop_assert!(close(composed.d1, a * (a * s).cos(), 1e-14, 1e-16));
        prop_assert!(close(composed.d2, -a * a * (a * s).sin(), 1e-13, 1e-16));
    }
}
