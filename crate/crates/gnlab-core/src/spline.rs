//! Piecewise-cubic interpolation.
//!
//! Two interpolants with different guarantees:
//!
//! * [`MonotoneCubic`] — Fritsch–Carlson monotone Hermite interpolation.
//!   Preserves monotonicity of the data (hence positivity of a positive
//!   table), never overshoots, and carries an exact piecewise-polynomial
//!   antiderivative. Used for tabulated weights.
//! * [`NotAKnotSpline`] — C² cubic spline with not-a-knot end conditions.
//!   Reproduces cubic polynomials exactly and gives the most accurate
//!   second derivatives from smooth samples. Used to turn discrete solver
//!   output into a twice-differentiable radial profile.

use crate::error::{Error, Result};

/// Solve a tridiagonal system in place (Thomas algorithm).
///
/// `lower[i]` multiplies x[i-1] in row i (lower[0] unused), `upper[i]`
/// multiplies x[i+1] (upper[n-1] unused). Returns `None` if a pivot
/// degenerates.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Option<Vec<f64>> {
    let n = diag.len();
    assert!(lower.len() == n && upper.len() == n && rhs.len() == n);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    if diag[0] == 0.0 {
        return None;
    }
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * c[i - 1];
        if denom == 0.0 {
            return None;
        }
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    Some(x)
}

fn check_strictly_increasing(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::Degenerate(
            "interpolation needs at least two points".into(),
        ));
    }
    for w in x.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain(format!(
                "abscissae must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

fn find_interval(x: &[f64], q: f64) -> usize {
    // index i with x[i] <= q < x[i+1], clamped to the last interval
    let i = x.partition_point(|&v| v <= q);
    i.saturating_sub(1).min(x.len() - 2)
}

/// Monotonicity-preserving piecewise cubic (Fritsch–Carlson slopes) with an
/// exact antiderivative.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Hermite slopes at the nodes.
    d: Vec<f64>,
    /// cum[i] = integral of the interpolant from x[0] to x[i].
    cum: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_strictly_increasing(&x)?;
        if y.len() != x.len() {
            return Err(Error::Degenerate(format!(
                "need matching lengths, got {} abscissae and {} values",
                x.len(),
                y.len()
            )));
        }
        let n = x.len();
        let mut d = vec![0.0; n];
        if n == 2 {
            let s = (y[1] - y[0]) / (x[1] - x[0]);
            d[0] = s;
            d[1] = s;
        } else {
            let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
            let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] <= 0.0 {
                    d[i] = 0.0;
                } else {
                    // weighted harmonic mean of adjacent secants
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            d[0] = Self::end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = Self::end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }

        // exact antiderivative over whole intervals:
        // ∫ = h (y_i + y_{i+1})/2 + h² (d_i − d_{i+1})/12
        let mut cum = vec![0.0; n];
        for i in 0..n - 1 {
            let hi = x[i + 1] - x[i];
            cum[i + 1] = cum[i]
                + hi * 0.5 * (y[i] + y[i + 1])
                + hi * hi * (d[i] - d[i + 1]) / 12.0;
        }
        Ok(MonotoneCubic { x, y, d, cum })
    }

    /// One-sided three-point end slope, shape-limited as in PCHIP.
    fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
        let mut d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if d * del0 <= 0.0 {
            d = 0.0;
        } else if del0 * del1 < 0.0 && d.abs() > 3.0 * del0.abs() {
            d = 3.0 * del0;
        }
        d
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    fn check_domain(&self, q: f64) -> Result<()> {
        let (a, b) = self.domain();
        if q < a || q > b {
            return Err(Error::Domain(format!(
                "point {q} outside the tabulated range [{a}, {b}]; extrapolation is not allowed"
            )));
        }
        Ok(())
    }

    pub fn eval(&self, q: f64) -> Result<f64> {
        self.check_domain(q)?;
        let i = find_interval(&self.x, q);
        let h = self.x[i + 1] - self.x[i];
        let t = (q - self.x[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(self.y[i] * h00 + h * self.d[i] * h10 + self.y[i + 1] * h01 + h * self.d[i + 1] * h11)
    }

    pub fn eval_deriv(&self, q: f64) -> Result<f64> {
        self.check_domain(q)?;
        let i = find_interval(&self.x, q);
        let h = self.x[i + 1] - self.x[i];
        let t = (q - self.x[i]) / h;
        let t2 = t * t;
        let dh00 = (6.0 * t2 - 6.0 * t) / h;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t2 + 6.0 * t) / h;
        let dh11 = 3.0 * t2 - 2.0 * t;
        Ok(self.y[i] * dh00 + self.d[i] * dh10 + self.y[i + 1] * dh01 + self.d[i + 1] * dh11)
    }

    /// Integral of the interpolant from the first abscissa to `q` (exact for
    /// the piecewise cubic).
    pub fn integral_from_start(&self, q: f64) -> Result<f64> {
        self.check_domain(q)?;
        let i = find_interval(&self.x, q);
        let h = self.x[i + 1] - self.x[i];
        let t = (q - self.x[i]) / h;
        let (t2, t3, t4) = (t * t, t * t * t, t * t * t * t);
        // integrals of the Hermite basis over [0, t], scaled by h
        let i00 = 0.5 * t4 - t3 + t;
        let i10 = 0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2;
        let i01 = -0.5 * t4 + t3;
        let i11 = 0.25 * t4 - t3 / 3.0;
        Ok(self.cum[i]
            + h * (self.y[i] * i00
                + h * self.d[i] * i10
                + self.y[i + 1] * i01
                + h * self.d[i + 1] * i11))
    }

    pub fn values(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }
}

/// C² cubic spline with not-a-knot end conditions (third derivative
/// continuous across the second and second-to-last knots). Exact on cubic
/// polynomials.
#[derive(Debug, Clone)]
pub struct NotAKnotSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl NotAKnotSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_strictly_increasing(&x)?;
        if y.len() != x.len() {
            return Err(Error::Degenerate(format!(
                "need matching lengths, got {} abscissae and {} values",
                x.len(),
                y.len()
            )));
        }
        let n = x.len();
        if n < 4 {
            return Err(Error::Degenerate(
                "not-a-knot spline needs at least four points".into(),
            ));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();

        // Unknowns: interior second derivatives M_1 .. M_{n-2}; the end
        // values follow from the not-a-knot relations
        //   M_0     = M_1     - h_0     (M_2    - M_1    ) / h_1
        //   M_{n-1} = M_{n-2} + h_{n-2} (M_{n-2} - M_{n-3}) / h_{n-3}
        let k = n - 2;
        let mut lower = vec![0.0; k];
        let mut diag = vec![0.0; k];
        let mut upper = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        for (row, i) in (1..n - 1).enumerate() {
            let r = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
            rhs[row] = r;
            if row == 0 {
                // substitute the left not-a-knot relation for M_0
                diag[row] = 2.0 * (h[0] + h[1]) + h[0] + h[0] * h[0] / h[1];
                upper[row] = h[1] - h[0] * h[0] / h[1];
            } else if row == k - 1 {
                // substitute the right not-a-knot relation for M_{n-1}
                lower[row] = h[n - 3] - h[n - 2] * h[n - 2] / h[n - 3];
                diag[row] =
                    2.0 * (h[n - 3] + h[n - 2]) + h[n - 2] + h[n - 2] * h[n - 2] / h[n - 3];
            } else {
                lower[row] = h[i - 1];
                diag[row] = 2.0 * (h[i - 1] + h[i]);
                upper[row] = h[i];
            }
        }
        let interior = solve_tridiagonal(&lower, &diag, &upper, &rhs)
            .ok_or_else(|| Error::Degenerate("singular spline system".into()))?;

        let mut m = vec![0.0; n];
        m[1..n - 1].copy_from_slice(&interior);
        m[0] = m[1] - h[0] * (m[2] - m[1]) / h[1];
        m[n - 1] = m[n - 2] + h[n - 2] * (m[n - 2] - m[n - 3]) / h[n - 3];
        Ok(NotAKnotSpline { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    fn pieces(&self, q: f64) -> (usize, f64, f64, f64) {
        let i = find_interval(&self.x, q);
        let h = self.x[i + 1] - self.x[i];
        (i, h, q - self.x[i], self.x[i + 1] - q)
    }

    pub fn eval(&self, q: f64) -> f64 {
        let (i, h, dl, dr) = self.pieces(q);
        self.m[i] * dr * dr * dr / (6.0 * h)
            + self.m[i + 1] * dl * dl * dl / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * dr
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0) * dl
    }

    pub fn deriv1(&self, q: f64) -> f64 {
        let (i, h, dl, dr) = self.pieces(q);
        -self.m[i] * dr * dr / (2.0 * h)
            + self.m[i + 1] * dl * dl / (2.0 * h)
            - (self.y[i] / h - self.m[i] * h / 6.0)
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0)
    }

    pub fn deriv2(&self, q: f64) -> f64 {
        let (i, h, dl, dr) = self.pieces(q);
        self.m[i] * dr / h + self.m[i + 1] * dl / h
    }
}
