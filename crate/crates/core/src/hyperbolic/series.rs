//! Power series in `w = cosh r - 1` for small radii.
//!
//! Since `dw/dr = sinh r`, the operator `(1/sinh r) d/dr` is plain `d/dw`,
//! so repeated application near `r = 0` has none of the cancellation that
//! the closed-form expansion suffers there.

/// Number of retained coefficients.
const LEN: usize = 24;

/// Truncated power series in `w`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Series(pub Vec<f64>);

impl Series {
    fn zero() -> Self {
        Series(vec![0.0; LEN])
    }

    fn one() -> Self {
        let mut s = Series::zero();
        s.0[0] = 1.0;
        s
    }

    fn deriv(&self) -> Self {
        let mut out = Series::zero();
        for k in 1..self.0.len() {
            out.0[k - 1] = k as f64 * self.0[k];
        }
        out
    }

    fn mul(&self, other: &Series) -> Self {
        let mut out = Series::zero();
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate().take(LEN - i) {
                out.0[i + j] += a * b;
            }
        }
        out
    }

    fn add(&self, other: &Series) -> Self {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Series) -> Self {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn eval(&self, w: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * w + c)
    }
}

/// Coefficients of `r^2` as a series in `w`, from
/// `w (2 + w) y'' + (1 + w) y' = 2`.
fn r_squared() -> Series {
    let mut a = Series::zero();
    a.0[1] = 2.0;
    for k in 1..LEN - 1 {
        let kf = k as f64;
        a.0[k + 1] = -kf * kf * a.0[k] / ((kf + 1.0) * (2.0 * kf + 1.0));
    }
    a
}

/// `r / sinh r = sqrt(r^2 / (w (2 + w)))` as a series in `w`.
pub(crate) fn r_over_sinh() -> Series {
    let y = r_squared();
    // y / w
    let mut q = Series::zero();
    for k in 0..LEN - 1 {
        q.0[k] = y.0[k + 1];
    }
    // divide by (2 + w)
    let mut d = Series::zero();
    for k in 0..LEN {
        let prev = if k > 0 { d.0[k - 1] } else { 0.0 };
        d.0[k] = (q.0[k] - prev) / 2.0;
    }
    // square root, leading coefficient 1
    let mut s = Series::zero();
    s.0[0] = 1.0;
    for k in 1..LEN {
        let cross: f64 = (1..k).map(|j| s.0[j] * s.0[k - j]).sum();
        s.0[k] = (d.0[k] - cross) / 2.0;
    }
    s
}

/// `D^m (seed * e^(-r^2/4t)) = e^(-r^2/4t) * sum_j coeffs[j](w) u^j` with
/// `u = 1/(2t)`. The seed is `1` or `r / sinh r`.
#[derive(Debug, Clone)]
pub(crate) struct GaussianDerivative {
    pub coeffs: Vec<Series>,
}

impl GaussianDerivative {
    pub(crate) fn new(m: usize, over_sinh: bool) -> Self {
        let phi = r_over_sinh();
        let mut q = vec![if over_sinh { phi.clone() } else { Series::one() }];
        for _ in 0..m {
            // Q <- Q' - u phi Q
            let mut next = vec![Series::zero(); q.len() + 1];
            for (j, c) in q.iter().enumerate() {
                next[j] = next[j].add(&c.deriv());
                next[j + 1] = next[j + 1].sub(&phi.mul(c));
            }
            q = next;
        }
        GaussianDerivative { coeffs: q }
    }

    /// Polynomial part at `w` and `u`.
    pub(crate) fn poly(&self, w: f64, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c.eval(w))
    }
}

/// `cosh r - 1` without cancellation.
pub(crate) fn cosh_m1(r: f64) -> f64 {
    let h = (0.5 * r).sinh();
    2.0 * h * h
}
