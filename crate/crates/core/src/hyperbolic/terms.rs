//! Symbolic sums closed under the radial operator `D = (1/sinh r) d/dr`.
//!
//! A term is
//! `coeff * t^t_pow * r^(r_pow + base) * coth^b(r) * csch^c(r) * [e^(-r^2/4t)] * [K_(nu+j)(scale r)]`
//! and the whole sum carries a common factor `e^(-rate t)`. Differentiation
//! in `r` maps this family into itself, so `D^m` of the heat-kernel seed or of
//! `r^-nu K_nu(c r)` can be expanded exactly and evaluated in log space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel_k_scaled;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialTerm {
    pub coeff: f64,
    pub t_pow: i32,
    pub r_pow: i32,
    pub coth_pow: u32,
    pub csch_pow: u32,
    /// Factor `e^(-r^2 / 4t)` present.
    pub gauss: bool,
    /// Factor `K_(nu + j)(scale * r)` present, with `j` the shift.
    pub bessel_shift: Option<i32>,
}

impl RadialTerm {
    fn key(&self) -> (i32, i32, u32, u32, bool, Option<i32>) {
        (self.t_pow, self.r_pow, self.coth_pow, self.csch_pow, self.gauss, self.bessel_shift)
    }

    fn with_coeff(self, coeff: f64) -> Self {
        RadialTerm { coeff, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselFactor {
    pub order: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSum {
    pub terms: Vec<RadialTerm>,
    /// Real power of `r` shared by every term.
    pub r_base_pow: f64,
    pub bessel: Option<BesselFactor>,
    /// Common factor `e^(-rate t)`.
    pub rate: f64,
}

const ONE: RadialTerm = RadialTerm {
    coeff: 1.0,
    t_pow: 0,
    r_pow: 0,
    coth_pow: 0,
    csch_pow: 0,
    gauss: false,
    bessel_shift: None,
};

impl TermSum {
    /// `e^(-rate t) e^(-r^2/4t)`.
    pub fn gaussian(rate: f64) -> Self {
        TermSum {
            terms: vec![RadialTerm { gauss: true, ..ONE }],
            r_base_pow: 0.0,
            bessel: None,
            rate,
        }
    }

    /// `e^(-rate t) (r / sinh r) e^(-r^2/4t)`.
    pub fn gaussian_over_sinh(rate: f64) -> Self {
        TermSum {
            terms: vec![RadialTerm {
                gauss: true,
                r_pow: 1,
                csch_pow: 1,
                ..ONE
            }],
            r_base_pow: 0.0,
            bessel: None,
            rate,
        }
    }

    /// `r^-nu K_nu(scale r)`.
    pub fn bessel_seed(nu: f64, scale: f64) -> Result<Self> {
        if !(nu >= 0.0 && scale > 0.0) {
            return Err(Error::domain("TermSum::bessel_seed", "need nu >= 0 and scale > 0"));
        }
        Ok(TermSum {
            terms: vec![RadialTerm {
                bessel_shift: Some(0),
                ..ONE
            }],
            r_base_pow: -nu,
            bessel: Some(BesselFactor { order: nu, scale }),
            rate: 0.0,
        })
    }

    pub fn scaled(mut self, c: f64) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    /// Merge like terms and drop exact zeros.
    pub fn simplify(mut self) -> Self {
        self.terms.sort_by_key(|t| t.key());
        let mut out: Vec<RadialTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match out.last_mut() {
                Some(last) if last.key() == t.key() => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0.0);
        self.terms = out;
        self
    }

    /// `d/dr` of the sum.
    pub fn d_dr(&self) -> TermSum {
        let mut out = Vec::with_capacity(self.terms.len() * 5);
        for &t in &self.terms {
            // power of r, including the shared real part
            let p = t.r_pow as f64 + self.r_base_pow;
            if p != 0.0 {
                out.push(RadialTerm {
                    r_pow: t.r_pow - 1,
                    ..t.with_coeff(t.coeff * p)
                });
            }
            // coth^b -> -b coth^(b-1) csch^2
            if t.coth_pow > 0 {
                out.push(RadialTerm {
                    coth_pow: t.coth_pow - 1,
                    csch_pow: t.csch_pow + 2,
                    ..t.with_coeff(-t.coeff * t.coth_pow as f64)
                });
            }
            // csch^c -> -c coth csch^c
            if t.csch_pow > 0 {
                out.push(RadialTerm {
                    coth_pow: t.coth_pow + 1,
                    ..t.with_coeff(-t.coeff * t.csch_pow as f64)
                });
            }
            // e^(-r^2/4t) -> -(1/2) t^-1 r e^(-r^2/4t)
            if t.gauss {
                out.push(RadialTerm {
                    t_pow: t.t_pow - 1,
                    r_pow: t.r_pow + 1,
                    ..t.with_coeff(-0.5 * t.coeff)
                });
            }
            // d/dr K_mu(c r) = -c K_(mu+1)(c r) + (mu / r) K_mu(c r)
            if let (Some(j), Some(b)) = (t.bessel_shift, self.bessel) {
                let mu = b.order + j as f64;
                out.push(RadialTerm {
                    bessel_shift: Some(j + 1),
                    ..t.with_coeff(-b.scale * t.coeff)
                });
                if mu != 0.0 {
                    out.push(RadialTerm {
                        r_pow: t.r_pow - 1,
                        ..t.with_coeff(mu * t.coeff)
                    });
                }
            }
        }
        TermSum {
            terms: out,
            r_base_pow: self.r_base_pow,
            bessel: self.bessel,
            rate: self.rate,
        }
        .simplify()
    }

    /// `D = (1/sinh r) d/dr`.
    pub fn hyperbolic_d(&self) -> TermSum {
        let mut s = self.d_dr();
        for t in &mut s.terms {
            t.csch_pow += 1;
        }
        s
    }

    /// `D^m`.
    pub fn hyperbolic_d_pow(&self, m: usize) -> TermSum {
        (0..m).fold(self.clone(), |acc, _| acc.hyperbolic_d())
    }

    /// Evaluate at `r > 0`, `t > 0`. Every term is assembled in log space
    /// so large powers of `csch` and tiny Gaussians do not overflow.
    pub fn eval(&self, r: f64, t: f64) -> Result<f64> {
        self.eval_with_magnitude(r, t).map(|(v, _)| v)
    }

    /// The value together with the sum of absolute values of the terms,
    /// which bounds the cancellation in the value.
    pub fn eval_with_magnitude(&self, r: f64, t: f64) -> Result<(f64, f64)> {
        self.eval_scaled(r, t, 0.0)
    }

    /// `e^ln_factor` times the sum, with the factor folded into each term
    /// before exponentiation. Returns the value and the absolute-term sum.
    pub fn eval_scaled(&self, r: f64, t: f64, ln_factor: f64) -> Result<(f64, f64)> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::domain("TermSum::eval", format!("need r > 0, got {r}")));
        }
        if !(t > 0.0 && t.is_finite()) && self.terms.iter().any(|x| x.gauss || x.t_pow != 0) {
            return Err(Error::domain("TermSum::eval", format!("need t > 0, got {t}")));
        }
        let ln_r = r.ln();
        let ln_t = if t > 0.0 { t.ln() } else { 0.0 };
        let ln_sinh = ln_sinh(r);
        let ln_coth = ln_coth(r);
        let max_shift = self.terms.iter().filter_map(|x| x.bessel_shift).max().unwrap_or(-1);
        // ln K_(nu+j)(c r) for every shift in use
        let mut ln_k = Vec::new();
        if let Some(b) = self.bessel {
            let x = b.scale * r;
            for j in 0..=max_shift.max(0) {
                let k = bessel_k_scaled(b.order + j as f64, x)?;
                ln_k.push(k.ln() - x);
            }
        }
        let gauss_ln = if t > 0.0 { -r * r / (4.0 * t) } else { 0.0 };
        let mut sum = 0.0;
        let mut mag = 0.0;
        for x in &self.terms {
            let mut l = x.t_pow as f64 * ln_t + (x.r_pow as f64 + self.r_base_pow) * ln_r
                + x.coth_pow as f64 * ln_coth
                - x.csch_pow as f64 * ln_sinh
                - self.rate * t
                + ln_factor;
            if x.gauss {
                l += gauss_ln;
            }
            if let Some(j) = x.bessel_shift {
                l += ln_k[j as usize];
            }
            let v = x.coeff * l.exp();
            sum += v;
            mag += v.abs();
        }
        if sum.is_finite() && mag.is_finite() {
            Ok((sum, mag))
        } else {
            Err(Error::NonFinite { at: r })
        }
    }
}

pub(crate) fn ln_sinh(r: f64) -> f64 {
    if r > 20.0 {
        r - std::f64::consts::LN_2 + (-(-2.0 * r).exp()).ln_1p()
    } else {
        r.sinh().ln()
    }
}

fn ln_coth(r: f64) -> f64 {
    // coth r = 1 + 2/(e^(2r) - 1)
    (2.0 / (2.0 * r).exp_m1()).ln_1p()
}
