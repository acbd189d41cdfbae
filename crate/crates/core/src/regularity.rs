//! Declared regularity of test functions.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    /// Hölder continuous with the given exponent in `(0, 1]`.
    Holder(f64),
}

impl Smoothness {
    /// A Hölder modulus `r^beta` is Dini (`int_0^1 omega(r)/r dr < inf`) iff `beta > 0`.
    pub fn is_dini(&self) -> bool {
        match *self {
            Smoothness::Smooth => true,
            Smoothness::Holder(beta) => beta > 0.0,
        }
    }
}
