pub mod error;
pub mod euclid;
pub mod hyperbolic;
pub mod io;
pub mod par;
pub mod quad;
pub mod regularity;
pub mod spectral;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
