pub mod bessel;
pub mod disc_modes;
pub mod eigenforms;
pub mod error;
pub mod gridfile;
pub mod quadrature;
pub mod spectral_ops;
pub mod spectrum;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
