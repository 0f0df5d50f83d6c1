//! Exact weight-enumerator tools for bounding k-uniform and absolutely maximally
//! entangled (AME) pure states.

pub mod enumerators;
pub mod error;
pub mod exact;
pub mod hetero;
pub mod oracle;
pub mod uniform_bounds;

pub use error::{Error, Result};
pub use exact::{GaussRat, Rat};
