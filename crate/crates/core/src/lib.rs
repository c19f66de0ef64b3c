pub mod delta;
pub mod error;
pub mod hyp2f1;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod verify;

mod dd;

pub use error::{Error, Result};
