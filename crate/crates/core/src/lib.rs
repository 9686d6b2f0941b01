pub mod bounds;
mod dd;
pub mod error;
pub mod exact;
pub mod functions;
pub mod hahn;
pub mod jacobi;
pub mod lsq;
pub mod specfun;

pub use error::{Error, Result};
pub use functions::FunctionSpec;
