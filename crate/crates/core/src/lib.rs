pub mod error;
pub mod exact;
pub mod lie;
pub mod conformal;
pub mod conformal_rb;
pub mod ccybe;
pub mod cli;
pub mod schema;

pub use error::{Error, Result};
