pub mod bounds;
pub mod error;
pub mod fibration;
pub mod linear;
pub mod poly;
pub mod regularity;
pub mod singgraph;
pub mod zerodim;

mod ser;

pub use error::{Error, Result};
