pub mod criteria;
pub mod error;
pub mod exactla;
pub mod koszul;
pub mod report;
pub mod resolve;
pub mod ringcore;
pub mod series;

pub use error::{Error, Result};
