pub mod characters_lfunctions;
pub mod error;
pub mod euler_barnes;
pub mod exact_numbers;
pub mod padic_integration;
pub mod polynomial;
pub mod qnum;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
