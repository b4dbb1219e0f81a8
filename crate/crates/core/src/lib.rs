pub mod cli;
pub mod cochain;
pub mod cohom;
pub mod config;
pub mod error;
pub mod gmod;
pub mod grp;
pub mod papercheck;
pub mod ss;
pub mod zmod;

pub use config::Limits;
pub use error::{Error, Result};
