pub mod analysis;
pub mod cli;
pub mod decks;
pub mod device;
pub mod error;
pub mod io;
pub mod network;
pub mod neuron;
pub mod numerics;
pub mod quantum;
pub mod ode;
pub mod units;

pub use error::{Error, Result};
