//! Exact umbral and Riordan-array machinery for Sheffer polynomial sequences
//! and their 2-iterated compositions.

pub mod determinantal;
pub mod error;
pub mod families;
pub mod iterated;
pub mod monomiality;
pub mod polynomial;
pub mod powerseries;
pub mod rational;
pub mod riordan;
pub mod sheffer;
pub mod specparse;

pub use error::{Error, Result};
pub use polynomial::Polynomial;
pub use powerseries::{FormalPowerSeries, ReferenceSequence};
pub use rational::Rational;
pub use riordan::{RiordanArray, Triangle};
pub use sheffer::{PolynomialSequence, Route, ShefferPair};
