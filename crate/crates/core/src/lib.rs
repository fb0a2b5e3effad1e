//! Exact Boolean-function complexity toolkit.
//!
//! Truth tables up to 24 variables, the query measures (sensitivity, block
//! sensitivity, certificate complexity, decision-tree depth, alternating
//! number), exact Möbius/Fourier/ANF spectra, communication matrices of
//! AND- and XOR-composed functions, constructive certificates, trees and
//! covers, and sweeps that check the inequalities linking all of these over
//! whole function spaces.

pub mod caps;
pub mod comm;
pub mod error;
pub mod extremal;
pub mod families;
pub mod measures;
pub mod spectra;
pub mod table;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use table::{Point, Restriction, TruthTable};
