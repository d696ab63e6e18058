//! Simulation core for a micro-scale implant ("biomote") that talks to a
//! handheld reader over an inductive backscatter link.
//!
//! The crate is split by layer:
//!
//! * [`link`]: coil electrical model, reflected impedance and the round-trip
//!   backscatter budget.
//! * [`fec`]: Hamming(15,11) and Reed-Solomon(31,26) over GF(32).
//! * [`phy`]: ASK/BPSK over AWGN, Monte Carlo BER and BER-vs-distance curves.
//! * [`mac`]: binary-tree selection count, framed slotted ALOHA and CDMA.
//! * [`harness`]: the key/value config format and the CSV pipelines used by
//!   the `biolink` command-line tool.
//!
//! All randomness is driven by explicit 64-bit seeds; see [`seed`].

pub mod error;
pub mod fec;
pub mod harness;
pub mod link;
pub mod mac;
pub mod phy;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};
pub use fec::{gf32::Gf32, CodeScheme};
pub use link::{Coil, CoilKind, LinkBudget, LinkConfig, LoadImpedance, NoiseModel};
pub use mac::{DeploymentGeometry, MacScenario, SpreadingFamily};
pub use phy::{ModScheme, PhyConfig};
