//! Distance colorings of the binary hypercube `V_n`.
//!
//! Colorings come from cosets of binary linear codes, Gray images of
//! Z4-linear codes (Preparata family), and codes with a forbidden weight.
//! Every construction is checked exhaustively before it is returned; see
//! [`verify`]. The [`bounds`] module evaluates lower and upper bounds in
//! exact integer arithmetic, and [`oracle`] holds brute-force ground truth
//! for tiny cubes.

pub mod bounds;
mod certificate;
pub mod cli;
pub mod error;
pub mod forbidden;
pub mod gf2;
pub mod oracle;
pub mod partition;
pub mod verify;
pub mod z4;

pub use error::{Error, Guard, Result};
pub use forbidden::ForbiddenLinearCode;
pub use gf2::{BinaryLinearCode, BinaryMatrix, BitVector};
pub use partition::{ColoringCertificate, ColoringMode, HypercubePartition, PartitionMode};
pub use verify::{verify_coloring, verify_partition, Strategy, VerificationReport};
pub use z4::{Z4LinearCode, Z4Polynomial, Z4Vector};
