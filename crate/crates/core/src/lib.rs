//! Exact-arithmetic machinery for excluding Shimura subvarieties of
//! SU(n,1)- and SO(n,2)-type from the Torelli locus.
//!
//! The crate is organised bottom-up:
//!
//! * [`weights`] enumerates weight multisets of exterior powers and
//!   (half-)spin representations and branches them to the curve `sl2`;
//! * [`clifford`] is an exact Clifford-algebra kernel for diagonal forms;
//! * [`params`] validates the arithmetic data of a Shimura subdatum;
//! * [`higgs_rank`] turns a datum into ranks of the ample and unitary parts
//!   of the canonical Higgs bundle, on the subvariety and on a curve;
//! * [`hn_slope`] computes Harder–Narasimhan polygons and the two
//!   slope-inequality bounds on the unitary rank;
//! * [`exclusion`] combines everything into verdicts and certificates;
//! * [`verify`] bundles the exhaustive self-checks run by the CLI and the
//!   acceptance suite.
//!
//! Every decision is made with exact rationals; no floating point value
//! ever reaches a verdict.

pub mod arith;
pub mod clifford;
pub mod error;
pub mod exclusion;
pub mod higgs_rank;
pub mod hn_slope;
pub mod params;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
