//! Query-model simulation of quantum maximum finding.
//!
//! The crate builds up, bottom to top:
//!
//! * [`qcore`]: an N-dimensional statevector with the Grover iterate,
//!   measurement and a query ledger.
//! * [`search`]: exponential searching for an unknown number of marked items
//!   and the threshold extremum finder over a discrete sequence.
//! * [`holder`]: Hölder-class functions, subdivision grids, Taylor local models
//!   and the disjoint-support bump family.
//! * [`maximizer`]: the quantum maximizer for Hölder functions (local Taylor
//!   maxima per cube, discrete maximum found quantumly).
//! * [`baselines`]: classical deterministic and randomized maximizers.
//! * [`reduction`]: the OR-of-bits reduction through any function maximizer.
//! * [`bench`]: seeded trial batches, error quantiles, log-log fits and CSV output.
//!
//! Costs are counted in the query model: one Grover iteration is one quantum
//! query regardless of how much work the classical simulation does.

pub mod baselines;
pub mod bench;
mod error;
pub mod holder;
pub mod maximizer;
pub mod qcore;
pub mod reduction;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
pub use qcore::{QueryLedger, StateVector};
pub use search::{MaxResult, SearchParams};
