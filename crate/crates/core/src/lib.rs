//! Two-machine flow shop scheduling: Johnson's rule, the linear-time
//! partial-sorting cascade, probabilistic bounds on the critical prefix,
//! instance generators and a benchmark harness.

pub mod bench;
pub mod error;
pub mod generators;
pub mod instance;
pub mod johnson;
pub mod linear;
pub mod partition;
pub mod probability;
pub mod schedule;
pub mod select;

pub use error::{Error, Result};
pub use instance::{Instance, Job, Sequence, Time};
pub use johnson::{is_johnson_order, johnson_full};
pub use linear::{solve, solve_with, SolvePath, SolveReport};
pub use partition::{partition, Partition};
pub use schedule::{brute_force_optimum, makespan};

/// Version of the instance and report text formats.
pub const FORMAT_VERSION: u32 = 1;

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
