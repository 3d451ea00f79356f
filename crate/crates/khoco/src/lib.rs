//! IO, parallel execution, fixtures and the verification suite on top
//! of `khoco-core`.

pub mod exec;
pub mod fixtures;
pub mod io;
pub mod verify;

pub use exec::{DeadlineBudget, RayonExecutor};
pub use io::{load_diagram, parse_diagram, save_diagram, IoError};
pub use verify::{run_checks, Check, Status, VerificationRecord, CHECKS};
