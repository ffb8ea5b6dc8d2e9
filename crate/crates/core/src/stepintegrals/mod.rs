//! Exact evaluation of integrals of pi, theta, psi and Pi, identity checks,
//! and sign sweeps over prime jumps.

mod identity;
mod report;
mod sweep;
mod walk;

pub use identity::{check_identities, check_identity, IdentityCheck, IdentityId};
pub use report::{
    evaluate, report_from_prefix, write_csv, IntegralErrors, IntegralReport, A1, A2, CSV_COLUMNS, CSV_VERSION,
};
pub use sweep::{sign_sweep, SignStat, SignSweep, LI_MINUS_PI_LOWER};
pub use walk::{walk, WalkValues};

#[cfg(test)]
mod tests;
