//! Reference tables, an exhaustive census and the acceptance suite shared by
//! the `coxtori` binary and the acceptance test.

pub mod expected;
pub mod oracle;
pub mod verify;
