//! Standard-library side of `cycloskew`: parallel difference counting,
//! table regeneration, range scans and the JSON-lines catalog.
//!
//! The `cycloskew` binary is a thin clap front end over these modules.

pub mod catalog;
pub mod engine;
pub mod fieldarg;
pub mod tables;

pub use catalog::{read_catalog, scan, spot_check, write_catalog, CatalogEntry, ScanOptions};
pub use engine::Parallel;
pub use tables::{compare_with_published, table_rows, TableId, TableRow, Verification};
