//! Command-line front end: JSON documents, DOT export, batch tables.

pub mod app;
pub mod doc;
pub mod error;
pub mod table;

pub use app::run;
pub use doc::SCHEMA_VERSION;
pub use error::CliError;
