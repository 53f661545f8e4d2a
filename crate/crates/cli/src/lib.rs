//! Library side of the command-line tool: option parsing, S-box ingestion,
//! the bent scan, the Walsh benchmark and the family subcommands.

pub mod bench;
pub mod family;
pub mod ingest;
pub mod opts;
pub mod scan;
