//! Library surface of the CLI crate: family dispatch and the JSON
//! manifest format, shared by the binary and the test suites.

pub mod families;
pub mod manifest;
