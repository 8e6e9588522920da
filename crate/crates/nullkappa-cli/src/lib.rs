//! Library surface of the nullkappa CLI: spec-file parsing, report
//! rendering, the random domain corpus, and the verification suites.
//! The binary in `main.rs` is a thin wrapper over these.

pub mod corpus;
pub mod report;
pub mod specfile;
pub mod suites;
pub mod sweep;
