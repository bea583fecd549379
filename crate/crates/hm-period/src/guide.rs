//! The narrative guide, rendered by mdBook from `book/`.
//!
//! mdBook cannot run chapter snippets against this crate by itself, so
//! every chapter is also included here as a doc comment on an empty
//! module. `cargo test --doc` then compiles and runs each fenced code
//! block, which keeps the book and the library from drifting apart.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/potential.md")]
pub mod potential_chapter {}

#[doc = include_str!("../../../book/src/limits.md")]
pub mod limits_chapter {}

#[doc = include_str!("../../../book/src/period.md")]
pub mod period_chapter {}

#[doc = include_str!("../../../book/src/closing.md")]
pub mod closing_chapter {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_chapter {}
