//! Compiles and runs every Rust snippet in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/moves.md")]
pub mod moves {}

#[doc = include_str!("../../../book/src/periods.md")]
pub mod periods {}

#[doc = include_str!("../../../book/src/fast-path.md")]
pub mod fast_path {}

#[doc = include_str!("../../../book/src/nim.md")]
pub mod nim {}

#[doc = include_str!("../../../book/src/tools.md")]
pub mod tools {}
