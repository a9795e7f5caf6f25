//! The chapters of the guide in `book/`, included here so that every code
//! listing runs under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/patterns.md")]
pub mod patterns {}
#[doc = include_str!("../../../book/src/bruhat.md")]
pub mod bruhat {}
#[doc = include_str!("../../../book/src/kazhdan-lusztig.md")]
pub mod kazhdan_lusztig {}
#[doc = include_str!("../../../book/src/properties.md")]
pub mod properties {}
#[doc = include_str!("../../../book/src/arrangements.md")]
pub mod arrangements {}
#[doc = include_str!("../../../book/src/coxeter.md")]
pub mod coxeter {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
