//! The guide's chapters, compiled as doc-tests so every snippet in the book
//! runs under `cargo test`.  One module per chapter keeps failures easy to
//! trace back to their page.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/golden.md")]
pub mod golden {}
#[doc = include_str!("../../../book/src/tree.md")]
pub mod tree {}
#[doc = include_str!("../../../book/src/itinerary.md")]
pub mod itinerary {}
#[doc = include_str!("../../../book/src/cutting.md")]
pub mod cutting {}
#[doc = include_str!("../../../book/src/flow.md")]
pub mod flow {}
#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}
#[doc = include_str!("../../../book/src/billiards.md")]
pub mod billiards {}
#[doc = include_str!("../../../book/src/polytope.md")]
pub mod polytope {}
#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
