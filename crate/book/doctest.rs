// The chapters are plain mdbook Markdown. Each one is pulled in as the doc
// comment of an empty module so `cargo test` compiles and runs every
// listing against the real crate. One module per chapter keeps failures
// attributable.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("src/search.md")]
pub mod search {}
#[doc = include_str!("src/conjectures.md")]
pub mod conjectures {}
#[doc = include_str!("src/records.md")]
pub mod records {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
