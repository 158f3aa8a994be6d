//! Exact computation with rings of differential operators on polynomial
//! algebras over fields of prime characteristic, and with their modules.
//!
//! ```
//! use dpn::modrep::{zoo, ZooParams};
//!
//! let p2 = zoo(&ZooParams { n: Some(2), ..ZooParams::family("Pn", 3) })?;
//! assert_eq!(p2.rep.dims(4)?, vec![1, 3, 6, 10, 15]);
//! # Ok::<(), dpn::Error>(())
//! ```

pub mod arith;
pub mod checks;
pub mod classify;
pub mod coeff;
pub mod dring;
pub mod error;
pub mod modrep;
pub mod series;
pub mod text;
pub mod witness;

pub use error::{Error, Result};

/// The guide's snippets, run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
