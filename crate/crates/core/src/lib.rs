pub mod error;
pub mod gppt;
pub mod lcpcone;
pub mod numkern;
pub mod verify;

pub use error::{Error, Result};
pub use numkern::{Matrix, PredicateVerdict, ToleranceConfig, C64};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    pub struct Overview;
    #[doc = include_str!("../../../book/src/numkern.md")]
    pub struct Numkern;
    #[doc = include_str!("../../../book/src/transforms.md")]
    pub struct Transforms;
    #[doc = include_str!("../../../book/src/classifiers.md")]
    pub struct Classifiers;
    #[doc = include_str!("../../../book/src/verify.md")]
    pub struct Verify;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
