//! Exact invariant polynomials, minimal-element tests and linear preserver
//! families for representations whose ring of invariants is generated by one
//! form.
//!
//! Everything is computed exactly over the rationals or a prime field `F_p`
//! with `p >= 5`. See the guide in `book/` for a tour.

pub mod bruteforce;
pub mod corollary;
pub mod error;
pub mod field;
pub mod forms;
pub mod matrix;
pub mod minimality;
pub mod multilinear;
pub mod poly;
pub mod preservers;
pub mod rep;
pub mod sampling;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, Ring};
pub use forms::Line;
pub use matrix::Matrix;
pub use poly::Poly;
pub use preservers::PreserverElement;
pub use rep::{RepVector, Space};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/multilinear.md")]
    mod multilinear {}
    #[doc = include_str!("../../../book/src/minimality.md")]
    mod minimality {}
    #[doc = include_str!("../../../book/src/preservers.md")]
    mod preservers {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/bruteforce.md")]
    mod bruteforce {}
}
