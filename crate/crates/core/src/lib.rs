//! Exact arithmetic in the bicyclic extensions `B_ω^F` over finite families
//! of rays, together with the injective endomorphisms of the three-ray
//! extension and brute-force oracles that check their laws on finite windows.

pub mod endo;
pub mod error;
pub mod oracle;
pub mod semigroup;
pub mod suite;

pub use endo::{NormalForm, SdPair};
pub use error::{Error, ParseError, Result};
pub use oracle::{Report, Status, TabulatedEndo};
pub use semigroup::{Elem, Family, Ray, Window};

/// The family `{[0), [1), [2)}`.
pub fn three_rays() -> Family {
    Family::canonical(3).expect("three rays form an omega-closed family")
}
