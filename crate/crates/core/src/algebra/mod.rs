//! Free associative algebras `K⟨X⟩` and `K⟨X⟩¹`.

mod alphabet;
mod hom;
mod membership;
mod parse;
mod polynomial;

pub use alphabet::{is_valid_name, Alphabet};
pub use hom::{apply_hom, AlgebraHom};
pub use membership::{
    ideal_membership_bounded, membership_search, MembershipCertificate, Side, Summand, MAX_SEARCH_ROWS,
};
pub use parse::{parse_poly, parse_scalar};
pub use polynomial::{enumerate_words, Polynomial, Word};
