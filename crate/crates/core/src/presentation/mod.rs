//! Generators and defining relations for right ideals of finite co-rank,
//! and the constructions built on top of them.
//!
//! For a right ideal `R` with coset representatives `r_b`, the symbols
//! `t[a,x,b]` stand for `(r_a·x − Σ_c ⟨r_a·x⟩_c r_c)·r_b` and `v[b]` for
//! `r_b`. The free algebra on the `t` symbols plus the span of the `v`
//! symbols carries a right `K⟨X⟩¹`-action `*` lifting multiplication, and
//! `φ(p) = v[1] * p` is a section of the substitution `ψ`. Restricting to
//! `R` and trading `V` for generators `U` of `ψ⁻¹(R) ∩ span(V)` gives the
//! generating set `Y = T ∪ U` and the relations.

mod engine;
mod extension;
mod symbols;
mod udata;

pub use engine::{
    present_right_ideal, simplify, verify_presentation, Construction, DegreeCheck, Presentation, PresentationStats,
    RelationKind, VerificationReport,
};
pub use extension::{
    compose_extension, present_quotient_subalgebra, restrict_ideal_generators, Extension, ExtensionWitness,
    Restriction,
};
pub use symbols::{MixedElement, SymbolTables};
pub use udata::{UData, YElement};
