//! Finite descriptions of right ideals, ideals and subalgebras of finite
//! co-rank.

mod algebra_rep;
mod cyclic;

use serde::{Deserialize, Serialize};

pub use algebra_rep::{AlgebraRep, ClosureMode, ReducedIdeal};
pub use cyclic::CyclicModuleRep;

/// What kind of object a representation describes, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealClass {
    SubmoduleOnly,
    Subalgebra,
    RightIdeal,
    TwoSidedIdeal,
}

impl IdealClass {
    pub fn describe(self) -> &'static str {
        match self {
            IdealClass::SubmoduleOnly => "submodule only (not closed under products)",
            IdealClass::Subalgebra => "subalgebra",
            IdealClass::RightIdeal => "right ideal (not two-sided)",
            IdealClass::TwoSidedIdeal => "two-sided ideal",
        }
    }
}
