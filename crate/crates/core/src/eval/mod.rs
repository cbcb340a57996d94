//! Values, substitution and evaluation.

pub mod bv;
mod interp;
pub mod strings;
pub mod subst;
mod value;

pub use interp::{euclid_div_mod, to_i64, Def, EvalError, EvalResult, Interp, DEFAULT_FUEL};
pub use subst::{beta, eliminate_lets, expand_macros, expand_macros_shadowed, substitute, substitute_bindings, Binding};
pub use value::{mask, value_from_sexpr, value_of_literal_term, Value};
