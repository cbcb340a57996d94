//! SyGuS 2.1 toolkit: reading, validation, desugaring, response checking,
//! weighted grammars, the external oracle protocol and a small enumerative
//! solver.

pub mod diag;
pub mod eval;
pub mod grammar;
pub mod logics;
pub mod oracle;
pub mod reader;
pub mod session;
pub mod syntax;
pub mod theories;
pub mod verify;

/// Dialect switches shared by the parser and the checkers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Drop `distinct` from the core theory.
    pub strict: bool,
    /// Accept chained comparisons and the relaxed oracle-constraint forms.
    pub permissive: bool,
    /// Reject raw newlines inside string literals.
    pub reject_string_newlines: bool,
}
