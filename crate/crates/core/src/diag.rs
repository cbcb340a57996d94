//! Diagnostics shared by every checking stage.

use std::fmt;

use serde::Serialize;

use crate::reader::{ReadError, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Code {
    Read,
    Syntax,
    UnknownCommand,
    Arity,
    Reserved,
    Order,
    DupSymbol,
    Unbound,
    Sort,
    NotBool,
    LogicUnknown,
    LogicTerm,
    LogicGrammar,
    LogicSpecial,
    LogicCmd,
    GrammarDecl,
    GrammarSort,
    FeatureGated,
    Macro,
    Inv,
    Chc,
    Oracle,
    Opt,
    Weight,
    Datatype,
    Response,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Read => "E-READ",
            Code::Syntax => "E-SYNTAX",
            Code::UnknownCommand => "E-UNKNOWN-COMMAND",
            Code::Arity => "E-ARITY",
            Code::Reserved => "E-RESERVED",
            Code::Order => "E-ORDER",
            Code::DupSymbol => "E-DUP-SYMBOL",
            Code::Unbound => "E-UNBOUND",
            Code::Sort => "E-SORT",
            Code::NotBool => "E-NOT-BOOL",
            Code::LogicUnknown => "E-LOGIC-UNKNOWN",
            Code::LogicTerm => "E-LOGIC-TERM",
            Code::LogicGrammar => "E-LOGIC-GRAMMAR",
            Code::LogicSpecial => "E-LOGIC-SPECIAL",
            Code::LogicCmd => "E-LOGIC-CMD",
            Code::GrammarDecl => "E-GRAMMAR-DECL",
            Code::GrammarSort => "E-GRAMMAR-SORT",
            Code::FeatureGated => "E-FEATURE-GATED",
            Code::Macro => "E-MACRO",
            Code::Inv => "E-INV",
            Code::Chc => "E-CHC",
            Code::Oracle => "E-ORACLE",
            Code::Opt => "E-OPT",
            Code::Weight => "E-WEIGHT",
            Code::Datatype => "E-DATATYPE",
            Code::Response => "E-RESPONSE",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: Code, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Error, code, span, message: message.into() }
    }

    pub fn warning(code: Code, span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Warning, code, span, message: message.into() }
    }

    pub fn at(mut self, span: Span) -> Diagnostic {
        if self.span == Span::default() {
            self.span = span;
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev} {} {}:{} {}", self.code, self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

impl From<ReadError> for Diagnostic {
    fn from(e: ReadError) -> Diagnostic {
        Diagnostic::error(Code::Read, e.span, e.kind.to_string())
    }
}

#[derive(Serialize)]
struct JsonDiag<'a> {
    severity: Severity,
    code: Code,
    line: u32,
    col: u32,
    offset: usize,
    len: usize,
    message: &'a str,
}

impl Serialize for Diagnostic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonDiag {
            severity: self.severity,
            code: self.code,
            line: self.span.line,
            col: self.span.col,
            offset: self.span.offset,
            len: self.span.len,
            message: &self.message,
        }
        .serialize(s)
    }
}

pub type DResult<T> = Result<T, Diagnostic>;

/// Shorthand for an error diagnostic without a span yet.
pub fn err<T>(code: Code, message: impl Into<String>) -> DResult<T> {
    Err(Diagnostic::error(code, Span::default(), message))
}
