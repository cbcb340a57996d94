//! Typed syntax tree, parser and printer.

pub mod ast;
pub mod parse;
pub mod print;

pub use ast::*;
pub use parse::{parse_command, parse_symbol, parse_script, parse_sort, parse_term, sort_from_str, term_from_str, Located};
pub use print::print_script;
