//! S-expression reader: comments, literal classes, symbols and keywords,
//! with a source span on every node.

use std::fmt;

use thiserror::Error;

/// Source position of a node. `line` and `col` are 1-based, `col` counts
/// characters; `offset` and `len` are in bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
    pub len: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Symbol,
    Keyword,
    Numeral,
    Decimal,
    Bool,
    Hex,
    Binary,
    String,
}

/// A node of the S-expression tree. Atoms keep their original lexeme.
/// Equality ignores spans.
#[derive(Debug, Clone)]
pub enum SExpr {
    Atom { kind: AtomKind, text: String, span: Span },
    List { items: Vec<SExpr>, span: Span },
}

impl PartialEq for SExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SExpr::Atom { kind: k1, text: t1, .. }, SExpr::Atom { kind: k2, text: t2, .. }) => {
                k1 == k2 && t1 == t2
            }
            (SExpr::List { items: a, .. }, SExpr::List { items: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for SExpr {}

impl std::hash::Hash for SExpr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            SExpr::Atom { kind, text, .. } => {
                kind.hash(state);
                text.hash(state);
            }
            SExpr::List { items, .. } => {
                items.len().hash(state);
                items.iter().for_each(|i| i.hash(state));
            }
        }
    }
}

impl SExpr {
    pub fn span(&self) -> Span {
        match self {
            SExpr::Atom { span, .. } | SExpr::List { span, .. } => *span,
        }
    }

    pub fn atom(kind: AtomKind, text: impl Into<String>) -> SExpr {
        SExpr::Atom { kind, text: text.into(), span: Span::default() }
    }

    pub fn list(items: Vec<SExpr>) -> SExpr {
        SExpr::List { items, span: Span::default() }
    }

    pub fn symbol(text: impl Into<String>) -> SExpr {
        SExpr::atom(AtomKind::Symbol, text)
    }

    pub fn kind(&self) -> Option<AtomKind> {
        match self {
            SExpr::Atom { kind, .. } => Some(*kind),
            SExpr::List { .. } => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            SExpr::Atom { text, .. } => Some(text),
            SExpr::List { .. } => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            SExpr::Atom { kind: AtomKind::Symbol, text, .. } => Some(text),
            _ => None,
        }
    }

    pub fn as_keyword(&self) -> Option<&str> {
        match self {
            SExpr::Atom { kind: AtomKind::Keyword, text, .. } => Some(text),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List { items, .. } => Some(items),
            _ => None,
        }
    }

    pub fn is_symbol(&self, s: &str) -> bool {
        self.as_symbol() == Some(s)
    }

    /// Head symbol of a list, if the list starts with a symbol.
    pub fn head_symbol(&self) -> Option<&str> {
        self.as_list().and_then(|items| items.first()).and_then(SExpr::as_symbol)
    }

    /// Decoded characters of a string literal.
    pub fn string_value(&self) -> Option<String> {
        match self {
            SExpr::Atom { kind: AtomKind::String, text, .. } => Some(decode_string(text)),
            _ => None,
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom { text, .. } => f.write_str(text),
            SExpr::List { items, .. } => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Turn a raw string lexeme (with its quotes) into its characters.
pub fn decode_string(raw: &str) -> String {
    let inner = &raw[1..raw.len() - 1];
    inner.replace("\"\"", "\"")
}

/// Quote a string: surrounding quotes, `"` doubled, nothing else escaped.
pub fn encode_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' {
            out.push('"');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadErrorKind {
    #[error("unexpected `)`")]
    UnexpectedClose,
    #[error("unclosed `(`")]
    UnclosedList,
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("newline inside string literal")]
    NewlineInString,
    #[error("non-printable character {0:?} inside string literal")]
    NonPrintable(char),
    #[error("symbol `{0}` begins with a digit")]
    SymbolStartsWithDigit(String),
    #[error("numeral `{0}` has a leading zero")]
    LeadingZero(String),
    #[error("malformed decimal `{0}`")]
    BadDecimal(String),
    #[error("malformed hexadecimal literal `{0}`")]
    BadHex(String),
    #[error("malformed binary literal `{0}`")]
    BadBinary(String),
    #[error("empty keyword")]
    EmptyKeyword,
    #[error("character {0:?} is outside the symbol alphabet")]
    BadChar(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ReadError {
    pub kind: ReadErrorKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy)]
pub struct ReaderOptions {
    pub allow_newlines_in_strings: bool,
}

impl Default for ReaderOptions {
    fn default() -> Self {
        ReaderOptions { allow_newlines_in_strings: true }
    }
}

const SPECIAL: &str = "_+-*&|!~<>=/%?.$^";

pub fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || SPECIAL.contains(c)
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '"'
}

const RESERVED: &[&str] = &[
    "!",
    "_",
    "check-synth",
    "Constant",
    "chc-constraint",
    "constraint",
    "declare-correctness-cex-oracle",
    "declare-correctness-oracle",
    "declare-datatype",
    "declare-datatypes",
    "declare-oracle-fun",
    "declare-sort",
    "declare-var",
    "declare-weight",
    "define-fun",
    "define-sort",
    "exists",
    "forall",
    "inv-constraint",
    "let",
    "optimize-synth",
    "oracle-assume",
    "oracle-constraint",
    "oracle-constraint-cex",
    "oracle-constraint-io",
    "oracle-constraint-membership",
    "oracle-constraint-negwitness",
    "oracle-constraint-poswitness",
    "set-feature",
    "set-info",
    "set-logic",
    "set-option",
    "synth-fun",
    "Variable",
];

/// True for the reserved keywords and for anything that lexes as a literal.
pub fn is_reserved(word: &str) -> bool {
    if RESERVED.contains(&word) || word == "true" || word == "false" {
        return true;
    }
    if word.starts_with('"') || word.starts_with("#x") || word.starts_with("#b") {
        return true;
    }
    word.chars().next().is_some_and(|c| c.is_ascii_digit())
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    col: u32,
    opts: ReaderOptions,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> Span {
        Span { line: self.line, col: self.col, offset: self.pos, len: 0 }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn err(&self, kind: ReadErrorKind, start: Span) -> ReadError {
        let mut span = start;
        span.len = self.pos.saturating_sub(start.offset).max(1);
        ReadError { kind, span }
    }

    fn read_string(&mut self, start: Span) -> Result<SExpr, ReadError> {
        self.bump();
        loop {
            match self.peek() {
                None => return Err(self.err(ReadErrorKind::UnterminatedString, start)),
                Some('"') => {
                    self.bump();
                    if self.peek() == Some('"') {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Some('\n') if !self.opts.allow_newlines_in_strings => {
                    return Err(self.err(ReadErrorKind::NewlineInString, start));
                }
                Some(c) if c.is_control() && !matches!(c, '\n' | '\r' | '\t') => {
                    return Err(self.err(ReadErrorKind::NonPrintable(c), start));
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        Ok(self.finish(AtomKind::String, start))
    }

    fn finish(&self, kind: AtomKind, start: Span) -> SExpr {
        let text = self.src[start.offset..self.pos].to_string();
        let mut span = start;
        span.len = self.pos - start.offset;
        SExpr::Atom { kind, text, span }
    }

    /// Consume a run of non-delimiter characters, rejecting any character
    /// outside the symbol alphabet.
    fn read_word(&mut self, start: Span) -> Result<&'a str, ReadError> {
        let begin = self.pos;
        while let Some(c) = self.peek() {
            if is_delimiter(c) {
                break;
            }
            if !is_symbol_char(c) && !(c == ':' && self.pos == start.offset) && c != '#' {
                self.bump();
                return Err(self.err(ReadErrorKind::BadChar(c), start));
            }
            self.bump();
        }
        Ok(&self.src[begin..self.pos])
    }

    fn read_atom(&mut self, start: Span) -> Result<SExpr, ReadError> {
        let word = self.read_word(start)?;
        let first = word.chars().next().unwrap_or(' ');
        if let Some(rest) = word.strip_prefix("#x") {
            if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(self.err(ReadErrorKind::BadHex(word.into()), start));
            }
            return Ok(self.finish(AtomKind::Hex, start));
        }
        if let Some(rest) = word.strip_prefix("#b") {
            if rest.is_empty() || !rest.chars().all(|c| c == '0' || c == '1') {
                return Err(self.err(ReadErrorKind::BadBinary(word.into()), start));
            }
            return Ok(self.finish(AtomKind::Binary, start));
        }
        if word.contains('#') {
            let c = '#';
            return Err(self.err(ReadErrorKind::BadChar(c), start));
        }
        if first == ':' {
            if word.len() == 1 {
                return Err(self.err(ReadErrorKind::EmptyKeyword, start));
            }
            if let Some(c) = word[1..].chars().find(|c| !is_symbol_char(*c)) {
                return Err(self.err(ReadErrorKind::BadChar(c), start));
            }
            return Ok(self.finish(AtomKind::Keyword, start));
        }
        if first.is_ascii_digit() {
            if word.chars().all(|c| c.is_ascii_digit()) {
                if word.len() > 1 && word.starts_with('0') {
                    return Err(self.err(ReadErrorKind::LeadingZero(word.into()), start));
                }
                return Ok(self.finish(AtomKind::Numeral, start));
            }
            if let Some((int, frac)) = word.split_once('.') {
                let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
                if digits(int) && digits(frac) {
                    if int.len() > 1 && int.starts_with('0') {
                        return Err(self.err(ReadErrorKind::BadDecimal(word.into()), start));
                    }
                    return Ok(self.finish(AtomKind::Decimal, start));
                }
                if digits(int) && !frac.contains('.') && frac.chars().all(|c| c.is_ascii_digit()) {
                    return Err(self.err(ReadErrorKind::BadDecimal(word.into()), start));
                }
            }
            return Err(self.err(ReadErrorKind::SymbolStartsWithDigit(word.into()), start));
        }
        if word == "true" || word == "false" {
            return Ok(self.finish(AtomKind::Bool, start));
        }
        Ok(self.finish(AtomKind::Symbol, start))
    }
}

/// Read every top-level S-expression of `input`.
pub fn read_all(input: &str) -> Result<Vec<SExpr>, ReadError> {
    read_all_with(input, ReaderOptions::default())
}

pub fn read_all_with(input: &str, opts: ReaderOptions) -> Result<Vec<SExpr>, ReadError> {
    let mut lx = Lexer { src: input, pos: 0, line: 1, col: 1, opts };
    let mut stack: Vec<(Span, Vec<SExpr>)> = Vec::new();
    let mut top = Vec::new();
    loop {
        lx.skip_trivia();
        let start = lx.here();
        let Some(c) = lx.peek() else { break };
        let node = match c {
            '(' => {
                lx.bump();
                stack.push((start, Vec::new()));
                continue;
            }
            ')' => {
                lx.bump();
                let Some((open, items)) = stack.pop() else {
                    return Err(lx.err(ReadErrorKind::UnexpectedClose, start));
                };
                let mut span = open;
                span.len = lx.pos - open.offset;
                SExpr::List { items, span }
            }
            '"' => lx.read_string(start)?,
            _ => lx.read_atom(start)?,
        };
        match stack.last_mut() {
            Some((_, items)) => items.push(node),
            None => top.push(node),
        }
    }
    if let Some((open, _)) = stack.pop() {
        return Err(ReadError { kind: ReadErrorKind::UnclosedList, span: Span { len: 1, ..open } });
    }
    Ok(top)
}

/// Read exactly one S-expression.
pub fn read_one(input: &str) -> Result<SExpr, ReadError> {
    let mut all = read_all(input)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        _ => Err(ReadError {
            kind: if all.is_empty() {
                ReadErrorKind::UnclosedList
            } else {
                ReadErrorKind::UnexpectedClose
            },
            span: Span::default(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Option<AtomKind>> {
        read_all(src).unwrap().iter().map(SExpr::kind).collect()
    }

    #[test]
    fn doubled_quote_decodes_to_one() {
        let e = read_one(r#""a""b""#).unwrap();
        assert_eq!(e.string_value().unwrap(), "a\"b");
        assert_eq!(e.to_string(), r#""a""b""#);
    }

    #[test]
    fn backslash_is_verbatim() {
        let e = read_one(r#""\n""#).unwrap();
        assert_eq!(e.string_value().unwrap().chars().count(), 2);
    }

    #[test]
    fn empty_list_and_comment() {
        assert_eq!(read_one("()").unwrap().as_list().unwrap().len(), 0);
        let e = read_all("(- 1) ; c").unwrap();
        assert_eq!(e.len(), 1);
        let items = e[0].as_list().unwrap();
        assert!(items[0].is_symbol("-"));
        assert_eq!(items[1].kind(), Some(AtomKind::Numeral));
    }

    #[test]
    fn literal_classes() {
        assert_eq!(
            kinds("0 12 1.05 true #xfA #b01 \"s\" :kw sym"),
            vec![
                Some(AtomKind::Numeral),
                Some(AtomKind::Numeral),
                Some(AtomKind::Decimal),
                Some(AtomKind::Bool),
                Some(AtomKind::Hex),
                Some(AtomKind::Binary),
                Some(AtomKind::String),
                Some(AtomKind::Keyword),
                Some(AtomKind::Symbol),
            ]
        );
    }

    #[test]
    fn lexical_errors() {
        let k = |s: &str| read_all(s).unwrap_err().kind;
        assert!(matches!(k("(a"), ReadErrorKind::UnclosedList));
        assert!(matches!(k("a)"), ReadErrorKind::UnexpectedClose));
        assert!(matches!(k("\"abc"), ReadErrorKind::UnterminatedString));
        assert!(matches!(k("1abc"), ReadErrorKind::SymbolStartsWithDigit(_)));
        assert!(matches!(k("01"), ReadErrorKind::LeadingZero(_)));
        assert!(matches!(k("a@b"), ReadErrorKind::BadChar('@')));
        assert!(matches!(k("#xg"), ReadErrorKind::BadHex(_)));
        assert!(matches!(k("#b2"), ReadErrorKind::BadBinary(_)));
        assert!(matches!(k("1."), ReadErrorKind::BadDecimal(_)));
    }

    #[test]
    fn newline_flag() {
        assert!(read_all("\"a\nb\"").is_ok());
        let opts = ReaderOptions { allow_newlines_in_strings: false };
        assert!(read_all_with("\"a\nb\"", opts).is_err());
    }

    #[test]
    fn reserved_words() {
        assert!(is_reserved("constraint"));
        assert!(is_reserved("_"));
        assert!(is_reserved("!"));
        assert!(is_reserved("true"));
        assert!(is_reserved("Constant"));
        assert!(!is_reserved("myFun"));
        assert!(!is_reserved("define-fun-rec"));
    }

    #[test]
    fn spans_track_lines() {
        let e = read_all("(a)\n  (b c)").unwrap();
        assert_eq!((e[1].span().line, e[1].span().col), (2, 3));
        assert_eq!(e[1].span().offset, 6);
    }
}
