//! Tokenizer for the supported Java subset.
//!
//! Comments are not emitted as tokens; they are collected separately so the
//! annotation scanner can look at them by line.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident,
    Keyword,
    IntLit,
    FloatLit,
    StrLit,
    CharLit,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        matches!(self.kind, TokenKind::Keyword | TokenKind::Punct) && self.text == text
    }

    /// Token text after identifier canonicalization, as used by clone detection.
    pub fn normalized(&self) -> &str {
        match self.kind {
            TokenKind::Ident => "ID",
            _ => &self.text,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub line: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub line: usize,
    pub expected: String,
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "false",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "null",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "void",
    "volatile",
    "while",
];

// Longest first so that greedy matching picks `>>>=` over `>>`.
const PUNCT: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "(", ")", "{", "}", "[", "]", ";",
    ",", ".", "@", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.binary_search(&word).is_ok()
}

#[derive(Debug, Default)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub comments: Vec<Comment>,
}

pub fn tokenize(src: &str) -> Result<Lexed, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Lexed::default();
    let mut i = 0;
    let mut line = 1;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            let start = i + 2;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            out.comments.push(Comment {
                line,
                text: chars[start..i].iter().collect(),
            });
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let open_line = line;
            i += 2;
            let mut seg_start = i;
            let mut seg_line = line;
            loop {
                if i >= chars.len() {
                    return Err(LexError {
                        line: open_line,
                        expected: "end of block comment `*/`".into(),
                    });
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    out.comments.push(Comment {
                        line: seg_line,
                        text: chars[seg_start..i].iter().collect(),
                    });
                    i += 2;
                    break;
                }
                if chars[i] == '\n' {
                    out.comments.push(Comment {
                        line: seg_line,
                        text: chars[seg_start..i].iter().collect(),
                    });
                    line += 1;
                    seg_line = line;
                    seg_start = i + 1;
                }
                i += 1;
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let kind = if is_keyword(&text) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            out.tokens.push(Token { kind, text, line });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let (tok, next) = lex_number(&chars, i, line);
            out.tokens.push(tok);
            i = next;
            continue;
        }
        if c == '"' || c == '\'' {
            let start = i;
            i += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(LexError {
                            line,
                            expected: format!("closing {c}"),
                        })
                    }
                    Some('\\') => i += 2,
                    Some(&q) if q == c => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            let kind = if c == '"' {
                TokenKind::StrLit
            } else {
                TokenKind::CharLit
            };
            out.tokens.push(Token {
                kind,
                text: chars[start..i].iter().collect(),
                line,
            });
            continue;
        }
        let rest = &chars[i..];
        let punct = PUNCT
            .iter()
            .find(|p| p.chars().count() <= rest.len() && p.chars().zip(rest).all(|(a, b)| a == *b));
        match punct {
            Some(p) => {
                out.tokens.push(Token {
                    kind: TokenKind::Punct,
                    text: (*p).to_string(),
                    line,
                });
                i += p.chars().count();
            }
            None => {
                return Err(LexError {
                    line,
                    expected: format!("a valid token, found `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

fn lex_number(chars: &[char], mut i: usize, line: usize) -> (Token, usize) {
    let start = i;
    let mut float = false;
    if chars[i] == '0' && matches!(chars.get(i + 1), Some('x' | 'X' | 'b' | 'B')) {
        i += 2;
        while i < chars.len() && (chars[i].is_ascii_hexdigit() || chars[i] == '_') {
            i += 1;
        }
    } else {
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
            i += 1;
        }
        if chars.get(i) == Some(&'.') && chars.get(i + 1).is_none_or(|d| d.is_ascii_digit() || !d.is_alphabetic()) {
            // `1.` and `1.5` are floats; `1.foo` never occurs in the subset.
            float = true;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
        }
        if matches!(chars.get(i), Some('e' | 'E')) {
            float = true;
            i += 1;
            if matches!(chars.get(i), Some('+' | '-')) {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    match chars.get(i) {
        Some('l' | 'L') => i += 1,
        Some('f' | 'F' | 'd' | 'D') => {
            float = true;
            i += 1;
        }
        _ => {}
    }
    let kind = if float {
        TokenKind::FloatLit
    } else {
        TokenKind::IntLit
    };
    (
        Token {
            kind,
            text: chars[start..i].iter().collect(),
            line,
        },
        i,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        tokenize(src).unwrap().tokens.into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn keyword_table_is_sorted() {
        let mut sorted = KEYWORDS.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, KEYWORDS);
    }

    #[test]
    fn operators_use_longest_match() {
        assert_eq!(texts("a>>>=b"), ["a", ">>>=", "b"]);
        assert_eq!(texts("x&&y||!z"), ["x", "&&", "y", "||", "!", "z"]);
        assert_eq!(texts("i++ <= 3"), ["i", "++", "<=", "3"]);
    }

    #[test]
    fn numbers_and_strings() {
        let lexed = tokenize(r#"1.5f 0xFF 10L .5 "a\"b" 'c'"#).unwrap();
        let kinds: Vec<_> = lexed.tokens.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            [
                TokenKind::FloatLit,
                TokenKind::IntLit,
                TokenKind::IntLit,
                TokenKind::FloatLit,
                TokenKind::StrLit,
                TokenKind::CharLit
            ]
        );
    }

    #[test]
    fn comments_are_collected_by_line() {
        let lexed = tokenize("int a; // one\n/* two\nthree */ int b;").unwrap();
        assert_eq!(lexed.tokens.len(), 6);
        let lines: Vec<_> = lexed.comments.iter().map(|c| c.line).collect();
        assert_eq!(lines, [1, 2, 3]);
        assert_eq!(lexed.comments[0].text, " one");
        assert_eq!(lexed.tokens[3].line, 3);
    }

    #[test]
    fn unterminated_string_reports_line() {
        let err = tokenize("int a;\nString s = \"oops;\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn stray_character_is_rejected() {
        let err = tokenize("int a = #;").unwrap_err();
        assert!(err.expected.contains('#'));
    }
}
