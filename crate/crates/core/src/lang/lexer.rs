//! Tokenizer for MoVer source text.

use super::resolve::LangError;

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Number(f64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Assign,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier {s:?}"),
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Str(s) => format!("string {s:?}"),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::LBracket => "'['".into(),
            TokenKind::RBracket => "']'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Colon => "':'".into(),
            TokenKind::Assign => "'='".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub offset: usize,
    pub line: u32,
    pub col: u32,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LangError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;

    macro_rules! push {
        ($kind:expr, $offset:expr, $line:expr, $col:expr) => {
            tokens.push(Token {
                kind: $kind,
                offset: $offset,
                line: $line,
                col: $col,
            })
        };
    }

    while pos < bytes.len() {
        let b = bytes[pos];
        let (tline, tcol, toffset) = (line, col, pos);
        match b {
            b'\n' => {
                pos += 1;
                line += 1;
                col = 1;
            }
            b' ' | b'\t' | b'\r' => {
                pos += 1;
                col += 1;
            }
            b'#' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            b'(' => {
                push!(TokenKind::LParen, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b')' => {
                push!(TokenKind::RParen, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b'[' => {
                push!(TokenKind::LBracket, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b']' => {
                push!(TokenKind::RBracket, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b',' => {
                push!(TokenKind::Comma, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b':' => {
                push!(TokenKind::Colon, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b'=' => {
                push!(TokenKind::Assign, toffset, tline, tcol);
                pos += 1;
                col += 1;
            }
            b'"' => {
                let start = pos + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end] != b'"' && bytes[end] != b'\n' {
                    end += 1;
                }
                if end >= bytes.len() || bytes[end] != b'"' {
                    return Err(LangError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "unterminated string literal".into(),
                    });
                }
                let s = std::str::from_utf8(&bytes[start..end])
                    .map_err(|_| LangError::Syntax {
                        line: tline,
                        col: tcol,
                        message: "invalid UTF-8 in string literal".into(),
                    })?
                    .to_string();
                col += (end + 1 - pos) as u32;
                pos = end + 1;
                push!(TokenKind::Str(s), toffset, tline, tcol);
            }
            b'-' | b'0'..=b'9' => {
                let start = pos;
                let mut end = pos;
                if bytes[end] == b'-' {
                    end += 1;
                    if end >= bytes.len() || !bytes[end].is_ascii_digit() {
                        return Err(LangError::Syntax {
                            line: tline,
                            col: tcol,
                            message: "'-' must introduce a number".into(),
                        });
                    }
                }
                let mut seen_dot = false;
                while end < bytes.len() {
                    match bytes[end] {
                        b'0'..=b'9' => end += 1,
                        b'.' if !seen_dot => {
                            seen_dot = true;
                            end += 1;
                        }
                        _ => break,
                    }
                }
                let text = std::str::from_utf8(&bytes[start..end]).unwrap();
                let value: f64 = text.parse().map_err(|_| LangError::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("invalid number {text:?}"),
                })?;
                col += (end - pos) as u32;
                pos = end;
                push!(TokenKind::Number(value), toffset, tline, tcol);
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = pos;
                let mut end = pos;
                while end < bytes.len()
                    && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&bytes[start..end]).unwrap().to_string();
                col += (end - pos) as u32;
                pos = end;
                push!(TokenKind::Ident(text), toffset, tline, tcol);
            }
            other => {
                return Err(LangError::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character {:?}", other as char),
                });
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        offset: src.len(),
        line,
        col,
    });
    Ok(tokens)
}
