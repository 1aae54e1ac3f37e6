/// Byte range of a token or node, with the 1-based line and column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Star,
    Plus,
    Minus,
    EqEq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

/// Splits `text` into tokens; `#` starts a comment running to the end of the line.
pub(crate) fn lex(text: &str) -> Result<Vec<(Tok, Span)>, (Span, char)> {
    let mut out = Vec::new();
    let (mut line, mut line_start) = (1, 0);
    let mut it = text.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        let span = |end: usize| Span {
            start: i,
            end,
            line,
            col: text[line_start..i].chars().count() + 1,
        };
        let tok = match c {
            '\n' => {
                line += 1;
                line_start = i + 1;
                continue;
            }
            c if c.is_whitespace() => continue,
            '#' => {
                while it.peek().is_some_and(|&(_, c)| c != '\n') {
                    it.next();
                }
                continue;
            }
            '(' => (Tok::LParen, span(i + 1)),
            ')' => (Tok::RParen, span(i + 1)),
            ',' => (Tok::Comma, span(i + 1)),
            ';' => (Tok::Semi, span(i + 1)),
            '*' => (Tok::Star, span(i + 1)),
            '+' => (Tok::Plus, span(i + 1)),
            '-' => (Tok::Minus, span(i + 1)),
            '=' if it.peek().is_some_and(|&(_, c)| c == '=') => {
                it.next();
                (Tok::EqEq, span(i + 2))
            }
            c if ident_char(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = it.peek() {
                    if !ident_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    it.next();
                }
                (Tok::Ident(text[i..end].to_string()), span(end))
            }
            c => return Err((span(i + c.len_utf8()), c)),
        };
        out.push(tok);
    }
    let col = text[line_start..].chars().count() + 1;
    out.push((
        Tok::Eof,
        Span {
            start: text.len(),
            end: text.len(),
            line,
            col,
        },
    ));
    Ok(out)
}
