use num_bigint::BigInt;

use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Pipe,
    Amp,
    Caret,
    Colon,
    /// `;` ends a statement and prints its value.
    Semi,
    /// `$` ends a statement silently.
    Dollar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    /// 1-based character column of the first character.
    pub col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '%'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits one line into tokens. A `#` starts a comment running to the end
/// of the line.
pub fn tokenize(line: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                return Err(SyntaxError::new(col, "decimal literals are not supported, write a fraction"));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Num(digits.parse().expect("digits")), col });
            continue;
        }
        if ident_start(c) {
            let start = i;
            i += 1;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if name == "%" {
                return Err(SyntaxError::new(col, "'%' must be followed by a name"));
            }
            out.push(Token { tok: Tok::Ident(name), col });
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '.' => Tok::Dot,
            '|' => Tok::Pipe,
            '&' => Tok::Amp,
            '^' => Tok::Caret,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '$' => Tok::Dollar,
            other => return Err(SyntaxError::new(col, format!("unexpected character '{other}'"))),
        };
        out.push(Token { tok, col });
        i += 1;
    }
    Ok(out)
}
