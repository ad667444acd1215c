use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, Node, SyntaxError};

/// One statement of a line, with its terminator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub node: Node,
    /// Terminated by `$`: evaluate without printing.
    pub silent: bool,
}

/// Parses a single expression (a trailing `;` or `$` is allowed).
pub fn parse(input: &str) -> Result<Node, SyntaxError> {
    let mut stmts = parse_program(input)?;
    match stmts.len() {
        1 => Ok(stmts.pop().unwrap().node),
        0 => Err(SyntaxError::new(1, "empty input")),
        _ => Err(SyntaxError::new(1, "expected a single statement")),
    }
}

/// Parses one line into its `;`/`$`-separated statements. Empty statements
/// (blank lines, comments, doubled terminators) are skipped.
pub fn parse_program(line: &str) -> Result<Vec<Statement>, SyntaxError> {
    let tokens = tokenize(line)?;
    let end_col = line.chars().count() + 1;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..=tokens.len() {
        let term = tokens.get(i).map(|t| &t.tok);
        if !matches!(term, None | Some(Tok::Semi) | Some(Tok::Dollar)) {
            continue;
        }
        let chunk = &tokens[start..i];
        if !chunk.is_empty() {
            let eol = tokens.get(i).map_or(end_col, |t| t.col);
            let mut p = Parser { toks: chunk, pos: 0, eol };
            let node = p.expr(0)?;
            if let Some(t) = p.peek() {
                return Err(SyntaxError::new(t.col, format!("unexpected {}", describe(&t.tok))));
            }
            out.push(Statement { node, silent: matches!(term, Some(Tok::Dollar)) });
        }
        start = i + 1;
    }
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name '{s}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Dot => "'.'".into(),
        Tok::Pipe => "'|'".into(),
        Tok::Amp => "'&'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Colon => "':'".into(),
        Tok::Semi => "';'".into(),
        Tok::Dollar => "'$'".into(),
    }
}

const PREFIX_NEG: u8 = 50;
const POSTFIX_INDEX: u8 = 70;

/// (left binding power, right binding power) of an infix token.
fn infix(t: &Tok) -> Option<(u8, u8, Option<BinOp>)> {
    Some(match t {
        Tok::Colon => (2, 1, None),
        Tok::Plus => (10, 11, Some(BinOp::Add)),
        Tok::Minus => (10, 11, Some(BinOp::Sub)),
        Tok::Star => (20, 21, Some(BinOp::Mul)),
        Tok::Slash => (20, 21, Some(BinOp::Div)),
        Tok::Dot => (30, 31, Some(BinOp::Geometric)),
        Tok::Pipe => (40, 41, Some(BinOp::Inner)),
        Tok::Amp => (40, 41, Some(BinOp::Outer)),
        Tok::Caret => (61, 60, Some(BinOp::Pow)),
        _ => return None,
    })
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    /// Column reported for "unexpected end of statement".
    eol: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, SyntaxError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| SyntaxError::new(self.eol, "unexpected end of statement"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        let t = self.next().map_err(|e| SyntaxError::new(e.col, format!("expected {}", describe(&want))))?;
        if t.tok == want {
            Ok(())
        } else {
            Err(SyntaxError::new(t.col, format!("expected {}, found {}", describe(&want), describe(&t.tok))))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Node, SyntaxError> {
        let mut lhs = self.prefix()?;
        loop {
            let Some(t) = self.peek().cloned() else { break };
            if t.tok == Tok::LBracket {
                if POSTFIX_INDEX < min_bp {
                    break;
                }
                self.pos += 1;
                let index = self.expr(0)?;
                self.expect(Tok::RBracket)?;
                lhs = Node::Index { base: Box::new(lhs), index: Box::new(index) };
                continue;
            }
            let Some((lbp, rbp, op)) = infix(&t.tok) else {
                break;
            };
            if lbp < min_bp {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(rbp)?;
            lhs = match op {
                Some(op) => Node::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) },
                None => match lhs {
                    Node::Ident(name) => Node::Assign { name, value: Box::new(rhs) },
                    _ => return Err(SyntaxError::new(t.col, "left side of ':' must be a name")),
                },
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Node, SyntaxError> {
        let t = self.next()?;
        match t.tok {
            Tok::Num(n) => Ok(Node::Num(n)),
            Tok::Minus => Ok(Node::Neg(Box::new(self.expr(PREFIX_NEG)?))),
            Tok::LParen => {
                let inner = self.expr(0)?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBracket => Ok(Node::List(self.items(Tok::RBracket)?)),
            Tok::Ident(name) => {
                if self.peek().is_some_and(|t| t.tok == Tok::LParen) {
                    self.pos += 1;
                    let args = self.items(Tok::RParen)?;
                    Ok(Node::Call { name, args })
                } else {
                    Ok(Node::Ident(name))
                }
            }
            other => Err(SyntaxError::new(t.col, format!("unexpected {}", describe(&other)))),
        }
    }

    /// Comma-separated items up to `close`, which is consumed.
    fn items(&mut self, close: Tok) -> Result<Vec<Node>, SyntaxError> {
        let mut items = Vec::new();
        if self.peek().is_some_and(|t| t.tok == close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.expr(0)?);
            let t = self.next().map_err(|e| SyntaxError::new(e.col, format!("expected ',' or {}", describe(&close))))?;
            if t.tok == close {
                return Ok(items);
            }
            if t.tok != Tok::Comma {
                return Err(SyntaxError::new(t.col, format!("expected ',' or {}, found {}", describe(&close), describe(&t.tok))));
            }
        }
    }
}
