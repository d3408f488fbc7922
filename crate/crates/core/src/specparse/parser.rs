use super::{BinaryOp, Function, SeriesExpr, SyntaxError};
use crate::rational::parse_rational;

const MAX_DEPTH: usize = 256;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(s) => format!("number `{s}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn err(offset: usize, expected: &[&str], found: String) -> SyntaxError {
    let mut expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    expected.sort();
    expected.dedup();
    SyntaxError {
        offset,
        expected,
        found,
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let token = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        let found = describe_byte(input, i);
                        return Err(err(i, &["digit"], found));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                tokens.push((start, Token::Number(input[start..i].to_string())));
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(input[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(err(
                    start,
                    &["number", "identifier", "operator", "`(`", "`)`"],
                    describe_byte(input, start),
                ))
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    tokens.push((input.len(), Token::End));
    Ok(tokens)
}

fn describe_byte(input: &str, offset: usize) -> String {
    match input.get(offset..).and_then(|s| s.chars().next()) {
        Some(c) => format!("`{c}`"),
        None if offset >= input.len() => "end of input".into(),
        None => "invalid UTF-8 boundary".into(),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    depth: usize,
}

const OPERAND: &[&str] = &["number", "identifier", "`t`", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(
                self.offset(),
                &["shallower nesting"],
                "nesting limit".into(),
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<SeriesExpr, SyntaxError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Plus => BinaryOp::Add,
                Token::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = SeriesExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<SeriesExpr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Token::Star => BinaryOp::Mul,
                Token::Slash => BinaryOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = SeriesExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<SeriesExpr, SyntaxError> {
        self.enter()?;
        let out = if *self.peek() == Token::Minus {
            self.bump();
            SeriesExpr::Neg(Box::new(self.unary()?))
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<SeriesExpr, SyntaxError> {
        let base = self.primary()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(SeriesExpr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SeriesExpr, SyntaxError> {
        let offset = self.offset();
        match self.bump() {
            Token::Number(text) => match parse_rational(&text) {
                Some(r) => Ok(SeriesExpr::Number(r)),
                None => Err(err(
                    offset,
                    &["number"],
                    format!("malformed number `{text}`"),
                )),
            },
            Token::Ident(name) => {
                if name == "t" {
                    return Ok(SeriesExpr::Var);
                }
                match Function::from_name(&name) {
                    Some(func) => {
                        self.expect_lparen()?;
                        let arg = self.expr()?;
                        self.expect_rparen()?;
                        Ok(SeriesExpr::Call(func, Box::new(arg)))
                    }
                    None => Ok(SeriesExpr::Param(name)),
                }
            }
            Token::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            other => Err(err(offset, OPERAND, other.describe())),
        }
    }

    fn expect_lparen(&mut self) -> Result<(), SyntaxError> {
        let offset = self.offset();
        match self.bump() {
            Token::LParen => Ok(()),
            other => Err(err(offset, &["`(`"], other.describe())),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), SyntaxError> {
        let offset = self.offset();
        match self.bump() {
            Token::RParen => Ok(()),
            other => Err(err(offset, &["`)`", "operator"], other.describe())),
        }
    }
}

/// Parses a complete expression in `t` and named parameters.
pub fn parse(input: &str) -> Result<SeriesExpr, SyntaxError> {
    let tokens = lex(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        let offset = parser.offset();
        let found = parser.peek().describe();
        return Err(err(offset, &["operator", "end of input"], found));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn num(n: i64) -> Box<SeriesExpr> {
        Box::new(SeriesExpr::Number(int(n)))
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("2^3^2").unwrap();
        assert_eq!(
            e,
            SeriesExpr::Binary(
                BinaryOp::Pow,
                num(2),
                Box::new(SeriesExpr::Binary(BinaryOp::Pow, num(3), num(2)))
            )
        );
        let e = parse("-t^2").unwrap();
        assert_eq!(
            e,
            SeriesExpr::Neg(Box::new(SeriesExpr::Binary(
                BinaryOp::Pow,
                Box::new(SeriesExpr::Var),
                num(2)
            )))
        );
        let e = parse("1-2-3").unwrap();
        assert_eq!(
            e,
            SeriesExpr::Binary(
                BinaryOp::Sub,
                Box::new(SeriesExpr::Binary(BinaryOp::Sub, num(1), num(2))),
                num(3)
            )
        );
    }

    #[test]
    fn calls_and_parameters() {
        let e = parse("1/(1-t)^(alpha+1)").unwrap();
        assert_eq!(
            e.parameters().into_iter().collect::<Vec<_>>(),
            vec!["alpha".to_string()]
        );
        assert!(matches!(
            parse("exp(t)").unwrap(),
            SeriesExpr::Call(Function::Exp, _)
        ));
        assert!(matches!(
            parse("0.25*t").unwrap(),
            SeriesExpr::Binary(BinaryOp::Mul, _, _)
        ));
    }

    #[test]
    fn diagnostics() {
        let e = parse("exp(t^2/4").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(e.expected.contains(&"`)`".to_string()));
        assert_eq!(e.found, "end of input");

        let e = parse("1 + * t").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.contains(&"number".to_string()));

        let e = parse("exp t").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(parse("t $").unwrap_err().offset, 2);
        assert_eq!(parse("3.").unwrap_err().offset, 2);
        assert_eq!(parse("(t))").unwrap_err().offset, 3);
        assert_eq!(parse("").unwrap_err().found, "end of input");
        assert!(parse(&"(".repeat(1000)).is_err());
    }
}
