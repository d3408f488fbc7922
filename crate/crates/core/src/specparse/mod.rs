//! Textual series definitions such as `1/(1-t)^(alpha+1)` or `t/(t-1)`.
//!
//! Grammar (EBNF):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;
//! primary = number | "t" | ident | func "(" expr ")" | "(" expr ")" ;
//! func    = "exp" | "log" | "sqrt" | "sin" | "cos" ;
//! number  = digit { digit } [ "." digit { digit } ] ;
//! ident   = (letter | "_") { letter | digit | "_" } ;
//! ```
//!
//! `^` binds tighter than unary minus and is right associative, so `-t^2`
//! is `-(t^2)` and `2^3^2` is `2^9`.

mod eval;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

use crate::rational::Rational;

pub use eval::{evaluate, parse_and_evaluate, Bindings};
pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Function {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

impl Function {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Function::Exp,
            "log" => Function::Log,
            "sqrt" => Function::Sqrt,
            "sin" => Function::Sin,
            "cos" => Function::Cos,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Sin => "sin",
            Function::Cos => "cos",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesExpr {
    Number(Rational),
    Param(String),
    Var,
    Neg(Box<SeriesExpr>),
    Binary(BinaryOp, Box<SeriesExpr>, Box<SeriesExpr>),
    Call(Function, Box<SeriesExpr>),
}

impl SeriesExpr {
    /// Parameter names referenced anywhere in the tree.
    pub fn parameters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_parameters(&mut out);
        out
    }

    fn collect_parameters(&self, out: &mut BTreeSet<String>) {
        match self {
            SeriesExpr::Param(name) => {
                out.insert(name.clone());
            }
            SeriesExpr::Neg(e) | SeriesExpr::Call(_, e) => e.collect_parameters(out),
            SeriesExpr::Binary(_, a, b) => {
                a.collect_parameters(out);
                b.collect_parameters(out);
            }
            SeriesExpr::Number(_) | SeriesExpr::Var => {}
        }
    }
}

/// Fully parenthesized rendering.
impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesExpr::Number(r) => write!(f, "({r})"),
            SeriesExpr::Param(name) => write!(f, "{name}"),
            SeriesExpr::Var => write!(f, "t"),
            SeriesExpr::Neg(e) => write!(f, "(-{e})"),
            SeriesExpr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            SeriesExpr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

/// Parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for SyntaxError {}
