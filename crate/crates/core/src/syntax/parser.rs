use std::collections::BTreeSet;

use super::ast::{Comparison, Formula, Predicate, Term};
use super::lexer::{tokenize, Tok, Token};
use super::SyntaxError;
use crate::time::{Interval, Time, TimeBound};

const KEYWORDS: &[&str] = &[
    "always", "G", "eventually", "F", "historically", "H", "once", "O", "until", "U", "since", "S",
    "precedes", "P", "next", "X", "prev", "Y", "rise", "fall", "and", "or", "not", "implies",
    "true", "false", "abs", "inf",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

#[derive(Clone, Copy)]
enum UnaryTemporal {
    Always,
    Eventually,
    Historically,
    Once,
}

#[derive(Clone, Copy)]
enum BinaryTemporal {
    Until,
    Since,
    Precedes,
}

pub(crate) struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    declared: Option<&'a BTreeSet<String>>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &str, declared: Option<&'a BTreeSet<String>>) -> Result<Parser<'a>, SyntaxError> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0, declared })
    }

    pub fn parse_complete(mut self) -> Result<Formula, SyntaxError> {
        let f = self.formula()?;
        match self.peek() {
            Tok::Eof => Ok(f),
            other => Err(self.error(format!("unexpected {} after formula", describe(other)))),
        }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn token(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if !matches!(tok, Tok::Eof) {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let t = self.token();
        SyntaxError::new(t.line, t.column, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", describe(&tok), describe(self.peek()))))
        }
    }

    fn at_keyword(&self, words: &[&str]) -> bool {
        matches!(self.peek(), Tok::Ident(w) if words.contains(&w.as_str()))
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if matches!(self.peek(), Tok::Arrow) || self.at_keyword(&["implies"]) {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while matches!(self.peek(), Tok::OrOr) || self.at_keyword(&["or"]) {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.binary_temporal()?;
        while matches!(self.peek(), Tok::AndAnd) || self.at_keyword(&["and"]) {
            self.bump();
            let rhs = self.binary_temporal()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        let op = match self.peek() {
            Tok::Ident(w) => match w.as_str() {
                "until" | "U" => BinaryTemporal::Until,
                "since" | "S" => BinaryTemporal::Since,
                "precedes" | "P" => BinaryTemporal::Precedes,
                _ => return Ok(lhs),
            },
            _ => return Ok(lhs),
        };
        self.bump();
        let interval = self.optional_interval()?;
        if matches!(op, BinaryTemporal::Precedes) && !interval.is_bounded() {
            return Err(self.error("precedes requires a bounded interval"));
        }
        let rhs = self.unary()?;
        Ok(match op {
            BinaryTemporal::Until => Formula::until(interval, lhs, rhs),
            BinaryTemporal::Since => Formula::since(interval, lhs, rhs),
            BinaryTemporal::Precedes => Formula::precedes(interval, lhs, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        if matches!(self.peek(), Tok::Bang) {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.atom(),
        };
        let temporal = match word.as_str() {
            "always" | "G" => Some(UnaryTemporal::Always),
            "eventually" | "F" => Some(UnaryTemporal::Eventually),
            "historically" | "H" => Some(UnaryTemporal::Historically),
            "once" | "O" => Some(UnaryTemporal::Once),
            _ => None,
        };
        if let Some(op) = temporal {
            self.bump();
            let interval = self.optional_interval()?;
            let operand = self.unary()?;
            return Ok(match op {
                UnaryTemporal::Always => Formula::always(interval, operand),
                UnaryTemporal::Eventually => Formula::eventually(interval, operand),
                UnaryTemporal::Historically => Formula::historically(interval, operand),
                UnaryTemporal::Once => Formula::once(interval, operand),
            });
        }
        let wrap: Option<fn(Box<Formula>) -> Formula> = match word.as_str() {
            "not" => Some(Formula::Not),
            "next" | "X" => Some(Formula::Next),
            "prev" | "Y" => Some(Formula::Previous),
            "rise" => Some(Formula::Rise),
            "fall" => Some(Formula::Fall),
            _ => None,
        };
        match wrap {
            Some(ctor) => {
                self.bump();
                Ok(ctor(Box::new(self.unary()?)))
            }
            None => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        if self.at_keyword(&["true"]) {
            self.bump();
            return Ok(Formula::Const(true));
        }
        if self.at_keyword(&["false"]) {
            self.bump();
            return Ok(Formula::Const(false));
        }
        if matches!(self.peek(), Tok::LParen) {
            let start = self.pos;
            match self.predicate() {
                Ok(p) => return Ok(p),
                Err(term_err) => {
                    self.pos = start;
                    self.bump();
                    let inner = match self.formula() {
                        Ok(f) => f,
                        Err(e) => return Err(further(term_err, e)),
                    };
                    if let Err(e) = self.expect(Tok::RParen) {
                        return Err(further(term_err, e));
                    }
                    return Ok(inner);
                }
            }
        }
        self.predicate()
    }

    fn predicate(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.term()?;
        let op = match self.peek() {
            Tok::Lt => Comparison::Lt,
            Tok::Le => Comparison::Le,
            Tok::Gt => Comparison::Gt,
            Tok::Ge => Comparison::Ge,
            Tok::EqEq => Comparison::Eq,
            Tok::Ne => Comparison::Ne,
            other => {
                return Err(self.error(format!("expected a comparison operator, found {}", describe(other))))
            }
        };
        self.bump();
        let rhs = self.term()?;
        Ok(Formula::Predicate(match rhs {
            Term::Const(c) => Predicate::new(lhs, op, c),
            rhs => Predicate::new(lhs.sub(rhs), op, 0.0),
        }))
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Term::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Term::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.signed()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Term::Mul(Box::new(lhs), Box::new(self.signed()?));
                }
                Tok::Slash => {
                    self.bump();
                    let err = self.error("division is only allowed by a nonzero constant");
                    match self.signed()? {
                        Term::Const(c) if c != 0.0 => {
                            lhs = Term::Div(Box::new(lhs), Box::new(Term::Const(c)));
                        }
                        _ => return Err(err),
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn signed(&mut self) -> Result<Term, SyntaxError> {
        if matches!(self.peek(), Tok::Minus) {
            self.bump();
            return Ok(match self.signed()? {
                Term::Const(c) => Term::Const(-c),
                t => Term::Neg(Box::new(t)),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term, SyntaxError> {
        let here = self.token().clone();
        match self.bump() {
            Tok::Number(text) => text
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Term::Const)
                .ok_or_else(|| SyntaxError::new(here.line, here.column, format!("invalid number `{text}`"))),
            Tok::Ident(name) if name == "abs" => {
                self.expect(Tok::LParen)?;
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Abs(Box::new(inner)))
            }
            Tok::Ident(name) if is_keyword(&name) => Err(SyntaxError::new(
                here.line,
                here.column,
                format!("unexpected keyword `{name}` in term"),
            )),
            Tok::Ident(name) => {
                if let Some(declared) = self.declared {
                    if !declared.contains(&name) {
                        return Err(SyntaxError::new(
                            here.line,
                            here.column,
                            format!("undeclared variable `{name}`"),
                        ));
                    }
                }
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(SyntaxError::new(
                here.line,
                here.column,
                format!("expected a term, found {}", describe(&other)),
            )),
        }
    }

    fn optional_interval(&mut self) -> Result<Interval, SyntaxError> {
        if !matches!(self.peek(), Tok::LBracket) {
            return Ok(Interval::unbounded());
        }
        let open = self.token().clone();
        self.bump();
        let lo = self.rational()?;
        if !matches!(self.peek(), Tok::Colon | Tok::Comma) {
            return Err(self.error(format!("expected `:` in interval, found {}", describe(self.peek()))));
        }
        self.bump();
        let hi = if self.at_keyword(&["inf"]) {
            self.bump();
            TimeBound::Infinite
        } else {
            TimeBound::Finite(self.rational()?)
        };
        self.expect(Tok::RBracket)?;
        Interval::new(lo, hi)
            .map_err(|e| SyntaxError::new(open.line, open.column, format!("malformed interval: {e}")))
    }

    fn rational(&mut self) -> Result<Time, SyntaxError> {
        let here = self.token().clone();
        let negative = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut text = match self.bump() {
            Tok::Number(n) => n,
            other => {
                return Err(SyntaxError::new(
                    here.line,
                    here.column,
                    format!("expected a time bound, found {}", describe(&other)),
                ))
            }
        };
        if matches!(self.peek(), Tok::Slash) {
            self.bump();
            match self.bump() {
                Tok::Number(d) => {
                    text.push('/');
                    text.push_str(&d);
                }
                other => {
                    return Err(self.error(format!("expected a denominator, found {}", describe(&other))))
                }
            }
        }
        let value: Time = text
            .parse()
            .map_err(|e| SyntaxError::new(here.line, here.column, format!("{e}")))?;
        Ok(if negative { -value } else { value })
    }
}

fn further(a: SyntaxError, b: SyntaxError) -> SyntaxError {
    if (b.line, b.column) >= (a.line, a.column) {
        b
    } else {
        a
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(w) => format!("`{w}`"),
        Tok::Number(n) => format!("number `{n}`"),
        Tok::Eof => "end of input".to_string(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Le => "`<=`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Ge => "`>=`".into(),
        Tok::EqEq => "`==`".into(),
        Tok::Ne => "`!=`".into(),
        Tok::Bang => "`!`".into(),
        Tok::AndAnd => "`&&`".into(),
        Tok::OrOr => "`||`".into(),
        Tok::Arrow => "`->`".into(),
    }
}
