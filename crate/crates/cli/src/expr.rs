//! Expression language for tensor-algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | letter | '[' expr ',' expr ']' | 'exp' '(' expr ')' | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! There is no unary minus: write `0 - a` or `-1` as `0 - 1`.

use std::fmt;

use logderiv_core::algebra::{exp_series, Algebra};
use logderiv_core::rational::{format_rational, parse_rational, Rational};
use logderiv_core::tensor::{letter, letter_name, Letter, TensorAlgebra, TensorElt};
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    Letter(Letter),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown letter '{letter}' at column {column} (alphabet has {alphabet_size} letters)")]
    UnknownLetter {
        column: usize,
        letter: char,
        alphabet_size: usize,
    },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::UnknownLetter { column, .. } => *column,
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    alphabet_size: usize,
}

/// Parses `input` over an alphabet of `alphabet_size` letters named `a`, `b`, ….
pub fn parse(input: &str, alphabet_size: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        alphabet_size,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: String) -> ParseError {
        ParseError::Syntax {
            column: self.pos + 1,
            message,
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    left = Expr::Add(Box::new(left), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    left = Expr::Sub(Box::new(left), Box::new(self.term()?));
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            left = Expr::Mul(Box::new(left), Box::new(self.factor()?));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some('[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(',')?;
                let v = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(u), Box::new(v)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Group(Box::new(e)))
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_lowercase() => {
                if self.keyword("exp") {
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Exp(Box::new(e)));
                }
                let index = c as usize - 'a' as usize;
                if index >= self.alphabet_size {
                    return Err(ParseError::UnknownLetter {
                        column: self.pos + 1,
                        letter: c,
                        alphabet_size: self.alphabet_size,
                    });
                }
                self.pos += 1;
                Ok(Expr::Letter(index as Letter))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    /// Consumes `name` followed by `(` if present at the cursor.
    fn keyword(&mut self, name: &str) -> bool {
        let n = name.chars().count();
        let end = self.pos + n;
        if end > self.chars.len() || self.chars[self.pos..end].iter().copied().ne(name.chars()) {
            return false;
        }
        let mut after = end;
        while after < self.chars.len() && self.chars[after].is_whitespace() {
            after += 1;
        }
        if self.chars.get(after) != Some(&'(') {
            return false;
        }
        self.pos = after + 1;
        true
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<Expr, ParseError> {
        let numer = self.digits()?;
        if self.peek() != Some('/') {
            return Ok(Expr::Rational(parse_rational(&numer).expect("digits")));
        }
        self.pos += 1;
        self.skip_ws();
        let column = self.pos + 1;
        let denom = self.digits()?;
        if denom.chars().all(|c| c == '0') {
            return Err(ParseError::Syntax {
                column,
                message: "zero denominator".into(),
            });
        }
        Ok(Expr::Rational(parse_rational(&format!("{numer}/{denom}")).expect("digits")))
    }
}

/// Canonical text: re-parsing it yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(r) => write!(f, "{}", format_rational(r)),
            Expr::Letter(l) => write!(f, "{}", letter_name(*l)),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Mul(a, b) => write!(f, "{a} * {b}"),
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Group(a) => write!(f, "({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("exp argument has a nonzero constant term")]
    ExpConstant,
}

impl Expr {
    /// Evaluates in `T(X)` truncated at degree `max_degree`.
    pub fn eval(&self, alg: &TensorAlgebra, max_degree: usize) -> Result<TensorElt, EvalError> {
        let ev = |e: &Expr| e.eval(alg, max_degree);
        Ok(match self {
            Expr::Rational(r) => TensorElt::scalar(r.clone()),
            Expr::Letter(l) => letter(*l).truncated(max_degree),
            Expr::Add(a, b) => ev(a)? + ev(b)?,
            Expr::Sub(a, b) => ev(a)? - ev(b)?,
            Expr::Mul(a, b) => alg.mul_truncated(&ev(a)?, &ev(b)?, max_degree),
            Expr::Bracket(a, b) => {
                let (u, v) = (ev(a)?, ev(b)?);
                alg.sub(&alg.mul_truncated(&u, &v, max_degree), &alg.mul_truncated(&v, &u, max_degree))
            }
            Expr::Exp(a) => {
                let l = ev(a)?;
                if !l.constant_term().is_zero() {
                    return Err(EvalError::ExpConstant);
                }
                exp_series(alg, &l, max_degree)
            }
            Expr::Group(a) => ev(a)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use logderiv_core::rational::rat;
    use logderiv_core::tensor::word;

    fn eval(s: &str) -> TensorElt {
        parse(s, 2).unwrap().eval(&TensorAlgebra::new(2).unwrap(), 8).unwrap()
    }

    #[test]
    fn bracket_evaluates_to_commutator() {
        assert_eq!(
            parse("[a,b]", 2).unwrap(),
            Expr::Bracket(Box::new(Expr::Letter(0)), Box::new(Expr::Letter(1)))
        );
        assert_eq!(eval("[a,b]"), word(&[0, 1]) - word(&[1, 0]));
    }

    #[test]
    fn scaled_concatenation() {
        let e = parse("1/2*a*b + b", 2).unwrap();
        match &e {
            Expr::Add(l, r) => {
                assert!(matches!(**l, Expr::Mul(..)));
                assert_eq!(**r, Expr::Letter(1));
            }
            _ => panic!("expected a sum"),
        }
        assert_eq!(eval("1/2*a*b + b"), word(&[0, 1]).scaled(&rat(1, 2)) + word(&[1]));
    }

    #[test]
    fn syntax_error_columns() {
        assert_eq!(parse("[a", 2).unwrap_err().column(), 3);
        assert_eq!(parse("a +", 2).unwrap_err().column(), 4);
        assert_eq!(parse("ab", 2).unwrap_err().column(), 2);
        assert_eq!(parse("-a", 2).unwrap_err().column(), 1);
        assert_eq!(parse("1/0", 2).unwrap_err().column(), 3);
        assert_eq!(parse("a )", 2).unwrap_err().column(), 3);
        assert!(matches!(
            parse("a + c", 2),
            Err(ParseError::UnknownLetter { column: 5, letter: 'c', .. })
        ));
        assert!(parse("a + c", 3).is_ok());
    }

    #[test]
    fn exp_keyword_and_letter_e() {
        let alg = TensorAlgebra::new(5).unwrap();
        let e = parse("exp(a)", 5).unwrap();
        assert!(matches!(e, Expr::Exp(_)));
        assert_eq!(e.eval(&alg, 2).unwrap(), eval("1 + a + 1/2*a*a").truncated(2));
        assert_eq!(parse("e", 5).unwrap(), Expr::Letter(4));
        assert!(parse("exp(1 + a)", 2).unwrap().eval(&TensorAlgebra::new(2).unwrap(), 3).is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" [ a , b ] * 2 / 3 ", 2).unwrap(), parse("[a,b]*2/3", 2).unwrap());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["a - (b - a)", "[a, [a, b]] * 1/2", "exp(a + b) - 1", "((a))"] {
            let e = parse(s, 2).unwrap();
            assert_eq!(parse(&e.to_string(), 2).unwrap(), e);
        }
    }
}
