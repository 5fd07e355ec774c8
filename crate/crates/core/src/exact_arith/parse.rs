//! Small expression language for field elements.
//!
//! Grammar: `+ - * / ^`, parentheses, integers, and the atoms
//! `z` (primitive 72nd root), `w`, `i`, `tau`, `sqrt2`, `sqrt3`, `sqrt6`,
//! `zeta(n, k)` and `sqrt(q)` for a rational `q`.

use num_bigint::BigInt;

use super::{ArithError, Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ArithError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[st..i].iter().collect();
            out.push(Tok::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ArithError::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ArithError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ArithError::Parse(format!("expected `{c}` at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, ArithError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, ArithError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.try_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclotomic, ArithError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cyclotomic, ArithError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.int()?;
            let e: i64 = e.try_into().map_err(|_| ArithError::Parse("exponent too large".into()))?;
            if neg && base.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            return Ok(base.pow(if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt, ArithError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(ArithError::Parse(format!("expected integer at token {}", self.pos))),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ArithError> {
        let neg = self.eat('-');
        let n: i64 = self.int()?.try_into().map_err(|_| ArithError::Parse("integer too large".into()))?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Cyclotomic, ArithError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Cyclotomic::from_rational(&Rational::from_int(n)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "z" => Ok(Cyclotomic::zeta(1)),
                    "w" => Ok(Cyclotomic::omega()),
                    "i" => Ok(Cyclotomic::i()),
                    "tau" => Ok(Cyclotomic::tau()),
                    "sqrt2" => Ok(Cyclotomic::sqrt2()),
                    "sqrt3" => Ok(Cyclotomic::sqrt3()),
                    "sqrt6" => Ok(&Cyclotomic::sqrt2() * &Cyclotomic::sqrt3()),
                    "zeta" => {
                        self.expect('(')?;
                        let n = self.signed_int()?;
                        self.expect(',')?;
                        let k = self.signed_int()?;
                        self.expect(')')?;
                        Cyclotomic::root_of_unity(n, k)
                    }
                    "sqrt" => {
                        self.expect('(')?;
                        let v = self.expr()?;
                        self.expect(')')?;
                        let r = v
                            .as_rational()
                            .ok_or_else(|| ArithError::Parse("sqrt() takes a rational argument".into()))?;
                        Cyclotomic::sqrt_rational(&r).ok_or_else(|| ArithError::NotInField(format!("sqrt({r})")))
                    }
                    other => Err(ArithError::Parse(format!("unknown identifier `{other}`"))),
                }
            }
            other => Err(ArithError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression such as `1/sqrt2 * (1 - w^2)` or the canonical text form.
pub fn parse_expr(s: &str) -> Result<Cyclotomic, ArithError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ArithError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ArithError::Parse(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_atoms() {
        assert_eq!(parse_expr("w").unwrap(), Cyclotomic::omega());
        assert_eq!(parse_expr("-w^2*i").unwrap(), -(&Cyclotomic::omega().pow(2) * &Cyclotomic::i()));
        assert_eq!(parse_expr("1/sqrt2 * sqrt2").unwrap(), Cyclotomic::one());
        assert_eq!(parse_expr("zeta(18,-1)").unwrap(), Cyclotomic::tau());
        assert_eq!(parse_expr("sqrt(3/4)").unwrap(), parse_expr("sqrt3/2").unwrap());
        assert_eq!(parse_expr("z^-1").unwrap(), Cyclotomic::zeta(71));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("foo").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("sqrt(5)").is_err());
        assert!(parse_expr("(1").is_err());
    }
}
