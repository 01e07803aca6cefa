use num_bigint::BigInt;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::vartable::TableRef;
use crate::error::{Error, Result};
use crate::exactalg::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let syntax = |line, column, message: String| Error::Syntax { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Int(s.parse().unwrap()), l0, c0));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            col += i - start;
            // indexed name such as u[2,0] or b[1,2]; whitespace inside brackets is dropped
            let mut j = i;
            while j < chars.len() && chars[j] == ' ' {
                j += 1;
            }
            if j < chars.len() && chars[j] == '[' {
                col += j - i;
                i = j + 1;
                col += 1;
                let mut idx = Vec::new();
                let mut cur = String::new();
                loop {
                    let Some(&d) = chars.get(i) else {
                        return Err(syntax(line, col, "unterminated index list".into()));
                    };
                    i += 1;
                    col += 1;
                    match d {
                        '0'..='9' => cur.push(d),
                        ' ' => {}
                        ',' | ']' => {
                            if cur.is_empty() {
                                return Err(syntax(line, col - 1, "expected integer index".into()));
                            }
                            idx.push(cur.trim_start_matches('0').to_string());
                            cur.clear();
                            if d == ']' {
                                break;
                            }
                        }
                        _ => return Err(syntax(line, col - 1, format!("unexpected `{d}` in index list"))),
                    }
                }
                let idx: Vec<String> = idx.into_iter().map(|s| if s.is_empty() { "0".into() } else { s }).collect();
                name = format!("{name}[{}]", idx.join(","));
            }
            toks.push((Tok::Name(name), l0, c0));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), l0, c0));
            i += 1;
            col += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    table: &'a TableRef,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.lx.toks[self.pos].0
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (_, line, column) = self.lx.toks[self.pos];
        Error::Syntax {
            line,
            column,
            message: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                if rhs.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Tok::Op('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.base()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.err("expected integer exponent"));
        };
        let e: i32 = i32::try_from(n).map_err(|_| self.err("exponent too large"))?;
        self.pos += 1;
        base.pow(if neg { -e } else { e })
    }

    fn base(&mut self) -> Result<RatFunc> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(RatFunc::constant(self.table, Rational::from_bigint(n)))
            }
            Tok::Name(name) => {
                let v = self.table.index_of(&name).ok_or(Error::UnknownVariable(name))?;
                self.pos += 1;
                Ok(RatFunc::var(self.table, v))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            Tok::Op(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses an expression over the variables of `table`.
pub fn parse_expression(text: &str, table: &TableRef) -> Result<RatFunc> {
    let lx = lex(text)?;
    let mut p = Parser { lx, pos: 0, table };
    let r = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(r)
}

/// Parses and requires a polynomial result.
pub fn parse_polynomial(text: &str, table: &TableRef) -> Result<MultiPoly> {
    let r = parse_expression(text, table)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("`{text}` is not a polynomial")))
}

/// Names of all indexed or plain identifiers in `text`, in order of first
/// appearance, normalized as the parser sees them.
pub fn scan_names(text: &str) -> Result<Vec<String>> {
    let lx = lex(text)?;
    let mut out: Vec<String> = Vec::new();
    for (t, _, _) in lx.toks {
        if let Tok::Name(n) = t {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{Monomial, VarTable};

    fn t() -> TableRef {
        VarTable::new(&["x", "y", "u[2,0]", "u[1,1]", "u[0,2]"]).unwrap()
    }

    #[test]
    fn reads_polynomials() {
        let t = t();
        let f = parse_polynomial("x^3 + 3*x*y^2", &t).unwrap();
        assert_eq!(f.coeff(&Monomial::from_exponents(&[3, 0])), Rational::one());
        assert_eq!(f.coeff(&Monomial::from_exponents(&[1, 2])), Rational::from_int(3));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn jet_variables_and_hessian() {
        let t = t();
        let h = parse_expression("u[2,0]*u[0,2] - u[1,1]^2", &t).unwrap();
        let h2 = parse_expression("-(u[1, 1])^2 + u[0,2]*u[2,0]", &t).unwrap();
        assert!(h.equals(&h2));
    }

    #[test]
    fn rational_normalization() {
        let t = t();
        let r = parse_expression("(x+1)/(x-1) * (x-1)", &t).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.to_string(), "x + 1");
        assert_eq!(parse_expression("x^-2", &t).unwrap().to_string(), "(1)/(x^2)");
    }

    #[test]
    fn errors_carry_position() {
        let t = t();
        match parse_expression("x +\n  * y", &t) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_expression("x*w", &t).unwrap_err(), Error::UnknownVariable("w".into()));
        assert!(parse_expression("2x", &t).is_err());
    }
}
