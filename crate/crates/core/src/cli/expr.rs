//! Coefficient expressions: sums of `c·x^k`, `c·cos(ωx)` and `c·sin(ωx)`.
//!
//! ```text
//! 4 + 4*cos(2x)      poly(1000,1)      1 - 0.5x^2 + 3 sin(x)
//! ```

use super::decimal::decimal_interval;
use crate::ival::Interval;
use crate::slenclose::{Term, TrigKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, String> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            // Exponent only when followed by a digit, so `2e` stays invalid
            // and `2x` is a product.
            if i + 1 < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if b[j] == b'+' || b[j] == b'-' {
                    j += 1;
                }
                if j < b.len() && (b[j] as char).is_ascii_digit() {
                    i = j;
                    while i < b.len() && (b[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((start, Tok::Num(s[start..i].to_string())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i] as char).is_ascii_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(format!("unexpected '{c}' at column {}", i + 1));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

/// A factor of a product: `c·x^k` or a unit trigonometric term.
enum Factor {
    Mono(Interval, u32),
    Trig(TrigKind, f64),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |t| t.0) + 1
    }

    fn err<T>(&self, what: &str) -> Result<T, String> {
        Err(format!("{what} at column {}", self.col()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<Interval, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                decimal_interval(&n).ok_or_else(|| format!("bad number '{n}'"))
            }
            _ => self.err("expected a number"),
        }
    }

    fn integer(&mut self) -> Result<u32, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse().map_err(|_| format!("expected an integer exponent, got '{n}'"))
            }
            _ => self.err("expected an integer"),
        }
    }

    fn sum(&mut self) -> Result<Vec<Term>, String> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            let mut t = self.product()?;
            if sign < 0.0 {
                t = negate(t);
            }
            terms.push(t);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else if self.pos == self.toks.len() {
                return Ok(terms);
            } else {
                return self.err("expected '+' or '-'");
            }
        }
    }

    fn product(&mut self) -> Result<Term, String> {
        let mut coeff = Interval::ONE;
        let mut degree = 0;
        let mut trig: Option<(TrigKind, f64)> = None;
        loop {
            match self.factor()? {
                Factor::Mono(c, k) => {
                    coeff = coeff * c;
                    degree += k;
                }
                Factor::Trig(..) if trig.is_some() => {
                    return self.err("products of trigonometric terms are not supported")
                }
                Factor::Trig(kind, omega) => trig = Some((kind, omega)),
            }
            if trig.is_some() && degree > 0 {
                return self.err("products of x and trigonometric terms are not supported");
            }
            let implicit = matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('(')));
            if !(self.eat('*') || implicit) {
                break;
            }
        }
        Ok(match trig {
            None => Term::Poly { degree, coeff },
            Some((kind, omega)) => Term::Trig { kind, omega, coeff },
        })
    }

    fn factor(&mut self) -> Result<Factor, String> {
        match self.peek().cloned() {
            Some(Tok::Num(_)) => Ok(Factor::Mono(self.number()?, 0)),
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let neg = self.eat('-');
                let c = self.number()?;
                self.expect(')')?;
                Ok(Factor::Mono(if neg { -c } else { c }, 0))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "x" => Ok(Factor::Mono(Interval::ONE, if self.eat('^') { self.integer()? } else { 1 })),
                    "cos" | "sin" => {
                        let kind = if id == "cos" { TrigKind::Cos } else { TrigKind::Sin };
                        self.expect('(')?;
                        let omega = if matches!(self.peek(), Some(Tok::Num(_))) {
                            let w = self.number()?;
                            self.eat('*');
                            if w.lo() != w.hi() {
                                return self.err("frequency must be exactly representable");
                            }
                            w.lo()
                        } else {
                            1.0
                        };
                        match self.peek() {
                            Some(Tok::Ident(v)) if v == "x" => self.pos += 1,
                            _ => return self.err("expected x"),
                        }
                        self.expect(')')?;
                        Ok(Factor::Trig(kind, omega))
                    }
                    "poly" => {
                        self.expect('(')?;
                        let neg = self.eat('-');
                        let c = self.number()?;
                        self.expect(',')?;
                        let k = self.integer()?;
                        self.expect(')')?;
                        Ok(Factor::Mono(if neg { -c } else { c }, k))
                    }
                    other => {
                        self.pos -= 1;
                        self.err(&format!("unknown function '{other}'"))
                    }
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

fn negate(t: Term) -> Term {
    match t {
        Term::Poly { degree, coeff } => Term::Poly { degree, coeff: -coeff },
        Term::Trig { kind, omega, coeff } => Term::Trig { kind, omega, coeff: -coeff },
    }
}

/// Terms of a coefficient expression in `x`.
pub fn parse_terms(s: &str) -> Result<Vec<Term>, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0, len: s.len() };
    p.sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_coefficients() {
        let t = parse_terms("4 + 4*cos(2x)").unwrap();
        assert_eq!(t[0], Term::constant(4.0));
        assert_eq!(t[1], Term::Trig { kind: TrigKind::Cos, omega: 2.0, coeff: Interval::point(4.0) });
        assert_eq!(parse_terms("poly(1000,1)").unwrap(), vec![Term::Poly { degree: 1, coeff: Interval::point(1000.0) }]);
        assert_eq!(parse_terms("1000x").unwrap(), parse_terms("poly(1000, 1)").unwrap());
    }

    #[test]
    fn signs_powers_and_inexact_constants() {
        let t = parse_terms("-0.1 x^2 - sin(x)").unwrap();
        match t[0] {
            Term::Poly { degree: 2, coeff } => assert!(coeff.contains(-0.1) && coeff.lo() < coeff.hi()),
            _ => panic!("{t:?}"),
        }
        assert_eq!(t[1], Term::Trig { kind: TrigKind::Sin, omega: 1.0, coeff: Interval::point(-1.0) });
    }

    #[test]
    fn errors_name_the_column() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("x*cos(x)").unwrap_err().contains("not supported"));
        assert!(parse_terms("4 + tan(x)").unwrap_err().contains("column 5"));
        assert!(parse_terms("cos(0.1x)").unwrap_err().contains("exactly"));
    }
}
