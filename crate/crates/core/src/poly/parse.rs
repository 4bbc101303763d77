//! Recursive-descent parser for
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := 'z'uint | 'zb'uint | 'i' | number | '(' expr ')' | 'conj' '(' expr ')'
//! number := uint ('/' uint)? 'i'?
//! ```
//!
//! Whitespace is insignificant except inside a number. Every production
//! evaluates straight to a canonical [`MixedPolynomial`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::MixedPolynomial;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number { value: BigRational, imag: bool },
    I,
    Z(usize),
    Zb(usize),
    Conj,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    /// Next token and the byte offset where it starts.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let simple = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        let rest = &self.src[self.pos..];
        let tok = if rest.starts_with(b"conj") {
            self.pos += 4;
            Tok::Conj
        } else if rest.starts_with(b"zb") {
            self.pos += 2;
            Tok::Zb(self.index()?)
        } else if c == b'z' {
            self.pos += 1;
            Tok::Z(self.index()?)
        } else if c == b'i' {
            self.pos += 1;
            Tok::I
        } else if c.is_ascii_digit() {
            let numer = self.digits().ok_or_else(|| self.err("digit"))?;
            let mut value = BigRational::from_integer(numer);
            if self.src.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                let denom = self.digits().ok_or_else(|| self.err("denominator"))?;
                if denom.is_zero() {
                    self.pos -= 1;
                    return Err(self.err("nonzero denominator"));
                }
                value /= BigRational::from_integer(denom);
            }
            let imag = self.src.get(self.pos) == Some(&b'i');
            if imag {
                self.pos += 1;
            }
            Tok::Number { value, imag }
        } else {
            return Err(self.err("'z', 'zb', 'i', number, '(' or 'conj'"));
        };
        Ok((tok, start))
    }

    fn index(&mut self) -> Result<usize> {
        let d = self.digits().ok_or_else(|| self.err("variable index"))?;
        usize::try_from(d).map_err(|_| self.err("small variable index"))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.at,
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.tok == t {
            self.bump()
        } else {
            Err(self.err(what))
        }
    }

    fn expr(&mut self) -> Result<MixedPolynomial> {
        let negate = self.tok == Tok::Minus;
        if negate {
            self.bump()?;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Star {
            self.bump()?;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MixedPolynomial> {
        let base = self.base()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let k = match &self.tok {
            Tok::Number { value, imag: false } if value.is_integer() => {
                u32::try_from(value.to_integer()).map_err(|_| self.err("small exponent"))?
            }
            _ => return Err(self.err("unsigned integer exponent")),
        };
        self.bump()?;
        Ok(base.pow(k))
    }

    fn var_index(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            Err(Error::IndexOutOfRange { index: k, n: self.n })
        } else {
            Ok(k - 1)
        }
    }

    fn base(&mut self) -> Result<MixedPolynomial> {
        let n = self.n;
        let out = match self.tok.clone() {
            Tok::Z(k) => MixedPolynomial::variable(n, self.var_index(k)?, false),
            Tok::Zb(k) => MixedPolynomial::variable(n, self.var_index(k)?, true),
            Tok::I => MixedPolynomial::constant(n, GaussianRational::i()),
            Tok::Number { value, imag } => {
                let zero = BigRational::zero();
                let c = if imag {
                    GaussianRational::new(zero, value)
                } else {
                    GaussianRational::new(value, zero)
                };
                MixedPolynomial::constant(n, c)
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.err("')'"));
                }
                inner
            }
            Tok::Conj => {
                self.bump()?;
                self.expect(Tok::LParen, "'(' after conj")?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.err("')'"));
                }
                inner.conjugate()
            }
            _ => return Err(self.err("'z', 'zb', 'i', number, '(' or 'conj'")),
        };
        self.bump()?;
        Ok(out)
    }
}

pub(super) fn parse(text: &str, n: usize) -> Result<MixedPolynomial> {
    let mut p = Parser {
        lex: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
        n,
    };
    p.bump()?;
    let f = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.err("'+', '-', '*' or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentPair;

    fn ep(nu: [u32; 2], mu: [u32; 2]) -> ExponentPair {
        ExponentPair::new(nu.to_vec(), mu.to_vec())
    }

    #[test]
    fn expands_conjugated_product() {
        let f = parse("(z1^4 + z2^3)*conj(z1^2 + z2^3)", 2).unwrap();
        let exps: Vec<_> = f.terms().iter().map(|t| t.exps.clone()).collect();
        let mut expected = vec![
            ep([4, 0], [2, 0]),
            ep([4, 0], [0, 3]),
            ep([0, 3], [2, 0]),
            ep([0, 3], [0, 3]),
        ];
        expected.sort();
        assert_eq!(exps, expected);
        assert!(f.terms().iter().all(|t| t.coeff == GaussianRational::from_ints(1, 0)));
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = parse("z1*zb1 - z1*zb1", 1).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.render(), "0");
    }

    #[test]
    fn family_member() {
        let f = parse("z1^4*zb1^2 + z1^2*zb1^2*z2^1*zb2^2 + zb1^2*z2^3 + z2^3*zb2^3", 2).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.terms().iter().any(|t| t.exps == ep([2, 1], [2, 2])));
    }

    #[test]
    fn gaussian_literals() {
        let f = parse("2i*z1 + i*zb1 + 3/2", 1).unwrap();
        assert_eq!(f.len(), 3);
        let g = parse("conj(2i*z1)", 1).unwrap();
        assert_eq!(g.terms()[0].coeff, GaussianRational::from_ints(0, -2));
        assert_eq!(g.terms()[0].exps, ExponentPair::new(vec![0], vec![1]));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("z3", 2), Err(Error::IndexOutOfRange { index: 3, n: 2 }));
        assert!(matches!(parse("z0", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse("z1 z2", 2), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse("z1 +", 2), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse("(z1", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z1^i", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("2 i", 2), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_round_trip() {
        let f = parse("(z1^4 + z2^3)*conj(z1^2 + z2^3)", 2).unwrap();
        assert_eq!(parse(&f.render(), 2).unwrap(), f);
        let g = parse("(1 - 3/2i)*z1*zb2 - 2i*zb1^3 - 7 + i", 2).unwrap();
        assert_eq!(parse(&g.render(), 2).unwrap(), g);
    }
}
