//! Text form of vectors: `2*h(-1)e(-1)|0,0> - 1/2*e(-2)|0,0>`.
//!
//! ```text
//! vector := "0" | sign? term (("+" | "-") term)*
//! term   := (rational "*")? factor* "|" i "," j ">"
//! factor := gen "(" signed-int ")"        gen in h e f h' e' f'
//! ```
//! Whitespace is ignored. Factors may be in any order and use any mode; the
//! parsed word is normal-ordered.

use num_traits::{One, Signed};

use crate::algebra::{Basis, Symbol};
use crate::error::{Error, Result};
use crate::fock::{FockSpace, FockVector, ModuleId, Monomial};
use crate::scalar::{fmt_scalar, parse_scalar, Scalar};

pub fn render_monomial(m: &Monomial, basis: Basis) -> String {
    let mut s = String::new();
    for f in m.factors() {
        s.push_str(Symbol::from_role(basis, f.role).name());
        s.push_str(&format!("({})", f.mode));
    }
    s
}

/// Renders `v` with the top label of its module, e.g. `h(-1)|0,0>`.
pub fn render(v: &FockVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let i = v.ctx().i;
    let mut out = String::new();
    for (n, (m, c)) in v.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&fmt_scalar(&a));
            out.push('*');
        }
        out.push_str(&render_monomial(m, v.basis()));
        out.push_str(&format!("|{},{}>", i, m.top_index()));
    }
    out
}

/// Coefficient, word, top label and top index.
type Term = (Scalar, Vec<(Symbol, i32)>, u32, u32);

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(o, _)| o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn uint(&mut self) -> Result<u32> {
        let s = self.take_while(|c| c.is_ascii_digit());
        if s.is_empty() {
            return self.err("expected a number");
        }
        s.parse().or_else(|_| self.err("number out of range"))
    }

    fn signed_int(&mut self) -> Result<i32> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.uint()? as i32;
        Ok(if neg { -n } else { n })
    }

    /// `(rational "*")? factor* "|" i "," j ">"`
    fn term(&mut self) -> Result<Term> {
        let mut coeff = Scalar::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.offset();
            let s = self.take_while(|c| c.is_ascii_digit() || c == '/');
            coeff = match parse_scalar(&s) {
                Some(c) => c,
                None => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("bad coefficient '{s}'"),
                    })
                }
            };
            self.expect('*')?;
        }
        let mut word = Vec::new();
        while self.peek() != Some('|') {
            let start = self.pos;
            let name = self.take_while(|c| c.is_ascii_alphabetic() || c == '\'');
            let Some(sym) = Symbol::parse(&name) else {
                self.pos = start;
                return match self.peek() {
                    None => self.err("unexpected end of input"),
                    Some(c) if name.is_empty() => self.err(format!("unexpected '{c}'")),
                    _ => self.err(format!("unknown generator '{name}'")),
                };
            };
            self.expect('(')?;
            let m = self.signed_int()?;
            self.expect(')')?;
            word.push((sym, m));
        }
        self.expect('|')?;
        let i = self.uint()?;
        self.expect(',')?;
        let j = self.uint()?;
        self.expect('>')?;
        Ok((coeff, word, i, j))
    }
}

/// Parses a literal in the module and basis of `space`.
pub fn parse_in(text: &str, space: &mut FockSpace) -> Result<FockVector> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        pos: 0,
        text,
    };
    if p.chars.len() == 1 && p.peek() == Some('0') {
        return Ok(space.zero());
    }
    if p.chars.is_empty() {
        return p.err("empty input");
    }
    let mut out = space.zero();
    let mut first = true;
    while p.peek().is_some() {
        let sign = match p.peek() {
            Some('+') => {
                p.pos += 1;
                Scalar::one()
            }
            Some('-') => {
                p.pos += 1;
                -Scalar::one()
            }
            _ if first => Scalar::one(),
            _ => return p.err("expected '+' or '-'"),
        };
        first = false;
        let term_pos = p.offset();
        let (c, word, i, j) = p.term()?;
        let ctx = space.ctx();
        if i != ctx.i {
            return Err(Error::Syntax {
                pos: term_pos,
                msg: format!("top label {i} does not match module V({},{})", ctx.k, ctx.i),
            });
        }
        if j > i {
            return Err(Error::TopIndexOutOfRange { i, j });
        }
        let v = space.canonicalize(&word, j)?;
        out.add_scaled(&v, &(sign * c))?;
    }
    Ok(out)
}

/// Parses into the Chevalley basis of `V(k,i)`.
pub fn parse_vector_literal(text: &str, ctx: ModuleId) -> Result<FockVector> {
    let mut space = FockSpace::new(ctx, Basis::Chevalley);
    parse_in(text, &mut space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn ctx(k: u32, i: u32) -> ModuleId {
        ModuleId::new(k, i).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = parse_vector_literal("h(-1)e(-1)|0,0>", ctx(4, 0)).unwrap();
        assert_eq!(render(&a), "h(-1)e(-1)|0,0>");
        let b = parse_vector_literal("e(-1)h(-1)|0,0>", ctx(4, 0)).unwrap();
        assert_eq!(render(&b), "-2*e(-2)|0,0> + h(-1)e(-1)|0,0>");
        let err = parse_vector_literal("g(-1)|0,0>", ctx(4, 0)).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                pos: 0,
                msg: "unknown generator 'g'".into()
            }
        );
    }

    #[test]
    fn parse_coefficients_and_whitespace() {
        let v = parse_vector_literal(" 3/2 * f(-2) | 2 , 1 > - |2,0>", ctx(3, 2)).unwrap();
        assert_eq!(render(&v), "-|2,0> + 3/2*f(-2)|2,1>");
        assert_eq!(parse_vector_literal("0", ctx(3, 0)).unwrap().len(), 0);
        assert_eq!(
            parse_vector_literal("e(1)f(-1)|0,0>", ctx(3, 0)).unwrap(),
            FockVector::top_vector(ctx(3, 0), Basis::Chevalley, 0)
                .unwrap()
                .scaled(&int(3))
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_vector_literal("|0,1>", ctx(3, 0)),
            Err(Error::TopIndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_vector_literal("|1,0>", ctx(3, 0)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_vector_literal("h(-1)", ctx(3, 0)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_vector_literal("h(-1)|0,0> h(-2)|0,0>", ctx(3, 0)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_vector_literal("", ctx(3, 0)),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn primed_symbols() {
        let mut pr = FockSpace::new(ctx(3, 1), Basis::Primed);
        let v = parse_in("e'(-1)h'(-1)|1,0>", &mut pr).unwrap();
        assert_eq!(parse_in(&render(&v), &mut pr).unwrap(), v);
        let ch = parse_vector_literal("h'(-1)|1,0>", ctx(3, 1)).unwrap();
        assert_eq!(render(&ch), "e(-1)|1,0> + f(-1)|1,0>");
    }
}
