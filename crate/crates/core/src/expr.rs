//! Operator expressions over a twisted or untwisted module, used to state
//! identities in the case registry.
//!
//! ```text
//! vexpr  := sign? vterm (sign vterm)*
//! vterm  := coeff? item* base?
//! coeff  := "[" arith "]" | rational            optionally followed by "*"
//! item   := op ("^" n)?  |  "(" opsum ")" ("^" n)?
//! opsum  := sign? coeff? op+ (sign coeff? op+)*
//! op     := gen mode  |  state mode
//! gen    := h | e | f | h' | e' | f' | h'' | "(" e-f ")" style combination
//! state  := W3 | omega | omega_aff | omega_gamma | xi1..xi9 | '"' literal '"'
//! mode   := "_{" half "}"   (twisted)   |   "(" int ")"   (untwisted)
//! base   := eta | vac | w | v[arith] | state name | "{" vexpr "}"
//! arith  := integer arithmetic in k, i, j with + - * / ^ and parentheses
//! ```
//! Operators apply right to left. A term without a base acts on the operand
//! `w`. `v[j]` outside `0..=i` is the zero vector.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{GenElem, Symbol};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::modes::StateName;
use crate::scalar::{int, HalfInt, Scalar};
use crate::twist::TwistedModule;

/// Integer-valued parameters visible to `arith`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arith {
    Num(i64),
    Var(char),
    Neg(Box<Arith>),
    Bin(char, Box<Arith>, Box<Arith>),
    Pow(Box<Arith>, u32),
}

impl Arith {
    pub fn eval(&self, p: &Params) -> Result<Scalar> {
        Ok(match self {
            Arith::Num(n) => int(*n),
            Arith::Var('k') => int(p.k),
            Arith::Var('i') => int(p.i),
            Arith::Var('j') => int(p.j),
            Arith::Var(c) => return Err(Error::Expr(format!("unknown variable '{c}'"))),
            Arith::Neg(a) => -a.eval(p)?,
            Arith::Pow(a, n) => {
                let b = a.eval(p)?;
                (0..*n).fold(Scalar::one(), |acc, _| acc * &b)
            }
            Arith::Bin(op, a, b) => {
                let (x, y) = (a.eval(p)?, b.eval(p)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ => {
                        if y.is_zero() {
                            return Err(Error::Expr("division by zero".into()));
                        }
                        x / y
                    }
                }
            }
        })
    }

    /// Evaluates to an integer, or `None` for a non-integral value.
    pub fn eval_int(&self, p: &Params) -> Result<Option<i64>> {
        let v = self.eval(p)?;
        Ok(v.is_integer()
            .then(|| i64::try_from(v.to_integer()).ok())
            .flatten())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateRef {
    Named(StateName),
    Literal(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Twisted(HalfInt),
    Untwisted(i32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Gen(GenElem, Mode),
    State(StateRef, Mode),
    Sum(Vec<OpTerm>),
    Power(Box<Op>, u32),
}

/// A scaled operator product inside a parenthesized sum.
#[derive(Clone, Debug, PartialEq)]
pub struct OpTerm {
    pub coeff: Arith,
    pub negate: bool,
    pub ops: Vec<Op>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    Eta,
    Vacuum,
    Operand,
    Top(Arith),
    State(StateName),
    Sub(Box<VExpr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Arith,
    pub negate: bool,
    pub ops: Vec<Op>,
    pub base: Base,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VExpr {
    pub terms: Vec<Term>,
}

struct P<'a> {
    s: &'a [u8],
    pos: usize,
}

impl P<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("number out of range"))
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            let continues_name = c.is_ascii_alphanumeric()
                || (c == b'_'
                    && self
                        .s
                        .get(self.pos + 1)
                        .is_some_and(|n| n.is_ascii_alphabetic()));
            if !continues_name {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    // arith
    fn arith(&mut self) -> Result<Arith> {
        let mut a = self.arith_term()?;
        loop {
            if self.eat(b'+') {
                a = Arith::Bin('+', Box::new(a), Box::new(self.arith_term()?));
            } else if self.eat(b'-') {
                a = Arith::Bin('-', Box::new(a), Box::new(self.arith_term()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn arith_term(&mut self) -> Result<Arith> {
        let mut a = self.arith_factor()?;
        loop {
            if self.eat(b'*') {
                a = Arith::Bin('*', Box::new(a), Box::new(self.arith_factor()?));
            } else if self.eat(b'/') {
                a = Arith::Bin('/', Box::new(a), Box::new(self.arith_factor()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn arith_factor(&mut self) -> Result<Arith> {
        if self.eat(b'-') {
            return Ok(Arith::Neg(Box::new(self.arith_factor()?)));
        }
        let atom = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.arith()?;
                self.expect(b')')?;
                a
            }
            Some(c) if c.is_ascii_digit() => Arith::Num(self.uint()?),
            Some(c @ (b'k' | b'i' | b'j')) => {
                self.pos += 1;
                Arith::Var(c as char)
            }
            _ => return self.err("expected a number, k, i, j or '('"),
        };
        if self.eat(b'^') {
            let n = self.uint()?;
            return Ok(Arith::Pow(Box::new(atom), n as u32));
        }
        Ok(atom)
    }

    fn half(&mut self) -> Result<HalfInt> {
        let neg = self.eat(b'-');
        let num = self.uint()?;
        let den = if self.eat(b'/') { self.uint()? } else { 1 };
        let twice = match den {
            1 => 2 * num,
            2 => num,
            _ => return self.err("mode index must be a half-integer"),
        };
        if den == 2 && num % 2 == 0 {
            return self.err("mode index must be written in lowest terms");
        }
        Ok(HalfInt::from_twice(if neg { -twice } else { twice }))
    }

    fn mode(&mut self) -> Result<Option<Mode>> {
        self.ws();
        if self.eat_str("_{") {
            let h = self.half()?;
            self.expect(b'}')?;
            return Ok(Some(Mode::Twisted(h)));
        }
        let save = self.pos;
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            if let Ok(n) = self.uint() {
                if self.eat(b')') {
                    let n = n as i32;
                    return Ok(Some(Mode::Untwisted(if neg { -n } else { n })));
                }
            }
            self.pos = save;
        }
        Ok(None)
    }

    fn gensym(&mut self) -> Option<GenElem> {
        self.ws();
        let rest = &self.s[self.pos..];
        let (g, len) = match rest {
            [b'h', b'\'', b'\'', ..] => (GenElem::h_double_prime(), 3),
            [c @ (b'h' | b'e' | b'f'), b'\'', ..] => {
                let s = Symbol::parse(&format!("{}'", *c as char)).expect("primed symbol");
                (GenElem::symbol(s), 2)
            }
            [c @ (b'h' | b'e' | b'f'), next, ..] if !next.is_ascii_alphanumeric() => (
                GenElem::symbol(Symbol::parse(&(*c as char).to_string()).expect("symbol")),
                1,
            ),
            [c @ (b'h' | b'e' | b'f')] => (
                GenElem::symbol(Symbol::parse(&(*c as char).to_string()).expect("symbol")),
                1,
            ),
            _ => return None,
        };
        self.pos += len;
        Some(g)
    }

    /// `(e-f)`-style combination; restores the position on failure.
    fn gencombo(&mut self) -> Option<GenElem> {
        let save = self.pos;
        let attempt = (|| -> Option<GenElem> {
            if !self.eat(b'(') {
                return None;
            }
            let mut acc: Option<GenElem> = None;
            let mut first = true;
            loop {
                let sign = if self.eat(b'-') {
                    -1
                } else if self.eat(b'+') || first {
                    1
                } else {
                    break;
                };
                first = false;
                let c = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let n = self.uint().ok()?;
                    let d = if self.eat(b'/') { self.uint().ok()? } else { 1 };
                    self.eat(b'*');
                    Scalar::new(n.into(), d.into())
                } else {
                    Scalar::one()
                };
                let g = self.gensym()?.scaled(&(c * int(sign)));
                acc = Some(match acc {
                    None => g,
                    Some(a) => a.add(&g).ok()?,
                });
            }
            if !self.eat(b')') {
                return None;
            }
            acc
        })();
        if attempt.is_none() {
            self.pos = save;
        }
        attempt
    }

    fn state_ref(&mut self) -> Result<Option<StateRef>> {
        if self.peek() == Some(b'"') {
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos] != b'"' {
                self.pos += 1;
            }
            if self.pos == self.s.len() {
                return self.err("unterminated literal");
            }
            let lit = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
            self.pos += 1;
            return Ok(Some(StateRef::Literal(lit)));
        }
        let save = self.pos;
        let id = self.ident();
        match id.parse::<StateName>() {
            Ok(n) if !id.is_empty() => Ok(Some(StateRef::Named(n))),
            _ => {
                self.pos = save;
                Ok(None)
            }
        }
    }

    fn power(&mut self, op: Op) -> Result<Op> {
        if self.eat(b'^') {
            let n = self.uint()?;
            return Ok(Op::Power(Box::new(op), n as u32));
        }
        Ok(op)
    }

    /// One operator, or `None` if the next token is not an operator.
    fn op(&mut self) -> Result<Option<Op>> {
        let save = self.pos;
        if let Some(g) = self.gencombo().or_else(|| self.gensym()) {
            if let Some(m) = self.mode()? {
                return self.power(Op::Gen(g, m)).map(Some);
            }
            self.pos = save;
        }
        if let Some(s) = self.state_ref()? {
            if let Some(m) = self.mode()? {
                return self.power(Op::State(s, m)).map(Some);
            }
            self.pos = save;
        }
        if self.eat(b'(') {
            if let Some(sum) = self.opsum()? {
                return self.power(Op::Sum(sum)).map(Some);
            }
            self.pos = save;
        }
        Ok(None)
    }

    /// Body of `( opsum )` after the opening parenthesis, consuming `)`.
    fn opsum(&mut self) -> Result<Option<Vec<OpTerm>>> {
        let mut out = Vec::new();
        let mut negate = self.eat(b'-');
        loop {
            let coeff = self.coeff()?;
            let mut ops = Vec::new();
            while let Some(o) = self.op()? {
                ops.push(o);
            }
            if ops.is_empty() {
                return Ok(None);
            }
            out.push(OpTerm { coeff, negate, ops });
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else if self.eat(b')') {
                return Ok(Some(out));
            } else {
                return Ok(None);
            }
        }
    }

    fn coeff(&mut self) -> Result<Arith> {
        if self.eat(b'[') {
            let a = self.arith()?;
            self.expect(b']')?;
            self.eat(b'*');
            return Ok(a);
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.uint()?;
            let a = if self.eat(b'/') {
                Arith::Bin(
                    '/',
                    Box::new(Arith::Num(n)),
                    Box::new(Arith::Num(self.uint()?)),
                )
            } else {
                Arith::Num(n)
            };
            self.eat(b'*');
            return Ok(a);
        }
        Ok(Arith::Num(1))
    }

    fn base(&mut self) -> Result<Option<Base>> {
        let save = self.pos;
        if self.eat(b'{') {
            let e = self.vexpr_until(Some(b'}'))?;
            return Ok(Some(Base::Sub(Box::new(e))));
        }
        if self.eat_str("v[") {
            let a = self.arith()?;
            self.expect(b']')?;
            return Ok(Some(Base::Top(a)));
        }
        let id = self.ident();
        Ok(Some(match id.as_str() {
            "eta" => Base::Eta,
            "vac" => Base::Vacuum,
            "w" => Base::Operand,
            other => match other.parse::<StateName>() {
                Ok(n) if !other.is_empty() => Base::State(n),
                _ => {
                    self.pos = save;
                    return Ok(None);
                }
            },
        }))
    }

    fn term(&mut self, negate: bool) -> Result<Term> {
        let coeff = self.coeff()?;
        let mut ops = Vec::new();
        while let Some(o) = self.op()? {
            ops.push(o);
        }
        let base = match self.base()? {
            Some(b) => b,
            None => {
                let more = self
                    .peek()
                    .is_some_and(|c| !matches!(c, b'+' | b'-' | b'}'));
                if more {
                    return self.err("expected an operator or a base vector");
                }
                Base::Operand
            }
        };
        Ok(Term {
            coeff,
            negate,
            ops,
            base,
        })
    }

    fn vexpr(&mut self) -> Result<VExpr> {
        self.vexpr_until(None)
    }

    /// Parses a sum up to end of input, or up to and including `close`.
    fn vexpr_until(&mut self, close: Option<u8>) -> Result<VExpr> {
        let mut terms = Vec::new();
        if self.peek().is_none() || self.peek() == close {
            return self.err("empty expression");
        }
        if self.peek() == Some(b'0') && self.s[self.pos + 1..].iter().all(u8::is_ascii_whitespace) {
            self.pos = self.s.len();
            return Ok(VExpr { terms });
        }
        let mut negate = self.eat(b'-');
        loop {
            terms.push(self.term(negate)?);
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else if close.map_or(self.peek().is_none(), |c| self.eat(c)) {
                return Ok(VExpr { terms });
            } else {
                return self.err("expected '+' or '-'");
            }
        }
    }
}

pub fn parse_arith(text: &str) -> Result<Arith> {
    let mut p = P {
        s: text.as_bytes(),
        pos: 0,
    };
    let a = p.arith()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(a)
}

pub fn parse_vexpr(text: &str) -> Result<VExpr> {
    let mut p = P {
        s: text.as_bytes(),
        pos: 0,
    };
    p.vexpr()
}

/// Evaluation environment: the module session, parameters and operand.
pub struct Env<'a> {
    pub module: &'a mut TwistedModule,
    pub params: Params,
    pub operand: Option<FockVector>,
}

impl Env<'_> {
    fn state(&mut self, s: &StateRef) -> Result<FockVector> {
        match s {
            StateRef::Named(n) => self.module.state(*n),
            StateRef::Literal(text) => crate::literal::parse_in(text, self.module.vacuum_space()),
        }
    }

    fn apply(&mut self, op: &Op, v: FockVector) -> Result<FockVector> {
        match op {
            Op::Gen(g, Mode::Twisted(n)) => self.module.twisted_gen_mode(g, *n, &v),
            Op::Gen(g, Mode::Untwisted(m)) => {
                let r = self.module.space().apply_mode(g, *m, &v)?;
                self.module.reduce(&r)
            }
            Op::State(s, Mode::Twisted(n)) => {
                let u = self.state(s)?;
                self.module.twisted_mode(&u, *n, &v)
            }
            Op::State(s, Mode::Untwisted(m)) => {
                let u = self.state(s)?;
                let r = self.module.space().composite_mode(&u, *m, &v)?;
                self.module.reduce(&r)
            }
            Op::Sum(terms) => {
                let mut out = self.module.space().zero();
                for t in terms {
                    let mut c = t.coeff.eval(&self.params)?;
                    if t.negate {
                        c = -c;
                    }
                    let mut cur = v.clone();
                    for o in t.ops.iter().rev() {
                        cur = self.apply(o, cur)?;
                    }
                    out.add_scaled(&cur, &c)?;
                }
                Ok(out)
            }
            Op::Power(o, n) => {
                let mut cur = v;
                for _ in 0..*n {
                    cur = self.apply(o, cur)?;
                }
                Ok(cur)
            }
        }
    }

    fn base(&mut self, b: &Base) -> Result<FockVector> {
        let ctx = self.module.ctx();
        let v = match b {
            Base::Eta => self.module.eta(),
            Base::Vacuum => {
                if ctx.i != 0 {
                    return Err(Error::Expr("vac is only defined on V(k,0)".into()));
                }
                self.module.space().top(0)?
            }
            Base::Operand => self
                .operand
                .clone()
                .ok_or_else(|| Error::Expr("no operand for an operator expression".into()))?,
            Base::Top(a) => match a.eval_int(&self.params)? {
                Some(j) if (0..=ctx.i as i64).contains(&j) => self.module.space().top(j as u32)?,
                Some(_) => self.module.space().zero(),
                None => return Err(Error::Expr("top index is not an integer".into())),
            },
            Base::State(n) => {
                if ctx.i != 0 {
                    return Err(Error::Expr(format!("{n} is a vector of V(k,0)")));
                }
                self.module.state(*n)?
            }
            Base::Sub(e) => return self.eval(e),
        };
        self.module.reduce(&v)
    }

    pub fn eval(&mut self, e: &VExpr) -> Result<FockVector> {
        let mut out = self.module.space().zero();
        for t in &e.terms {
            let mut c = t.coeff.eval(&self.params)?;
            if t.negate {
                c = -c;
            }
            if c.is_zero() {
                continue;
            }
            let mut v = self.base(&t.base)?;
            for o in t.ops.iter().rev() {
                if v.is_zero() {
                    break;
                }
                v = self.apply(o, v)?;
            }
            out.add_scaled(&v, &c)?;
        }
        Ok(out)
    }
}

/// Convenience: evaluates `text` on `module` without an operand.
pub fn eval_str(text: &str, module: &mut TwistedModule, params: Params) -> Result<FockVector> {
    let e = parse_vexpr(text)?;
    Env {
        module,
        params,
        operand: None,
    }
    .eval(&e)
}

/// Parses `{ "q" = vexpr }` maps used for Laurent expansions.
pub fn parse_laurent(entries: &BTreeMap<String, String>) -> Result<Vec<(HalfInt, VExpr)>> {
    entries
        .iter()
        .map(|(q, e)| {
            let mut p = P {
                s: q.as_bytes(),
                pos: 0,
            };
            let h = p.half()?;
            Ok((h, parse_vexpr(e)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModuleId;
    use crate::scalar::frac;

    fn params(k: i64, i: i64, j: i64) -> Params {
        Params { k, i, j }
    }

    #[test]
    fn arith_eval() {
        let a = parse_arith("(3*k-2)/(4*k*(k+2))").unwrap();
        assert_eq!(a.eval(&params(4, 0, 0)).unwrap(), frac(10, 96));
        let a = parse_arith("-3*k/2*(k/2-i)^2").unwrap();
        assert_eq!(a.eval(&params(6, 1, 0)).unwrap(), int(-36));
        assert!(parse_arith("k+").is_err());
        assert_eq!(
            parse_arith("i/2")
                .unwrap()
                .eval_int(&params(3, 3, 0))
                .unwrap(),
            None
        );
    }

    #[test]
    fn parse_shapes() {
        let e = parse_vexpr("[-3*k/2] h_{-1/2} eta + 15/8 (e-f)_{-1/2}^2 eta").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[1].ops.len(), 1);
        assert!(matches!(e.terms[1].ops[0], Op::Power(_, 2)));
        let e = parse_vexpr("\"h(-3)|0,0>\"_{5/2}").unwrap();
        assert_eq!(e.terms[0].base, Base::Operand);
        let e = parse_vexpr("2 h_{-1/2} (h_{1/2})^2").unwrap();
        assert!(matches!(&e.terms[0].ops[1], Op::Power(g, 2) if matches!(**g, Op::Sum(_))));
        let e = parse_vexpr("2 (e'(0)+f'(-1))^3 eta - [k] {h(-1) v[j] - v[j]}").unwrap();
        assert!(
            matches!(&e.terms[0].ops[0], Op::Power(g, 3) if matches!(&**g, Op::Sum(t) if t.len() == 2))
        );
        assert!(matches!(&e.terms[1].base, Base::Sub(s) if s.terms.len() == 2));
        let e = parse_vexpr("omega_aff - W3(1) v[j+1]").unwrap();
        assert_eq!(e.terms[0].base, Base::State(StateName::OmegaAff));
        assert!(e.terms[1].negate);
        assert!(parse_vexpr("h_{1/3} eta").is_err());
        assert!(parse_vexpr("q eta").is_err());
        assert_eq!(parse_vexpr("0").unwrap().terms.len(), 0);
    }

    #[test]
    fn eval_simple_identities() {
        let ctx = ModuleId::new(4, 2).unwrap();
        let mut m = TwistedModule::new(ctx);
        let p = params(4, 2, 1);
        let a = eval_str("(e'+f')_{1/2} (e-f)_{-1/2} eta", &mut m, p).unwrap();
        let b = eval_str("2 (e+f)_{0} eta", &mut m, p).unwrap();
        assert_eq!(a, b);
        assert!(a.is_zero());
        let top = eval_str("v[j] + v[j+5]", &mut m, p).unwrap();
        assert_eq!(top, m.space().top(1).unwrap());
        let mut v = TwistedModule::verma(ModuleId::new(4, 0).unwrap());
        let w = eval_str("omega_aff", &mut v, params(4, 0, 0)).unwrap();
        assert_eq!(w, v.state(StateName::OmegaAff).unwrap());
        assert!(eval_str("h(1) W3(-1) vac", &mut v, params(4, 0, 0))
            .unwrap()
            .is_zero());
    }
}
