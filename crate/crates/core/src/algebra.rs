//! Finite-dimensional sl2 data in two coordinate systems.
//!
//! The Chevalley basis `{h, e, f}` and the primed basis `{h', e', f'}` with
//! `h' = e + f`, `e' = (h - e + f)/2`, `f' = (h + e - f)/2` are both
//! sl2-triples, so brackets and the invariant form are described once in
//! terms of a [`Role`] inside a triple. Only the meaning of the roles, and so
//! the action of `sigma`, differs between the two bases.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_scalar, frac, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Chevalley,
    Primed,
}

/// Position of a generator inside an sl2-triple. The derived order `H < E < F`
/// is the tie-break order of canonical monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    H,
    E,
    F,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::H, Role::E, Role::F];

    /// Eigenvalue of `ad(H)`.
    pub fn weight(self) -> i64 {
        match self {
            Role::H => 0,
            Role::E => 2,
            Role::F => -2,
        }
    }

    /// Contravariant partner: `H -> H`, `E <-> F`.
    pub fn adjoint(self) -> Role {
        match self {
            Role::H => Role::H,
            Role::E => Role::F,
            Role::F => Role::E,
        }
    }

    /// `[a, b]` as an optional `(role, coefficient)`.
    pub fn bracket(a: Role, b: Role) -> Option<(Role, i64)> {
        match (a, b) {
            (Role::H, Role::E) => Some((Role::E, 2)),
            (Role::E, Role::H) => Some((Role::E, -2)),
            (Role::H, Role::F) => Some((Role::F, -2)),
            (Role::F, Role::H) => Some((Role::F, 2)),
            (Role::E, Role::F) => Some((Role::H, 1)),
            (Role::F, Role::E) => Some((Role::H, -1)),
            _ => None,
        }
    }

    /// Normalized invariant form: `(E|F) = 1`, `(H|H) = 2`.
    pub fn form(a: Role, b: Role) -> i64 {
        match (a, b) {
            (Role::H, Role::H) => 2,
            (Role::E, Role::F) | (Role::F, Role::E) => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    H,
    E,
    F,
    HPrime,
    EPrime,
    FPrime,
}

impl Symbol {
    pub fn basis(self) -> Basis {
        match self {
            Symbol::H | Symbol::E | Symbol::F => Basis::Chevalley,
            _ => Basis::Primed,
        }
    }

    pub fn role(self) -> Role {
        match self {
            Symbol::H | Symbol::HPrime => Role::H,
            Symbol::E | Symbol::EPrime => Role::E,
            Symbol::F | Symbol::FPrime => Role::F,
        }
    }

    pub fn from_role(basis: Basis, role: Role) -> Symbol {
        match (basis, role) {
            (Basis::Chevalley, Role::H) => Symbol::H,
            (Basis::Chevalley, Role::E) => Symbol::E,
            (Basis::Chevalley, Role::F) => Symbol::F,
            (Basis::Primed, Role::H) => Symbol::HPrime,
            (Basis::Primed, Role::E) => Symbol::EPrime,
            (Basis::Primed, Role::F) => Symbol::FPrime,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::H => "h",
            Symbol::E => "e",
            Symbol::F => "f",
            Symbol::HPrime => "h'",
            Symbol::EPrime => "e'",
            Symbol::FPrime => "f'",
        }
    }

    pub fn parse(text: &str) -> Option<Symbol> {
        Some(match text {
            "h" => Symbol::H,
            "e" => Symbol::E,
            "f" => Symbol::F,
            "h'" => Symbol::HPrime,
            "e'" => Symbol::EPrime,
            "f'" => Symbol::FPrime,
            _ => return None,
        })
    }
}

/// Element of sl2 in one of the two bases. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenElem {
    basis: Basis,
    coeffs: BTreeMap<Role, Scalar>,
}

impl GenElem {
    pub fn zero(basis: Basis) -> Self {
        GenElem {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut g = GenElem::zero(s.basis());
        g.coeffs.insert(s.role(), Scalar::one());
        g
    }

    pub fn from_role(basis: Basis, role: Role) -> Self {
        GenElem::symbol(Symbol::from_role(basis, role))
    }

    /// Builds an element from symbol/coefficient pairs; all symbols must come
    /// from the same basis.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Symbol, Scalar)>,
    {
        let mut basis = None;
        let mut g = GenElem::zero(Basis::Chevalley);
        for (s, c) in terms {
            match basis {
                None => basis = Some(s.basis()),
                Some(b) if b != s.basis() => return Err(Error::MixedSymbols),
                _ => {}
            }
            g.add_role(s.role(), c);
        }
        g.basis = basis.unwrap_or(Basis::Chevalley);
        Ok(g)
    }

    /// `h'' = h'/4`, stored in the primed basis.
    pub fn h_double_prime() -> Self {
        GenElem::symbol(Symbol::HPrime).scaled(&frac(1, 4))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, role: Role) -> Scalar {
        self.coeffs.get(&role).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Role, &Scalar)> {
        self.coeffs.iter().map(|(r, c)| (*r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_role(&mut self, role: Role, c: Scalar) {
        let entry = self.coeffs.entry(role).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&role);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = GenElem::zero(self.basis);
        for (r, v) in self.terms() {
            out.add_role(r, v * c);
        }
        out
    }

    pub fn add(&self, other: &GenElem) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        let mut out = self.clone();
        for (r, v) in other.terms() {
            out.add_role(r, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GenElem) -> Result<Self> {
        self.add(&other.scaled(&int(-1)))
    }
}

impl fmt::Display for GenElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (r, c)) in self.terms().enumerate() {
            let name = Symbol::from_role(self.basis, r).name();
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{}{name}", fmt_scalar(&mag))?;
            }
        }
        Ok(())
    }
}

fn same_basis(a: &GenElem, b: &GenElem) -> Result<()> {
    if a.basis != b.basis {
        Err(Error::BasisMismatch(a.basis, b.basis))
    } else {
        Ok(())
    }
}

pub fn bracket(a: &GenElem, b: &GenElem) -> Result<GenElem> {
    same_basis(a, b)?;
    let mut out = GenElem::zero(a.basis);
    for (ra, ca) in a.terms() {
        for (rb, cb) in b.terms() {
            if let Some((r, s)) = Role::bracket(ra, rb) {
                out.add_role(r, ca * cb * int(s));
            }
        }
    }
    Ok(out)
}

pub fn invariant_form(a: &GenElem, b: &GenElem) -> Result<Scalar> {
    same_basis(a, b)?;
    let mut acc = Scalar::zero();
    for (ra, ca) in a.terms() {
        for (rb, cb) in b.terms() {
            let s = Role::form(ra, rb);
            if s != 0 {
                acc += ca * cb * int(s);
            }
        }
    }
    Ok(acc)
}

/// The order-2 automorphism `h -> -h`, `e <-> f`. In the primed basis it fixes
/// `h'` and negates `e'`, `f'`.
pub fn sigma_gen(a: &GenElem) -> GenElem {
    let mut out = GenElem::zero(a.basis);
    for (r, c) in a.terms() {
        let (r2, s) = match (a.basis, r) {
            (Basis::Chevalley, Role::H) => (Role::H, -1),
            (Basis::Chevalley, Role::E) => (Role::F, 1),
            (Basis::Chevalley, Role::F) => (Role::E, 1),
            (Basis::Primed, Role::H) => (Role::H, 1),
            (Basis::Primed, _) => (r, -1),
        };
        out.add_role(r2, c * int(s));
    }
    out
}

/// Image of a single role of `from` expressed in the basis `to`.
pub fn role_in_basis(from: Basis, role: Role, to: Basis) -> GenElem {
    let half = frac(1, 2);
    let one = Scalar::one();
    let mut out = GenElem::zero(to);
    let pairs: Vec<(Role, Scalar)> = match (from, to, role) {
        (a, b, r) if a == b => vec![(r, one)],
        // h' = e + f, e' = (h - e + f)/2, f' = (h + e - f)/2
        (Basis::Primed, Basis::Chevalley, Role::H) => vec![(Role::E, one.clone()), (Role::F, one)],
        (Basis::Primed, Basis::Chevalley, Role::E) => {
            vec![
                (Role::H, half.clone()),
                (Role::E, -half.clone()),
                (Role::F, half),
            ]
        }
        (Basis::Primed, Basis::Chevalley, Role::F) => {
            vec![
                (Role::H, half.clone()),
                (Role::E, half.clone()),
                (Role::F, -half),
            ]
        }
        // h = e' + f', e = (h' - e' + f')/2, f = (h' + e' - f')/2
        (Basis::Chevalley, Basis::Primed, Role::H) => vec![(Role::E, one.clone()), (Role::F, one)],
        (Basis::Chevalley, Basis::Primed, Role::E) => {
            vec![
                (Role::H, half.clone()),
                (Role::E, -half.clone()),
                (Role::F, half),
            ]
        }
        (Basis::Chevalley, Basis::Primed, Role::F) => {
            vec![
                (Role::H, half.clone()),
                (Role::E, half.clone()),
                (Role::F, -half),
            ]
        }
        _ => unreachable!(),
    };
    for (r, c) in pairs {
        out.add_role(r, c);
    }
    out
}

pub fn convert_basis(a: &GenElem, target: Basis) -> GenElem {
    let mut out = GenElem::zero(target);
    for (r, c) in a.terms() {
        for (r2, c2) in role_in_basis(a.basis, r, target).terms() {
            out.add_role(r2, c * c2);
        }
    }
    out
}
