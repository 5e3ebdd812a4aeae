//! Untwisted vertex-operator modes: composite fields `u(m)` for `u` in
//! `V(k,0)`, and the named states of the parafermion algebra.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_traits::One;

use crate::algebra::{role_in_basis, sigma_gen, Basis, GenElem, Symbol};
use crate::error::{Error, Result};
use crate::fock::{add_scaled, add_term, neg_binomial, FockSpace, FockVector, Monomial, Terms};
use crate::scalar::{frac, int, Scalar};

impl FockSpace {
    /// `u(m) w` where `u` lies in the vacuum module of the same level and `w`
    /// lies in this session's module.
    pub fn composite_mode(&mut self, u: &FockVector, m: i32, w: &FockVector) -> Result<FockVector> {
        if !u.ctx().is_vacuum() || u.ctx().k != self.ctx().k {
            return Err(Error::NotVacuumModule);
        }
        self.check(w)?;
        let out = self.composite_terms(u.basis(), u.terms_map(), m, w.terms_map())?;
        Ok(self.wrap(out))
    }

    pub(crate) fn composite_terms(
        &mut self,
        ubasis: Basis,
        u: &Terms,
        m: i32,
        w: &Terms,
    ) -> Result<Terms> {
        let mut out = Terms::new();
        for (um, uc) in u {
            for (wm, wc) in w {
                let t = self.composite_mono(ubasis, um, m, wm)?;
                add_scaled(&mut out, &t, &(uc * wc));
            }
        }
        Ok(out)
    }

    fn composite_mono(
        &mut self,
        ubasis: Basis,
        u: &Monomial,
        m: i32,
        w: &Monomial,
    ) -> Result<Rc<Terms>> {
        let out_degree = w.degree() as i64 + u.degree() as i64 - m as i64 - 1;
        if out_degree < 0 {
            return Ok(Rc::new(Terms::new()));
        }
        if out_degree > self.cap() as i64 {
            return Err(Error::CapExceeded {
                cap: self.cap(),
                needed: out_degree as u32,
            });
        }
        let Some((first, rest)) = u.split_first() else {
            let mut t = Terms::new();
            if m == -1 {
                t.insert(w.clone(), Scalar::one());
            }
            return Ok(Rc::new(t));
        };
        let key = (ubasis, u.clone(), m, w.clone());
        if let Some(hit) = self.composite_cache.get(&key) {
            return Ok(hit.clone());
        }
        let a: GenElem = role_in_basis(ubasis, first.role, self.basis());
        let n = -first.mode;
        let dw = w.degree() as i32;
        let drest = rest.degree() as i32;
        let mut out = Terms::new();
        let single = unit_terms(w);

        // (a(-n)u')(m) = sum_j binom(n+j-1, j) [a(-n-j) u'(m+j) - (-1)^n u'(-n+m-j) a(j)]
        let mut j = 0;
        while m + j < dw + drest {
            let c = neg_binomial(n as i64, j as u32);
            let inner = self.composite_mono(ubasis, &rest, m + j, w)?;
            let t = self.apply_gen_terms(&a, -n - j, &inner)?;
            add_scaled(&mut out, &t, &c);
            j += 1;
        }
        let sign = if n % 2 == 0 { int(-1) } else { int(1) };
        for j in 0..=dw {
            let aw = self.apply_gen_terms(&a, j, &single)?;
            if aw.is_empty() {
                continue;
            }
            let t = self.composite_terms(ubasis, &unit_terms(&rest), -n + m - j, &aw)?;
            add_scaled(&mut out, &t, &(neg_binomial(n as i64, j as u32) * &sign));
        }
        let out = Rc::new(out);
        self.composite_cache.insert(key, out.clone());
        Ok(out)
    }

    /// `sigma` applied to a vector of the vacuum module.
    pub fn sigma(&mut self, v: &FockVector) -> Result<FockVector> {
        if !v.ctx().is_vacuum() {
            return Err(Error::NotVacuumModule);
        }
        self.check(v)?;
        let mut out = Terms::new();
        for (mono, c) in v.terms() {
            let mut cur = Terms::new();
            cur.insert(Monomial::top(0), Scalar::one());
            for f in mono.factors().iter().rev() {
                let g = sigma_gen(&GenElem::from_role(self.basis(), f.role));
                cur = self.apply_gen_terms(&g, f.mode, &cur)?;
            }
            add_scaled(&mut out, &cur, c);
        }
        Ok(self.wrap(out))
    }

    /// `+1`/`-1` if `v` is a `sigma`-eigenvector, `None` otherwise.
    pub fn sigma_sign(&mut self, v: &FockVector) -> Result<Option<i8>> {
        let s = self.sigma(v)?;
        if s == *v {
            Ok(Some(1))
        } else if s == v.scaled(&int(-1)) {
            Ok(Some(-1))
        } else {
            Ok(None)
        }
    }

    /// Linear combination of words applied to `v^{i,j}`.
    pub fn words(&mut self, terms: &[(Scalar, &[(Symbol, i32)])], j: u32) -> Result<FockVector> {
        let mut out = self.zero();
        for (c, w) in terms {
            let v = self.canonicalize(w, j)?;
            out.add_scaled(&v, c)?;
        }
        Ok(out)
    }
}

/// Names of the distinguished vectors of `V(k,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateName {
    OmegaAff,
    OmegaGamma,
    Omega,
    W3,
    Xi(u8),
}

impl StateName {
    pub fn all() -> Vec<StateName> {
        let mut v = vec![
            StateName::OmegaAff,
            StateName::OmegaGamma,
            StateName::Omega,
            StateName::W3,
        ];
        v.extend((1..=9).map(StateName::Xi));
        v
    }
}

impl fmt::Display for StateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateName::OmegaAff => f.write_str("omega_aff"),
            StateName::OmegaGamma => f.write_str("omega_gamma"),
            StateName::Omega => f.write_str("omega"),
            StateName::W3 => f.write_str("w3"),
            StateName::Xi(n) => write!(f, "xi{n}"),
        }
    }
}

impl FromStr for StateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "omega_aff" => StateName::OmegaAff,
            "omega_gamma" => StateName::OmegaGamma,
            "omega" => StateName::Omega,
            "w3" => StateName::W3,
            other => match other.strip_prefix("xi").and_then(|d| d.parse::<u8>().ok()) {
                Some(n @ 1..=9) => StateName::Xi(n),
                _ => return Err(Error::UnknownState(s.to_string())),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedState {
    pub name: StateName,
    pub value: FockVector,
    pub central_charge: Option<Scalar>,
}

/// Builds a named state in the vacuum module `space` (Chevalley basis).
pub fn build(space: &mut FockSpace, name: StateName) -> Result<NamedState> {
    use Symbol::{E, F, H};
    if !space.ctx().is_vacuum() {
        return Err(Error::NotVacuumModule);
    }
    if space.basis() != Basis::Chevalley {
        return Err(Error::BasisMismatch(space.basis(), Basis::Chevalley));
    }
    let k = space.level() as i64;
    let half = frac(1, 2);
    let c = |n: i64| int(n);
    let h1: &[(Symbol, i32)] = &[(H, -1), (H, -1)];
    let (value, central_charge) = match name {
        StateName::OmegaAff => {
            let v = space
                .words(
                    &[
                        (c(-1), &[(H, -2)]),
                        (half.clone(), h1),
                        (c(2), &[(E, -1), (F, -1)]),
                    ],
                    0,
                )?
                .scaled(&frac(1, 2 * (k + 2)));
            (v, Some(frac(3 * k, k + 2)))
        }
        StateName::OmegaGamma => (
            space.words(&[(frac(1, 4 * k), h1)], 0)?,
            Some(Scalar::one()),
        ),
        StateName::Omega => {
            let a = build(space, StateName::OmegaAff)?.value;
            let g = build(space, StateName::OmegaGamma)?.value;
            (a.minus(&g)?, Some(frac(2 * (k - 1), k + 2)))
        }
        StateName::W3 => {
            let v = space.words(
                &[
                    (c(k * k), &[(H, -3)]),
                    (c(3 * k), &[(H, -2), (H, -1)]),
                    (c(2), &[(H, -1), (H, -1), (H, -1)]),
                    (c(-6 * k), &[(H, -1), (E, -1), (F, -1)]),
                    (c(3 * k * k), &[(E, -2), (F, -1)]),
                    (c(-3 * k * k), &[(E, -1), (F, -2)]),
                ],
                0,
            )?;
            (v, None)
        }
        StateName::Xi(n) => {
            let mh = frac(-1, 2);
            let terms: Vec<(Scalar, &[(Symbol, i32)])> = match n {
                1 => vec![(c(1), &[(E, -2)]), (c(1), &[(F, -2)])],
                2 => vec![
                    (mh.clone(), h1),
                    (c(1), &[(E, -1), (E, -1)]),
                    (c(1), &[(F, -1), (F, -1)]),
                ],
                3 => vec![
                    (mh.clone(), &[(H, -2)]),
                    (frac(1, 4), h1),
                    (c(1), &[(E, -1), (F, -1)]),
                ],
                4 | 5 => {
                    let s = if n == 4 { 1 } else { -1 };
                    vec![
                        (mh.clone(), &[(H, -2)]),
                        (c(-s), &[(E, -2)]),
                        (c(-s), &[(F, -2)]),
                        (mh.clone(), h1),
                        (mh.clone(), &[(E, -1), (E, -1)]),
                        (mh.clone(), &[(F, -1), (F, -1)]),
                        (c(s), &[(H, -1), (E, -1)]),
                        (c(-s), &[(H, -1), (F, -1)]),
                        (c(1), &[(E, -1), (F, -1)]),
                    ]
                }
                6 => vec![(c(1), &[(H, -2)]), (c(-1), &[(E, -2)]), (c(1), &[(F, -2)])],
                7 | 9 => {
                    let s = if n == 7 { 1 } else { -1 };
                    vec![
                        (c(-s), &[(H, -2)]),
                        (c(-s), &[(E, -1), (E, -1)]),
                        (c(s), &[(F, -1), (F, -1)]),
                        (c(1), &[(H, -1), (E, -1)]),
                        (c(1), &[(H, -1), (F, -1)]),
                    ]
                }
                8 => vec![(c(-1), &[(H, -2)]), (c(-1), &[(E, -2)]), (c(1), &[(F, -2)])],
                _ => return Err(Error::UnknownState(format!("xi{n}"))),
            };
            (space.words(&terms, 0)?, None)
        }
    };
    Ok(NamedState {
        name,
        value,
        central_charge,
    })
}

/// `true` iff `h(m) v = 0` for `0 <= m <= deg(v) + 1`.
pub fn is_heisenberg_annihilated(space: &mut FockSpace, v: &FockVector) -> Result<bool> {
    let top = v.max_degree().unwrap_or(0) as i32;
    let h = GenElem::symbol(Symbol::H);
    for m in 0..=top + 1 {
        if !space.apply_mode(&h, m, v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn unit_terms(m: &Monomial) -> Terms {
    let mut t = Terms::new();
    add_term(&mut t, m, Scalar::one());
    t
}
