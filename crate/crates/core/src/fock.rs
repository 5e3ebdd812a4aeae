//! PBW coordinates on the generalized Verma modules `V(k,i)` and the
//! normal-ordering engine.
//!
//! A vector is a finite sum of canonical monomials
//! `a1(-n1) a2(-n2) ... ar(-nr) v^{i,j}` whose factors are sorted by
//! `(mode, role)` ascending. [`FockSpace`] owns the per-module rewriting
//! caches; every operation that produces vectors goes through it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{role_in_basis, Basis, GenElem, Role, Symbol};
use crate::error::{Error, Result};
use crate::scalar::{binomial_int, frac, int, Scalar};

pub const DEFAULT_DEGREE_CAP: u32 = 6;

/// Level `k` and top label `i` of `V(k,i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleId {
    pub k: u32,
    pub i: u32,
}

impl ModuleId {
    pub fn new(k: u32, i: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::LevelTooSmall(k));
        }
        if i > k {
            return Err(Error::TopLabelOutOfRange { k, i });
        }
        Ok(ModuleId { k, i })
    }

    pub fn vacuum(k: u32) -> Result<Self> {
        ModuleId::new(k, 0)
    }

    pub fn is_vacuum(&self) -> bool {
        self.i == 0
    }
}

/// One creation operator `role(mode)`; the derived order is the canonical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub mode: i32,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<Factor>,
    top: u32,
}

impl Monomial {
    pub fn top(j: u32) -> Self {
        Monomial {
            factors: Vec::new(),
            top: j,
        }
    }

    /// Returns `None` unless the factors are creation modes in canonical order.
    pub fn new(factors: Vec<Factor>, top: u32) -> Option<Self> {
        let ok = factors.iter().all(|f| f.mode <= -1) && factors.windows(2).all(|w| w[0] <= w[1]);
        ok.then_some(Monomial { factors, top })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn top_index(&self) -> u32 {
        self.top
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| (-f.mode) as u32).sum()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `h(0)`-weight when the roles are read in the Chevalley basis.
    pub fn h_weight(&self, i: u32) -> i64 {
        i as i64 - 2 * self.top as i64 + self.factors.iter().map(|f| f.role.weight()).sum::<i64>()
    }

    pub(crate) fn split_first(&self) -> Option<(Factor, Monomial)> {
        let (first, rest) = self.factors.split_first()?;
        Some((
            *first,
            Monomial {
                factors: rest.to_vec(),
                top: self.top,
            },
        ))
    }

    fn prepend(&self, f: Factor) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(f);
        factors.extend_from_slice(&self.factors);
        Monomial {
            factors,
            top: self.top,
        }
    }
}

pub(crate) type Terms = BTreeMap<Monomial, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, m: &Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                terms.remove(m);
            }
        }
        None => {
            terms.insert(m.clone(), c);
        }
    }
}

pub(crate) fn add_scaled(terms: &mut Terms, other: &Terms, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (m, v) in other {
        add_term(terms, m, v * c);
    }
}

/// Finite linear combination of canonical monomials in one module and basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    ctx: ModuleId,
    basis: Basis,
    terms: Terms,
}

impl FockVector {
    pub fn zero(ctx: ModuleId, basis: Basis) -> Self {
        FockVector {
            ctx,
            basis,
            terms: Terms::new(),
        }
    }

    pub(crate) fn from_terms(ctx: ModuleId, basis: Basis, terms: Terms) -> Self {
        FockVector { ctx, basis, terms }
    }

    pub fn from_monomial(ctx: ModuleId, basis: Basis, m: Monomial, c: Scalar) -> Result<Self> {
        if m.top > ctx.i {
            return Err(Error::TopIndexOutOfRange { i: ctx.i, j: m.top });
        }
        let mut v = FockVector::zero(ctx, basis);
        add_term(&mut v.terms, &m, c);
        Ok(v)
    }

    /// The top-level vector `v^{i,j}` (the vacuum when `i = 0`).
    pub fn top_vector(ctx: ModuleId, basis: Basis, j: u32) -> Result<Self> {
        FockVector::from_monomial(ctx, basis, Monomial::top(j), Scalar::one())
    }

    pub fn ctx(&self) -> ModuleId {
        self.ctx
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn terms_map(&self) -> &Terms {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn compatible(&self, other: &FockVector) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Scalar) -> Result<()> {
        self.compatible(other)?;
        add_scaled(&mut self.terms, &other.terms, c);
        Ok(())
    }

    pub fn plus(&self, other: &FockVector) -> Result<FockVector> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one())?;
        Ok(out)
    }

    pub fn minus(&self, other: &FockVector) -> Result<FockVector> {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1))?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> FockVector {
        let mut out = FockVector::zero(self.ctx, self.basis);
        add_scaled(&mut out.terms, &self.terms, c);
        out
    }

    /// Degree `d` if every monomial has degree `d`; `None` for inhomogeneous
    /// or zero vectors.
    pub fn grade(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn split_by_degree(&self) -> BTreeMap<u32, FockVector> {
        let mut out: BTreeMap<u32, FockVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| FockVector::zero(self.ctx, self.basis))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Splits by `h(0)`-weight; meaningful for Chevalley vectors.
    pub fn split_by_weight(&self) -> BTreeMap<i64, FockVector> {
        let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.h_weight(self.ctx.i))
                .or_insert_with(|| FockVector::zero(self.ctx, self.basis))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// If `self = c * other` for a scalar `c` (with `other != 0`), returns `c`.
    pub fn ratio_to(&self, other: &FockVector) -> Option<Scalar> {
        if other.is_zero() || self.ctx != other.ctx || self.basis != other.basis {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let lambda = self.coeff(m) / c;
        (self == &other.scaled(&lambda)).then_some(lambda)
    }
}

/// Rewriting session for one module `V(k,i)` in one basis.
#[derive(Debug)]
pub struct FockSpace {
    ctx: ModuleId,
    basis: Basis,
    cap: u32,
    top_action: [Vec<Vec<(u32, Scalar)>>; 3],
    apply_cache: HashMap<(Role, i32, Monomial), Rc<Terms>>,
    pub(crate) composite_cache: HashMap<(Basis, Monomial, i32, Monomial), Rc<Terms>>,
}

fn role_index(r: Role) -> usize {
    match r {
        Role::H => 0,
        Role::E => 1,
        Role::F => 2,
    }
}

/// Zero-mode action on `U^i` in the Chevalley basis.
fn chevalley_top(i: u32, role: Role, j: u32) -> Vec<(u32, Scalar)> {
    let (i, jj) = (i as i64, j as i64);
    match role {
        Role::H => vec![(j, int(i - 2 * jj))],
        Role::E if j == 0 => vec![],
        Role::E => vec![(j - 1, int(i - jj + 1))],
        Role::F if j as i64 == i => vec![],
        Role::F => vec![(j + 1, int(jj + 1))],
    }
}

impl FockSpace {
    pub fn new(ctx: ModuleId, basis: Basis) -> Self {
        FockSpace::with_cap(ctx, basis, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(ctx: ModuleId, basis: Basis, cap: u32) -> Self {
        let top_action = Role::ALL.map(|role| {
            (0..=ctx.i)
                .map(|j| {
                    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                    for (r, c) in role_in_basis(basis, role, Basis::Chevalley).terms() {
                        for (j2, c2) in chevalley_top(ctx.i, r, j) {
                            *acc.entry(j2).or_insert_with(Scalar::zero) += c * c2;
                        }
                    }
                    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect()
        });
        FockSpace {
            ctx,
            basis,
            cap,
            top_action,
            apply_cache: HashMap::new(),
            composite_cache: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> ModuleId {
        self.ctx
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn set_cap(&mut self, cap: u32) {
        self.cap = cap;
    }

    pub fn level(&self) -> u32 {
        self.ctx.k
    }

    pub fn zero(&self) -> FockVector {
        FockVector::zero(self.ctx, self.basis)
    }

    pub fn top(&self, j: u32) -> Result<FockVector> {
        FockVector::top_vector(self.ctx, self.basis, j)
    }

    pub(crate) fn check(&self, v: &FockVector) -> Result<()> {
        if v.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if v.basis != self.basis {
            return Err(Error::BasisMismatch(v.basis, self.basis));
        }
        Ok(())
    }

    pub(crate) fn wrap(&self, terms: Terms) -> FockVector {
        FockVector::from_terms(self.ctx, self.basis, terms)
    }

    /// `role(m)` on one canonical monomial.
    pub(crate) fn apply_mono(&mut self, a: Role, m: i32, mono: &Monomial) -> Result<Rc<Terms>> {
        let deg = mono.degree() as i64;
        if deg - (m as i64) < 0 {
            return Ok(Rc::new(Terms::new()));
        }
        if deg - (m as i64) > self.cap as i64 {
            return Err(Error::CapExceeded {
                cap: self.cap,
                needed: (deg - m as i64) as u32,
            });
        }
        let new = Factor { mode: m, role: a };
        if m < 0 && mono.factors.first().is_none_or(|f0| new <= *f0) {
            let mut t = Terms::new();
            t.insert(mono.prepend(new), Scalar::one());
            return Ok(Rc::new(t));
        }
        let key = (a, m, mono.clone());
        if let Some(hit) = self.apply_cache.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Terms::new();
        match mono.split_first() {
            None => {
                // m == 0 here: zero mode on the top level
                for (j2, c) in &self.top_action[role_index(a)][mono.top as usize] {
                    add_term(&mut out, &Monomial::top(*j2), c.clone());
                }
            }
            Some((first, rest)) => {
                // a(m) b(n) X = b(n) a(m) X + [a,b](m+n) X + m delta_{m+n,0} k (a|b) X
                let moved = self.apply_mono(a, m, &rest)?;
                for (m2, c) in moved.iter() {
                    let t = self.apply_mono(first.role, first.mode, m2)?;
                    add_scaled(&mut out, &t, c);
                }
                if let Some((r, s)) = Role::bracket(a, first.role) {
                    let t = self.apply_mono(r, m + first.mode, &rest)?;
                    add_scaled(&mut out, &t, &int(s));
                }
                if m + first.mode == 0 {
                    let s = Role::form(a, first.role);
                    if s != 0 {
                        add_term(&mut out, &rest, int(m as i64 * self.ctx.k as i64 * s));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.apply_cache.insert(key, out.clone());
        Ok(out)
    }

    pub(crate) fn apply_role_terms(&mut self, a: Role, m: i32, v: &Terms) -> Result<Terms> {
        let mut out = Terms::new();
        for (mono, c) in v {
            let t = self.apply_mono(a, m, mono)?;
            add_scaled(&mut out, &t, c);
        }
        Ok(out)
    }

    /// Applies `a(m)` where `a` is given in this session's basis or the other
    /// one.
    pub(crate) fn apply_gen_terms(&mut self, a: &GenElem, m: i32, v: &Terms) -> Result<Terms> {
        let a = crate::algebra::convert_basis(a, self.basis);
        let mut out = Terms::new();
        for (r, c) in a.terms() {
            let t = self.apply_role_terms(r, m, v)?;
            add_scaled(&mut out, &t, c);
        }
        Ok(out)
    }

    pub fn apply_role(&mut self, a: Role, m: i32, v: &FockVector) -> Result<FockVector> {
        self.check(v)?;
        let t = self.apply_role_terms(a, m, &v.terms)?;
        Ok(self.wrap(t))
    }

    /// Generator mode `a(m)` acting on `v`; the result is canonical.
    pub fn apply_mode(&mut self, a: &GenElem, m: i32, v: &FockVector) -> Result<FockVector> {
        self.check(v)?;
        let t = self.apply_gen_terms(a, m, &v.terms)?;
        Ok(self.wrap(t))
    }

    pub fn apply_symbol(&mut self, s: Symbol, m: i32, v: &FockVector) -> Result<FockVector> {
        self.apply_mode(&GenElem::symbol(s), m, v)
    }

    /// Applies a word of generator modes to `v`, rightmost first.
    pub fn apply_word(&mut self, word: &[(GenElem, i32)], v: &FockVector) -> Result<FockVector> {
        let mut cur = v.clone();
        for (a, m) in word.iter().rev() {
            cur = self.apply_mode(a, *m, &cur)?;
        }
        Ok(cur)
    }

    /// Normal-orders the word `s1(m1) ... sr(mr) v^{i,j}`.
    pub fn canonicalize(&mut self, word: &[(Symbol, i32)], j: u32) -> Result<FockVector> {
        let top = self.top(j)?;
        let word: Vec<(GenElem, i32)> = word
            .iter()
            .map(|(s, m)| (GenElem::symbol(*s), *m))
            .collect();
        self.apply_word(&word, &top)
    }

    /// Re-expresses `v` (same module, any basis) in this session's basis.
    pub fn convert(&mut self, v: &FockVector) -> Result<FockVector> {
        if v.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if v.basis == self.basis {
            return Ok(v.clone());
        }
        let mut out = Terms::new();
        for (mono, c) in &v.terms {
            let mut cur = Terms::new();
            cur.insert(Monomial::top(mono.top), Scalar::one());
            for f in mono.factors.iter().rev() {
                let g = GenElem::from_role(v.basis, f.role);
                cur = self.apply_gen_terms(&g, f.mode, &cur)?;
            }
            add_scaled(&mut out, &cur, c);
        }
        Ok(self.wrap(out))
    }

    /// All canonical monomials of degree `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(remaining: u32, min: Factor, prefix: &mut Vec<Factor>, out: &mut Vec<Vec<Factor>>) {
            if remaining == 0 {
                out.push(prefix.clone());
                return;
            }
            for depth in 1..=remaining {
                let mode = -(depth as i32);
                for role in Role::ALL {
                    let f = Factor { mode, role };
                    if f < min {
                        continue;
                    }
                    prefix.push(f);
                    rec(remaining - depth, f, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut seqs = Vec::new();
        let min = Factor {
            mode: i32::MIN,
            role: Role::H,
        };
        rec(d, min, &mut Vec::new(), &mut seqs);
        let mut out = Vec::new();
        for s in seqs {
            for j in 0..=self.ctx.i {
                out.push(Monomial {
                    factors: s.clone(),
                    top: j,
                });
            }
        }
        out.sort();
        out
    }

    /// Eigenbasis `e'(0)^m eta`, `0 <= m <= i`, of `h'(0)` on the top level,
    /// paired with the eigenvalues `-i + 2m`.
    pub fn primed_top_basis(&mut self) -> Result<Vec<(Scalar, FockVector)>> {
        let i = self.ctx.i;
        let mut eta = self.zero();
        for j in 0..=i {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            eta.add_scaled(&self.top(j)?, &int(sign))?;
        }
        let ep = GenElem::symbol(Symbol::EPrime);
        let mut out = Vec::new();
        let mut cur = eta;
        for m in 0..=i {
            out.push((int(2 * m as i64 - i as i64), cur.clone()));
            cur = self.apply_mode(&ep, 0, &cur)?;
        }
        Ok(out)
    }

    /// Splits `v` into `h''(0)`-eigencomponents, `h'' = (e+f)/4`.
    pub fn hpp_eigendecompose(&mut self, v: &FockVector) -> Result<Vec<(Scalar, FockVector)>> {
        self.check(v)?;
        if v.is_zero() {
            return Ok(Vec::new());
        }
        let i = self.ctx.i as i64;
        let mut candidates = BTreeSet::new();
        for mono in v.terms.keys() {
            let r = mono.len() as i64;
            let mut w = -i - 2 * r;
            while w <= i + 2 * r {
                candidates.insert(w);
                w += 2;
            }
        }
        let cands: Vec<Scalar> = candidates.into_iter().map(|w| frac(w, 4)).collect();
        let hpp = GenElem::h_double_prime();
        let mut krylov = vec![v.terms.clone()];
        for _ in 1..cands.len() {
            let next = self.apply_gen_terms(&hpp, 0, krylov.last().unwrap())?;
            krylov.push(next);
        }
        let mut out = Vec::new();
        for (n, lambda) in cands.iter().enumerate() {
            // coefficients of prod_{mu != lambda} (x - mu)/(lambda - mu)
            let mut poly = vec![Scalar::one()];
            for (n2, mu) in cands.iter().enumerate() {
                if n2 == n {
                    continue;
                }
                let denom = lambda - mu;
                let mut next = vec![Scalar::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c / &denom;
                    next[d] -= c * mu / &denom;
                }
                poly = next;
            }
            let mut comp = Terms::new();
            for (d, c) in poly.iter().enumerate() {
                add_scaled(&mut comp, &krylov[d], c);
            }
            if !comp.is_empty() {
                let check = self.apply_gen_terms(&hpp, 0, &comp)?;
                let mut scaled = Terms::new();
                add_scaled(&mut scaled, &comp, lambda);
                assert_eq!(check, scaled, "h''(0) eigen-projection failed");
                out.push((lambda.clone(), self.wrap(comp)));
            }
        }
        Ok(out)
    }
}

/// `(-1)^j binom(-n, j) = binom(n + j - 1, j)`.
pub(crate) fn neg_binomial(n: i64, j: u32) -> Scalar {
    binomial_int(n + j as i64 - 1, j)
}
