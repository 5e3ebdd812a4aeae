//! `sigma`-twisted modules `(L(k,i), Y(Delta(h'', z) ., z))`.
//!
//! Three evaluators live here:
//! * the Delta route, `u_n = sum_q A_q(n + q)` where `Delta(h'', z) u = sum_q A_q z^q`;
//! * the generator table, `h'_n = h'(n) + (k/2) delta_{n,0}`,
//!   `e'_n = e'(n + 1/2)`, `f'_n = f'(n - 1/2)`;
//! * the iterate route, which peels `u = b(-n) v` with the twisted Jacobi
//!   identity and only ever calls the generator table.
//!
//! The iterate route is an independent check of the Delta route.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{convert_basis, Basis, GenElem, Role, Symbol};
use crate::error::{Error, Result};
use crate::fock::{add_scaled, neg_binomial, FockSpace, FockVector, ModuleId, Monomial, Terms};
use crate::modes::{build, StateName};
use crate::quotient::SimpleQuotient;
use crate::scalar::{binomial, frac, int, HalfInt, Scalar};

/// Finite Laurent polynomial in `z^{1/2}` with vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentVector {
    entries: BTreeMap<HalfInt, FockVector>,
}

impl LaurentVector {
    pub fn entries(&self) -> impl Iterator<Item = (HalfInt, &FockVector)> {
        self.entries.iter().map(|(q, v)| (*q, v))
    }

    pub fn get(&self, q: HalfInt) -> Option<&FockVector> {
        self.entries.get(&q)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    fn add(&mut self, q: HalfInt, v: &FockVector) -> Result<()> {
        match self.entries.get_mut(&q) {
            Some(cur) => {
                cur.add_scaled(v, &Scalar::one())?;
                if cur.is_zero() {
                    self.entries.remove(&q);
                }
            }
            None if !v.is_zero() => {
                self.entries.insert(q, v.clone());
            }
            None => {}
        }
        Ok(())
    }
}

/// A twisted mode index `n` in `r/2 + Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedModeIndex {
    value: HalfInt,
    sigma_grade: u8,
}

impl TwistedModeIndex {
    pub fn new(value: HalfInt, sigma_grade: u8) -> Result<Self> {
        let parity = (value.twice().rem_euclid(2)) as u8;
        if sigma_grade > 1 || parity != sigma_grade {
            return Err(Error::ParityMismatch {
                index: value.to_string(),
                grade: sigma_grade,
            });
        }
        Ok(TwistedModeIndex { value, sigma_grade })
    }

    pub fn value(&self) -> HalfInt {
        self.value
    }

    pub fn sigma_grade(&self) -> u8 {
        self.sigma_grade
    }
}

impl fmt::Display for TwistedModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `eta = sum_j (-1)^j v^{i,j}`, the `h'(0)`-lowest top vector.
pub fn eta(ctx: ModuleId) -> FockVector {
    let mut out = FockVector::zero(ctx, Basis::Chevalley);
    for j in 0..=ctx.i {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let t = FockVector::top_vector(ctx, Basis::Chevalley, j).expect("j <= i");
        out.add_scaled(&t, &int(sign)).expect("same module");
    }
    out
}

fn primed_parity(role: Role) -> i64 {
    match role {
        Role::H => 0,
        Role::E | Role::F => 1,
    }
}

type DeltaTerms = BTreeMap<HalfInt, Terms>;

/// Evaluation session for one twisted module.
#[derive(Debug)]
pub struct TwistedModule {
    ctx: ModuleId,
    vac: FockSpace,
    vac_primed: FockSpace,
    target: SimpleQuotient,
    primed: FockSpace,
    reduced: bool,
    delta_cache: HashMap<Monomial, Rc<DeltaTerms>>,
    iter_cache: HashMap<(Monomial, i64, Monomial), Rc<Terms>>,
    states: HashMap<StateName, FockVector>,
}

impl TwistedModule {
    /// `\bar{L(k,i)}`: every result is reduced modulo the maximal submodule.
    pub fn new(ctx: ModuleId) -> Self {
        TwistedModule::build(ctx, true)
    }

    /// The same twisted structure on the generalized Verma module `V(k,i)`.
    pub fn verma(ctx: ModuleId) -> Self {
        TwistedModule::build(ctx, false)
    }

    fn build(ctx: ModuleId, reduced: bool) -> Self {
        let vac_ctx = ModuleId { k: ctx.k, i: 0 };
        TwistedModule {
            ctx,
            vac: FockSpace::new(vac_ctx, Basis::Chevalley),
            vac_primed: FockSpace::new(vac_ctx, Basis::Primed),
            target: SimpleQuotient::new(ctx),
            primed: FockSpace::new(ctx, Basis::Primed),
            reduced,
            delta_cache: HashMap::new(),
            iter_cache: HashMap::new(),
            states: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> ModuleId {
        self.ctx
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Raises the degree cap of every session.
    pub fn set_cap(&mut self, cap: u32) {
        self.vac.set_cap(cap);
        self.vac_primed.set_cap(cap);
        self.target.space().set_cap(cap);
        self.primed.set_cap(cap);
    }

    /// Chevalley session on `V(k,0)`, where states are built.
    pub fn vacuum_space(&mut self) -> &mut FockSpace {
        &mut self.vac
    }

    pub fn quotient(&mut self) -> &mut SimpleQuotient {
        &mut self.target
    }

    /// Chevalley session on the target module.
    pub fn space(&mut self) -> &mut FockSpace {
        self.target.space()
    }

    pub fn state(&mut self, name: StateName) -> Result<FockVector> {
        if let Some(v) = self.states.get(&name) {
            return Ok(v.clone());
        }
        let v = build(&mut self.vac, name)?.value;
        self.states.insert(name, v.clone());
        Ok(v)
    }

    pub fn eta(&self) -> FockVector {
        eta(self.ctx)
    }

    pub fn reduce(&mut self, v: &FockVector) -> Result<FockVector> {
        let v = self.target.space().convert(v)?;
        if self.reduced {
            self.target.reduce_graded(&v)
        } else {
            Ok(v)
        }
    }

    pub fn is_zero(&mut self, v: &FockVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// `0` for `sigma`-fixed, `1` for `sigma`-negated vectors of `V(k,0)`.
    pub fn sigma_grade(&mut self, u: &FockVector) -> Result<u8> {
        let u = self.vacuum_form(u)?;
        match self.vac.sigma_sign(&u)? {
            Some(1) => Ok(0),
            Some(_) => Ok(1),
            None => Err(Error::NotSigmaEigen),
        }
    }

    fn vacuum_form(&mut self, u: &FockVector) -> Result<FockVector> {
        if !u.ctx().is_vacuum() || u.ctx().k != self.ctx.k {
            return Err(Error::NotVacuumModule);
        }
        self.vac.convert(u)
    }

    fn check_target(&self, w: &FockVector) -> Result<()> {
        if w.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn delta_mono(&mut self, m: &Monomial) -> Result<Rc<DeltaTerms>> {
        if let Some(hit) = self.delta_cache.get(m) {
            return Ok(hit.clone());
        }
        let hpp = GenElem::h_double_prime();
        // exp(sum_{j>=1} ((-1)^{j+1}/j) h''(j) z^{-j}) u, by powers of the exponent
        let mut exp_part: BTreeMap<i64, Terms> = BTreeMap::new();
        let mut power: BTreeMap<i64, Terms> = BTreeMap::new();
        let mut seed = Terms::new();
        seed.insert(m.clone(), Scalar::one());
        power.insert(0, seed);
        let mut p = 0i64;
        while !power.is_empty() {
            for (q, t) in &power {
                let e = exp_part.entry(*q).or_default();
                add_scaled(e, t, &Scalar::one());
            }
            p += 1;
            let mut next: BTreeMap<i64, Terms> = BTreeMap::new();
            for (q, t) in &power {
                let top = t.keys().map(Monomial::degree).max().unwrap_or(0) as i64;
                for j in 1..=top {
                    let c = frac(if j % 2 == 1 { 1 } else { -1 }, j * p);
                    let moved = self.vac.apply_gen_terms(&hpp, j as i32, t)?;
                    if moved.is_empty() {
                        continue;
                    }
                    add_scaled(next.entry(q - j).or_default(), &moved, &c);
                }
            }
            next.retain(|_, t| !t.is_empty());
            power = next;
        }
        let mut out = DeltaTerms::new();
        for (q, t) in exp_part {
            if t.is_empty() {
                continue;
            }
            let v = FockVector::from_terms(self.vac.ctx(), Basis::Chevalley, t);
            for (lambda, comp) in self.vac.hpp_eigendecompose(&v)? {
                let shift = HalfInt::from_scalar(&lambda)
                    .expect("h''(0) eigenvalues on V(k,0) are half-integers");
                let e = out.entry(HalfInt::from_int(q) + shift).or_default();
                add_scaled(e, comp.terms_map(), &Scalar::one());
            }
        }
        out.retain(|_, t| !t.is_empty());
        let out = Rc::new(out);
        self.delta_cache.insert(m.clone(), out.clone());
        Ok(out)
    }

    /// `Delta(h'', z) u` for `u` in `V(k,0)`.
    pub fn delta_apply(&mut self, u: &FockVector) -> Result<LaurentVector> {
        let u = self.vacuum_form(u)?;
        let mut acc: DeltaTerms = DeltaTerms::new();
        for (m, c) in u.terms() {
            let d = self.delta_mono(m)?;
            for (q, t) in d.iter() {
                add_scaled(acc.entry(*q).or_default(), t, c);
            }
        }
        let mut out = LaurentVector::default();
        for (q, t) in acc {
            out.add(
                q,
                &FockVector::from_terms(self.vac.ctx(), Basis::Chevalley, t),
            )?;
        }
        Ok(out)
    }

    fn check_parity(&mut self, u: &FockVector, n: HalfInt) -> Result<()> {
        let r = self.sigma_grade(u)?;
        TwistedModeIndex::new(n, r).map(|_| ())
    }

    /// `u_n w` by the Delta route.
    pub fn twisted_mode(
        &mut self,
        u: &FockVector,
        n: HalfInt,
        w: &FockVector,
    ) -> Result<FockVector> {
        self.check_target(w)?;
        self.check_parity(u, n)?;
        let w = self.target.space().convert(w)?;
        let delta = self.delta_apply(u)?;
        let mut out = self.target.space().zero();
        for (q, a) in delta.entries() {
            let Some(p) = (n + q).to_int() else {
                return Err(Error::ParityMismatch {
                    index: n.to_string(),
                    grade: (n.twice().rem_euclid(2)) as u8,
                });
            };
            let t = self.target.space().composite_mode(a, p as i32, &w)?;
            out.add_scaled(&t, &Scalar::one())?;
        }
        self.reduce(&out)
    }

    /// Generator modes `a_n` from the table; `a` may be given in either basis
    /// but must be `sigma`-homogeneous.
    pub fn twisted_gen_mode(
        &mut self,
        a: &GenElem,
        n: HalfInt,
        w: &FockVector,
    ) -> Result<FockVector> {
        self.check_target(w)?;
        let ap = convert_basis(a, Basis::Primed);
        let even = !ap.coeff(Role::H).is_zero();
        let odd = !ap.coeff(Role::E).is_zero() || !ap.coeff(Role::F).is_zero();
        if even && odd {
            return Err(Error::NotSigmaEigen);
        }
        let wp = self.primed.convert(w)?;
        let mut out = Terms::new();
        for (role, c) in ap.terms() {
            let t = self.gen_mode_terms(role, n.twice(), wp.terms_map())?;
            add_scaled(&mut out, &t, c);
        }
        let v = FockVector::from_terms(self.ctx, Basis::Primed, out);
        self.reduce(&v)
    }

    /// Table route on primed target terms; `x2` is twice the index.
    fn gen_mode_terms(&mut self, role: Role, x2: i64, w: &Terms) -> Result<Terms> {
        let parity = x2.rem_euclid(2);
        if parity != primed_parity(role) {
            return Err(Error::ParityMismatch {
                index: HalfInt::from_twice(x2).to_string(),
                grade: primed_parity(role) as u8,
            });
        }
        Ok(match role {
            Role::H => {
                let mut t = self.primed.apply_role_terms(Role::H, (x2 / 2) as i32, w)?;
                if x2 == 0 {
                    add_scaled(&mut t, w, &frac(self.ctx.k as i64, 2));
                }
                t
            }
            Role::E => self
                .primed
                .apply_role_terms(Role::E, ((x2 + 1) / 2) as i32, w)?,
            Role::F => self
                .primed
                .apply_role_terms(Role::F, ((x2 - 1) / 2) as i32, w)?,
        })
    }

    /// Twice an upper bound for the twisted grade of `w` above `eta`.
    fn grade_bound2(&self, w: &Monomial) -> i64 {
        let wf: i64 = w
            .factors()
            .iter()
            .map(|f| match f.role {
                Role::H => 0,
                Role::E => 2,
                Role::F => -2,
            })
            .sum();
        2 * w.degree() as i64 + (wf + 2 * self.ctx.i as i64) / 2
    }

    /// `u_N w` by the twisted Jacobi recursion; `u` primed monomial of
    /// `V(k,0)`, `w` primed monomial of the target, `n2 = 2N`.
    fn iterate_mono(&mut self, u: &Monomial, n2: i64, w: &Monomial) -> Result<Rc<Terms>> {
        let wt = u.degree() as i64;
        let g2 = self.grade_bound2(w);
        if g2 + 2 * wt - n2 - 2 < 0 {
            return Ok(Rc::new(Terms::new()));
        }
        let Some((first, rest)) = u.split_first() else {
            let mut t = Terms::new();
            if n2 == -2 {
                t.insert(w.clone(), Scalar::one());
            }
            return Ok(Rc::new(t));
        };
        let key = (u.clone(), n2, w.clone());
        if let Some(hit) = self.iter_cache.get(&key) {
            return Ok(hit.clone());
        }
        let b = first.role;
        let n = -first.mode as i64;
        let r = primed_parity(b);
        let wt_rest = rest.degree() as i64;
        let single = {
            let mut t = Terms::new();
            t.insert(w.clone(), Scalar::one());
            t
        };
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        let mut out = Terms::new();

        // sum_i c_i b_{-n + r/2 - i} rest_{N - r/2 + i} w
        let mut i = 0i64;
        loop {
            let y2 = n2 - r + 2 * i;
            if g2 + 2 * wt_rest - y2 - 2 < 0 {
                break;
            }
            let inner = self.iterate_mono(&rest, y2, w)?;
            if !inner.is_empty() {
                let t = self.gen_mode_terms(b, -2 * n + r - 2 * i, &inner)?;
                add_scaled(&mut out, &t, &neg_binomial(n, i as u32));
            }
            i += 1;
        }
        // - (-1)^n sum_i c_i rest_{N - n - r/2 - i} b_{r/2 + i} w
        let mut i = 0i64;
        while r + 2 * i <= g2 {
            let bw = self.gen_mode_terms(b, r + 2 * i, &single)?;
            let c = -(neg_binomial(n, i as u32) * &sign);
            for (m, x) in &bw {
                let t = self.iterate_mono(&rest, n2 - 2 * n - r - 2 * i, m)?;
                add_scaled(&mut out, &t, &(&c * x));
            }
            i += 1;
        }
        // - sum_{i>=1} binom(r/2, i) (b(-n+i) rest)_{N - i}
        if r == 1 {
            let mut rest_terms = Terms::new();
            rest_terms.insert(rest.clone(), Scalar::one());
            let half = frac(1, 2);
            let mut i = 1i64;
            while -n + i <= wt_rest {
                let bv = self
                    .vac_primed
                    .apply_role_terms(b, (-n + i) as i32, &rest_terms)?;
                let c = -binomial(&half, i as u32);
                for (m, x) in &bv {
                    let t = self.iterate_mono(m, n2 - 2 * i, w)?;
                    add_scaled(&mut out, &t, &(&c * x));
                }
                i += 1;
            }
        }
        let out = Rc::new(out);
        self.iter_cache.insert(key, out.clone());
        Ok(out)
    }

    /// `u_n w` by the iterate route.
    pub fn twisted_iterate(
        &mut self,
        u: &FockVector,
        n: HalfInt,
        w: &FockVector,
    ) -> Result<FockVector> {
        self.check_target(w)?;
        self.check_parity(u, n)?;
        let up = {
            let uc = self.vacuum_form(u)?;
            self.vac_primed.convert(&uc)?
        };
        let wp = self.primed.convert(w)?;
        let mut out = Terms::new();
        for (um, uc) in up.terms() {
            for (wm, wc) in wp.terms() {
                let t = self.iterate_mono(um, n.twice(), wm)?;
                add_scaled(&mut out, &t, &(uc * wc));
            }
        }
        let v = FockVector::from_terms(self.ctx, Basis::Primed, out);
        self.reduce(&v)
    }

    /// `L(0)`-eigenvalue of `w` under the twisted action of `omega`, if `w`
    /// is a nonzero eigenvector.
    pub fn l0_eigenvalue(&mut self, w: &FockVector) -> Result<Option<Scalar>> {
        let omega = self.state(StateName::Omega)?;
        let w = self.reduce(w)?;
        let l0 = self.twisted_mode(&omega, HalfInt::from_int(1), &w)?;
        Ok(l0.ratio_to(&w))
    }

    /// The twisted field of a generator symbol, `sym_n`.
    pub fn gen_symbol(&mut self, sym: Symbol, n: HalfInt, w: &FockVector) -> Result<FockVector> {
        self.twisted_gen_mode(&GenElem::symbol(sym), n, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn mode_index_parity() {
        assert!(TwistedModeIndex::new(hi(1), 1).is_ok());
        assert!(TwistedModeIndex::new(hi(2), 0).is_ok());
        assert!(matches!(
            TwistedModeIndex::new(hi(1), 0),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            TwistedModeIndex::new(hi(-4), 1),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn eta_examples() {
        let c = ModuleId::new(4, 0).unwrap();
        assert_eq!(
            eta(c),
            FockVector::top_vector(c, Basis::Chevalley, 0).unwrap()
        );
        let c = ModuleId::new(4, 2).unwrap();
        assert_eq!(crate::literal::render(&eta(c)), "|2,0> - |2,1> + |2,2>");
    }

    #[test]
    fn delta_of_vacuum_and_omega_aff() {
        for k in 3..=5 {
            let mut t = TwistedModule::new(ModuleId::new(k, 0).unwrap());
            let one = t.vacuum_space().top(0).unwrap();
            let d = t.delta_apply(&one).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(d.get(HalfInt::ZERO), Some(&one));

            let w = t.state(StateName::OmegaAff).unwrap();
            let d = t.delta_apply(&w).unwrap();
            let hpp = GenElem::h_double_prime();
            let hm1 = t.vacuum_space().apply_mode(&hpp, -1, &one).unwrap();
            assert_eq!(d.get(HalfInt::ZERO), Some(&w));
            assert_eq!(d.get(hi(-2)), Some(&hm1));
            assert_eq!(d.get(hi(-4)), Some(&one.scaled(&frac(k as i64, 16))));
            assert_eq!(d.len(), 3);
        }
    }

    #[test]
    fn sigma_grades() {
        let mut t = TwistedModule::new(ModuleId::new(4, 0).unwrap());
        let omega = t.state(StateName::Omega).unwrap();
        let w3 = t.state(StateName::W3).unwrap();
        assert_eq!(t.sigma_grade(&omega).unwrap(), 0);
        assert_eq!(t.sigma_grade(&w3).unwrap(), 1);
        let h = t
            .vacuum_space()
            .canonicalize(&[(Symbol::H, -1)], 0)
            .unwrap();
        assert_eq!(t.sigma_grade(&h).unwrap(), 1);
        let e = t
            .vacuum_space()
            .canonicalize(&[(Symbol::E, -1)], 0)
            .unwrap();
        assert_eq!(t.sigma_grade(&e), Err(Error::NotSigmaEigen));
        let eta = t.eta();
        assert!(matches!(
            t.twisted_mode(&w3, hi(2), &eta),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn table_route_examples() {
        let ctx = ModuleId::new(5, 2).unwrap();
        let mut t = TwistedModule::new(ctx);
        let eta = t.eta();
        let hp = t.gen_symbol(Symbol::HPrime, HalfInt::ZERO, &eta).unwrap();
        assert_eq!(hp, eta.scaled(&frac(-2 * 2 + 5, 2)));
        let w = t.space().canonicalize(&[(Symbol::F, -1)], 1).unwrap();
        let a = t.gen_symbol(Symbol::EPrime, hi(-1), &w).unwrap();
        let b = t.space().apply_symbol(Symbol::EPrime, 0, &w).unwrap();
        assert_eq!(a, t.reduce(&b).unwrap());
        let a = t.gen_symbol(Symbol::FPrime, hi(-3), &w).unwrap();
        let b = t.space().apply_symbol(Symbol::FPrime, -2, &w).unwrap();
        assert_eq!(a, t.reduce(&b).unwrap());
        assert!(matches!(
            t.gen_symbol(Symbol::H, HalfInt::ZERO, &w),
            Err(Error::ParityMismatch { .. })
        ));
        let mixed = GenElem::symbol(Symbol::E);
        assert_eq!(
            t.twisted_gen_mode(&mixed, hi(1), &w),
            Err(Error::NotSigmaEigen)
        );
    }

    #[test]
    fn delta_route_matches_table_for_generators() {
        let ctx = ModuleId::new(4, 1).unwrap();
        let mut t = TwistedModule::verma(ctx);
        let w = t
            .space()
            .canonicalize(&[(Symbol::E, -1), (Symbol::H, -1)], 1)
            .unwrap();
        for sym in [Symbol::HPrime, Symbol::EPrime, Symbol::FPrime] {
            let u = t.vacuum_space().canonicalize(&[(sym, -1)], 0).unwrap();
            let r = primed_parity(sym.role());
            for n2 in (-5..=5).filter(|x: &i64| x.rem_euclid(2) == r) {
                let a = t.twisted_mode(&u, hi(n2), &w).unwrap();
                let b = t.gen_symbol(sym, hi(n2), &w).unwrap();
                assert_eq!(a, b, "{sym:?} {n2}");
            }
        }
    }

    #[test]
    fn iterate_route_matches_delta_route_small() {
        for (k, i) in [(3, 0), (3, 1), (4, 2)] {
            let ctx = ModuleId::new(k, i).unwrap();
            let mut t = TwistedModule::verma(ctx);
            let eta = t.eta();
            let w1 = t.space().canonicalize(&[(Symbol::F, -1)], 0).unwrap();
            for name in [
                StateName::Omega,
                StateName::W3,
                StateName::Xi(4),
                StateName::Xi(7),
            ] {
                let u = t.state(name).unwrap();
                let r = t.sigma_grade(&u).unwrap() as i64;
                for n2 in (-3..=5).filter(|x: &i64| x.rem_euclid(2) == r) {
                    for w in [&eta, &w1] {
                        let a = t.twisted_mode(&u, hi(n2), w).unwrap();
                        let b = t.twisted_iterate(&u, hi(n2), w).unwrap();
                        assert_eq!(a, b, "{name} n={} k={k} i={i}", hi(n2));
                    }
                }
            }
        }
    }

    #[test]
    fn eta_lowest_weight() {
        for k in 3..=5u32 {
            for i in 0..=k {
                let mut t = TwistedModule::new(ModuleId::new(k, i).unwrap());
                let eta = t.eta();
                let (kk, ii) = (k as i64, i as i64);
                let expect = frac(ii * (ii - kk), 4 * (kk + 2)) + frac(kk - 1, 16);
                assert_eq!(t.l0_eigenvalue(&eta).unwrap(), Some(expect), "k={k} i={i}");
            }
        }
    }
}
