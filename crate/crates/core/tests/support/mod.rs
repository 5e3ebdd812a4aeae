//! Property checks shared by the `properties` and `acceptance` targets.
//! Every check is deterministic: random inputs come from a fixed-seed runner.

#![allow(dead_code)]

use parafermion::algebra::{bracket, invariant_form};
use parafermion::literal::parse_in;
use parafermion::scalar::{frac, int};
use parafermion::{
    render, Basis, FockSpace, FockVector, GenElem, HalfInt, ModuleId, Role, Scalar, SimpleQuotient,
    StateName, Symbol, TwistedModule,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub type Check = std::result::Result<(), String>;

const SYMBOLS: [Symbol; 3] = [Symbol::H, Symbol::E, Symbol::F];
const CAP: u32 = 16;
pub const ROUTE_SAMPLES: u32 = 50;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

type Word = Vec<(usize, i32)>;
type Terms = Vec<(i64, Word, u32)>;

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0..3usize, -3..=-1i32), 0..=3)
}

fn small_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0..3usize, -2..=-1i32), 0..=2)
}

/// Random vector of `V(k, i)` with up to three terms.
fn vector() -> impl Strategy<Value = (u32, u32, Terms)> {
    (3..=6u32).prop_flat_map(|k| {
        (0..=k.min(3)).prop_flat_map(move |i| {
            let term = (-3..=3i64, word(), 0..=i);
            (Just(k), Just(i), prop::collection::vec(term, 1..=3))
        })
    })
}

fn build(space: &mut FockSpace, terms: &[(i64, Word, u32)]) -> FockVector {
    let mut v = space.zero();
    for (c, w, j) in terms {
        let w: Vec<(Symbol, i32)> = w.iter().map(|&(s, m)| (SYMBOLS[s], m)).collect();
        let t = space.canonicalize(&w, *j).unwrap();
        v.add_scaled(&t, &int(*c)).unwrap();
    }
    v
}

fn gen(s: usize) -> GenElem {
    GenElem::symbol(SYMBOLS[s])
}

fn hi(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, input) => format!("{why} for input {input:?}"),
        TestError::Abort(why) => why.to_string(),
    })
}

/// `[a(m), b(n)] = [a,b](m+n) + m k (a|b) delta_{m+n,0}` on random vectors.
pub fn commutator_law() -> Check {
    let strategy = (vector(), 0..3usize, 0..3usize, -3..=3i32, -3..=3i32);
    run(64, strategy, |((k, i, terms), a, b, m, n)| {
        let mut s = FockSpace::with_cap(ModuleId::new(k, i).unwrap(), Basis::Chevalley, CAP);
        let v = build(&mut s, &terms);
        let (x, y) = (gen(a), gen(b));
        let bn = s.apply_mode(&y, n, &v).unwrap();
        let xy = s.apply_mode(&x, m, &bn).unwrap();
        let am = s.apply_mode(&x, m, &v).unwrap();
        let yx = s.apply_mode(&y, n, &am).unwrap();
        let mut want = s.apply_mode(&bracket(&x, &y).unwrap(), m + n, &v).unwrap();
        if m + n == 0 {
            let c = invariant_form(&x, &y).unwrap() * int(m as i64 * k as i64);
            want.add_scaled(&v, &c).unwrap();
        }
        prop_assert_eq!(xy.minus(&yx).unwrap(), want);
        Ok(())
    })
}

pub fn literal_round_trip() -> Check {
    run(64, vector(), |(k, i, terms)| {
        let ctx = ModuleId::new(k, i).unwrap();
        let mut s = FockSpace::with_cap(ctx, Basis::Chevalley, CAP);
        let v = build(&mut s, &terms);
        prop_assert_eq!(parse_in(&render(&v), &mut s).unwrap(), v.clone());
        let mut p = FockSpace::with_cap(ctx, Basis::Primed, CAP);
        let pv = p.convert(&v).unwrap();
        prop_assert_eq!(parse_in(&render(&pv), &mut p).unwrap(), pv.clone());
        prop_assert_eq!(s.convert(&pv).unwrap(), v);
        Ok(())
    })
}

/// `<a(n)u, v> = <u, a^dagger(-n)v>` and `<u, v> = <v, u>`.
pub fn pairing_contravariance() -> Check {
    let strategy = (
        3..=5u32,
        0..=2u32,
        (small_word(), small_word()),
        (0..=2u32, 0..=2u32),
        0..3usize,
        -2..=2i32,
    );
    run(48, strategy, |(k, i, (u, v), (ju, jv), a, n)| {
        let mut q = SimpleQuotient::new(ModuleId::new(k, i).unwrap());
        let u = build(q.space(), &[(1, u, ju.min(i))]);
        let v = build(q.space(), &[(1, v, jv.min(i))]);
        let role = Role::ALL[a];
        let x = GenElem::from_role(Basis::Chevalley, role);
        let adj = GenElem::from_role(Basis::Chevalley, role.adjoint());
        let xu = q.space().apply_mode(&x, n, &u).unwrap();
        let adj_v = q.space().apply_mode(&adj, -n, &v).unwrap();
        prop_assert_eq!(
            q.contravariant_pairing(&xu, &v).unwrap(),
            q.contravariant_pairing(&u, &adj_v).unwrap()
        );
        prop_assert_eq!(
            q.contravariant_pairing(&u, &v).unwrap(),
            q.contravariant_pairing(&v, &u).unwrap()
        );
        Ok(())
    })
}

/// The lowest radical block is nonempty and stable under `a(-1)`, `a(0)`, `a(1)`.
pub fn radical_closure() -> Check {
    for (k, i) in [(3, 3), (3, 2), (4, 4), (4, 3), (5, 5)] {
        let mut q = SimpleQuotient::new(ModuleId::new(k, i).unwrap());
        let rad = q.radical_basis(k - i + 1).unwrap();
        ensure!(!rad.is_empty(), "empty radical at k={k} i={i}");
        for r in &rad {
            for s in SYMBOLS {
                for m in [-1, 0, 1] {
                    let w = q.space().apply_symbol(s, m, r).unwrap();
                    ensure!(
                        q.is_zero_in_simple(&w).unwrap(),
                        "k={k} i={i}: {s:?}({m}) leaves the radical"
                    );
                }
            }
        }
    }
    Ok(())
}

/// `[L(m), L(n)] = (m - n) L(m + n) + c/12 (m^3 - m) delta_{m+n,0}` with
/// `L(m) = u(m + 1)`, for the affine, Heisenberg and parafermion Virasoro vectors.
pub fn virasoro_brackets() -> Check {
    for k in 3..=6u32 {
        let kk = k as i64;
        let cases = [
            (StateName::OmegaAff, frac(3 * kk, kk + 2)),
            (StateName::OmegaGamma, int(1)),
            (StateName::Omega, frac(2 * (kk - 1), kk + 2)),
        ];
        for i in [0, 1] {
            let mut t = TwistedModule::verma(ModuleId::new(k, i).unwrap());
            let v = t
                .space()
                .canonicalize(&[(Symbol::E, -1), (Symbol::H, -1)], 0)
                .unwrap();
            for (name, c) in &cases {
                let u = t.state(*name).unwrap();
                let mut l =
                    |m: i32, w: &FockVector| t.space().composite_mode(&u, m + 1, w).unwrap();
                for (m, n) in [(1, -1), (2, -2), (2, -1), (-1, 2), (0, -2), (3, -3), (1, 1)] {
                    let a = l(n, &v);
                    let a = l(m, &a);
                    let b = l(m, &v);
                    let lhs = a.minus(&l(n, &b)).unwrap();
                    let mut rhs = l(m + n, &v).scaled(&int((m - n) as i64));
                    if m + n == 0 {
                        let mm = m as i64;
                        rhs.add_scaled(&v, &(c.clone() * frac(mm * mm * mm - mm, 12)))
                            .unwrap();
                    }
                    ensure!(lhs == rhs, "{name} k={k} i={i} m={m} n={n}");
                }
            }
        }
    }
    Ok(())
}

/// Twisted generator modes obey the affine commutator, central term included.
pub fn twisted_commutator_law() -> Check {
    let even = GenElem::symbol(Symbol::E)
        .add(&GenElem::symbol(Symbol::F))
        .unwrap();
    let odd = GenElem::symbol(Symbol::E)
        .sub(&GenElem::symbol(Symbol::F))
        .unwrap();
    let gens = [(even, 0i64), (GenElem::symbol(Symbol::H), 1), (odd, 1)];
    for (k, i) in [(3, 1), (4, 2), (5, 0)] {
        let mut t = TwistedModule::verma(ModuleId::new(k, i).unwrap());
        let eta = t.eta();
        let w = t.gen_symbol(Symbol::FPrime, hi(-1), &eta).unwrap();
        for (x, px) in &gens {
            for (y, py) in &gens {
                let br = bracket(x, y).unwrap();
                let form = invariant_form(x, y).unwrap();
                for m2 in (-3..=3).filter(|m: &i64| m.rem_euclid(2) == *px) {
                    for n2 in (-3..=3).filter(|n: &i64| n.rem_euclid(2) == *py) {
                        let (m, n) = (hi(m2), hi(n2));
                        let yn = t.twisted_gen_mode(y, n, &w).unwrap();
                        let xy = t.twisted_gen_mode(x, m, &yn).unwrap();
                        let xm = t.twisted_gen_mode(x, m, &w).unwrap();
                        let yx = t.twisted_gen_mode(y, n, &xm).unwrap();
                        let mut want = if br.is_zero() {
                            t.space().zero()
                        } else {
                            t.twisted_gen_mode(&br, m + n, &w).unwrap()
                        };
                        if m + n == HalfInt::ZERO {
                            let c: Scalar = form.clone() * m.to_scalar() * int(k as i64);
                            want.add_scaled(&w, &c).unwrap();
                        }
                        ensure!(xy.minus(&yx).unwrap() == want, "k={k} i={i} m={m} n={n}");
                    }
                }
            }
        }
    }
    Ok(())
}

/// Delta-route and iterate-route twisted modes agree on the Verma module,
/// `ROUTE_SAMPLES` random `(u, n, w)` per level.
pub fn twisted_routes_agree(k: u32) -> Check {
    let names = StateName::all();
    let strategy = (
        0..=k.min(3),
        0..names.len() + 2,
        small_word(),
        -5..=5i64,
        small_word(),
        0..=3u32,
    );
    let count = std::cell::Cell::new(0u32);
    let nonzero = std::cell::Cell::new(0u32);
    run(ROUTE_SAMPLES, strategy, |(i, pick, uw, n2, ww, j)| {
        count.set(count.get() + 1);
        let mut t = TwistedModule::verma(ModuleId::new(k, i).unwrap());
        let u = if pick < names.len() {
            t.state(names[pick]).unwrap()
        } else {
            // sigma-symmetrised random word
            let w: Vec<(Symbol, i32)> = uw.iter().map(|&(s, m)| (SYMBOLS[s], m)).collect();
            let x = t.vacuum_space().canonicalize(&w, 0).unwrap();
            let sx = t.vacuum_space().sigma(&x).unwrap();
            if pick == names.len() {
                x.plus(&sx).unwrap()
            } else {
                x.minus(&sx).unwrap()
            }
        };
        if u.is_zero() {
            return Ok(());
        }
        let r = t.sigma_grade(&u).unwrap() as i64;
        let n = hi(if n2.rem_euclid(2) == r { n2 } else { n2 + 1 });
        let w = build(t.space(), &[(1, ww, j.min(i))]);
        let a = t.twisted_mode(&u, n, &w).unwrap();
        let b = t.twisted_iterate(&u, n, &w).unwrap();
        nonzero.set(nonzero.get() + u32::from(!a.is_zero()));
        prop_assert_eq!(a, b, "k={} i={} n={}", k, i, n);
        Ok(())
    })?;
    ensure!(
        count.get() >= ROUTE_SAMPLES,
        "only {} samples at k={k}",
        count.get()
    );
    ensure!(
        nonzero.get() >= ROUTE_SAMPLES / 5,
        "only {} nonzero samples at k={k}",
        nonzero.get()
    );
    Ok(())
}
