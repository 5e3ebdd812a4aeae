//! Irreducible modules of the `sigma`-fixed subalgebra of the parafermion
//! algebra, with lowest weights recomputed from mode actions.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{GenElem, Symbol};
use crate::error::{Error, Result};
use crate::fock::{FockVector, ModuleId};
use crate::modes::StateName;
use crate::quotient::SimpleQuotient;
use crate::scalar::{fmt_scalar, frac, int, HalfInt, Scalar};
use crate::twist::TwistedModule;

pub const MAX_LEVEL: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// A module that is not `sigma`-stable, one per `sigma`-orbit.
    Untwisted,
    UntwistedSplit,
    TwistedSplit,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Untwisted => "untwisted",
            Origin::UntwistedSplit => "untwisted-split",
            Origin::TwistedSplit => "twisted-split",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub origin: Origin,
    pub generator: String,
    /// `L(0)` eigenvalue of the generator, computed by the engine.
    #[serde(serialize_with = "ser_scalar")]
    pub weight: Scalar,
    /// The closed form the weight is expected to match.
    #[serde(serialize_with = "ser_scalar")]
    pub closed_form: Scalar,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_scalar(x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationTable {
    pub k: u32,
    pub rows: Vec<ClassRow>,
}

impl ClassificationTable {
    pub fn expected_count(k: u32) -> usize {
        let k = k as usize;
        if k % 2 == 1 {
            (k + 1) * (k + 7) / 4
        } else {
            (k * k + 8 * k + 28) / 4
        }
    }

    pub fn weights_match(&self) -> bool {
        self.rows.iter().all(|r| r.weight == r.closed_form)
    }

    pub fn count(&self, origin: Origin) -> usize {
        self.rows.iter().filter(|r| r.origin == origin).count()
    }

    /// Number of irreducible `sigma`-twisted modules behind the twisted rows.
    pub fn twisted_family_size(&self) -> usize {
        self.count(Origin::TwistedSplit) / 2
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("k = {}: {} modules\n", self.k, self.rows.len());
        let w = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        let g = self
            .rows
            .iter()
            .map(|r| r.generator.len())
            .max()
            .unwrap_or(0);
        for r in &self.rows {
            out.push_str(&format!(
                "  {:<w$}  {:<15}  {:<g$}  {}\n",
                r.label,
                r.origin.to_string(),
                r.generator,
                fmt_scalar(&r.weight),
            ));
        }
        out
    }
}

/// `lambda_{i,j}`, the `o(omega)` eigenvalue on `v^{i,j}`.
pub fn lambda(k: u32, i: u32, j: u32) -> Scalar {
    let (k, i, j) = (k as i64, i as i64, j as i64);
    let m = i - 2 * j;
    frac(k * m - m * m + 2 * k * j * (i - j + 1), 2 * k * (k + 2))
}

/// Lowest weight of the twisted module generated by `eta` in `L(k,i)`.
pub fn eta_weight(k: u32, i: u32) -> Scalar {
    let (k, i) = (k as i64, i as i64);
    frac(i * (i - k), 4 * (k + 2)) + frac(k - 1, 16)
}

fn check_level(k: u32) -> Result<()> {
    if !(3..=MAX_LEVEL).contains(&k) {
        return Err(Error::LevelOutOfRange(k));
    }
    Ok(())
}

fn untwisted_weight(m: &mut TwistedModule, v: &FockVector, what: &str) -> Result<Scalar> {
    let omega = m.state(StateName::Omega)?;
    let w = m.space().composite_mode(&omega, 1, v)?;
    let w = m.reduce(&w)?;
    let v = m.reduce(v)?;
    if v.is_zero() {
        return Err(Error::Expr(format!(
            "generator {what} vanishes in the simple quotient"
        )));
    }
    w.ratio_to(&v)
        .ok_or_else(|| Error::Expr(format!("generator {what} is not an L(0) eigenvector")))
}

fn twisted_weight(m: &mut TwistedModule, v: &FockVector, what: &str) -> Result<Scalar> {
    if m.is_zero(v)? {
        return Err(Error::Expr(format!(
            "generator {what} vanishes in the simple quotient"
        )));
    }
    m.l0_eigenvalue(v)?
        .ok_or_else(|| Error::Expr(format!("generator {what} is not an L(0) eigenvector")))
}

fn w3_mode(m: &mut TwistedModule, n: i32, v: &FockVector) -> Result<FockVector> {
    let w3 = m.state(StateName::W3)?;
    let r = m.space().composite_mode(&w3, n, v)?;
    m.reduce(&r)
}

fn w3_twisted(m: &mut TwistedModule, twice_n: i64, v: &FockVector) -> Result<FockVector> {
    let w3 = m.state(StateName::W3)?;
    m.twisted_mode(&w3, HalfInt::from_twice(twice_n), v)
}

/// Orbit representatives of the modules `M^{i,j}` that are not `sigma`-stable.
pub fn nonstable_labels(k: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (1..=(k - 1) / 2).map(|i| (i, 0)).collect();
    for i in 3..=k {
        let top = if i % 2 == 0 { i / 2 - 1 } else { i / 2 };
        out.extend((1..=top).map(|j| (i, j)));
    }
    out
}

/// `sigma`-stable labels `(i,j)`.
pub fn stable_labels(k: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (1..=k / 2)
        .map(|m| (2 * m, m))
        .filter(|&(i, _)| i < k || k.is_multiple_of(2))
        .collect();
    if k.is_multiple_of(2) {
        out.push((k / 2, 0));
    }
    out.push((k, 0));
    out
}

pub fn classify(k: u32) -> Result<ClassificationTable> {
    check_level(k)?;
    let mut rows = Vec::new();
    let mut modules: HashMap<u32, TwistedModule> = HashMap::new();

    for (i, j) in nonstable_labels(k) {
        let m = module(&mut modules, k, i)?;
        let v = m.space().top(j)?;
        let what = format!("v^{{{i},{j}}}");
        rows.push(ClassRow {
            label: format!("M^{{{i},{j}}}"),
            origin: Origin::Untwisted,
            weight: untwisted_weight(m, &v, &what)?,
            generator: what,
            closed_form: lambda(k, i, j),
        });
    }

    for (i, j) in stable_labels(k) {
        let m = module(&mut modules, k, i)?;
        let v = m.space().top(j)?;
        let what = format!("v^{{{i},{j}}}");
        let lam = lambda(k, i, j);
        rows.push(ClassRow {
            label: format!("(M^{{{i},{j}}})^0"),
            origin: Origin::UntwistedSplit,
            weight: untwisted_weight(m, &v, &what)?,
            generator: what.clone(),
            closed_form: lam.clone(),
        });
        let (gen, second, shift) = if (i, j) == (k, 0) {
            (format!("W3(-1) {what}"), w3_mode(m, -1, &v)?, int(3))
        } else if i == k || (2 * i == k && j == 0) {
            (format!("W3(0) {what}"), w3_mode(m, 0, &v)?, int(2))
        } else {
            (format!("W3(1) {what}"), w3_mode(m, 1, &v)?, int(1))
        };
        rows.push(ClassRow {
            label: format!("(M^{{{i},{j}}})^1"),
            origin: Origin::UntwistedSplit,
            weight: untwisted_weight(m, &second, &gen)?,
            generator: gen,
            closed_form: lam + shift,
        });
    }

    let top_i = if k % 2 == 1 { (k - 1) / 2 } else { k / 2 };
    for i in 0..=top_i {
        let m = module(&mut modules, k, i)?;
        let eta = m.eta();
        let base = eta_weight(k, i);
        rows.push(ClassRow {
            label: format!("W({k},{i})^1"),
            origin: Origin::TwistedSplit,
            generator: "eta".into(),
            weight: twisted_weight(m, &eta, "eta")?,
            closed_form: base.clone(),
        });
        let (twice_n, closed) = if i == 0 {
            (1, frac(k as i64 + 23, 16))
        } else if 2 * i == k && k == 4 {
            (-1, frac(121, 48))
        } else if 2 * i == k {
            (
                1,
                base.clone() - frac(k as i64 - 1, 16) + frac(k as i64 + 23, 16),
            )
        } else {
            (
                3,
                base.clone() - frac(k as i64 - 1, 16) + frac(k as i64 + 7, 16),
            )
        };
        let gen = format!("W3_{{{}}} eta", HalfInt::from_twice(twice_n));
        let u2 = w3_twisted(m, twice_n, &eta)?;
        rows.push(ClassRow {
            label: format!("W({k},{i})^2"),
            origin: Origin::TwistedSplit,
            weight: twisted_weight(m, &u2, &gen)?,
            generator: gen,
            closed_form: closed,
        });
    }
    if k.is_multiple_of(2) {
        let i = k / 2;
        let m = module(&mut modules, k, i)?;
        let eta = m.eta();
        let minus = GenElem::symbol(Symbol::E).sub(&GenElem::symbol(Symbol::F))?;
        let t1 = m.twisted_gen_mode(&minus, HalfInt::from_twice(-1), &eta)?;
        let t2 = w3_twisted(m, 3, &t1)?;
        let kk = k as i64;
        let base = -frac(kk * kk, 16 * (kk + 2));
        rows.push(ClassRow {
            label: format!("~W({k},{i})^1"),
            origin: Origin::TwistedSplit,
            generator: "(e-f)_{-1/2} eta".into(),
            weight: twisted_weight(m, &t1, "(e-f)_{-1/2} eta")?,
            closed_form: base.clone() + frac(kk + 7, 16),
        });
        rows.push(ClassRow {
            label: format!("~W({k},{i})^2"),
            origin: Origin::TwistedSplit,
            generator: "W3_{3/2} (e-f)_{-1/2} eta".into(),
            weight: twisted_weight(m, &t2, "W3_{3/2} (e-f)_{-1/2} eta")?,
            closed_form: base + frac(kk + 15, 16),
        });
    }
    Ok(ClassificationTable { k, rows })
}

fn module(cache: &mut HashMap<u32, TwistedModule>, k: u32, i: u32) -> Result<&mut TwistedModule> {
    let ctx = ModuleId::new(k, i)?;
    Ok(cache.entry(i).or_insert_with(|| TwistedModule::new(ctx)))
}

/// True iff `h(m) v = 0` in `L(k,0)` for `0 <= m <= deg(v) + 1`.
pub fn check_parafermion_hw(quotient: &mut SimpleQuotient, v: &FockVector) -> Result<bool> {
    if !quotient.ctx().is_vacuum() {
        return Err(Error::NotVacuumModule);
    }
    let v = quotient.reduce_graded(v)?;
    let deg = v.max_degree().unwrap_or(0);
    let h = GenElem::symbol(Symbol::H);
    for m in 0..=deg as i32 + 1 {
        let w = quotient.space().apply_mode(&h, m, &v)?;
        if !quotient.is_zero_graded(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_counts() {
        for k in 3..=8u32 {
            let ns = nonstable_labels(k).len();
            let expect = if k % 2 == 1 {
                (k * k - 1) / 4
            } else {
                (k * k - 4) / 4
            };
            assert_eq!(ns as u32, expect, "k = {k}");
        }
        assert_eq!(stable_labels(3), vec![(2, 1), (3, 0)]);
        assert_eq!(stable_labels(4), vec![(2, 1), (4, 2), (2, 0), (4, 0)]);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(4, 2, 1), frac(1, 3));
        assert_eq!(lambda(5, 5, 0), int(0));
        assert_eq!(eta_weight(4, 2), frac(1, 48));
    }

    #[test]
    fn table_k3() {
        let t = classify(3).unwrap();
        assert_eq!(t.rows.len(), 10);
        assert!(t.weights_match(), "{}", t.to_text());
        assert_eq!(t.twisted_family_size(), 2);
    }

    #[test]
    fn table_k4_weights() {
        let t = classify(4).unwrap();
        assert_eq!(t.rows.len(), 19);
        assert!(t.weights_match(), "{}", t.to_text());
        let ws: Vec<_> = t.rows.iter().map(|r| r.weight.clone()).collect();
        assert!(ws.contains(&frac(1, 48)) && ws.contains(&frac(121, 48)));
        assert_eq!(t.twisted_family_size(), 4);
    }

    #[test]
    fn level_range() {
        assert_eq!(classify(2).unwrap_err(), Error::LevelOutOfRange(2));
        assert_eq!(
            classify(MAX_LEVEL + 1).unwrap_err(),
            Error::LevelOutOfRange(MAX_LEVEL + 1)
        );
    }

    #[test]
    fn parafermion_highest_weight() {
        let mut q = SimpleQuotient::new(ModuleId::vacuum(4).unwrap());
        let mut s = crate::FockSpace::new(ModuleId::vacuum(4).unwrap(), crate::Basis::Chevalley);
        for (name, expect) in [
            (StateName::Omega, true),
            (StateName::W3, true),
            (StateName::OmegaAff, false),
        ] {
            let v = crate::modes::build(&mut s, name).unwrap().value;
            assert_eq!(check_parafermion_hw(&mut q, &v).unwrap(), expect, "{name}");
        }
        let top = q.space().top(0).unwrap();
        let h = q.space().apply_symbol(Symbol::H, -1, &top).unwrap();
        assert!(!check_parafermion_hw(&mut q, &h).unwrap());
    }
}
