//! Registry of named verification cases and their runner.
//!
//! Expected values live in `golden/cases.toml` as expressions (see
//! [`crate::expr`]); both sides are recomputed by the engine at run time.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Origin, MAX_LEVEL};
use crate::error::{Error, Result};
use crate::expr::{parse_arith, parse_laurent, parse_vexpr, Env, Params, VExpr};
use crate::fock::{FockVector, ModuleId};
use crate::literal::render;
use crate::modes::StateName;
use crate::scalar::{fmt_scalar, HalfInt};
use crate::twist::{LaurentVector, TwistedModule};

pub const GOLDEN: &str = include_str!("../golden/cases.toml");
pub const DEFAULT_LEVELS: [u32; 4] = [3, 4, 5, 6];
/// Degree cap for every module a case builds.
pub const CASE_DEGREE_CAP: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Claim,
    Display,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Equal,
    Zero,
    Nonzero,
    Eigen,
    Grade,
    Delta,
    Count,
    Unverified,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub id: String,
    pub group: Group,
    pub about: String,
    pub check: Check,
    #[serde(default)]
    pub levels: Option<Vec<u32>>,
    #[serde(default)]
    pub skip_k: Vec<u32>,
    #[serde(default)]
    pub parity: Option<String>,
    #[serde(default)]
    pub i: Option<String>,
    #[serde(default)]
    pub skip_i: Vec<String>,
    #[serde(default)]
    pub j: Option<String>,
    #[serde(default)]
    pub lhs: Option<String>,
    #[serde(default)]
    pub rhs: Option<String>,
    #[serde(default)]
    pub op: Option<String>,
    #[serde(default)]
    pub from: Option<String>,
    #[serde(default)]
    pub over: Option<String>,
    #[serde(default)]
    pub state: Option<String>,
    #[serde(default)]
    pub expansion: BTreeMap<String, String>,
    #[serde(default)]
    pub table: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case_id: String,
    pub k: u32,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub witness: String,
    pub expected: String,
    pub runtime_ms: u64,
}

impl CaseResult {
    pub fn to_text(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unverified => "UNVERIFIED",
        };
        let mut s = format!("{tag:<10} {} k={}", self.case_id, self.k);
        if !params.is_empty() {
            s.push(' ');
            s.push_str(&params.join(" "));
        }
        s.push_str(&format!(" ({} ms)", self.runtime_ms));
        if self.status != Status::Pass {
            s.push_str(&format!(
                "\n    computed: {}\n    expected: {}",
                self.witness, self.expected
            ));
        }
        s
    }
}

#[derive(Deserialize)]
struct GoldenFile {
    case: Vec<CaseSpec>,
}

#[derive(Clone, Debug)]
pub struct Registry {
    cases: Vec<CaseSpec>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self::from_toml(GOLDEN).expect("bundled golden file parses")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: GoldenFile = toml::from_str(text).map_err(|e| Error::Golden(e.to_string()))?;
        let mut seen = std::collections::HashSet::new();
        for c in &file.case {
            if !seen.insert(c.id.clone()) {
                return Err(Error::Golden(format!("duplicate case id `{}`", c.id)));
            }
            c.validate()?;
        }
        Ok(Registry { cases: file.case })
    }

    pub fn cases(&self) -> &[CaseSpec] {
        &self.cases
    }

    pub fn get(&self, id: &str) -> Result<&CaseSpec> {
        self.cases
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::UnknownCase(id.to_string()))
    }

    /// Runs one case at level `k`, one result per admissible `(i, j)`.
    pub fn verify(&self, id: &str, k: u32) -> Result<Vec<CaseResult>> {
        let case = self.get(id)?;
        if !(3..=MAX_LEVEL).contains(&k) {
            return Err(Error::LevelOutOfRange(k));
        }
        case.run(k)
    }

    /// Runs each `(case, k)` pair on a pool of worker threads; results come
    /// back in input order.
    pub fn verify_many(&self, jobs: &[(String, u32)]) -> Vec<Result<Vec<CaseResult>>> {
        let workers = std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(jobs.len().max(1));
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Result<Vec<CaseResult>>>>> =
            jobs.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let n = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let Some((id, k)) = jobs.get(n) else { break };
                    let r = self.verify(id, *k);
                    *slots[n].lock().unwrap() = Some(r);
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().unwrap().expect("every job ran"))
            .collect()
    }
}

fn need<'a>(field: &'a Option<String>, name: &str, id: &str) -> Result<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| Error::Golden(format!("case `{id}` needs `{name}`")))
}

impl CaseSpec {
    fn validate(&self) -> Result<()> {
        let id = &self.id;
        match self.check {
            Check::Equal => {
                parse_vexpr(need(&self.lhs, "lhs", id)?)?;
                parse_vexpr(need(&self.rhs, "rhs", id)?)?;
                if let Some(o) = self.over.as_deref().filter(|o| *o != "basis<=2") {
                    parse_vexpr(o)?;
                }
            }
            Check::Zero | Check::Nonzero => {
                parse_vexpr(need(&self.lhs, "lhs", id)?)?;
            }
            Check::Eigen | Check::Grade => {
                parse_vexpr(need(&self.lhs, "lhs", id)?)?;
                parse_arith(need(&self.rhs, "rhs", id)?)?;
                if let Some(o) = &self.op {
                    parse_vexpr(o)?;
                }
                if let Some(f) = &self.from {
                    parse_vexpr(f)?;
                }
            }
            Check::Delta => {
                need(&self.state, "state", id)?;
                parse_laurent(&self.expansion)?;
            }
            Check::Count => {
                parse_arith(need(&self.rhs, "rhs", id)?)?;
                match need(&self.table, "table", id)? {
                    "all" | "twisted-family" | "untwisted" => {}
                    other => {
                        return Err(Error::Golden(format!(
                            "case `{id}`: unknown table `{other}`"
                        )))
                    }
                }
            }
            Check::Unverified => {}
        }
        for a in self.i.iter().chain(self.j.iter()).chain(self.skip_i.iter()) {
            if a != "all" {
                parse_arith(a)?;
            }
        }
        Ok(())
    }

    pub fn applies_to(&self, k: u32) -> bool {
        if self.levels.as_ref().is_some_and(|l| !l.contains(&k)) || self.skip_k.contains(&k) {
            return false;
        }
        match self.parity.as_deref() {
            Some("even") => k.is_multiple_of(2),
            Some("odd") => k % 2 == 1,
            _ => true,
        }
    }

    /// Admissible `(i, j)` pairs at level `k`.
    pub fn instances(&self, k: u32) -> Result<Vec<(u32, u32)>> {
        if !self.applies_to(k) {
            return Ok(Vec::new());
        }
        let p = |i: i64, j: i64| Params { k: k as i64, i, j };
        let is = match self.i.as_deref() {
            None => vec![0],
            Some("all") => (0..=k as i64).collect(),
            Some(a) => parse_arith(a)?.eval_int(&p(0, 0))?.into_iter().collect(),
        };
        let mut skip = Vec::new();
        for s in &self.skip_i {
            if let Some(v) = parse_arith(s)?.eval_int(&p(0, 0))? {
                skip.push(v);
            }
        }
        let mut out = Vec::new();
        for i in is
            .into_iter()
            .filter(|i| (0..=k as i64).contains(i) && !skip.contains(i))
        {
            let js = match self.j.as_deref() {
                None => vec![0],
                Some("all") => (0..=i).collect(),
                Some(a) => parse_arith(a)?.eval_int(&p(i, 0))?.into_iter().collect(),
            };
            out.extend(
                js.into_iter()
                    .filter(|j| (0..=i).contains(j))
                    .map(|j| (i as u32, j as u32)),
            );
        }
        Ok(out)
    }

    fn params(&self, i: u32, j: u32) -> BTreeMap<String, i64> {
        let mut m = BTreeMap::new();
        if self.i.is_some() {
            m.insert("i".to_string(), i as i64);
        }
        if self.j.is_some() {
            m.insert("j".to_string(), j as i64);
        }
        m
    }

    pub fn run(&self, k: u32) -> Result<Vec<CaseResult>> {
        let mut out = Vec::new();
        if self.check == Check::Count {
            if self.applies_to(k) {
                let start = Instant::now();
                let (witness, expected) = self.count(k)?;
                out.push(self.result(k, 0, 0, witness, expected, start));
            }
            return Ok(out);
        }
        let mut module: Option<(u32, TwistedModule)> = None;
        for (i, j) in self.instances(k)? {
            let start = Instant::now();
            if self.check == Check::Unverified {
                let mut r = self.result(
                    k,
                    i,
                    j,
                    String::new(),
                    self.lhs.clone().unwrap_or_default(),
                    start,
                );
                r.status = Status::Unverified;
                out.push(r);
                continue;
            }
            if module.as_ref().is_none_or(|(mi, _)| *mi != i) {
                let ctx = ModuleId::new(k, i)?;
                let mut m = if self.check == Check::Delta {
                    TwistedModule::verma(ctx)
                } else {
                    TwistedModule::new(ctx)
                };
                m.set_cap(CASE_DEGREE_CAP);
                module = Some((i, m));
            }
            let m = &mut module.as_mut().expect("module set").1;
            let params = Params {
                k: k as i64,
                i: i as i64,
                j: j as i64,
            };
            let (witness, expected) = match self.evaluate(m, params) {
                Ok(pair) => pair,
                Err(e) => (format!("error: {e}"), self.expected_text()),
            };
            out.push(self.result(k, i, j, witness, expected, start));
        }
        Ok(out)
    }

    fn result(
        &self,
        k: u32,
        i: u32,
        j: u32,
        witness: String,
        expected: String,
        start: Instant,
    ) -> CaseResult {
        CaseResult {
            case_id: self.id.clone(),
            k,
            params: self.params(i, j),
            status: if witness == expected {
                Status::Pass
            } else {
                Status::Fail
            },
            witness,
            expected,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }

    fn expected_text(&self) -> String {
        self.rhs.clone().unwrap_or_else(|| match self.check {
            Check::Zero => "0".into(),
            Check::Nonzero => "nonzero".into(),
            _ => String::new(),
        })
    }

    fn count(&self, k: u32) -> Result<(String, String)> {
        let table = classify(k)?;
        let n = match self.table.as_deref() {
            Some("twisted-family") => table.twisted_family_size(),
            Some("untwisted") => table.count(Origin::Untwisted),
            _ => table.rows.len(),
        };
        let p = Params {
            k: k as i64,
            i: 0,
            j: 0,
        };
        let expected = parse_arith(self.rhs.as_deref().unwrap_or("0"))?.eval(&p)?;
        Ok((n.to_string(), fmt_scalar(&expected)))
    }

    fn evaluate(&self, m: &mut TwistedModule, p: Params) -> Result<(String, String)> {
        let eval = |m: &mut TwistedModule,
                    text: &str,
                    operand: Option<FockVector>|
         -> Result<FockVector> {
            let e = parse_vexpr(text)?;
            Env {
                module: m,
                params: p,
                operand,
            }
            .eval(&e)
        };
        match self.check {
            Check::Zero | Check::Nonzero => {
                let v = eval(m, self.lhs.as_deref().unwrap_or_default(), None)?;
                let nonzero = !v.is_zero();
                let witness = if nonzero { "nonzero" } else { "0" };
                Ok((witness.into(), self.expected_text()))
            }
            Check::Equal => match self.over.as_deref() {
                None => {
                    let a = eval(m, self.lhs.as_deref().unwrap_or_default(), None)?;
                    let b = eval(m, self.rhs.as_deref().unwrap_or_default(), None)?;
                    Ok((render(&a), render(&b)))
                }
                Some(over) => {
                    let operands = if over == "basis<=2" {
                        degree_basis(m, 2)?
                    } else {
                        vec![eval(m, over, None)?]
                    };
                    let (lhs, rhs) = (
                        parse_vexpr(self.lhs.as_deref().unwrap_or_default())?,
                        parse_vexpr(self.rhs.as_deref().unwrap_or_default())?,
                    );
                    let n = operands.len();
                    for w in operands {
                        let a = apply(m, &lhs, p, &w)?;
                        let b = apply(m, &rhs, p, &w)?;
                        if a != b {
                            let at = render(&w);
                            return Ok((
                                format!("on {at}: {}", render(&a)),
                                format!("on {at}: {}", render(&b)),
                            ));
                        }
                    }
                    let same = format!("agree on {n} vectors");
                    Ok((same.clone(), same))
                }
            },
            Check::Eigen => {
                let v = eval(m, self.lhs.as_deref().unwrap_or_default(), None)?;
                let op = self.op.as_deref().unwrap_or("omega_{1}");
                let expected =
                    fmt_scalar(&parse_arith(self.rhs.as_deref().unwrap_or_default())?.eval(&p)?);
                Ok((eigenvalue(m, op, p, &v)?, expected))
            }
            Check::Grade => {
                let v = eval(m, self.lhs.as_deref().unwrap_or_default(), None)?;
                let from = eval(m, self.from.as_deref().unwrap_or("eta"), None)?;
                let expected =
                    fmt_scalar(&parse_arith(self.rhs.as_deref().unwrap_or_default())?.eval(&p)?);
                let (a, b) = (m.l0_eigenvalue(&v)?, m.l0_eigenvalue(&from)?);
                let witness = match (a, b) {
                    (Some(a), Some(b)) if !v.is_zero() => fmt_scalar(&(a - b)),
                    _ => "not an L(0) eigenvector".to_string(),
                };
                Ok((witness, expected))
            }
            Check::Delta => {
                let state = self.state.as_deref().unwrap_or_default();
                let u = match state.parse::<StateName>() {
                    Ok(n) => m.state(n)?,
                    Err(_) => crate::literal::parse_in(state, m.vacuum_space())?,
                };
                let got = m.delta_apply(&u)?;
                let mut want = BTreeMap::new();
                for (q, e) in parse_laurent(&self.expansion)? {
                    let v = Env {
                        module: m,
                        params: p,
                        operand: None,
                    }
                    .eval(&e)?;
                    if !v.is_zero() {
                        want.insert(q, v);
                    }
                }
                Ok((render_laurent_got(&got), render_laurent(&want)))
            }
            Check::Count | Check::Unverified => unreachable!("handled by run"),
        }
    }
}

fn apply(m: &mut TwistedModule, e: &VExpr, p: Params, w: &FockVector) -> Result<FockVector> {
    Env {
        module: m,
        params: p,
        operand: Some(w.clone()),
    }
    .eval(e)
}

fn eigenvalue(m: &mut TwistedModule, op: &str, p: Params, v: &FockVector) -> Result<String> {
    if v.is_zero() {
        return Ok("0 vector".into());
    }
    let w = apply(m, &parse_vexpr(op)?, p, v)?;
    Ok(match w.ratio_to(v) {
        Some(c) => fmt_scalar(&c),
        None => "not an eigenvector".into(),
    })
}

/// Reduced images of all PBW monomials of degree at most `d`, zeros dropped.
fn degree_basis(m: &mut TwistedModule, d: u32) -> Result<Vec<FockVector>> {
    let ctx = m.ctx();
    let mut out = Vec::new();
    for deg in 0..=d {
        for mono in m.space().monomials_of_degree(deg) {
            let v = FockVector::from_monomial(
                ctx,
                crate::Basis::Chevalley,
                mono,
                crate::scalar::int(1),
            )?;
            let v = m.reduce(&v)?;
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    Ok(out)
}

fn render_laurent(terms: &BTreeMap<HalfInt, FockVector>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .rev()
        .map(|(q, v)| format!("z^{q}: {}", render(v)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_laurent_got(l: &LaurentVector) -> String {
    let m: BTreeMap<HalfInt, FockVector> = l.entries().map(|(q, v)| (q, v.clone())).collect();
    render_laurent(&m)
}

/// Checks that `v` is killed by each listed twisted mode. Names `W4` and `W5`
/// are accepted and reported as unverified.
pub fn check_twisted_lowest(
    m: &mut TwistedModule,
    v: &FockVector,
    checks: &[(&str, HalfInt)],
) -> Result<CaseResult> {
    let start = Instant::now();
    let mut witness = Vec::new();
    let mut expected = Vec::new();
    let mut unverified = 0;
    for (name, n) in checks {
        let label = format!("{name}_{{{n}}}");
        if matches!(*name, "W4" | "W5" | "w4" | "w5") {
            witness.push(format!("{label}: unverified"));
            expected.push(format!("{label}: unverified"));
            unverified += 1;
            continue;
        }
        let u = m.state(name.parse::<StateName>()?)?;
        let r = m.twisted_mode(&u, *n, v)?;
        witness.push(format!(
            "{label}: {}",
            if r.is_zero() { "0" } else { "nonzero" }
        ));
        expected.push(format!("{label}: 0"));
    }
    let ctx = m.ctx();
    let (witness, expected) = (witness.join("; "), expected.join("; "));
    let status = if witness != expected {
        Status::Fail
    } else if unverified == checks.len() && !checks.is_empty() {
        Status::Unverified
    } else {
        Status::Pass
    };
    Ok(CaseResult {
        case_id: "twisted-lowest".into(),
        k: ctx.k,
        params: BTreeMap::from([("i".to_string(), ctx.i as i64)]),
        status,
        witness,
        expected,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
