//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! status if any criterion fails.

mod support;

use std::time::Instant;

use parafermion::{
    check_twisted_lowest, classify, ClassificationTable, GenElem, HalfInt, ModuleId, Registry,
    Status, Symbol, TwistedModule,
};

const LEVELS: [u32; 4] = [3, 4, 5, 6];

struct Outcome {
    pass: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from_checks(checks: Vec<(String, bool)>, summary: String) -> Self {
        let failures: Vec<String> = checks
            .iter()
            .filter(|c| !c.1)
            .map(|c| c.0.clone())
            .collect();
        Outcome {
            pass: failures.is_empty() && !checks.is_empty(),
            summary,
            failures,
        }
    }
}

fn run_cases(reg: &Registry, ids: &[&str], levels: &[u32]) -> Outcome {
    let jobs: Vec<(String, u32)> = ids
        .iter()
        .flat_map(|id| levels.iter().map(move |&k| (id.to_string(), k)))
        .collect();
    let mut checks = Vec::new();
    let (mut n, mut unverified, mut slowest) = (0, 0, 0);
    for (job, res) in jobs.iter().zip(reg.verify_many(&jobs)) {
        match res {
            Ok(results) => {
                for r in results {
                    n += 1;
                    slowest = slowest.max(r.runtime_ms);
                    unverified += usize::from(r.status == Status::Unverified);
                    checks.push((r.to_text(), r.status != Status::Fail));
                }
            }
            Err(e) => checks.push((format!("{} k={}: {e}", job.0, job.1), false)),
        }
    }
    let mut summary = format!("{n} instances of {} cases, slowest {slowest} ms", ids.len());
    if unverified > 0 {
        summary.push_str(&format!(", {unverified} unverified"));
    }
    Outcome::from_checks(checks, summary)
}

fn lowest_vector_checks() -> Outcome {
    let mut checks = Vec::new();
    let minus = GenElem::symbol(Symbol::E)
        .sub(&GenElem::symbol(Symbol::F))
        .unwrap();
    let list = [
        ("omega", HalfInt::from_int(2)),
        ("W3", HalfInt::from_twice(5)),
        ("W4", HalfInt::from_int(4)),
        ("W5", HalfInt::from_twice(9)),
    ];
    for k in [4, 6] {
        let mut m = TwistedModule::new(ModuleId::new(k, k / 2).unwrap());
        let eta = m.eta();
        let v = m
            .twisted_gen_mode(&minus, HalfInt::from_twice(-1), &eta)
            .unwrap();
        match check_twisted_lowest(&mut m, &v, &list) {
            Ok(r) => {
                let ok = r.status == Status::Pass && r.witness.matches("unverified").count() == 2;
                checks.push((format!("k={k}: {}", r.witness), ok));
            }
            Err(e) => checks.push((format!("k={k}: {e}"), false)),
        }
    }
    Outcome::from_checks(
        checks,
        "omega_2 and W3_{5/2} kill (e-f)_{-1/2} eta; W4, W5 unverified".into(),
    )
}

fn count_checks(reg: &Registry) -> Outcome {
    let mut checks = Vec::new();
    for (k, rows, family) in [(3, 10, 2), (4, 19, 4), (5, 18, 3), (6, 28, 5)] {
        match classify(k) {
            Ok(t) => {
                let ok = t.rows.len() == rows
                    && t.rows.len() == ClassificationTable::expected_count(k)
                    && t.twisted_family_size() == family;
                checks.push((
                    format!(
                        "k={k}: {} rows, twisted family {}",
                        t.rows.len(),
                        t.twisted_family_size()
                    ),
                    ok,
                ));
            }
            Err(e) => checks.push((format!("k={k}: {e}"), false)),
        }
    }
    let cases = run_cases(
        reg,
        &[
            "orbifold-module-count-odd",
            "orbifold-module-count-even",
            "twisted-family-count-odd",
            "twisted-family-count-even",
            "untwisted-orbit-count-odd",
            "untwisted-orbit-count-even",
        ],
        &LEVELS,
    );
    checks.extend(cases.failures.into_iter().map(|f| (f, false)));
    Outcome::from_checks(
        checks,
        "rows 10, 19, 18, 28; twisted families 2, 4, 3, 5".into(),
    )
}

fn weight_checks(reg: &Registry) -> Outcome {
    let ids = [
        "twisted-weight-u1",
        "twisted-weight-u2-generic",
        "twisted-weight-u2-at-zero",
        "twisted-weight-u1-k4",
        "twisted-weight-u2-k4",
        "twisted-weight-u1-half",
        "twisted-weight-u2-half",
        "twisted-weight-tilde-u1",
        "twisted-weight-tilde-u2",
        "twisted-grade-u2-generic",
        "twisted-grade-u2-at-zero",
        "twisted-grade-u2-k4",
        "twisted-grade-u2-half",
        "twisted-grade-tilde-u2",
    ];
    let mut out = run_cases(reg, &ids, &LEVELS);
    for k in LEVELS {
        match classify(k) {
            Ok(t) if t.weights_match() => {}
            Ok(_) => out
                .failures
                .push(format!("k={k}: table weight differs from closed form")),
            Err(e) => out.failures.push(format!("k={k}: {e}")),
        }
    }
    out.pass = out.pass && out.failures.is_empty();
    out
}

fn property_checks() -> Outcome {
    let mut checks: Vec<(String, support::Check)> = vec![
        ("commutator law".into(), support::commutator_law()),
        ("Virasoro brackets".into(), support::virasoro_brackets()),
        (
            "twisted commutator law".into(),
            support::twisted_commutator_law(),
        ),
        (
            "pairing contravariance".into(),
            support::pairing_contravariance(),
        ),
        ("radical closure".into(), support::radical_closure()),
        ("literal round trip".into(), support::literal_round_trip()),
    ];
    for k in LEVELS {
        checks.push((
            format!("route agreement k={k}"),
            support::twisted_routes_agree(k),
        ));
    }
    let n = checks.len();
    let checks = checks
        .into_iter()
        .map(|(name, r)| match r {
            Ok(()) => (name, true),
            Err(e) => (format!("{name}: {e}"), false),
        })
        .collect();
    Outcome::from_checks(
        checks,
        format!(
            "{n} suites, {} route samples per level",
            support::ROUTE_SAMPLES
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let reg = Registry::builtin();
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        (
            "omega_1 eigenvalue on every top vector",
            Box::new(|| run_cases(&reg, &["top-vector-weight"], &LEVELS)),
        ),
        (
            "Delta(h'',z) on omega and omega_aff; twisted generator fields",
            Box::new(|| {
                run_cases(
                    &reg,
                    &[
                        "delta-omega",
                        "delta-omega-aff",
                        "twisted-field-h-double-prime",
                        "twisted-field-h-prime",
                        "twisted-field-e-prime",
                        "twisted-field-f-prime",
                    ],
                    &LEVELS,
                )
            }),
        ),
        (
            "twisted composite modes as operator identities on degree <= 2",
            Box::new(|| {
                run_cases(
                    &reg,
                    &[
                        "h3-mode-five-halves",
                        "h-cubed-mode-five-halves",
                        "h3-mode-three-halves",
                        "h-cubed-mode-three-halves",
                        "h3-mode-one-half",
                        "h-cubed-mode-one-half",
                        "h3-mode-minus-one-half",
                        "h-cubed-mode-minus-one-half",
                    ],
                    &LEVELS,
                )
            }),
        ),
        (
            "L(0) eta for every i",
            Box::new(|| run_cases(&reg, &["eta-weight"], &LEVELS)),
        ),
        (
            "W3 on eta truth table",
            Box::new(|| {
                run_cases(
                    &reg,
                    &[
                        "w3-three-halves-eta-vanishes-at-zero",
                        "w3-three-halves-eta-vanishes-at-half",
                        "w3-three-halves-eta-nonzero",
                        "w3-three-halves-eta-value",
                        "w3-half-eta-vanishes-k4",
                        "w3-half-eta-nonzero",
                        "w3-minus-half-eta-nonzero-k4",
                        "w3-on-second-lowest-nonzero",
                    ],
                    &LEVELS,
                )
            }),
        ),
        (
            "second lowest vector at i = k/2",
            Box::new(lowest_vector_checks),
        ),
        (
            "twisted lowest weights from mode actions",
            Box::new(|| weight_checks(&reg)),
        ),
        (
            "W3(1), W3(0) and contractions on sigma-stable tops",
            Box::new(|| {
                run_cases(
                    &reg,
                    &[
                        "w3-one-on-top",
                        "w3-one-on-middle",
                        "w3-one-on-middle-e-contraction",
                        "w3-one-on-middle-f-contraction",
                        "w3-one-on-middle-h-contraction",
                        "w3-one-top-e-contraction",
                        "w3-one-top-vanishes",
                        "w3-one-half-level-vanishes",
                        "w3-zero-top-nonzero",
                        "w3-zero-half-level-nonzero",
                    ],
                    &[4, 6],
                )
            }),
        ),
        ("module counts", Box::new(|| count_checks(&reg))),
        ("property suites", Box::new(property_checks)),
    ];
    let mut failed = 0;
    for (n, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {tag}  {title} ({}; {:.1} s)",
            n + 1,
            out.summary,
            t.elapsed().as_secs_f64()
        );
        if !out.pass {
            failed += 1;
            for f in out.failures.iter().take(4) {
                for line in f.lines() {
                    println!("      {}", line.chars().take(160).collect::<String>());
                }
            }
            if out.failures.len() > 4 {
                println!("      ... {} more", out.failures.len() - 4);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
