//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use tautrel::coeffs::{
    build_c_table, build_q_table, check_bernoulli_q_identity, check_diagonal_generating_function,
    check_g_closed_forms, check_q0_equation, check_q_series_equation, check_table_identities, g_ode_residual,
    p_series, solve_g_ode, CTable, IdentityReport, QTable,
};
use tautrel::exact::{bernoulli_table, factorial, Rational};
use tautrel::relations::{
    avoids_low_only_monomials, check_leading_coefficients, crosscheck_pipelines, faber_solve, scan_nonvanishing,
};
use tautrel::tautring::{build_propf_relation, extract_relation, proportion, Proportion};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: tautrel::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn report_ok(report: &IdentityReport) -> Result<usize, String> {
    match report.first_failure() {
        None => Ok(report.checks.iter().map(|c| c.checked).sum()),
        Some(f) => Err(format!(
            "{} fails at k={} j={:?}: expected {}, got {}",
            f.identity, f.k, f.j, f.expected, f.actual
        )),
    }
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Bernoulli numbers (B_1 = -1/2) by the Akiyama-Tanigawa algorithm.
fn bernoulli_oracle(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(Rational::new(1, m as i64 + 1).unwrap());
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    if n >= 1 {
        out[1] = -&out[1];
    }
    out
}

struct Tables {
    q: QTable,
    c: CTable,
}

fn c1_identities(t: &Tables) -> Outcome {
    let bern = bernoulli_table(61);
    let oracle = bernoulli_oracle(61);
    ensure(bern.values()[..=61] == oracle[..], || "Bernoulli table disagrees with oracle".into())?;
    let n = report_ok(&lib(check_table_identities(&t.q, &t.c, &bern, 60))?)?;
    Ok(format!("k <= 60, {n} exact checks"))
}

fn c2_generating_function(t: &Tables) -> Outcome {
    let n = report_ok(&lib(check_diagonal_generating_function(&t.c, 60))?)?;
    let p = p_series(60);
    for k in 0..=60u64 {
        let want = Rational::from(factorial(6 * k))
            / Rational::from(factorial(2 * k) * factorial(3 * k) * BigInt::from(72).pow(k as u32));
        ensure(p.coeff(k as usize).unwrap() == &want, || format!("p_{k} mismatch"))?;
    }
    for (k, v) in [(1, "5/6"), (2, "385/72"), (3, "85085/1296")] {
        ensure(p.coeff(k).unwrap() == &r(v), || format!("p_{k} != {v}"))?;
    }
    Ok(format!("through order 60, {n} coefficients; p_1..p_3 = 5/6, 385/72, 85085/1296"))
}

fn c3_closed_forms() -> Outcome {
    let report = lib(check_g_closed_forms(24))?;
    let n = report_ok(&report)?;
    Ok(format!("orders (24,24), {n} coefficients"))
}

fn c4_residuals(t: &Tables) -> Outcome {
    let alpha = lib(solve_g_ode(24, 24))?;
    let res = lib(g_ode_residual(&alpha))?;
    ensure(res.is_zero(), || "G ODE residual is nonzero".into())?;
    let n1 = report_ok(&lib(check_q_series_equation(&t.q, 20))?)?;
    let q0 = lib(check_q0_equation(&t.q, 60))?;
    let n2 = report_ok(&q0)?;
    Ok(format!(
        "G residual 0 at (24,24); Q equation {n1} coefficients to (20,20); Q_0 {n2} checks to 60 \
         (with the 5z^2 term; without it the residual is exactly 5z^2)"
    ))
}

fn c5_goldens(t: &Tables) -> Outcome {
    use common::poly;
    let goldens = [
        ((5, 2, 0), poly(&[("25/72", &[(1, 2)]), ("-5", &[(2, 1)])])),
        ((4, 2, 1), poly(&[("15/4", &[(1, 2)]), ("-40", &[(2, 1)])])),
        (
            (4, 2, 2),
            poly(&[("25/72", &[(1, 3)]), ("-10/3", &[(1, 1), (2, 1)]), ("-10", &[(3, 1)])]),
        ),
        ((4, 2, 0), poly(&[])),
    ];
    for ((g, d, b), want) in &goldens {
        let got = common::from_kappa_poly(&lib(extract_relation(*g, *d, *b, &t.q, &t.c))?.poly);
        ensure(&got == want, || format!("({g},{d},{b}): library {got:?}"))?;
        let oracle = common::relation(*g, *d, *b, &t.q, &t.c);
        ensure(&oracle == want, || format!("({g},{d},{b}): oracle {oracle:?}"))?;
    }
    let mut grid = 0;
    for g in 2..=10i64 {
        for d in 2..=(g + 2) / 2 {
            for b in 0..=3i64 {
                let n = if b == 0 { g + 1 - 2 * d } else { g + 2 - 2 * d };
                if n < 0 {
                    continue;
                }
                let got = common::from_kappa_poly(&lib(extract_relation(g, d, b, &t.q, &t.c))?.poly);
                ensure(got == common::relation(g, d, b, &t.q, &t.c), || {
                    format!("({g},{d},{b}) disagrees with oracle")
                })?;
                grid += 1;
            }
        }
    }
    Ok(format!("4 goldens; library = brute-force oracle on {grid} relations with g <= 10, b <= 3"))
}

fn c6_leading(t: &Tables) -> Outcome {
    let rep = lib(check_leading_coefficients(16, 5, &t.q, &t.c))?;
    ensure(rep.passed(), || rep.failures[0].clone())?;
    Ok(format!("g <= 16, b <= 5, {} relations", rep.checked))
}

fn c7_pipelines(t: &Tables) -> Outcome {
    let alpha = lib(solve_g_ode(14, 14))?;
    let rep = lib(crosscheck_pipelines(14, 4, &t.q, &t.c, &alpha))?;
    ensure(rep.passed(), || rep.failures[0].clone())?;
    Ok(format!("g <= 14, b <= 4, {} checks, ratio (-1)^d", rep.checked))
}

fn c8_faber(t: &Tables) -> Outcome {
    let mut total = 0;
    for g in 2..=24i64 {
        let exprs = lib(faber_solve(g, &t.q, &t.c))?;
        let top = (g / 3) as usize;
        let want = (g - 2 - g / 3).max(0) as usize;
        ensure(exprs.len() == want, || format!("g={g}: {} expressions, want {want}", exprs.len()))?;
        for e in &exprs {
            ensure(e.rewritten.max_kappa_index().is_none_or(|m| m <= top), || {
                format!("g={g}: κ_{} uses generators above κ_{top}", e.a)
            })?;
            let rel = lib(extract_relation(g, e.d as i64, e.b as i64, &t.q, &t.c))?.poly;
            ensure(!rel.kappa_coeff(e.a as usize).is_zero(), || format!("g={g}: zero leading coefficient"))?;
            if e.b >= 3 {
                ensure(avoids_low_only_monomials(&rel, e.b), || {
                    format!("g={g}, a={}: relation has a monomial in κ_1..κ_{} only", e.a, e.b - 2)
                })?;
            }
            let mut check = rel;
            for prev in exprs.iter().rev() {
                check = check.substitute(prev.a as usize, &prev.rewritten);
            }
            ensure(check.is_zero(), || format!("g={g}: substitution into ({},{}) is nonzero", e.d, e.b))?;
            total += 1;
        }
    }
    Ok(format!("g = 2..24, {total} expressions verified by substitution"))
}

fn c9_scan(t: &Tables) -> Outcome {
    let rep = lib(scan_nonvanishing(60, &t.q, &t.c))?;
    ensure(rep.passed(), || format!("{:?}", rep.failures[0]))?;
    Ok(format!(
        "a <= 60, {} checks, 0 failures ({} cells where the (2a-4d-6) form of the b=1 coefficient differs)",
        rep.checked,
        rep.b1_formula_mismatches.len()
    ))
}

fn c10_propf(t: &Tables) -> Outcome {
    let mut pairs = 0;
    let mut homog = 0;
    for g in 2..=20i64 {
        if (g + 1) % 3 == 0 && g + 1 >= 6 {
            let d = (g + 1) / 3;
            let f = lib(build_propf_relation(g, 0, d, &t.c))?;
            let e = lib(extract_relation(g, d, 0, &t.q, &t.c))?.poly;
            ensure(matches!(proportion(&f, &e), Proportion::Ratio(_)), || {
                format!("g={g}, d={d}: not a nonzero multiple")
            })?;
            pairs += 1;
        }
        for b in 0..=5i64 {
            for a in 0..=g + b {
                let Ok(f) = build_propf_relation(g, b, a, &t.c) else {
                    continue;
                };
                ensure(f.is_homogeneous_of(a as u32), || format!("(g,b,a)=({g},{b},{a}) not homogeneous"))?;
                homog += 1;
            }
        }
    }
    Ok(format!("{pairs} proportional pairs with 3d = g+1, d >= 2; {homog} admissible (g,b,a) homogeneous"))
}

fn c11_bernoulli(t: &Tables) -> Outcome {
    let bern = bernoulli_table(41);
    let n = report_ok(&lib(check_bernoulli_q_identity(&t.q, &bern, 40))?)?;
    Ok(format!("through order 40, {n} coefficients"))
}

fn main() -> ExitCode {
    let q = build_q_table(60);
    let c = build_c_table(&q).expect("c table");
    let t = Tables { q, c };
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("coefficient identities", Some(secs(10)), Box::new(|| c1_identities(&t))),
        ("diagonal generating function", None, Box::new(|| c2_generating_function(&t))),
        ("ODE vs closed forms", Some(secs(60)), Box::new(c3_closed_forms)),
        ("series residuals", None, Box::new(|| c4_residuals(&t))),
        ("relation goldens", None, Box::new(|| c5_goldens(&t))),
        ("leading coefficients", None, Box::new(|| c6_leading(&t))),
        ("pipeline proportionality", None, Box::new(|| c7_pipelines(&t))),
        ("generation of kappa classes", Some(secs(300)), Box::new(|| c8_faber(&t))),
        ("nonvanishing scan", Some(secs(600)), Box::new(|| c9_scan(&t))),
        ("one-variable relations", None, Box::new(|| c10_propf(&t))),
        ("Bernoulli-q identity", None, Box::new(|| c11_bernoulli(&t))),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
