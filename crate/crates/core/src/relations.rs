//! Generation of `κ_a` by `κ_1, ..., κ_{[g/3]}`, the nonvanishing scan of
//! leading coefficients, and rank checks of relation families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{AlphaTable, CTable, QTable};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::tautring::{
    build_propf_relation, extract_relation, extract_relation_tw, extract_relation_with, proportion,
    ExtractOptions, KappaPoly, Monomial, Proportion, TautRelation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaberCase {
    /// `b >= 2`, leading coefficient `-2 q_{a-b,d-1}`.
    BLarge,
    B0,
    B1,
}

/// The relation `(d, b)` used to eliminate `κ_a` in genus `g`;
/// `a = g + 1 + b - 2d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaberChoice {
    pub g: u32,
    pub a: u32,
    pub d: u32,
    pub b: u32,
    pub case: FaberCase,
}

/// Picks `(d, b)` for `κ_a` in genus `g`, `[g/3] + 1 <= a <= g - 2`.
///
/// When `3a >= g + 5`, the smallest `d` in `[(g+3-a)/2, (g+2)/3]` with
/// `b = a + 2d - g - 1 >= 2`. That interval can be empty (e.g. `g = 6`,
/// `a = 4`); then, as for small `a`, `b` is the parity of `a - g - 1` and
/// `d = (g + 1 + b - a)/2`, which needs `2 <= d <= a` so that the leading
/// coefficient is one covered by [`scan_nonvanishing`].
pub fn faber_choose(g: i64, a: i64) -> Result<FaberChoice> {
    if g < 2 || a < g / 3 + 1 || a > g - 2 {
        return Err(Error::InvalidArgument(format!(
            "need g >= 2 and [g/3]+1 <= a <= g-2, got (g,a) = ({g},{a})"
        )));
    }
    let make = |d: i64, b: i64, case| FaberChoice {
        g: g as u32,
        a: a as u32,
        d: d as u32,
        b: b as u32,
        case,
    };
    if 3 * a >= g + 5 {
        let lo = (g + 3 - a + 1).div_euclid(2).max(2);
        let hi = (g + 2).div_euclid(3);
        for d in lo..=hi {
            let b = a + 2 * d - g - 1;
            if b >= 2 {
                return Ok(make(d, b, FaberCase::BLarge));
            }
        }
    }
    let b = (a - g - 1).rem_euclid(2);
    let d = (g + 1 + b - a) / 2;
    if d < 2 || d > a {
        return Err(Error::Inadmissible(format!(
            "no (d,b) for (g,a) = ({g},{a})"
        )));
    }
    let case = if b == 0 { FaberCase::B0 } else { FaberCase::B1 };
    Ok(make(d, b, case))
}

/// `κ_a = rhs`, from the relation selected by [`faber_choose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorExpression {
    pub g: u32,
    pub a: u32,
    pub d: u32,
    pub b: u32,
    pub case: FaberCase,
    /// Solved directly from the relation; uses `κ_1 ... κ_{a-1}`.
    pub rhs: KappaPoly,
    /// `rhs` after eliminating every `κ_j`, `j > [g/3]`.
    pub rewritten: KappaPoly,
}

/// Solves the chosen relation for each `a` in `[[g/3]+1, g-2]` and
/// back-substitutes so every expression is a polynomial in
/// `κ_1 ... κ_{[g/3]}`. Each step is validated by substitution into its
/// source relation; a zero leading coefficient is a consistency error.
pub fn faber_solve(g: i64, q: &QTable, c: &CTable) -> Result<Vec<GeneratorExpression>> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("need g >= 2, got {g}")));
    }
    let low = g / 3 + 1;
    let mut out: Vec<GeneratorExpression> = Vec::new();
    let mut sources: Vec<TautRelation> = Vec::new();
    for a in low..=g - 2 {
        let choice = faber_choose(g, a)?;
        let rel = extract_relation(g, choice.d as i64, choice.b as i64, q, c)?;
        let au = a as usize;
        let lead = rel.poly.kappa_coeff(au);
        if lead.is_zero() {
            return Err(Error::Consistency(format!(
                "zero coefficient of κ_{a} in relation (g,d,b) = ({g},{},{})",
                choice.d, choice.b
            )));
        }
        let kappa_a = KappaPoly::kappa(au);
        let rest = rel.poly.sub(&kappa_a.scale(&lead));
        let rhs = rest.scale(&(-lead.recip()?));
        if rhs.max_kappa_index().is_some_and(|m| m >= au) {
            return Err(Error::Consistency(format!(
                "expression for κ_{a} involves κ_{}",
                rhs.max_kappa_index().unwrap()
            )));
        }
        if !rel.poly.substitute(au, &rhs).is_zero() {
            return Err(Error::Consistency(format!(
                "κ_{a} = {rhs} does not satisfy its source relation"
            )));
        }
        let mut rewritten = rhs.clone();
        for prev in out.iter().rev() {
            rewritten = rewritten.substitute(prev.a as usize, &prev.rewritten);
        }
        out.push(GeneratorExpression {
            g: g as u32,
            a: a as u32,
            d: choice.d,
            b: choice.b,
            case: choice.case,
            rhs,
            rewritten,
        });
        sources.push(rel);
    }
    let top = (g / 3) as usize;
    for (expr, rel) in out.iter().zip(&sources) {
        if expr.rewritten.max_kappa_index().is_some_and(|m| m > top) {
            return Err(Error::Consistency(format!(
                "rewritten κ_{} still involves κ_{}",
                expr.a,
                expr.rewritten.max_kappa_index().unwrap()
            )));
        }
        let mut check = rel.poly.clone();
        for e in out.iter().rev() {
            check = check.substitute(e.a as usize, &e.rewritten);
        }
        if !check.is_zero() {
            return Err(Error::Consistency(format!(
                "rewritten expressions do not satisfy relation (g,d,b) = ({g},{},{})",
                rel.d, rel.b
            )));
        }
    }
    Ok(out)
}

/// JSON array of `{"a", "d", "b", "case", "rhs"}`; `rhs` is the rewritten
/// expression when `rewrite` is set.
pub fn faber_json(exprs: &[GeneratorExpression], rewrite: bool) -> String {
    #[derive(Serialize)]
    struct Entry<'a> {
        a: u32,
        d: u32,
        b: u32,
        case: FaberCase,
        rhs: &'a KappaPoly,
    }
    let entries: Vec<Entry> = exprs
        .iter()
        .map(|e| Entry {
            a: e.a,
            d: e.d,
            b: e.b,
            case: e.case,
            rhs: if rewrite { &e.rewritten } else { &e.rhs },
        })
        .collect();
    serde_json::to_string(&entries).expect("faber entries serialize")
}

/// True when no monomial of `poly` is built only from `κ_1 ... κ_{b-2}`.
pub fn avoids_low_only_monomials(poly: &KappaPoly, b: u32) -> bool {
    let bound = b.saturating_sub(2) as usize;
    poly.terms()
        .all(|(m, _)| m.max_kappa_index().is_some_and(|i| i > bound) || m.psi_exponent() > 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub a: u32,
    pub d: u32,
    pub g: u32,
    pub b: u32,
    pub check: &'static str,
    pub expected: Rational,
    pub actual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaMismatch {
    pub a: u32,
    pub d: u32,
    pub g: u32,
    pub b: u32,
    /// `(2g-2) c_{a,d} + 2 q_{a-1,d-1}`, the coefficient the relation has.
    pub extraction: Rational,
    /// `(2a-4d-6) c_{a,d} + 2 q_{a-1,d-1}`.
    pub alternative: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub checked: usize,
    pub failures: Vec<ScanFailure>,
    /// Cells where `(2a-4d-6) c_{a,d} + 2 q_{a-1,d-1}` differs from the
    /// coefficient of the extracted relation; informational only.
    pub b1_formula_mismatches: Vec<FormulaMismatch>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scan report serializes")
    }
}

/// Largest `a` at which [`scan_nonvanishing`] also extracts the relations
/// themselves and compares their `κ_a` coefficients with the formulas.
pub const SCAN_EXTRACTION_MAX_A: usize = 14;

/// For `1 <= d <= a <= a_max`: `c_{a,d} != 0` (the `b = 0` relation in
/// genus `a + 2d - 1`) and `(2g-2) c_{a,d} + 2 q_{a-1,d-1} != 0` with
/// `g = a + 2d - 2` (the `b = 1` relation). For `a <= `
/// [`SCAN_EXTRACTION_MAX_A`] and `d >= 2` the coefficients are also read
/// from the extracted relations.
pub fn scan_nonvanishing(a_max: usize, q: &QTable, c: &CTable) -> Result<ScanReport> {
    if a_max == 0 {
        return Err(Error::InvalidArgument("scan needs a_max >= 1".into()));
    }
    q.require(a_max - 1)?;
    c.require(a_max)?;
    let cells: Vec<(usize, usize)> = (1..=a_max).flat_map(|a| (1..=a).map(move |d| (a, d))).collect();
    let parts = cells
        .par_iter()
        .map(|&(a, d)| scan_cell(a, d, q, c))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ScanReport::default();
    for part in parts {
        report.checked += part.checked;
        report.failures.extend(part.failures);
        report.b1_formula_mismatches.extend(part.b1_formula_mismatches);
    }
    Ok(report)
}

fn scan_cell(a: usize, d: usize, q: &QTable, c: &CTable) -> Result<ScanReport> {
    let mut part = ScanReport::default();
    let cad = c.get(a, d)?;
    let q_lead = q.rational(a - 1, d - 1)? * Rational::from(2);
    let g0 = a + 2 * d - 1;
    let g1 = a + 2 * d - 2;
    let b1 = Rational::from(2 * g1 as i64 - 2) * &cad + &q_lead;
    let alternative = Rational::from(2 * a as i64 - 4 * d as i64 - 6) * &cad + &q_lead;
    let fail = |g: usize, b: u32, check, expected: Rational, actual: Rational| ScanFailure {
        a: a as u32,
        d: d as u32,
        g: g as u32,
        b,
        check,
        expected,
        actual,
    };

    part.checked += 2;
    if cad.is_zero() {
        part.failures.push(fail(g0, 0, "c_ad_nonzero", Rational::zero(), cad.clone()));
    }
    if b1.is_zero() {
        part.failures.push(fail(g1, 1, "b1_coefficient_nonzero", Rational::zero(), b1.clone()));
    }
    if alternative != b1 {
        part.b1_formula_mismatches.push(FormulaMismatch {
            a: a as u32,
            d: d as u32,
            g: g1 as u32,
            b: 1,
            extraction: b1.clone(),
            alternative,
        });
    }

    if a <= SCAN_EXTRACTION_MAX_A && d >= 2 {
        let ka = Monomial::kappa(a);
        let rel0 = extract_relation(g0 as i64, d as i64, 0, q, c)?;
        part.checked += 1;
        let got = rel0.poly.coeff(&ka);
        if got != -&cad {
            part.failures.push(fail(g0, 0, "b0_extraction", -&cad, got));
        }
        let rel1 = extract_relation(g1 as i64, d as i64, 1, q, c)?;
        part.checked += 1;
        let got = rel1.poly.coeff(&ka);
        if got != -&b1 {
            part.failures.push(fail(g1, 1, "b1_extraction", -&b1, got));
        }
    }
    Ok(part)
}

/// Rank of the relations of one degree in one genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub g: u32,
    pub a: u32,
    /// `(d, b)` pairs whose relation is nonzero.
    pub pairs: Vec<(u32, u32)>,
    /// `(d, b)` pairs whose relation vanishes identically.
    pub zero_pairs: Vec<(u32, u32)>,
    pub rank: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.rank == self.pairs.len()
    }
}

/// All `(d, b)` with `d >= 2`, `b >= 0`, `a = g + 1 + b - 2d` and a
/// nonnegative extraction exponent, with the rank of the nonzero relations
/// in the monomial basis of degree `a`.
pub fn independence_report(g: i64, a: i64, q: &QTable, c: &CTable) -> Result<IndependenceReport> {
    if g < 2 || a < 0 {
        return Err(Error::InvalidArgument(format!("need g >= 2, a >= 0; got ({g},{a})")));
    }
    let mut polys = Vec::new();
    let mut pairs = Vec::new();
    let mut zero_pairs = Vec::new();
    let mut d = 2;
    loop {
        let b = a + 2 * d - g - 1;
        let n = if b == 0 { g + 1 - 2 * d } else { g + 2 - 2 * d };
        if n < 0 {
            break;
        }
        if b >= 0 {
            let rel = extract_relation(g, d, b, q, c)?;
            if rel.poly.is_zero() {
                zero_pairs.push((d as u32, b as u32));
            } else {
                pairs.push((d as u32, b as u32));
                polys.push(rel.poly);
            }
        }
        d += 1;
    }
    Ok(IndependenceReport {
        g: g as u32,
        a: a as u32,
        pairs,
        zero_pairs,
        rank: poly_rank(&polys),
    })
}

/// Rank of a family of polynomials over the rationals.
pub fn poly_rank(polys: &[KappaPoly]) -> usize {
    let mut basis: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    basis.sort();
    basis.dedup();
    let rows = polys
        .iter()
        .map(|p| {
            let coeffs: Vec<Rational> = basis.iter().map(|m| p.coeff(m)).collect();
            integer_row(&coeffs)
        })
        .collect();
    bareiss_rank(rows)
}

/// Clears denominators of a rational row.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

/// Rank by fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// `(g, d, b)` with `2 <= g <= g_max`, `d >= 2`, `b <= b_max` and a
/// nonnegative extraction exponent.
pub fn relation_grid(g_max: i64, b_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for g in 2..=g_max {
        for d in 2..=(g + 2) / 2 {
            for b in 0..=b_max {
                let n = if b == 0 { g + 1 - 2 * d } else { g + 2 - 2 * d };
                if n >= 0 {
                    out.push((g, d, b));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
    /// `(g, d, ratio)`: the `b = 0` relation taken at `x^{g+2-2d}` divided
    /// by the one at `x^{g+1-2d}`, where both are nonzero.
    pub b0_general_ratios: Vec<(u32, u32, Rational)>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the `(x, u)` and `(t, w)` extractions on [`relation_grid`]
/// (ratio `(-1)^d` or both zero), checks homogeneity, records the `b = 0`
/// general-form ratios, and compares the one-variable `b = 0` relation with
/// the extraction whenever `3d = g + 1`.
pub fn crosscheck_pipelines(
    g_max: i64,
    b_max: i64,
    q: &QTable,
    c: &CTable,
    alpha: &AlphaTable,
) -> Result<CrossCheckReport> {
    let grid = relation_grid(g_max, b_max);
    let parts = grid
        .par_iter()
        .map(|&(g, d, b)| -> Result<CrossCheckReport> {
            let mut part = CrossCheckReport::default();
            let xu = extract_relation(g, d, b, q, c)?;
            let tw = extract_relation_tw(g, d, b, alpha)?;
            part.checked += 2;
            if !xu.poly.is_homogeneous_of(xu.degree) {
                part.failures.push(format!("({g},{d},{b}): relation not homogeneous of degree {}", xu.degree));
            }
            let sign = Rational::from(if d % 2 == 0 { 1 } else { -1 });
            match proportion(&tw.poly, &xu.poly) {
                Proportion::BothZero => {}
                Proportion::Ratio(r) if r == sign => {}
                other => part.failures.push(format!("({g},{d},{b}): (t,w) vs (x,u) gave {other:?}, want ratio {sign}")),
            }
            if b == 0 {
                let opts = ExtractOptions {
                    b0_general: true,
                    ..Default::default()
                };
                let general = extract_relation_with(g, d, 0, q, c, opts)?;
                part.checked += 1;
                match proportion(&general.poly, &xu.poly) {
                    Proportion::BothZero => {}
                    Proportion::Ratio(r) => part.b0_general_ratios.push((g as u32, d as u32, r)),
                    Proportion::NotProportional => {
                        part.failures.push(format!("({g},{d},0): general form not proportional to simple form"))
                    }
                }
                if 3 * d == g + 1 {
                    let f = build_propf_relation(g, 0, d, c)?;
                    part.checked += 1;
                    if !matches!(proportion(&f, &xu.poly), Proportion::Ratio(_)) {
                        part.failures.push(format!("({g},{d},0): one-variable relation not a nonzero multiple"));
                    }
                }
            }
            Ok(part)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CrossCheckReport::default();
    for part in parts {
        report.checked += part.checked;
        report.failures.extend(part.failures);
        report.b0_general_ratios.extend(part.b0_general_ratios);
    }
    Ok(report)
}

/// Checks the `κ_a` coefficient of every relation on [`relation_grid`]
/// against `-2 q_{a-b,d-1}` (`b >= 2`), `-((2g-2) c_{a,d} + 2 q_{a-1,d-1})`
/// (`b = 1`) and `-c_{a,d}` (`b = 0`), where `a = g + 1 + b - 2d >= 1`.
pub fn check_leading_coefficients(g_max: i64, b_max: i64, q: &QTable, c: &CTable) -> Result<CrossCheckReport> {
    let grid = relation_grid(g_max, b_max);
    let parts = grid
        .par_iter()
        .map(|&(g, d, b)| -> Result<Option<String>> {
            let a = g + 1 + b - 2 * d;
            if a < 1 {
                return Ok(None);
            }
            let (au, du) = (a as usize, d as usize);
            let want = match b {
                0 => -c.get(au, du)?,
                1 => {
                    -(Rational::from(2 * g - 2) * c.get(au, du)?
                        + q.rational(au - 1, du - 1)? * Rational::from(2))
                }
                _ if a < b => Rational::zero(),
                _ => q.rational((a - b) as usize, du - 1)? * Rational::from(-2),
            };
            let got = extract_relation(g, d, b, q, c)?.poly.kappa_coeff(au);
            Ok((got != want).then(|| format!("({g},{d},{b}): κ_{a} coefficient {got}, formula {want}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossCheckReport {
        checked: parts.len(),
        failures: parts.into_iter().flatten().collect(),
        b0_general_ratios: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{build_c_table, build_q_table};

    fn tables(k: usize) -> (QTable, CTable) {
        let q = build_q_table(k);
        let c = build_c_table(&q).unwrap();
        (q, c)
    }

    #[test]
    fn choose_examples() {
        let ch = faber_choose(10, 6).unwrap();
        assert_eq!((ch.d, ch.b, ch.case), (4, 3, FaberCase::BLarge));
        let ch = faber_choose(5, 2).unwrap();
        assert_eq!((ch.d, ch.b, ch.case), (2, 0, FaberCase::B0));
        let ch = faber_choose(4, 2).unwrap();
        assert_eq!((ch.d, ch.b, ch.case), (2, 1, FaberCase::B1));
        // The b >= 2 interval [5/2, 8/3] has no integer.
        let ch = faber_choose(6, 4).unwrap();
        assert_eq!((ch.d, ch.b, ch.case), (2, 1, FaberCase::B1));
        assert!(faber_choose(10, 3).is_err());
        assert!(faber_choose(10, 9).is_err());
    }

    #[test]
    fn choose_is_consistent() {
        for g in 2..=40i64 {
            for a in g / 3 + 1..=g - 2 {
                let ch = faber_choose(g, a).unwrap();
                assert_eq!(ch.a as i64, g + 1 + ch.b as i64 - 2 * ch.d as i64);
                assert!(ch.d >= 2);
            }
        }
    }

    #[test]
    fn solve_small_genera() {
        let (q, c) = tables(10);
        assert!(faber_solve(2, &q, &c).unwrap().is_empty());
        assert!(faber_solve(3, &q, &c).unwrap().is_empty());
        let g4 = faber_solve(4, &q, &c).unwrap();
        assert_eq!(g4.len(), 1);
        let want = KappaPoly::kappa(1).pow(2).scale(&"3/32".parse().unwrap());
        assert_eq!(g4[0].rhs, want);
        let g5 = faber_solve(5, &q, &c).unwrap();
        assert_eq!(g5.len(), 2);
        let want = KappaPoly::kappa(1).pow(2).scale(&"5/72".parse().unwrap());
        assert_eq!(g5[0].rewritten, want);
        assert_eq!(g5[1].rewritten.max_kappa_index(), Some(1));
    }

    #[test]
    fn scan_small() {
        let (q, c) = tables(4);
        let rep = scan_nonvanishing(2, &q, &c).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.b1_formula_mismatches.len(), 3);
        let rep = scan_nonvanishing(1, &q, &c).unwrap();
        assert!(rep.passed());
        assert!(scan_nonvanishing(0, &q, &c).is_err());
    }

    #[test]
    fn independence_examples() {
        let (q, c) = tables(12);
        let rep = independence_report(4, 3, &q, &c).unwrap();
        assert_eq!(rep.pairs, vec![(2, 2)]);
        assert_eq!(rep.rank, 1);
        let rep = independence_report(5, 2, &q, &c).unwrap();
        assert_eq!(rep.pairs, vec![(2, 0)]);
        assert!(rep.independent());
        // (5,2) and (6,4) are admissible but vanish: a b >= 1 relation is
        // zero once 3d > g + 2.
        let rep = independence_report(11, 4, &q, &c).unwrap();
        assert_eq!(rep.pairs, vec![(4, 0)]);
        assert_eq!(rep.zero_pairs, vec![(5, 2), (6, 4)]);
        assert_eq!(rep.rank, 1);
    }

    #[test]
    fn crosscheck_small() {
        let (q, c) = tables(10);
        let alpha = crate::coeffs::solve_g_ode(8, 8).unwrap();
        let rep = crosscheck_pipelines(7, 3, &q, &c, &alpha).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.b0_general_ratios.contains(&(5, 2, Rational::from(4))));
        let rep = check_leading_coefficients(9, 4, &q, &c).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn bareiss_small() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]])), 2);
        assert_eq!(bareiss_rank(m(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]])), 3);
        assert_eq!(bareiss_rank(Vec::new()), 0);
    }
}
