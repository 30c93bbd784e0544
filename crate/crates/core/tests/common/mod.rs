//! Brute-force oracles shared by the integration tests.
//!
//! The κ-exponential is expanded here by enumerating multisets of factors
//! `-c_{a,l} x^a u^l κ_a` directly, with no series arithmetic and no use of
//! the library's polynomial type, so agreement with the library is a real
//! cross-check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use tautrel::coeffs::{CTable, QTable};
use tautrel::exact::{factorial, Rational};
use tautrel::tautring::KappaPoly;

/// Polynomial as a map from exponent vectors (`v[i]` is the power of
/// `κ_{i+1}`, no trailing zeros) to coefficients.
pub type Poly = BTreeMap<Vec<u32>, Rational>;

fn add_into(p: &mut Poly, m: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn from_kappa_poly(p: &KappaPoly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p.terms() {
        assert_eq!(m.psi_exponent(), 0);
        assert_eq!(m.kappa0_exponent(), 0);
        let mut v = vec![0; m.max_kappa_index().unwrap_or(0)];
        for (a, e) in m.kappa_exponents() {
            v[a - 1] = e;
        }
        add_into(&mut out, v, c.clone());
    }
    out
}

/// `[exp(-sum_a x^a κ_a sum_l c_{a,l} u^l)]_{x^n u^j}` by enumeration.
pub fn exp_coeff(c: &CTable, n: usize, j: usize) -> Poly {
    let atoms: Vec<(usize, usize, Rational)> = (1..=n)
        .flat_map(|a| (0..=a.min(j)).map(move |l| (a, l)))
        .map(|(a, l)| (a, l, c.get(a, l).unwrap()))
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    let mut out = Poly::new();
    let mut exps = vec![0u32; n];
    walk(&atoms, 0, n, j, Rational::one(), &mut exps, &mut out);
    out
}

fn walk(
    atoms: &[(usize, usize, Rational)],
    i: usize,
    rest_x: usize,
    rest_u: usize,
    weight: Rational,
    exps: &mut Vec<u32>,
    out: &mut Poly,
) {
    if rest_x == 0 && rest_u == 0 {
        add_into(out, trim(exps.clone()), weight);
        return;
    }
    if i == atoms.len() {
        return;
    }
    let (a, l, ref v) = atoms[i];
    let mut m = 0u32;
    loop {
        let used_x = a * m as usize;
        let used_u = l * m as usize;
        if used_x > rest_x || used_u > rest_u {
            break;
        }
        let w = &weight * (-v).pow(m as i32).unwrap() / Rational::from(factorial(m as u64));
        exps[a - 1] += m;
        walk(atoms, i + 1, rest_x - used_x, rest_u - used_u, w, exps, out);
        exps[a - 1] -= m;
        m += 1;
    }
}

fn times_kappa(p: &Poly, index: i64, g: i64) -> Poly {
    let mut out = Poly::new();
    match index {
        i if i < 0 => {}
        0 => {
            let s = Rational::from(2 * g - 2);
            for (m, c) in p {
                add_into(&mut out, m.clone(), c * &s);
            }
        }
        i => {
            let i = i as usize;
            for (m, c) in p {
                let mut v = m.clone();
                if v.len() < i {
                    v.resize(i, 0);
                }
                v[i - 1] += 1;
                add_into(&mut out, v, c.clone());
            }
        }
    }
    out
}

/// The `(g, d, b)` relation assembled from [`exp_coeff`].
pub fn relation(g: i64, d: i64, b: i64, q: &QTable, c: &CTable) -> Poly {
    if b == 0 {
        return exp_coeff(c, (g + 1 - 2 * d) as usize, d as usize);
    }
    let n = (g + 2 - 2 * d) as usize;
    let du = d as usize;
    let mut out = times_kappa(&exp_coeff(c, n, du), b - 1, g);
    for a in 0..n {
        for j in 0..=a {
            if j + 1 > du {
                break;
            }
            let s = q.rational(a, j).unwrap() * Rational::from(-2);
            let e = exp_coeff(c, n - a - 1, du - j - 1);
            for (m, v) in times_kappa(&e, a as i64 + b, g) {
                add_into(&mut out, m, v * &s);
            }
        }
    }
    out
}

/// Builds `sum coeff * Π κ_a^e` from `(coeff, [(a, e)])` for golden values.
pub fn poly(terms: &[(&str, &[(usize, u32)])]) -> Poly {
    let mut out = Poly::new();
    for (c, exps) in terms {
        let n = exps.iter().map(|(a, _)| *a).max().unwrap_or(0);
        let mut v = vec![0; n];
        for (a, e) in exps.iter() {
            v[a - 1] += e;
        }
        add_into(&mut out, trim(v), c.parse().unwrap());
    }
    out
}
