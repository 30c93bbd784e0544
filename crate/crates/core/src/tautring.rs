//! Weighted polynomials in κ-classes (and optionally ψ) and the extraction
//! of relations from the κ-exponential.
//!
//! `κ_a` has weight `a`, `ψ` has weight 1. `κ_0` and `κ_{-1}` are not
//! generators: extraction replaces them by `2g - 2` and `0`, unless
//! [`ExtractOptions::keep_kappa0`] asks for `κ_0` to stay symbolic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::coeffs::{AlphaTable, CTable, QTable};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::series::{BiSeries, Coefficient};

/// A monomial `ψ^p κ_0^z Π κ_a^{e_a}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    psi: u32,
    kappa0: u32,
    // kappa[i] is the exponent of κ_{i+1}; no trailing zeros.
    kappa: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `κ_a`, `a >= 1`.
    pub fn kappa(a: usize) -> Self {
        assert!(a >= 1, "κ_{a} is not a generator");
        let mut kappa = vec![0; a];
        kappa[a - 1] = 1;
        Monomial {
            kappa,
            degree: a as u32,
            ..Monomial::default()
        }
    }

    pub fn psi(p: u32) -> Self {
        Monomial {
            psi: p,
            degree: p,
            ..Monomial::default()
        }
    }

    pub fn kappa0() -> Self {
        Monomial {
            kappa0: 1,
            ..Monomial::default()
        }
    }

    /// Builds `Π κ_a^{e}` from `(a, e)` pairs.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (a, e) in pairs {
            for _ in 0..e {
                m = m.mul(&Monomial::kappa(a));
            }
        }
        m
    }

    /// Weighted degree; `κ_0` has weight 0.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.kappa0 == 0
    }

    pub fn psi_exponent(&self) -> u32 {
        self.psi
    }

    pub fn kappa0_exponent(&self) -> u32 {
        self.kappa0
    }

    /// Exponent of `κ_a`, `a >= 1`.
    pub fn exponent(&self, a: usize) -> u32 {
        if a == 0 {
            return self.kappa0;
        }
        self.kappa.get(a - 1).copied().unwrap_or(0)
    }

    /// `(a, e)` with `e > 0`, increasing in `a >= 1`.
    pub fn kappa_exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.kappa
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (i + 1, *e))
    }

    /// Largest `a >= 1` with `κ_a` present.
    pub fn max_kappa_index(&self) -> Option<usize> {
        if self.kappa.is_empty() {
            None
        } else {
            Some(self.kappa.len())
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.kappa.len() >= other.kappa.len() {
            (&self.kappa, &other.kappa)
        } else {
            (&other.kappa, &self.kappa)
        };
        let mut kappa = long.clone();
        for (k, e) in kappa.iter_mut().zip(short) {
            *k += e;
        }
        Monomial {
            psi: self.psi + other.psi,
            kappa0: self.kappa0 + other.kappa0,
            kappa,
            degree: self.degree + other.degree,
        }
    }

    /// Removes every power of `κ_a` (or `κ_0` when `a = 0`), returning the
    /// exponent and the cofactor.
    pub fn split_off(&self, a: usize) -> (u32, Monomial) {
        let e = self.exponent(a);
        let mut rest = self.clone();
        if a == 0 {
            rest.kappa0 = 0;
        } else if e > 0 {
            rest.kappa[a - 1] = 0;
            while rest.kappa.last() == Some(&0) {
                rest.kappa.pop();
            }
            rest.degree -= e * a as u32;
        }
        (e, rest)
    }
}

/// Canonical order: weighted degree ascending, then the exponent vector
/// `(ψ, κ_1, κ_2, ..., κ_0)` lexicographically with larger exponents first.
/// So `κ_1^2 < κ_2` and `κ_1^3 < κ_1 κ_2 < κ_3`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.psi.cmp(&self.psi))
            .then_with(|| {
                let n = self.kappa.len().max(other.kappa.len());
                for i in 0..n {
                    let a = self.kappa.get(i).copied().unwrap_or(0);
                    let b = other.kappa.get(i).copied().unwrap_or(0);
                    if a != b {
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| other.kappa0.cmp(&self.kappa0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => factors.push(name),
            _ => factors.push(format!("{name}^{e}")),
        };
        push("psi".into(), self.psi);
        for (a, e) in self.kappa_exponents() {
            push(format!("k{a}"), e);
        }
        push("k0".into(), self.kappa0);
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON map from generator index to exponent: ψ is `"0"`, a symbolic `κ_0`
/// is `"k0"`, `κ_a` is `"a"`.
impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let len = usize::from(self.psi > 0) + usize::from(self.kappa0 > 0) + self.kappa_exponents().count();
        let mut map = s.serialize_map(Some(len))?;
        if self.psi > 0 {
            map.serialize_entry("0", &self.psi)?;
        }
        for (a, e) in self.kappa_exponents() {
            map.serialize_entry(&a.to_string(), &e)?;
        }
        if self.kappa0 > 0 {
            map.serialize_entry("k0", &self.kappa0)?;
        }
        map.end()
    }
}

/// Result of a homogeneity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed(Vec<u32>),
}

/// Sparse polynomial in `ψ`, `κ_0`, `κ_1`, `κ_2`, ... with rational
/// coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KappaPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl KappaPoly {
    pub fn zero() -> Self {
        KappaPoly::default()
    }

    pub fn one() -> Self {
        KappaPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        KappaPoly::monomial(Monomial::one(), r)
    }

    pub fn monomial(m: Monomial, r: Rational) -> Self {
        let mut p = KappaPoly::zero();
        p.add_term(m, r);
        p
    }

    pub fn kappa(a: usize) -> Self {
        KappaPoly::monomial(Monomial::kappa(a), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = KappaPoly::zero();
        for (m, r) in terms {
            p.add_term(m, r);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the degree-one monomial `κ_a`.
    pub fn kappa_coeff(&self, a: usize) -> Rational {
        self.coeff(&Monomial::kappa(a))
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        degrees.dedup();
        match degrees.len() {
            0 => Homogeneity::Zero,
            1 => Homogeneity::Degree(degrees[0]),
            _ => Homogeneity::Mixed(degrees),
        }
    }

    /// True when zero or weighted-homogeneous of degree `deg`.
    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        matches!(self.homogeneity(), Homogeneity::Zero)
            || self.homogeneity() == Homogeneity::Degree(deg)
    }

    pub fn max_kappa_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_kappa_index).max()
    }

    pub fn has_psi(&self) -> bool {
        self.terms.keys().any(|m| m.psi > 0)
    }

    pub fn has_kappa0(&self) -> bool {
        self.terms.keys().any(|m| m.kappa0 > 0)
    }

    pub fn add(&self, other: &KappaPoly) -> KappaPoly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &KappaPoly) -> KappaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KappaPoly {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, s: &Rational) -> KappaPoly {
        if s.is_zero() {
            return KappaPoly::zero();
        }
        KappaPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &KappaPoly) -> KappaPoly {
        let mut out = KappaPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// `self * s * m`, added into `out`.
    pub fn add_scaled_shift_into(&self, m: &Monomial, s: &Rational, out: &mut KappaPoly) {
        if s.is_zero() {
            return;
        }
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * s);
        }
    }

    pub fn pow(&self, e: u32) -> KappaPoly {
        let mut out = KappaPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replaces `κ_a` (or `κ_0` when `a = 0`) by `value`.
    pub fn substitute(&self, a: usize, value: &KappaPoly) -> KappaPoly {
        let mut powers = vec![KappaPoly::one()];
        let mut out = KappaPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(a);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            powers[e as usize].add_scaled_shift_into(&rest, c, &mut out);
        }
        out
    }

    /// Replaces a symbolic `κ_0` by the scalar `v`.
    pub fn substitute_kappa0(&self, v: &Rational) -> KappaPoly {
        self.substitute(0, &KappaPoly::constant(v.clone()))
    }
}

impl Coefficient for KappaPoly {
    fn zero() -> Self {
        KappaPoly::zero()
    }
    fn one() -> Self {
        KappaPoly::one()
    }
    fn is_zero(&self) -> bool {
        KappaPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale(&self, s: &Rational) -> Self {
        KappaPoly::scale(self, s)
    }
}

impl fmt::Display for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON array of `{"monomial": {...}, "coeff": "p/q"}` in canonical order.
impl Serialize for KappaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: &'a Monomial,
            coeff: &'a Rational,
        }
        s.collect_seq(self.terms.iter().map(|(monomial, coeff)| Term { monomial, coeff }))
    }
}

/// How two polynomials compare up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportion {
    BothZero,
    /// `lhs = ratio * rhs` with `ratio != 0`.
    Ratio(Rational),
    NotProportional,
}

pub fn proportion(lhs: &KappaPoly, rhs: &KappaPoly) -> Proportion {
    match (lhs.is_zero(), rhs.is_zero()) {
        (true, true) => return Proportion::BothZero,
        (true, false) | (false, true) => return Proportion::NotProportional,
        _ => {}
    }
    if lhs.num_terms() != rhs.num_terms() {
        return Proportion::NotProportional;
    }
    let (m, c) = rhs.terms().next().unwrap();
    let ratio = lhs.coeff(m) / c;
    if ratio.is_zero() || *lhs != rhs.scale(&ratio) {
        return Proportion::NotProportional;
    }
    Proportion::Ratio(ratio)
}

/// `E = exp(-sum_{a>=1} x^a κ_a sum_j c_{a,j} u^j)` truncated at `(N_x, N_u)`.
///
/// Computed from `n E_n(u) = -sum_{a=1}^n a κ_a C_a(u) E_{n-a}(u)`, the
/// Euler-operator recurrence in the `x`-degree; `E_n` is homogeneous of
/// weighted degree `n`.
#[derive(Clone, Debug)]
pub struct KappaExponential {
    n_x: usize,
    n_u: usize,
    rows: Vec<Vec<KappaPoly>>,
}

impl KappaExponential {
    pub fn new(c: &CTable, n_x: usize, n_u: usize) -> Result<Self> {
        if n_x >= 1 {
            c.require(n_x)?;
        }
        let mut rows: Vec<Vec<KappaPoly>> = Vec::with_capacity(n_x + 1);
        let mut first = vec![KappaPoly::zero(); n_u + 1];
        first[0] = KappaPoly::one();
        rows.push(first);
        for n in 1..=n_x {
            let mut row = vec![KappaPoly::zero(); n_u + 1];
            let inv_n = Rational::new(-1, n as i64)?;
            for a in 1..=n {
                let ka = Monomial::kappa(a);
                let weight = &inv_n * Rational::from(a);
                for l in 0..=a.min(n_u) {
                    let cal = c.get(a, l)?;
                    if cal.is_zero() {
                        continue;
                    }
                    let s = &weight * &cal;
                    for j in l..=n_u {
                        rows[n - a][j - l].add_scaled_shift_into(&ka, &s, &mut row[j]);
                    }
                }
            }
            rows.push(row);
        }
        Ok(KappaExponential { n_x, n_u, rows })
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.n_x, self.n_u)
    }

    pub fn coeff(&self, n: usize, j: usize) -> Result<&KappaPoly> {
        if n > self.n_x || j > self.n_u {
            return Err(Error::OutOfTruncation {
                i: n,
                j,
                order_0: self.n_x,
                order_1: self.n_u,
            });
        }
        Ok(&self.rows[n][j])
    }

    pub fn to_series(&self) -> BiSeries<KappaPoly> {
        let mut s = BiSeries::zero(("x", "u"), (self.n_x, self.n_u));
        for (n, row) in self.rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                s.add_term(n, j, p.clone());
            }
        }
        s
    }
}

/// The κ-exponential as a series with κ-polynomial coefficients.
pub fn kappa_exponential(c: &CTable, n_x: usize, n_u: usize) -> Result<BiSeries<KappaPoly>> {
    Ok(KappaExponential::new(c, n_x, n_u)?.to_series())
}

/// A relation in degree `g + 1 + b - 2d`, possibly zero. `psi` marks the
/// ψ-κ relation, for which `b` is not meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautRelation {
    pub g: u32,
    pub d: u32,
    pub b: u32,
    pub degree: u32,
    pub psi: bool,
    pub poly: KappaPoly,
}

impl TautRelation {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("relation serializes")
    }
}

impl Serialize for TautRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TautRelation", 5)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("d", &self.d)?;
        if self.psi {
            st.serialize_field("psi", &true)?;
        } else {
            st.serialize_field("b", &self.b)?;
        }
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("terms", &self.poly)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Keep `κ_0` as a generator instead of substituting `2g - 2`.
    pub keep_kappa0: bool,
    /// For `b = 0`, use the general form at `x^{g+2-2d}` (with `κ_{-1} = 0`)
    /// instead of the simplified exponential at `x^{g+1-2d}`.
    pub b0_general: bool,
}

/// `κ_m` with the conventions `κ_{-1} = 0`, `κ_0 = 2g - 2`.
fn kappa_value(m: i64, g: i64, opts: ExtractOptions) -> KappaPoly {
    match m {
        m if m < 0 => KappaPoly::zero(),
        0 if opts.keep_kappa0 => KappaPoly::monomial(Monomial::kappa0(), Rational::one()),
        0 => KappaPoly::constant(Rational::from(2 * g - 2)),
        m => KappaPoly::kappa(m as usize),
    }
}

fn check_gdb(g: i64, d: i64, b: i64) -> Result<()> {
    if g < 2 || d < 2 || b < 0 {
        return Err(Error::RelationOutOfRange { g, d, b });
    }
    Ok(())
}

/// `x`-exponent of the extraction for `(g, d, b)`.
fn x_exponent(g: i64, d: i64, b: i64, opts: ExtractOptions) -> Result<usize> {
    check_gdb(g, d, b)?;
    let n = if b == 0 && !opts.b0_general {
        g + 1 - 2 * d
    } else {
        g + 2 - 2 * d
    };
    if n < 0 {
        return Err(Error::RelationOutOfRange { g, d, b });
    }
    Ok(n as usize)
}

/// `(N_x, N_u)` needed by [`extract_relation`] for `(g, d, b)`.
pub fn extraction_orders(g: i64, d: i64, b: i64) -> Result<(usize, usize)> {
    Ok((x_exponent(g, d, b, ExtractOptions::default())?, d as usize))
}

/// The relation for `(g, d, b)`:
///
/// * `b = 0`: `[E]_{x^{g+1-2d} u^d}`;
/// * `b >= 1`: `[E (κ_{b-1} - 2 sum_{a>=0} κ_{a+b} x^{a+1} sum_j q_{a,j} u^{j+1})]_{x^{g+2-2d} u^d}`,
///
/// with `E` the κ-exponential, `κ_0 = 2g - 2` and `κ_{-1} = 0`.
pub fn extract_relation(g: i64, d: i64, b: i64, q: &QTable, c: &CTable) -> Result<TautRelation> {
    extract_relation_with(g, d, b, q, c, ExtractOptions::default())
}

pub fn extract_relation_with(
    g: i64,
    d: i64,
    b: i64,
    q: &QTable,
    c: &CTable,
    opts: ExtractOptions,
) -> Result<TautRelation> {
    let n = x_exponent(g, d, b, opts)?;
    let exp = KappaExponential::new(c, n, d as usize)?;
    extract_relation_from(&exp, g, d, b, q, opts)
}

/// As [`extract_relation_with`], reading from a precomputed exponential
/// whose orders cover the extraction.
pub fn extract_relation_from(
    exp: &KappaExponential,
    g: i64,
    d: i64,
    b: i64,
    q: &QTable,
    opts: ExtractOptions,
) -> Result<TautRelation> {
    let n = x_exponent(g, d, b, opts)?;
    let du = d as usize;
    let poly = if b == 0 && !opts.b0_general {
        exp.coeff(n, du)?.clone()
    } else {
        if n >= 1 {
            q.require(n - 1)?;
        }
        let mut poly = kappa_value(b - 1, g, opts).mul(exp.coeff(n, du)?);
        let minus_two = Rational::from(-2);
        for a in 0..n {
            let k = kappa_value(a as i64 + b, g, opts);
            let mut inner = KappaPoly::zero();
            for j in 0..=a.min(du - 1) {
                let qaj = q.rational(a, j)?;
                inner.add_assign_ref(&exp.coeff(n - a - 1, du - j - 1)?.scale(&qaj));
            }
            poly.add_assign_ref(&k.mul(&inner).scale(&minus_two));
        }
        poly
    };
    Ok(TautRelation {
        g: g as u32,
        d: d as u32,
        b: b as u32,
        degree: (g + 1 + b - 2 * d) as u32,
        psi: false,
        poly,
    })
}

/// The ψ-κ relation
/// `[E (1 - 2 sum_{a>=0} ψ^{a+1} x^{a+1} sum_j q_{a,j} u^{j+1})]_{x^{g+2-2d} u^d}`,
/// of weighted degree `g + 2 - 2d`.
pub fn extract_psi_relation(g: i64, d: i64, q: &QTable, c: &CTable) -> Result<TautRelation> {
    check_gdb(g, d, 0)?;
    let n = g + 2 - 2 * d;
    if n < 0 {
        return Err(Error::RelationOutOfRange { g, d, b: 0 });
    }
    let n = n as usize;
    let du = d as usize;
    if n >= 1 {
        q.require(n - 1)?;
    }
    let exp = KappaExponential::new(c, n, du)?;
    let mut poly = exp.coeff(n, du)?.clone();
    let minus_two = Rational::from(-2);
    for a in 0..n {
        let psi = Monomial::psi(a as u32 + 1);
        for j in 0..=a.min(du - 1) {
            let s = &minus_two * &q.rational(a, j)?;
            exp.coeff(n - a - 1, du - j - 1)?.add_scaled_shift_into(&psi, &s, &mut poly);
        }
    }
    Ok(TautRelation {
        g: g as u32,
        d: d as u32,
        b: 1,
        degree: n as u32,
        psi: true,
        poly,
    })
}

/// The relation for `(g, d, b)` computed in the original variables `(t, w)`
/// from the coefficients of `G`:
///
/// `[exp(S) T]_{t^{g+2-2d} w^d}` with
/// `S = sum_{a>=1} sum_j t^{a-1} κ_{a-1} α_{a,j} w^j` and
/// `T = κ_{b-1} + 2 sum_{a>=0} sum_{j>=1} t^a κ_{a+b-1} j α_{a,j} w^j`,
/// and `[exp(S)]_{t^{g+1-2d} w^d}` for `b = 0`.
///
/// This agrees with [`extract_relation`] up to the factor `(-1)^d`.
pub fn extract_relation_tw(g: i64, d: i64, b: i64, alpha: &AlphaTable) -> Result<TautRelation> {
    let opts = ExtractOptions::default();
    let n = x_exponent(g, d, b, opts)?;
    let du = d as usize;
    alpha.require(n + 1, du)?;
    let vars = ("t", "w");
    let orders = (n, du);
    let mut s = BiSeries::<KappaPoly>::zero(vars, orders);
    for a in 1..=n + 1 {
        let k = kappa_value(a as i64 - 1, g, opts);
        for j in 0..=du {
            s.add_term(a - 1, j, k.scale(&alpha.get(a, j)?));
        }
    }
    let e = s.exp()?;
    let poly = if b == 0 {
        e.coeff(n, du)?
    } else {
        let mut t = BiSeries::<KappaPoly>::zero(vars, orders);
        t.add_term(0, 0, kappa_value(b - 1, g, opts));
        for a in 0..=n {
            let k = kappa_value(a as i64 + b - 1, g, opts);
            for j in 1..=du {
                let s = alpha.get(a, j)? * Rational::from(2 * j);
                t.add_term(a, j, k.scale(&s));
            }
        }
        e.mul(&t)?.coeff(n, du)?
    };
    Ok(TautRelation {
        g: g as u32,
        d: d as u32,
        b: b as u32,
        degree: (g + 1 + b - 2 * d) as u32,
        psi: false,
        poly,
    })
}

/// Relations in one variable built from the diagonal `c_{j,j}`:
///
/// * `b = 0`: `[exp(-sum c_{j,j} κ_j t^j)]_{t^a}`, for `a = g/3 + 1` or `(g+1)/3`;
/// * `b >= 1`: `[exp(-sum c_{j,j} κ_j t^j) (κ_{b-1} t^{b-1} - 2 κ_b t^b - 12 sum_j j c_{j,j} κ_{j+b} t^{j+b})]_{t^a}`,
///   for `a = (g-1)/3 + b` or `(g+1)/3 + b`.
pub fn build_propf_relation(g: i64, b: i64, a: i64, c: &CTable) -> Result<KappaPoly> {
    if g < 2 || b < 0 || a < 0 {
        return Err(Error::Inadmissible(format!(
            "need g >= 2, b >= 0, a >= 0; got (g,b,a) = ({g},{b},{a})"
        )));
    }
    let admissible = if b == 0 {
        3 * a == g + 3 || 3 * a == g + 1
    } else {
        3 * (a - b) == g - 1 || 3 * (a - b) == g + 1
    };
    if !admissible {
        let rule = if b == 0 {
            "a = g/3 + 1 or a = (g+1)/3"
        } else {
            "a = (g-1)/3 + b or a = (g+1)/3 + b"
        };
        return Err(Error::Inadmissible(format!(
            "(g,b,a) = ({g},{b},{a}) violates {rule}"
        )));
    }
    let au = a as usize;
    if au >= 1 {
        c.require(au)?;
    }
    // f[n] = [exp(-sum c_jj κ_j t^j)]_{t^n}
    let mut f: Vec<KappaPoly> = vec![KappaPoly::one()];
    for n in 1..=au {
        let mut row = KappaPoly::zero();
        for j in 1..=n {
            let s = c.get(j, j)? * Rational::new(-(j as i64), n as i64)?;
            f[n - j].add_scaled_shift_into(&Monomial::kappa(j), &s, &mut row);
        }
        f.push(row);
    }
    if b == 0 {
        return Ok(f[au].clone());
    }
    let opts = ExtractOptions::default();
    let bu = b as usize;
    let mut out = kappa_value(b - 1, g, opts).mul(&f[au - bu + 1]);
    out.add_assign_ref(&KappaPoly::kappa(bu).mul(&f[au - bu]).scale(&Rational::from(-2)));
    for j in 1..=au - bu {
        let s = c.get(j, j)? * Rational::from(-12 * j as i64);
        f[au - bu - j].add_scaled_shift_into(&Monomial::kappa(j + bu), &s, &mut out);
    }
    Ok(out)
}
