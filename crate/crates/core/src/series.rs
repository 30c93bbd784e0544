//! Truncated formal power series in one or two variables.
//!
//! A [`BiSeries`] carries explicit truncation orders `(N_0, N_1)`: it stores
//! the coefficients of `v0^i v1^j` for `i <= N_0`, `j <= N_1` and every
//! binary operation insists that both operands agree on variables and
//! orders. Multiplying by a variable raises the corresponding order and
//! differentiating lowers it, so the orders always describe what is known
//! exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::exact::{generalized_binomial, Rational};

/// Ring of series coefficients. Implemented by [`Rational`] and by the
/// κ-polynomials of [`crate::tautring`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, s: &Rational) -> Self;

    fn neg_ref(&self) -> Self {
        self.scale(&Rational::from(-1))
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Rational) -> Self {
        self * s
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Which of the two variables of a [`BiSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    First,
    Second,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::First => 0,
            Var::Second => 1,
        }
    }
}

/// Truncated bivariate power series with sparse storage; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct BiSeries<C = Rational> {
    vars: [String; 2],
    orders: [usize; 2],
    coeffs: BTreeMap<(usize, usize), C>,
}

impl<C: Coefficient> BiSeries<C> {
    pub fn zero(vars: (&str, &str), orders: (usize, usize)) -> Self {
        BiSeries {
            vars: [vars.0.to_string(), vars.1.to_string()],
            orders: [orders.0, orders.1],
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(vars: (&str, &str), orders: (usize, usize)) -> Self {
        Self::monomial(vars, orders, 0, 0, C::one())
    }

    /// `c * v0^i * v1^j`, or zero if the exponent lies beyond the orders.
    pub fn monomial(vars: (&str, &str), orders: (usize, usize), i: usize, j: usize, c: C) -> Self {
        let mut s = Self::zero(vars, orders);
        s.add_term(i, j, c);
        s
    }

    /// Builds a series from terms; terms beyond the truncation orders are
    /// dropped, which is what truncation means.
    pub fn from_terms(
        vars: (&str, &str),
        orders: (usize, usize),
        terms: impl IntoIterator<Item = ((usize, usize), C)>,
    ) -> Self {
        let mut s = Self::zero(vars, orders);
        for ((i, j), c) in terms {
            s.add_term(i, j, c);
        }
        s
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars[0], &self.vars[1])
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.orders[0], self.orders[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Nonzero terms in lexicographic order of `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &C)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    /// Adds `c * v0^i v1^j`; ignored beyond the truncation orders.
    pub fn add_term(&mut self, i: usize, j: usize, c: C) {
        if i > self.orders[0] || j > self.orders[1] || c.is_zero() {
            return;
        }
        match self.coeffs.entry((i, j)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// The coefficient of `v0^i v1^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Result<C> {
        if i > self.orders[0] || j > self.orders[1] {
            return Err(Error::OutOfTruncation {
                i,
                j,
                order_0: self.orders[0],
                order_1: self.orders[1],
            });
        }
        Ok(self.coeffs.get(&(i, j)).cloned().unwrap_or_else(C::zero))
    }

    pub fn constant_term(&self) -> C {
        self.coeffs.get(&(0, 0)).cloned().unwrap_or_else(C::zero)
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::SeriesMismatch(format!(
                "{op}: variables {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        if self.orders != other.orders {
            return Err(Error::SeriesMismatch(format!(
                "{op}: orders {:?} vs {:?}",
                self.orders, other.orders
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Applies `f` coefficientwise, re-eliding zeros.
    pub fn map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> BiSeries<D> {
        let mut out = BiSeries::zero(self.vars(), self.orders());
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, f(c));
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let mut out = Self::zero(self.vars(), self.orders());
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + i2 <= self.orders[0] && j1 + j2 <= self.orders[1] {
                    out.add_term(i1 + i2, j1 + j2, a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the scalar-free coefficient `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Exponential of a series with zero constant term.
    ///
    /// With `D = v0 d/dv0 + v1 d/dv1`, `E = exp(A)` satisfies `D E = E * D A`,
    /// which determines the coefficients of `E` in order of total degree.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let [n0, n1] = self.orders;
        let mut out = Self::one(self.vars(), self.orders());
        for total in 1..=(n0 + n1) {
            let inv = Rational::new(1, total as i64)?;
            for i in total.saturating_sub(n1)..=total.min(n0) {
                let j = total - i;
                let mut acc = C::zero();
                for (&(k, l), a) in self.coeffs.range((0, 0)..=(i, j)) {
                    if l > j {
                        continue;
                    }
                    if let Some(e) = out.coeffs.get(&(i - k, j - l)) {
                        acc.add_assign_ref(&a.mul_ref(e).scale(&Rational::from(k + l)));
                    }
                }
                out.add_term(i, j, acc.scale(&inv));
            }
        }
        Ok(out)
    }

    /// Partial derivative; the known order in `var` drops by one.
    pub fn derivative(&self, var: Var) -> Result<Self> {
        let v = var.index();
        if self.orders[v] == 0 {
            return Err(Error::SeriesMismatch(format!(
                "cannot differentiate in {} at order 0",
                self.vars[v]
            )));
        }
        let mut orders = self.orders;
        orders[v] -= 1;
        let mut out = Self::zero(self.vars(), (orders[0], orders[1]));
        for (&(i, j), c) in &self.coeffs {
            let (e, ni, nj) = if v == 0 { (i, i.wrapping_sub(1), j) } else { (j, i, j.wrapping_sub(1)) };
            if e > 0 {
                out.add_term(ni, nj, c.scale(&Rational::from(e)));
            }
        }
        Ok(out)
    }

    /// Multiplies by `var^k`; the known order in `var` rises by `k`.
    pub fn shift_up(&self, var: Var, k: usize) -> Self {
        let v = var.index();
        let mut orders = self.orders;
        orders[v] += k;
        let mut out = Self::zero(self.vars(), (orders[0], orders[1]));
        for (&(i, j), c) in &self.coeffs {
            let (ni, nj) = if v == 0 { (i + k, j) } else { (i, j + k) };
            out.add_term(ni, nj, c.clone());
        }
        out
    }

    /// Divides by `var^k`; requires every term to be divisible. The known
    /// order in `var` drops by `k`.
    pub fn shift_down(&self, var: Var, k: usize) -> Result<Self> {
        let v = var.index();
        if self.orders[v] < k {
            return Err(Error::SeriesMismatch(format!(
                "cannot divide by {}^{k} at order {}",
                self.vars[v], self.orders[v]
            )));
        }
        let mut orders = self.orders;
        orders[v] -= k;
        let mut out = Self::zero(self.vars(), (orders[0], orders[1]));
        for (&(i, j), c) in &self.coeffs {
            let e = if v == 0 { i } else { j };
            if e < k {
                return Err(Error::SeriesMismatch(format!(
                    "term ({i},{j}) not divisible by {}^{k}",
                    self.vars[v]
                )));
            }
            let (ni, nj) = if v == 0 { (i - k, j) } else { (i, j - k) };
            out.add_term(ni, nj, c.clone());
        }
        Ok(out)
    }

    /// Explicitly lowers the truncation orders.
    pub fn truncate(&self, orders: (usize, usize)) -> Result<Self> {
        if orders.0 > self.orders[0] || orders.1 > self.orders[1] {
            return Err(Error::SeriesMismatch(format!(
                "cannot raise orders {:?} to {:?} by truncation",
                self.orders, orders
            )));
        }
        Ok(Self::from_terms(
            self.vars(),
            orders,
            self.coeffs.iter().map(|(&k, c)| (k, c.clone())),
        ))
    }

    /// Same coefficients under new variable names.
    pub fn rename(&self, vars: (&str, &str)) -> Self {
        BiSeries {
            vars: [vars.0.to_string(), vars.1.to_string()],
            orders: self.orders,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<C: Coefficient + fmt::Display> BiSeries<C> {
    /// One term per line, `i j value`, sorted by `(i, j)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (&(i, j), c) in &self.coeffs {
            writeln!(s, "{i} {j} {c}").unwrap();
        }
        s
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for BiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BiSeries({}, {}; orders {:?})",
            self.vars[0], self.vars[1], self.orders
        )?;
        for (&(i, j), c) in &self.coeffs {
            write!(f, " + ({c}) {}^{i} {}^{j}", self.vars[0], self.vars[1])?;
        }
        Ok(())
    }
}

/// The coefficient of `v0^i v1^j`.
pub fn extract_coeff<C: Coefficient>(p: &BiSeries<C>, i: usize, j: usize) -> Result<C> {
    p.coeff(i, j)
}

/// `(1 + c*v)^e` for rational `e`, expanded in `var` to the given orders.
pub fn binomial_unit_pow(
    c: &Rational,
    e: &Rational,
    vars: (&str, &str),
    orders: (usize, usize),
    var: Var,
) -> BiSeries {
    let n = match var {
        Var::First => orders.0,
        Var::Second => orders.1,
    };
    let mut out = BiSeries::zero(vars, orders);
    let mut c_pow = Rational::one();
    for k in 0..=n {
        let coeff = generalized_binomial(e, k) * &c_pow;
        match var {
            Var::First => out.add_term(k, 0, coeff),
            Var::Second => out.add_term(0, k, coeff),
        }
        c_pow *= c;
    }
    out
}

/// Coefficient of `x^a w^d` in `P(x, w)` computed through the substitution
/// `w = -u/(1+4u)`, `x = y (1+4u)^{-1/2}`:
///
/// `(-1)^d [(1+4u)^{(a+2d-2)/2} P(y, u)]_{y^a u^d}`.
///
/// The half-integer powers of `(1+4u)` are expanded as series; the result
/// must equal the directly extracted coefficient.
pub fn change_vars_xw_to_yu(p: &BiSeries, a: usize, d: usize) -> Result<Rational> {
    let (na, nd) = p.orders();
    if na < a || nd < d {
        return Err(Error::OutOfTruncation {
            i: a,
            j: d,
            order_0: na,
            order_1: nd,
        });
    }
    let vars = ("y", "u");
    let orders = (a, d);
    let four = Rational::from(4);
    // x^i w^j -> y^i (-u)^j (1+4u)^{-i/2 - j}
    let mut hat = BiSeries::<Rational>::zero(vars, orders);
    for ((i, j), c) in p.terms() {
        if i > a || j > d {
            continue;
        }
        let e = Rational::new(-(i as i64) - 2 * j as i64, 2)?;
        let factor = binomial_unit_pow(&four, &e, vars, orders, Var::Second);
        let sign = if j % 2 == 0 { c.clone() } else { -c };
        let term = BiSeries::monomial(vars, orders, i, j, sign);
        hat = hat.add(&term.mul(&factor)?)?;
    }
    let prefactor = binomial_unit_pow(
        &four,
        &Rational::new(a as i64 + 2 * d as i64 - 2, 2)?,
        vars,
        orders,
        Var::Second,
    );
    let v = hat.mul(&prefactor)?.coeff(a, d)?;
    Ok(if d.is_multiple_of(2) { v } else { -v })
}

/// Truncated univariate power series with dense coefficients `0..=order`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniSeries {
    var: String,
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn zero(var: &str, order: usize) -> Self {
        UniSeries {
            var: var.to_string(),
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(var: &str, order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or(Error::OutOfTruncation {
            i: k,
            j: 0,
            order_0: self.order(),
            order_1: 0,
        })
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.var != other.var || self.order() != other.order() {
            return Err(Error::SeriesMismatch(format!(
                "{op}: ({}, {}) vs ({}, {})",
                self.var,
                self.order(),
                other.var,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        Ok(UniSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        Ok(UniSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
            .collect();
        Ok(UniSeries {
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Exponential of a series with zero constant term: `k e_k = sum_i i a_i e_{k-i}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut e = vec![Rational::one()];
        for k in 1..=n {
            let s: Rational = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero())
                .map(|i| &self.coeffs[i] * &e[k - i] * Rational::from(i))
                .sum();
            e.push(s / Rational::from(k));
        }
        Ok(UniSeries {
            var: self.var.clone(),
            coeffs: e,
        })
    }

    /// Derivative; the order stays the same and the top coefficient is
    /// reported as known only through `order - 1` by callers that care.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs: Vec<Rational> = (1..=n).map(|k| &self.coeffs[k] * Rational::from(k)).collect();
        coeffs.push(Rational::zero());
        UniSeries {
            var: self.var.clone(),
            coeffs,
        }
    }

    /// Multiplies by `var^k` keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for i in 0..=n {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        UniSeries {
            var: self.var.clone(),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniSeries({}; order {})", self.var, self.order())?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " + ({c}) {}^{k}", self.var)?;
            }
        }
        Ok(())
    }
}
