//! Coefficient tables and the identities tying them together.
//!
//! * `q[k][j]`, positive integers from a quadratic recurrence.
//! * `c[k][j]`, rationals solved from `q[k][j] = (2k+4j) c[k][j] + (j+1) c[k][j+1]`.
//! * `alpha[k][j]`, the coefficients of the series `G(x, w)` solving
//!   `x w G_ww = w G_w^2 + (1-x) G_w - 1` with `G(x, 0) = -sum B_a/(a(a-1)) x^a`.
//! * `p_k = (6k)!/((3k)!(2k)!) 72^{-k}`.
//!
//! The closed-form expansions of `G` and `G_w` in terms of `q` and `c` are
//! built independently of the ODE solution so the two can be compared.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, BernoulliTable, Rational};
use crate::series::{binomial_unit_pow, BiSeries, UniSeries, Var};

/// Triangular table `q[k][j]`, `0 <= j <= k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTable {
    rows: Vec<Vec<BigInt>>,
}

impl QTable {
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `q[k][j]`; zero outside `0 <= j <= k`.
    pub fn get(&self, k: usize, j: usize) -> Result<BigInt> {
        let row = self.rows.get(k).ok_or(Error::TableTooSmall {
            kind: "q",
            have: self.k_max(),
            need: k,
        })?;
        Ok(row.get(j).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn rational(&self, k: usize, j: usize) -> Result<Rational> {
        self.get(k, j).map(Rational::from)
    }

    pub fn require(&self, k: usize) -> Result<()> {
        if k > self.k_max() {
            return Err(Error::TableTooSmall {
                kind: "q",
                have: self.k_max(),
                need: k,
            });
        }
        Ok(())
    }

    /// `(k, j, q[k][j])` sorted by `(k, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(j, v)| (k, j, v)))
    }

    /// Rebuilds a table from a complete triangular listing, e.g. a cache file.
    pub fn from_entries(
        k_max: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<Option<BigInt>>> = (0..=k_max).map(|k| vec![None; k + 1]).collect();
        for (k, j, v) in entries {
            if k > k_max || j > k {
                continue;
            }
            rows[k][j] = Some(v);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(k, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, v)| {
                        v.ok_or_else(|| Error::InvalidArgument(format!("q table missing entry ({k},{j})")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QTable { rows })
    }
}

/// `q_{k,j}` for `0 <= j <= k <= k_max`, from
/// `q_{k,j} = (2k+4j-2) q_{k-1,j-1} + (j+1) q_{k-1,j} + sum_{m<k, l<j} q_{m,l} q_{k-1-m,j-1-l}`
/// with `q_{0,0} = 1`.
pub fn build_q_table(k_max: usize) -> QTable {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    let at = |rows: &Vec<Vec<BigInt>>, k: usize, j: usize| -> Option<BigInt> {
        rows.get(k).and_then(|r| r.get(j)).cloned()
    };
    for k in 1..=k_max {
        let mut row = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut v = BigInt::zero();
            if j >= 1 {
                if let Some(prev) = at(&rows, k - 1, j - 1) {
                    v += prev * (2 * k + 4 * j - 2);
                }
            }
            if let Some(prev) = at(&rows, k - 1, j) {
                v += prev * (j + 1);
            }
            if j >= 1 {
                for m in 0..k {
                    let left = &rows[m];
                    let right = &rows[k - 1 - m];
                    for (l, x) in left.iter().enumerate().take(j.min(m + 1)) {
                        if let Some(r) = right.get(j - 1 - l) {
                            v += x * r;
                        }
                    }
                }
            }
            row.push(v);
        }
        rows.push(row);
    }
    QTable { rows }
}

/// Triangular table `c[k][j]`, `1 <= k <= k_max`, `0 <= j <= k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTable {
    // rows[0] is empty: c is defined from k = 1.
    rows: Vec<Vec<Rational>>,
}

impl CTable {
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c[k][j]`; zero when `k = 0` or `j > k`.
    pub fn get(&self, k: usize, j: usize) -> Result<Rational> {
        let row = self.rows.get(k).ok_or(Error::TableTooSmall {
            kind: "c",
            have: self.k_max(),
            need: k,
        })?;
        Ok(row.get(j).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn require(&self, k: usize) -> Result<()> {
        if k > self.k_max() {
            return Err(Error::TableTooSmall {
                kind: "c",
                have: self.k_max(),
                need: k,
            });
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(j, v)| (k, j, v)))
    }

    pub fn from_entries(
        k_max: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<Option<Rational>>> = (0..=k_max)
            .map(|k| if k == 0 { Vec::new() } else { vec![None; k + 1] })
            .collect();
        for (k, j, v) in entries {
            if k == 0 || k > k_max || j > k {
                continue;
            }
            rows[k][j] = Some(v);
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(k, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, v)| {
                        v.ok_or_else(|| Error::InvalidArgument(format!("c table missing entry ({k},{j})")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CTable { rows })
    }
}

/// Solves `q[k][j] = (2k+4j) c[k][j] + (j+1) c[k][j+1]` downward from
/// `j = k` with `c[k][k+1] = 0`.
pub fn build_c_table(q: &QTable) -> Result<CTable> {
    let k_max = q.k_max();
    if k_max < 1 {
        return Err(Error::TableTooSmall {
            kind: "q",
            have: k_max,
            need: 1,
        });
    }
    let mut rows = vec![Vec::new()];
    for k in 1..=k_max {
        let mut row = vec![Rational::zero(); k + 1];
        let mut next = Rational::zero();
        for j in (0..=k).rev() {
            let v = (q.rational(k, j)? - next * Rational::from(j + 1))
                .checked_div(&Rational::from(2 * k + 4 * j))?;
            row[j] = v.clone();
            next = v;
        }
        rows.push(row);
    }
    Ok(CTable { rows })
}

/// Coefficients `alpha[k][j]` of `G(x, w) = sum alpha[k][j] x^k w^j`,
/// `0 <= k <= N_x`, `0 <= j <= N_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    n_x: usize,
    n_w: usize,
    // cols[j] holds the x-expansion of the w^j slice.
    cols: Vec<UniSeries>,
}

impl AlphaTable {
    pub fn orders(&self) -> (usize, usize) {
        (self.n_x, self.n_w)
    }

    pub fn get(&self, k: usize, j: usize) -> Result<Rational> {
        if k > self.n_x || j > self.n_w {
            return Err(Error::TableTooSmall {
                kind: "alpha",
                have: self.n_x.min(self.n_w),
                need: k.max(j),
            });
        }
        Ok(self.cols[j].coeff(k)?.clone())
    }

    pub fn require(&self, n_x: usize, n_w: usize) -> Result<()> {
        if n_x > self.n_x {
            return Err(Error::TableTooSmall {
                kind: "alpha (x order)",
                have: self.n_x,
                need: n_x,
            });
        }
        if n_w > self.n_w {
            return Err(Error::TableTooSmall {
                kind: "alpha (w order)",
                have: self.n_w,
                need: n_w,
            });
        }
        Ok(())
    }

    /// `(k, j, alpha[k][j])` sorted by `(k, j)`, zeros included.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        (0..=self.n_x).flat_map(move |k| (0..=self.n_w).map(move |j| (k, j, &self.cols[j].coeffs()[k])))
    }

    pub fn to_series(&self) -> BiSeries {
        BiSeries::from_terms(
            ("x", "w"),
            (self.n_x, self.n_w),
            self.entries().map(|(k, j, v)| ((k, j), v.clone())),
        )
    }

    pub fn from_entries(
        n_x: usize,
        n_w: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut cols = vec![UniSeries::zero("x", n_x); n_w + 1];
        let mut dense: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n_x + 1]; n_w + 1];
        for (k, j, v) in entries {
            if k <= n_x && j <= n_w {
                dense[j][k] = v;
            }
        }
        for (j, col) in dense.into_iter().enumerate() {
            cols[j] = UniSeries::from_coeffs("x", n_x, col);
        }
        AlphaTable { n_x, n_w, cols }
    }
}

/// Solves the ODE for `G` slice by slice in `w`.
///
/// Writing `G = sum_d G_d(x) w^d / d!`, the ODE is equivalent to
/// `delta_{d,1} = G_d - d x G_d + sum_{l=1}^{d-1} C(d-1, l) l G_l G_{d-l}` for
/// `d >= 1`. In terms of `H_d = G_d / d!` (the `w^d` column of alpha) this is
/// `d (1 - d x) H_d = delta_{d,1} - sum_{l=1}^{d-1} l (d-l) H_l H_{d-l}`.
/// The `w^0` column is the Bernoulli initial condition.
pub fn solve_g_ode(n_x: usize, n_w: usize) -> Result<AlphaTable> {
    if n_x < 1 || n_w < 1 {
        return Err(Error::InvalidArgument(format!(
            "ODE orders must be >= 1, got ({n_x},{n_w})"
        )));
    }
    let bern = crate::exact::bernoulli_table(n_x);
    let mut init = vec![Rational::zero(); n_x + 1];
    for (a, slot) in init.iter_mut().enumerate().skip(2) {
        *slot = -bern.get(a)? / Rational::from(a * (a - 1));
    }
    let mut cols = vec![UniSeries::from_coeffs("x", n_x, init)];
    for d in 1..=n_w {
        let mut rhs = UniSeries::zero("x", n_x);
        if d == 1 {
            rhs = UniSeries::from_coeffs("x", n_x, [Rational::one()]);
        }
        for l in 1..d {
            let prod = cols[l].mul(&cols[d - l])?;
            rhs = rhs.sub(&prod.scale(&Rational::from(l * (d - l))))?;
        }
        // Divide by d (1 - d x): multiply by sum (d x)^n / d.
        let geometric = UniSeries::from_coeffs(
            "x",
            n_x,
            (0..=n_x).map(|n| Rational::from(BigInt::from(d).pow(n as u32))),
        );
        let col = rhs.mul(&geometric)?.scale(&Rational::new(1, d as i64)?);
        cols.push(col);
    }
    Ok(AlphaTable { n_x, n_w, cols })
}

/// `(-1 + sqrt(1+4w)) / (2w)` to order `n_w` in `w`, as a series in `(x, w)`.
fn catalan_slice(n_x: usize, n_w: usize) -> Result<BiSeries> {
    let vars = ("x", "w");
    let sqrt = binomial_unit_pow(
        &Rational::from(4),
        &Rational::new(1, 2)?,
        vars,
        (n_x, n_w + 1),
        Var::Second,
    );
    let num = sqrt.sub(&BiSeries::one(vars, (n_x, n_w + 1)))?;
    Ok(num.shift_down(Var::Second, 1)?.scale(&Rational::new(1, 2)?))
}

/// `G_w(x, w)` from its closed form
/// `A_0(w) + x/(1+4w) + sum_{k>=1} sum_{j<=k} x^{k+1} q_{k,j} (-w)^j (1+4w)^{-j-k/2-1}`
/// with `A_0(w) = (-1 + sqrt(1+4w))/(2w)`.
pub fn expand_gw_closed(q: &QTable, n_x: usize, n_w: usize) -> Result<BiSeries> {
    q.require(n_x.saturating_sub(1))?;
    let vars = ("x", "w");
    let orders = (n_x, n_w);
    let four = Rational::from(4);
    let mut out = catalan_slice(n_x, n_w)?;
    if n_x >= 1 {
        let inv = binomial_unit_pow(&four, &Rational::from(-1), vars, orders, Var::Second);
        out = out.add(&inv.shift_up(Var::First, 1).truncate(orders)?)?;
    }
    for k in 1..n_x {
        for j in 0..=k.min(n_w) {
            let qkj = q.rational(k, j)?;
            if qkj.is_zero() {
                continue;
            }
            let e = Rational::new(-2 * j as i64 - k as i64 - 2, 2)?;
            let pow = binomial_unit_pow(&four, &e, vars, orders, Var::Second);
            let sign = if j % 2 == 0 { qkj } else { -qkj };
            let mono = BiSeries::monomial(vars, orders, k + 1, j, sign);
            out = out.add(&mono.mul(&pow)?)?;
        }
    }
    Ok(out)
}

/// `G(x, w)` from its closed form
/// `G(0, w) + (x/4) ln(1+4w) - sum_{k>=1} sum_{j<=k} x^{k+1} c_{k,j} (-w)^j (1+4w)^{-j-k/2}`,
/// where `G(0, w)` is the antiderivative of `A_0` with zero constant term.
///
/// The Bernoulli table is used to confirm that the `w^0` slice reproduces
/// the initial condition; a mismatch is reported as a consistency error.
pub fn expand_g_closed(
    c: &CTable,
    bern: &BernoulliTable,
    n_x: usize,
    n_w: usize,
) -> Result<BiSeries> {
    c.require(n_x.saturating_sub(1))?;
    if bern.max_index() < n_x {
        return Err(Error::TableTooSmall {
            kind: "bernoulli",
            have: bern.max_index(),
            need: n_x,
        });
    }
    let vars = ("x", "w");
    let orders = (n_x, n_w);
    let four = Rational::from(4);
    let mut out = BiSeries::zero(vars, orders);
    if n_w >= 1 {
        let a0 = catalan_slice(n_x, n_w - 1)?;
        for ((i, j), v) in a0.terms() {
            if i == 0 {
                out.add_term(0, j + 1, v / &Rational::from(j + 1));
            }
        }
        if n_x >= 1 {
            // ln(1+4w) = integral of 4 (1+4t)^{-1}
            let inv = binomial_unit_pow(&four, &Rational::from(-1), vars, (n_x, n_w - 1), Var::Second);
            for ((_, j), v) in inv.terms() {
                out.add_term(1, j + 1, v / &Rational::from(j + 1));
            }
        }
    }
    for k in 1..n_x {
        for j in 0..=k.min(n_w) {
            let ckj = c.get(k, j)?;
            if ckj.is_zero() {
                continue;
            }
            let e = Rational::new(-2 * j as i64 - k as i64, 2)?;
            let pow = binomial_unit_pow(&four, &e, vars, orders, Var::Second);
            let sign = if j % 2 == 0 { -ckj } else { ckj };
            let mono = BiSeries::monomial(vars, orders, k + 1, j, sign);
            out = out.add(&mono.mul(&pow)?)?;
        }
    }
    for a in 2..=n_x {
        let expected = -bern.get(a)? / Rational::from(a * (a - 1));
        let actual = out.coeff(a, 0)?;
        if actual != expected {
            return Err(Error::Consistency(format!(
                "closed form of G has x^{a} w^0 coefficient {actual}, initial condition gives {expected}"
            )));
        }
    }
    Ok(out)
}

/// `P(z) = sum p_k z^k` with `p_k = (6k)!/((3k)!(2k)!) 72^{-k}`.
pub fn p_series(k_max: usize) -> UniSeries {
    let coeffs = (0..=k_max).map(|k| {
        let k = k as u64;
        let num = factorial(6 * k);
        let den = factorial(3 * k) * factorial(2 * k) * BigInt::from(72).pow(k as u32);
        Rational::new(num, den).expect("nonzero denominator")
    });
    UniSeries::from_coeffs("z", k_max, coeffs)
}

/// `Q(x, u) = sum_k sum_{j<=k} x^k (1+4u)^{k/2} q_{k,j} u^j` to orders `(n, n)`.
pub fn assemble_q_series(q: &QTable, n: usize) -> Result<BiSeries> {
    q.require(n)?;
    let vars = ("x", "u");
    let orders = (n, n);
    let four = Rational::from(4);
    let mut out = BiSeries::zero(vars, orders);
    for k in 0..=n {
        let mut slice = BiSeries::zero(vars, orders);
        for j in 0..=k {
            slice.add_term(k, j, q.rational(k, j)?);
        }
        let pow = binomial_unit_pow(&four, &Rational::new(k as i64, 2)?, vars, orders, Var::Second);
        out = out.add(&slice.mul(&pow)?)?;
    }
    Ok(out)
}

/// One failed instance of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub expected: Rational,
    pub actual: Rational,
}

/// Outcome of one named identity over its index range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub detail: String,
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityCheck {
    fn new(name: &str, detail: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.to_string(),
            detail: detail.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn expect_eq(&mut self, k: usize, j: Option<usize>, expected: Rational, actual: Rational) {
        self.checked += 1;
        if expected != actual {
            self.failures.push(IdentityFailure {
                identity: self.name.clone(),
                k,
                j,
                expected,
                actual,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityFailure> {
        self.checks.iter().flat_map(|c| c.failures.iter()).next()
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }
}

/// Identities between the `q` and `c` tables and the Bernoulli numbers, for
/// `1 <= k <= k_max`:
/// `q_{k,k} = 6k c_{k,k}`, `q_{k,k} = 60 c_{k,k-1}`,
/// `10 q_{k,k-1} = (k+1) q_{k,k}`, `c_{k,0} = B_{k+1}/(k(k+1))`,
/// and positivity of every `q` entry.
pub fn check_table_identities(q: &QTable, c: &CTable, bern: &BernoulliTable, k_max: usize) -> Result<IdentityReport> {
    q.require(k_max)?;
    c.require(k_max)?;
    let mut positive = IdentityCheck::new("q_positive", "q[k][j] > 0 for 0 <= j <= k");
    for (k, j, v) in q.entries().filter(|(k, _, _)| *k <= k_max) {
        positive.checked += 1;
        if !v.is_positive() {
            positive.failures.push(IdentityFailure {
                identity: positive.name.clone(),
                k,
                j: Some(j),
                expected: Rational::one(),
                actual: Rational::from(v.clone()),
            });
        }
    }
    let mut diag = IdentityCheck::new("q_kk_eq_6k_c_kk", "q[k][k] = 6k c[k][k]");
    let mut sub = IdentityCheck::new("q_kk_eq_60_c_k_km1", "q[k][k] = 60 c[k][k-1]");
    let mut ratio = IdentityCheck::new("ten_q_k_km1_eq_kp1_q_kk", "10 q[k][k-1] = (k+1) q[k][k]");
    let mut bernoulli = IdentityCheck::new("c_k0_bernoulli", "c[k][0] = B_{k+1}/(k(k+1))");
    for k in 1..=k_max {
        let qkk = q.rational(k, k)?;
        diag.expect_eq(k, Some(k), qkk.clone(), c.get(k, k)? * Rational::from(6 * k));
        sub.expect_eq(k, Some(k - 1), qkk.clone(), c.get(k, k - 1)? * Rational::from(60));
        ratio.expect_eq(
            k,
            Some(k - 1),
            qkk * Rational::from(k + 1),
            q.rational(k, k - 1)? * Rational::from(10),
        );
        bernoulli.expect_eq(
            k,
            Some(0),
            bern.get(k + 1)? / Rational::from(k * (k + 1)),
            c.get(k, 0)?,
        );
    }
    Ok(IdentityReport {
        checks: vec![positive, diag, sub, ratio, bernoulli],
    })
}

/// `exp(sum_{k>=1} c_{k,k} z^k) = sum_k p_k z^k` through `z^{k_max}`.
pub fn check_diagonal_generating_function(c: &CTable, k_max: usize) -> Result<IdentityReport> {
    c.require(k_max)?;
    let diag = UniSeries::from_coeffs(
        "z",
        k_max,
        (0..=k_max).map(|k| if k == 0 { Ok(Rational::zero()) } else { c.get(k, k) }).collect::<Result<Vec<_>>>()?,
    );
    let lhs = diag.exp()?;
    let rhs = p_series(k_max);
    let mut check = IdentityCheck::new("exp_diag_c_eq_p", "exp(sum c[k][k] z^k) = sum (6k)!/((2k)!(3k)!) (z/72)^k");
    for k in 0..=k_max {
        check.expect_eq(k, None, rhs.coeff(k)?.clone(), lhs.coeff(k)?.clone());
    }
    Ok(IdentityReport { checks: vec![check] })
}

/// `Q_0(z) = sum_{k>=1} q_{k,k} z^{k+1}` against its Riccati equation, through
/// `z^{k_max+1}`.
///
/// Expanding `u Q = u + z (1+4u)(uQ)_u + y (uQ)^2` at `y^0` gives
/// `Q_0 = 5 z^2 + 6 z^2 Q_0' + Q_0^2`; the `5 z^2` source term is what makes the
/// integrating factor satisfy `6P' = 5P + 36 z^2 P'' + 72 z P'`. The form
/// without it, `Q_0 = 6 z^2 Q_0' + Q_0^2`, leaves a residual of exactly
/// `5 z^2`, which is checked as a second identity.
pub fn check_q0_equation(q: &QTable, k_max: usize) -> Result<IdentityReport> {
    q.require(k_max)?;
    let n = k_max + 1;
    let q0 = UniSeries::from_coeffs(
        "z",
        n,
        (0..=n)
            .map(|m| if m >= 2 { q.rational(m - 1, m - 1) } else { Ok(Rational::zero()) })
            .collect::<Result<Vec<_>>>()?,
    );
    let z2 = UniSeries::from_coeffs("z", n, [Rational::zero(), Rational::zero(), Rational::one()]);
    let homogeneous = q0.derivative().shift_up(2).scale(&Rational::from(6)).add(&q0.mul(&q0)?)?;
    let literal_residual = q0.sub(&homogeneous)?;
    let full_residual = literal_residual.sub(&z2.scale(&Rational::from(5)))?;

    let mut full = IdentityCheck::new("q0_riccati", "Q_0 = 5z^2 + 6z^2 Q_0' + Q_0^2");
    let mut literal = IdentityCheck::new(
        "q0_homogeneous_residual",
        "Q_0 - 6z^2 Q_0' - Q_0^2 = 5z^2 exactly",
    );
    for m in 0..=n {
        full.expect_eq(m, None, Rational::zero(), full_residual.coeff(m)?.clone());
        let want = if m == 2 { Rational::from(5) } else { Rational::zero() };
        literal.expect_eq(m, None, want, literal_residual.coeff(m)?.clone());
    }
    Ok(IdentityReport {
        checks: vec![full, literal],
    })
}

/// `Q = 1 + x (1+4u)^{1/2} ((1+4u)(uQ)_u + u Q^2)` with `Q` assembled from
/// the `q` table, through `(x, u)` orders `(n, n)`.
pub fn check_q_series_equation(q: &QTable, n: usize) -> Result<IdentityReport> {
    let big_q = assemble_q_series(q, n)?;
    let vars = big_q.vars();
    let orders = (n, n);
    let four = Rational::from(4);
    let uq_u = big_q.shift_up(Var::Second, 1).derivative(Var::Second)?;
    let lin = BiSeries::from_terms(vars, orders, [((0, 0), Rational::one()), ((0, 1), four.clone())]);
    let term1 = lin.mul(&uq_u)?;
    let term2 = big_q.mul(&big_q)?.shift_up(Var::Second, 1).truncate(orders)?;
    let sqrt = binomial_unit_pow(&four, &Rational::new(1, 2)?, vars, orders, Var::Second);
    let rhs = sqrt
        .mul(&term1.add(&term2)?)?
        .shift_up(Var::First, 1)
        .truncate(orders)?
        .add(&BiSeries::one(vars, orders))?;
    let residual = big_q.sub(&rhs)?;
    let mut check = IdentityCheck::new(
        "q_series_equation",
        format!("Q = 1 + x(1+4u)^(1/2)((1+4u)(uQ)_u + uQ^2) through ({n},{n})"),
    );
    for i in 0..=n {
        for j in 0..=n {
            check.expect_eq(i, Some(j), Rational::zero(), residual.coeff(i, j)?);
        }
    }
    Ok(IdentityReport { checks: vec![check] })
}

/// `sum_k B_{k+1}/(k(k+1)) t^k = (1/4) sum_k t^k sum_{l<=k} (-4)^{-l} q_{k,l}
/// l! / ((k/2)(k/2+1)...(k/2+l))` through `t^{k_max}`.
pub fn check_bernoulli_q_identity(q: &QTable, bern: &BernoulliTable, k_max: usize) -> Result<IdentityReport> {
    q.require(k_max)?;
    let mut check = IdentityCheck::new(
        "bernoulli_q_sum",
        "B_{k+1}/(k(k+1)) = (1/4) sum_l (-4)^{-l} q[k][l] l!/((k/2)(k/2+1)...(k/2+l))",
    );
    let minus_quarter = Rational::new(-1, 4)?;
    for k in 1..=k_max {
        let half_k = Rational::new(k as i64, 2)?;
        let mut sum = Rational::zero();
        let mut weight = Rational::one(); // (-4)^{-l} l!
        let mut rising = half_k.clone(); // (k/2)(k/2+1)...(k/2+l)
        for l in 0..=k {
            if l > 0 {
                weight = weight * &minus_quarter * Rational::from(l);
                rising = rising * (&half_k + Rational::from(l));
            }
            sum += q.rational(k, l)? * &weight / &rising;
        }
        let rhs = sum * Rational::new(1, 4)?;
        let lhs = bern.get(k + 1)? / Rational::from(k * (k + 1));
        check.expect_eq(k, None, lhs, rhs);
    }
    Ok(IdentityReport { checks: vec![check] })
}

/// Runs every table-level identity for `1 <= k <= k_max`; the two-variable
/// equation for `Q` is checked through `min(k_max, 20)`.
pub fn verify_coeff_identities(k_max: usize) -> Result<IdentityReport> {
    let k_max = k_max.max(1);
    let q = build_q_table(k_max);
    let c = build_c_table(&q)?;
    let bern = crate::exact::bernoulli_table(k_max + 1);
    let mut report = check_table_identities(&q, &c, &bern, k_max)?;
    report.extend(check_diagonal_generating_function(&c, k_max)?);
    report.extend(check_q0_equation(&q, k_max)?);
    report.extend(check_q_series_equation(&q, k_max.min(20))?);
    report.extend(check_bernoulli_q_identity(&q, &bern, k_max)?);
    Ok(report)
}

/// Residual of `x w G_ww - w G_w^2 - (1-x) G_w + 1` for the alpha table,
/// through `(N_x, N_w - 2)` (the orders at which `G_ww` is known).
pub fn g_ode_residual(alpha: &AlphaTable) -> Result<BiSeries> {
    let g = alpha.to_series();
    let (n_x, n_w) = g.orders();
    if n_w < 2 {
        return Err(Error::InvalidArgument("ODE residual needs N_w >= 2".into()));
    }
    let orders = (n_x, n_w - 2);
    let gw = g.derivative(Var::Second)?;
    let gww = gw.derivative(Var::Second)?;
    let gw_t = gw.truncate(orders)?;
    let lhs = gww.shift_up(Var::First, 1).shift_up(Var::Second, 1).truncate(orders)?;
    let sq = gw_t.mul(&gw_t)?.shift_up(Var::Second, 1).truncate(orders)?;
    let one_minus_x = BiSeries::from_terms(
        g.vars(),
        orders,
        [((0, 0), Rational::one()), ((1, 0), Rational::from(-1))],
    );
    let lin = one_minus_x.mul(&gw_t)?;
    lhs.sub(&sq)?.sub(&lin)?.add(&BiSeries::one(g.vars(), orders))
}

/// Coefficientwise differences between two series of equal shape, as
/// failures of the named identity.
pub fn compare_series(name: &str, detail: impl Into<String>, expected: &BiSeries, actual: &BiSeries) -> Result<IdentityCheck> {
    if expected.orders() != actual.orders() || expected.vars() != actual.vars() {
        return Err(Error::SeriesMismatch(format!(
            "{name}: comparing series of shape {:?}/{:?} with {:?}/{:?}",
            expected.vars(),
            expected.orders(),
            actual.vars(),
            actual.orders()
        )));
    }
    let mut check = IdentityCheck::new(name, detail);
    let (n0, n1) = expected.orders();
    for i in 0..=n0 {
        for j in 0..=n1 {
            check.expect_eq(i, Some(j), expected.coeff(i, j)?, actual.coeff(i, j)?);
        }
    }
    Ok(check)
}

/// Compares the ODE solution for `G` with both closed forms at orders
/// `(n, n)`, and checks the ODE residual.
pub fn check_g_closed_forms(n: usize) -> Result<IdentityReport> {
    let n = n.max(2);
    let q = build_q_table(n);
    let c = build_c_table(&q)?;
    let bern = crate::exact::bernoulli_table(n);
    let alpha = solve_g_ode(n, n + 1)?;
    let g_ode = alpha.to_series().truncate((n, n))?;
    let g_closed = expand_g_closed(&c, &bern, n, n)?;
    let gw_ode = alpha.to_series().derivative(Var::Second)?;
    let gw_closed = expand_gw_closed(&q, n, n)?;
    let residual = g_ode_residual(&alpha)?;
    let zero = BiSeries::zero(residual.vars(), residual.orders());
    Ok(IdentityReport {
        checks: vec![
            compare_series("g_closed_form", format!("alpha vs closed-form G through ({n},{n})"), &g_ode, &g_closed)?,
            compare_series("gw_closed_form", format!("d/dw alpha vs closed-form G_w through ({n},{n})"), &gw_ode, &gw_closed)?,
            compare_series(
                "g_ode_residual",
                format!(
                    "x w G_ww = w G_w^2 + (1-x) G_w - 1 through ({},{})",
                    residual.orders().0,
                    residual.orders().1
                ),
                &zero,
                &residual,
            )?,
        ],
    })
}
