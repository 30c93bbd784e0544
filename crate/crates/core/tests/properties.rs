mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use tautrel::coeffs::{build_c_table, build_q_table, CTable};
use tautrel::exact::Rational;
use tautrel::relations::{bareiss_rank, faber_choose, integer_row, FaberCase};
use tautrel::series::{binomial_unit_pow, change_vars_xw_to_yu, BiSeries, Var};
use tautrel::tautring::{KappaExponential, KappaPoly, Monomial};

const VARS: (&str, &str) = ("x", "w");
const ORD: (usize, usize) = (4, 4);

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn series() -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(((0..=4usize, 0..=4usize), rational()), 0..8)
        .prop_map(|terms| BiSeries::from_terms(VARS, ORD, terms))
}

fn series_no_constant() -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(((0..=4usize, 0..=4usize), rational()), 0..6).prop_map(|terms| {
        BiSeries::from_terms(VARS, ORD, terms.into_iter().filter(|((i, j), _)| i + j > 0))
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1..=4usize, 0..=3u32), 0..4).prop_map(Monomial::from_exponents)
}

fn kappa_poly() -> impl Strategy<Value = KappaPoly> {
    prop::collection::vec((monomial(), rational()), 0..5).prop_map(KappaPoly::from_terms)
}

fn c_table() -> CTable {
    build_c_table(&build_q_table(8)).unwrap()
}

/// Rank by Gaussian elimination over the rationals.
fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a.clone());
        prop_assert!(!s.ends_with("/1"));
    }

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn series_leibniz(a in series(), b in series()) {
        for var in [Var::First, Var::Second] {
            let lhs = a.mul(&b).unwrap().derivative(var).unwrap();
            // the derivative loses the top order in `var`
            let low = |s: &BiSeries| s.truncate(lhs.orders()).unwrap();
            let rhs = a.derivative(var).unwrap().mul(&low(&b)).unwrap()
                .add(&low(&a).mul(&b.derivative(var).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exp_is_a_homomorphism(a in series_no_constant(), b in series_no_constant()) {
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_powers_add(c in rational(), e1 in rational(), e2 in rational(), first in any::<bool>()) {
        let var = if first { Var::First } else { Var::Second };
        let p1 = binomial_unit_pow(&c, &e1, VARS, ORD, var);
        let p2 = binomial_unit_pow(&c, &e2, VARS, ORD, var);
        let p12 = binomial_unit_pow(&c, &(&e1 + &e2), VARS, ORD, var);
        prop_assert_eq!(p1.mul(&p2).unwrap(), p12);
    }

    #[test]
    fn binomial_integer_power(c in rational(), e in 0u32..4) {
        let p = binomial_unit_pow(&c, &Rational::from(e), VARS, ORD, Var::First);
        let mut want = BiSeries::one(VARS, ORD);
        let base = BiSeries::from_terms(VARS, ORD, [((0, 0), Rational::one()), ((1, 0), c.clone())]);
        for _ in 0..e {
            want = want.mul(&base).unwrap();
        }
        prop_assert_eq!(p, want);
    }

    #[test]
    fn change_of_variables_preserves_coefficients(p in series(), a in 0..=4usize, d in 0..=4usize) {
        prop_assert_eq!(change_vars_xw_to_yu(&p, a, d).unwrap(), p.coeff(a, d).unwrap());
    }

    #[test]
    fn monomial_order_is_graded_and_multiplicative(m1 in monomial(), m2 in monomial(), m3 in monomial()) {
        prop_assert_eq!(m1.cmp(&m2) == std::cmp::Ordering::Equal, m1 == m2);
        if m1.degree() < m2.degree() {
            prop_assert!(m1 < m2);
        }
        if m1 < m2 {
            prop_assert!(m1.mul(&m3) < m2.mul(&m3));
        }
        prop_assert_eq!(m1.mul(&m2).degree(), m1.degree() + m2.degree());
    }

    #[test]
    fn kappa_poly_ring_laws(p in kappa_poly(), q in kappa_poly(), r in kappa_poly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_map(p in kappa_poly(), q in kappa_poly(), v in kappa_poly(), a in 1..=4usize) {
        prop_assert_eq!(p.mul(&q).substitute(a, &v), p.substitute(a, &v).mul(&q.substitute(a, &v)));
        prop_assert_eq!(p.add(&q).substitute(a, &v), p.substitute(a, &v).add(&q.substitute(a, &v)));
        prop_assert_eq!(p.substitute(a, &KappaPoly::kappa(a)), p.clone());
        let s = p.substitute(a, &v);
        if !v.terms().any(|(m, _)| m.exponent(a) > 0) {
            prop_assert_eq!(s.terms().filter(|(m, _)| m.exponent(a) > 0).count(), 0);
        }
    }

    #[test]
    fn bareiss_matches_rational_rank(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6)
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        prop_assert_eq!(bareiss_rank(big), naive_rank(&rows));
    }

    #[test]
    fn integer_row_is_proportional(row in prop::collection::vec(rational(), 1..6)) {
        let ints = integer_row(&row);
        let i = row.iter().position(|r| !r.is_zero());
        if let Some(i) = i {
            let f = Rational::from(ints[i].clone()) / &row[i];
            for (r, n) in row.iter().zip(&ints) {
                prop_assert_eq!(r * &f, Rational::from(n.clone()));
            }
        } else {
            prop_assert!(ints.iter().all(|n| n == &BigInt::from(0)));
        }
    }

    #[test]
    fn faber_choice_is_consistent(g in 2i64..90, off in 0i64..60) {
        let low = g / 3 + 1;
        if low <= g - 2 {
            let a = low + off % (g - 2 - low + 1);
            let ch = faber_choose(g, a).unwrap();
            let (d, b) = (ch.d as i64, ch.b as i64);
            prop_assert_eq!(a, g + 1 + b - 2 * d);
            prop_assert!(d >= 2);
            let n = if b == 0 { g + 1 - 2 * d } else { g + 2 - 2 * d };
            prop_assert!(n >= 0);
            let want = match b { 0 => FaberCase::B0, 1 => FaberCase::B1, _ => FaberCase::BLarge };
            prop_assert_eq!(ch.case, want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kappa_exponential_matches_enumeration(n in 0..=7usize, j in 0..=7usize) {
        let c = c_table();
        let e = KappaExponential::new(&c, n, j).unwrap();
        let got = common::from_kappa_poly(e.coeff(n, j).unwrap());
        prop_assert_eq!(got, common::exp_coeff(&c, n, j));
    }
}
