//! Generalized higher-order Euler numbers and polynomials attached to a
//! Dirichlet character, and the alternating character power sums
//! `T_{k,χ}(n) = Σ_{l=0}^{n} (-1)^l χ(l) l^k`.
//!
//! The order-`m` numbers `E^{(m)}_{n,χ}` are the EGF coefficients of
//!
//! ```text
//! ( 2 Σ_{a=0}^{d-1} (-1)^a χ(a) e^{at} / (e^{dt} + 1) )^m
//! ```
//!
//! and `E^{(m)}_{n,χ}(x) = Σ_l C(n,l) E^{(m)}_{l,χ} x^{n-l}`.
//! Throughout, `0^0 = 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exactnum::{binomial_row, integer, CycloElement, Rational};
use crate::series::{exp_series, TruncatedSeries, UnivariatePolynomial};

/// `E^{(m)}_{0,χ} .. E^{(m)}_{N,χ}` for one character and order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerTable {
    pub modulus: u64,
    pub index: usize,
    pub order: u64,
    pub max_n: usize,
    pub numbers: Vec<CycloElement>,
}

impl EulerTable {
    fn truncated(&self, max_n: usize) -> EulerTable {
        EulerTable {
            max_n,
            numbers: self.numbers[..=max_n].to_vec(),
            ..self.clone()
        }
    }
}

type CacheKey = (u64, usize, u64);

fn table_cache() -> &'static RwLock<HashMap<CacheKey, Arc<EulerTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<EulerTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Store a table (e.g. loaded from disk). A longer table already cached wins.
pub fn seed_cache(table: EulerTable) {
    let key = (table.modulus, table.index, table.order);
    let mut cache = table_cache().write().unwrap();
    match cache.get(&key) {
        Some(existing) if existing.max_n >= table.max_n => {}
        _ => {
            cache.insert(key, Arc::new(table));
        }
    }
}

/// The cached table for `(d, index, m)`, if any.
pub fn cached_table(modulus: u64, index: usize, order: u64) -> Option<EulerTable> {
    let cache = table_cache().read().unwrap();
    cache.get(&(modulus, index, order)).map(|t| (**t).clone())
}

/// `2 Σ_{a<d} (-1)^a χ(a) e^{at}` through degree `N`.
pub fn base_numerator_series(chi: &DirichletCharacter, truncation: usize) -> TruncatedSeries<CycloElement> {
    let field = chi.value_field();
    let mut coeffs = vec![CycloElement::zero(field); truncation + 1];
    for a in 0..chi.modulus() {
        let value = chi.eval(a);
        if value.is_zero() {
            continue;
        }
        let sign = if a % 2 == 0 { 2 } else { -2 };
        let weight = value.scale(&integer(sign));
        // coefficient of t^k in e^{at} is a^k / k!
        let mut term = Rational::one();
        for (k, slot) in coeffs.iter_mut().enumerate() {
            if k > 0 {
                term = term * integer(a as i64) / integer(k as i64);
            }
            if term.is_zero() {
                break;
            }
            *slot = &*slot + &weight.scale(&term);
        }
    }
    TruncatedSeries::new(coeffs)
}

/// `1 / (e^{dt} + 1)` through degree `N`, over `Q`.
fn denominator_inverse(d: u64, truncation: usize) -> TruncatedSeries<Rational> {
    let mut den = exp_series(&integer(d as i64), truncation);
    den = den
        .add(&TruncatedSeries::constant(Rational::one(), truncation))
        .expect("rational series");
    den.inverse().expect("constant term 2")
}

/// The order-1 generating function of the generalized Euler numbers.
pub fn base_generating_series(chi: &DirichletCharacter, truncation: usize) -> TruncatedSeries<CycloElement> {
    let field = chi.value_field();
    let inv = denominator_inverse(chi.modulus(), truncation)
        .map(|r| CycloElement::from_rational(field, r.clone()));
    base_numerator_series(chi, truncation)
        .mul(&inv)
        .expect("same field")
}

/// The order-`m` generating function, `(base)^m`.
pub fn generating_series(chi: &DirichletCharacter, order: u64, truncation: usize) -> TruncatedSeries<CycloElement> {
    base_generating_series(chi, truncation).pow(order)
}

/// `E^{(m)}_{0,χ} .. E^{(m)}_{N,χ}`, memoized per `(χ, m)` and extended on demand.
pub fn euler_numbers(chi: &DirichletCharacter, order: u64, max_n: usize) -> EulerTable {
    let key = (chi.modulus(), chi.index(), order);
    if let Some(t) = table_cache().read().unwrap().get(&key) {
        if t.max_n >= max_n {
            return t.truncated(max_n);
        }
    }
    let numbers = generating_series(chi, order, max_n).egf_coefficients();
    let table = EulerTable {
        modulus: chi.modulus(),
        index: chi.index(),
        order,
        max_n,
        numbers,
    };
    seed_cache(table.clone());
    table
}

/// `E^{(m)}_{n,χ}(x)` by binomial convolution of the numbers with powers of `x`.
pub fn euler_polynomial(chi: &DirichletCharacter, order: u64, n: usize) -> UnivariatePolynomial {
    let table = euler_numbers(chi, order, n);
    let binom = binomial_row(n as u64);
    // coefficient of x^{n-l} is C(n,l) E_l
    let coeffs = (0..=n)
        .map(|j| table.numbers[n - j].scale(&binom[n - j]))
        .collect();
    UnivariatePolynomial::from_coeffs(chi.value_field(), coeffs)
}

/// `E^{(m)}_{n,χ}(x)` read off as the `n`-th EGF coefficient of
/// `(generating series) · e^{xt}` with `x` symbolic.
pub fn euler_polynomial_via_series(chi: &DirichletCharacter, order: u64, n: usize) -> UnivariatePolynomial {
    let gen = generating_series(chi, order, n).map(|c| UnivariatePolynomial::constant(c.clone()));
    let x = UnivariatePolynomial::x(chi.value_field());
    gen.mul(&exp_series(&x, n))
        .expect("same field")
        .egf_coefficient(n)
        .expect("n within truncation")
}

fn int_pow(base: u64, exp: usize) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(base), exp))
}

/// `T_{k,χ}(n) = Σ_{l=0}^{n} (-1)^l χ(l) l^k`, with `0^0 = 1`.
pub fn power_sum(chi: &DirichletCharacter, k: usize, upper: u64) -> CycloElement {
    let mut acc = CycloElement::zero(chi.value_field());
    for l in 0..=upper {
        let value = chi.eval(l);
        if value.is_zero() {
            continue;
        }
        let mut w = int_pow(l, k);
        if l % 2 == 1 {
            w = -w;
        }
        acc = &acc + &value.scale(&w);
    }
    acc
}

/// `T_{0,χ}(n) .. T_{K,χ}(n)` in one pass over `l`.
pub fn power_sums(chi: &DirichletCharacter, max_k: usize, upper: u64) -> Vec<CycloElement> {
    let field = chi.value_field();
    let mut acc = vec![CycloElement::zero(field); max_k + 1];
    for l in 0..=upper {
        let value = chi.eval(l);
        if value.is_zero() {
            continue;
        }
        let base = if l % 2 == 1 { -value } else { value.clone() };
        let mut w = Rational::one();
        let lr = integer(l as i64);
        for (k, slot) in acc.iter_mut().enumerate() {
            if k > 0 {
                w *= &lr;
            }
            *slot = &*slot + &base.scale(&w);
        }
    }
    acc
}

/// Both sides of `E_{k,χ}(nd) + E_{k,χ} = 2 T_{k,χ}(nd - 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq4Report {
    pub modulus: u64,
    pub character: usize,
    pub k: usize,
    pub n: u64,
    pub lhs: CycloElement,
    pub rhs: CycloElement,
    pub equal: bool,
    /// The identity is only claimed for odd `n`.
    pub within_hypothesis: bool,
}

/// Evaluate both sides for any `n ≥ 1`, flagging even `n` as outside the
/// hypothesis under which the identity holds.
pub fn evaluate_eq4(chi: &DirichletCharacter, k: usize, n: u64) -> Result<Eq4Report> {
    if n == 0 {
        return Err(Error::InvalidMultiplier(n));
    }
    let d = chi.modulus();
    let poly = euler_polynomial(chi, 1, k);
    let number = euler_numbers(chi, 1, k).numbers[k].clone();
    let lhs = &poly.evaluate_rational(&integer((n * d) as i64)) + &number;
    let rhs = power_sum(chi, k, n * d - 1).scale(&integer(2));
    Ok(Eq4Report {
        modulus: d,
        character: chi.index(),
        k,
        n,
        equal: lhs == rhs,
        lhs,
        rhs,
        within_hypothesis: n % 2 == 1,
    })
}

/// [`evaluate_eq4`] restricted to odd `n`.
pub fn check_eq4(chi: &DirichletCharacter, k: usize, n: u64) -> Result<Eq4Report> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidMultiplier(n));
    }
    evaluate_eq4(chi, k, n)
}

fn check_weight(w: u64) -> Result<()> {
    if w % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidWeight(w))
    }
}

/// `Σ_{i<wd} χ(i) (-1)^i e^{it}` summed term by term.
pub fn alternating_character_sum_series(
    chi: &DirichletCharacter,
    w: u64,
    truncation: usize,
) -> Result<TruncatedSeries<CycloElement>> {
    check_weight(w)?;
    let field = chi.value_field();
    let mut acc = TruncatedSeries::constant(CycloElement::zero(field), truncation);
    for i in 0..w * chi.modulus() {
        let value = chi.eval(i);
        if value.is_zero() {
            continue;
        }
        let signed = if i % 2 == 1 { -value } else { value.clone() };
        let term = exp_series(&integer(i as i64), truncation)
            .map(|r| CycloElement::from_rational(field, r.clone()))
            .map(|c| c * &signed);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The same series as the product
/// `(Σ_{l<w} (-1)^l e^{ldt}) · (Σ_{i<d} χ(i) (-1)^i e^{it})`.
pub fn alternating_character_sum_series_product(
    chi: &DirichletCharacter,
    w: u64,
    truncation: usize,
) -> Result<TruncatedSeries<CycloElement>> {
    check_weight(w)?;
    let field = chi.value_field();
    let d = chi.modulus();
    let mut geometric = TruncatedSeries::constant(Rational::zero(), truncation);
    for l in 0..w {
        let sign = if l % 2 == 1 { -Rational::one() } else { Rational::one() };
        geometric = geometric.add(&exp_series(&integer((l * d) as i64), truncation).scale(&sign))?;
    }
    let geometric = geometric.map(|r| CycloElement::from_rational(field, r.clone()));
    let base = alternating_character_sum_series(chi, 1, truncation)?;
    geometric.mul(&base)
}
