//! Exact rationals and arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! Elements of `Q(ζ_e)` are kept as coefficient vectors of length `φ(e)`,
//! reduced modulo the `e`-th cyclotomic polynomial. Because `Φ_e` is the
//! minimal polynomial of `ζ_e`, two elements are equal exactly when their
//! coefficient vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Integer-coefficient polynomial, ascending powers.
pub type IntPoly = Vec<BigInt>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Wire format: `"num/den"`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| err()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// `serde(with = ...)` adapter for the rational wire format.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn field_cache() -> &'static RwLock<HashMap<u64, Arc<CycloField>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact quotient of `num` by a monic divisor. The remainder must be zero.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate().take(dd) {
            rem[k - dd + i] -= &c * di;
        }
        quot[k - dd] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The `m`-th cyclotomic polynomial, `(x^m - 1) / Π_{k | m, k < m} Φ_k`.
///
/// Results are memoized process-wide.
pub fn cyclotomic_polynomial(m: u64) -> Result<Arc<IntPoly>> {
    if m == 0 {
        return Err(Error::ZeroCyclotomicOrder);
    }
    if let Some(p) = phi_cache().read().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut poly: IntPoly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for k in 1..m {
        if m.is_multiple_of(k) {
            let phi_k = cyclotomic_polynomial(k)?;
            poly = div_exact_monic(&poly, &phi_k);
        }
    }
    let poly = Arc::new(poly);
    let mut cache = phi_cache().write().unwrap();
    Ok(cache.entry(m).or_insert(poly).clone())
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The ambient field `Q(ζ_e)`, presented as `Q[x] / Φ_e(x)`.
#[derive(Debug)]
pub struct CycloField {
    order: u64,
    modulus: Arc<IntPoly>,
    zeta_powers: OnceLock<Vec<Vec<Rational>>>,
}

impl CycloField {
    /// Shared handle to `Q(ζ_e)`; fields are interned by order.
    pub fn get(order: u64) -> Result<Arc<CycloField>> {
        if let Some(f) = field_cache().read().unwrap().get(&order) {
            return Ok(f.clone());
        }
        let modulus = cyclotomic_polynomial(order)?;
        let field = Arc::new(CycloField {
            order,
            modulus,
            zeta_powers: OnceLock::new(),
        });
        let mut cache = field_cache().write().unwrap();
        Ok(cache.entry(order).or_insert(field).clone())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(e)`, the length of every coefficient vector in this field.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Canonical coefficients of `ζ^0 .. ζ^(e-1)`, each obtained from the
    /// previous one by multiplying by `x` and reducing the overflow term.
    fn zeta_powers(&self) -> &[Vec<Rational>] {
        self.zeta_powers.get_or_init(|| {
            let deg = self.degree();
            let mut current = vec![Rational::zero(); deg];
            current[0] = Rational::one();
            let mut out = Vec::with_capacity(self.order as usize);
            for _ in 0..self.order {
                out.push(current.clone());
                let top = current.pop().unwrap_or_else(Rational::zero);
                current.insert(0, Rational::zero());
                if !top.is_zero() {
                    for (c, mi) in current.iter_mut().zip(self.modulus.iter()) {
                        if !mi.is_zero() {
                            *c -= &top * Rational::from_integer(mi.clone());
                        }
                    }
                }
            }
            out
        })
    }

    /// Reduce an arbitrary-length coefficient vector mod `Φ_e`.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        for k in (deg..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (i, mi) in self.modulus.iter().enumerate().take(deg) {
                if !mi.is_zero() {
                    coeffs[k - deg + i] -= &c * Rational::from_integer(mi.clone());
                }
            }
        }
        coeffs.resize(deg, Rational::zero());
        coeffs
    }
}

/// An element of `Q(ζ_e)` in canonical form.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloElement {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, r: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = r;
        e
    }

    pub fn from_integer(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, integer(n))
    }

    /// Build from a coefficient vector of any length, reducing mod `Φ_e`.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rational>) -> Self {
        CycloElement {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// Canonical representative of `ζ_e^k`; `k` is reduced mod `e`.
    pub fn zeta_power(field: &Arc<CycloField>, k: i64) -> Self {
        let r = k.rem_euclid(field.order as i64) as usize;
        CycloElement {
            field: field.clone(),
            coeffs: field.zeta_powers()[r].clone(),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn zeta_order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.field.order == other.field.order
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.order,
                right: other.field.order,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let deg = self.field.degree();
        // fast paths: most values met in practice are rational
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r));
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_coeffs(&self.field, prod))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl<'a> Add<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    /// Panics if the operands live in different fields; use [`CycloElement::try_add`]
    /// to handle that case.
    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.try_add(rhs).expect("cyclotomic addition across fields")
    }
}

impl<'a> Sub<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.try_sub(rhs).expect("cyclotomic subtraction across fields")
    }
}

impl<'a> Mul<&'a CycloElement> for &'a CycloElement {
    type Output = CycloElement;

    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.try_mul(rhs).expect("cyclotomic multiplication across fields")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;

    fn neg(self) -> CycloElement {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Human-readable form with `z` standing for `ζ_e`, e.g. `-1 - z`.
impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    f.write_str("z")?;
                    if k > 1 {
                        write!(f, "^{}", k)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement[e={}]({})", self.field.order, self)
    }
}

impl Serialize for CycloElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycloElement", 2)?;
        st.serialize_field("zeta_order", &self.field.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            zeta_order: u64,
            coeffs: Vec<String>,
        }
        let wire = Wire::deserialize(d)?;
        let field = CycloField::get(wire.zeta_order).map_err(de::Error::custom)?;
        if wire.coeffs.len() != field.degree() {
            return Err(de::Error::custom(Error::MalformedElement(format!(
                "expected {} coefficients for zeta order {}, got {}",
                field.degree(),
                wire.zeta_order,
                wire.coeffs.len()
            ))));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Ok(CycloElement { field, coeffs })
    }
}

/// `n choose k` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `n` of Pascal's triangle as rationals.
pub fn binomial_row(n: u64) -> Vec<Rational> {
    (0..=n).map(|k| Rational::from_integer(binomial(n, k))).collect()
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(3).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(
            *cyclotomic_polynomial(9).unwrap(),
            ints(&[1, 0, 0, 1, 0, 0, 1])
        );
        assert_eq!(*cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn cyclotomic_of_prime_is_all_ones() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            let phi = cyclotomic_polynomial(p).unwrap();
            assert_eq!(phi.len() as u64, p);
            assert!(phi.iter().all(|c| c.is_one()), "p={p}");
        }
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for m in 1..=60 {
            assert_eq!(cyclotomic_polynomial(m).unwrap().len() as u64 - 1, totient(m));
        }
    }

    #[test]
    fn zeta_powers_reduce() {
        let f3 = CycloField::get(3).unwrap();
        assert!(CycloElement::zeta_power(&f3, 0).is_one());
        let z2 = CycloElement::zeta_power(&f3, 2);
        assert_eq!(z2.coeffs(), &[integer(-1), integer(-1)]);
        assert_eq!(CycloElement::zeta_power(&f3, -1), z2);

        let f4 = CycloField::get(4).unwrap();
        assert_eq!(
            CycloElement::zeta_power(&f4, 2),
            CycloElement::from_integer(&f4, -1)
        );
    }

    #[test]
    fn products_reduce_mod_phi() {
        let f3 = CycloField::get(3).unwrap();
        let z = CycloElement::zeta_power(&f3, 1);
        assert_eq!((&z * &z).coeffs(), &[integer(-1), integer(-1)]);
        let f4 = CycloField::get(4).unwrap();
        let i = CycloElement::zeta_power(&f4, 1);
        assert_eq!(&i * &i, CycloElement::from_integer(&f4, -1));
        let a = CycloElement::from_coeffs(&f4, vec![rational(2, 3), rational(-5, 7)]);
        assert_eq!(&CycloElement::one(&f4) * &a, a);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = CycloElement::one(&CycloField::get(3).unwrap());
        let b = CycloElement::one(&CycloField::get(4).unwrap());
        assert_eq!(
            a.try_mul(&b),
            Err(Error::FieldMismatch { left: 3, right: 4 })
        );
        assert!(a.try_add(&b).is_err());
        assert_ne!(a, b);
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&rational(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(parse_rational("6/-4").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), integer(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn element_json_shape() {
        let f3 = CycloField::get(3).unwrap();
        let z2 = CycloElement::zeta_power(&f3, 2);
        let json = serde_json::to_string(&z2).unwrap();
        assert_eq!(json, r#"{"zeta_order":3,"coeffs":["-1","-1"]}"#);
        let back: CycloElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z2);
        assert!(serde_json::from_str::<CycloElement>(r#"{"zeta_order":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f3 = CycloField::get(3).unwrap();
        assert_eq!(CycloElement::zeta_power(&f3, 2).to_string(), "-1 - z");
        let f5 = CycloField::get(5).unwrap();
        let e = CycloElement::from_coeffs(&f5, vec![integer(0), rational(1, 2), integer(0), integer(3)]);
        assert_eq!(e.to_string(), "1/2*z + 3*z^3");
        assert_eq!(CycloElement::zero(&f5).to_string(), "0");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
