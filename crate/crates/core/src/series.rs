//! Truncated formal power series in `t` and polynomials in `x` / `(x, y)`.
//!
//! Series store ordinary coefficients `c_k` of `t^k`; exponential generating
//! function values are extracted at the boundary by [`TruncatedSeries::egf_coefficient`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CycloElement, CycloField, Rational};
use std::sync::Arc;

/// A commutative coefficient ring with a `Q`-algebra structure.
///
/// Ring elements carry their ambient context (e.g. the cyclotomic field), so
/// zeros and ones are produced from an existing element.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// `Some(r)` if the element is the image of a rational number.
    fn as_rational(&self) -> Option<Rational>;
    /// Whether the two elements live in the same concrete ring.
    fn compatible(&self, other: &Self) -> bool;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Coefficient for CycloElement {
    fn zero_like(&self) -> Self {
        CycloElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        CycloElement::one(self.field())
    }
    fn is_zero(&self) -> bool {
        CycloElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        CycloElement::scale(self, r)
    }
    fn as_rational(&self) -> Option<Rational> {
        CycloElement::as_rational(self)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

/// `Σ_{k ≤ N} c_k t^k`, with `N = coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Panics on an empty coefficient vector: a series always retains degree 0.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: C, truncation: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; truncation + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The series `1` with the ring taken from `like`.
    pub fn one(like: &C, truncation: usize) -> Self {
        Self::constant(like.one_like(), truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&C> {
        self.coeffs.get(k).ok_or(Error::IndexBeyondTruncation {
            index: k,
            truncation: self.truncation(),
        })
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.coeffs[0].compatible(&other.coeffs[0]) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        Ok(TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        Ok(TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Cauchy product truncated at `min(N_a, N_b)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse for a series whose constant term is a nonzero
    /// rational: `b_n = -(1/c_0) Σ_{k=1}^{n} c_k b_{n-k}`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let c0 = c0.as_rational().ok_or(Error::NonRationalConstantTerm)?;
        let inv_c0 = c0.recip();
        let neg_inv_c0 = -&inv_c0;
        let n = self.truncation();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].one_like().scale(&inv_c0));
        for m in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                let ck = &self.coeffs[k];
                if !ck.is_zero() {
                    acc = acc.add(&ck.mul(&out[m - k]));
                }
            }
            out.push(acc.scale(&neg_inv_c0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `a^m` by binary powering; `a^0 = 1`.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut acc = Self::one(&self.coeffs[0], self.truncation());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `n! · c_n`.
    pub fn egf_coefficient(&self, n: usize) -> Result<C> {
        Ok(self.coeff(n)?.scale(&factorial(n as u64)))
    }

    /// All EGF coefficients `0..=N`.
    pub fn egf_coefficients(&self) -> Vec<C> {
        let mut fact = Rational::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= Rational::from_integer(BigInt::from(k));
                }
                c.scale(&fact)
            })
            .collect()
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `e^{ct} = Σ_{k ≤ N} c^k t^k / k!`.
pub fn exp_series<C: Coefficient>(c: &C, truncation: usize) -> TruncatedSeries<C> {
    let mut coeffs = Vec::with_capacity(truncation + 1);
    coeffs.push(c.one_like());
    for k in 1..=truncation {
        let next = coeffs[k - 1]
            .mul(c)
            .scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        coeffs.push(next);
    }
    TruncatedSeries { coeffs }
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Dense polynomial in `x` over `Q(ζ_e)`, ascending, without trailing zeros.
#[derive(Clone)]
pub struct UnivariatePolynomial {
    field: Arc<CycloField>,
    coeffs: Vec<CycloElement>,
}

impl UnivariatePolynomial {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        UnivariatePolynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: CycloElement) -> Self {
        let field = c.field().clone();
        Self::from_coeffs(&field, vec![c])
    }

    pub fn monomial(c: CycloElement, degree: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![CycloElement::zero(&field); degree];
        coeffs.push(c);
        Self::from_coeffs(&field, coeffs)
    }

    /// The polynomial `x`.
    pub fn x(field: &Arc<CycloField>) -> Self {
        Self::monomial(CycloElement::one(field), 1)
    }

    pub fn from_coeffs(field: &Arc<CycloField>, mut coeffs: Vec<CycloElement>) -> Self {
        while coeffs.last().is_some_and(CycloElement::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycloElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CycloElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CycloElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        UnivariatePolynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![CycloElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(r)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    /// `p(a + b·x)`, expanded exactly.
    pub fn compose_linear(&self, a: &CycloElement, b: &CycloElement) -> Self {
        let lin = Self::from_coeffs(&self.field, vec![a.clone(), b.clone()]);
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `p(a + b·x)` with rational shift and scale.
    pub fn compose_linear_rational(&self, a: &Rational, b: &Rational) -> Self {
        self.compose_linear(
            &CycloElement::from_rational(&self.field, a.clone()),
            &CycloElement::from_rational(&self.field, b.clone()),
        )
    }

    /// `p(c)`; `0^0 = 1`, so the constant term always survives.
    pub fn evaluate(&self, at: &CycloElement) -> CycloElement {
        let mut acc = CycloElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn evaluate_rational(&self, at: &Rational) -> CycloElement {
        self.evaluate(&CycloElement::from_rational(&self.field, at.clone()))
    }
}

impl PartialEq for UnivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Coefficient for UnivariatePolynomial {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::constant(CycloElement::one(&self.field))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        UnivariatePolynomial::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UnivariatePolynomial::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UnivariatePolynomial::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UnivariatePolynomial::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_rational(r)
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs[0].as_rational(),
            _ => None,
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
    }
}

/// Dense polynomial in `(x, y)`; `coeffs[i][j]` multiplies `x^i y^j`.
///
/// Kept rectangular with trailing all-zero rows and columns trimmed, so
/// structural equality is coefficient-wise equality.
#[derive(Clone)]
pub struct BivariatePolynomial {
    field: Arc<CycloField>,
    coeffs: Vec<Vec<CycloElement>>,
}

impl BivariatePolynomial {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        BivariatePolynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(field: &Arc<CycloField>, mut coeffs: Vec<Vec<CycloElement>>) -> Self {
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        for row in coeffs.iter_mut() {
            row.resize(width, CycloElement::zero(field));
        }
        while coeffs
            .last()
            .is_some_and(|row| row.iter().all(CycloElement::is_zero))
        {
            coeffs.pop();
        }
        let mut width = coeffs.first().map_or(0, Vec::len);
        while width > 0 && coeffs.iter().all(|row| row[width - 1].is_zero()) {
            width -= 1;
        }
        for row in coeffs.iter_mut() {
            row.truncate(width);
        }
        BivariatePolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// `p(x)` viewed as a polynomial constant in `y`.
    pub fn from_x(p: &UnivariatePolynomial) -> Self {
        let rows = p.coeffs().iter().map(|c| vec![c.clone()]).collect();
        Self::from_coeffs(p.field(), rows)
    }

    /// `p(x) · q(y)`.
    pub fn outer(p: &UnivariatePolynomial, q: &UnivariatePolynomial) -> Self {
        let rows = p
            .coeffs()
            .iter()
            .map(|a| q.coeffs().iter().map(|b| a * b).collect())
            .collect();
        Self::from_coeffs(p.field(), rows)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, x_degree: usize, y_degree: usize) -> CycloElement {
        self.coeffs
            .get(x_degree)
            .and_then(|row| row.get(y_degree))
            .cloned()
            .unwrap_or_else(|| CycloElement::zero(&self.field))
    }

    /// Rows indexed by x-degree.
    pub fn rows(&self) -> &[Vec<CycloElement>] {
        &self.coeffs
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.first().and_then(|r| r.len().checked_sub(1))
    }

    /// Largest `i + j` over nonzero coefficients.
    pub fn total_degree(&self) -> Option<usize> {
        let mut best = None;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    best = best.max(Some(i + j));
                }
            }
        }
        best
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloElement, &CycloElement) -> CycloElement) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .y_degree()
            .map_or(0, |d| d + 1)
            .max(other.y_degree().map_or(0, |d| d + 1));
        let coeffs = (0..rows)
            .map(|i| (0..cols).map(|j| f(&self.coeff(i, j), &other.coeff(i, j))).collect())
            .collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|a| a * c).collect())
            .collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    /// The coefficient of `y^0`, as a polynomial in `x`.
    pub fn y_constant_slice(&self) -> UnivariatePolynomial {
        let coeffs = (0..self.coeffs.len()).map(|i| self.coeff(i, 0)).collect();
        UnivariatePolynomial::from_coeffs(&self.field, coeffs)
    }

    pub fn evaluate(&self, x: &CycloElement, y: &CycloElement) -> CycloElement {
        let mut acc = CycloElement::zero(&self.field);
        for row in self.coeffs.iter().rev() {
            let mut inner = CycloElement::zero(&self.field);
            for c in row.iter().rev() {
                inner = &(&inner * y) + c;
            }
            acc = &(&acc * x) + &inner;
        }
        acc
    }

    /// First differing monomial in ascending (x-degree, y-degree) order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let diff = self.sub(other);
        for (i, row) in diff.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl PartialEq for BivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivariate{:?}", self.coeffs)
    }
}

/// Monomials in descending x-degree, then descending y-degree.
impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            for (j, c) in row.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    _ => {
                        let mut parts = Vec::new();
                        match i {
                            0 => {}
                            1 => parts.push("x".to_string()),
                            _ => parts.push(format!("x^{i}")),
                        }
                        match j {
                            0 => {}
                            1 => parts.push("y".to_string()),
                            _ => parts.push(format!("y^{j}")),
                        }
                        parts.join("*")
                    }
                };
                let (negative, coef) = match c.as_rational() {
                    Some(r) => (r.is_negative(), Some(r.abs()).filter(|m| !m.is_one()).map(|m| m.to_string())),
                    None => (false, Some(format!("({c})"))),
                };
                let body = match (coef, mono.is_empty()) {
                    (None, true) => "1".to_string(),
                    (None, false) => mono,
                    (Some(coef), true) => coef,
                    (Some(coef), false) => format!("{coef}*{mono}"),
                };
                terms.push((negative, body));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (negative, body)) in terms.iter().enumerate() {
            match (i, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&BivariatePolynomial::from_x(self), f)
    }
}
