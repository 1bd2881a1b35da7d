//! Symmetry identities for generalized higher-order Euler polynomials,
//! built as exact polynomials in `(x, y)` and compared coefficient-wise.
//!
//! For odd weights `w1, w2`, order `m ≥ 1` and index `n`:
//!
//! * `theorem1`: `Σ_j C(n,j) w2^j w1^{n-j} E^{(m)}_{n-j}(w2 x) Σ_k C(j,k) T_k(w1 d - 1) E^{(m-1)}_{j-k}(w1 y)`
//!   is invariant under `w1 ↔ w2`.
//! * `corollary2`: the `y = 0, m = 1` case,
//!   `Σ_j C(n,j) w2^j w1^{n-j} E_{n-j}(w2 x) T_j(w1 d - 1)`.
//! * `theorem3`: `Σ_k C(n,k) w1^k w2^{n-k} E^{(m-1)}_{n-k}(w1 y) Σ_{i<w1 d} χ(i)(-1)^i E^{(m)}_k(w2 x + (w2/w1) i)`.
//! * `multiplication`: the `m = 1` case,
//!   `w1^n Σ_{i<w1 d} χ(i)(-1)^i E_n(w2 x + (w2/w1) i)`.
//!
//! Both theorem sides expand the same generating function, so the theorem 1
//! and theorem 3 left sides must also agree with each other (`cross`).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chars::DirichletCharacter;
use crate::error::{Error, Result};
use crate::euler::{euler_polynomial, power_sums};
use crate::exactnum::{binomial_row, format_rational, integer, rational, CycloElement, Rational};
use crate::series::{BivariatePolynomial, UnivariatePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Theorem1,
    Theorem3,
    Corollary2,
    Eq4,
    Multiplication,
    Cross,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem1 => "theorem1",
            Identity::Theorem3 => "theorem3",
            Identity::Corollary2 => "corollary2",
            Identity::Eq4 => "eq4",
            Identity::Multiplication => "multiplication",
            Identity::Cross => "cross",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
}

/// Validated parameters `(χ, w1, w2, m, n)`.
#[derive(Clone, Debug)]
pub struct SymmetryParams {
    chi: Arc<DirichletCharacter>,
    w1: u64,
    w2: u64,
    order: u64,
    n: usize,
}

impl SymmetryParams {
    pub fn new(chi: Arc<DirichletCharacter>, w1: u64, w2: u64, order: u64, n: usize) -> Result<Self> {
        for w in [w1, w2] {
            if w % 2 == 0 {
                return Err(Error::InvalidWeight(w));
            }
        }
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(SymmetryParams {
            chi,
            w1,
            w2,
            order,
            n,
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn w1(&self) -> u64 {
        self.w1
    }

    pub fn w2(&self) -> u64 {
        self.w2
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The same parameters with `w1` and `w2` exchanged.
    pub fn swapped(&self) -> Self {
        SymmetryParams {
            w1: self.w2,
            w2: self.w1,
            ..self.clone()
        }
    }
}

/// Deliberate corruptions used to confirm that the checker can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Perturbation {
    #[default]
    None,
    /// Drop `(-1)^i` from the alternating sums on both sides.
    DropAlternatingSign,
    /// Build the right-hand side with `w1 + 1` in place of `w1`.
    OffByOneWeight,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CheckMode {
    #[default]
    Symbolic,
    /// Evaluate at a small grid of rational points first; a mismatch there
    /// settles inequality without the symbolic comparison.
    Sample,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: CheckMode,
    pub perturbation: Perturbation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// First differing monomial in ascending `(x-degree, y-degree)` order.
    Coefficient {
        check: String,
        x_degree: usize,
        y_degree: usize,
        lhs: CycloElement,
        rhs: CycloElement,
    },
    Sample {
        check: String,
        #[serde(with = "crate::exactnum::rational_serde")]
        x: Rational,
        #[serde(with = "crate::exactnum::rational_serde")]
        y: Rational,
        lhs: CycloElement,
        rhs: CycloElement,
    },
    Value {
        check: String,
        lhs: CycloElement,
        rhs: CycloElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub modulus: u64,
    pub character: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub params: ReportParams,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Evaluated outside the identity's hypothesis; reported but not a verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub observational: bool,
}

impl VerificationReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    /// An asserted identity that failed.
    pub fn is_violation(&self) -> bool {
        !self.observational && self.verdict == Verdict::Unequal
    }
}

fn weight_powers(w: u64, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Rational::one();
    for _ in 0..=n {
        out.push(acc.clone());
        acc *= integer(w as i64);
    }
    out
}

/// `T_0 .. T_K` at `upper`, optionally without the `(-1)^l` factor.
fn sums_for(chi: &DirichletCharacter, max_k: usize, upper: u64, alternating: bool) -> Vec<CycloElement> {
    if alternating {
        return power_sums(chi, max_k, upper);
    }
    let mut acc = vec![CycloElement::zero(chi.value_field()); max_k + 1];
    for l in 0..=upper {
        let v = chi.eval(l);
        let mut w = Rational::one();
        for (k, slot) in acc.iter_mut().enumerate() {
            if k > 0 {
                w *= integer(l as i64);
            }
            *slot = &*slot + &v.scale(&w);
        }
    }
    acc
}

/// `E^{(m)}_i(s · x)` for `i = 0..=n`.
fn scaled_polys(chi: &DirichletCharacter, order: u64, n: usize, s: u64) -> Vec<UnivariatePolynomial> {
    (0..=n)
        .map(|i| euler_polynomial(chi, order, i).compose_linear_rational(&Rational::zero(), &integer(s as i64)))
        .collect()
}

fn theorem1_raw(chi: &DirichletCharacter, wa: u64, wb: u64, order: u64, n: usize, alternating: bool) -> BivariatePolynomial {
    let field = chi.value_field();
    let sums = sums_for(chi, n, wa * chi.modulus() - 1, alternating);
    let ex = scaled_polys(chi, order, n, wb);
    let ey = scaled_polys(chi, order - 1, n, wa);
    let pa = weight_powers(wa, n);
    let pb = weight_powers(wb, n);
    let binom_n = binomial_row(n as u64);
    let mut side = BivariatePolynomial::zero(field);
    for j in 0..=n {
        let binom_j = binomial_row(j as u64);
        let mut inner = UnivariatePolynomial::zero(field);
        for k in 0..=j {
            let c = sums[k].scale(&binom_j[k]);
            inner = inner.add(&ey[j - k].scale(&c));
        }
        let outer_coef = &binom_n[j] * &pb[j] * &pa[n - j];
        let term = BivariatePolynomial::outer(&ex[n - j].scale_rational(&outer_coef), &inner);
        side = side.add(&term);
    }
    side
}

/// `Σ_{i<wa d} χ(i)(±1)^i E^{(m)}_k(wb x + (wb/wa) i)`.
fn shifted_character_sum(
    chi: &DirichletCharacter,
    poly: &UnivariatePolynomial,
    wa: u64,
    wb: u64,
    alternating: bool,
) -> UnivariatePolynomial {
    let mut acc = UnivariatePolynomial::zero(chi.value_field());
    let scale = integer(wb as i64);
    for i in 0..wa * chi.modulus() {
        let v = chi.eval(i);
        if v.is_zero() {
            continue;
        }
        let signed = if alternating && i % 2 == 1 { -v } else { v.clone() };
        let shift = rational((wb * i) as i64, wa as i64);
        acc = acc.add(&poly.compose_linear_rational(&shift, &scale).scale(&signed));
    }
    acc
}

fn theorem3_raw(chi: &DirichletCharacter, wa: u64, wb: u64, order: u64, n: usize, alternating: bool) -> BivariatePolynomial {
    let field = chi.value_field();
    let ey = scaled_polys(chi, order - 1, n, wa);
    let pa = weight_powers(wa, n);
    let pb = weight_powers(wb, n);
    let binom_n = binomial_row(n as u64);
    let mut side = BivariatePolynomial::zero(field);
    for k in 0..=n {
        let inner = shifted_character_sum(chi, &euler_polynomial(chi, order, k), wa, wb, alternating);
        let coef = &binom_n[k] * &pa[k] * &pb[n - k];
        side = side.add(&BivariatePolynomial::outer(&inner.scale_rational(&coef), &ey[n - k]));
    }
    side
}

fn corollary2_raw(chi: &DirichletCharacter, wa: u64, wb: u64, n: usize, alternating: bool) -> UnivariatePolynomial {
    let field = chi.value_field();
    let sums = sums_for(chi, n, wa * chi.modulus() - 1, alternating);
    let binom_n = binomial_row(n as u64);
    let pa = weight_powers(wa, n);
    let pb = weight_powers(wb, n);
    let mut side = UnivariatePolynomial::zero(field);
    for j in 0..=n {
        let e = euler_polynomial(chi, 1, n - j).compose_linear_rational(&Rational::zero(), &integer(wb as i64));
        let coef = sums[j].scale(&(&binom_n[j] * &pb[j] * &pa[n - j]));
        side = side.add(&e.scale(&coef));
    }
    side
}

fn multiplication_raw(chi: &DirichletCharacter, wa: u64, wb: u64, n: usize, alternating: bool) -> UnivariatePolynomial {
    let e = euler_polynomial(chi, 1, n);
    shifted_character_sum(chi, &e, wa, wb, alternating).scale_rational(&weight_powers(wa, n)[n])
}

fn oriented(params: &SymmetryParams, orientation: Orientation) -> (u64, u64) {
    match orientation {
        Orientation::Left => (params.w1, params.w2),
        Orientation::Right => (params.w2, params.w1),
    }
}

/// One side of the theorem 1 identity; the right side exchanges `w1` and `w2`.
pub fn theorem1_side(params: &SymmetryParams, orientation: Orientation) -> BivariatePolynomial {
    let (wa, wb) = oriented(params, orientation);
    theorem1_raw(&params.chi, wa, wb, params.order, params.n, true)
}

/// One side of the theorem 3 identity.
pub fn theorem3_side(params: &SymmetryParams, orientation: Orientation) -> BivariatePolynomial {
    let (wa, wb) = oriented(params, orientation);
    theorem3_raw(&params.chi, wa, wb, params.order, params.n, true)
}

/// One side of the corollary 2 identity, built directly in `x`.
pub fn corollary2_side(params: &SymmetryParams, orientation: Orientation) -> UnivariatePolynomial {
    let (wa, wb) = oriented(params, orientation);
    corollary2_raw(&params.chi, wa, wb, params.n, true)
}

/// One side of the `m = 1` multiplication identity.
pub fn multiplication_side(params: &SymmetryParams, orientation: Orientation) -> UnivariatePolynomial {
    let (wa, wb) = oriented(params, orientation);
    multiplication_raw(&params.chi, wa, wb, params.n, true)
}

fn sample_points() -> Vec<Rational> {
    vec![integer(0), integer(1), integer(-1), rational(1, 2), rational(3, 7)]
}

fn compare(check: &str, lhs: &BivariatePolynomial, rhs: &BivariatePolynomial, mode: CheckMode) -> Option<Witness> {
    if mode == CheckMode::Sample {
        let field = lhs.field();
        let points = sample_points();
        for x in &points {
            for y in &points {
                let xe = CycloElement::from_rational(field, x.clone());
                let ye = CycloElement::from_rational(field, y.clone());
                let l = lhs.evaluate(&xe, &ye);
                let r = rhs.evaluate(&xe, &ye);
                if l != r {
                    return Some(Witness::Sample {
                        check: check.to_string(),
                        x: x.clone(),
                        y: y.clone(),
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
    }
    lhs.first_difference(rhs).map(|(i, j)| Witness::Coefficient {
        check: check.to_string(),
        x_degree: i,
        y_degree: j,
        lhs: lhs.coeff(i, j),
        rhs: rhs.coeff(i, j),
    })
}

fn compare_x(check: &str, lhs: &UnivariatePolynomial, rhs: &UnivariatePolynomial, mode: CheckMode) -> Option<Witness> {
    compare(check, &BivariatePolynomial::from_x(lhs), &BivariatePolynomial::from_x(rhs), mode)
}

fn report(identity: Identity, params: &SymmetryParams, with_order: bool, witness: Option<Witness>) -> VerificationReport {
    VerificationReport {
        identity,
        params: ReportParams {
            modulus: params.chi.modulus(),
            character: params.chi.index(),
            w1: Some(params.w1),
            w2: Some(params.w2),
            order: with_order.then_some(params.order),
            n: params.n as u64,
            k: None,
        },
        verdict: if witness.is_none() {
            Verdict::Equal
        } else {
            Verdict::Unequal
        },
        witness,
        note: None,
        observational: false,
    }
}

/// Check one of the five symmetry identities. `Identity::Eq4` is not a
/// symmetry identity and is rejected here; see [`crate::euler::check_eq4`].
pub fn verify(identity: Identity, params: &SymmetryParams, opts: &VerifyOptions) -> Result<VerificationReport> {
    let chi = &*params.chi;
    let (w1, w2, m, n) = (params.w1, params.w2, params.order, params.n);
    let alternating = opts.perturbation != Perturbation::DropAlternatingSign;
    // weights used for the right side: (w2, w1) normally
    let (ra, rb) = match opts.perturbation {
        Perturbation::OffByOneWeight => (w2, w1 + 1),
        _ => (w2, w1),
    };
    let mode = opts.mode;
    let witness = match identity {
        Identity::Theorem1 => {
            let lhs = theorem1_raw(chi, w1, w2, m, n, alternating);
            let rhs = theorem1_raw(chi, ra, rb, m, n, alternating);
            compare("sides", &lhs, &rhs, mode)
        }
        Identity::Theorem3 => {
            let lhs = theorem3_raw(chi, w1, w2, m, n, alternating);
            let rhs = theorem3_raw(chi, ra, rb, m, n, alternating);
            compare("sides", &lhs, &rhs, mode)
        }
        Identity::Corollary2 => {
            let lhs = corollary2_raw(chi, w1, w2, n, alternating);
            let rhs = corollary2_raw(chi, ra, rb, n, alternating);
            compare_x("sides", &lhs, &rhs, mode).or_else(|| {
                // y = 0, m = 1 slice of theorem 1 must reproduce each side
                let left = theorem1_raw(chi, w1, w2, 1, n, alternating).y_constant_slice();
                let right = theorem1_raw(chi, ra, rb, 1, n, alternating).y_constant_slice();
                compare_x("specialization-left", &left, &lhs, mode)
                    .or_else(|| compare_x("specialization-right", &right, &rhs, mode))
            })
        }
        Identity::Multiplication => {
            let lhs = multiplication_raw(chi, w1, w2, n, alternating);
            let rhs = multiplication_raw(chi, ra, rb, n, alternating);
            compare_x("sides", &lhs, &rhs, mode).or_else(|| {
                let left = theorem3_raw(chi, w1, w2, 1, n, alternating).y_constant_slice();
                let right = theorem3_raw(chi, ra, rb, 1, n, alternating).y_constant_slice();
                compare_x("specialization-left", &left, &lhs, mode)
                    .or_else(|| compare_x("specialization-right", &right, &rhs, mode))
            })
        }
        Identity::Cross => {
            let t1l = theorem1_raw(chi, w1, w2, m, n, true);
            let t3l = theorem3_raw(chi, w1, w2, m, n, alternating);
            compare("left", &t1l, &t3l, mode).or_else(|| {
                let t1r = theorem1_raw(chi, ra, rb, m, n, true);
                let t3r = theorem3_raw(chi, w2, w1, m, n, alternating);
                compare("right", &t1r, &t3r, mode)
            })
        }
        Identity::Eq4 => return Err(Error::InvalidOrder),
    };
    let with_order = matches!(identity, Identity::Theorem1 | Identity::Theorem3 | Identity::Cross);
    Ok(report(identity, params, with_order, witness))
}

fn verify_default(identity: Identity, params: &SymmetryParams) -> VerificationReport {
    verify(identity, params, &VerifyOptions::default()).expect("symmetry identity")
}

pub fn verify_theorem1(params: &SymmetryParams) -> VerificationReport {
    verify_default(Identity::Theorem1, params)
}

pub fn verify_theorem3(params: &SymmetryParams) -> VerificationReport {
    verify_default(Identity::Theorem3, params)
}

/// The order in `params` is ignored; the identity is the `m = 1` case.
pub fn verify_corollary2(params: &SymmetryParams) -> VerificationReport {
    verify_default(Identity::Corollary2, params)
}

/// The order in `params` is ignored; the identity is the `m = 1` case.
pub fn verify_multiplication_identity(params: &SymmetryParams) -> VerificationReport {
    verify_default(Identity::Multiplication, params)
}

pub fn cross_theorem_check(params: &SymmetryParams) -> VerificationReport {
    verify_default(Identity::Cross, params)
}

/// Render an element for plain-text witnesses.
pub fn describe(c: &CycloElement) -> String {
    match c.as_rational() {
        Some(r) => format_rational(&r),
        None => format!("{c} (z = zeta_{})", c.zeta_order()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::character;
    use crate::euler::{euler_numbers, power_sum};

    fn params(d: u64, idx: usize, w1: u64, w2: u64, m: u64, n: usize) -> SymmetryParams {
        SymmetryParams::new(Arc::new(character(d, idx).unwrap()), w1, w2, m, n).unwrap()
    }

    #[test]
    fn validation() {
        let chi = Arc::new(character(3, 1).unwrap());
        assert_eq!(
            SymmetryParams::new(chi.clone(), 2, 3, 1, 0).unwrap_err(),
            Error::InvalidWeight(2)
        );
        assert_eq!(
            SymmetryParams::new(chi.clone(), 3, 5, 0, 0).unwrap_err(),
            Error::InvalidOrder
        );
        assert!(SymmetryParams::new(chi, 3, 5, 1, 0).is_ok());
    }

    #[test]
    fn theorem1_n0_single_term() {
        let p = params(3, 1, 3, 5, 2, 0);
        let chi = p.character();
        for (orientation, w) in [(Orientation::Left, 3u64), (Orientation::Right, 5)] {
            let side = theorem1_side(&p, orientation);
            let expect = &(&euler_numbers(chi, 2, 0).numbers[0] * &power_sum(chi, 0, w * 3 - 1))
                * &euler_numbers(chi, 1, 0).numbers[0];
            assert_eq!(side.coeff(0, 0), expect);
            assert_eq!(side.total_degree().unwrap_or(0), 0);
        }
    }

    #[test]
    fn equal_weights_give_identical_sides() {
        let p = params(5, 1, 3, 3, 2, 4);
        assert_eq!(theorem1_side(&p, Orientation::Left), theorem1_side(&p, Orientation::Right));
        assert_eq!(theorem3_side(&p, Orientation::Left), theorem3_side(&p, Orientation::Right));
        assert!(verify_theorem1(&p).is_equal());
        assert!(verify_theorem3(&p).is_equal());
    }

    #[test]
    fn classical_n1_by_hand() {
        // d = 1, m = 1, n = 1, (w1, w2) = (1, 3), with T_0(0) = 1, T_1(0) = 0,
        // T_0(2) = T_1(2) = 1:
        //   left  = E_1(3x) T_0(0) + 3 (T_0(0) y + T_1(0))  = 3x + 3y - 1/2
        //   right = 3 E_1(x) T_0(2) + (3 T_0(2) y + T_1(2)) = 3x + 3y - 1/2
        let p = params(1, 0, 1, 3, 1, 1);
        let f = p.character().value_field();
        let c = |n, d| CycloElement::from_rational(f, rational(n, d));
        let expect = BivariatePolynomial::from_coeffs(
            f,
            vec![vec![c(-1, 2), c(3, 1)], vec![c(3, 1), c(0, 1)]],
        );
        assert_eq!(theorem1_side(&p, Orientation::Left), expect);
        assert_eq!(theorem1_side(&p, Orientation::Right), expect);
    }

    #[test]
    fn theorem3_order_one_reduces_to_powers_of_y() {
        let p = params(1, 0, 1, 3, 1, 0);
        let side = theorem3_side(&p, Orientation::Left);
        assert!(side.coeff(0, 0).is_one());
        assert_eq!(side.total_degree(), Some(0));
    }

    #[test]
    fn swap_involution() {
        let p = params(5, 1, 3, 7, 2, 3);
        let s = p.swapped();
        assert_eq!(theorem1_side(&p, Orientation::Left), theorem1_side(&s, Orientation::Right));
        assert_eq!(theorem3_side(&p, Orientation::Left), theorem3_side(&s, Orientation::Right));
    }

    #[test]
    fn identities_hold_on_small_cases() {
        for n in 0..=5 {
            let p = params(3, 1, 3, 5, 2, n);
            assert!(verify_theorem1(&p).is_equal(), "theorem1 n={n}");
            assert!(verify_theorem3(&p).is_equal(), "theorem3 n={n}");
            assert!(cross_theorem_check(&p).is_equal(), "cross n={n}");
            assert!(verify_corollary2(&p).is_equal(), "corollary2 n={n}");
            assert!(verify_multiplication_identity(&p).is_equal(), "mult n={n}");
        }
    }

    #[test]
    fn complex_character_small_case() {
        let p = params(5, 1, 3, 7, 2, 3);
        assert!(verify_theorem1(&p).is_equal());
        assert!(verify_theorem3(&p).is_equal());
    }

    #[test]
    fn perturbations_are_detected() {
        let p = params(3, 1, 3, 5, 2, 3);
        let opts = VerifyOptions {
            perturbation: Perturbation::OffByOneWeight,
            ..Default::default()
        };
        let r = verify(Identity::Theorem1, &p, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Unequal);
        assert!(matches!(r.witness, Some(Witness::Coefficient { .. })));

        let opts = VerifyOptions {
            perturbation: Perturbation::DropAlternatingSign,
            ..Default::default()
        };
        let r = verify(Identity::Theorem3, &params(1, 0, 1, 3, 1, 2), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Unequal);
    }

    #[test]
    fn sample_mode_agrees_and_reports_points() {
        let p = params(5, 1, 3, 7, 1, 3);
        let sample = VerifyOptions {
            mode: CheckMode::Sample,
            ..Default::default()
        };
        assert!(verify(Identity::Theorem1, &p, &sample).unwrap().is_equal());
        let broken = VerifyOptions {
            mode: CheckMode::Sample,
            perturbation: Perturbation::OffByOneWeight,
        };
        let r = verify(Identity::Theorem1, &p, &broken).unwrap();
        assert!(matches!(r.witness, Some(Witness::Sample { .. })));
    }

    #[test]
    fn report_json_shape() {
        let r = verify_corollary2(&params(1, 0, 1, 3, 1, 0));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"identity":"corollary2","params":{"modulus":1,"character":0,"w1":1,"w2":3,"n":0},"verdict":"equal"}"#
        );
    }
}
