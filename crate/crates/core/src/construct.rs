//! Constructions of Seifert matrices with prescribed signature behaviour:
//!
//! * quartics `bt⁴ − (2a + 2b)t³ + (4a + 2b − 1)t² − (2a + 2b)t + b` with a
//!   single unit-root pair near a target, and their realizations;
//! * metabolic block matrices whose signature function vanishes except at
//!   one chosen unit root of a given Alexander polynomial;
//! * the high-dimensional analogues;
//! * matrices whose signature is nonzero at exactly one of finitely many
//!   given points.
//!
//! Every constructor re-verifies its postconditions exactly and returns the
//! list of checks it ran.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::algebraic::bigint_to_json;
use crate::exact_math::poly::{format_rational, rat, sign_of};
use crate::exact_math::{sturm_isolate, unit_roots_with_multiplicity, AlgebraicReal, IntPolynomial};
use crate::matrix::{IntMatrix, Matrix};
use crate::seifert::{
    alexander_polynomial, direct_sum, gap_samples, negate, separate_breakpoints,
    signature_at_algebraic, signature_at_rational, signature_step_function, validate_seifert,
    verify_metabolizer, MetabolizerCertificate, Parity, SeifertMatrix, SignatureStepFunction,
};

/// Upper bound on `b` in the quartic search.
pub const MAX_SEARCH_B: u64 = 50_000_000;

/// One named postcondition and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

fn require(checks: &[Check]) -> Result<()> {
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(Error::Verification(format!("{}: {}", c.name, c.detail))),
    }
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    bigint_to_json(v).serialize(s)
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(bigint_to_json).collect::<Vec<_>>().serialize(s)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn check_open_unit(c: &BigRational) -> Result<()> {
    if c <= &rat(-1, 1) || c >= &rat(1, 1) {
        return Err(Error::OutOfDomain(format_rational(c)));
    }
    Ok(())
}

/// Nearest integer, ties toward zero.
fn round_ties_to_zero(x: &BigRational) -> BigInt {
    let fl = x.floor();
    let frac = x - &fl;
    let half = rat(1, 2);
    let fl = fl.to_integer();
    match frac.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal if x.is_positive() => fl,
        Ordering::Equal => fl + 1,
    }
}

/// Quartic with one unit-root pair near a target real part.
#[derive(Clone, Debug)]
pub struct JumpPolynomial {
    pub a: BigInt,
    pub b: BigInt,
    pub delta: IntPolynomial,
    /// Real part `c*` of the unit-root pair.
    pub root: AlgebraicReal,
    pub checks: Vec<Check>,
}

/// `bt⁴ − (2a + 2b)t³ + (4a + 2b − 1)t² − (2a + 2b)t + b`
pub fn jump_quartic(a: &BigInt, b: &BigInt) -> IntPolynomial {
    let m = -(a + b) * int(2);
    IntPolynomial::new(vec![b.clone(), m.clone(), a * int(4) + b * int(2) - int(1), m, b.clone()])
}

/// Compression of [`jump_quartic`]: `b·x² − 2(a + b)·x + (4a − 1)`.
fn jump_quadratic(a: &BigInt, b: &BigInt) -> IntPolynomial {
    IntPolynomial::new(vec![a * int(4) - int(1), -(a + b) * int(2), b.clone()])
}

/// Search over `b = 1, 2, 3, …` with `a` the nearest integer to `r·b`
/// (ties toward zero). `accept` sees `(a, b)` after the window test passes.
fn search_quartic(
    r: &BigRational,
    eps: &BigRational,
    mut accept: impl FnMut(&BigInt, &BigInt) -> bool,
) -> Result<(BigInt, BigInt)> {
    check_open_unit(r)?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let two = rat(2, 1);
    let lo = (&two * (r - eps)).max(-two.clone());
    let hi = (&two * (r + eps)).min(two.clone());
    for b in 1..=MAX_SEARCH_B {
        let b = BigInt::from(b);
        let a = round_ties_to_zero(&(r * BigRational::from_integer(b.clone())));
        if (&a + &b) * 8 - 1 <= BigInt::zero() {
            continue;
        }
        // q(−2) > 0 > q(2) and q is decreasing through its single root in (−2, 2)
        let q = jump_quadratic(&a, &b);
        if sign_of(&q.eval(&lo)) > 0 && sign_of(&q.eval(&hi)) < 0 && accept(&a, &b) {
            return Ok((a, b));
        }
    }
    Err(Error::InvalidArgument(format!(
        "no quartic found within b ≤ {MAX_SEARCH_B}; window too small"
    )))
}

fn verify_jump(r: &BigRational, eps: &BigRational, a: &BigInt, b: &BigInt) -> Result<JumpPolynomial> {
    let delta = jump_quartic(a, b);
    let q = jump_quadratic(a, b);
    let mut checks = vec![
        Check::new("delta(1) = -1", delta.eval(&rat(1, 1)) == rat(-1, 1), ""),
        Check::new("palindromic", delta.is_palindromic()?, delta.to_csv()),
        Check::new("q(2) = -1", q.eval(&rat(2, 1)) == rat(-1, 1), ""),
        Check::new(
            "discriminant = 4((a-b)^2 + b) > 0",
            {
                let disc = &q.coeff(1) * &q.coeff(1) - &q.coeff(2) * &q.coeff(0) * int(4);
                let expected = (((a - b) * (a - b)) + b) * int(4);
                disc == expected && disc.is_positive()
            },
            "",
        ),
    ];
    let roots = unit_roots_with_multiplicity(&delta)?;
    checks.push(Check::new(
        "exactly one simple unit-root pair",
        roots.len() == 1 && roots[0].multiplicity == 1,
        format!("{} pairs", roots.len()),
    ));
    // the other two roots are real: q has exactly one root beyond 2
    let bound = rat(4, 1) * (BigRational::from_integer(a.abs() + b.abs() + 1));
    let outer = sturm_isolate(&q, &rat(2, 1), &bound);
    checks.push(Check::new("remaining roots real", outer.len() == 1, ""));
    let root = roots.first().map(|r| r.root.clone());
    if let Some(c) = &root {
        let inside = c.cmp_rational(&(r - eps)) == Ordering::Greater
            && c.cmp_rational(&(r + eps)) == Ordering::Less;
        checks.push(Check::new(
            "|c* - r| < eps",
            inside,
            format!("c* ≈ {:.10}", c.to_f64()),
        ));
    }
    require(&checks)?;
    Ok(JumpPolynomial {
        a: a.clone(),
        b: b.clone(),
        delta,
        root: root.expect("checked"),
        checks,
    })
}

/// Quartic Alexander polynomial with `Δ(1) = −1` whose only unit roots are
/// one simple pair with real part within `eps` of `r`.
pub fn jump_polynomial(r: &BigRational, eps: &BigRational) -> Result<JumpPolynomial> {
    let (a, b) = search_quartic(r, eps, |_, _| true)?;
    verify_jump(r, eps, &a, &b)
}

/// Sextic `D(t) = (ct² + (1 − 2c)t + c)·Δ(t)`, `c = 2(a + b)`.
#[derive(Clone, Debug)]
pub struct HighDimJumpPolynomial {
    pub base: JumpPolynomial,
    pub c: BigInt,
    pub d: IntPolynomial,
    /// `1 − 1/(2c)`, the real part of the extra unit-root pair.
    pub extra_root: BigRational,
    pub checks: Vec<Check>,
}

/// Default lower bound for the extra unit root's real part.
pub fn default_closeness() -> BigRational {
    rat(9, 10)
}

pub fn highdim_jump_polynomial(
    r: &BigRational,
    eps: &BigRational,
    closeness: &BigRational,
) -> Result<HighDimJumpPolynomial> {
    let floor = closeness.clone().max(r + eps);
    let (a, b) = search_quartic(r, eps, |a, b| {
        let c = BigRational::from_integer((a + b) * 2);
        c.is_positive() && (rat(1, 1) - (&c * rat(2, 1)).recip()) > floor
    })?;
    let base = verify_jump(r, eps, &a, &b)?;
    let c = (&a + &b) * int(2);
    let factor = IntPolynomial::new(vec![c.clone(), int(1) - &c * int(2), c.clone()]);
    let d = &factor * &base.delta;
    let extra_root = rat(1, 1) - BigRational::new(int(1), &c * 2);
    let d_minus = d.eval(&rat(-1, 1));
    let s = (&a + &b) * 8 - 1;
    let mut checks = vec![
        Check::new("D(1) = -1", d.eval(&rat(1, 1)) == rat(-1, 1), ""),
        Check::new(
            "D(-1) = (8a+8b-1)^2",
            d_minus == BigRational::from_integer(&s * &s),
            format!("{d_minus}"),
        ),
        Check::new("highdim Alexander conditions", highdim_validate_polynomial(&d), d.to_csv()),
    ];
    let roots = unit_roots_with_multiplicity(&d)?;
    let ok = roots.len() == 2
        && roots.iter().all(|x| x.multiplicity == 1)
        && roots[0].root.cmp_exact(&base.root) == Ordering::Equal
        && roots[1].root.cmp_rational(&extra_root) == Ordering::Equal;
    checks.push(Check::new(
        "unit roots are {c*, 1 - 1/2c}",
        ok,
        format!("{} pairs", roots.len()),
    ));
    require(&checks)?;
    Ok(HighDimJumpPolynomial { base, c, d, extra_root, checks })
}

/// `Δ(t) = t^{2g}Δ(t⁻¹)`, `Δ(1) = (−1)^g` and `Δ(−1)` a perfect square.
pub fn highdim_validate_polynomial(d: &IntPolynomial) -> bool {
    let Some(deg) = d.degree() else {
        return false;
    };
    if deg % 2 == 1 || !d.is_palindromic().unwrap_or(false) {
        return false;
    }
    let g = deg / 2;
    let expected = if g % 2 == 0 { 1 } else { -1 };
    if d.eval_int(&int(1)) != int(expected) {
        return false;
    }
    let v = d.eval_int(&int(-1));
    !v.is_negative() && {
        let s = v.sqrt();
        &s * &s == v
    }
}

/// Coefficients of `λ(x) = Σ a_j x^j` with `Σ a_j (1 − t)^{2g−2j} t^j = Δ(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCoefficients {
    #[serde(serialize_with = "ser_bigints")]
    pub a: Vec<BigInt>,
}

impl LambdaCoefficients {
    pub fn g(&self) -> usize {
        self.a.len() - 1
    }

    /// `Σ a_j (1 − t)^{2g−2j} t^j`
    pub fn expand(&self) -> IntPolynomial {
        let g = self.g();
        let one_minus_t = IntPolynomial::from_i64s(&[1, -1]);
        let mut out = IntPolynomial::zero();
        for (j, aj) in self.a.iter().enumerate() {
            let mut term = one_minus_t.pow((2 * g - 2 * j) as u32);
            let mut shifted = vec![BigInt::zero(); j];
            shifted.extend(term.coeffs().iter().cloned());
            term = IntPolynomial::new(shifted);
            out = &out + &term.scale(aj);
        }
        out
    }

    pub fn negated(&self) -> Self {
        LambdaCoefficients { a: self.a.iter().map(|x| -x).collect() }
    }

    /// `a_j ↦ (−1)^j a_j`
    pub fn sign_twisted(&self) -> Self {
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(j, x)| if j % 2 == 0 { x.clone() } else { -x })
            .collect();
        LambdaCoefficients { a }
    }

    /// As a polynomial in `x`.
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.a.clone())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn check_alexander_shape(delta: &IntPolynomial) -> Result<usize> {
    if !delta.is_palindromic()? {
        return Err(Error::NotPalindromic);
    }
    let deg = delta.degree().unwrap_or(0);
    if deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    if delta.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(deg / 2)
}

pub fn lambda_coefficients(delta: &IntPolynomial) -> Result<LambdaCoefficients> {
    let g = check_alexander_shape(delta)?;
    let at_one = delta.eval_int(&int(1));
    if at_one.abs() != BigInt::one() {
        return Err(Error::InvalidArgument(format!("Δ(1) = {at_one}, expected ±1")));
    }
    // a_k = d_k − Σ_{j<k} a_j (−1)^{k−j} C(2g−2j, k−j)
    let mut a: Vec<BigInt> = Vec::with_capacity(g + 1);
    for k in 0..=g {
        let mut v = delta.coeff(k);
        for (j, aj) in a.iter().enumerate() {
            let c = binomial(2 * g - 2 * j, k - j);
            let term = aj * c;
            if (k - j) % 2 == 0 {
                v -= term;
            } else {
                v += term;
            }
        }
        a.push(v);
    }
    let lambda = LambdaCoefficients { a };
    if &lambda.expand() != delta {
        return Err(Error::Verification("λ re-expansion differs from Δ".into()));
    }
    if lambda.a[g] != at_one {
        return Err(Error::Verification("a_g differs from Δ(1)".into()));
    }
    Ok(lambda)
}

/// `g×g` matrix with `−1` on the subdiagonal and last column
/// `(a_0, …, a_{g−1})`, so that `det(A + xI) = λ(x)`. A leading coefficient
/// of `−1` is handled by negating `λ` first.
pub fn companion_matrix(lambda: &LambdaCoefficients) -> Result<IntMatrix> {
    let g = lambda.g();
    let lead = &lambda.a[g];
    let lambda = if lead == &int(1) {
        lambda.clone()
    } else if lead == &int(-1) {
        lambda.negated()
    } else {
        return Err(Error::InvalidArgument(format!("a_g = {lead}, expected ±1")));
    };
    Ok(Matrix::from_fn(g, g, |i, j| {
        if j == g - 1 {
            lambda.a[i].clone()
        } else if i == j + 1 {
            int(-1)
        } else {
            BigInt::zero()
        }
    }))
}

/// Classical Seifert matrix `[[X, I], [0, X⁻¹A]]` with `Δ_V ≐ Δ`, where `A`
/// is the companion matrix of `λ` and `X` the Hankel matrix
/// `X_{ij} = a_{i+j+1}` (zero-based, `a_g = 1`, `a_{>g} = 0`).
pub fn hankel_realize(delta: &IntPolynomial) -> Result<SeifertMatrix> {
    let g = check_alexander_shape(delta)?;
    if g == 0 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    let lambda = lambda_coefficients(delta)?;
    let lambda = if lambda.a[g] == int(-1) { lambda.negated() } else { lambda };
    let a = companion_matrix(&lambda)?;
    let coef = |k: usize| lambda.a.get(k).cloned().unwrap_or_default();
    let x = Matrix::from_fn(g, g, |i, j| coef(i + j + 1));
    if a.mul(&x) != x.mul(&a.transpose()) {
        return Err(Error::Verification("A·X ≠ X·Aᵀ".into()));
    }
    let x_inv = x
        .to_rat()
        .inverse()
        .ok_or_else(|| Error::Verification("Hankel matrix is singular".into()))?;
    let y_rat = x_inv.mul(&a.to_rat());
    if !y_rat.is_symmetric() {
        return Err(Error::Verification("X⁻¹A is not symmetric".into()));
    }
    if y_rat.to_rows().iter().flatten().any(|v| !v.is_integer()) {
        return Err(Error::Verification("X⁻¹A is not integral".into()));
    }
    let y = y_rat.map(|v| v.to_integer());
    let v = Matrix::blocks(&x, &IntMatrix::identity(g), &IntMatrix::zeros(g, g), &y);
    let k = validate_seifert(v, Parity::Classical)?;
    if alexander_polynomial(&k).normalized != delta.normalize_unit() {
        return Err(Error::Verification("realized Alexander polynomial differs".into()));
    }
    Ok(k)
}

/// The integers placed in `B_g` for one metabolic summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeakSelection {
    /// Rational threshold `μ` on `Ω = 2 − 2·Re(ω)`.
    pub mu: String,
    #[serde(serialize_with = "ser_bigint")]
    pub b1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub b2: BigInt,
}

/// Output of [`metabolic_peak`] / [`highdim_metabolic_peak`].
#[derive(Clone, Debug)]
pub struct MetabolicPeak {
    pub summands: [SeifertMatrix; 2],
    pub selections: [PeakSelection; 2],
    pub matrix: SeifertMatrix,
    pub step_function: SignatureStepFunction,
    pub checks: Vec<Check>,
}

/// The `4g×4g` block matrix
/// `[[0, [[I, A], [I, 0]]], [[[0, ±I], [±Aᵀ, I]], B]]` with `B` zero except
/// `b₁` at the off-corners and `b₂` at the corner of its lower-right `g×g`
/// block (`b₁` is dropped when `g = 1`).
fn metabolic_block(a: &IntMatrix, b1: &BigInt, b2: &BigInt, parity: Parity) -> IntMatrix {
    let g = a.dim();
    let id = IntMatrix::identity(g);
    let zero = IntMatrix::zeros(g, g);
    let top_right = Matrix::blocks(&id, a, &id, &zero);
    let bottom_left = match parity {
        Parity::Classical => Matrix::blocks(&zero, &id, &a.transpose(), &id),
        Parity::HighDimSym => Matrix::blocks(&zero, &id.neg(), &a.transpose().neg(), &id),
    };
    let mut bg = IntMatrix::zeros(g, g);
    if g > 1 {
        bg[(0, g - 1)] = b1.clone();
        bg[(g - 1, 0)] = b1.clone();
    }
    bg[(g - 1, g - 1)] = b2.clone();
    let b = Matrix::blocks(&zero, &zero, &zero, &bg);
    Matrix::blocks(&IntMatrix::zeros(2 * g, 2 * g), &top_right, &bottom_left, &b)
}

/// Integers `b₁, b₂` whose sign rule at a root is `dir·sign(Ω − μ)`.
/// Classical summands have sign `sign(b₂ + 2Ω a₀ b₁)` at a root, the
/// high-dimensional ones `sign(b₂ − 2Ω a₀ b₁)`; with `b₁ = den(μ)·sign(a₀)·s`
/// and `b₂ = ∓2a₀b₁μ` both reduce to `±s·sign(Ω − μ)`.
fn select_b(mu: &BigRational, a0: &BigInt, dir: i64, g: usize, parity: Parity) -> (BigInt, BigInt) {
    if g == 1 {
        // 1×1 block: the sign at the single root is sign(b₂)
        return (BigInt::zero(), int(1));
    }
    let parity_sign = match parity {
        Parity::Classical => 1,
        Parity::HighDimSym => -1,
    };
    let s = int(dir * parity_sign);
    let b1 = mu.denom() * a0.signum() * &s;
    let b2 = BigRational::from_integer(a0 * &b1 * int(-2 * parity_sign)) * mu;
    debug_assert!(b2.is_integer());
    (b1, b2.to_integer())
}

fn metabolic_peak_impl(delta: &IntPolynomial, p: usize, parity: Parity) -> Result<MetabolicPeak> {
    let g = check_alexander_shape(delta)?;
    if g == 0 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    let expected_at_one = match parity {
        Parity::Classical => int(1),
        Parity::HighDimSym => int(if g % 2 == 0 { 1 } else { -1 }),
    };
    let at_one = delta.eval_int(&int(1));
    if at_one != expected_at_one {
        return Err(Error::InvalidArgument(format!(
            "Δ(1) = {at_one}, expected {expected_at_one}"
        )));
    }
    let mut roots: Vec<AlgebraicReal> = unit_roots_with_multiplicity(delta)?
        .into_iter()
        .map(|r| r.root)
        .collect();
    if roots.is_empty() {
        return Err(Error::InvalidArgument("Δ has no unit roots".into()));
    }
    let k = roots.len();
    if p == 0 || p > k {
        return Err(Error::InvalidArgument(format!("root index {p} outside 1..={k}")));
    }
    separate_breakpoints(&mut roots);
    let samples = gap_samples(&roots);
    let lambda = lambda_coefficients(delta)?;
    let lambda = match parity {
        Parity::Classical => lambda,
        // the block's Alexander polynomial is det(tI − (t − 1)²A), so the
        // companion matrix must carry λ(−x) up to sign, monic iff Δ(1) = (−1)^g
        Parity::HighDimSym => lambda.sign_twisted(),
    };
    let a = companion_matrix(&lambda)?;
    let a0 = lambda.a[0].clone();

    // V₁: +1 at roots 1..=p, −1 after; V₂: −1 before p, +1 at p..=k
    let omega_of = |c: &BigRational| rat(2, 1) - c * rat(2, 1);
    let specs = [(omega_of(&samples[p]), 1i64), (omega_of(&samples[p - 1]), -1i64)];
    let want = |which: usize, j: usize| -> i64 {
        match (which, j <= p, j >= p) {
            (0, true, _) | (1, _, true) => 1,
            _ => -1,
        }
    };
    let mut checks = Vec::new();
    let mut built = Vec::new();
    for (which, (mu, dir)) in specs.iter().enumerate() {
        let (mut b1, mut b2) = select_b(mu, &a0, *dir, g, parity);
        let mut summand = validate_seifert(metabolic_block(&a, &b1, &b2, parity), parity)?;
        let mut values = summand_root_values(&summand, &roots)?;
        let target: Vec<i64> = (1..=k).map(|j| want(which, j)).collect();
        if values.iter().zip(&target).all(|(v, t)| *v == -t) {
            // measured orientation is opposite to the predicted one
            b1 = -b1;
            b2 = -b2;
            summand = validate_seifert(metabolic_block(&a, &b1, &b2, parity), parity)?;
            values = summand_root_values(&summand, &roots)?;
            checks.push(Check::new(
                &format!("summand {} orientation", which + 1),
                true,
                "flipped after measurement",
            ));
        }
        checks.push(Check::new(
            &format!("summand {} root signatures", which + 1),
            values == target,
            format!("{values:?}, wanted {target:?}"),
        ));
        let cert = MetabolizerCertificate::leading_coordinates(summand.dim());
        checks.push(Check::new(
            &format!("summand {} metabolizer", which + 1),
            verify_metabolizer(&summand, &cert)?,
            "first 2g coordinates",
        ));
        let alex = alexander_polynomial(&summand).normalized;
        checks.push(Check::new(
            &format!("summand {} Alexander polynomial = Δ²", which + 1),
            alex == (delta * delta).normalize_unit(),
            alex.to_csv(),
        ));
        built.push((summand, PeakSelection { mu: format_rational(mu), b1, b2 }));
    }
    require(&checks)?;
    let (v2, s2) = built.pop().expect("two summands");
    let (v1, s1) = built.pop().expect("two summands");
    let matrix = direct_sum(&v1, &v2)?;
    let step_function = signature_step_function(&matrix)?;
    let alex = alexander_polynomial(&matrix).normalized;
    checks.push(Check::new(
        "Alexander polynomial = Δ⁴",
        alex == delta.pow(4).normalize_unit(),
        alex.to_csv(),
    ));
    let pattern_ok = step_function.breakpoints.len() == k
        && step_function.interval_values.iter().all(|&v| v == 0)
        && step_function
            .point_values
            .iter()
            .enumerate()
            .all(|(j, &v)| v == if j + 1 == p { 2 } else { 0 });
    checks.push(Check::new(
        "step function is 2 at the chosen root and 0 elsewhere",
        pattern_ok,
        format!(
            "intervals {:?}, points {:?}",
            step_function.interval_values, step_function.point_values
        ),
    ));
    checks.push(Check::new(
        "metabolizer of the sum",
        verify_metabolizer(&matrix, &direct_sum_certificate(g))?,
        "first 2g coordinates of each summand",
    ));
    require(&checks)?;
    Ok(MetabolicPeak {
        summands: [v1, v2],
        selections: [s1, s2],
        matrix,
        step_function,
        checks,
    })
}

fn summand_root_values(k: &SeifertMatrix, roots: &[AlgebraicReal]) -> Result<Vec<i64>> {
    roots.iter().map(|c| signature_at_algebraic(k, c)).collect()
}

/// Union of the leading-coordinate metabolizers of two `4g`-dimensional summands.
fn direct_sum_certificate(g: usize) -> MetabolizerCertificate {
    let n = 8 * g;
    MetabolizerCertificate {
        rows: Matrix::from_fn(4 * g, n, |i, j| {
            let target = if i < 2 * g { i } else { i + 2 * g };
            if j == target {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }),
    }
}

/// Metabolic classical Seifert matrix whose signature function is `2` at
/// the `p`-th unit root of `Δ` (increasing real part, 1-based) and `0` at
/// every other point of `(−1, 1)`. Requires `Δ(1) = 1`.
pub fn metabolic_peak(delta: &IntPolynomial, p: usize) -> Result<MetabolicPeak> {
    metabolic_peak_impl(delta, p, Parity::Classical)
}

/// High-dimensional analogue; requires `Δ(1) = (−1)^g`.
pub fn highdim_metabolic_peak(delta: &IntPolynomial, p: usize) -> Result<MetabolicPeak> {
    metabolic_peak_impl(delta, p, Parity::HighDimSym)
}

/// One oriented jump summand of an independence certificate.
#[derive(Clone, Debug)]
pub struct JumpSummand {
    pub window: (BigRational, BigRational),
    pub jump: JumpPolynomial,
    /// Whether the realization was negated to make its left value `+2`.
    pub negated: bool,
}

#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub matrix: SeifertMatrix,
    pub right: JumpSummand,
    pub left: Option<JumpSummand>,
    /// `σ(c_i)` for every input point.
    pub values: Vec<i64>,
    pub checks: Vec<Check>,
}

/// Realization of a jump polynomial for `window`, oriented so its value to
/// the left of the jump is `+2`.
fn oriented_jump(
    window: (BigRational, BigRational),
    eps: &BigRational,
    probe: &BigRational,
) -> Result<(SeifertMatrix, JumpSummand)> {
    let mid = (&window.0 + &window.1) / rat(2, 1);
    let jump = jump_polynomial(&mid, eps)?;
    let k = hankel_realize(&jump.delta)?;
    let left = signature_at_rational(&k, probe)?;
    let (k, negated) = match left {
        2 => (k, false),
        -2 => (negate(&k), true),
        other => {
            return Err(Error::Verification(format!(
                "jump summand has value {other} left of its jump"
            )))
        }
    };
    Ok((k, JumpSummand { window, jump, negated }))
}

/// Seifert matrix with `σ(c_k) ≠ 0` and `σ(c_i) = 0` for `i ≠ k` (1-based).
pub fn independence_certificate(cs: &[BigRational], k: usize) -> Result<IndependenceCertificate> {
    let n = cs.len();
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("target {k} outside 1..={n}")));
    }
    for c in cs {
        check_open_unit(c)?;
    }
    if cs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("points must be distinct and increasing".into()));
    }
    let mut edges = vec![rat(-1, 1)];
    edges.extend(cs.iter().cloned());
    edges.push(rat(1, 1));
    let eps = edges
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least one gap")
        / rat(2, 1);
    // right summand jumps in (c_k, c_{k+1}); left in (c_{k−1}, c_k)
    let right_window = (edges[k].clone(), edges[k + 1].clone());
    let left_window = (k > 1).then(|| (edges[k - 1].clone(), edges[k].clone()));
    let (right, left) = rayon::join(
        || oriented_jump(right_window, &eps, &cs[k - 1]),
        || left_window.map(|w| oriented_jump(w, &eps, &cs[k - 2])).transpose(),
    );
    let (right_matrix, right) = right?;
    let left = left?;
    let (matrix, left) = match left {
        Some((m, s)) => (direct_sum(&right_matrix, &negate(&m))?, Some(s)),
        None => (right_matrix, None),
    };
    let values = cs
        .iter()
        .map(|c| signature_at_rational(&matrix, c))
        .collect::<Result<Vec<_>>>()?;
    let pattern = values
        .iter()
        .enumerate()
        .all(|(i, &v)| if i + 1 == k { v.abs() == 2 } else { v == 0 });
    let checks = vec![
        Check::new("Kronecker pattern", pattern, format!("{values:?}")),
        Check::new(
            "valid classical Seifert matrix",
            validate_seifert(matrix.matrix().clone(), Parity::Classical).is_ok(),
            "",
        ),
    ];
    require(&checks)?;
    Ok(IndependenceCertificate { matrix, right, left, values, checks })
}
