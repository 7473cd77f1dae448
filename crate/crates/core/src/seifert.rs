//! Seifert matrices, Alexander polynomials and exact signature functions.
//!
//! For `ω = c + i·s` on the upper unit semicircle (`s = √(1 − c²)`), write
//! `S = V + Vᵀ` and `K = V − Vᵀ`. The Hermitian form `(1 − ω)V + (1 − ω̄)Vᵀ`
//! equals `(1 − c)S − i·s·K`; its real 2n×2n form `[[A, −B], [B, A]]` has
//! twice its inertia, and the congruence `diag(I, −I/s)` removes the square
//! root:
//!
//! ```text
//! classical:  [[(1 − c)·S, −K], [K, S/(1 + c)]]
//! high-dim:   [[S, −K], [K, (1 + c)/(1 − c)·S]]
//! ```
//!
//! The high-dimensional form `(ω − ω̄)((1 − ω)V − (1 − ω̄)Vᵀ)` reduces the
//! same way after dividing by the positive factor `2s²`. For evaluation at
//! algebraic points the polynomial-entry variants
//! `[[(1 − c)S, −(1 + c)K], [(1 + c)K, (1 + c)S]]` and
//! `[[S, −(1 − c)K], [(1 − c)K, (1 − c²)S]]` are used; they are congruent
//! to the above by `diag(I, (1 ± c)·I)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::poly::{rat, square_free_factors};
use crate::exact_math::{
    algebraic_sign, irreducible_factors, unit_root_real_parts, AlgebraicReal, IntPolynomial,
    RatPolynomial,
};
use crate::matrix::{
    inertia_at_algebraic, inertia_rational, is_primitive_sublattice, Inertia, IntMatrix, Matrix,
    PolyMatrix, RatMatrix,
};

/// Which unimodularity condition defines a Seifert matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `det(V − Vᵀ) = ±1`: knots in S³ and S^{4n+3}.
    Classical,
    /// `det(V + Vᵀ) = ±1`: knots in S^{4n+1}.
    #[serde(rename = "highdim")]
    HighDimSym,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Classical => "classical",
            Parity::HighDimSym => "highdim",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Parity::Classical),
            "highdim" => Ok(Parity::HighDimSym),
            other => Err(Error::Parse(format!("unknown parity {other:?}"))),
        }
    }
}

/// A validated Seifert matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
    parity: Parity,
}

impl SeifertMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// `V + Vᵀ`
    pub fn symmetrized(&self) -> IntMatrix {
        self.v.add(&self.v.transpose())
    }

    /// `V − Vᵀ`
    pub fn skew(&self) -> IntMatrix {
        self.v.sub(&self.v.transpose())
    }
}

/// Checks the parity condition and wraps the matrix.
pub fn validate_seifert(v: IntMatrix, parity: Parity) -> Result<SeifertMatrix> {
    v.require_square()?;
    let form = match parity {
        Parity::Classical => v.sub(&v.transpose()),
        Parity::HighDimSym => v.add(&v.transpose()),
    };
    let det = form.det()?;
    if det.abs() != BigInt::one() {
        return Err(Error::ParityViolation { parity, det });
    }
    if v.dim() % 2 != 0 {
        return Err(Error::DimensionMismatch(format!("odd dimension {}", v.dim())));
    }
    Ok(SeifertMatrix { v, parity })
}

/// Alexander polynomial as computed and up to units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    /// `det(V − tVᵀ)` (classical) or `det(tV + Vᵀ)` (high-dimensional).
    pub raw: IntPolynomial,
    /// Powers of `t` stripped, constant coefficient positive.
    pub normalized: IntPolynomial,
}

pub fn alexander_polynomial(k: &SeifertMatrix) -> AlexanderPolynomial {
    let n = k.dim();
    let v = &k.v;
    let vt = v.transpose();
    let at = |t: i64| -> BigInt {
        let t = BigInt::from(t);
        let m = match k.parity {
            Parity::Classical => v.sub(&vt.scale(&t)),
            Parity::HighDimSym => v.scale(&t).add(&vt),
        };
        m.det().expect("square")
    };
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigInt> = xs.par_iter().map(|&t| at(t)).collect();
    let raw = interpolate_integer(&xs, &ys);
    let normalized = raw.normalize_unit();
    AlexanderPolynomial { raw, normalized }
}

fn interpolate_integer(xs: &[i64], ys: &[BigInt]) -> IntPolynomial {
    let n = xs.len();
    let xr: Vec<BigRational> = xs.iter().map(|&x| rat(x, 1)).collect();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xr[i] - &xr[i - level]);
        }
    }
    let mut out = RatPolynomial::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = RatPolynomial::new(vec![-xr[i].clone(), BigRational::one()]);
        out = &(&out * &lin) + &RatPolynomial::constant(dd[i].clone());
    }
    IntPolynomial::new(
        out.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "determinant polynomial has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

fn check_open_unit(c: &BigRational) -> Result<()> {
    if c <= &rat(-1, 1) || c >= &rat(1, 1) {
        return Err(Error::OutOfDomain(crate::exact_math::format_rational(c)));
    }
    Ok(())
}

fn check_open_unit_algebraic(c: &AlgebraicReal) -> Result<()> {
    if c.cmp_rational(&rat(-1, 1)) != Ordering::Greater || c.cmp_rational(&rat(1, 1)) != Ordering::Less {
        return Err(Error::OutOfDomain(c.to_string()));
    }
    Ok(())
}

/// Rational symmetric matrix of doubled dimension whose inertia is twice the
/// inertia of the Hermitian form at `ω = c + i√(1 − c²)`.
pub fn hermitian_realification(k: &SeifertMatrix, c: &BigRational) -> Result<RatMatrix> {
    check_open_unit(c)?;
    let s = k.symmetrized().to_rat();
    let kk = k.skew().to_rat();
    let one = BigRational::one();
    let (top_left, bottom_right) = match k.parity {
        Parity::Classical => (s.scale(&(&one - c)), s.scale(&(&one + c).recip())),
        Parity::HighDimSym => (s.clone(), s.scale(&((&one + c) / (&one - c)))),
    };
    Ok(Matrix::blocks(&top_left, &kk.neg(), &kk, &bottom_right))
}

/// Realification with entries polynomial in `c`, congruent (for `c` in
/// `(−1, 1)`) to [`hermitian_realification`].
pub fn realification_poly(k: &SeifertMatrix) -> PolyMatrix {
    let s = k.symmetrized();
    let kk = k.skew();
    let lin = |a: i64, b: i64| RatPolynomial::new(vec![rat(a, 1), rat(b, 1)]);
    let (tl, off, br) = match k.parity {
        Parity::Classical => (lin(1, -1), lin(1, 1), lin(1, 1)),
        Parity::HighDimSym => (
            lin(1, 0),
            lin(1, -1),
            RatPolynomial::new(vec![rat(1, 1), rat(0, 1), rat(-1, 1)]),
        ),
    };
    let n = k.dim();
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (ii, jj) = (i % n, j % n);
        let (entry, factor) = match (bi, bj) {
            (0, 0) => (s[(ii, jj)].clone(), &tl),
            (0, 1) => (-kk[(ii, jj)].clone(), &off),
            (1, 0) => (kk[(ii, jj)].clone(), &off),
            _ => (s[(ii, jj)].clone(), &br),
        };
        factor.scale(&BigRational::from_integer(entry))
    })
}

/// Signature and nullity of the Hermitian form at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormInertia {
    pub signature: i64,
    pub nullity: usize,
}

impl FormInertia {
    fn from_realified(i: Inertia) -> Self {
        debug_assert!(i.signature() % 2 == 0 && i.n_zero % 2 == 0);
        FormInertia { signature: i.signature() / 2, nullity: i.n_zero / 2 }
    }
}

pub fn form_inertia_at_rational(k: &SeifertMatrix, c: &BigRational) -> Result<FormInertia> {
    let m = hermitian_realification(k, c)?;
    Ok(FormInertia::from_realified(inertia_rational(&m)?))
}

pub fn form_inertia_at_algebraic(k: &SeifertMatrix, c: &AlgebraicReal) -> Result<FormInertia> {
    check_open_unit_algebraic(c)?;
    if let Some(r) = c.as_rational() {
        return form_inertia_at_rational(k, &r);
    }
    let m = realification_poly(k);
    Ok(FormInertia::from_realified(inertia_at_algebraic(&m, c)?))
}

/// `σ_ω(K)` at `ω = c + i√(1 − c²)`.
pub fn signature_at_rational(k: &SeifertMatrix, c: &BigRational) -> Result<i64> {
    Ok(form_inertia_at_rational(k, c)?.signature)
}

/// `σ_ω(K)` at `ω = α + i√(1 − α²)` for a real algebraic `α`.
pub fn signature_at_algebraic(k: &SeifertMatrix, c: &AlgebraicReal) -> Result<i64> {
    Ok(form_inertia_at_algebraic(k, c)?.signature)
}

/// Same as [`signature_at_algebraic`] but never short-circuits rational
/// inputs to the rational path.
pub fn signature_at_algebraic_symbolic(k: &SeifertMatrix, c: &AlgebraicReal) -> Result<i64> {
    check_open_unit_algebraic(c)?;
    let m = realification_poly(k);
    Ok(FormInertia::from_realified(inertia_at_algebraic(&m, c)?).signature)
}

/// `c ↦ σ(c)` on `(−1, 1)` as a step function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureStepFunction {
    pub breakpoints: Vec<AlgebraicReal>,
    /// One value per open gap, left to right; `breakpoints.len() + 1` entries.
    pub interval_values: Vec<i64>,
    pub point_values: Vec<i64>,
    /// A rational inside each gap at which the interval value was computed.
    #[serde(skip)]
    pub samples: Vec<BigRational>,
}

impl SignatureStepFunction {
    /// Index of the breakpoint equal to `x`, or `Err(gap)` with the gap that
    /// contains it.
    pub fn locate(&self, x: &AlgebraicReal) -> std::result::Result<usize, usize> {
        for (i, b) in self.breakpoints.iter().enumerate() {
            match x.cmp_exact(b) {
                Ordering::Less => return Err(i),
                Ordering::Equal => return Ok(i),
                Ordering::Greater => {}
            }
        }
        Err(self.breakpoints.len())
    }

    pub fn value_at(&self, x: &AlgebraicReal) -> i64 {
        match self.locate(x) {
            Ok(i) => self.point_values[i],
            Err(g) => self.interval_values[g],
        }
    }

    /// Two-sided average of the one-sided limits at `x`.
    pub fn averaged_at(&self, x: &AlgebraicReal) -> Rational64 {
        match self.locate(x) {
            Ok(i) => Rational64::new(self.interval_values[i] + self.interval_values[i + 1], 2),
            Err(g) => Rational64::from_integer(self.interval_values[g]),
        }
    }

    /// Jump `right − left` at each breakpoint.
    pub fn jumps(&self) -> Vec<i64> {
        self.interval_values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.interval_values.iter().chain(&self.point_values).all(|&v| v == 0)
    }
}

/// Refines isolating intervals until they are pairwise disjoint and lie
/// strictly inside `(−1, 1)`.
pub fn separate_breakpoints(points: &mut [AlgebraicReal]) {
    let (lo, hi) = (rat(-1, 1), rat(1, 1));
    for p in points.iter_mut() {
        while p.lo() <= &lo || p.hi() >= &hi {
            p.bisect();
        }
    }
    for i in 1..points.len() {
        let (left, right) = points.split_at_mut(i);
        AlgebraicReal::separate(&mut left[i - 1], &mut right[0]);
    }
}

/// Rational sample points strictly inside each gap: midpoints of
/// `(−1, lo₁), (hi₁, lo₂), …, (hi_k, 1)`.
pub fn gap_samples(points: &[AlgebraicReal]) -> Vec<BigRational> {
    let two = rat(2, 1);
    let mut edges = vec![rat(-1, 1)];
    for p in points {
        edges.push(p.lo().clone());
        edges.push(p.hi().clone());
    }
    edges.push(rat(1, 1));
    edges.chunks(2).map(|w| (&w[0] + &w[1]) / &two).collect()
}

pub fn signature_step_function(k: &SeifertMatrix) -> Result<SignatureStepFunction> {
    let delta = alexander_polynomial(k).normalized;
    let mut breakpoints = if delta.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        unit_root_real_parts(&delta)?
    };
    separate_breakpoints(&mut breakpoints);
    let samples = gap_samples(&breakpoints);
    let interval_values = samples
        .par_iter()
        .map(|c| signature_at_rational(k, c))
        .collect::<Result<Vec<_>>>()?;
    let point_values = breakpoints
        .par_iter()
        .map(|b| signature_at_algebraic(k, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignatureStepFunction { breakpoints, interval_values, point_values, samples })
}

/// `σ*` at `c`: average of the left and right limits.
pub fn averaged_signature(k: &SeifertMatrix, c: &AlgebraicReal) -> Result<Rational64> {
    check_open_unit_algebraic(c)?;
    Ok(signature_step_function(k)?.averaged_at(c))
}

pub fn direct_sum(a: &SeifertMatrix, b: &SeifertMatrix) -> Result<SeifertMatrix> {
    if a.parity != b.parity {
        return Err(Error::ParityMismatch(a.parity, b.parity));
    }
    Ok(SeifertMatrix { v: a.v.direct_sum(&b.v), parity: a.parity })
}

pub fn negate(k: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix { v: k.v.neg(), parity: k.parity }
}

/// Basis of a claimed half-rank summand on which the form vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolizerCertificate {
    pub rows: IntMatrix,
}

impl MetabolizerCertificate {
    /// The first `g` standard basis vectors of `ℤ^{2g}`.
    pub fn leading_coordinates(dim: usize) -> Self {
        let g = dim / 2;
        MetabolizerCertificate {
            rows: Matrix::from_fn(g, dim, |i, j| if i == j { BigInt::one() } else { BigInt::zero() }),
        }
    }
}

pub fn verify_metabolizer(k: &SeifertMatrix, cert: &MetabolizerCertificate) -> Result<bool> {
    let n = k.dim();
    if cert.rows.cols() != n || cert.rows.rows() * 2 != n {
        return Err(Error::DimensionMismatch(format!(
            "certificate is {}x{}, expected {}x{}",
            cert.rows.rows(),
            cert.rows.cols(),
            n / 2,
            n
        )));
    }
    let rows = cert.rows.to_rows();
    let vanishes = rows
        .iter()
        .all(|v| rows.iter().all(|w| k.v.bilinear(v, w).is_zero()));
    if !vanishes {
        return Ok(false);
    }
    match is_primitive_sublattice(&cert.rows) {
        Ok(p) => Ok(p),
        Err(Error::RankDeficient) => Ok(false),
        Err(e) => Err(e),
    }
}

/// For every irreducible factor of `Δ_K`, the point values of the step
/// function at that factor's unit roots share one parity.
pub fn galois_parity_property(k: &SeifertMatrix) -> Result<bool> {
    let sf = signature_step_function(k)?;
    galois_parity_of(k, &sf)
}

pub fn galois_parity_of(k: &SeifertMatrix, sf: &SignatureStepFunction) -> Result<bool> {
    if sf.breakpoints.is_empty() {
        return Ok(true);
    }
    let delta = alexander_polynomial(k).normalized;
    // breakpoints are roots of q(2c) where Δ(t) = t^g q(t + 1/t)
    let q = delta.compress_palindrome()?;
    let qc = q.scale_variable(&BigInt::from(2)).primitive_part();
    let radical = square_free_factors(&qc)
        .into_iter()
        .fold(IntPolynomial::one(), |acc, (f, _)| &acc * &f);
    let factors = irreducible_factors(&radical)?;
    let mut parity_of_factor: Vec<Option<i64>> = vec![None; factors.len()];
    for (b, &value) in sf.breakpoints.iter().zip(&sf.point_values) {
        let idx = factors
            .iter()
            .position(|f| algebraic_sign(f, b) == 0)
            .ok_or_else(|| Error::Verification("breakpoint not a root of any factor".into()))?;
        let parity = value.rem_euclid(2);
        match parity_of_factor[idx] {
            None => parity_of_factor[idx] = Some(parity),
            Some(p) if p != parity => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SeifertMatrix {
        validate_seifert(IntMatrix::from_i64_rows(&[&[-1, 1], &[0, -1]]), Parity::Classical).unwrap()
    }

    fn hyperbolic() -> SeifertMatrix {
        validate_seifert(IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]), Parity::Classical).unwrap()
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn validate_examples() {
        trefoil();
        hyperbolic();
        let err = validate_seifert(IntMatrix::identity(2), Parity::Classical).unwrap_err();
        assert_eq!(err, Error::ParityViolation { parity: Parity::Classical, det: BigInt::zero() });
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_polynomial(&trefoil()).normalized, p(&[1, -1, 1]));
        let h = alexander_polynomial(&hyperbolic());
        assert_eq!(h.raw, p(&[0, 1]));
        assert_eq!(h.normalized, p(&[1]));
    }

    #[test]
    fn realification_anchor() {
        let m = hermitian_realification(&trefoil(), &rat(0, 1)).unwrap();
        let expected = IntMatrix::from_i64_rows(&[
            &[-2, 1, 0, -1],
            &[1, -2, 1, 0],
            &[0, 1, -2, 1],
            &[-1, 0, 1, -2],
        ])
        .to_rat();
        assert_eq!(m, expected);
        let h = hermitian_realification(&hyperbolic(), &rat(0, 1)).unwrap();
        assert!(h.is_symmetric() && h.dim() == 4);
        assert_eq!(inertia_rational(&h).unwrap(), Inertia::new(2, 0, 2));
        assert!(hermitian_realification(&trefoil(), &rat(1, 1)).is_err());
    }

    #[test]
    fn trefoil_signatures() {
        let t = trefoil();
        assert_eq!(signature_at_rational(&t, &rat(0, 1)).unwrap(), -2);
        assert_eq!(signature_at_rational(&t, &rat(3, 4)).unwrap(), 0);
        assert_eq!(signature_at_rational(&t, &rat(1, 2)).unwrap(), -1);
        let half = AlgebraicReal::from_rational(&rat(1, 2));
        assert_eq!(signature_at_algebraic_symbolic(&t, &half).unwrap(), -1);
        for c in [rat(-9, 10), rat(0, 1), rat(7, 8)] {
            assert_eq!(signature_at_rational(&hyperbolic(), &c).unwrap(), 0);
        }
    }

    #[test]
    fn trefoil_step_function() {
        let sf = signature_step_function(&trefoil()).unwrap();
        assert_eq!(sf.breakpoints.len(), 1);
        assert_eq!(sf.breakpoints[0].cmp_rational(&rat(1, 2)), Ordering::Equal);
        assert_eq!(sf.interval_values, vec![-2, 0]);
        assert_eq!(sf.point_values, vec![-1]);
        let half = AlgebraicReal::from_rational(&rat(1, 2));
        assert_eq!(averaged_signature(&trefoil(), &half).unwrap(), Rational64::from_integer(-1));
        let hs = signature_step_function(&hyperbolic()).unwrap();
        assert!(hs.breakpoints.is_empty());
        assert_eq!(hs.interval_values, vec![0]);
    }

    #[test]
    fn averaged_off_breakpoint_is_value() {
        let t = trefoil();
        let c = rat(-1, 3);
        let a = averaged_signature(&t, &AlgebraicReal::from_rational(&c)).unwrap();
        assert_eq!(a, Rational64::from_integer(signature_at_rational(&t, &c).unwrap()));
    }

    #[test]
    fn sums_and_negation() {
        let t = trefoil();
        let tt = direct_sum(&t, &t).unwrap();
        assert_eq!(signature_at_rational(&tt, &rat(0, 1)).unwrap(), -4);
        let cancel = direct_sum(&t, &negate(&t)).unwrap();
        for c in [rat(-1, 2), rat(0, 1), rat(1, 2), rat(2, 3)] {
            assert_eq!(signature_at_rational(&cancel, &c).unwrap(), 0);
        }
        assert_eq!(signature_at_rational(&negate(&t), &rat(0, 1)).unwrap(), 2);
        assert_eq!(direct_sum(&hyperbolic(), &tt).unwrap().dim(), 6);
        assert_eq!(
            alexander_polynomial(&negate(&t)).normalized,
            alexander_polynomial(&t).normalized
        );
        let hd = validate_seifert(IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]), Parity::HighDimSym).unwrap();
        assert_eq!(
            direct_sum(&t, &hd).unwrap_err(),
            Error::ParityMismatch(Parity::Classical, Parity::HighDimSym)
        );
    }

    #[test]
    fn metabolizer_examples() {
        let row = |v: &[i64]| MetabolizerCertificate { rows: IntMatrix::from_i64_rows(&[v]) };
        assert!(!verify_metabolizer(&trefoil(), &row(&[1, 0])).unwrap());
        assert!(verify_metabolizer(&hyperbolic(), &row(&[1, 0])).unwrap());
        assert!(verify_metabolizer(&hyperbolic(), &row(&[1, 0, 0])).is_err());
        // vanishing but not primitive
        assert!(!verify_metabolizer(&hyperbolic(), &row(&[2, 0])).unwrap());
    }

    #[test]
    fn galois_parity_trivial_cases() {
        assert!(galois_parity_property(&trefoil()).unwrap());
        assert!(galois_parity_property(&hyperbolic()).unwrap());
    }

    #[test]
    fn realification_polynomial_form_is_congruent() {
        let t = trefoil();
        for c in [rat(-3, 5), rat(1, 7), rat(1, 2), rat(5, 6)] {
            let a = inertia_rational(&hermitian_realification(&t, &c).unwrap()).unwrap();
            let b = inertia_rational(&realification_poly(&t).eval(&c)).unwrap();
            assert_eq!(a, b);
        }
    }
}
