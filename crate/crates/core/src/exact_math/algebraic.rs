//! Real root isolation by Sturm sequences and exact sign determination at
//! real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{
    exact_div, format_rational, int_gcd, parse_rational, rat, sign_of, square_free_factors,
    IntPolynomial, RatPolynomial,
};
use crate::error::{Error, Result};

/// Canonical Sturm chain of a square-free polynomial. Each member is kept
/// as a primitive integer polynomial; positive rescaling does not change
/// sign variations.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].to_rat().rem(&chain[n - 1].to_rat());
            if r.is_zero() {
                break;
            }
            // primitive part with positive leading coefficient, then negate
            let prim = r.to_int_primitive();
            let lead_sign = r.leading().map(sign_of).unwrap_or(1);
            let member = if lead_sign > 0 { -&prim } else { prim };
            chain.push(member);
        }
        SturmChain { chain }
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        let signs = self
            .chain
            .iter()
            .map(|q| sign_of(&q.eval(x)))
            .filter(|&s| s != 0);
        count_variations(signs)
    }

    /// Number of distinct roots in the open interval `(a, b)`; requires the
    /// polynomial to be nonzero at both endpoints.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// A real algebraic number: a square-free primitive polynomial with exactly
/// one root strictly inside `(lo, hi)` and no root at either endpoint.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    /// Validates the isolating interval with a Sturm count.
    pub fn new(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if minpoly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("minimal polynomial must be nonconstant".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument("interval must satisfy lo < hi".into()));
        }
        let sf = square_free_factors(&minpoly);
        if sf.len() != 1 || sf[0].1 != 1 {
            return Err(Error::InvalidArgument("minimal polynomial must be square-free".into()));
        }
        let minpoly = minpoly.primitive_part();
        if minpoly.eval(&lo).is_zero() || minpoly.eval(&hi).is_zero() {
            return Err(Error::InvalidArgument("interval endpoint is a root".into()));
        }
        if SturmChain::new(&minpoly).count(&lo, &hi) != 1 {
            return Err(Error::InvalidArgument("interval does not isolate exactly one root".into()));
        }
        Ok(AlgebraicReal { minpoly, lo, hi })
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let one = BigRational::one();
        AlgebraicReal {
            minpoly: IntPolynomial::linear_root(r).primitive_part(),
            lo: r - &one,
            hi: r + &one,
        }
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.minpoly.degree() == Some(1) {
            let c = self.minpoly.coeffs();
            Some(BigRational::new(-c[0].clone(), c[1].clone()))
        } else {
            None
        }
    }

    /// Sturm variation count over the isolating interval; always 1.
    pub fn sturm_count(&self) -> usize {
        SturmChain::new(&self.minpoly).count(&self.lo, &self.hi)
    }

    /// Halves the isolating interval. A rational root hit by the midpoint
    /// collapses the minimal polynomial to degree one.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let v_mid = self.minpoly.eval(&mid);
        if v_mid.is_zero() {
            self.minpoly = IntPolynomial::linear_root(&mid).primitive_part();
            let quarter = self.width() / BigRational::from_integer(BigInt::from(4));
            self.lo = &mid - &quarter;
            self.hi = &mid + &quarter;
            return;
        }
        let v_lo = self.minpoly.eval(&self.lo);
        if sign_of(&v_lo) != sign_of(&v_mid) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to_width(&mut self, w: &BigRational) {
        while &self.width() > w {
            self.bisect();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to_width(&rat(1, 1 << 52));
        if let Some(r) = a.as_rational() {
            return ratio_to_f64(&r);
        }
        ratio_to_f64(&((&a.lo + &a.hi) / BigRational::from_integer(BigInt::from(2))))
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(r);
        }
        let mut a = self.clone();
        loop {
            if r <= &a.lo {
                return Ordering::Greater;
            }
            if r >= &a.hi {
                return Ordering::Less;
            }
            if a.minpoly.eval(r).is_zero() {
                return Ordering::Equal;
            }
            a.bisect();
            if let Some(q) = a.as_rational() {
                return q.cmp(r);
            }
        }
    }

    /// Exact total order. Equality is decided by a common factor of the
    /// minimal polynomials that changes sign on both isolating intervals.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(&r).reverse();
        }
        let g = int_gcd(&self.minpoly, &other.minpoly);
        let shared = g.degree().unwrap_or(0) > 0
            && changes_sign(&g, &self.lo, &self.hi)
            && changes_sign(&g, &other.lo, &other.hi);
        let chain = shared.then(|| SturmChain::new(&g));
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(chain) = &chain {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                if chain.count(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }

    /// `k·α` for a positive rational `k`.
    pub fn scaled(&self, k: &BigRational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        // m(x/k)·k^deg has the scaled root; coefficients m_i k^{deg−i}.
        let deg = self.minpoly.degree().unwrap_or(0);
        let coeffs: Vec<BigRational> = self
            .minpoly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| BigRational::from_integer(c.clone()) * pow_rat(k, deg - i))
            .collect();
        Ok(AlgebraicReal {
            minpoly: RatPolynomial::new(coeffs).to_int_primitive(),
            lo: &self.lo * k,
            hi: &self.hi * k,
        })
    }

    /// Two values are disjoint once neither interval touches the other.
    pub fn separate(a: &mut AlgebraicReal, b: &mut AlgebraicReal) {
        while !(a.hi <= b.lo || b.hi <= a.lo) {
            a.bisect();
            b.bisect();
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", format_rational(&r)),
            None => write!(
                f,
                "root of {} in ({}, {}) ≈ {:.6}",
                self.minpoly.display_in("x"),
                format_rational(&self.lo),
                format_rational(&self.hi),
                self.to_f64()
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRealJson {
    minpoly: Vec<serde_json::Value>,
    lo: String,
    hi: String,
}

impl Serialize for AlgebraicReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraicRealJson {
            minpoly: self.minpoly.coeffs().iter().map(bigint_to_json).collect(),
            lo: format_rational(&self.lo),
            hi: format_rational(&self.hi),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AlgebraicRealJson::deserialize(d)?;
        let coeffs = raw
            .minpoly
            .iter()
            .map(json_to_bigint)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let lo = parse_rational(&raw.lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&raw.hi).map_err(D::Error::custom)?;
        AlgebraicReal::new(IntPolynomial::new(coeffs), lo, hi).map_err(D::Error::custom)
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

pub fn json_to_bigint(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn pow_rat(k: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * k)
}

fn changes_sign(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> bool {
    sign_of(&p.eval(lo)) * sign_of(&p.eval(hi)) < 0
}

/// A root together with its multiplicity in the original polynomial.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub root: AlgebraicReal,
    pub multiplicity: usize,
}

/// Distinct real roots of `p` in the open window `(lo, hi)`, increasing.
pub fn sturm_isolate(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Vec<AlgebraicReal> {
    isolate_with_multiplicity(p, lo, hi)
        .into_iter()
        .map(|r| r.root)
        .collect()
}

/// Square-free factorization first, then Sturm bisection of each factor.
pub fn isolate_with_multiplicity(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<IsolatedRoot> {
    let mut out = Vec::new();
    if p.is_zero() || lo >= hi {
        return out;
    }
    for (factor, multiplicity) in square_free_factors(p) {
        let mut f = factor;
        for end in [lo, hi] {
            if f.eval(end).is_zero() {
                let lin = IntPolynomial::linear_root(end);
                f = exact_div(&f, &lin)
                    .expect("endpoint root divides")
                    .to_int_primitive();
            }
        }
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let chain = SturmChain::new(&f);
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            match chain.count(&a, &b) {
                0 => {}
                1 => out.push(IsolatedRoot {
                    root: AlgebraicReal { minpoly: f.clone(), lo: a, hi: b },
                    multiplicity,
                }),
                _ => {
                    let m = split_point(&f, &a, &b);
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
    }
    out.sort_by(|x, y| x.root.cmp_exact(&y.root));
    out
}

/// A rational strictly inside `(a, b)` that is not a root of `f`, tried in
/// the order 1/2, 1/3, 2/3, 1/4, 3/4, …
fn split_point(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> BigRational {
    let w = b - a;
    for den in 2i64.. {
        for num in 1..den {
            if num_integer::Integer::gcd(&num, &den) != 1 {
                continue;
            }
            let m = a + &w * rat(num, den);
            if !f.eval(&m).is_zero() {
                return m;
            }
        }
    }
    unreachable!()
}

/// Bounds of `p` over `[lo, hi]` by interval Horner evaluation.
fn interval_eval(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut acc_lo = BigRational::zero();
    let mut acc_hi = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let c = BigRational::from_integer(c.clone());
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        acc_lo = mn + &c;
        acc_hi = mx + &c;
    }
    (acc_lo, acc_hi)
}

/// Exact sign of `p(α)`. Zero iff the gcd of `p` with the minimal
/// polynomial vanishes at `α`; otherwise the interval is refined until the
/// interval image of `p` excludes zero.
pub fn algebraic_sign(p: &IntPolynomial, alpha: &AlgebraicReal) -> i8 {
    if p.is_zero() {
        return 0;
    }
    if let Some(r) = alpha.as_rational() {
        return sign_of(&p.eval(&r));
    }
    let g = int_gcd(p, &alpha.minpoly);
    if g.degree().unwrap_or(0) > 0 && changes_sign(&g, &alpha.lo, &alpha.hi) {
        return 0;
    }
    let mut a = alpha.clone();
    loop {
        let (l, h) = interval_eval(p, &a.lo, &a.hi);
        if l.is_positive() {
            return 1;
        }
        if h.is_negative() {
            return -1;
        }
        a.bisect();
        if let Some(r) = a.as_rational() {
            return sign_of(&p.eval(&r));
        }
    }
}

/// Sign of a rational-coefficient polynomial at `α`.
pub fn algebraic_sign_rat(p: &RatPolynomial, alpha: &AlgebraicReal) -> i8 {
    if p.is_zero() {
        return 0;
    }
    // to_int_primitive rescales by a constant whose sign matches the leading coefficient
    let s = p.leading().map(sign_of).unwrap_or(1);
    algebraic_sign(&p.to_int_primitive(), alpha) * s
}

/// Real parts `c_j = Re(ω_j)` of the unit roots of a palindromic polynomial
/// with positive imaginary part, strictly increasing, each in `(−1, 1)`.
pub fn unit_root_real_parts(delta: &IntPolynomial) -> Result<Vec<AlgebraicReal>> {
    Ok(unit_roots_with_multiplicity(delta)?
        .into_iter()
        .map(|r| r.root)
        .collect())
}

pub fn unit_roots_with_multiplicity(delta: &IntPolynomial) -> Result<Vec<IsolatedRoot>> {
    let q = delta.compress_palindrome()?;
    let two = BigRational::from_integer(BigInt::from(2));
    isolate_with_multiplicity(&q, &-two.clone(), &two)
        .into_iter()
        .map(|r| {
            Ok(IsolatedRoot {
                root: r.root.scaled(&rat(1, 2))?,
                multiplicity: r.multiplicity,
            })
        })
        .collect()
}
