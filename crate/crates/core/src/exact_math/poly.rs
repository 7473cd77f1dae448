//! Dense univariate polynomials over ℤ and ℚ, constant coefficient first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial. `coeffs[i]` is the coefficient of `t^i`; the zero
/// polynomial is the empty list and the last stored entry is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `den·t − num`, whose root is the given rational.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Strips factors of `t` and flips the sign so the constant coefficient is positive.
    pub fn normalize_unit(&self) -> Self {
        let start = self.coeffs.iter().position(|c| !c.is_zero());
        let Some(start) = start else {
            return Self::zero();
        };
        let mut out: Vec<BigInt> = self.coeffs[start..].to_vec();
        if out[0].is_negative() {
            out.iter_mut().for_each(|c| *c = -c.clone());
        }
        Self::new(out)
    }

    /// True iff `p_i = p_{deg−i}` for all `i`.
    pub fn is_palindromic(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.coeffs.len();
        Ok((0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]))
    }

    /// For palindromic `p` of degree `2g` with `p(0) ≠ 0`, returns `q` of
    /// degree `g` with `p(t) = t^g · q(t + 1/t)`.
    pub fn compress_palindrome(&self) -> Result<Self> {
        if !self.is_palindromic()? {
            return Err(Error::NotPalindromic);
        }
        let deg = self.degree().unwrap_or(0);
        if deg % 2 == 1 {
            return Err(Error::OddDegree(deg));
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let g = deg / 2;
        // t^k + t^{-k} = D_k(x) with D_0 = 2, D_1 = x, D_k = x·D_{k−1} − D_{k−2}.
        let mut q = Self::constant(self.coeffs[g].clone());
        let mut d_prev = Self::constant(BigInt::from(2));
        let mut d_cur = Self::x();
        for k in 1..=g {
            if k > 1 {
                let next = &(&Self::x() * &d_cur) - &d_prev;
                d_prev = std::mem::replace(&mut d_cur, next);
            }
            q = &q + &d_cur.scale(&self.coeffs[g + k]);
        }
        let expanded = q.expand_palindrome(g);
        if &expanded != self {
            return Err(Error::Verification(
                "palindromic compression failed to re-expand".into(),
            ));
        }
        Ok(q)
    }

    /// Inverse of [`compress_palindrome`](Self::compress_palindrome): returns
    /// `t^g · q(t + 1/t) = Σ q_j t^{g−j} (t² + 1)^j`.
    pub fn expand_palindrome(&self, g: usize) -> Self {
        let t2p1 = Self::from_i64s(&[1, 0, 1]);
        let mut out = Self::zero();
        let mut power = Self::one();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > g {
                break;
            }
            let mut shifted = vec![BigInt::zero(); g - j];
            shifted.extend(power.coeffs.iter().cloned());
            out = &out + &Self::new(shifted).scale(c);
            power = &power * &t2p1;
        }
        out
    }

    /// Substitutes `t ↦ k·t`.
    pub fn scale_variable(&self, k: &BigInt) -> Self {
        let mut pk = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pk);
            pk *= k;
        }
        Self::new(out)
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Constant-first comma separated form, e.g. `3,-6,5,-6,3`.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_csv(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Human readable form in the variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial over ℚ; used internally for division, gcd and Sturm chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r.to_int_primitive().to_rat());
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
    pub fn gcd_with_cofactor(a: &Self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), a.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lc_inv = r0.leading().map(|c| c.recip()).unwrap_or_else(BigRational::one);
        (r0.scale(&lc_inv), s0.scale(&lc_inv).rem(m))
    }

    /// Clears denominators and returns the primitive integer polynomial
    /// with positive leading coefficient.
    pub fn to_int_primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Integer gcd of two polynomials, primitive with positive leading coefficient.
pub fn int_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a.to_rat().gcd(&b.to_rat()).to_int_primitive()
}

/// Exact quotient `a / b` over ℚ, returned only when the division has no remainder.
pub fn exact_div(a: &IntPolynomial, b: &IntPolynomial) -> Option<RatPolynomial> {
    let (q, r) = a.to_rat().div_rem(&b.to_rat());
    r.is_zero().then_some(q)
}

/// Yun's square-free decomposition: primitive factors `f_i` with
/// `p = c · Π f_i^{m_i}`, each `f_i` square-free and pairwise coprime.
pub fn square_free_factors(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.to_rat();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_int_primitive(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Always `p/q`, including integers (`3/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(&e))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(&e))?;
            if d.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|e| bad(&e))?)),
    }
}
