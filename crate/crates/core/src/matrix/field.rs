use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::exact_math::algebraic::{algebraic_sign, AlgebraicReal};
use crate::exact_math::factor::irreducible_factors;
use crate::exact_math::IntPolynomial;
use crate::exact_math::poly::sign_of;
use crate::exact_math::RatPolynomial;

/// Exact field arithmetic. Zero tests and inversion take `&mut self` so an
/// implementation may refine its internal presentation on the fly.
pub trait ExactField {
    type El: Clone;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&mut self, a: &Self::El) -> bool;
    /// Caller guarantees `!is_zero(a)`.
    fn inv(&mut self, a: &Self::El) -> Self::El;
}

/// ℚ
pub struct Rationals;

impl ExactField for Rationals {
    type El = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&mut self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&mut self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Element of `ℚ[x]/(m)`: an integer numerator polynomial over a positive
/// common denominator, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Residue {
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Residue {
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return Residue { num, den: BigInt::one() };
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        Residue { num, den }
    }

    pub fn from_rat_poly(p: &RatPolynomial) -> Residue {
        let den = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Residue::normalized(num, den)
    }

    pub fn to_rat_poly(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.num
                .iter()
                .map(|c| BigRational::new(c.clone(), self.den.clone()))
                .collect(),
        )
    }

    /// Numerator as an integer polynomial; same sign as the element.
    pub fn numerator(&self) -> IntPolynomial {
        IntPolynomial::new(self.num.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

/// `ℚ[x]/(m)` where `m` is the square-free minimal polynomial of `α`,
/// treated as the field `ℚ(α)`. Small moduli are factored up front; otherwise
/// when `m` turns out to be reducible (a zero divisor shows up) the modulus
/// is replaced by the factor that vanishes at `α`, which keeps every later
/// computation a valid image in `ℚ(α)`.
pub struct AlgebraicResidues {
    /// Primitive, positive leading coefficient.
    modulus: Vec<BigInt>,
    alpha: AlgebraicReal,
    irreducible: bool,
}

const FACTOR_UP_FRONT_DEGREE: usize = 6;

impl AlgebraicResidues {
    pub fn new(alpha: &AlgebraicReal) -> Self {
        let m = alpha.minpoly().primitive_part();
        let mut field = AlgebraicResidues {
            modulus: m.coeffs().to_vec(),
            alpha: alpha.clone(),
            irreducible: m.degree().unwrap_or(0) <= 1,
        };
        if !field.irreducible && m.degree().unwrap_or(0) <= FACTOR_UP_FRONT_DEGREE {
            if let Ok(factors) = irreducible_factors(&m) {
                if let Some(f) = factors.iter().find(|f| field.vanishes_at_alpha(f)) {
                    field.modulus = f.coeffs().to_vec();
                    field.irreducible = true;
                }
            }
        }
        field
    }

    pub fn modulus(&self) -> IntPolynomial {
        IntPolynomial::new(self.modulus.clone())
    }

    pub fn reduce(&self, p: &RatPolynomial) -> Residue {
        self.reduce_residue(Residue::from_rat_poly(p))
    }

    fn reduce_residue(&self, r: Residue) -> Residue {
        let Residue { mut num, mut den } = r;
        let d = self.modulus.len() - 1;
        let lead = &self.modulus[d];
        let mut changed = false;
        while num.len() > d {
            let c = num.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            changed = true;
            // x^k ≡ −x^{k−d}·(m − lead·x^d)/lead
            if !lead.is_one() {
                num.iter_mut().for_each(|x| *x *= lead);
                den *= lead;
            }
            let shift = num.len() - d;
            for (i, mi) in self.modulus[..d].iter().enumerate() {
                num[shift + i] -= &c * mi;
            }
        }
        if changed {
            Residue::normalized(num, den)
        } else {
            Residue { num, den }
        }
    }

    fn vanishes_at_alpha(&self, g: &IntPolynomial) -> bool {
        let a = sign_of(&g.eval(self.alpha.lo()));
        let b = sign_of(&g.eval(self.alpha.hi()));
        a * b < 0
    }

    /// Splits the modulus along a nontrivial factor `g`; returns whether
    /// `α` is a root of `g`.
    fn split(&mut self, g: &RatPolynomial) -> bool {
        let gi = g.to_int_primitive();
        if self.vanishes_at_alpha(&gi) {
            self.modulus = gi.primitive_part().coeffs().to_vec();
            true
        } else {
            let m = self.modulus().to_rat();
            self.modulus = m.div_rem(g).0.to_int_primitive().primitive_part().coeffs().to_vec();
            false
        }
    }

    /// Sign of `r` at `α`.
    pub fn sign(&self, r: &Residue) -> i8 {
        if r.is_zero() {
            0
        } else {
            algebraic_sign(&r.numerator(), &self.alpha)
        }
    }
}

impl ExactField for AlgebraicResidues {
    type El = Residue;
    fn zero(&self) -> Residue {
        Residue { num: Vec::new(), den: BigInt::one() }
    }
    fn one(&self) -> Residue {
        Residue { num: vec![BigInt::one()], den: BigInt::one() }
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let n = a.num.len().max(b.num.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        if a.den == b.den {
            let num = (0..n).map(|i| get(&a.num, i) + get(&b.num, i)).collect();
            return Residue::normalized(num, a.den.clone());
        }
        let num = (0..n)
            .map(|i| get(&a.num, i) * &b.den + get(&b.num, i) * &a.den)
            .collect();
        Residue::normalized(num, &a.den * &b.den)
    }
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        let neg = Residue { num: b.num.iter().map(|c| -c).collect(), den: b.den.clone() };
        self.add(a, &neg)
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut num = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            for (j, y) in b.num.iter().enumerate() {
                num[i + j] += x * y;
            }
        }
        self.reduce_residue(Residue::normalized(num, &a.den * &b.den))
    }
    fn is_zero(&mut self, a: &Residue) -> bool {
        let r = self.reduce_residue(a.clone());
        if r.is_zero() {
            return true;
        }
        if self.irreducible {
            return false;
        }
        let m = self.modulus().to_rat();
        let g = r.to_rat_poly().gcd(&m);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        self.split(&g)
    }
    fn inv(&mut self, a: &Residue) -> Residue {
        loop {
            let r = self.reduce_residue(a.clone());
            let m = self.modulus().to_rat();
            let (g, s) = RatPolynomial::gcd_with_cofactor(&r.to_rat_poly(), &m);
            if g.degree() == Some(0) {
                let s = s.scale(&g.coeff(0).recip());
                return self.reduce(&s);
            }
            assert!(!self.split(&g), "inverse of an element vanishing at alpha");
        }
    }
}

/// Inertia of a symmetric matrix by congruence elimination: 1×1 pivots on
/// nonzero diagonal entries, and `e_i ← e_i + e_j` when the remaining
/// diagonal vanishes but `a_ij` does not. Pivot signs come from `sign`.
pub fn congruence_inertia<F: ExactField>(
    field: &mut F,
    m: &Matrix<F::El>,
    mut sign: impl FnMut(&F, &F::El) -> i8,
) -> (usize, usize, usize) {
    let n = m.rows();
    let mut a = m.to_rows();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let pivot = match (k..n).find(|&i| !field.is_zero(&a[i][i])) {
            Some(i) => i,
            None => {
                let mut pair = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !field.is_zero(&a[i][j]) {
                            pair = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = pair else {
                    break;
                };
                for t in k..n {
                    a[i][t] = field.add(&a[i][t], &a[j][t]);
                }
                for t in k..n {
                    a[t][i] = field.add(&a[t][i], &a[t][j]);
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let p = a[k][k].clone();
        match sign(field, &p) {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot vanishes"),
        }
        let p_inv = field.inv(&p);
        for r in k + 1..n {
            let f = field.mul(&a[r][k], &p_inv);
            if field.is_zero(&f) {
                continue;
            }
            for c in r..n {
                let v = field.mul(&f, &a[k][c]);
                a[r][c] = field.sub(&a[r][c], &v);
            }
        }
        for r in k + 1..n {
            for c in r + 1..n {
                a[c][r] = a[r][c].clone();
            }
        }
        k += 1;
    }
    (pos, n - pos - neg, neg)
}

/// Characteristic polynomial `det(xI − M)` via reduction to upper
/// Hessenberg form. Coefficients are returned constant term first.
pub fn hessenberg_char_poly<F: ExactField>(field: &mut F, m: &Matrix<F::El>) -> Vec<F::El> {
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| !field.is_zero(&h[(i, col)])) else {
            continue;
        };
        if i != piv_row {
            for j in 0..n {
                let tmp = h[(i, j)].clone();
                h[(i, j)] = h[(piv_row, j)].clone();
                h[(piv_row, j)] = tmp;
            }
            for j in 0..n {
                let tmp = h[(j, i)].clone();
                h[(j, i)] = h[(j, piv_row)].clone();
                h[(j, piv_row)] = tmp;
            }
        }
        let t = field.inv(&h[(piv_row, col)]);
        for i in piv_row + 1..n {
            let u = field.mul(&h[(i, col)], &t);
            if field.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let v = field.mul(&u, &h[(piv_row, j)]);
                h[(i, j)] = field.sub(&h[(i, j)], &v);
            }
            for j in 0..n {
                let v = field.mul(&u, &h[(j, i)]);
                h[(j, piv_row)] = field.add(&h[(j, piv_row)], &v);
            }
        }
    }
    // p_k = (x − h_kk)·p_{k−1} − Σ_{i<k} h_{ik}·(Π_{j=i+1}^{k} h_{j,j−1})·p_{i−1}
    let mut polys: Vec<Vec<F::El>> = vec![vec![field.one()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![field.zero(); k + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = field.add(&next[d + 1], c);
            let hc = field.mul(&h[(k, k)], c);
            next[d] = field.sub(&next[d], &hc);
        }
        let mut t = field.one();
        for i in (0..k).rev() {
            t = field.mul(&t, &h[(i + 1, i)]);
            let coef = field.mul(&t, &h[(i, k)]);
            for (d, c) in polys[i].iter().enumerate() {
                let v = field.mul(&coef, c);
                next[d] = field.sub(&next[d], &v);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_default()
}
