//! Exact dense matrices over ℤ, ℚ and ℚ[x].
//!
//! Inertia of a symmetric matrix is read off its characteristic polynomial:
//! the polynomial is real-rooted, so the number of zero eigenvalues is the
//! number of vanishing low-order coefficients and the number of positive
//! eigenvalues is the Descartes sign-variation count of the rest.

mod field;
mod smith;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::poly::sign_of;
use crate::exact_math::{AlgebraicReal, RatPolynomial};

pub use field::{congruence_inertia, hessenberg_char_poly, AlgebraicResidues, ExactField, Rationals, Residue};
pub use smith::{is_primitive_sublattice, smith_invariants};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;
/// Matrix whose entries are polynomials in one variable.
pub type PolyMatrix = Matrix<RatPolynomial>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>
        + std::ops::Neg<Output = T>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x * k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| &acc + &(&self[(i, k)] * &other[(k, j)]))
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Assembles a 2×2 block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a[(i, j)].clone(),
                (true, false) => b[(i, j - a.cols)].clone(),
                (false, true) => c[(i - a.rows, j)].clone(),
                (false, false) => d[(i - a.rows, j - a.cols)].clone(),
            }
        })
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("rectangular rows")
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        Ok(bareiss(self.to_rows()))
    }

    /// `vᵀ·M·w`
    pub fn bilinear(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                acc += &v[i] * &self[(i, j)] * &w[j];
            }
        }
        acc
    }
}

impl RatMatrix {
    /// Determinant: each row is cleared of denominators, then Bareiss.
    pub fn det(&self) -> Result<BigRational> {
        self.require_square()?;
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter()
                    .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        Ok(BigRational::new(bareiss(rows), scale))
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].recip();
            for j in 0..n {
                a[col][j] *= &p;
                inv[col][j] *= &p;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let (x, y) = (&f * &a[col][j], &f * &inv[col][j]);
                    a[i][j] -= x;
                    inv[i][j] -= y;
                }
            }
        }
        Matrix::from_rows(inv).ok()
    }
}

impl PolyMatrix {
    /// Entrywise evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> RatMatrix {
        self.map(|p| p.eval(x))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Monic `det(xI − M)` by interpolation of fraction-free determinants at
/// `dim + 1` integer points.
pub fn char_poly_exact(m: &RatMatrix) -> Result<RatPolynomial> {
    m.require_square()?;
    let n = m.dim();
    // M = N / L with N integral; det(xI − M) = L^{−n} det(L x I − N).
    let l = m.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lr = BigRational::from_integer(l.clone());
    let scaled: IntMatrix = m.map(|x| (x * &lr).to_integer());
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            let shifted = Matrix::from_fn(n, n, |i, j| {
                let d = if i == j { x.clone() } else { BigInt::zero() };
                d - &scaled[(i, j)]
            });
            bareiss(shifted.to_rows())
        })
        .collect();
    let p = newton_interpolate(&xs, &ys);
    // coefficient of x^i picks up L^{i−n}
    let coeffs: Vec<BigRational> = (0..=n)
        .map(|i| {
            let c = p.coeff(i);
            let e = n - i;
            c / BigRational::from_integer(num_traits::pow(l.clone(), e))
        })
        .collect();
    let out = RatPolynomial::new(coeffs);
    if out.leading() != Some(&BigRational::one()) || out.degree() != Some(n) {
        return Err(Error::Verification("characteristic polynomial is not monic".into()));
    }
    Ok(out)
}

fn newton_interpolate(xs: &[BigInt], ys: &[BigInt]) -> RatPolynomial {
    let n = xs.len();
    let xr: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
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
    out
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Inertia { n_plus, n_zero, n_minus }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Inertia of a real-rooted monic polynomial given the signs of its
    /// coefficients, constant term first.
    pub fn from_coefficient_signs(signs: &[i8]) -> Self {
        let n = signs.len().saturating_sub(1);
        let n_zero = signs.iter().take_while(|&&s| s == 0).count().min(n);
        let mut last = 0i8;
        let mut n_plus = 0;
        for &s in signs.iter().skip(n_zero).filter(|&&s| s != 0) {
            if last != 0 && s != last {
                n_plus += 1;
            }
            last = s;
        }
        Inertia::new(n_plus, n_zero, n - n_zero - n_plus)
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Exact inertia of a symmetric rational matrix.
pub fn inertia_rational(m: &RatMatrix) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(m.require_square().err().unwrap_or(Error::NotSymmetric));
    }
    let (p, z, n) = congruence_inertia(&mut Rationals, m, |_, x| sign_of(x));
    Ok(Inertia::new(p, z, n))
}

/// Inertia from the signs of the characteristic polynomial's coefficients
/// (Descartes' rule is exact for real-rooted polynomials). Slower than
/// [`inertia_rational`]; kept as an independent route.
pub fn inertia_by_char_poly(m: &RatMatrix) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(m.require_square().err().unwrap_or(Error::NotSymmetric));
    }
    let cp = char_poly_exact(m)?;
    let signs: Vec<i8> = (0..=m.dim()).map(|i| sign_of(&cp.coeff(i))).collect();
    Ok(Inertia::from_coefficient_signs(&signs))
}

/// Inertia of `M(α)` for a symmetric matrix of polynomials, by congruence
/// elimination over `ℚ[x]/(minpoly α)` with pivot signs decided exactly at `α`.
pub fn inertia_at_algebraic(m: &PolyMatrix, alpha: &AlgebraicReal) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(m.require_square().err().unwrap_or(Error::NotSymmetric));
    }
    let mut field = AlgebraicResidues::new(alpha);
    let reduced = m.map(|p| field.reduce(p));
    let (p, z, n) = congruence_inertia(&mut field, &reduced, |f, x| f.sign(x));
    Ok(Inertia::new(p, z, n))
}
