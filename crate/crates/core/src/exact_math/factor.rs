//! Factorization over ℤ by Kronecker's interpolation method. Exponential in
//! the degree; meant for the small polynomials that arise from signature
//! breakpoints, not as a general purpose factorizer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{exact_div, square_free_factors, IntPolynomial, RatPolynomial};
use crate::error::{Error, Result};

const MAX_VALUE: u64 = 1 << 40;

/// Irreducible factors of `p` over ℚ, primitive with positive leading
/// coefficient, listed with multiplicity and sorted by degree.
pub fn irreducible_factors(p: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let mut out = Vec::new();
    for (f, m) in square_free_factors(p) {
        let mut pieces = Vec::new();
        split_irreducible(f, &mut pieces)?;
        for piece in pieces {
            out.extend(std::iter::repeat_n(piece, m));
        }
    }
    out.sort_by_key(|f| (f.degree(), f.coeffs().to_vec()));
    Ok(out)
}

fn split_irreducible(f: IntPolynomial, out: &mut Vec<IntPolynomial>) -> Result<()> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(());
    }
    for d in 1..=deg / 2 {
        if let Some(h) = find_factor(&f, d)? {
            let rest = exact_div(&f, &h).expect("factor divides").to_int_primitive();
            split_irreducible(h, out)?;
            split_irreducible(rest, out)?;
            return Ok(());
        }
    }
    out.push(f.primitive_part());
    Ok(())
}

/// Searches for a factor of exact degree `d`.
fn find_factor(f: &IntPolynomial, d: usize) -> Result<Option<IntPolynomial>> {
    let mut candidates: Vec<(i64, Vec<BigInt>)> = Vec::new();
    for k in 0..(4 * d as i64 + 12) {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = f.eval_int(&BigInt::from(x));
        if v.is_zero() {
            // rational root at an integer point: a linear factor
            if d == 1 {
                return Ok(Some(IntPolynomial::from_i64s(&[-x, 1])));
            }
            continue;
        }
        let Some(mag) = v.abs().to_u64().filter(|&m| m <= MAX_VALUE) else {
            continue;
        };
        candidates.push((x, divisors(mag)));
    }
    if candidates.len() < d + 1 {
        return Err(Error::InvalidArgument(
            "polynomial values too large for Kronecker factorization".into(),
        ));
    }
    candidates.sort_by_key(|(_, divs)| divs.len());
    candidates.truncate(d + 1);
    let xs: Vec<BigRational> = candidates
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    let lists: Vec<&Vec<BigInt>> = candidates.iter().map(|(_, d)| d).collect();
    let mut idx = vec![0usize; d + 1];
    // signs: first value fixed positive, others free
    let sign_combos = 1usize << d;
    loop {
        for signs in 0..sign_combos {
            let ys: Vec<BigRational> = (0..=d)
                .map(|i| {
                    let v = lists[i][idx[i]].clone();
                    let neg = i > 0 && (signs >> (i - 1)) & 1 == 1;
                    BigRational::from_integer(if neg { -v } else { v })
                })
                .collect();
            let h = interpolate(&xs, &ys);
            if h.degree() != Some(d) || !h.coeffs().iter().all(|c| c.is_integer()) {
                continue;
            }
            let h = h.to_int_primitive();
            if exact_div(f, &h).is_some() {
                return Ok(Some(h));
            }
        }
        // odometer over divisor choices
        let mut i = 0;
        loop {
            if i > d {
                return Ok(None);
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn divisors(n: u64) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPolynomial {
    let mut out = RatPolynomial::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = RatPolynomial::constant(BigRational::one());
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &RatPolynomial::new(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn splits_product_of_quadratics() {
        let f = &p(&[1, -1, 1]) * &p(&[-1, -1, 1]);
        assert_eq!(irreducible_factors(&f).unwrap(), vec![p(&[-1, -1, 1]), p(&[1, -1, 1])]);
    }

    #[test]
    fn keeps_irreducible_quartic() {
        let f = p(&[1, -1, 1, -1, 1]);
        assert_eq!(irreducible_factors(&f).unwrap(), vec![f]);
    }

    #[test]
    fn finds_rational_linear_factor() {
        // (2x − 1)(x² + 1)
        let f = &p(&[-1, 2]) * &p(&[1, 0, 1]);
        assert_eq!(irreducible_factors(&f).unwrap(), vec![p(&[-1, 2]), p(&[1, 0, 1])]);
    }

    #[test]
    fn repeats_multiple_factors() {
        let f = &p(&[-2, 0, 1]).pow(2) * &p(&[1, 1]);
        assert_eq!(
            irreducible_factors(&f).unwrap(),
            vec![p(&[1, 1]), p(&[-2, 0, 1]), p(&[-2, 0, 1])]
        );
    }
}
