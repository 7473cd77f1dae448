use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero magnitude in the trailing block becomes the pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if q.is_zero() {
                dirty |= !a[i][t].is_zero();
                continue;
            }
            for j in t..cols {
                let v = &q * &a[t][j];
                a[i][j] -= v;
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut().skip(t) {
                let v = &q * &row[t];
                row[j] -= v;
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // pivot must divide the whole trailing block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            let src = a[i].clone();
            for (dst, v) in a[t].iter_mut().zip(src) {
                *dst += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Whether the rows of `b` span a direct summand of `ℤ^cols`: full row rank
/// and every invariant factor equal to 1.
pub fn is_primitive_sublattice(b: &IntMatrix) -> Result<bool> {
    let inv = smith_invariants(b);
    if inv.len() < b.rows() {
        return Err(Error::RankDeficient);
    }
    Ok(inv.iter().all(One::is_one))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive_sublattice(&im(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap());
        assert!(!is_primitive_sublattice(&im(&[&[2, 0]])).unwrap());
        assert!(is_primitive_sublattice(&im(&[&[2, 3]])).unwrap());
        assert_eq!(is_primitive_sublattice(&im(&[&[1, 2], &[2, 4]])), Err(Error::RankDeficient));
    }

    #[test]
    fn invariant_factors() {
        let m = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let v: Vec<i64> = smith_invariants(&m).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(v, vec![2, 6, 12]);
    }
}
