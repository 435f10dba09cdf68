//! Hermite and Smith normal forms over Z.
//!
//! Column convention: H = M·U with U unimodular, H lower triangular with a
//! positive diagonal and every entry left of the diagonal in [0, diagonal).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Column HNF of a full row rank d×n matrix (n ≥ d); returns the d×d block.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let (h, _) = reduce(m, false)?;
    Ok(leading_block(&h))
}

/// Column HNF together with the unimodular transform: m·u = [H | 0].
pub fn hnf_with_transform(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let (h, u) = reduce(m, true)?;
    Ok((h, u.expect("transform requested")))
}

fn leading_block(h: &IntMatrix) -> IntMatrix {
    let d = h.nrows();
    let mut out = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..=i {
            out.set(i, j, h.get(i, j).clone());
        }
    }
    out
}

fn reduce(m: &IntMatrix, track: bool) -> Result<(IntMatrix, Option<IntMatrix>)> {
    let d = m.nrows();
    let n = m.ncols();
    if n < d {
        return Err(Error::SingularMatrix);
    }
    let mut h = m.clone();
    let mut u = track.then(|| IntMatrix::identity(n));
    for i in 0..d {
        for j in i + 1..n {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, i).clone();
            let b = h.get(i, j).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            // new_i = x·col_i + y·col_j, new_j = −b/g·col_i + a/g·col_j; determinant 1.
            h.combine_cols(i, j, &x, &y, &-&bg, &ag);
            if let Some(u) = u.as_mut() {
                u.combine_cols(i, j, &x, &y, &-&bg, &ag);
            }
        }
        if h.get(i, i).is_zero() {
            return Err(Error::SingularMatrix);
        }
        if h.get(i, i).is_negative() {
            h.negate_col(i);
            if let Some(u) = u.as_mut() {
                u.negate_col(i);
            }
        }
        let piv = h.get(i, i).clone();
        for j in 0..i {
            let q = h.get(i, j).div_floor(&piv);
            h.sub_col(j, i, &q);
            if let Some(u) = u.as_mut() {
                u.sub_col(j, i, &q);
            }
        }
    }
    Ok((h, u))
}

/// Invariant factors d₁ | d₂ | … of a non-singular square integer matrix.
pub fn snf_diagonal(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
    }
    let mut a = m.clone();
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a.get(i, j).is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a.get(i, j).abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = best.ok_or(Error::SingularMatrix)?;
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let piv = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = a.get(i, t).div_floor(&piv);
                a.sub_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a.get(t, j).div_floor(&piv);
                a.sub_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % &piv).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    a.combine_rows(t, i, &one, &one, &zero, &one);
                }
                None => break,
            }
        }
    }
    Ok((0..n).map(|i| a.get(i, i).abs()).collect())
}
