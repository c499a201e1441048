//! Exact non-negative integer matrices plus the few floating-point helpers
//! the cone computations need (Hilbert projective metric, Euclidean norms).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.data[i * d + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&x| BigUint::from(x)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
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

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigUint> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                index: 0,
                detail: format!(
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// All entries strictly positive.
    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| !x.is_zero())
    }

    pub fn column_sums(&self) -> Vec<BigUint> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn pattern(&self) -> BoolMatrix {
        BoolMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| !x.is_zero()).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_f64().unwrap_or(f64::INFINITY))
                    .collect()
            })
            .collect()
    }

    /// Entries as `f64` after dividing by `2^shift`, avoiding overflow for
    /// very large products.
    pub fn to_f64_scaled(&self, shift: u64) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| scaled_f64(&BigInt::from(self.get(i, j).clone()), shift))
                    .collect()
            })
            .collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j).clone())).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    /// Inverse over the rationals, `None` when singular.
    pub fn inverse_rational(&self) -> Result<Option<Vec<Vec<BigRational>>>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(BigInt::from(self.get(i, j).clone()))
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(col, piv);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..2 * n {
                        let sub = &f * &a[col][j];
                        a[r][j] -= sub;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// `self · v` for an integer vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigInt::from(self.get(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Rows as decimal strings, for serialization.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_string_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

/// Zero pattern of a non-negative matrix; products of non-negative matrices
/// have the pattern of the boolean product, which is all positivity needs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BoolMatrix {
    pub fn identity(d: usize) -> Self {
        BoolMatrix {
            rows: d,
            cols: d,
            data: (0..d * d).map(|k| k / d == k % d).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &BoolMatrix) -> Option<BoolMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut data = vec![false; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i * self.cols + k] {
                    for j in 0..other.cols {
                        data[i * other.cols + j] |= other.data[k * other.cols + j];
                    }
                }
            }
        }
        Some(BoolMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&b| b)
    }
}

/// Serializes a big integer as its decimal string.
pub(crate) fn big_as_string<T: fmt::Display, S: Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// `x / 2^shift` as `f64`, computed from the leading bits so that values far
/// beyond the `f64` range are still representable after scaling.
pub fn scaled_f64(x: &BigInt, shift: u64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    let keep = 64u64;
    let (mantissa, exp) = if bits > keep {
        ((x.abs() >> (bits - keep) as usize).to_f64().unwrap(), (bits - keep) as i64)
    } else {
        (x.abs().to_f64().unwrap(), 0)
    };
    let e = exp - shift as i64;
    let v = mantissa * 2f64.powi(e.clamp(-1100, 1100) as i32);
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// Hilbert projective distance `log(max x_i/y_i · max y_i/x_i)` between
/// positive vectors; infinite when supports differ.
pub fn hilbert_distance(x: &[f64], y: &[f64]) -> f64 {
    let mut max_xy = 0.0f64;
    let mut max_yx = 0.0f64;
    for (&a, &b) in x.iter().zip(y) {
        match (a > 0.0, b > 0.0) {
            (true, true) => {
                max_xy = max_xy.max(a / b);
                max_yx = max_yx.max(b / a);
            }
            (false, false) => {}
            _ => return f64::INFINITY,
        }
    }
    if max_xy == 0.0 {
        return 0.0;
    }
    (max_xy * max_yx).ln().max(0.0)
}

/// Largest pairwise Hilbert distance between the given vectors (the
/// projective diameter of the cone they span).
pub fn hilbert_diameter(vectors: &[Vec<f64>]) -> f64 {
    let mut diam = 0.0f64;
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            diam = diam.max(hilbert_distance(&vectors[i], &vectors[j]));
        }
    }
    diam
}

pub fn normalize_l1(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().map(|x| x.abs()).sum();
    if s == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / s).collect()
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_t_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0.0; cols];
    for (row, &vi) in m.iter().zip(v) {
        for (o, &x) in out.iter_mut().zip(row) {
            *o += x * vi;
        }
    }
    out
}

/// Largest eigenvalue of a symmetric positive semi-definite matrix by power
/// iteration.
pub fn sym_psd_max_eigenvalue(s: &[Vec<f64>]) -> f64 {
    let n = s.len();
    if n == 0 {
        return 0.0;
    }
    // Start away from any particular eigenvector.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let w = mat_vec(s, &v);
        let nw = norm2(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let next: Vec<f64> = w.iter().map(|x| x / nw).collect();
        let delta = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        let prev = lambda;
        lambda = nw;
        if delta < 1e-15 || ((lambda - prev).abs() <= 1e-15 * lambda) {
            break;
        }
    }
    lambda
}

/// Euclidean operator norm of a dense matrix, via power iteration on `MᵗM`.
pub fn operator_norm2(m: &[Vec<f64>]) -> f64 {
    let cols = m.first().map_or(0, |r| r.len());
    let mut mtm = vec![vec![0.0; cols]; cols];
    for row in m {
        for i in 0..cols {
            for j in 0..cols {
                mtm[i][j] += row[i] * row[j];
            }
        }
    }
    sym_psd_max_eigenvalue(&mtm).sqrt()
}

/// Cholesky factor `L` of a symmetric positive-definite matrix.
pub(crate) fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub(crate) fn forward_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / l[i][i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_powers() {
        let m = IntMatrix::from_rows(&[[1, 1], [1, 0]]);
        assert_eq!(m.pow(2).unwrap(), IntMatrix::from_rows(&[[2, 1], [1, 1]]));
        assert_eq!(m.pow(5).unwrap(), IntMatrix::from_rows(&[[8, 5], [5, 3]]));
        assert_eq!(m.pow(0).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn determinants() {
        let m = IntMatrix::from_rows(&[[1, 1], [1, 0]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
        let jp = IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 2], [0, 1, 3]]);
        assert_eq!(jp.determinant().unwrap(), BigInt::from(1));
        let sing = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(sing.determinant().unwrap().is_zero());
        let z = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(z.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn rational_inverse() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let inv = m.inverse_rational().unwrap().unwrap();
        let expect = [[1i64, -1], [-1, 2]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(inv[i][j], BigRational::from_integer(expect[i][j].into()));
            }
        }
        let sing = IntMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert!(sing.inverse_rational().unwrap().is_none());
    }

    #[test]
    fn hilbert_metric_basics() {
        assert_eq!(hilbert_distance(&[1.0, 2.0], &[2.0, 4.0]), 0.0);
        assert!(hilbert_distance(&[1.0, 0.0], &[1.0, 1.0]).is_infinite());
        let d = hilbert_distance(&[1.0, 1.0], &[1.0, 2.0]);
        assert!((d - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn scaled_conversion() {
        let big = BigInt::from(3u8) << 2000usize;
        let v = scaled_f64(&big, 2000);
        assert!((v - 3.0).abs() < 1e-12);
        assert_eq!(scaled_f64(&BigInt::from(-5), 0), -5.0);
    }

    #[test]
    fn operator_norm_of_symmetric() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 1.0]];
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((operator_norm2(&m) - phi2).abs() < 1e-12);
    }
}
