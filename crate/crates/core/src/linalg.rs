//! Exact integer vectors and matrices.
//!
//! Everything here works over arbitrary-precision integers. Ranks and
//! determinants use fraction-free (Bareiss) elimination, kernel lattices use
//! unimodular row reduction, so no rational arithmetic is needed.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{LctError, Result};

/// A nonempty vector of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(LctError::EmptyVector);
        }
        Ok(IntVector(entries))
    }

    /// Panics on an empty slice; intended for literals.
    pub fn from_i64s(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "IntVector must be nonempty");
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "IntVector must be nonempty");
        IntVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn push(&mut self, x: BigInt) {
        self.0.push(x);
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|x| !x.is_positive())
    }

    /// Sum of entries, written `|v|` for directions in the orthant.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &IntVector) -> IntVector {
        IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }

    /// Componentwise `self <= other`.
    pub fn precedes(&self, other: &IntVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Positive part (entries `max(x, 0)`).
    pub fn positive_part(&self) -> IntVector {
        IntVector(
            self.0
                .iter()
                .map(|x| {
                    if x.is_positive() {
                        x.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        )
    }

    /// Negative part (entries `max(-x, 0)`).
    pub fn negative_part(&self) -> IntVector {
        IntVector(
            self.0
                .iter()
                .map(|x| if x.is_negative() { -x } else { BigInt::zero() })
                .collect(),
        )
    }

    /// Gcd of the absolute values of the entries.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for IntVector {
    type Err = LctError;

    /// Accepts `1,2,3` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let entries = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| LctError::InvalidValue(format!("not an integer vector: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntVector::new(entries)
    }
}

/// A rectangular integer matrix stored by rows. May have zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LctError::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, ncols })
    }

    /// Panics on ragged or empty input; intended for literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map(|r| r.len()).expect("at least one row");
        let rows = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        IntMatrix::new(rows, ncols).expect("rectangular literal")
    }

    pub fn empty(ncols: usize) -> Self {
        IntMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(|i| IntVector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: IntVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(LctError::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows selected by index, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
            ncols: self.ncols,
        }
    }

    /// `self * v` as a plain sequence (one entry per row).
    pub fn mul_vec(&self, v: &IntVector) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    /// Row vector times matrix: `lambda * self`.
    pub fn left_mul(&self, lambda: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ncols];
        for (l, row) in lambda.iter().zip(&self.rows) {
            for (o, x) in out.iter_mut().zip(row.iter()) {
                *o += l * x;
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.sub(b))
                .collect(),
            ncols: self.ncols,
        }
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.entries().to_vec()).collect()
    }
}

/// Runs fraction-free elimination in place and returns `(rank, pivot_product_sign_swaps)`.
///
/// After the call, rows `0..rank` form an echelon form whose last pivot equals
/// the determinant (up to the swap sign) when the matrix is square and regular.
fn bareiss(a: &mut [Vec<BigInt>], ncols: usize) -> (usize, usize) {
    let nrows = a.len();
    let mut rank = 0;
    let mut swaps = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    (rank, swaps)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.to_grid();
    bareiss(&mut a, m.ncols()).0
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(LctError::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_grid();
    let (r, swaps) = bareiss(&mut a, n);
    if r < n {
        return Ok(BigInt::zero());
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if swaps % 2 == 1 { -d } else { d })
}

/// True when `v` lies in the rational span of the rows of `m`.
pub fn in_row_span(m: &IntMatrix, v: &IntVector) -> bool {
    let mut ext = m.clone();
    let base = rank(m);
    ext.rows.push(v.clone());
    rank(&ext) == base
}

/// Basis (as rows) of the lattice `{λ ∈ Z^r : λ·m = 0}`.
///
/// Row-reduces `[m | I_r]` with unimodular integer operations until the left
/// block is in echelon form; the identity-block parts of the zero rows of the
/// left block span every integer relation.
pub fn left_kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let r = m.nrows();
    let c = m.ncols();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut ext = row.entries().to_vec();
            ext.extend((0..r).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            ext
        })
        .collect();

    let mut pivot = 0;
    for col in 0..c {
        if pivot == r {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column moves to the pivot row
            let best = (pivot..r)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot, best);
            let mut done = true;
            for i in pivot + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot][col]);
                let (head, tail) = a.split_at_mut(i);
                let prow = &head[pivot];
                for (x, p) in tail[0].iter_mut().zip(prow) {
                    *x -= &q * p;
                }
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (pivot..r).any(|i| !a[i][col].is_zero()) {
            pivot += 1;
        }
    }

    let basis = a[pivot..]
        .iter()
        .map(|row| IntVector(row[c..].to_vec()))
        .collect();
    IntMatrix {
        rows: basis,
        ncols: r,
    }
}

/// The primitive integer vector on the ray through `v`, with its first
/// nonzero entry positive.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(LctError::ZeroVector);
    }
    let first_negative = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let g = if first_negative { -g } else { g };
    Ok(IntVector(v.iter().map(|x| x / &g).collect()))
}

/// Primitive generator of the one-dimensional nullspace of `n-1` rows in `n`
/// columns, or `None` when the rows have rank below `n-1`.
///
/// The generator is the vector of signed maximal minors (generalized cross
/// product), then made primitive.
pub fn nullspace_ray(m: &IntMatrix) -> Result<Option<IntVector>> {
    let n = m.ncols();
    if m.nrows() + 1 != n {
        return Err(LctError::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: m.nrows(),
        });
    }
    let mut w = Vec::with_capacity(n);
    for k in 0..n {
        let minor: Vec<IntVector> = m
            .rows()
            .iter()
            .map(|row| {
                IntVector(
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, x)| x.clone())
                        .collect(),
                )
            })
            .collect();
        let minor = IntMatrix {
            rows: minor,
            ncols: n - 1,
        };
        let d = determinant(&minor)?;
        w.push(if k % 2 == 1 { -d } else { d });
    }
    let w = IntVector(w);
    if w.is_zero() {
        return Ok(None);
    }
    primitive(&w).map(Some)
}
