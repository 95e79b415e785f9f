//! Exact integer linear algebra: rank, saturated kernel lattices, Smith
//! normal form, lattice indices.
//!
//! Everything is computed over arbitrary-precision integers; rank uses
//! fraction-free Bareiss elimination, lattices use Hermite/Smith-style
//! unimodular column operations. No floating point.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows of machine integers.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntegerMatrix { rows: r, cols: c, data }
    }

    /// Build from a list of column vectors.
    pub fn from_cols(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_b += q * col_a
    fn add_col_multiple(&mut self, b: usize, a: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * self.get(i, a);
            let cur = self.get(i, b) + add;
            self.set(i, b, cur);
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a);
            self.set(i, a, v);
        }
    }
}

/// Rank over the rationals by fraction-free Bareiss elimination.
pub fn rank(m: &IntegerMatrix) -> usize {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut pivot_row = 0usize;
    for col in 0..c {
        if pivot_row >= r {
            break;
        }
        // find pivot
        let mut piv = None;
        for i in pivot_row..r {
            if !a.get(i, col).is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        if p != pivot_row {
            for j in 0..c {
                let idx1 = p * c + j;
                let idx2 = pivot_row * c + j;
                a.data.swap(idx1, idx2);
            }
        }
        let pivot = a.get(pivot_row, col).clone();
        for i in (pivot_row + 1)..r {
            for j in (col + 1)..c {
                let num = a.get(i, j) * &pivot - a.get(i, col) * a.get(pivot_row, j);
                a.set(i, j, &num / &prev);
            }
            a.set(i, col, BigInt::zero());
        }
        prev = pivot;
        pivot_row += 1;
    }
    pivot_row
}

/// Transform the columns of `m` by unimodular operations until every pivot
/// is isolated; returns `(reduced, u)` with `reduced = m * u` and `u`
/// unimodular.  Columns of `u` matching zero columns of `reduced` span the
/// saturated integer kernel of `m`.
fn column_echelon_unimodular(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(m.cols);
    let (r, c) = (a.rows, a.cols);
    let mut next_col = 0usize;
    for row in 0..r {
        if next_col >= c {
            break;
        }
        // gcd-eliminate entries of this row across active columns
        loop {
            // pick column with smallest nonzero |entry|
            let mut best: Option<usize> = None;
            for j in next_col..c {
                let v = a.get(row, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if v.abs() < a.get(row, b).abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(next_col, b);
            u.swap_cols(next_col, b);
            let pivot = a.get(row, next_col).clone();
            let mut all_zero = true;
            for j in (next_col + 1)..c {
                let v = a.get(row, j).clone();
                if v.is_zero() {
                    continue;
                }
                let q = -(&v).div_euclid(&pivot);
                a.add_col_multiple(j, next_col, &q);
                u.add_col_multiple(j, next_col, &q);
                if !a.get(row, j).is_zero() {
                    all_zero = false;
                }
            }
            if all_zero {
                break;
            }
        }
        if !a.get(row, next_col).is_zero() {
            next_col += 1;
        }
    }
    (a, u)
}

trait DivEuclidExt {
    fn div_euclid(&self, d: &BigInt) -> BigInt;
}

impl DivEuclidExt for BigInt {
    fn div_euclid(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        if r.is_negative() {
            if d.is_positive() {
                q - 1
            } else {
                q + 1
            }
        } else {
            q
        }
    }
}

/// Basis of the saturated integer kernel `ker(m) ∩ Z^cols`, one column per
/// basis vector, canonicalized by a column Hermite reduction with positive
/// leading entries.  Full-rank input yields a matrix with zero columns.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let (reduced, u) = column_echelon_unimodular(m);
    let mut ker_cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m.cols {
        let zero = (0..m.rows).all(|i| reduced.get(i, j).is_zero());
        if zero {
            ker_cols.push(u.col(j));
        }
    }
    canonicalize_columns(IntegerMatrix::from_cols(&ker_cols), m.cols)
}

/// Column HNF: pivots positive, entries right of a pivot reduced, pivot
/// rows chosen top-down.  Gives a unique basis of the column lattice.
fn canonicalize_columns(m: IntegerMatrix, nrows_hint: usize) -> IntegerMatrix {
    if m.cols == 0 {
        return IntegerMatrix::zero(nrows_hint, 0);
    }
    let mut a = m;
    let (r, c) = (a.rows, a.cols);
    let mut next_col = 0usize;
    for row in 0..r {
        if next_col >= c {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in next_col..c {
                if !a.get(row, j).is_zero() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if a.get(row, j).abs() < a.get(row, b).abs() {
                                best = Some(j);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(next_col, b);
            let pivot = a.get(row, next_col).clone();
            let mut done = true;
            for j in (next_col + 1)..c {
                let v = a.get(row, j).clone();
                if v.is_zero() {
                    continue;
                }
                let q = -(&v).div_euclid(&pivot);
                a.add_col_multiple(j, next_col, &q);
                if !a.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a.get(row, next_col).is_zero() {
            if a.get(row, next_col).is_negative() {
                a.negate_col(next_col);
            }
            // reduce entries to the LEFT of this pivot
            let pivot = a.get(row, next_col).clone();
            for j in 0..next_col {
                let v = a.get(row, j).clone();
                let q = -(&v).div_euclid(&pivot);
                a.add_col_multiple(j, next_col, &q);
            }
            next_col += 1;
        }
    }
    a
}

/// The nonzero invariant factors d_1 | d_2 | ... of `m` (Smith normal form
/// diagonal).
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let n = min(r, c);
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0usize;
    while t < n {
        // find smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if v.abs() < a.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        // move to (t, t)
        for j in 0..c {
            a.data.swap(bi * c + j, t * c + j);
        }
        a.swap_cols(bj, t);
        // clear row and column t
        let mut clean = true;
        let pivot = a.get(t, t).clone();
        for i in (t + 1)..r {
            let v = a.get(i, t).clone();
            if v.is_zero() {
                continue;
            }
            let q = (&v).div_euclid(&pivot);
            for j in t..c {
                let sub = &q * a.get(t, j);
                let cur = a.get(i, j) - sub;
                a.set(i, j, cur);
            }
            if !a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..c {
            let v = a.get(t, j).clone();
            if v.is_zero() {
                continue;
            }
            let q = (&v).div_euclid(&pivot);
            a.add_col_multiple(j, t, &-q);
            if !a.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller entries appeared, repeat at the same t
        }
        // divisibility: pivot must divide the rest of the block
        let mut fixed = false;
        'outer: for i in (t + 1)..r {
            for j in (t + 1)..c {
                if !(a.get(i, j) % &pivot).is_zero() {
                    // add row i to row t and restart this step
                    for jj in t..c {
                        let add = a.get(i, jj).clone();
                        let cur = a.get(t, jj) + add;
                        a.set(t, jj, cur);
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(pivot.abs());
        t += 1;
    }
    diag
}

/// Determinant by Bareiss; requires a square matrix.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let mut found = false;
            for i in (k + 1)..n {
                if !a.get(i, k).is_zero() {
                    for j in 0..n {
                        a.data.swap(i * n + j, k * n + j);
                    }
                    sign = -sign;
                    found = true;
                    break;
                }
            }
            if !found {
                return BigInt::zero();
            }
        }
        let pivot = a.get(k, k).clone();
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a.get(i, j) * &pivot - a.get(i, k) * a.get(k, j);
                a.set(i, j, &num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Basis (columns) of the saturation of the column lattice of `m`:
/// `span_Q(cols) ∩ Z^rows`.  Computed as the kernel of the kernel.
pub fn saturation_basis(m: &IntegerMatrix) -> IntegerMatrix {
    // rows of k span the space of functionals vanishing on col span
    let k = kernel_basis(&m.transpose());
    kernel_basis(&k.transpose())
}

/// Index of the lattice generated by the columns of `image_span` inside the
/// saturation of the column lattice of `ambient_span`.  Errors when the two
/// rational column spans differ.
pub fn lattice_index(ambient_span: &IntegerMatrix, image_span: &IntegerMatrix) -> Result<BigInt> {
    if ambient_span.rows != image_span.rows {
        return Err(Error::InvalidInput("lattice_index: row count mismatch".to_string()));
    }
    let ra = rank(ambient_span);
    let ri = rank(image_span);
    let rc = rank(&ambient_span.hcat(image_span));
    if ra != ri || rc != ra {
        return Err(Error::SpanMismatch);
    }
    let sat = saturation_basis(ambient_span);
    // coordinates of image columns in the saturated basis
    let coords = solve_integer_coords(&sat, image_span)?;
    let inv = smith_diagonal(&coords);
    if inv.len() != ra {
        return Err(Error::SpanMismatch);
    }
    Ok(inv.into_iter().product())
}

/// Solve `basis * X = targets` where an integer solution exists column-wise
/// (targets lie in the integer column lattice of `basis`, which must have
/// full column rank).
pub fn solve_in_lattice(basis: &IntegerMatrix, targets: &IntegerMatrix) -> Result<IntegerMatrix> {
    solve_integer_coords(basis, targets)
}

fn solve_integer_coords(basis: &IntegerMatrix, targets: &IntegerMatrix) -> Result<IntegerMatrix> {
    let d = basis.cols();
    let mut x = IntegerMatrix::zero(d, targets.cols());
    for j in 0..targets.cols() {
        let t = IntegerMatrix::from_cols(&[targets.col(j)]);
        let k = kernel_basis(&basis.hcat(&t));
        if k.cols() != 1 {
            return Err(Error::SpanMismatch);
        }
        let last = k.get(d, 0).clone();
        if !last.abs().is_one() {
            return Err(Error::SpanMismatch);
        }
        for i in 0..d {
            x.set(i, j, -(k.get(i, 0) / &last));
        }
    }
    if &basis.mul(&x) != targets {
        return Err(Error::SpanMismatch);
    }
    Ok(x)
}

/// Index of the full-rank sublattice spanned by the columns of `g` inside
/// its own saturation.  Equals the product of the invariant factors.
pub fn index_in_saturation(g: &IntegerMatrix) -> BigInt {
    smith_diagonal(g).into_iter().product()
}

/// Basis of the lattice generated by the columns (column count reduced to
/// the rank by unimodular column operations).
pub fn column_lattice_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let reduced = canonicalize_columns(m.clone(), m.rows());
    let cols: Vec<Vec<BigInt>> = (0..reduced.cols())
        .map(|j| reduced.col(j))
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    IntegerMatrix::from_cols(&cols)
}

/// Solve `a x = b` over the rationals for a matrix with full column rank.
/// Returns `Some((nums, den))` with `x_i = nums_i / den`, `den > 0`, or
/// `None` when the system is inconsistent.  Panics if `a` has dependent
/// columns.
pub fn solve_rational(a: &IntegerMatrix, b: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let (r, d) = (a.rows(), a.cols());
    assert_eq!(r, b.len());
    let mut aug = a.hcat(&IntegerMatrix::from_cols(&[b.to_vec()]));
    // forward Bareiss with row pivoting
    let mut prev = BigInt::one();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let c = d + 1;
    let mut pr = 0usize;
    for col in 0..d {
        let mut piv = None;
        for i in pr..r {
            if !aug.get(i, col).is_zero() {
                piv = Some(i);
                break;
            }
        }
        let p = piv.unwrap_or_else(|| panic!("solve_rational: dependent columns"));
        if p != pr {
            for j in 0..c {
                let i1 = p * c + j;
                let i2 = pr * c + j;
                aug.data.swap(i1, i2);
            }
        }
        let pivot = aug.get(pr, col).clone();
        for i in (pr + 1)..r {
            for j in (col + 1)..c {
                let num = aug.get(i, j) * &pivot - aug.get(i, col) * aug.get(pr, j);
                aug.set(i, j, &num / &prev);
            }
            aug.set(i, col, BigInt::zero());
        }
        prev = pivot;
        pivot_rows.push(pr);
        pr += 1;
    }
    // consistency: rows below the pivots must have zero rhs
    for i in pr..r {
        if !aug.get(i, d).is_zero() {
            return None;
        }
    }
    // back substitution with exact fractions x_i = num_i / den_i
    let mut num = vec![BigInt::zero(); d];
    let mut den = vec![BigInt::one(); d];
    for col in (0..d).rev() {
        let row = col;
        // rhs - sum_{j>col} a_j x_j, as a fraction
        let mut rn = aug.get(row, d).clone();
        let mut rd = BigInt::one();
        for j in (col + 1)..d {
            let coef = aug.get(row, j);
            if coef.is_zero() {
                continue;
            }
            // rn/rd -= coef * num[j]/den[j]
            let tn = coef * &num[j];
            rn = rn * &den[j] - tn * &rd;
            rd *= &den[j];
        }
        let pivot = aug.get(row, col).clone();
        rd *= pivot;
        let g = rn.gcd(&rd);
        if !g.is_zero() {
            rn /= &g;
            rd /= &g;
        }
        if rd.is_negative() {
            rn = -rn;
            rd = -rd;
        }
        num[col] = rn;
        den[col] = rd;
    }
    // common denominator
    let mut common = BigInt::one();
    for dd in &den {
        let g = common.gcd(dd);
        common = common / g * dd;
    }
    let nums: Vec<BigInt> = num
        .iter()
        .zip(&den)
        .map(|(n, dd)| n * (&common / dd))
        .collect();
    Some((nums, common))
}
