//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Hermite normal forms here are column-style: a matrix `H = B·U` with `U`
//! unimodular, whose nonzero columns have strictly increasing pivot rows.
//! Entries above a pivot are zero, pivots are positive, and the entries of
//! earlier columns in a pivot row are reduced into `[0, pivot)`. Zero columns
//! are moved to the right.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols: ncols,
            entries,
        })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns<T: Into<BigInt> + Clone>(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "every column must have {rows} entries"
            )));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `self - c·I`; requires a square matrix.
    pub fn minus_scalar_identity(&self, c: &BigInt) -> Result<IntMatrix> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] -= c;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row_sum(&self, i: usize) -> BigInt {
        self.row(i).iter().sum()
    }

    pub fn column_sum(&self, j: usize) -> BigInt {
        (0..self.rows).map(|i| &self[(i, j)]).sum()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// column `dst` += q · column `src`
    fn add_column_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn select_columns(&self, cols: std::ops::Range<usize>) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for (jj, j) in cols.enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Column echelon reduction. Applies unimodular column operations to `work`
/// (mirrored on `track` when given) and returns the pivot rows, one per
/// nonzero column, which occupy columns `0..rank`.
fn column_echelon(
    work: &mut IntMatrix,
    mut track: Option<&mut IntMatrix>,
    reduce: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pc = 0;
    for r in 0..work.rows {
        if pc == work.cols {
            break;
        }
        // Euclid on row r across columns pc.. until a single nonzero remains.
        loop {
            let smallest = (pc..work.cols)
                .filter(|&j| !work[(r, j)].is_zero())
                .min_by(|&a, &b| work[(r, a)].abs().cmp(&work[(r, b)].abs()));
            let Some(j) = smallest else { break };
            work.swap_columns(pc, j);
            if let Some(t) = track.as_deref_mut() {
                t.swap_columns(pc, j);
            }
            let mut done = true;
            for jj in pc + 1..work.cols {
                if work[(r, jj)].is_zero() {
                    continue;
                }
                let q = -(work[(r, jj)].div_floor(&work[(r, pc)]));
                work.add_column_multiple(jj, pc, &q);
                if let Some(t) = track.as_deref_mut() {
                    t.add_column_multiple(jj, pc, &q);
                }
                if !work[(r, jj)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (pc..work.cols).all(|j| work[(r, j)].is_zero()) {
            continue;
        }
        if work[(r, pc)].is_negative() {
            work.negate_column(pc);
            if let Some(t) = track.as_deref_mut() {
                t.negate_column(pc);
            }
        }
        if reduce {
            for jj in 0..pc {
                let q = -(work[(r, jj)].div_floor(&work[(r, pc)]));
                work.add_column_multiple(jj, pc, &q);
                if let Some(t) = track.as_deref_mut() {
                    t.add_column_multiple(jj, pc, &q);
                }
            }
        }
        pivots.push(r);
        pc += 1;
    }
    pivots
}

/// Column Hermite normal form of the lattice spanned by the columns of `b`,
/// with zero columns dropped.
pub fn column_hnf(b: &IntMatrix) -> IntMatrix {
    let mut work = b.clone();
    let pivots = column_echelon(&mut work, None, true);
    work.select_columns(0..pivots.len())
}

/// Saturated basis of `{v ∈ ℤ^cols : M v = 0}`, returned in column HNF.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let mut work = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let rank = column_echelon(&mut work, Some(&mut u), false).len();
    let kernel = u.select_columns(rank..m.cols);
    column_hnf(&kernel)
}

/// Whether the columns of `b1` and `b2` generate the same lattice.
pub fn same_lattice(b1: &IntMatrix, b2: &IntMatrix) -> Result<bool> {
    if b1.rows != b2.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} rows vs {} rows",
            b1.rows, b2.rows
        )));
    }
    Ok(column_hnf(b1) == column_hnf(b2))
}

pub fn rank(m: &IntMatrix) -> usize {
    column_hnf(m).cols
}

/// `det(xI − M)` by Faddeev–LeVerrier; every division by `k` is exact.
pub fn char_poly_int(m: &IntMatrix) -> Result<IntPoly> {
    m.require_square()?;
    let n = m.rows;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // aux_k = M·aux_{k-1} + c_{n-k+1}·I
        let mut next = m.mul(&aux)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let prod = m.mul(&next)?;
        let trace: BigInt = (0..n).map(|i| &prod[(i, i)]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        aux = next;
    }
    Ok(IntPoly::new(coeffs))
}

/// Strong connectivity of the graph with an edge `i → j` whenever `M_ij > 0`.
pub fn is_irreducible(m: &IntMatrix) -> Result<bool> {
    m.require_square()?;
    let n = m.rows;
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)].is_negative() {
                return Err(Error::NegativeEntry(i + 1, j + 1));
            }
        }
    }
    if n == 0 {
        return Ok(false);
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let edge = if forward { &m[(v, w)] } else { &m[(w, v)] };
                if !seen[w] && edge.is_positive() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    Ok(reach(true) && reach(false))
}

/// Perron root of a nonnegative irreducible matrix, to within `tol`.
pub fn spectral_radius(m: &IntMatrix, tol: f64) -> Result<f64> {
    if !is_irreducible(m)? {
        return Err(Error::NotIrreducible);
    }
    let max_row = (0..m.rows).map(|i| m.row_sum(i)).max().unwrap_or_default();
    let hi = BigInt::one() + max_row;
    let cp = char_poly_int(m)?;
    cp.largest_real_root_in(&BigInt::zero(), &hi, tol)
        .ok_or(Error::NotIrreducible)
}
