//! Sparse Laurent polynomials over ℤ in `t_1, …, t_d, u`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered by the
//! `u` exponent first, then the `t` exponents lexicographically. The canonical
//! print order is the descending order of that key, and the same order drives
//! leading-term division.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::intpoly::IntPoly;

/// Exponent vector of a monomial `t^c · u^e`, stored as `[e, c_1, …, c_d]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(SmallVec<[i32; 8]>);

impl ExpVec {
    pub fn new(t_exps: &[i32], u_exp: i32) -> Self {
        let mut v = SmallVec::with_capacity(t_exps.len() + 1);
        v.push(u_exp);
        v.extend_from_slice(t_exps);
        ExpVec(v)
    }

    pub fn zero(dims: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, dims + 1))
    }

    pub fn dims(&self) -> usize {
        self.0.len() - 1
    }

    pub fn u_exp(&self) -> i32 {
        self.0[0]
    }

    pub fn t_exps(&self) -> &[i32] {
        &self.0[1..]
    }

    /// Pairing with a class `(s_1, …, s_d, y)`.
    pub fn pair(&self, s: &[i64], y: i64) -> i64 {
        self.t_exps()
            .iter()
            .zip(s)
            .map(|(&c, &si)| c as i64 * si)
            .sum::<i64>()
            + self.u_exp() as i64 * y
    }

    fn plus(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn minus(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; u^{})", self.t_exps(), self.u_exp())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    dims: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(dims: usize) -> Self {
        LaurentPoly {
            dims,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dims: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExpVec::zero(dims), c)
    }

    pub fn one(dims: usize) -> Self {
        Self::constant(dims, 1)
    }

    pub fn monomial(exp: ExpVec, c: impl Into<BigInt>) -> Self {
        let dims = exp.dims();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { dims, terms }
    }

    /// The variable `t_i`, 1-based.
    pub fn t(dims: usize, i: usize) -> Self {
        let mut e = ExpVec::zero(dims);
        e.0[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn u(dims: usize) -> Self {
        let mut e = ExpVec::zero(dims);
        e.0[0] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms<I>(dims: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, BigInt)>,
    {
        let mut p = Self::zero(dims);
        for (e, c) in terms {
            if e.dims() != dims {
                return Err(Error::RingMismatch(dims, e.dims()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &ExpVec) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Terms in canonical print order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&ExpVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: ExpVec, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &LaurentPoly) -> Result<()> {
        if self.dims == other.dims {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.dims, other.dims))
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.dims));
        }
        let mut acc: HashMap<ExpVec, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea.plus(eb)).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            dims: self.dims,
            terms,
        })
    }

    pub fn scale_monomial(&self, e: &ExpVec) -> LaurentPoly {
        LaurentPoly {
            dims: self.dims,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.plus(e), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = Self::one(self.dims);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / d`. Fails with the running remainder if `d`
    /// does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(d)?;
        let Some((lead_e, lead_c)) = d.leading_term() else {
            return Err(Error::ZeroPolynomial);
        };
        let mut quotient = Self::zero(self.dims);
        let Some((low_p, _)) = self.terms.iter().next() else {
            return Ok(quotient);
        };
        let (low_d, _) = d.terms.iter().next().unwrap();
        let floor = low_p.minus(low_d);
        let mut rem = self.terms.clone();
        while let Some((e, c)) = rem.iter().next_back() {
            let qe = e.minus(lead_e);
            let (qc, r) = c.div_rem(lead_c);
            if qe < floor || !r.is_zero() {
                return Err(Error::InexactDivision {
                    remainder: Box::new(LaurentPoly {
                        dims: self.dims,
                        terms: rem,
                    }),
                });
            }
            for (de, dc) in &d.terms {
                let key = qe.plus(de);
                let v = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(-v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        *slot.get_mut() -= v;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                }
            }
            quotient.terms.insert(qe, qc);
        }
        Ok(quotient)
    }

    /// Componentwise minimum exponent over the support.
    pub fn min_exponents(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.0.iter_mut().zip(&e.0) {
                *a = (*a).min(*b);
            }
            acc
        }))
    }

    /// Unit normal form: shift so that every variable's minimum exponent is
    /// 0, then fix the sign so the leading term is positive.
    pub fn normalized(&self) -> LaurentPoly {
        let Some(min) = self.min_exponents() else {
            return self.clone();
        };
        let neg_min = ExpVec(min.0.iter().map(|&e| -e).collect());
        let shifted = self.scale_monomial(&neg_min);
        if shifted.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            -&shifted
        } else {
            shifted
        }
    }

    /// Substitute `t_i → x^{s_i}`, `u → x^y` and shift by the minimal exponent.
    /// Returns the ordinary polynomial together with that shift.
    pub fn specialize_1var(&self, phi: &[i64]) -> Result<(IntPoly, i64)> {
        if phi.len() != self.dims + 1 {
            return Err(Error::DimensionMismatch(format!(
                "class has {} entries, ring needs {}",
                phi.len(),
                self.dims + 1
            )));
        }
        let (s, y) = phi.split_at(self.dims);
        let mut collected: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *collected.entry(e.pair(s, y[0])).or_default() += c;
        }
        collected.retain(|_, c| !c.is_zero());
        let Some(&shift) = collected.keys().next() else {
            return Ok((IntPoly::zero(), 0));
        };
        let top = *collected.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (top - shift) as usize + 1];
        for (e, c) in collected {
            coeffs[(e - shift) as usize] = c;
        }
        Ok((IntPoly::new(coeffs), shift))
    }

    /// Sum of the coefficients, i.e. the value at `t = 1, u = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Whether every term has `u`-exponent 0 and `t`-exponents 0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExpVec::is_zero)
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (j, &x) in e.t_exps().iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("t{}", j + 1)),
                    _ => factors.push(format!("t{}^{}", j + 1, x)),
                }
            }
            match e.u_exp() {
                0 => {}
                1 => factors.push("u".into()),
                x => factors.push(format!("u^{x}")),
            }
            let mag = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.dims, self.to_text())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            dims: self.dims,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    dims: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, dims: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            dims,
            entries: vec![LaurentPoly::zero(dims); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix, dims: usize) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols(), dims);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = LaurentPoly::constant(dims, m[(i, j)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// `u·I − self`
    pub fn u_identity_minus(&self) -> Result<LaurentMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let u = LaurentPoly::u(self.dims);
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = -&*e;
        }
        for i in 0..self.rows {
            out[(i, i)] = &out[(i, i)] + &u;
        }
        Ok(out)
    }

    /// Every entry evaluated at `t = 1` (entries must be free of `u`).
    pub fn at_t_ones(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].coefficient_sum();
            }
        }
        m
    }

    pub fn scale_column(&mut self, j: usize, e: &ExpVec) {
        for i in 0..self.rows {
            let v = self[(i, j)].scale_monomial(e);
            self[(i, j)] = v;
        }
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) -> Result<()> {
        if p.dims != self.dims {
            return Err(Error::RingMismatch(self.dims, p.dims));
        }
        self[(i, j)] = p;
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by fraction-free Bareiss elimination.
///
/// Each row is first divided by the monomial of its componentwise-minimum
/// exponents, so every entry is an honest polynomial; the monomials are
/// multiplied back at the end. Zero pivots are handled by a row swap, and a
/// column with no nonzero candidate means the determinant vanishes.
pub fn det_laurent(m: &LaurentMatrix) -> Result<LaurentPoly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let dims = m.dims;
    if n == 0 {
        return Ok(LaurentPoly::one(dims));
    }
    let mut a: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].clone()).collect())
        .collect();

    let mut cleared = ExpVec::zero(dims);
    for row in &mut a {
        let mut row_min: Option<ExpVec> = None;
        for e in row.iter().filter_map(LaurentPoly::min_exponents) {
            row_min = Some(match row_min {
                None => e,
                Some(mut acc) => {
                    for (x, y) in acc.0.iter_mut().zip(&e.0) {
                        *x = (*x).min(*y);
                    }
                    acc
                }
            });
        }
        let Some(row_min) = row_min else {
            return Ok(LaurentPoly::zero(dims));
        };
        let inv = ExpVec(row_min.0.iter().map(|&e| -e).collect());
        for p in row.iter_mut() {
            *p = p.scale_monomial(&inv);
        }
        cleared = cleared.plus(&row_min);
    }

    let mut negate = false;
    let mut prev = LaurentPoly::one(dims);
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| a[r][k].len());
        let Some(p) = pivot else {
            return Ok(LaurentPoly::zero(dims));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if k == 0 { num } else { num.div_exact(&prev)? };
            }
            a[i][k] = LaurentPoly::zero(dims);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].scale_monomial(&cleared);
    Ok(if negate { -&det } else { det })
}

/// Determinant by Laplace expansion along rows, memoised on the set of
/// remaining columns. Exponential in `n`; used as an independent check.
pub fn det_cofactor(m: &LaurentMatrix) -> Result<LaurentPoly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n > 20 {
        return Err(Error::DimensionMismatch(format!(
            "cofactor expansion limited to n <= 20, got {n}"
        )));
    }
    fn go(
        m: &LaurentMatrix,
        row: usize,
        mask: u32,
        memo: &mut HashMap<u32, LaurentPoly>,
    ) -> LaurentPoly {
        if row == m.rows {
            return LaurentPoly::one(m.dims);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(m.dims);
        let mut sign_neg = false;
        for j in 0..m.cols {
            if mask & (1 << j) != 0 {
                continue;
            }
            let entry = &m[(row, j)];
            if !entry.is_zero() {
                let minor = go(m, row + 1, mask | (1 << j), memo);
                let term = entry * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    Ok(go(m, 0, 0, &mut HashMap::new()))
}
