//! Univariate integer polynomials and exact real-root location.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer polynomial, `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `x^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] += 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a divisor with leading coefficient ±1.
    pub fn div_rem_monic(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let lead = d.leading()?;
        if !lead.abs().is_one() {
            return None;
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient by a ±1-leading divisor, `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(d)?;
        r.is_zero().then_some(q)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Bound `1 + max|c_i| / |lead|` on the modulus of every root.
    pub fn cauchy_bound(&self) -> BigInt {
        let Some(lead) = self.leading() else {
            return BigInt::zero();
        };
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead.abs())
    }

    /// Sturm chain with every member rescaled by a positive constant to a
    /// primitive integer polynomial, which leaves all sign counts unchanged.
    fn sturm_chain(&self) -> Vec<Vec<BigInt>> {
        let mut chain = vec![
            primitive(self.coeffs.clone()),
            primitive(self.derivative().coeffs),
        ];
        while chain.last().is_some_and(|p| p.len() > 1) {
            let n = chain.len();
            let r = positive_pseudo_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(primitive(r.into_iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Number of distinct real roots in `(a, ∞)`, for `a` not a root.
    fn roots_above(chain: &[Vec<BigInt>], a: &BigRational) -> usize {
        let at_a: Vec<i8> = chain.iter().map(|p| sign_at(p, a)).collect();
        let at_inf: Vec<i8> = chain.iter().map(|p| p.last().map_or(0, sign_of)).collect();
        sign_changes(&at_a).saturating_sub(sign_changes(&at_inf))
    }

    /// Largest real root in `(lo, hi]`, located by bisection with a Sturm count
    /// at every exact dyadic midpoint. `None` if there is no root in the range.
    pub fn largest_real_root_in(&self, lo: &BigInt, hi: &BigInt, tol: f64) -> Option<f64> {
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        let chain = self.sturm_chain();
        let mut lo = BigRational::from_integer(lo.clone());
        let mut hi = BigRational::from_integer(hi.clone());
        let zero_at = |x: &BigRational| sign_at(&self.coeffs, x) == 0;
        if zero_at(&hi) {
            return hi.to_f64();
        }
        if zero_at(&lo) {
            // shift the lower end off the root so the Sturm count is valid
            lo -= BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
        }
        if Self::roots_above(&chain, &lo) == Self::roots_above(&chain, &hi) {
            return None;
        }
        let tol = BigRational::from_float(tol.max(1e-300)).unwrap_or_else(BigRational::zero);
        let two = BigRational::from_integer(BigInt::from(2));
        let mut above_hi = Self::roots_above(&chain, &hi);
        while &hi - &lo > tol {
            let mid = (&lo + &hi) / &two;
            if zero_at(&mid) {
                return mid.to_f64();
            }
            let above_mid = Self::roots_above(&chain, &mid);
            if above_mid > above_hi {
                lo = mid;
            } else {
                hi = mid;
                above_hi = above_mid;
            }
        }
        ((lo + hi) / two).to_f64()
    }

    /// Largest real root anywhere, searched inside the Cauchy bound.
    pub fn largest_real_root(&self, tol: f64) -> Option<f64> {
        let b = self.cauchy_bound();
        self.largest_real_root_in(&(-&b - 1), &b, tol)
    }
}

fn sign_of(c: &BigInt) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p(a/b)` via `b^deg · p(a/b) = Σ c_i a^i b^(deg−i)` with `b > 0`.
fn sign_at(p: &[BigInt], x: &BigRational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    sign_of(&acc)
}

fn sign_changes(signs: &[i8]) -> usize {
    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// Remainder of `|lead(b)|^k · a` by `b` for the smallest suitable `k`, so
/// the result is a positive multiple of the true remainder.
fn positive_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    let lead_abs = lead.abs();
    let lead_sign = BigInt::from(sign_of(lead));
    while rem.len() > db {
        let top = rem.len() - 1;
        let q = &rem[top] * &lead_sign;
        for c in rem.iter_mut() {
            *c *= &lead_abs;
        }
        for (j, c) in b.iter().enumerate() {
            rem[top - db + j] -= &q * c;
        }
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        rem = primitive(rem);
    }
    rem
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (d, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{mag}*x"),
                (_, true) => format!("x^{d}"),
                (_, false) => format!("{mag}*x^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}
