//! Newton-polygon support, the Teichmüller norm, fibered-cone membership
//! and specializations of a Teichmüller polynomial at integral classes.
//!
//! A class `φ = (s_1, …, s_d, y)` pairs with an exponent vector `(c, e)` as
//! `s·c + y·e`. Cone membership compares the extremal support sets selected
//! by `φ` with those selected by the monodromy class `e_u = (0, …, 0, 1)`:
//! both lie over the same open face of the norm ball exactly when they pick
//! out the same maximizing and minimizing terms.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::laurent::{ExpVec, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomClass {
    pub s: Vec<i64>,
    pub y: i64,
}

impl CohomClass {
    pub fn new(s: Vec<i64>, y: i64) -> Self {
        CohomClass { s, y }
    }

    /// Splits `(s_1, …, s_d, y)`; `None` for an empty slice.
    pub fn from_slice(phi: &[i64]) -> Option<Self> {
        let (y, s) = phi.split_last()?;
        Some(CohomClass::new(s.to_vec(), *y))
    }

    /// The monodromy class `e_u`.
    pub fn reference(dims: usize) -> Self {
        CohomClass::new(vec![0; dims], 1)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = self.s.clone();
        v.push(self.y);
        v
    }

    pub fn eval(&self, e: &ExpVec) -> i64 {
        e.pair(&self.s, self.y)
    }

    fn check_dims(&self, p: &LaurentPoly) -> Result<()> {
        if self.s.len() == p.dims() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "class has {} t-entries, polynomial has {} t-variables",
                self.s.len(),
                p.dims()
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecializationReport {
    pub phi: CohomClass,
    /// Specialization with the `(x^y − 1)` factors removed.
    pub poly: IntPoly,
    pub stripped_units: usize,
    pub largest_root: f64,
    pub is_biperron: bool,
    pub is_primitive_class: bool,
    pub in_cone: bool,
}

pub fn newton_support(p: &LaurentPoly) -> Result<Vec<ExpVec>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.terms().map(|(e, _)| e.clone()).collect())
}

fn extremes(p: &LaurentPoly, phi: &CohomClass) -> (i64, i64) {
    p.terms()
        .map(|(e, _)| phi.eval(e))
        .fold((i64::MIN, i64::MAX), |(hi, lo), v| (hi.max(v), lo.min(v)))
}

/// `max_g φ(g) − min_h φ(h)` over the support.
pub fn teich_norm(p: &LaurentPoly, phi: &CohomClass) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    phi.check_dims(p)?;
    let (hi, lo) = extremes(p, phi);
    Ok(hi - lo)
}

fn argmax_argmin(p: &LaurentPoly, phi: &CohomClass) -> (Vec<ExpVec>, Vec<ExpVec>) {
    let (hi, lo) = extremes(p, phi);
    let pick = |target: i64| {
        p.terms()
            .filter(|(e, _)| phi.eval(e) == target)
            .map(|(e, _)| e.clone())
            .collect::<Vec<_>>()
    };
    (pick(hi), pick(lo))
}

pub fn in_fibered_cone(p: &LaurentPoly, phi: &CohomClass) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    phi.check_dims(p)?;
    let reference = argmax_argmin(p, &CohomClass::reference(p.dims()));
    Ok(argmax_argmin(p, phi) == reference)
}

pub fn is_primitive(v: &[i64]) -> Result<bool> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(g == 1)
}

pub fn largest_root(p: &IntPoly, tol: f64) -> Result<f64> {
    p.largest_real_root(tol).ok_or(Error::NoRealRoot)
}

/// All complex roots: eigenvalues of the companion matrix, each refined by a
/// few Newton steps on the polynomial itself.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let Some(deg) = p.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    let c = p.to_f64_coeffs();
    let lead = c[deg];
    let mut comp = nalgebra::DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let eig = comp.complex_eigenvalues();
    eig.iter().map(|&z| newton_polish(&c, z)).collect()
}

fn newton_polish(c: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (mut f, mut df) = (Complex64::zero(), Complex64::zero());
        for &a in c.iter().rev() {
            df = df * z + f;
            f = f * z + a;
        }
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Numerical bi-Perron certificate: unit constant term, largest root
/// `λ > 1`, all roots in the annulus `1/λ ≤ |μ| ≤ λ` (up to `tol`) with at
/// most one on each boundary circle.
pub fn is_biperron(p: &IntPoly, tol: f64) -> Result<bool> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    if !lead.is_one() {
        return Err(Error::NotMonic);
    }
    if !p.constant().abs().is_one() {
        return Ok(false);
    }
    let Some(lambda) = p.largest_real_root(tol.min(1e-12)) else {
        return Ok(false);
    };
    if lambda <= 1.0 + tol {
        return Ok(false);
    }
    let roots = complex_roots(p);
    let (outer, inner) = (lambda, 1.0 / lambda);
    let mut on_outer = 0;
    let mut on_inner = 0;
    for z in roots {
        let r = z.norm();
        if r > outer + tol || r < inner - tol {
            return Ok(false);
        }
        if r >= outer - tol {
            on_outer += 1;
        }
        if r <= inner + tol {
            on_inner += 1;
        }
    }
    Ok(on_outer <= 1 && on_inner <= 1)
}

/// Multiplicity of `(u − 1)` as an exact factor.
pub fn count_u_minus_one(theta: &LaurentPoly) -> usize {
    let dims = theta.dims();
    let d = &LaurentPoly::u(dims) - &LaurentPoly::one(dims);
    let mut count = 0;
    let mut cur = theta.clone();
    while !cur.is_zero() {
        match cur.div_exact(&d) {
            Ok(q) => {
                cur = q;
                count += 1;
            }
            Err(_) => break,
        }
    }
    count
}

pub fn analyze_class(
    theta: &LaurentPoly,
    phi: &CohomClass,
    strip_units: Option<usize>,
    root_tol: f64,
    biperron_tol: f64,
) -> Result<SpecializationReport> {
    if theta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    phi.check_dims(theta)?;
    if phi.y <= 0 || !in_fibered_cone(theta, phi)? {
        return Err(Error::OutsideCone);
    }
    let strip = strip_units.unwrap_or_else(|| count_u_minus_one(theta));
    let (spec, _) = theta.specialize_1var(&phi.to_vec())?;
    let unit = IntPoly::x_pow_minus_one(phi.y as usize);
    let mut poly = spec;
    for _ in 0..strip {
        poly = match poly.div_rem_monic(&unit) {
            Some((q, r)) if r.is_zero() => q,
            Some((_, r)) => {
                return Err(Error::InexactDivision {
                    remainder: Box::new(int_poly_as_laurent(&r)),
                })
            }
            None => unreachable!("x^y - 1 is monic"),
        };
    }
    if poly.leading().is_some_and(Signed::is_negative) {
        poly = poly.neg();
    }
    let largest_root = largest_root(&poly, root_tol)?;
    let is_biperron = match is_biperron(&poly, biperron_tol) {
        Ok(b) => b,
        Err(Error::NotMonic) => false,
        Err(e) => return Err(e),
    };
    Ok(SpecializationReport {
        phi: phi.clone(),
        poly,
        stripped_units: strip,
        largest_root,
        is_biperron,
        is_primitive_class: is_primitive(&phi.to_vec())?,
        in_cone: true,
    })
}

fn int_poly_as_laurent(p: &IntPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        0,
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (ExpVec::new(&[], d as i32), BigInt::clone(c))),
    )
    .expect("single-variable ring")
}
