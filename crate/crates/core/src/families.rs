//! The families `f_{g,p}` with `σ = (n, …, 1)` and
//! `k = (2n−1, …, 2n−1, n + p(n−1)(2n−1))` on a genus-`g` surface, `n = 2g`,
//! their closed-form Teichmüller polynomials
//!
//! ```text
//! Θ_{g,p} = (u−1)^{2g−3} · (u² − (Σ t_i + 2g + p + 1 + Σ 1/t_i)·u + 1)
//! ```
//!
//! and the reciprocal polynomials obtained by specializing them.

use num_bigint::BigInt;
use num_traits::One;

use crate::cone::{analyze_class, is_primitive, CohomClass, SpecializationReport};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::intpoly::IntPoly;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::obp::Obp;
use crate::teichpoly::teichmuller_polynomial;
use crate::{BIPERRON_TOL, ROOT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub g: u32,
    pub p: u64,
}

impl FamilyParams {
    pub fn new(g: i64, p: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidParams(format!("genus {g} < 2")));
        }
        if p < 0 {
            return Err(Error::InvalidParams(format!("p = {p} is negative")));
        }
        Ok(FamilyParams {
            g: g as u32,
            p: p as u64,
        })
    }

    pub fn n(&self) -> usize {
        2 * self.g as usize
    }

    pub fn sigma(&self) -> Vec<i64> {
        (1..=self.n() as i64).rev().collect()
    }

    pub fn k(&self) -> Vec<i64> {
        let n = self.n() as i64;
        let d = 2 * n - 1;
        let mut k = vec![d; self.n()];
        k[self.n() - 1] = n + self.p as i64 * (n - 1) * d;
        k
    }
}

pub fn family_obp(g: i64, p: i64) -> Result<Obp> {
    let params = FamilyParams::new(g, p)?;
    Obp::new(&params.sigma(), &params.k())
}

/// Invariant-cohomology basis of the family: column `j` has `−1` in row
/// `j+1` and `+1` in row `n−j`.
pub fn family_basis(g: i64) -> Result<IntMatrix> {
    let params = FamilyParams::new(g, 0)?;
    let n = params.n();
    let cols = params.g as usize - 1;
    let mut b = IntMatrix::zeros(n, cols);
    for j in 1..=cols {
        b[(j, j - 1)] = BigInt::from(-1);
        b[(n - j - 1, j - 1)] = BigInt::one();
    }
    Ok(b)
}

/// Incidence matrix after replacing `k_n` by `k_n + p(k_1 + … + k_{n−1})`:
/// `p` copies of rows `1..n−1` are added to row `n`.
pub fn prop5_incidence(a: &IntMatrix, p: u64) -> IntMatrix {
    let n = a.rows();
    let mut out = a.clone();
    let p = BigInt::from(p);
    for j in 0..a.cols() {
        let above: BigInt = (0..n - 1).map(|i| &a[(i, j)]).sum();
        out[(n - 1, j)] += &p * above;
    }
    out
}

/// Stretches the last block of an admissible OBP with `σ(n) = 1`. The
/// incidence matrix of the result is checked against [`prop5_incidence`].
pub fn prop5_transform(obp: &Obp, p: u64) -> Result<Obp> {
    let n = obp.n();
    if obp.sigma()[n - 1] != 1 {
        return Err(Error::PreconditionSigmaN);
    }
    let report = obp.check_admissibility()?;
    if !report.is_admissible() {
        return Err(Error::NotAdmissible(Box::new(report)));
    }
    let sigma: Vec<i64> = obp.sigma().iter().map(|&s| s as i64).collect();
    let mut k: Vec<i64> = obp.k().iter().map(|&w| w as i64).collect();
    let r: i64 = k[..n - 1].iter().sum();
    k[n - 1] += p as i64 * r;
    let out = Obp::new(&sigma, &k)?;
    let expected = prop5_incidence(&obp.incidence_matrix()?, p);
    if out.incidence_matrix()? != expected {
        return Err(Error::PipelineIntegrity(
            "stretched OBP breaks the row-addition identity".into(),
        ));
    }
    Ok(out)
}

/// `u² − (Σ t_i + 2g + p + 1 + Σ 1/t_i)·u + 1` in `g−1` t-variables.
pub fn quadratic_factor(g: i64, p: i64) -> Result<LaurentPoly> {
    let params = FamilyParams::new(g, p)?;
    let dims = params.g as usize - 1;
    let mut terms = vec![
        (ExpVec::new(&vec![0; dims], 2), BigInt::one()),
        (ExpVec::new(&vec![0; dims], 0), BigInt::one()),
        (ExpVec::new(&vec![0; dims], 1), -BigInt::from(2 * g + p + 1)),
    ];
    for i in 0..dims {
        for sign in [1, -1] {
            let mut e = vec![0; dims];
            e[i] = sign;
            terms.push((ExpVec::new(&e, 1), BigInt::from(-1)));
        }
    }
    LaurentPoly::from_terms(dims, terms)
}

/// `Θ_{g,p}` expanded, in unit normal form.
pub fn closed_form_theta(g: i64, p: i64) -> Result<LaurentPoly> {
    let quad = quadratic_factor(g, p)?;
    let dims = quad.dims();
    let u_minus_one = &LaurentPoly::u(dims) - &LaurentPoly::one(dims);
    Ok((&u_minus_one.pow(2 * g as u32 - 3) * &quad).normalized())
}

/// Runs the full pipeline on the family OBP with [`family_basis`] and compares
/// with [`closed_form_theta`].
pub fn verify_family(g: i64, p: i64) -> Result<bool> {
    let obp = family_obp(g, p)?;
    let basis = family_basis(g)?;
    let result = teichmuller_polynomial(&obp, Some(&basis))?;
    Ok(result.theta == closed_form_theta(g, p)?)
}

/// [`verify_family`] over every `(g, p)` pair, one thread per pair.
pub fn verify_grid(gs: &[i64], ps: &[i64]) -> Vec<((i64, i64), Result<bool>)> {
    let pairs: Vec<(i64, i64)> = gs
        .iter()
        .flat_map(|&g| ps.iter().map(move |&p| (g, p)))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(g, p)| scope.spawn(move || verify_family(g, p)))
            .collect();
        pairs
            .iter()
            .zip(handles)
            .map(|(&gp, h)| (gp, h.join().expect("verification thread panicked")))
            .collect()
    })
}

/// With the canonical kernel basis the t-variables differ from the closed form
/// by a change of basis, so only the `t = 1` slices are compared.
pub fn verify_family_canonical_slice(g: i64, p: i64) -> Result<bool> {
    let obp = family_obp(g, p)?;
    let result = teichmuller_polynomial(&obp, None)?;
    let closed = closed_form_theta(g, p)?;
    let mut e_u = vec![0; closed.dims()];
    e_u.push(1);
    let (ours, _) = result.theta.specialize_1var(&e_u)?;
    let (theirs, _) = closed.specialize_1var(&e_u)?;
    Ok(ours == theirs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Params {
    pub m: usize,
    /// `a_1, …, a_{m−1}`
    pub a: Vec<i64>,
    pub a_m: i64,
}

impl Prop1Params {
    pub fn new(m: usize, a: Vec<i64>, a_m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("m = {m} < 2")));
        }
        if a.len() != m - 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} values a_1..a_{{m-1}}, got {}",
                m - 1,
                a.len()
            )));
        }
        if a.iter().any(|&x| x < 0) {
            return Err(Error::InvalidParams("a_i must be nonnegative".into()));
        }
        let bound = 3 + 2 * a.iter().sum::<i64>();
        if a_m < bound {
            return Err(Error::BoundViolated { a_m, bound });
        }
        Ok(Prop1Params { m, a, a_m })
    }

    pub fn genus(&self) -> i64 {
        1 + self.a.iter().sum::<i64>()
    }

    pub fn p(&self) -> i64 {
        self.a_m - (2 * self.genus() + 1)
    }

    /// `(1^{a_{m−1}}, 2^{a_{m−2}}, …, (m−1)^{a_1}, m)`
    pub fn class(&self) -> Vec<i64> {
        let mut v = Vec::new();
        for value in 1..self.m {
            let copies = self.a[self.m - 1 - value];
            v.extend(std::iter::repeat_n(value as i64, copies as usize));
        }
        v.push(self.m as i64);
        v
    }

    /// `x^{2m} − a_1 x^{2m−1} − … − a_m x^m − … − a_1 x + 1`
    pub fn expected_polynomial(&self) -> IntPoly {
        let m = self.m;
        let mut c = vec![0i64; 2 * m + 1];
        c[0] = 1;
        c[2 * m] = 1;
        for (i, &ai) in self.a.iter().enumerate() {
            c[i + 1] = -ai;
            c[2 * m - i - 1] = -ai;
        }
        c[m] = -self.a_m;
        IntPoly::from_i64(&c)
    }
}

pub fn prop1_polynomial(params: &Prop1Params) -> Result<SpecializationReport> {
    let v = params.class();
    if !is_primitive(&v)? {
        return Err(Error::NotPrimitive(v));
    }
    let bound = 3 + 2 * params.a.iter().sum::<i64>();
    if params.a_m < bound {
        return Err(Error::BoundViolated {
            a_m: params.a_m,
            bound,
        });
    }
    let g = params.genus();
    let theta = closed_form_theta(g, params.p())?;
    let phi = CohomClass::from_slice(&v).expect("class is nonempty");
    let report = analyze_class(
        &theta,
        &phi,
        Some(2 * g as usize - 3),
        ROOT_TOL,
        BIPERRON_TOL,
    )?;
    if report.poly != params.expected_polynomial() {
        return Err(Error::PipelineIntegrity(format!(
            "specialization {} differs from the expected {}",
            report.poly,
            params.expected_polynomial()
        )));
    }
    Ok(report)
}
