//! The Teichmüller polynomial of an admissible OBP.
//!
//! Invariant cohomology is `ker(Aᵀ − I)`. Row `i` of a chosen kernel basis
//! records where the lift of the `i`-th edge ends in the free abelian cover,
//! and walking each orbit's edge path with those labels produces the lifted
//! action `A(t)`. The polynomial is then `det(uI − A(t)) / (u − 1)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::intlinalg::{kernel_basis, same_lattice, IntMatrix};
use crate::laurent::{det_laurent, ExpVec, LaurentMatrix, LaurentPoly};
use crate::obp::{Obp, Orbit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    /// `n × (b−1)`, columns span `ker(Aᵀ − I)`.
    pub basis: IntMatrix,
    pub betti: usize,
    /// `a_rows[i]` is row `i` of `basis`: the deck translation of edge `i+1`.
    pub a_rows: Vec<Vec<i32>>,
}

#[derive(Debug, Clone)]
pub struct TeichResult {
    pub theta: LaurentPoly,
    pub char_poly_a_t: LaurentPoly,
    pub a_t: LaurentMatrix,
    pub cover: CoverData,
    pub betti: usize,
    /// Set when `b = 1`, outside the `b ≥ 2` setting the construction targets.
    pub trivial_cohomology: bool,
}

pub fn invariant_cohomology(
    a: &IntMatrix,
    basis_override: Option<&IntMatrix>,
) -> Result<CoverData> {
    let m = a.transpose().minus_scalar_identity(&BigInt::one())?;
    let canonical = kernel_basis(&m);
    let basis = match basis_override {
        None => canonical,
        Some(b) => {
            if b.rows() != a.rows()
                || b.cols() != canonical.cols()
                || !m.mul(b)?.is_zero()
                || !same_lattice(b, &canonical)?
            {
                return Err(Error::OverrideNotAKernelBasis);
            }
            b.clone()
        }
    };
    let a_rows = (0..basis.rows())
        .map(|i| {
            basis
                .row(i)
                .iter()
                .map(|v| v.to_i32().ok_or(Error::OverrideNotAKernelBasis))
                .collect::<Result<Vec<i32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverData {
        betti: basis.cols() + 1,
        basis,
        a_rows,
    })
}

fn lift_from_orbits(n: usize, orbits: &[Orbit], cover: &CoverData) -> Result<LaurentMatrix> {
    if cover.a_rows.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "cover has {} rows, OBP has n = {n}",
            cover.a_rows.len()
        )));
    }
    let dims = cover.betti - 1;
    let mut m = LaurentMatrix::zeros(n, n, dims);
    for (col, orbit) in orbits.iter().enumerate() {
        let mut prefix = vec![0i32; dims];
        for &edge in &orbit.edge_path {
            let term = LaurentPoly::monomial(ExpVec::new(&prefix, 0), 1);
            m[(edge - 1, col)] = &m[(edge - 1, col)] + &term;
            for (p, a) in prefix.iter_mut().zip(&cover.a_rows[edge - 1]) {
                *p += a;
            }
        }
    }
    Ok(m)
}

/// The action of the lifted map on the edge module of the lifted train track.
pub fn lift_matrix(obp: &Obp, cover: &CoverData) -> Result<LaurentMatrix> {
    lift_from_orbits(obp.n(), &obp.orbits()?, cover)
}

/// Total deck translation `Σ_r a_{i_r}` accumulated along each orbit's edge path.
pub fn orbit_translations(obp: &Obp, cover: &CoverData) -> Result<Vec<Vec<i32>>> {
    let dims = cover.betti - 1;
    Ok(obp
        .orbits()?
        .iter()
        .map(|o| {
            o.edge_path.iter().fold(vec![0i32; dims], |mut acc, &e| {
                for (x, a) in acc.iter_mut().zip(&cover.a_rows[e - 1]) {
                    *x += a;
                }
                acc
            })
        })
        .collect())
}

pub fn teichmuller_polynomial(
    obp: &Obp,
    basis_override: Option<&IntMatrix>,
) -> Result<TeichResult> {
    let report = obp.check_admissibility()?;
    if !report.is_admissible() {
        return Err(Error::NotAdmissible(Box::new(report)));
    }
    let orbits = obp.orbits()?;
    let a = crate::obp::incidence_from_orbits(obp.n(), &orbits);
    let cover = invariant_cohomology(&a, basis_override)?;
    let a_t = lift_from_orbits(obp.n(), &orbits, &cover)?;
    if a_t.at_t_ones() != a {
        return Err(Error::PipelineIntegrity(
            "lifted matrix does not reduce to the incidence matrix at t = 1".into(),
        ));
    }
    let dims = cover.betti - 1;
    let char_poly_a_t = det_laurent(&a_t.u_identity_minus()?)?;
    let u_minus_one = &LaurentPoly::u(dims) - &LaurentPoly::one(dims);
    let theta = match char_poly_a_t.div_exact(&u_minus_one) {
        Ok(q) => q.normalized(),
        Err(Error::InexactDivision { remainder }) => {
            return Err(Error::PipelineIntegrity(format!(
                "u - 1 does not divide det(uI - A(t)), remainder {}",
                remainder.to_text()
            )))
        }
        Err(e) => return Err(e),
    };
    Ok(TeichResult {
        theta,
        char_poly_a_t,
        betti: cover.betti,
        trivial_cohomology: cover.betti == 1,
        a_t,
        cover,
    })
}
