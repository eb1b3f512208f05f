//! Ordered block permutations.
//!
//! An OBP is a permutation `sigma` of `1..=n` together with positive block
//! widths `k`. The blocks `B_1, …, B_n` partition `1..=K` into consecutive
//! runs of lengths `k_i`, and `ξ` permutes the blocks according to `sigma`.
//! All public indices are 1-based.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{is_irreducible, IntMatrix};

const MAX_TOTAL: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obp {
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    k: Vec<usize>,
    /// `block_starts[i] = k_1 + … + k_i`, with `block_starts[0] = 0`.
    block_starts: Vec<usize>,
    /// Offset added by ξ to the position of an element within its block.
    dest_offset: Vec<usize>,
}

/// The ξ-orbit of `start` up to its first return to `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub start: usize,
    pub elements: Vec<usize>,
    /// Block index of every element, i.e. the edge path of the image curve.
    pub edge_path: Vec<usize>,
    /// `ξ^{m}(start)`, the first return.
    pub returns_to: usize,
}

impl Orbit {
    /// First-return exponent `m_i`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub first_return_ok: bool,
    pub covers_ok: bool,
    pub endpoints_ok: bool,
    pub irreducible_ok: bool,
    pub failures: Vec<String>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.first_return_ok && self.covers_ok && self.endpoints_ok && self.irreducible_ok
    }
}

impl Obp {
    pub fn new(sigma: &[i64], k: &[i64]) -> Result<Self> {
        let n = sigma.len();
        if n != k.len() {
            return Err(Error::SizeMismatch(format!(
                "sigma has {n} entries, k has {}",
                k.len()
            )));
        }
        if n < 2 {
            return Err(Error::SizeMismatch(format!("n = {n}, need at least 2")));
        }
        let mut sigma_inv = vec![0usize; n + 1];
        let mut sig = Vec::with_capacity(n);
        for (i, &s) in sigma.iter().enumerate() {
            if s < 1 || s as usize > n || sigma_inv[s as usize] != 0 {
                return Err(Error::NotAPermutation(n));
            }
            sigma_inv[s as usize] = i + 1;
            sig.push(s as usize);
        }
        let mut widths = Vec::with_capacity(n);
        let mut total: u64 = 0;
        for (i, &w) in k.iter().enumerate() {
            if w < 1 {
                return Err(Error::NonPositiveWidth {
                    index: i + 1,
                    value: w,
                });
            }
            total = total.saturating_add(w as u64);
            widths.push(w as usize);
        }
        if total > MAX_TOTAL {
            return Err(Error::SizeTooLarge(total));
        }

        let mut block_starts = vec![0usize; n + 1];
        for i in 0..n {
            block_starts[i + 1] = block_starts[i] + widths[i];
        }
        // Block b lands after every block whose sigma-image is smaller.
        let mut dest_offset = vec![0usize; n + 1];
        for b in 1..=n {
            dest_offset[b] = (1..sig[b - 1]).map(|i| widths[sigma_inv[i] - 1]).sum();
        }
        Ok(Obp {
            sigma: sig,
            sigma_inv,
            k: widths,
            block_starts,
            dest_offset,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// `K = k_1 + … + k_n`
    pub fn total(&self) -> usize {
        self.block_starts[self.n()]
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inverse(&self, i: usize) -> usize {
        self.sigma_inv[i]
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn block_starts(&self) -> &[usize] {
        &self.block_starts
    }

    /// `(min B_i, max B_i)`
    pub fn block_range(&self, i: usize) -> (usize, usize) {
        (self.block_starts[i - 1] + 1, self.block_starts[i])
    }

    /// The block function β.
    pub fn block_of(&self, j: usize) -> Result<usize> {
        self.check_index(j)?;
        Ok(self.block_starts.partition_point(|&s| s < j))
    }

    pub fn xi(&self, j: usize) -> Result<usize> {
        let b = self.block_of(j)?;
        Ok(self.dest_offset[b] + j - self.block_starts[b - 1])
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.total() {
            Err(Error::IndexOutOfRange {
                index: j,
                bound: self.total(),
            })
        } else {
            Ok(())
        }
    }

    /// Orbits `O_1, …, O_n`. The first step is always taken, so `m_i ≥ 2`
    /// even when `ξ(i) ≤ n`.
    pub fn orbits(&self) -> Result<Vec<Orbit>> {
        let n = self.n();
        let cap = self.total();
        (1..=n)
            .map(|start| {
                let mut elements = vec![start];
                let mut cur = self.xi(start)?;
                loop {
                    elements.push(cur);
                    if elements.len() > cap + 1 {
                        return Err(Error::NonTermination(start));
                    }
                    cur = self.xi(cur)?;
                    if cur <= n {
                        break;
                    }
                }
                let edge_path = elements
                    .iter()
                    .map(|&e| self.block_of(e))
                    .collect::<Result<_>>()?;
                Ok(Orbit {
                    start,
                    elements,
                    edge_path,
                    returns_to: cur,
                })
            })
            .collect()
    }

    /// The first-return map ξ′ as a list `(ξ′(1), …, ξ′(n))`.
    pub fn first_return(&self) -> Result<Vec<usize>> {
        Ok(self.orbits()?.iter().map(|o| o.returns_to).collect())
    }

    pub fn incidence_matrix(&self) -> Result<IntMatrix> {
        Ok(incidence_from_orbits(self.n(), &self.orbits()?))
    }

    pub fn check_admissibility(&self) -> Result<AdmissibilityReport> {
        let n = self.n();
        let orbits = self.orbits()?;
        let mut failures = Vec::new();

        let first_return: Vec<usize> = orbits.iter().map(|o| o.returns_to).collect();
        let first_return_ok = first_return == self.sigma;
        if !first_return_ok {
            failures.push(format!(
                "(i) first return {:?} differs from sigma {:?}",
                first_return, self.sigma
            ));
        }

        let total_len: usize = orbits.iter().map(Orbit::len).sum();
        let mut seen = vec![false; self.total() + 1];
        let mut duplicates = 0usize;
        for &e in orbits.iter().flat_map(|o| &o.elements) {
            if std::mem::replace(&mut seen[e], true) {
                duplicates += 1;
            }
        }
        let covers_ok = total_len == self.total() && duplicates == 0;
        if !covers_ok {
            failures.push(format!(
                "(ii) orbits have {total_len} elements with {duplicates} repeats, K = {}",
                self.total()
            ));
        }

        let mut endpoints_ok = true;
        for (idx, orbit) in orbits.iter().enumerate() {
            let i = idx + 1;
            let (lo, hi) = self.block_range(i);
            let mut required = vec![lo];
            if i != n {
                required.push(hi);
            }
            for r in required {
                if !orbit.elements.contains(&r) {
                    endpoints_ok = false;
                    failures.push(format!("(iii) O_{i} misses {r} of block B_{i}"));
                }
            }
        }
        let owner = self.sigma_inverse(n);
        if !orbits[owner - 1].elements.contains(&self.total()) {
            endpoints_ok = false;
            failures.push(format!("(iii) K = {} is not in O_{owner}", self.total()));
        }

        let a = incidence_from_orbits(n, &orbits);
        let irreducible_ok = is_irreducible(&a)?;
        if !irreducible_ok {
            failures.push("(iv) incidence matrix is reducible".into());
        }

        Ok(AdmissibilityReport {
            first_return_ok,
            covers_ok,
            endpoints_ok,
            irreducible_ok,
            failures,
        })
    }
}

/// `A_ij = |B_i ∩ O_j|`, counted along the orbit list.
pub(crate) fn incidence_from_orbits(n: usize, orbits: &[Orbit]) -> IntMatrix {
    let mut counts = vec![vec![0i64; n]; n];
    for (j, orbit) in orbits.iter().enumerate() {
        for &b in &orbit.edge_path {
            counts[b - 1][j] += 1;
        }
    }
    let mut a = IntMatrix::zeros(n, n);
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            a[(i, j)] = BigInt::from(c);
        }
    }
    a
}
