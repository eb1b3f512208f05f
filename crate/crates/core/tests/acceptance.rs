//! End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
//! process exits non-zero if any of them fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teich_core::cone::{analyze_class, in_fibered_cone};
use teich_core::families::{
    closed_form_theta, family_basis, family_obp, prop1_polynomial, prop5_incidence,
    prop5_transform, quadratic_factor, verify_grid,
};
use teich_core::intlinalg::{char_poly_int, spectral_radius};
use teich_core::teichpoly::{
    invariant_cohomology, lift_matrix, orbit_translations, teichmuller_polynomial,
};
use teich_core::{
    CohomClass, Error, ExpVec, IntMatrix, IntPoly, LaurentPoly, Obp, Prop1Params, BIPERRON_TOL,
};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_obp() -> Obp {
    Obp::new(&[2, 4, 1, 6, 3, 5], &[11, 12, 10, 12, 10, 10]).unwrap()
}

fn example_basis() -> IntMatrix {
    IntMatrix::from_columns(6, &[vec![0, 0, -1, 0, 0, 1], vec![0, 0, -1, 0, 1, 0]]).unwrap()
}

fn within(elapsed: Duration, budget: Duration) -> Check {
    ensure(elapsed < budget, || {
        format!("took {elapsed:?}, budget {budget:?}")
    })
}

fn golden_example() -> Check {
    let start = Instant::now();
    let res = teichmuller_polynomial(&example_obp(), Some(&example_basis()))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let dims = 2;
    let mono = |t: &[i32]| LaurentPoly::monomial(ExpVec::new(t, 0), 1);
    let middle = [
        mono(&[1, 1]),
        mono(&[1, 0]),
        LaurentPoly::constant(dims, 7),
        mono(&[-1, 0]),
        mono(&[-1, -1]),
    ]
    .iter()
    .fold(LaurentPoly::zero(dims), |acc, x| &acc + x);
    let u = LaurentPoly::u(dims);
    let one = LaurentPoly::one(dims);
    let quad = &(&(&u * &u) - &(&middle * &u)) + &one;
    let expected = (&(&u - &one).pow(3) * &quad).normalized();
    ensure(res.theta == expected, || {
        format!(
            "got {}, expected {}",
            res.theta.to_text(),
            expected.to_text()
        )
    })?;
    within(elapsed, Duration::from_secs(1))
}

fn incidence_and_char_poly() -> Check {
    let start = Instant::now();
    let a = example_obp()
        .incidence_matrix()
        .map_err(|e| e.to_string())?;
    let expected_a = IntMatrix::from_rows(&[
        vec![2, 2, 2, 2, 2, 1],
        vec![1, 3, 2, 2, 3, 1],
        vec![1, 2, 2, 2, 2, 1],
        vec![1, 2, 1, 3, 3, 2],
        vec![1, 2, 1, 2, 3, 1],
        vec![1, 2, 1, 2, 2, 2],
    ])
    .unwrap();
    ensure(a == expected_a, || {
        format!("incidence matrix differs: {:?}", a.to_i64_rows())
    })?;
    let x_minus_one = IntPoly::from_i64(&[-1, 1]);
    let expected = (0..4).fold(IntPoly::from_i64(&[1, -11, 1]), |acc, _| {
        acc.mul(&x_minus_one)
    });
    let cp = char_poly_int(&a).map_err(|e| e.to_string())?;
    ensure(cp == expected, || {
        format!("char poly {cp}, expected {expected}")
    })?;
    within(start.elapsed(), Duration::from_secs(1))
}

fn family_reproduction() -> Check {
    let start = Instant::now();
    let grid = verify_grid(&[2, 3, 4, 5, 6], &[0, 1, 2, 3]);
    let elapsed = start.elapsed();
    for ((g, p), r) in &grid {
        match r {
            Ok(true) => {}
            Ok(false) => return Err(format!("(g, p) = ({g}, {p}) differs from the closed form")),
            Err(e) => return Err(format!("(g, p) = ({g}, {p}): {e}")),
        }
    }
    ensure(grid.len() == 20, || format!("{} runs", grid.len()))?;
    within(elapsed, Duration::from_secs(60))
}

fn family_admissibility() -> Check {
    for n in [4usize, 6, 8, 10, 12] {
        let obp = family_obp(n as i64 / 2, 0).map_err(|e| e.to_string())?;
        let report = obp.check_admissibility().map_err(|e| e.to_string())?;
        ensure(report.is_admissible(), || {
            format!("n = {n}: {:?}", report.failures)
        })?;
        let lengths: Vec<usize> = obp.orbits().unwrap().iter().map(|o| o.len()).collect();
        let expected: Vec<usize> = (1..=n)
            .map(|i| if i == 1 { 2 * n - 1 } else { 4 * (n - i) + 2 })
            .collect();
        ensure(lengths == expected, || {
            format!("n = {n}: orbit lengths {lengths:?}")
        })?;
    }
    Ok(())
}

fn prop5_identity() -> Check {
    for g in 2..=6 {
        let base = family_obp(g, 0).map_err(|e| e.to_string())?;
        let a = base.incidence_matrix().unwrap();
        for p in 0..=3 {
            let stretched = prop5_transform(&base, p as u64).map_err(|e| e.to_string())?;
            ensure(stretched == family_obp(g, p).unwrap(), || {
                format!("({g}, {p}): OBP differs")
            })?;
            ensure(
                stretched.incidence_matrix().unwrap() == prop5_incidence(&a, p as u64),
                || format!("({g}, {p}): incidence identity fails"),
            )?;
        }
    }
    Ok(())
}

fn all_classes(dims: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..=dims {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn fibered_cone() -> Check {
    let mut checked = 0;
    for g in 2..=3 {
        for p in 0..=1 {
            let full = closed_form_theta(g, p).unwrap();
            let quad = quadratic_factor(g, p).unwrap();
            for v in all_classes(g as usize - 1, -4, 4) {
                let phi = CohomClass::from_slice(&v).unwrap();
                let expected = phi.y > 0 && phi.s.iter().all(|s| s.abs() < phi.y);
                for (name, poly) in [("full", &full), ("quadratic", &quad)] {
                    let got = in_fibered_cone(poly, &phi).map_err(|e| e.to_string())?;
                    ensure(got == expected, || {
                        format!("({g}, {p}) {name} at {v:?}: got {got}, expected {expected}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked == 2 * (2 * 81 + 2 * 729), || {
        format!("{checked} evaluations")
    })
}

/// Dominant eigenvalue of the companion matrix by power iteration.
fn power_iteration_root(p: &IntPoly) -> f64 {
    let c = p.to_f64_coeffs();
    let d = c.len() - 1;
    let mut v = vec![1.0; d];
    let mut lambda = 0.0;
    for _ in 0..200_000 {
        // companion action: shift up, last entry from the coefficients
        let top: f64 = -(0..d).map(|i| c[i] * v[i]).sum::<f64>() / c[d];
        let mut w: Vec<f64> = v[1..].to_vec();
        w.push(top);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next = w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>()
            / v.iter().map(|x| x * x).sum::<f64>();
        v = w.into_iter().map(|x| x / norm).collect();
        if (next - lambda).abs() < 1e-15 * next.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}

fn prop1_specializations() -> Check {
    let cases: [(usize, &[i64], i64); 3] = [(2, &[1], 7), (2, &[2], 9), (3, &[1, 0], 5)];
    for (m, a, a_m) in cases {
        let params = Prop1Params::new(m, a.to_vec(), a_m).map_err(|e| e.to_string())?;
        let report = prop1_polynomial(&params).map_err(|e| format!("{a:?}, {a_m}: {e}"))?;
        ensure(report.poly == params.expected_polynomial(), || {
            format!("{a:?}, {a_m}: got {}", report.poly)
        })?;
        ensure(report.is_biperron, || {
            format!("{a:?}, {a_m}: not bi-Perron")
        })?;
        let oracle = power_iteration_root(&report.poly);
        ensure((report.largest_root - oracle).abs() < 1e-7, || {
            format!(
                "{a:?}, {a_m}: root {} vs oracle {oracle}",
                report.largest_root
            )
        })?;
    }
    let params = Prop1Params::new(2, vec![0], 3).map_err(|e| e.to_string())?;
    match prop1_polynomial(&params) {
        Err(Error::NotPrimitive(v)) if v == vec![2] => Ok(()),
        other => Err(format!("(0, 3): expected NotPrimitive, got {other:?}")),
    }
}

fn cross_checks() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // (a) lift at t = 1 over random family instances
    for _ in 0..50 {
        let g = rng.gen_range(2..=6);
        let p = rng.gen_range(0..=8);
        let obp = family_obp(g, p).unwrap();
        let a = obp.incidence_matrix().unwrap();
        let cover = if rng.gen_bool(0.5) {
            invariant_cohomology(&a, None)
        } else {
            invariant_cohomology(&a, Some(&family_basis(g).unwrap()))
        }
        .map_err(|e| e.to_string())?;
        let lifted = lift_matrix(&obp, &cover).map_err(|e| e.to_string())?;
        ensure(lifted.at_t_ones() == a, || {
            format!("(a) ({g}, {p}): A(1) differs from A")
        })?;
    }

    let mut runs: Vec<(String, Obp, Option<IntMatrix>)> = vec![
        ("example".into(), example_obp(), Some(example_basis())),
        ("example/canonical".into(), example_obp(), None),
    ];
    for g in 2..=4 {
        for p in 0..=2 {
            runs.push((
                format!("family ({g}, {p})"),
                family_obp(g, p).unwrap(),
                None,
            ));
        }
    }
    for (name, obp, basis) in &runs {
        // (b) every run divides exactly; a failed division surfaces as an error
        let res =
            teichmuller_polynomial(obp, basis.as_ref()).map_err(|e| format!("(b) {name}: {e}"))?;
        ensure(!res.theta.is_zero(), || {
            format!("(b) {name}: zero polynomial")
        })?;

        // (c) e_u specialization against the Perron root of A
        let a = obp.incidence_matrix().unwrap();
        let rho = spectral_radius(&a, 1e-12).map_err(|e| e.to_string())?;
        let report = analyze_class(
            &res.theta,
            &CohomClass::reference(res.theta.dims()),
            None,
            1e-12,
            BIPERRON_TOL,
        )
        .map_err(|e| format!("(c) {name}: {e}"))?;
        ensure((report.largest_root - rho).abs() < 1e-8, || {
            format!(
                "(c) {name}: root {} vs spectral radius {rho}",
                report.largest_root
            )
        })?;

        // (d) closing cycles
        let cover = &res.cover;
        let totals = orbit_translations(obp, cover).unwrap();
        for (i, total) in totals.iter().enumerate() {
            ensure(total == &cover.a_rows[i], || {
                format!(
                    "(d) {name}: orbit {} closes at {total:?}, row is {:?}",
                    i + 1,
                    cover.a_rows[i]
                )
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden example", "exact, < 1 s", golden_example),
        (
            "2 incidence + char poly",
            "exact, < 1 s",
            incidence_and_char_poly,
        ),
        (
            "3 family reproduction",
            "exact, 20 runs < 60 s",
            family_reproduction,
        ),
        ("4 family admissibility", "exact", family_admissibility),
        ("5 stretch identity", "exact", prop5_identity),
        ("6 fibered cone", "exact, entries in [-4, 4]", fibered_cone),
        (
            "7 reciprocal specializations",
            "roots within 1e-7",
            prop1_specializations,
        ),
        (
            "8 cross-checks",
            "spectral radius within 1e-8",
            cross_checks,
        ),
    ];
    let mut failed = 0;
    for (name, tol, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {name} [{tol}] ({:.2?})", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} [{tol}]: {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
