//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page can show them inline.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use teich_core::cone::{analyze_class, complex_roots, in_fibered_cone, is_primitive, teich_norm};
use teich_core::families::{closed_form_theta, family_basis, family_obp, prop1_polynomial};
use teich_core::teichpoly::teichmuller_polynomial;
use teich_core::{CohomClass, Prop1Params, BIPERRON_TOL, ROOT_TOL};

/// Largest `p` the page will run the full pipeline for.
pub const DEMO_P_MAX: i64 = 16;

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .expect("plain data serializes")
}

#[derive(Serialize)]
pub struct FamilySummary {
    pub g: i64,
    pub p: i64,
    pub sigma: Vec<usize>,
    pub k: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
    pub betti: usize,
    pub theta: String,
    pub matches_closed_form: bool,
    pub stretch_factor: f64,
}

pub fn family_summary_data(g: i64, p: i64) -> Result<FamilySummary, String> {
    if p > DEMO_P_MAX {
        return Err(format!("p is capped at {DEMO_P_MAX} here"));
    }
    let obp = family_obp(g, p).map_err(|e| e.to_string())?;
    let basis = family_basis(g).map_err(|e| e.to_string())?;
    let res = teichmuller_polynomial(&obp, Some(&basis)).map_err(|e| e.to_string())?;
    let closed = closed_form_theta(g, p).map_err(|e| e.to_string())?;
    let e_u = CohomClass::reference(res.theta.dims());
    let report =
        analyze_class(&res.theta, &e_u, None, ROOT_TOL, BIPERRON_TOL).map_err(|e| e.to_string())?;
    Ok(FamilySummary {
        g,
        p,
        sigma: obp.sigma().to_vec(),
        k: obp.k().to_vec(),
        orbit_lengths: obp
            .orbits()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|o| o.len())
            .collect(),
        betti: res.betti,
        theta: res.theta.to_text(),
        matches_closed_form: res.theta == closed,
        stretch_factor: report.largest_root,
    })
}

#[wasm_bindgen]
pub fn family_summary(g: i32, p: i32) -> String {
    respond(family_summary_data(g.into(), p.into()))
}

#[derive(Serialize)]
pub struct GridCell {
    pub s: i64,
    pub y: i64,
    pub in_cone: bool,
    pub norm: i64,
    /// Stretch factor of the primitive classes inside the cone.
    pub stretch_factor: Option<f64>,
}

/// Genus-2 classes `(s, y)` with `|s|, |y| ≤ radius`.
pub fn cone_grid_data(p: i64, radius: i64) -> Result<Vec<GridCell>, String> {
    if !(1..=12).contains(&radius) {
        return Err("radius must be between 1 and 12".into());
    }
    let theta = closed_form_theta(2, p).map_err(|e| e.to_string())?;
    let mut cells = Vec::new();
    for y in (-radius..=radius).rev() {
        for s in -radius..=radius {
            let phi = CohomClass::new(vec![s], y);
            let in_cone = in_fibered_cone(&theta, &phi).map_err(|e| e.to_string())?;
            let norm = teich_norm(&theta, &phi).map_err(|e| e.to_string())?;
            let primitive = is_primitive(&[s, y]).unwrap_or(false);
            let stretch_factor = if in_cone && primitive {
                let r = analyze_class(&theta, &phi, None, ROOT_TOL, BIPERRON_TOL)
                    .map_err(|e| e.to_string())?;
                Some(r.largest_root)
            } else {
                None
            };
            cells.push(GridCell {
                s,
                y,
                in_cone,
                norm,
                stretch_factor,
            });
        }
    }
    Ok(cells)
}

#[wasm_bindgen]
pub fn cone_grid(p: i32, radius: i32) -> String {
    respond(cone_grid_data(p.into(), radius.into()))
}

#[derive(Serialize)]
pub struct RootPicture {
    pub polynomial: String,
    pub class: Vec<i64>,
    pub genus: i64,
    pub p: i64,
    pub largest_root: f64,
    pub is_biperron: bool,
    /// `[re, im]` pairs
    pub roots: Vec<[f64; 2]>,
}

pub fn prop1_roots_data(m: usize, a: &str, a_m: i64) -> Result<RootPicture, String> {
    let a: Vec<i64> = if a.trim().is_empty() {
        Vec::new()
    } else {
        a.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| format!("not an integer: {x:?}"))
            })
            .collect::<Result<_, _>>()?
    };
    let params = Prop1Params::new(m, a, a_m).map_err(|e| e.to_string())?;
    let report = prop1_polynomial(&params).map_err(|e| e.to_string())?;
    Ok(RootPicture {
        polynomial: report.poly.to_string(),
        class: params.class(),
        genus: params.genus(),
        p: params.p(),
        largest_root: report.largest_root,
        is_biperron: report.is_biperron,
        roots: complex_roots(&report.poly)
            .iter()
            .map(|z| [z.re, z.im])
            .collect(),
    })
}

#[wasm_bindgen]
pub fn prop1_roots(m: u32, a: &str, a_m: i32) -> String {
    respond(prop1_roots_data(m as usize, a, a_m.into()))
}
