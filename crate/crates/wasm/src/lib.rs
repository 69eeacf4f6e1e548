//! Browser bindings. Every entry point takes Taylor coefficients as a JSON
//! array of `[re, im]` pairs and returns a JSON string.

use bergmanlab::functionals::{
    bergman_norm, bergman_norm2_exact, check_kulikov, hardy_norm, husimi, normalize_p, sup_u,
    ConvexG,
};
use bergmanlab::hardy::{normalize_hardy, phi_grid, phi_profile};
use bergmanlab::quadrature::{profile_from_sets, LevelSetOptions, LevelSets};
use bergmanlab::{SpaceParams, TaylorFunction};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Angular rays used by the demo; coarser than the CLI default to stay interactive.
const DEMO_RAYS: usize = 128;

fn parse(coeffs: &str) -> Result<TaylorFunction, String> {
    TaylorFunction::from_json_str(coeffs).map_err(|e| e.to_string())
}

fn space(p: f64, alpha: f64) -> Result<SpaceParams, String> {
    let s = if alpha == -1.0 {
        SpaceParams::hardy(p)
    } else {
        SpaceParams::bergman(p, alpha)
    };
    s.map_err(|e| e.to_string())
}

pub fn norm_json(coeffs: &str, alpha: f64, p: f64) -> Result<String, String> {
    let f = parse(coeffs)?;
    let e = |e: bergmanlab::Error| e.to_string();
    let out = if alpha == -1.0 {
        let exact = f.coefficients().iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        json!({ "exact_l2": exact, "quadrature": hardy_norm(&f, p).map_err(e)?, "p": p, "alpha": alpha })
    } else {
        json!({
            "exact_l2": bergman_norm2_exact(&f, alpha).map_err(e)?,
            "quadrature": bergman_norm(&f, space(p, alpha)?).map_err(e)?,
            "p": p,
            "alpha": alpha,
        })
    };
    Ok(out.to_string())
}

pub fn profile_json(coeffs: &str, alpha: f64, points: usize) -> Result<String, String> {
    let f = parse(coeffs)?;
    let e = |e: bergmanlab::Error| e.to_string();
    let t_min = 1e-3;
    let prof = if alpha == -1.0 {
        let g = normalize_hardy(&f, 2.0).map_err(e)?;
        let (peak, _) = sup_u(&g, space(2.0, -1.0)?).map_err(e)?;
        serde_json::to_value(phi_profile(&g, 2.0, &phi_grid(peak, t_min, points)).map_err(e)?)
    } else {
        let params = space(2.0, alpha)?;
        let g = normalize_p(&f, params).map_err(e)?;
        let u = husimi(&g, params);
        let sets = LevelSets::new(
            &u,
            LevelSetOptions {
                angular: DEMO_RAYS,
                ..LevelSetOptions::default()
            },
        );
        let grid = phi_grid(sets.peak().value, t_min, points);
        serde_json::to_value(profile_from_sets(&sets, &grid).map_err(e)?)
    };
    Ok(prof.map_err(|e| e.to_string())?.to_string())
}

pub fn kulikov_json(coeffs: &str, alpha: f64, p: f64, r: f64) -> Result<String, String> {
    let f = parse(coeffs)?;
    let e = |e: bergmanlab::Error| e.to_string();
    let params = space(p, alpha)?;
    let g = ConvexG::power(r).map_err(e)?;
    let report = check_kulikov(&normalize_p(&f, params).map_err(e)?, &g, params).map_err(e)?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// `{exact_l2, quadrature}`; α = -1 selects the Hardy space.
#[wasm_bindgen]
pub fn norm(coeffs: &str, alpha: f64, p: f64) -> Result<String, JsError> {
    norm_json(coeffs, alpha, p).map_err(|e| JsError::new(&e))
}

/// Distribution profile of the normalized function in the p = 2 space.
#[wasm_bindgen]
pub fn profile(coeffs: &str, alpha: f64, points: usize) -> Result<String, JsError> {
    profile_json(coeffs, alpha, points).map_err(|e| JsError::new(&e))
}

/// Kulikov's inequality with G(t) = t^r for the normalized function.
#[wasm_bindgen]
pub fn kulikov(coeffs: &str, alpha: f64, p: f64, r: f64) -> Result<String, JsError> {
    kulikov_json(coeffs, alpha, p, r).map_err(|e| JsError::new(&e))
}
