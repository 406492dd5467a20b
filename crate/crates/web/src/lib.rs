//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The computations live in [`demo`] as ordinary Rust so they can be tested
//! natively; the exported functions only convert errors.

use wasm_bindgen::prelude::*;

pub mod demo;

pub use demo::{Constants, Verdict};

fn js(e: euler2c::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Critical energy and convexity thresholds for a mass ratio.
#[wasm_bindgen]
pub fn constants(mu: f64) -> Result<Constants, JsError> {
    demo::constants(mu).map_err(js)
}

/// Hill boundary of one component as `[x, y, kappa, x, y, kappa, ...]`.
///
/// `component` is `"earth"` or `"moon"`; `c` may equal the critical energy.
#[wasm_bindgen]
pub fn hill_curvature(mu: f64, c: f64, component: &str, rays: usize) -> Result<Vec<f64>, JsError> {
    demo::hill_curvature(mu, c, demo::component(component).map_err(js)?, rays).map_err(js)
}

/// Elliptic-regularization verdict from theory and from a sampled oracle on an
/// `n x n x 8` grid.
#[wasm_bindgen]
pub fn elliptic_verdict(mu: f64, c: f64, component: &str, n: usize) -> Result<Verdict, JsError> {
    demo::elliptic_verdict(mu, c, demo::component(component).map_err(js)?, n).map_err(js)
}
