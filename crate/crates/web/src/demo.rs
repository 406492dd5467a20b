use euler2c::elliptic::{self, EllipticGrid, EllipticPoint};
use euler2c::{fiberwise, model, Convexity, Error, HillComponent, ProblemParams, Result};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub mu: f64,
    pub l: f64,
    pub c_j: f64,
    pub c_e: f64,
    pub c_m: f64,
    pub c_e2: f64,
    pub c0: f64,
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    /// `Convex` or `NonConvex`.
    pub theory: String,
    pub oracle: String,
    pub samples: usize,
    /// Smallest tangential Hessian eigenvalue seen by the oracle.
    pub min_value: f64,
    /// Position of the worst sample in the standard frame.
    pub worst_x: f64,
    pub worst_y: f64,
    pub millis: f64,
}

pub fn component(name: &str) -> Result<HillComponent> {
    match name {
        "earth" => Ok(HillComponent::Earth),
        "moon" => Ok(HillComponent::Moon),
        _ => Err(Error::InvalidArgument(format!(
            "unknown component `{name}`"
        ))),
    }
}

pub fn constants(mu: f64) -> Result<Constants> {
    let p = ProblemParams::new(mu)?;
    let th = elliptic::thresholds(&p)?;
    Ok(Constants {
        mu,
        l: p.l(),
        c_j: th.c_j,
        c_e: th.c_e,
        c_m: th.c_m,
        c_e2: th.c_e2,
        c0: th.c0,
    })
}

pub fn hill_curvature(mu: f64, c: f64, component: HillComponent, rays: usize) -> Result<Vec<f64>> {
    let p = ProblemParams::new(mu)?;
    let pts = model::hill_boundary(&p, c, component, rays)?;
    let mut out = Vec::with_capacity(3 * pts.len());
    for q in pts {
        let kappa = fiberwise::c_value(q, &p)
            .ok()
            .and_then(|e| e.kappa)
            .unwrap_or(f64::NAN);
        out.extend_from_slice(&[q[0], q[1], kappa]);
    }
    Ok(out)
}

fn name(v: Convexity) -> String {
    v.to_string()
}

pub fn elliptic_verdict(mu: f64, c: f64, component: HillComponent, n: usize) -> Result<Verdict> {
    let p = ProblemParams::new(mu)?;
    let theory = elliptic::convexity_verdict(&p, c, component)?;
    let grid = EllipticGrid {
        n_lambda: n,
        n_nu: n,
        n_phi: 8,
    };
    let report = elliptic::oracle_convexity(&p, c, component, &grid)?;
    let a = &report.argmin;
    let worst = if a.len() == 4 {
        elliptic::sample_position(&EllipticPoint::new(a[0], a[1], a[2], a[3]))
    } else {
        [f64::NAN, f64::NAN]
    };
    Ok(Verdict {
        theory: name(theory),
        oracle: name(elliptic::oracle_verdict(&report)),
        samples: report.samples,
        min_value: report.min,
        worst_x: worst[0],
        worst_y: worst[1],
        millis: 1e3 * report.wall_time,
    })
}
