//! Point series for plotting: Hill boundaries, the Levi-Civita curves, the
//! zero set of the curvature numerator and the threshold curves.
//!
//! Every series carries the value of its defining function at each point, so
//! a consumer can check how well the points sit on the curve.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::elliptic;
use crate::fiberwise;
use crate::levicivita;
use crate::model::{self, Frame, HillComponent, ProblemParams};
use crate::scan::{
    sign_scan, trace_implicit, Polyline, Rect, ScanConfig, TraceOptions, WithGradient,
};
use crate::taylor::Taylor2;
use crate::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub points: Vec<[f64; 2]>,
    /// Defining function at each point.
    pub values: Vec<f64>,
}

impl Series {
    fn new(name: impl Into<String>, points: Vec<[f64; 2]>, f: impl Fn([f64; 2]) -> f64) -> Series {
        let values = points.iter().map(|p| f(*p)).collect();
        Series {
            name: name.into(),
            points,
            values,
        }
    }

    fn from_polyline(
        name: impl Into<String>,
        line: &Polyline,
        f: impl Fn([f64; 2]) -> f64,
    ) -> Series {
        Series::new(name, line.points.clone(), f)
    }

    fn reflected(&self, name: impl Into<String>, map: impl Fn([f64; 2]) -> [f64; 2]) -> Series {
        Series {
            name: name.into(),
            points: self.points.iter().map(|p| map(*p)).collect(),
            values: self.values.clone(),
        }
    }

    pub fn nearest(&self, p: [f64; 2]) -> Option<f64> {
        self.points
            .iter()
            .map(|q| (q[0] - p[0]).hypot(q[1] - p[1]))
            .min_by(f64::total_cmp)
    }
}

/// Writes `series,x,y,f` rows, floats with 17 significant digits.
pub fn write_csv<W: Write>(series: &[Series], mut out: W) -> std::io::Result<()> {
    writeln!(out, "series,x,y,f")?;
    for s in series {
        for (p, v) in s.points.iter().zip(&s.values) {
            writeln!(out, "{},{:.16e},{:.16e},{:.16e}", s.name, p[0], p[1], v)?;
        }
    }
    Ok(())
}

fn line(name: &str, through: [f64; 2], slope: f64, half_width: f64, n: usize) -> Series {
    let pts = (0..n)
        .map(|k| {
            let t = -half_width + 2.0 * half_width * k as f64 / (n - 1) as f64;
            [through[0] + t, through[1] + slope * t]
        })
        .collect();
    Series::new(name, pts, |p| {
        p[1] - through[1] - slope * (p[0] - through[0])
    })
}

/// Both components of `{U = c}` plus the tangent lines `q2 = +-sqrt(2)(q1 - l)`.
pub fn hill(params: &ProblemParams, c: f64, rays: usize) -> Result<Vec<Series>> {
    let u = |p: [f64; 2]| model::potential(p, params, Frame::Standard).map_or(f64::NAN, |v| v - c);
    let mut out = Vec::new();
    for comp in [HillComponent::Earth, HillComponent::Moon] {
        let mut pts = model::hill_boundary(params, c, comp, rays)?;
        pts.push(pts[0]);
        out.push(Series::new(comp.to_string(), pts, u));
    }
    let l = [params.l(), 0.0];
    out.push(line("tangent_plus", l, SQRT2, 0.15, 61));
    out.push(line("tangent_minus", l, -SQRT2, 0.15, 61));
    Ok(out)
}

fn levi_series(
    name: &str,
    params: &ProblemParams,
    c: f64,
    mut traced: Polyline,
    f: impl Fn([f64; 2]) -> f64,
) -> Result<Vec<Series>> {
    let x0 = levicivita::critical_x0(params, c)?;
    // The tracer starts just off the crossing; close the gap when the crossing is on the curve.
    if f([x0, 0.0]).abs() <= 1e-10 {
        traced.points.insert(0, [x0, 0.0]);
    }
    let s = Series::from_polyline(name, &traced, f);
    let mirror = s.reflected(format!("{name}_mirror"), |p| [p[0], -p[1]]);
    Ok(vec![
        s,
        mirror,
        line("tangent_plus", [x0, 0.0], SQRT2, 0.1, 41),
        line("tangent_minus", [x0, 0.0], -SQRT2, 0.1, 41),
    ])
}

/// `{V = 0}` in the Levi-Civita plane, traced from `(x0, 0)`.
pub fn v_zero(params: &ProblemParams, c: f64, opts: &TraceOptions) -> Result<Vec<Series>> {
    let traced = levicivita::trace_v_zero(params, c, opts)?;
    levi_series("v0", params, c, traced, |p| {
        levicivita::v_value(p[0], p[1], params, c).unwrap_or(f64::NAN)
    })
}

/// `{F = 0}` in the Levi-Civita plane, traced from `(x0, 0)`.
pub fn f_zero(params: &ProblemParams, c: f64, opts: &TraceOptions) -> Result<Vec<Series>> {
    let traced = levicivita::trace_f_zero(params, c, opts)?;
    levi_series("f0", params, c, traced, |p| {
        levicivita::f_value(p[0], p[1], params, c).unwrap_or(f64::NAN)
    })
}

/// `{C = 0}` in the upper half plane and its mirror image.
///
/// Seeds come from a sign scan of `C` over `[-0.6, 1.6] x [0, 1.6]`; a new
/// branch is traced from each seed that is not already on a traced branch.
pub fn c_zero(params: &ProblemParams, max_branches: usize) -> Result<Vec<Series>> {
    let region = Rect::new(-0.6, 1.6, 1e-3, 1.6);
    let c = |p: [f64; 2]| fiberwise::c_only(p, params);
    let cfg = ScanConfig {
        nx: 160,
        ny: 120,
        refine_depth: 3,
        max_witnesses: 256,
        ..Default::default()
    };
    let scan = sign_scan("curvature numerator", c, region, &cfg)?;
    let field = WithGradient {
        f: c,
        grad: |p: [f64; 2]| {
            let t: Taylor2 = fiberwise::c_taylor(p, params, 1)?;
            Ok([t.derivative(1, 0), t.derivative(0, 1)])
        },
    };
    let opts = TraceOptions {
        step: 2e-3,
        max_len: 8.0,
        tol: 1e-12,
        bounds: Some(region),
        ..Default::default()
    };
    let mut branches: Vec<Series> = Vec::new();
    for w in &scan.witnesses {
        if branches.len() >= max_branches {
            break;
        }
        let seed = [w.point[0], w.point[1]];
        if branches
            .iter()
            .any(|b| b.nearest(seed).is_some_and(|d| d < 1e-2))
        {
            continue;
        }
        let mut pts = Vec::new();
        for dir in [None, Some(-1.0)] {
            let mut o = opts;
            if let Some(sign) = dir {
                // Second pass runs the other way from the same seed.
                let g = field_gradient(params, seed)?;
                o.direction = Some([sign * -g[1], sign * g[0]]);
            }
            let line = match trace_implicit(&field, seed, &o) {
                Ok(l) => l,
                Err(e) => e.partial,
            };
            if line.closed {
                pts = line.points;
                break;
            }
            if pts.is_empty() {
                pts = line.points;
            } else {
                let mut back: Vec<_> = line.points.into_iter().rev().collect();
                back.pop();
                back.extend(pts);
                pts = back;
            }
        }
        if pts.len() >= 2 {
            let name = format!("czero_{}", branches.len());
            branches.push(Series::new(name, pts, |p| c(p).unwrap_or(f64::NAN)));
        }
    }
    let mirrors: Vec<Series> = branches
        .iter()
        .map(|b| b.reflected(format!("{}_mirror", b.name), |p| [p[0], -p[1]]))
        .collect();
    branches.extend(mirrors);
    let l = [params.l(), 0.0];
    branches.push(line("tangent_plus", l, SQRT2, 0.15, 61));
    branches.push(line("tangent_minus", l, -SQRT2, 0.15, 61));
    Ok(branches)
}

fn field_gradient(params: &ProblemParams, p: [f64; 2]) -> Result<[f64; 2]> {
    let t = fiberwise::c_taylor(p, params, 1)?;
    Ok([t.derivative(1, 0), t.derivative(0, 1)])
}

/// `c^2 x^4 + 3c x^3 + x^2 + 1 = 0` in the `(x, c)` plane for `1 <= x <= x_max`.
///
/// The quartic is quadratic in `c`, so both branches are explicit:
/// `c = (-3x +- sqrt(5x^2 - 4)) / (2x^2)`. At `x = 1` they start at `c = -1` and `c = -2`.
pub fn quartic(x_max: f64, n: usize) -> Result<Vec<Series>> {
    if x_max.is_nan() || x_max <= 1.0 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "quartic needs x_max > 1 and n >= 2, got {x_max}, {n}"
        )));
    }
    let f = |p: [f64; 2]| {
        let (x, c) = (p[0], p[1]);
        c * c * x.powi(4) + 3.0 * c * x.powi(3) + x * x + 1.0
    };
    let xs: Vec<f64> = (0..n)
        .map(|k| 1.0 + (x_max - 1.0) * k as f64 / (n - 1) as f64)
        .collect();
    let branch = |sign: f64| -> Vec<[f64; 2]> {
        xs.iter()
            .map(|&x| {
                [
                    x,
                    (-3.0 * x + sign * (5.0 * x * x - 4.0).sqrt()) / (2.0 * x * x),
                ]
            })
            .collect()
    };
    Ok(vec![
        Series::new("upper", branch(1.0), f),
        Series::new("lower", branch(-1.0), f),
    ])
}

/// `c0(mu)` and `c_J(mu)` on `mu = k / n`, `0 < k < n`; the `f` column holds
/// `eta(c0)` and `0` respectively.
pub fn c0_curve(n: usize) -> Result<Vec<Series>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let mut c0 = Vec::new();
    let mut eta = Vec::new();
    let mut cj = Vec::new();
    for k in 1..n {
        let mu = k as f64 / n as f64;
        let p = ProblemParams::new(mu)?;
        let v = elliptic::c0(mu)?;
        c0.push([mu, v]);
        eta.push(elliptic::eta(v, p.m()));
        cj.push([mu, p.c_jacobi()]);
    }
    let zeros = vec![0.0; cj.len()];
    Ok(vec![
        Series {
            name: "c0".into(),
            points: c0,
            values: eta,
        },
        Series {
            name: "cJ".into(),
            points: cj,
            values: zeros,
        },
    ])
}
