//! Levi-Civita regularization around the Earth.
//!
//! With `q = 2 v^2` and `p = u / conj(v)` (complex notation, Earth at the
//! origin) the function `K_c = |v|^2 (H - c)` becomes the mechanical
//! Hamiltonian `|u|^2 / 2 + V(v)` with
//!
//! `V(x, y) = -c (x^2 + y^2) - (1 - mu)/2 - mu (x^2 + y^2) / sqrt(R)`,
//! `R = 4x^4 + 8x^2y^2 + 4y^4 - 4x^2 + 4y^2 + 1 = |2v^2 - 1|^2`.
//!
//! The level `K_c = 0` is strictly convex iff the Salomão expression
//! `2(0 - V)(V_xx V_yy - V_xy^2) + V_xx V_y^2 + V_yy V_x^2 - 2 V_x V_y V_xy`
//! is positive on `{V <= 0}`. On `{V = 0}` only the last three terms survive;
//! they are called `F` here.

use serde::{Deserialize, Serialize};

use crate::exactpoly::{self, sign_certificate, Bound, Certificate, Sign, UniPoly};
use crate::model::{self, CartesianPhasePoint, Frame, HillComponent, ProblemParams};
use crate::scan::{trace_implicit, Polyline, Rect, Termination, TraceOptions, WithGradient};
use crate::taylor::Taylor2;
use crate::{Error, Result};

/// Phase point in Levi-Civita variables, `v` and `u` as complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LCPoint {
    pub v: [f64; 2],
    pub u: [f64; 2],
}

impl LCPoint {
    pub fn new(v: [f64; 2], u: [f64; 2]) -> Self {
        LCPoint { v, u }
    }

    /// Standard-frame phase point `(2 v^2, u / conj(v))`.
    pub fn to_cartesian(&self) -> Result<CartesianPhasePoint> {
        let [x, y] = self.v;
        let n = x * x + y * y;
        if n == 0.0 {
            return Err(Error::CollisionPoint(0.0, 0.0));
        }
        let q = [2.0 * (x * x - y * y), 4.0 * x * y];
        // u / conj(v) = u v / |v|^2
        let p = [
            (self.u[0] * x - self.u[1] * y) / n,
            (self.u[0] * y + self.u[1] * x) / n,
        ];
        CartesianPhasePoint::new(q, p, Frame::Standard)
    }
}

/// `V` and its partial derivatives through order three.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LCPotentialEval {
    pub value: f64,
    /// `(V_x, V_y)`
    pub gradient: [f64; 2],
    /// `(V_xx, V_xy, V_yy)`
    pub hessian: [f64; 3],
    /// `(V_xxx, V_xxy, V_xyy, V_yyy)`
    pub third: [f64; 4],
}

fn radicand(x: f64, y: f64) -> f64 {
    let s = x * x + y * y;
    4.0 * s * s - 4.0 * x * x + 4.0 * y * y + 1.0
}

fn moon_check(x: f64, y: f64) -> Result<()> {
    if radicand(x, y) <= 1e-300 {
        Err(Error::MoonCollision)
    } else {
        Ok(())
    }
}

/// Taylor expansion of `V` of the given order around `(x, y)`.
pub fn v_taylor(x: f64, y: f64, params: &ProblemParams, c: f64, order: usize) -> Result<Taylor2> {
    moon_check(x, y)?;
    let mu = params.mu();
    let (tx, ty) = Taylor2::variables(order, x, y);
    let x2 = &tx * &tx;
    let y2 = &ty * &ty;
    let s = &x2 + &y2;
    let r = (&(&s * &s).scale(4.0) - &x2.scale(4.0)) + y2.scale(4.0).add_constant(1.0);
    let inv = r.powf(-0.5);
    Ok((&s.scale(-c) - &(&s * &inv).scale(mu)).add_constant(-(1.0 - mu) / 2.0))
}

pub fn v_value(x: f64, y: f64, params: &ProblemParams, c: f64) -> Result<f64> {
    moon_check(x, y)?;
    let mu = params.mu();
    let s = x * x + y * y;
    Ok(-c * s - (1.0 - mu) / 2.0 - mu * s / radicand(x, y).sqrt())
}

pub fn v_eval(x: f64, y: f64, params: &ProblemParams, c: f64) -> Result<LCPotentialEval> {
    let t = v_taylor(x, y, params, c, 3)?;
    Ok(LCPotentialEval {
        value: t.value(),
        gradient: [t.derivative(1, 0), t.derivative(0, 1)],
        hessian: [t.derivative(2, 0), t.derivative(1, 1), t.derivative(0, 2)],
        third: [
            t.derivative(3, 0),
            t.derivative(2, 1),
            t.derivative(1, 2),
            t.derivative(0, 3),
        ],
    })
}

/// `K_c = |u|^2 / 2 + V(v)`.
pub fn k_value(pt: &LCPoint, params: &ProblemParams, c: f64) -> Result<f64> {
    let kinetic = 0.5 * (pt.u[0] * pt.u[0] + pt.u[1] * pt.u[1]);
    Ok(kinetic + v_value(pt.v[0], pt.v[1], params, c)?)
}

/// `x0 = sqrt((1 - sqrt(mu / -c)) / 2)`.
pub fn critical_x0(params: &ProblemParams, c: f64) -> Result<f64> {
    if !(c < 0.0 && params.mu() < -c) {
        return Err(Error::InvalidArgument(format!(
            "need mu < -c, got mu = {}, c = {c}",
            params.mu()
        )));
    }
    Ok((0.5 * (1.0 - (params.mu() / -c).sqrt())).sqrt())
}

/// The three critical points `(0, 0)`, `(x0, 0)` and `(-x0, 0)` of `V`.
pub fn critical_points_v(params: &ProblemParams, c: f64) -> Result<[[f64; 2]; 3]> {
    let x0 = critical_x0(params, c)?;
    Ok([[0.0, 0.0], [x0, 0.0], [-x0, 0.0]])
}

fn f_from_taylor(t: &Taylor2) -> Taylor2 {
    let vx = t.dx();
    let vy = t.dy();
    let vxx = vx.dx();
    let vxy = vx.dy();
    let vyy = vy.dy();
    let vx = vx.truncate(vxx.order());
    let vy = vy.truncate(vxx.order());
    let a = &(&vxx * &vy) * &vy;
    let b = &(&vyy * &vx) * &vx;
    let m = &(&vx * &vy) * &vxy;
    &(&a + &b) - &m.scale(2.0)
}

/// `F = V_xx V_y^2 + V_yy V_x^2 - 2 V_x V_y V_xy`.
pub fn f_value(x: f64, y: f64, params: &ProblemParams, c: f64) -> Result<f64> {
    let e = v_eval(x, y, params, c)?;
    Ok(f_of(&e))
}

fn f_of(e: &LCPotentialEval) -> f64 {
    let [vx, vy] = e.gradient;
    let [vxx, vxy, vyy] = e.hessian;
    vxx * vy * vy + vyy * vx * vx - 2.0 * vx * vy * vxy
}

/// `F` with its gradient.
pub fn f_with_gradient(x: f64, y: f64, params: &ProblemParams, c: f64) -> Result<(f64, [f64; 2])> {
    let f = f_from_taylor(&v_taylor(x, y, params, c, 3)?);
    Ok((f.value(), [f.derivative(1, 0), f.derivative(0, 1)]))
}

/// Left-hand side of the Salomão criterion at K-energy zero.
///
/// The energy in the criterion is that of `K_c`, which is zero; it is not the
/// Jacobi energy `c`.
pub fn salomao_lhs(x: f64, y: f64, params: &ProblemParams, c: f64) -> Result<f64> {
    let e = v_eval(x, y, params, c)?;
    let tol = 1e-10 * (1.0 + c.abs());
    if e.value > tol {
        return Err(Error::OutsideRegion(e.value));
    }
    let [vxx, vxy, vyy] = e.hessian;
    Ok(-2.0 * e.value * (vxx * vyy - vxy * vxy) + f_of(&e))
}

/// Derivatives of `V` and `F` along the tangent line `y = sqrt(2) (x - x0)` at `c_J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TildeDerivatives {
    pub x0: f64,
    /// `V~(x0), V~'(x0), V~''(x0)`, all zero in theory.
    pub v_low: [f64; 3],
    /// `48 mu x0 (10 x0^2 - 1) / (2 x0^2 - 1)^4`
    pub v3_closed: f64,
    pub v3_taylor: f64,
    pub v3_difference: f64,
    /// `F~', F~'', F~'''` at `x0` from Taylor arithmetic.
    pub f_taylor: [f64; 3],
    /// The same from central differences of `t -> F(t, sqrt(2)(t - x0))`.
    pub f_difference: [f64; 3],
    /// `F~''''(x0)`, the natural scale for the differences above.
    pub f4_taylor: f64,
}

pub fn tilde_derivatives(params: &ProblemParams) -> Result<TildeDerivatives> {
    let c = params.c_jacobi();
    let mu = params.mu();
    let x0 = critical_x0(params, c)?;
    let s2 = std::f64::consts::SQRT_2;
    let t = v_taylor(x0, 0.0, params, c, 6)?;
    let ft = f_from_taylor(&t);
    let line_v = |s: f64| v_value(x0 + s, s2 * s, params, c);
    let line_f = |s: f64| f_value(x0 + s, s2 * s, params, c);
    let d3 = |g: &dyn Fn(f64) -> Result<f64>, h: f64| -> Result<f64> {
        Ok((g(2.0 * h)? - 2.0 * g(h)? + 2.0 * g(-h)? - g(-2.0 * h)?) / (2.0 * h * h * h))
    };
    let d1 = |g: &dyn Fn(f64) -> Result<f64>, h: f64| -> Result<f64> {
        Ok((g(h)? - g(-h)?) / (2.0 * h))
    };
    let d2 = |g: &dyn Fn(f64) -> Result<f64>, h: f64| -> Result<f64> {
        Ok((g(h)? - 2.0 * g(0.0)? + g(-h)?) / (h * h))
    };
    let x02 = x0 * x0;
    Ok(TildeDerivatives {
        x0,
        v_low: [
            t.value(),
            t.directional(1, 1.0, s2),
            t.directional(2, 1.0, s2),
        ],
        v3_closed: 48.0 * mu * x0 * (10.0 * x02 - 1.0) / (2.0 * x02 - 1.0).powi(4),
        v3_taylor: t.directional(3, 1.0, s2),
        v3_difference: d3(&line_v, 2e-4)?,
        f_taylor: [
            ft.directional(1, 1.0, s2),
            ft.directional(2, 1.0, s2),
            ft.directional(3, 1.0, s2),
        ],
        f4_taylor: ft.directional(4, 1.0, s2),
        f_difference: [
            richardson(&d1, &line_f, 1e-4)?,
            richardson(&d2, &line_f, 4e-4)?,
            richardson(&d3, &line_f, 4e-4)?,
        ],
    })
}

type Stencil<'a> = dyn Fn(&dyn Fn(f64) -> Result<f64>, f64) -> Result<f64> + 'a;

/// Three rounds of Richardson extrapolation for a second-order stencil.
fn richardson(stencil: &Stencil<'_>, g: &dyn Fn(f64) -> Result<f64>, h: f64) -> Result<f64> {
    let mut row: Vec<f64> = (0..4)
        .map(|k| stencil(g, h / f64::powi(2.0, k)))
        .collect::<Result<_>>()?;
    let mut factor = 4.0;
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    Ok(row[0])
}

/// Curvature data of `V_{c_J} = 0` at `(x0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tangency {
    pub x0: f64,
    /// `-V_xx / V_yy`, the squared slope of the tangent lines.
    pub slope_sq: f64,
    pub vxx: f64,
    pub vyy: f64,
    /// `-8 c_J (1 - sqrt(-c_J / mu))`
    pub vxx_closed: f64,
    /// `4 c_J (1 - sqrt(-c_J / mu))`
    pub vyy_closed: f64,
}

pub fn tangency_check(params: &ProblemParams) -> Result<Tangency> {
    let c = params.c_jacobi();
    let x0 = critical_x0(params, c)?;
    let e = v_eval(x0, 0.0, params, c)?;
    let k = 1.0 - (-c / params.mu()).sqrt();
    Ok(Tangency {
        x0,
        slope_sq: -e.hessian[0] / e.hessian[2],
        vxx: e.hessian[0],
        vyy: e.hessian[2],
        vxx_closed: -8.0 * c * k,
        vyy_closed: 4.0 * c * k,
    })
}

/// A point of `{V = 0}` where `F` is negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeviWitness {
    pub point: [f64; 2],
    pub f: f64,
    pub v: f64,
    pub x0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeviSearch {
    /// Width of the window `(x0 - window, x0)` as a fraction of `x0`.
    pub window: f64,
    /// `F` must be below `-tol`.
    pub tol: f64,
    pub step: f64,
    pub max_len: f64,
}

impl Default for LeviSearch {
    fn default() -> Self {
        LeviSearch {
            window: 0.1,
            tol: 1e-8,
            step: 1e-3,
            max_len: 1.0,
        }
    }
}

fn v_field(params: &ProblemParams, c: f64) -> impl crate::scan::Field2 + '_ {
    WithGradient {
        f: move |p: [f64; 2]| v_value(p[0], p[1], params, c),
        grad: move |p: [f64; 2]| v_eval(p[0], p[1], params, c).map(|e| e.gradient),
    }
}

fn f_field(params: &ProblemParams, c: f64) -> impl crate::scan::Field2 + '_ {
    WithGradient {
        f: move |p: [f64; 2]| f_value(p[0], p[1], params, c),
        grad: move |p: [f64; 2]| f_with_gradient(p[0], p[1], params, c).map(|(_, g)| g),
    }
}

/// Seed next to `(x0, 0)` on the tangent line `y = -sqrt(2)(x - x0)`.
pub fn branch_seed(x0: f64) -> ([f64; 2], [f64; 2]) {
    let d = 1e-4;
    let s2 = std::f64::consts::SQRT_2;
    ([x0 - d, s2 * d], [-1.0, s2])
}

/// Traces `V = 0` from the branch leaving `(x0, 0)` towards smaller `x`.
pub fn trace_v_zero(params: &ProblemParams, c: f64, opts: &TraceOptions) -> Result<Polyline> {
    let x0 = critical_x0(params, c)?;
    let (seed, dir) = branch_seed(x0);
    let opts = TraceOptions {
        direction: Some(opts.direction.unwrap_or(dir)),
        ..*opts
    };
    Ok(trace_implicit(&v_field(params, c), seed, &opts).or_else(partial_if_nonempty)?)
}

/// Traces `F = 0` from next to `(x0, 0)` towards smaller `x`.
pub fn trace_f_zero(params: &ProblemParams, c: f64, opts: &TraceOptions) -> Result<Polyline> {
    let x0 = critical_x0(params, c)?;
    let (seed, dir) = branch_seed(x0);
    let opts = TraceOptions {
        direction: Some(opts.direction.unwrap_or(dir)),
        ..*opts
    };
    Ok(trace_implicit(&f_field(params, c), seed, &opts).or_else(partial_if_nonempty)?)
}

fn partial_if_nonempty(
    e: crate::scan::TraceError,
) -> std::result::Result<Polyline, crate::scan::TraceError> {
    if e.partial.points.len() >= 2 {
        Ok(e.partial)
    } else {
        Err(e)
    }
}

/// Looks for a point of `{V = 0}` with `x0 - window x0 < x < x0` and `F < -tol`.
pub fn nonconvex_witness_levi(
    params: &ProblemParams,
    c: f64,
    search: &LeviSearch,
) -> Result<Option<LeviWitness>> {
    if c > params.c_jacobi() {
        return Err(Error::EnergyAboveCritical {
            c,
            c_jacobi: params.c_jacobi(),
        });
    }
    let x0 = critical_x0(params, c)?;
    let bounds = Rect::new(x0 * (1.0 - search.window), x0 + 1e-3, -1.0, 1.0);
    let opts = TraceOptions {
        step: search.step,
        max_len: search.max_len,
        bounds: Some(bounds),
        ..Default::default()
    };
    let curve = trace_v_zero(params, c, &opts)?;
    for p in &curve.points {
        if !(p[0] < x0 && p[0] > bounds.x.0) {
            continue;
        }
        let f = f_value(p[0], p[1], params, c)?;
        if f < -search.tol {
            let v = v_value(p[0], p[1], params, c)?;
            return Ok(Some(LeviWitness {
                point: *p,
                f,
                v,
                x0,
            }));
        }
    }
    Ok(None)
}

/// Points where `{V = 0}` meets the `x` axis, with `F` there.
///
/// Simple roots are located by bisection; tangential ones (as at `c_J`, where
/// `(+-x0, 0)` are double roots) come from the critical points of `V`.
pub fn axis_crossings(params: &ProblemParams, c: f64) -> Result<Vec<([f64; 2], f64)>> {
    let x_max = 1.0 / std::f64::consts::SQRT_2;
    let n = 2000;
    let g = |x: f64| v_value(x, 0.0, params, c);
    let mut xs = Vec::new();
    let mut prev = (0.0, g(0.0)?);
    for k in 1..n {
        let x = x_max * k as f64 / n as f64;
        let v = g(x)?;
        if (prev.1 < 0.0) != (v < 0.0) {
            let (mut lo, mut hi) = (prev.0, x);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if (g(mid)? < 0.0) == (prev.1 < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            xs.push(0.5 * (lo + hi));
        }
        prev = (x, v);
    }
    if let Ok(x0) = critical_x0(params, c) {
        if g(x0)?.abs() < 1e-10 && xs.iter().all(|x| (x - x0).abs() > 1e-8) {
            xs.push(x0);
        }
    }
    let mut out = Vec::new();
    for x in xs {
        for sx in [x, -x] {
            out.push(([sx, 0.0], f_value(sx, 0.0, params, c)?));
        }
    }
    out.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
    Ok(out)
}

/// Exact proof that `V_y(0, y)` has no zero with `y != 0`.
///
/// `V_y(0, y) = -2y (c + mu / (2y^2 + 1)^2)`, so the claim is that
/// `4c s^2 + 4c s + c + mu` has no root `s = y^2 >= 0`. The coefficients are
/// the exact rationals equal to the binary64 inputs.
pub fn certify_axis_critical_free(params: &ProblemParams, c: f64) -> Result<Certificate> {
    let fail = |m: &str| Error::RootIsolationFailure(m.to_string());
    let cq = exactpoly::from_f64(c).ok_or_else(|| fail("c is not finite"))?;
    let mq = exactpoly::from_f64(params.mu()).ok_or_else(|| fail("mu is not finite"))?;
    let four = exactpoly::int(4);
    let poly = UniPoly::new(vec![&cq + &mq, &four * &cq, &four * &cq]);
    let zero = exactpoly::int(0);
    if poly.eval(&zero) >= zero {
        return Ok(Certificate::Refuted {
            witness: Some(zero),
            roots: Vec::new(),
        });
    }
    Ok(sign_certificate(
        &poly,
        &Bound::Finite(zero),
        &Bound::PosInf,
        Sign::Negative,
    ))
}

/// Preimage of a standard-frame position with `y >= 0`: `v = sqrt(q / 2)`.
pub fn position_to_v(q: [f64; 2]) -> [f64; 2] {
    let (a, b) = (0.5 * q[0], 0.5 * q[1]);
    let r = a.hypot(b);
    let x = (0.5 * (r + a)).max(0.0).sqrt();
    let y = (0.5 * (r - a)).max(0.0).sqrt();
    [x, if b < 0.0 { -y } else { y }]
}

/// Brute-force check of the Levi-Civita criterion on one energy level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeviOracle {
    pub convex: bool,
    pub samples: usize,
    pub min_f: f64,
    pub argmin: [f64; 2],
    /// First sample with `F < -tol`, from the near-`x0` search at `c_J` or the boundary scan.
    pub witness: Option<LeviWitness>,
}

/// Evaluates `F` on `{V = 0}` sampled as the preimage of `rays` Earth
/// boundary points; at `c = c_J` the near-`x0` witness search runs as well.
pub fn levi_oracle(
    params: &ProblemParams,
    c: f64,
    rays: usize,
    search: &LeviSearch,
) -> Result<LeviOracle> {
    let boundary = model::hill_boundary(params, c, HillComponent::Earth, rays)?;
    let x0 = critical_x0(params, c).unwrap_or(f64::NAN);
    let mut out = LeviOracle {
        convex: true,
        samples: 0,
        min_f: f64::INFINITY,
        argmin: [0.0; 2],
        witness: None,
    };
    for q in boundary {
        let v = position_to_v(q);
        let f = f_value(v[0], v[1], params, c)?;
        out.samples += 1;
        if f < out.min_f {
            out.min_f = f;
            out.argmin = v;
        }
        if f < -search.tol && out.witness.is_none() {
            out.witness = Some(LeviWitness {
                point: v,
                f,
                v: v_value(v[0], v[1], params, c)?,
                x0,
            });
        }
    }
    if (c - params.c_jacobi()).abs() <= 1e-12 {
        if let Some(w) = nonconvex_witness_levi(params, c, search)? {
            if w.f < out.min_f {
                out.min_f = w.f;
                out.argmin = w.point;
            }
            out.witness = Some(w);
        }
    }
    out.convex = out.witness.is_none();
    Ok(out)
}

/// Polyline tracing stopped at the critical point rather than failing.
pub fn reached_node(curve: &Polyline) -> bool {
    matches!(curve.termination, Termination::GradientCollapse { .. })
}

#[cfg(test)]
mod tests {
    use super::*;

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn oracle_at_critical_and_below() {
        let p = ProblemParams::new(0.3).unwrap();
        let s = LeviSearch::default();
        let at = levi_oracle(&p, p.c_jacobi(), 400, &s).unwrap();
        assert!(!at.convex && at.witness.is_some());
        let deep = levi_oracle(&p, -4.0, 400, &s).unwrap();
        assert!(deep.convex, "{deep:?}");
        let q = [0.3, -0.7];
        let v = position_to_v(q);
        assert!((2.0 * (v[0] * v[0] - v[1] * v[1]) - q[0]).abs() < 1e-15);
        assert!((4.0 * v[0] * v[1] - q[1]).abs() < 1e-15);
    }

    #[test]
    fn equal_mass_critical_point() {
        let p = ProblemParams::new(0.5).unwrap();
        assert_relative_eq!(critical_x0(&p, -2.0).unwrap(), 0.5, epsilon = 1e-15);
        assert!(v_value(0.5, 0.0, &p, -2.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn moon_preimage_is_singular() {
        let p = ProblemParams::new(0.3).unwrap();
        let x = 0.5f64.sqrt();
        assert!(matches!(
            v_value(x, 0.0, &p, -2.0),
            Err(Error::MoonCollision)
        ));
    }

    #[test]
    fn salomao_at_origin() {
        let p = ProblemParams::new(0.5).unwrap();
        assert!(salomao_lhs(0.0, 0.0, &p, -3.0).unwrap() > 0.0);
        assert!(matches!(
            salomao_lhs(0.9, 0.9, &p, -3.0),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn tangent_slope() {
        let p = ProblemParams::new(0.3).unwrap();
        let t = tangency_check(&p).unwrap();
        assert_relative_eq!(t.slope_sq, 2.0, epsilon = 1e-10);
        assert_relative_eq!(t.vxx, t.vxx_closed, max_relative = 1e-10);
        assert_relative_eq!(t.vyy, t.vyy_closed, max_relative = 1e-10);
    }

    #[test]
    fn third_derivative_sign_flips() {
        for (mu, positive) in [(0.3, true), (0.9, true), (0.96, false)] {
            let d = tilde_derivatives(&ProblemParams::new(mu).unwrap()).unwrap();
            assert_eq!(d.v3_closed > 0.0, positive, "mu = {mu}");
            assert_relative_eq!(d.v3_closed, d.v3_taylor, max_relative = 1e-9);
            assert_relative_eq!(d.v3_closed, d.v3_difference, max_relative = 1e-4);
            for k in 0..3 {
                assert!(d.v_low[k].abs() < 1e-9);
                assert!(d.f_taylor[k].abs() < 1e-8, "{d:?}");
                assert!(d.f_difference[k].abs() < 1e-7 * d.f4_taylor.abs(), "{d:?}");
            }
        }
    }

    #[test]
    fn witness_near_node() {
        let p = ProblemParams::new(0.3).unwrap();
        let c = p.c_jacobi();
        let w = nonconvex_witness_levi(&p, c, &LeviSearch::default())
            .unwrap()
            .expect("witness");
        assert!(w.point[0] < w.x0 && w.point[0] > w.x0 - 0.1);
        assert!(w.f < -1e-8);
        assert!(w.v.abs() < 1e-10);
        for (pt, f) in axis_crossings(&p, c).unwrap() {
            assert!(f >= -1e-10, "{pt:?} {f}");
        }
    }

    #[test]
    fn no_witness_past_threshold() {
        let p = ProblemParams::new(0.95).unwrap();
        assert!(
            nonconvex_witness_levi(&p, p.c_jacobi(), &LeviSearch::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn axis_is_free_of_other_critical_points() {
        for (mu, c) in [(0.3, -1.92), (0.5, -2.0), (0.05, -3.0), (0.9, -1.6)] {
            let p = ProblemParams::new(mu).unwrap();
            assert!(certify_axis_critical_free(&p, c).unwrap().is_certified());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn k_is_scaled_energy(mu in 0.05f64..0.95, x in -1.0f64..1.0, y in -1.0f64..1.0, u1 in -2.0f64..2.0, u2 in -2.0f64..2.0, c in -4.0f64..-1.0) {
            prop_assume!(x.hypot(y) > 1e-3 && radicand(x, y) > 1e-6);
            let pt = LCPoint::new([x, y], [u1, u2]);
            let cart = pt.to_cartesian().unwrap();
            let h = model::hamiltonian(&cart, &ProblemParams::new(mu).unwrap()).unwrap();
            let k = k_value(&pt, &ProblemParams::new(mu).unwrap(), c).unwrap();
            let expect = (x * x + y * y) * (h - c);
            prop_assert!((k - expect).abs() <= 1e-10 * (1.0 + expect.abs()));
        }

        #[test]
        fn radicand_is_a_modulus(x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let alt = (2.0 * x * x - 2.0 * y * y - 1.0).powi(2) + 16.0 * x * x * y * y;
            prop_assert!((radicand(x, y) - alt).abs() <= 1e-12 * (1.0 + alt));
        }

        #[test]
        fn potential_is_even(mu in 0.05f64..0.95, x in -1.0f64..1.0, y in -1.0f64..1.0, c in -4.0f64..-1.0) {
            prop_assume!(radicand(x, y) > 1e-6);
            let p = ProblemParams::new(mu).unwrap();
            let v = v_value(x, y, &p, c).unwrap();
            prop_assert_eq!(v_value(-x, y, &p, c).unwrap(), v);
            prop_assert_eq!(v_value(x, -y, &p, c).unwrap(), v);
            prop_assert_eq!(f_value(x, -y, &p, c).unwrap(), f_value(x, y, &p, c).unwrap());
            let e = v_eval(x, 0.0, &p, c).unwrap();
            prop_assert!(e.gradient[1].abs() < 1e-12);
            let f0 = f_value(x, 0.0, &p, c).unwrap();
            prop_assert!((f0 - e.gradient[0].powi(2) * e.hessian[2]).abs() <= 1e-10 * (1.0 + f0.abs()));
        }

        #[test]
        fn critical_point_residuals(mu in 0.01f64..0.99) {
            let p = ProblemParams::new(mu).unwrap();
            let cj = p.c_jacobi();
            for q in critical_points_v(&p, cj).unwrap() {
                let e = v_eval(q[0], q[1], &p, cj).unwrap();
                prop_assert!(e.gradient[0].abs() < 1e-12 && e.gradient[1].abs() < 1e-12);
            }
            let x0 = critical_x0(&p, cj).unwrap();
            prop_assert!(v_value(x0, 0.0, &p, cj).unwrap().abs() < 1e-10);
            prop_assert!(v_value(-x0, 0.0, &p, cj).unwrap().abs() < 1e-10);
        }

        #[test]
        fn tilde_low_order_vanishes(mu in 0.01f64..0.99) {
            let d = tilde_derivatives(&ProblemParams::new(mu).unwrap()).unwrap();
            for v in d.v_low {
                prop_assert!(v.abs() < 1e-6);
            }
        }

        #[test]
        fn salomao_reduces_to_f_on_level(mu in 0.05f64..0.95, t in 0.0f64..std::f64::consts::TAU) {
            let p = ProblemParams::new(mu).unwrap();
            let c = p.c_jacobi() - 0.2;
            // Bisect along a ray from the origin to V = 0.
            let dir = [t.cos(), t.sin()];
            let g = |r: f64| v_value(r * dir[0], r * dir[1], &p, c).unwrap();
            let (mut lo, mut hi) = (0.0, 0.0);
            let mut r = 0.0;
            while r < 0.7 {
                r += 1e-3;
                if radicand(r * dir[0], r * dir[1]) < 1e-6 { break; }
                if g(r) > 0.0 { hi = r; break; }
                lo = r;
            }
            prop_assume!(hi > 0.0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if g(mid) > 0.0 { hi = mid } else { lo = mid }
            }
            let q = [lo * dir[0], lo * dir[1]];
            let s = salomao_lhs(q[0], q[1], &p, c).unwrap();
            let f = f_value(q[0], q[1], &p, c).unwrap();
            prop_assert!((s - f).abs() < 1e-10 * (1.0 + f.abs()));
        }
    }
}
