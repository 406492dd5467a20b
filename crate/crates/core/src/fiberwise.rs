//! Curvature of Hill boundaries and fiberwise convexity.
//!
//! The energy hypersurface is fiberwise convex exactly when every Hill region
//! `K_e = {U <= e}` with `e <= c` has a convex bounded component, i.e. when the
//! curvature numerator
//!
//! `C = U_11 U_2^2 + U_1^2 U_22 - 2 U_12 U_1 U_2`
//!
//! is positive along its boundary. All positions here are in the standard
//! frame, Earth at the origin and Moon at `(1, 0)`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactpoly::{self, identities, sturm_count, Bound, MultiPoly, UniPoly};
use crate::model::{self, Frame, HillComponent, ProblemParams};
use crate::scan::{par_map, Extrema, GridSpec, ScanReport, Witness};
use crate::taylor::Taylor2;
use crate::{Convexity, Error, Result};

/// `U` with all partial derivatives through order three.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UPotentialEval {
    pub value: f64,
    /// `(U_1, U_2)`
    pub gradient: [f64; 2],
    /// `(U_11, U_12, U_22)`
    pub hessian: [f64; 3],
    /// `(U_111, U_112, U_122, U_222)`
    pub third: [f64; 4],
}

fn offsets(q: [f64; 2]) -> Result<[([f64; 2], f64); 2]> {
    let e = [q[0], q[1]];
    let m = [q[0] - 1.0, q[1]];
    let r1 = e[0].hypot(e[1]);
    let r2 = m[0].hypot(m[1]);
    if r1 <= f64::EPSILON || r2 <= f64::EPSILON || !r1.is_finite() || !r2.is_finite() {
        return Err(Error::CollisionPoint(q[0], q[1]));
    }
    Ok([(e, r1), (m, r2)])
}

/// Closed-form derivatives of `U`, summed over the two Coulomb centres.
pub fn u_derivs(q: [f64; 2], params: &ProblemParams) -> Result<UPotentialEval> {
    let masses = [1.0 - params.mu(), params.mu()];
    let mut out = UPotentialEval {
        value: 0.0,
        gradient: [0.0; 2],
        hessian: [0.0; 3],
        third: [0.0; 4],
    };
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    for (k, (d, r)) in masses.iter().zip(offsets(q)?) {
        let r3 = r * r * r;
        let r5 = r3 * r * r;
        let r7 = r5 * r * r;
        out.value -= k / r;
        for (g, di) in out.gradient.iter_mut().zip(d) {
            *g += k * di / r3;
        }
        for (slot, (i, j)) in [(0, 0), (0, 1), (1, 1)].into_iter().enumerate() {
            out.hessian[slot] += k * (delta(i, j) / r3 - 3.0 * d[i] * d[j] / r5);
        }
        for (slot, (i, j, l)) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]
            .into_iter()
            .enumerate()
        {
            let sym = delta(i, j) * d[l] + delta(i, l) * d[j] + delta(j, l) * d[i];
            out.third[slot] += k * (-3.0 * sym / r5 + 15.0 * d[i] * d[j] * d[l] / r7);
        }
    }
    Ok(out)
}

/// Taylor expansion of `U` of the given order around `q`.
pub fn u_taylor(q: [f64; 2], params: &ProblemParams, order: usize) -> Result<Taylor2> {
    offsets(q)?;
    let mu = params.mu();
    let (x, y) = Taylor2::variables(order, q[0], q[1]);
    let y2 = &y * &y;
    let r1 = (&(&x * &x) + &y2).powf(-0.5);
    let xm = x.add_constant(-1.0);
    let r2 = (&(&xm * &xm) + &y2).powf(-0.5);
    Ok(&r1.scale(-(1.0 - mu)) - &r2.scale(mu))
}

/// Taylor expansion of `C` of the given order around `q`.
pub fn c_taylor(q: [f64; 2], params: &ProblemParams, order: usize) -> Result<Taylor2> {
    let u = u_taylor(q, params, order + 2)?;
    let ux = u.dx();
    let uy = u.dy();
    let uxx = ux.dx();
    let uxy = ux.dy();
    let uyy = uy.dy();
    let ux = ux.truncate(order);
    let uy = uy.truncate(order);
    let a = &(&uxx * &uy) * &uy;
    let b = &(&uyy * &ux) * &ux;
    let m = &(&uxy * &ux) * &uy;
    Ok(&(&a + &b) - &m.scale(2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureEval {
    /// `C` from the derivatives of `U`.
    pub c: f64,
    /// `C` from the rational expression in `r1`, `r2`, `f`, `g`.
    pub c_explicit: f64,
    /// `C / |grad U|^3`; `None` at the critical point.
    pub kappa: Option<f64>,
    pub r1: f64,
    pub r2: f64,
    pub f_aux: f64,
    pub g_aux: f64,
}

fn c_from(e: &UPotentialEval) -> f64 {
    let [u1, u2] = e.gradient;
    let [u11, u12, u22] = e.hessian;
    u11 * u2 * u2 + u1 * u1 * u22 - 2.0 * u12 * u1 * u2
}

/// `f = q1^4 - 2q1^3 + 2q1^2q2^2 + q1^2 - 2q1q2^2 + q2^4 - 2q2^2`.
pub fn f_aux(q: [f64; 2]) -> f64 {
    let (x, y) = (q[0], q[1]);
    let (x2, y2) = (x * x, y * y);
    x2 * x2 - 2.0 * x2 * x + 2.0 * x2 * y2 + x2 - 2.0 * x * y2 + y2 * y2 - 2.0 * y2
}

/// `g = 2q1^2 - 2q1 + 2q2^2`.
pub fn g_aux(q: [f64; 2]) -> f64 {
    2.0 * q[0] * q[0] - 2.0 * q[0] + 2.0 * q[1] * q[1]
}

pub fn c_value(q: [f64; 2], params: &ProblemParams) -> Result<CurvatureEval> {
    let e = u_derivs(q, params)?;
    let [(_, r1), (_, r2)] = offsets(q)?;
    let mu = params.mu();
    let nu = 1.0 - mu;
    let (f, g) = (f_aux(q), g_aux(q));
    let c_explicit = nu.powi(3) / r1.powi(7)
        + mu.powi(3) / r2.powi(7)
        + mu * nu * nu * (f + r2 * r2 * g) / (r1.powi(6) * r2.powi(5))
        + mu * mu * nu * (f + r1 * r1 * g) / (r1.powi(5) * r2.powi(6));
    let c = c_from(&e);
    let grad = e.gradient[0].hypot(e.gradient[1]);
    let kappa = (grad > 1e-12).then(|| c / (grad * grad * grad));
    Ok(CurvatureEval {
        c,
        c_explicit,
        kappa,
        r1,
        r2,
        f_aux: f,
        g_aux: g,
    })
}

pub fn c_only(q: [f64; 2], params: &ProblemParams) -> Result<f64> {
    Ok(c_from(&u_derivs(q, params)?))
}

/// `V(q1) = U(q1, sqrt(2)(q1 - l)) - c_J` and its first four derivatives.
pub fn v_line(q1: f64, params: &ProblemParams) -> Result<[f64; 5]> {
    let mu = params.mu();
    let nu = 1.0 - mu;
    let l = params.l();
    let q = q1;
    let s = q - l;
    let rho1 = (q * q + 2.0 * s * s).sqrt();
    let rho2 = ((q - 1.0).powi(2) + 2.0 * s * s).sqrt();
    if rho1 <= f64::EPSILON || rho2 <= f64::EPSILON {
        return Err(Error::CollisionPoint(q, std::f64::consts::SQRT_2 * s));
    }
    let v0 = -nu / rho1 - mu / rho2 - params.c_jacobi();
    let v1 =
        nu * (3.0 * q - 2.0 * l) / rho1.powi(3) + mu * (3.0 * q - 1.0 - 2.0 * l) / rho2.powi(3);
    let v2 =
        6.0 * s * (nu * (l - 3.0 * q) / rho1.powi(5) + mu * (l - 3.0 * q + 2.0) / rho2.powi(5));
    let quad = l * l - 12.0 * l * q + 9.0 * q * q;
    let v3 = -6.0
        * (nu * quad * (2.0 * l - 3.0 * q) / rho1.powi(7)
            + mu * (quad + 10.0 * l - 6.0 * q - 2.0) * (2.0 * l - 3.0 * q + 1.0) / rho2.powi(7));
    let a = 13.0 * l.powi(4) + 48.0 * l.powi(3) * q - 324.0 * l * l * q * q + 432.0 * l * q.powi(3)
        - 162.0 * q.powi(4);
    let cubic = -100.0 * l.powi(3) + 504.0 * l * l * q - 648.0 * l * q * q + 216.0 * q.powi(3)
        - 102.0 * l * l
        + 144.0 * l * q
        + 20.0 * l
        - 48.0 * q
        + 7.0;
    let v4 = 12.0 * a * (nu / rho1.powi(9) + mu / rho2.powi(9)) + 12.0 * mu * cubic / rho2.powi(9);
    Ok([v0, v1, v2, v3, v4])
}

/// `12 (2l - 1) / (l^2 (1 - l)^2 (2l^2 - 2l + 1))`, the value of `V'''(l)`.
pub fn v_line_third_at_vertex(params: &ProblemParams) -> f64 {
    let l = params.l();
    12.0 * (2.0 * l - 1.0) / (l * l * (1.0 - l).powi(2) * (2.0 * l * l - 2.0 * l + 1.0))
}

/// `C_l(t) = C(t, sqrt(2)(t - l))` and its first three derivatives at `t = l`.
pub fn c_l_derivatives(params: &ProblemParams) -> Result<[f64; 4]> {
    let t = c_taylor([params.l(), 0.0], params, 3)?;
    let s2 = std::f64::consts::SQRT_2;
    Ok([
        t.value(),
        t.directional(1, 1.0, s2),
        t.directional(2, 1.0, s2),
        t.directional(3, 1.0, s2),
    ])
}

/// Squared slopes at `(l, 0)` of the tangents to `U = c_J` and to `C = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSlopes {
    /// `-U_11 / U_22`
    pub level: f64,
    /// `-C_11 / C_22`
    pub gamma: f64,
}

pub fn vertex_slopes(params: &ProblemParams) -> Result<VertexSlopes> {
    let q = [params.l(), 0.0];
    let u = u_derivs(q, params)?;
    let c = c_taylor(q, params, 2)?;
    Ok(VertexSlopes {
        level: -u.hessian[0] / u.hessian[2],
        gamma: -c.derivative(2, 0) / c.derivative(0, 2),
    })
}

/// Boundary points of `K_e` close to the vertex, one per vertical line.
///
/// For `q1` in the window next to `l` on the component's side, the point with
/// `q2 > 0` where the vertical line leaves `{U <= e}`. Lines that start
/// outside the region are skipped.
pub fn vertex_boundary(
    params: &ProblemParams,
    e: f64,
    component: HillComponent,
    window: f64,
    n: usize,
) -> Result<Vec<[f64; 2]>> {
    let l = params.l();
    let width = match component {
        HillComponent::Earth => -window * l,
        HillComponent::Moon => window * (1.0 - l),
    };
    let u = |q1: f64, q2: f64| model::potential([q1, q2], params, Frame::Standard);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let q1 = l + width * k as f64 / (n + 1) as f64;
        if u(q1, 0.0)? >= e {
            continue;
        }
        let mut lo = 0.0;
        let mut hi = 1e-3;
        while u(q1, hi)? < e {
            lo = hi;
            hi *= 2.0;
            if hi > 1e3 {
                return Err(Error::TraceFailure(format!("no boundary above q1 = {q1}")));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if u(q1, mid)? < e {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push([q1, 0.5 * (lo + hi)]);
    }
    Ok(out)
}

/// Scans `C` over boundary samples of one component at energy `e`.
///
/// Samples are `rays` points from [`model::hill_boundary`] plus `vertex` points
/// from [`vertex_boundary`] within `window` of the critical line. Samples
/// within `1e-6` of `(l, 0)` are dropped, since `C` vanishes there for every
/// mass ratio.
pub fn boundary_curvature(
    params: &ProblemParams,
    e: f64,
    component: HillComponent,
    rays: usize,
    vertex: usize,
    window: f64,
) -> Result<ScanReport> {
    let started = web_time::Instant::now();
    let mut points = model::hill_boundary(params, e, component, rays)?;
    if vertex > 0 {
        points.extend(vertex_boundary(params, e, component, window, vertex)?);
    }
    let vertex_pt = [params.l(), 0.0];
    points.retain(|p| (p[0] - vertex_pt[0]).hypot(p[1] - vertex_pt[1]) > 1e-6);
    let values = par_map(&points, |p| c_only(*p, params));
    let mut ext = Extrema::default();
    let mut witnesses = Vec::new();
    for (p, v) in points.iter().zip(&values) {
        ext.record(p, v);
        if let Ok(v) = v {
            if *v < 0.0 {
                witnesses.push(Witness {
                    point: p.to_vec(),
                    value: *v,
                });
            }
        }
    }
    witnesses.sort_by(|a, b| a.value.total_cmp(&b.value));
    witnesses.truncate(16);
    let grid = GridSpec {
        lower: vec![0.0],
        upper: vec![std::f64::consts::TAU],
        counts: vec![rays],
        refine_depth: 0,
    };
    let target = format!(
        "boundary curvature numerator, mu = {}, e = {e}, {component}",
        params.mu()
    );
    Ok(ext.into_report(&target, grid, witnesses, started))
}

/// Largest energy, halving down from `start`, where the boundary stays
/// within `tol` of the Kepler circle of radius `mass / -e` in relative terms.
pub fn kepler_energy(
    params: &ProblemParams,
    component: HillComponent,
    start: f64,
    tol: f64,
) -> Result<f64> {
    let mass = params.mass(component);
    let origin = Frame::Standard.primary(component);
    let mut e = start.min(params.c_jacobi());
    for _ in 0..60 {
        let pts = model::hill_boundary(params, e, component, 64)?;
        let r_k = mass / -e;
        let dev = pts
            .iter()
            .map(|p| ((p[0] - origin[0]).hypot(p[1] - origin[1]) / r_k - 1.0).abs())
            .fold(0.0f64, f64::max);
        if dev < tol {
            return Ok(e);
        }
        e *= 2.0;
    }
    Err(Error::TraceFailure(
        "boundary never approaches the Kepler circle".into(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberwiseOptions {
    pub rays: usize,
    pub energies: usize,
    pub vertex_samples: usize,
    /// Vertex window as a fraction of the distance from the primary to `l`.
    pub window: f64,
    pub kepler_tol: f64,
    /// Extra deep-energy spot check.
    pub deep_energy: f64,
}

impl Default for FiberwiseOptions {
    fn default() -> Self {
        FiberwiseOptions {
            rays: 2000,
            energies: 8,
            vertex_samples: 400,
            window: 0.1,
            kepler_tol: 0.01,
            deep_energy: -100.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberwiseWitness {
    pub energy: f64,
    pub point: [f64; 2],
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberwiseReport {
    pub verdict: Convexity,
    pub e_min: f64,
    pub energies: Vec<f64>,
    pub samples: usize,
    pub min_c: f64,
    pub argmin: Vec<f64>,
    pub witness: Option<FiberwiseWitness>,
}

/// Checks every Hill region `K_e`, `e_min <= e <= c`, for a negative curvature numerator.
///
/// Energies are spread evenly over `[e_min, c]`, where `e_min` is the
/// [`kepler_energy`]; below it the boundary is a near-circle. One deep energy
/// is spot-checked in addition.
pub fn fiberwise_verdict(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
    opts: &FiberwiseOptions,
) -> Result<FiberwiseReport> {
    if c > params.c_jacobi() {
        return Err(Error::EnergyAboveCritical {
            c,
            c_jacobi: params.c_jacobi(),
        });
    }
    let e_min = kepler_energy(params, component, c, opts.kepler_tol)?.min(c);
    let n = opts.energies.max(1);
    let mut energies: Vec<f64> = if n == 1 || e_min == c {
        vec![c]
    } else {
        (0..n)
            .map(|k| c + (e_min - c) * k as f64 / (n - 1) as f64)
            .collect()
    };
    if opts.deep_energy < e_min {
        energies.push(opts.deep_energy);
    }
    let mut report = FiberwiseReport {
        verdict: Convexity::Convex,
        e_min,
        energies: energies.clone(),
        samples: 0,
        min_c: f64::INFINITY,
        argmin: Vec::new(),
        witness: None,
    };
    for e in energies {
        let scan = boundary_curvature(
            params,
            e,
            component,
            opts.rays,
            opts.vertex_samples,
            opts.window,
        )?;
        if let Some(f) = scan.failures.first() {
            return Err(Error::TraceFailure(f.error.clone()));
        }
        report.samples += scan.samples;
        if scan.min < report.min_c {
            report.min_c = scan.min;
            report.argmin = scan.argmin.clone();
        }
        if report.witness.is_none() {
            if let Some(w) = scan.witnesses.first() {
                report.verdict = Convexity::NonConvex;
                report.witness = Some(FiberwiseWitness {
                    energy: e,
                    point: [w.point[0], w.point[1]],
                    c: w.value,
                });
            }
        }
    }
    Ok(report)
}

/// `C` at the equal-mass problem in polar coordinates around the Earth.
pub fn polar_c(r: f64, theta: f64) -> Result<f64> {
    let (cs, sn) = (theta.cos(), theta.sin());
    let s2 = r * r - 2.0 * r * cs + 1.0;
    if r <= 0.0 || s2 <= 0.0 {
        return Err(Error::CollisionPoint(r * cs, r * sn));
    }
    let s = s2.sqrt();
    let body = r.powi(7)
        + s.powi(7)
        + r * r
            * s
            * (3.0 * r.powi(4) - 4.0 * r.powi(3) * cs + 3.0 * r * r * cs * cs - 2.0 * r * r)
        + r * s2 * (3.0 * r.powi(4) - 8.0 * r.powi(3) * cs + 7.0 * r * r * cs * cs - 2.0 * r * cs);
    Ok(body / (8.0 * r.powi(7) * s.powi(7)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarDerivs {
    pub c: f64,
    /// `-7 F / (2 r^8 S^9)`, `S = sqrt(r^2 - 2r cos(theta) + 1)`
    pub c_r: f64,
    /// `-G sin(theta) / (8 r^5 S^9)`
    pub c_theta: f64,
}

pub fn polar_c_derivs(r: f64, theta: f64) -> Result<PolarDerivs> {
    let c = polar_c(r, theta)?;
    let y = theta.cos();
    let s = (r * r - 2.0 * r * y + 1.0).sqrt();
    let lp = equal_mass_polynomials(r, y)?;
    Ok(PolarDerivs {
        c,
        c_r: -7.0 * lp.f_rderi / (2.0 * r.powi(8) * s.powi(9)),
        c_theta: -lp.g * theta.sin() / (8.0 * r.powi(5) * s.powi(9)),
    })
}

struct EqualMassPolys {
    root: MultiPoly,
    rational: MultiPoly,
    f0: MultiPoly,
    a: MultiPoly,
    b: MultiPoly,
    c0a: MultiPoly,
    c0b: MultiPoly,
}

fn equal_mass_polys() -> &'static EqualMassPolys {
    static POLYS: OnceLock<EqualMassPolys> = OnceLock::new();
    POLYS.get_or_init(|| {
        let xy = ["x", "y"];
        let (c0a, c0b) = identities::c0_quintics().expect("quintics parse");
        EqualMassPolys {
            root: identities::rderi_root_part().expect("radial root part parses"),
            rational: identities::rderi_rational_part().expect("radial rational part parses"),
            f0: identities::f0_poly().expect("F0 parses"),
            a: MultiPoly::parse(&xy, "6*x^3*y^2 - (10*x^4 - 6*x^2)*y + 14*x^5 - 16*x^3").expect("a parses"),
            b: MultiPoly::parse(
                &xy,
                "-14*x^3*y^3 + (27*x^4 - 9*x^2)*y^2 - (24*x^5 - 18*x^3 - 12*x)*y + 14*x^6 - 3*x^4 - 12*x^2 - 2",
            )
            .expect("b parses"),
            c0a,
            c0b,
        }
    })
}

fn eval(p: &MultiPoly, values: &[f64]) -> Result<f64> {
    p.evaluate_f64(values)
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// The auxiliary functions of the equal-mass polar analysis at `x = r`, `y = cos(theta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualMassPolynomials {
    /// Radial numerator `F`, with `d C / d r = -7F / (2 r^8 S^9)`.
    pub f_rderi: f64,
    /// `F0 = S^2 P^2 - x^4 R^2`, where `F = P S + x^2 R`.
    pub f0: f64,
    /// Angular numerator `G = a S + b`.
    pub g: f64,
    pub a_aux: f64,
    pub b_aux: f64,
    /// `C` on the tangent lines `q2 = +-sqrt(2)(q1 - 1/2)` at `q1 = x`.
    pub c0: f64,
}

pub fn equal_mass_polynomials(x: f64, y: f64) -> Result<EqualMassPolynomials> {
    let p = equal_mass_polys();
    let xy = [x, y];
    let s = (x * x - 2.0 * x * y + 1.0).sqrt();
    let root = eval(&p.root, &xy)?;
    let rational = eval(&p.rational, &xy)?;
    let a = eval(&p.a, &xy)?;
    let b = eval(&p.b, &xy)?;
    Ok(EqualMassPolynomials {
        f_rderi: root * s + x * x * rational,
        f0: eval(&p.f0, &xy)?,
        g: a * s + b,
        a_aux: a,
        b_aux: b,
        c0: c0_diagonal(x)?,
    })
}

/// `C0(q) = -864 (1 - 2q) (a S1 + b S2) / ((6q^2 - 8q + 3)^3 (6q^2 - 4q + 1)^3 S1 S2)`,
/// `S1 = sqrt(12q^2 - 8q + 2)`, `S2 = sqrt(12q^2 - 16q + 6)`.
pub fn c0_diagonal(q: f64) -> Result<f64> {
    let p = equal_mass_polys();
    let a = eval(&p.c0a, &[q])?;
    let b = eval(&p.c0b, &[q])?;
    let s1 = (12.0 * q * q - 8.0 * q + 2.0).sqrt();
    let s2 = (12.0 * q * q - 16.0 * q + 6.0).sqrt();
    let den =
        (6.0 * q * q - 8.0 * q + 3.0).powi(3) * (6.0 * q * q - 4.0 * q + 1.0).powi(3) * s1 * s2;
    Ok(-864.0 * (1.0 - 2.0 * q) * (a * s1 + b * s2) / den)
}

/// Exact root counts behind the equal-mass positivity arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    /// Roots of `324q^4 - 648q^3 + 504q^2 - 180q + 23` in `(1/3, 1/2)`.
    pub quartic_roots: usize,
    /// The quartic at `q = 1/3`, as a string.
    pub quartic_at_third: String,
    /// Roots of `7776x^6 - 23328x^5 + 30348x^4 - 21816x^3 + 9232x^2 - 2212x + 241` in `(-inf, 1/2)`.
    pub sextic_roots: usize,
    pub sextic_at_half: String,
    /// Real roots of `360x^2 - 360x + 101`.
    pub quadratic_roots: usize,
    pub quadratic_discriminant: i64,
}

impl PositivityReport {
    pub fn holds(&self) -> bool {
        self.quartic_roots == 0
            && self.quartic_at_third == "-1"
            && self.sextic_roots == 0
            && self.sextic_at_half == "21/4"
            && self.quadratic_roots == 0
            && self.quadratic_discriminant < 0
    }
}

pub fn positivity_certificates() -> PositivityReport {
    let quartic = UniPoly::from_integers(&[23, -180, 504, -648, 324]);
    let sextic = UniPoly::from_integers(&[241, -2212, 9232, -21816, 30348, -23328, 7776]);
    let quadratic = UniPoly::from_integers(&[101, -360, 360]);
    let third = exactpoly::rat(1, 3);
    let half = exactpoly::rat(1, 2);
    let count = |p: &UniPoly, lo: Bound, hi: Bound| sturm_count(p, &lo, &hi).unwrap_or(usize::MAX);
    PositivityReport {
        quartic_roots: count(
            &quartic,
            Bound::Finite(third.clone()),
            Bound::Finite(half.clone()),
        ),
        quartic_at_third: quartic.eval(&third).to_string(),
        sextic_roots: count(&sextic, Bound::NegInf, Bound::Finite(half.clone()))
            + usize::from(sextic.eval(&half) == exactpoly::int(0)),
        sextic_at_half: sextic.eval(&half).to_string(),
        quadratic_roots: count(&quadratic, Bound::NegInf, Bound::PosInf),
        quadratic_discriminant: 180 * 180 - 360 * 101,
    }
}

/// Where the circle `|q| = 1/2` meets the tangent line `q2 = -sqrt(2)(q1 - 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub points: [[f64; 2]; 2],
    /// `cos(theta)` at the upper point.
    pub cos_theta: f64,
    pub theta0: f64,
    /// Largest residual of either equation at either point.
    pub residual: f64,
}

pub fn circle_line_intersection() -> Intersection {
    // q1^2 + 2(q1 - 1/2)^2 = 1/4  <=>  (2q1 - 1)(6q1 - 1) = 0
    let s2 = std::f64::consts::SQRT_2;
    let points = [[0.5, 0.0], [1.0 / 6.0, s2 / 3.0]];
    let residual = points
        .iter()
        .map(|p| {
            let circle = (p[0] * p[0] + p[1] * p[1] - 0.25).abs();
            let line = (p[1] + s2 * (p[0] - 0.5)).abs();
            circle.max(line)
        })
        .fold(0.0, f64::max);
    let cos_theta = points[1][0] / points[1][0].hypot(points[1][1]);
    Intersection {
        points,
        cos_theta,
        theta0: cos_theta.acos(),
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn half() -> ProblemParams {
        ProblemParams::new(0.5).unwrap()
    }

    #[test]
    fn vertex_derivatives() {
        for mu in [0.1, 0.3, 0.5, 0.8] {
            let p = ProblemParams::new(mu).unwrap();
            let u = u_derivs([p.l(), 0.0], &p).unwrap();
            assert!(u.gradient[0].abs() < 1e-12 && u.hessian[1].abs() < 1e-12);
            assert_relative_eq!(u.hessian[0] / u.hessian[2], -2.0, epsilon = 1e-10);
            let s = vertex_slopes(&p).unwrap();
            assert_relative_eq!(s.level, 2.0, epsilon = 1e-10);
            assert_relative_eq!(s.gamma, 2.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn line_function_at_vertex() {
        for mu in [0.1, 0.3, 0.45, 0.5] {
            let p = ProblemParams::new(mu).unwrap();
            let v = v_line(p.l(), &p).unwrap();
            for k in 0..3 {
                assert!(v[k].abs() < 1e-8, "mu = {mu}: {v:?}");
            }
            assert_relative_eq!(
                v[3],
                v_line_third_at_vertex(&p),
                epsilon = 1e-8,
                max_relative = 1e-8
            );
        }
        let v = v_line(0.5, &half()).unwrap();
        assert_relative_eq!(v[4], 2688.0, max_relative = 1e-6);
    }

    #[test]
    fn line_derivatives_match_taylor() {
        let s2 = std::f64::consts::SQRT_2;
        for (mu, q1) in [(0.3, 0.2), (0.5, 0.35), (0.7, 0.9), (0.2, -0.4)] {
            let p = ProblemParams::new(mu).unwrap();
            let v = v_line(q1, &p).unwrap();
            let t = u_taylor([q1, s2 * (q1 - p.l())], &p, 4).unwrap();
            for (k, vk) in v.iter().enumerate().skip(1) {
                let d = t.directional(k, 1.0, s2);
                assert_relative_eq!(*vk, d, max_relative = 1e-9, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn vertex_jet_of_diagonal_curvature() {
        for mu in [0.3, 0.5] {
            let p = ProblemParams::new(mu).unwrap();
            let d = c_l_derivatives(&p).unwrap();
            let scale = c_taylor([p.l(), 0.0], &p, 4)
                .unwrap()
                .directional(4, 1.0, std::f64::consts::SQRT_2)
                .abs();
            for v in d {
                assert!(v.abs() < 1e-10 * scale.max(1.0), "{d:?}");
            }
        }
    }

    #[test]
    fn equal_mass_diagonal_is_positive() {
        let p = half();
        let s2 = std::f64::consts::SQRT_2;
        for k in 0..=44 {
            let q = 0.05 + 0.01 * k as f64;
            let c0 = c0_diagonal(q).unwrap();
            assert!(c0 > 0.0, "{q}");
            let direct = c_only([q, s2 * (q - 0.5)], &p).unwrap();
            assert_relative_eq!(c0, direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn polar_form_matches() {
        let p = half();
        for (r, th) in [(0.3, 1.0), (0.45, 2.5), (0.7, 0.3), (0.2, 3.0)] {
            let direct = c_only([r * f64::cos(th), r * f64::sin(th)], &p).unwrap();
            assert_relative_eq!(polar_c(r, th).unwrap(), direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn polar_derivatives_match_taylor() {
        let p = half();
        for (r, th) in [(0.3, 1.0), (0.45, 2.5), (0.7, 0.3), (0.2, 3.0), (0.1, 1.7)] {
            let d = polar_c_derivs(r, th).unwrap();
            let t = c_taylor([r * th.cos(), r * th.sin()], &p, 1).unwrap();
            let (gx, gy) = (t.derivative(1, 0), t.derivative(0, 1));
            let c_r = gx * th.cos() + gy * th.sin();
            let c_t = r * (-gx * th.sin() + gy * th.cos());
            assert_relative_eq!(d.c_r, c_r, max_relative = 1e-9);
            assert_relative_eq!(d.c_theta, c_t, max_relative = 1e-9);
        }
        for th in [0.0, std::f64::consts::PI] {
            assert!(polar_c_derivs(0.3, th).unwrap().c_theta.abs() < 1e-12);
        }
    }

    #[test]
    fn radial_derivative_has_no_zero_inside() {
        for i in 0..40 {
            let r = 0.05 + 0.4 * i as f64 / 39.0;
            for j in 0..60 {
                let th = 0.01 + 3.13 * j as f64 / 59.0;
                assert!(polar_c_derivs(r, th).unwrap().c_r != 0.0);
                let lp = equal_mass_polynomials(r, th.cos()).unwrap();
                assert!(lp.f0 > 0.0 && lp.f_rderi > 0.0, "r = {r}, theta = {th}");
            }
        }
    }

    #[test]
    fn printed_factorisations() {
        for x in [0.05, 0.2, 0.33, 0.49] {
            let lp = equal_mass_polynomials(x, 1.0).unwrap();
            let f = (1.0 - 2.0 * x)
                * (1.0 - x).powi(2)
                * (2.0 * x * x - 2.0 * x + 1.0)
                * (60.0 * x.powi(4) - 120.0 * x.powi(3) + 102.0 * x * x - 42.0 * x + 7.0)
                * (28.0 * x.powi(6) - 84.0 * x.powi(5) + 150.0 * x.powi(4) - 160.0 * x.powi(3)
                    + 108.0 * x * x
                    - 42.0 * x
                    + 7.0)
                / 784.0;
            assert!((lp.f0 - f).abs() < 1e-12, "{x}: {} vs {f}", lp.f0);
            let a0 = equal_mass_polynomials(x, 0.0).unwrap().a_aux;
            assert!((a0 - 2.0 * x.powi(3) * (7.0 * x * x - 8.0)).abs() < 1e-14);
            assert!(a0 < 0.0);
        }
    }

    #[test]
    fn certificates() {
        let r = positivity_certificates();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.quadratic_discriminant, -3960);
    }

    #[test]
    fn intersection_geometry() {
        let i = circle_line_intersection();
        assert!(i.residual < 1e-12);
        assert!((i.cos_theta - 1.0 / 3.0).abs() < 1e-12);
        // The origin is not on the circle |q| = 1/2.
        assert!((0.0f64 - 0.25).abs() > 0.1);
    }

    #[test]
    fn equal_mass_boundaries_are_convex() {
        let p = half();
        for e in [-2.1, -3.0, -6.0, -20.0] {
            let r = boundary_curvature(&p, e, HillComponent::Earth, 2000, 0, 0.1).unwrap();
            assert!(r.samples >= 2000);
            assert!(r.min > 1e-10, "e = {e}: {}", r.min);
        }
    }

    #[test]
    fn critical_level_witness() {
        let p = ProblemParams::new(0.3).unwrap();
        let opts = FiberwiseOptions {
            rays: 256,
            energies: 1,
            vertex_samples: 200,
            ..Default::default()
        };
        let rep = fiberwise_verdict(&p, p.c_jacobi(), HillComponent::Earth, &opts).unwrap();
        assert_eq!(rep.verdict, Convexity::NonConvex);
        let w = rep.witness.unwrap();
        assert!(w.point[0] < p.l() && w.point[0] > 0.9 * p.l(), "{w:?}");
        assert!(w.c < 0.0);
    }

    #[test]
    fn deep_energy_is_convex() {
        for mu in [0.1, 0.5, 0.9] {
            let p = ProblemParams::new(mu).unwrap();
            for comp in [HillComponent::Earth, HillComponent::Moon] {
                let r = boundary_curvature(&p, -100.0, comp, 256, 0, 0.1).unwrap();
                assert!(r.min > 0.0);
            }
        }
    }

    #[test]
    fn kepler_energy_is_deep() {
        let p = ProblemParams::new(0.3).unwrap();
        let e = kepler_energy(&p, HillComponent::Earth, p.c_jacobi(), 0.01).unwrap();
        assert!(e < p.c_jacobi());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn two_forms_agree(mu in 0.05f64..0.95, x in -2.0f64..3.0, y in -2.0f64..2.0) {
            prop_assume!(x.hypot(y) > 0.05 && (x - 1.0).hypot(y) > 0.05);
            let p = ProblemParams::new(mu).unwrap();
            let ce = c_value([x, y], &p).unwrap();
            let scale = ce.c.abs().max(ce.c_explicit.abs()).max(1e-300);
            prop_assert!((ce.c - ce.c_explicit).abs() <= 1e-8 * scale.max(1e-6 * ((1.0 - mu) / ce.r1.powi(7) + mu / ce.r2.powi(7))));
            if let Some(k) = ce.kappa {
                let u = u_derivs([x, y], &p).unwrap();
                let g = u.gradient[0].hypot(u.gradient[1]);
                prop_assert!((k * g * g * g - ce.c).abs() <= 1e-10 * ce.c.abs().max(1e-300));
            }
        }

        #[test]
        fn symmetries(mu in 0.05f64..0.95, x in -2.0f64..3.0, y in -2.0f64..2.0) {
            prop_assume!(x.hypot(y) > 0.05 && (x - 1.0).hypot(y) > 0.05);
            let p = ProblemParams::new(mu).unwrap();
            let c = c_only([x, y], &p).unwrap();
            prop_assert_eq!(c_only([x, -y], &p).unwrap(), c);
            let swapped = c_only([1.0 - x, y], &p.swapped()).unwrap();
            prop_assert!((swapped - c).abs() <= 1e-10 * c.abs().max(1e-12));
        }

        #[test]
        fn axis_curvature(mu in 0.05f64..0.95, x in 0.01f64..0.99) {
            let p = ProblemParams::new(mu).unwrap();
            prop_assume!((x - p.l()).abs() > 1e-6);
            let u = u_derivs([x, 0.0], &p).unwrap();
            let c = c_only([x, 0.0], &p).unwrap();
            prop_assert!((c - u.gradient[0].powi(2) * u.hessian[2]).abs() <= 1e-12 * c.abs());
            prop_assert!(c > 0.0);
        }

        #[test]
        fn positive_outside_disks(mu in 0.05f64..0.95, r in 1.6f64..4.0, t in 0.0f64..std::f64::consts::TAU) {
            let p = ProblemParams::new(mu).unwrap();
            // Both disks of radius sqrt(3)/2 around (1/2, +-1/sqrt(2)) lie within |q - (1/2, 0)| < 1.6.
            let q = [0.5 + r * t.cos(), r * t.sin()];
            prop_assert!(c_only(q, &p).unwrap() > 0.0);
        }

        #[test]
        fn third_derivatives_match_taylor(mu in 0.05f64..0.95, x in -2.0f64..3.0, y in -2.0f64..2.0) {
            prop_assume!(x.hypot(y) > 0.05 && (x - 1.0).hypot(y) > 0.05);
            let p = ProblemParams::new(mu).unwrap();
            let u = u_derivs([x, y], &p).unwrap();
            let t = u_taylor([x, y], &p, 3).unwrap();
            let t3 = t.derivatives_of_order(3);
            for (a, b) in u.third.iter().zip(&t3) {
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
            }
        }
    }
}
