//! Elliptic-coordinate regularization and the energy thresholds for convexity.
//!
//! With the primaries at `(-1/2, 0)` and `(1/2, 0)` the map
//! `q1 = cosh(lambda) cos(nu) / 2`, `q2 = sinh(lambda) sin(nu) / 2`
//! turns `(H - c)(cosh^2 lambda - cos^2 nu)` into the separable function
//!
//! `Q = 2 p_lambda^2 - 2 cosh(lambda) - c cosh^2(lambda) + 2 p_nu^2 + 2 m cos(nu) + c cos^2(nu)`,
//!
//! `m = 1 - 2 mu`, which is smooth through both collisions. The zero set of `Q`
//! over a bounded Hill component is a compact hypersurface whose convexity is
//! decided by the sign of its tangential Hessian.

use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::exactpoly::{
    self, refine_root, sign_certificate, sturm_count, sturm_isolate, Bound, Certificate, UniPoly,
};
use crate::model::{self, CartesianPhasePoint, Frame, HillComponent, ProblemParams};
use crate::scan::{par_map, Extrema, GridSpec, ScanReport, ScanVerdict, Witness};
use crate::{Convexity, Error, Result};

/// Phase point in elliptic coordinates.
///
/// Every `(lambda, nu)` with real `lambda` is allowed; `(lambda, nu)` and
/// `(-lambda, 2 pi - nu)` cover the same position. The canonical sheet has
/// `lambda >= 0`, on which `nu` lies in `[0, pi]` exactly when `q2 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticPoint {
    pub lambda: f64,
    pub nu: f64,
    pub p_lambda: f64,
    pub p_nu: f64,
}

impl EllipticPoint {
    pub fn new(lambda: f64, nu: f64, p_lambda: f64, p_nu: f64) -> Self {
        EllipticPoint {
            lambda,
            nu,
            p_lambda,
            p_nu,
        }
    }

    /// The other preimage of the same Cartesian phase point.
    pub fn other_sheet(&self) -> EllipticPoint {
        EllipticPoint {
            lambda: -self.lambda,
            nu: (std::f64::consts::TAU - self.nu).rem_euclid(std::f64::consts::TAU),
            p_lambda: -self.p_lambda,
            p_nu: -self.p_nu,
        }
    }

    pub fn to_cartesian(&self) -> Result<CartesianPhasePoint> {
        let q = elliptic_to_cartesian(self.lambda, self.nu);
        let (sh, ch) = (self.lambda.sinh(), self.lambda.cosh());
        let (sn, cs) = self.nu.sin_cos();
        // Columns d q / d lambda and d q / d nu.
        let jl = [0.5 * sh * cs, 0.5 * ch * sn];
        let jn = [-0.5 * ch * sn, 0.5 * sh * cs];
        let det = jl[0] * jn[1] - jn[0] * jl[1];
        if det.abs() <= f64::EPSILON * f64::EPSILON {
            return Err(Error::FocalDegeneracy);
        }
        // Solve J^T p = (p_lambda, p_nu).
        let p1 = (jn[1] * self.p_lambda - jl[1] * self.p_nu) / det;
        let p2 = (-jn[0] * self.p_lambda + jl[0] * self.p_nu) / det;
        CartesianPhasePoint::new(q, [p1, p2], Frame::Centered)
    }
}

/// Centered-frame position of `(lambda, nu)`.
pub fn elliptic_to_cartesian(lambda: f64, nu: f64) -> [f64; 2] {
    [
        0.5 * lambda.cosh() * nu.cos(),
        0.5 * lambda.sinh() * nu.sin(),
    ]
}

/// Both preimages of a Cartesian phase point, canonical sheet first.
pub fn cartesian_to_elliptic(pt: &CartesianPhasePoint) -> Result<[EllipticPoint; 2]> {
    let pt = pt.in_frame(Frame::Centered);
    let q = pt.q;
    let r1 = (q[0] + 0.5).hypot(q[1]);
    let r2 = (q[0] - 0.5).hypot(q[1]);
    let lambda = (r1 + r2).max(1.0).acosh();
    let mut nu = (r1 - r2).clamp(-1.0, 1.0).acos();
    if q[1] < 0.0 {
        nu = std::f64::consts::TAU - nu;
    }
    let (sh, ch) = (lambda.sinh(), lambda.cosh());
    let (sn, cs) = nu.sin_cos();
    let p_lambda = pt.p[0] * 0.5 * sh * cs + pt.p[1] * 0.5 * ch * sn;
    let p_nu = -pt.p[0] * 0.5 * ch * sn + pt.p[1] * 0.5 * sh * cs;
    let canonical = EllipticPoint {
        lambda,
        nu,
        p_lambda,
        p_nu,
    };
    Ok([canonical, canonical.other_sheet()])
}

/// The regularized Hamiltonian `Q`.
pub fn q_value(ep: &EllipticPoint, params: &ProblemParams, c: f64) -> f64 {
    let x = ep.lambda.cosh();
    let y = ep.nu.cos();
    2.0 * ep.p_lambda * ep.p_lambda - 2.0 * x - c * x * x
        + 2.0 * ep.p_nu * ep.p_nu
        + 2.0 * params.m() * y
        + c * y * y
}

/// Gradient and diagonal Hessian of `Q`, in the order `(lambda, nu, p_lambda, p_nu)`.
///
/// The Hessian of `Q` is diagonal because `Q` separates; its momentum entries
/// `cc` and `d` are both 4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HessFrameData {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub a: f64,
    pub b: f64,
    pub cc: f64,
    pub d: f64,
}

impl HessFrameData {
    pub fn gradient(&self) -> [f64; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub fn gradient_norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z + self.w * self.w
    }

    /// Three tangent vectors, pairwise orthogonal, each of length `|grad Q|`.
    pub fn frame(&self) -> [[f64; 4]; 3] {
        let (x, y, z, w) = (self.x, self.y, self.z, self.w);
        [[-y, x, w, -z], [-z, -w, x, y], [-w, z, -y, x]]
    }

    /// The Hessian of `Q` restricted to the frame, `F diag(a, b, cc, d) F^T`.
    pub fn projected_hessian(&self) -> Matrix3<f64> {
        let f = self.frame();
        let diag = [self.a, self.b, self.cc, self.d];
        Matrix3::from_fn(|i, j| (0..4).map(|k| f[i][k] * diag[k] * f[j][k]).sum())
    }

    pub fn det_closed_form(&self) -> f64 {
        let (x, y, z, w) = (self.x, self.y, self.z, self.w);
        let (a, b, c, d) = (self.a, self.b, self.cc, self.d);
        let n = self.gradient_norm_sq();
        n * n * (b * c * d * x * x + a * c * d * y * y + a * b * d * z * z + a * b * c * w * w)
    }

    /// Smallest eigenvalue of the Hessian on the unit tangent space.
    pub fn min_tangential_eigenvalue(&self) -> f64 {
        let m = self.projected_hessian() / self.gradient_norm_sq();
        SymmetricEigen::new(m).eigenvalues.min()
    }
}

fn gradient_tol() -> f64 {
    1e-12
}

pub fn hess_frame(ep: &EllipticPoint, params: &ProblemParams, c: f64) -> Result<HessFrameData> {
    let (sh, ch) = (ep.lambda.sinh(), ep.lambda.cosh());
    let (sn, cs) = ep.nu.sin_cos();
    let m = params.m();
    let data = HessFrameData {
        x: -2.0 * sh * (1.0 + c * ch),
        y: -2.0 * sn * (m + c * cs),
        z: 4.0 * ep.p_lambda,
        w: 4.0 * ep.p_nu,
        a: -2.0 * ch - 2.0 * c * (2.0 * ch * ch - 1.0),
        b: -2.0 * m * cs - 2.0 * c * (2.0 * cs * cs - 1.0),
        cc: 4.0,
        d: 4.0,
    };
    let n = data.gradient_norm_sq().sqrt();
    if n < gradient_tol() {
        return Err(Error::SingularPoint(n));
    }
    Ok(data)
}

/// Determinant of the tangential Hessian as `(numeric, closed_form)`.
pub fn tangential_hessian_det(
    ep: &EllipticPoint,
    params: &ProblemParams,
    c: f64,
) -> Result<(f64, f64)> {
    let h = hess_frame(ep, params, c)?;
    Ok((h.projected_hessian().determinant(), h.det_closed_form()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Definiteness {
    PosDef,
    Indefinite,
    Degenerate,
}

/// Classifies the tangential Hessian through its leading principal minors.
pub fn tangential_hessian_definiteness(
    ep: &EllipticPoint,
    params: &ProblemParams,
    c: f64,
) -> Result<Definiteness> {
    let h = hess_frame(ep, params, c)?;
    Ok(classify(&h))
}

fn classify(h: &HessFrameData) -> Definiteness {
    let m = h.projected_hessian() / h.gradient_norm_sq();
    let scale = [h.a, h.b, h.cc, h.d]
        .iter()
        .fold(0.0f64, |s, v| s.max(v.abs()));
    let tol = 1e-10 * scale;
    let m1 = m[(0, 0)];
    let m2 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let m3 = m.determinant();
    if m1 > tol && m2 > tol * scale && m3 > tol * scale * scale {
        Definiteness::PosDef
    } else if m3.abs() <= tol * scale * scale {
        Definiteness::Degenerate
    } else {
        Definiteness::Indefinite
    }
}

/// The polynomial `A(x, y)` in `x = cosh(lambda)`, `y = cos(nu)`.
///
/// On the zero set of `Q` it is `1/32` of
/// `Q_ll Q_nn (Q_pl^2 + Q_pn^2) + 4 (Q_ll Q_n^2 + Q_nn Q_l^2)`.
pub fn a_value(x: f64, y: f64, params: &ProblemParams, c: f64) -> f64 {
    let m = params.m();
    let g = 2.0 * c * x * x + x - c;
    let f = 2.0 * c * y * y + m * y - c;
    (c * x * x + 2.0 * x - c * y * y - 2.0 * m * y) * g * f
        - (1.0 - y * y) * (m + c * y).powi(2) * g
        - (x * x - 1.0) * (1.0 + c * x).powi(2) * f
}

/// The admissible rectangle in `(x, y) = (cosh(lambda), cos(nu))` for one component.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticDomain {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub component: HillComponent,
}

impl EllipticDomain {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_range.0 && x <= self.x_range.1 && y >= self.y_range.0 && y <= self.y_range.1
    }
}

pub fn domain_bounds(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
) -> Result<EllipticDomain> {
    params.require_below_critical(c)?;
    let m = params.m();
    let inner = c * c + 2.0 * c + m * m;
    if inner < 0.0 {
        return Err(Error::EnergyAboveCritical {
            c,
            c_jacobi: params.c_jacobi(),
        });
    }
    let root = inner.sqrt();
    Ok(match component {
        HillComponent::Earth => EllipticDomain {
            x_range: (1.0, (-1.0 - (c * c - 2.0 * m * c + 1.0).sqrt()) / c),
            y_range: (-1.0, (-m + root) / c),
            component,
        },
        HillComponent::Moon => EllipticDomain {
            x_range: (1.0, (-1.0 - (c * c + 2.0 * m * c + 1.0).sqrt()) / c),
            y_range: ((-m - root) / c, 1.0),
            component,
        },
    })
}

/// Roots `a < 0 < b` of `2 c y^2 + m y - c`.
pub fn roots_ab(params: &ProblemParams, c: f64) -> (f64, f64) {
    let m = params.m();
    let disc = (m * m + 8.0 * c * c).sqrt();
    // The roots multiply to -1/2; compute the larger one without cancellation.
    if m >= 0.0 {
        let b = (m + disc) / (-4.0 * c);
        (-0.5 / b, b)
    } else {
        let a = (-m + disc) / (4.0 * c);
        (a, -0.5 / a)
    }
}

/// `eta(c) = c^4 + 2c^3 + (9/8) m^2 c^2 + (m^2/4) c + (5/256) m^4`.
pub fn eta(c: f64, m: f64) -> f64 {
    let m2 = m * m;
    (((c + 2.0) * c + 1.125 * m2) * c + 0.25 * m2) * c + 5.0 / 256.0 * m2 * m2
}

pub fn eta_prime(c: f64, m: f64) -> f64 {
    let m2 = m * m;
    ((4.0 * c + 6.0) * c + 2.25 * m2) * c + 0.25 * m2
}

pub fn eta_second(c: f64, m: f64) -> f64 {
    (12.0 * c + 12.0) * c + 2.25 * m * m
}

/// `c_E'' = -1 - sqrt(-28 mu^2 + 28 mu + 9) / 4`.
pub fn c_e_double_prime(mu: f64) -> f64 {
    -1.0 - (-28.0 * mu * mu + 28.0 * mu + 9.0).sqrt() / 4.0
}

/// Facts that make the root of `eta` below `c_J` unique, evaluated numerically.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaCertificate {
    pub eta_at_c_e2: f64,
    pub eta_at_c_j: f64,
    pub eta_prime_at_c_j: f64,
    /// Smaller root of `eta''`; `eta'' > 0` below it.
    pub eta_second_lower_root: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub c_e: f64,
    pub c_m: f64,
    pub c_e2: f64,
    pub c0: f64,
    pub c_j: f64,
    pub certificate: Option<EtaCertificate>,
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of `f` below `start`, where `f(start) > 0`, by doubling then bisection.
fn root_below(start: f64, f: impl Fn(f64) -> f64, what: &str) -> Result<f64> {
    let mut width = 0.5;
    let mut hi = start;
    for _ in 0..64 {
        let lo = start - width;
        if f(lo) < 0.0 {
            return Ok(bisect(lo, hi, &f, 1e-13));
        }
        hi = lo;
        width *= 2.0;
    }
    Err(Error::RootIsolationFailure(format!(
        "no sign change for {what}"
    )))
}

/// The threshold energies of the elliptic convexity analysis.
///
/// `c_e` and `c_m` are the energies below which the Earth and Moon rectangles
/// avoid the band `a < y < b`; `c_e2` is the closed-form energy below which the
/// crude root bound already suffices; `c0` is the root of `eta` in `(c_e2, c_J)`.
pub fn thresholds(params: &ProblemParams) -> Result<Thresholds> {
    let m = params.m();
    let c_j = params.c_jacobi();
    let y_bound = |c: f64, sign: f64| (-m + sign * (c * c + 2.0 * c + m * m).max(0.0).sqrt()) / c;
    let start = c_j - 1e-12;
    let c_e = root_below(start, |c| y_bound(c, 1.0) - roots_ab(params, c).0, "c_E")?;
    let c_m = root_below(start, |c| roots_ab(params, c).1 - y_bound(c, -1.0), "c_M")?;
    let c_e2 = c_e_double_prime(params.mu());
    if c_e2 >= c_j || m == 0.0 {
        return Ok(Thresholds {
            c_e,
            c_m,
            c_e2: c_e2.min(c_j),
            c0: c_j,
            c_j,
            certificate: None,
        });
    }
    let cert = EtaCertificate {
        eta_at_c_e2: eta(c_e2, m),
        eta_at_c_j: eta(c_j, m),
        eta_prime_at_c_j: eta_prime(c_j, m),
        eta_second_lower_root: -0.5 - (144.0 - 108.0 * m * m).sqrt() / 24.0,
    };
    if !(cert.eta_at_c_e2 > 0.0
        && cert.eta_at_c_j < 0.0
        && cert.eta_prime_at_c_j < 0.0
        && cert.eta_second_lower_root > c_j)
    {
        return Err(Error::RootIsolationFailure(format!(
            "eta is not certified monotone on (c_E'', c_J): {cert:?}"
        )));
    }
    let c0 = bisect(c_e2, c_j, |c| eta(c, m), 1e-14);
    Ok(Thresholds {
        c_e,
        c_m,
        c_e2,
        c0,
        c_j,
        certificate: Some(cert),
    })
}

/// `c0` only.
pub fn c0(mu: f64) -> Result<f64> {
    Ok(thresholds(&ProblemParams::new(mu)?)?.c0)
}

/// Exact confirmation that `eta` has exactly one root between the binary64
/// values of `c_E''` and `c_J`, with rational `mu` equal to the given float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C0Certificate {
    pub lower: f64,
    pub upper: f64,
    pub roots_in_interval: usize,
    pub lower_positive: bool,
    pub upper_negative: bool,
    /// Isolating interval refined to width below `1e-12`.
    pub root_interval: (f64, f64),
}

impl C0Certificate {
    pub fn holds(&self) -> bool {
        self.roots_in_interval == 1 && self.lower_positive && self.upper_negative
    }
}

pub fn certify_c0(params: &ProblemParams) -> Result<C0Certificate> {
    let th = thresholds(params)?;
    let fail = |msg: &str| Error::RootIsolationFailure(msg.to_string());
    let mu = exactpoly::from_f64(params.mu()).ok_or_else(|| fail("mu is not finite"))?;
    let one = exactpoly::int(1);
    let two = exactpoly::int(2);
    let m = &one - &two * &mu;
    let m2 = &m * &m;
    let coeffs = vec![
        &m2 * &m2 * exactpoly::rat(5, 256),
        &m2 * exactpoly::rat(1, 4),
        &m2 * exactpoly::rat(9, 8),
        two.clone(),
        one.clone(),
    ];
    let poly = UniPoly::new(coeffs);
    let lo = exactpoly::from_f64(th.c_e2).ok_or_else(|| fail("c_E'' is not finite"))?;
    let hi = exactpoly::from_f64(th.c_j).ok_or_else(|| fail("c_J is not finite"))?;
    let (blo, bhi) = (Bound::Finite(lo.clone()), Bound::Finite(hi.clone()));
    let count = sturm_count(&poly, &blo, &bhi).ok_or_else(|| fail("eta vanishes identically"))?;
    let lower_positive = poly.eval(&lo) > exactpoly::int(0);
    let upper_negative = poly.eval(&hi) < exactpoly::int(0);
    let width = exactpoly::rat(1, 1_000_000_000_000);
    let root_interval = sturm_isolate(&poly, &blo, &bhi)
        .first()
        .map(|r| refine_root(&poly, r, &width))
        .map(|r| (exactpoly::to_f64(&r.lo), exactpoly::to_f64(&r.hi)))
        .unwrap_or((f64::NAN, f64::NAN));
    Ok(C0Certificate {
        lower: th.c_e2,
        upper: th.c_j,
        roots_in_interval: count,
        lower_positive,
        upper_negative,
        root_interval,
    })
}

/// Exact check that `2 c x^2 + x - c < 0` for `x` in `[1, x_max]` at rational `c`.
pub fn certify_g_negative(c: f64, x_max: f64) -> Result<Certificate> {
    let fail = |msg: &str| Error::RootIsolationFailure(msg.to_string());
    let c = exactpoly::from_f64(c).ok_or_else(|| fail("c is not finite"))?;
    let poly = UniPoly::new(vec![-c.clone(), exactpoly::int(1), exactpoly::int(2) * c]);
    let lo = Bound::Finite(exactpoly::int(1));
    let hi = Bound::Finite(exactpoly::from_f64(x_max).ok_or_else(|| fail("x_max is not finite"))?);
    Ok(sign_certificate(&poly, &lo, &hi, exactpoly::Sign::Negative))
}

/// Which component is convex according to the threshold analysis.
///
/// The lighter primary's component is convex below `c_J`; the heavier
/// primary's component is convex exactly when `c < c0`.
pub fn convexity_verdict(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
) -> Result<Convexity> {
    params.require_below_critical(c)?;
    let mu = params.mu();
    let heavier = if mu < 0.5 {
        Some(HillComponent::Earth)
    } else if mu > 0.5 {
        Some(HillComponent::Moon)
    } else {
        None
    };
    if heavier != Some(component) {
        return Ok(Convexity::Convex);
    }
    let c0 = thresholds(params)?.c0;
    Ok(if c < c0 {
        Convexity::Convex
    } else {
        Convexity::NonConvex
    })
}

/// Sampling resolution of the zero set of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticGrid {
    pub n_lambda: usize,
    pub n_nu: usize,
    pub n_phi: usize,
}

impl Default for EllipticGrid {
    fn default() -> Self {
        EllipticGrid {
            n_lambda: 100,
            n_nu: 100,
            n_phi: 16,
        }
    }
}

fn nu_range(domain: &EllipticDomain) -> (f64, f64) {
    let (y0, y1) = domain.y_range;
    // nu in [0, pi] with y = cos(nu) decreasing.
    (y1.clamp(-1.0, 1.0).acos(), y0.clamp(-1.0, 1.0).acos())
}

/// Half the squared momentum radius, `p_lambda^2 + p_nu^2`, on the zero set.
fn momentum_sq(x: f64, y: f64, m: f64, c: f64) -> f64 {
    0.5 * (2.0 * x + c * x * x - 2.0 * m * y - c * y * y)
}

/// Points of `Q = 0` over one component, with `lambda >= 0` and `nu` in `[0, pi]`.
///
/// Each admissible `(lambda, nu)` node carries `n_phi` points on its momentum
/// circle. For every `nu` row the turning point where the circle shrinks to a
/// point is added as well.
pub fn sample_zero_set(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
    grid: &EllipticGrid,
) -> Result<Vec<EllipticPoint>> {
    let domain = domain_bounds(params, c, component)?;
    let m = params.m();
    let lambda_max = domain.x_range.1.acosh();
    let (nu0, nu1) = nu_range(&domain);
    let nl = grid.n_lambda.max(2);
    let nn = grid.n_nu.max(2);
    let mut out = Vec::new();
    for j in 0..nn {
        let nu = nu0 + (nu1 - nu0) * j as f64 / (nn - 1) as f64;
        let y = nu.cos();
        for i in 0..nl {
            let lambda = lambda_max * i as f64 / (nl - 1) as f64;
            let x = lambda.cosh();
            let r2 = momentum_sq(x, y, m, c);
            if r2 < 0.0 {
                continue;
            }
            let r = r2.sqrt();
            for k in 0..grid.n_phi.max(1) {
                let phi = std::f64::consts::TAU * k as f64 / grid.n_phi.max(1) as f64;
                out.push(EllipticPoint {
                    lambda,
                    nu,
                    p_lambda: r * phi.cos(),
                    p_nu: r * phi.sin(),
                });
            }
        }
        // cx^2 + 2x - (2my + cy^2) = 0, larger root.
        let k = 2.0 * m * y + c * y * y;
        let disc = 1.0 + c * k;
        if disc >= 0.0 {
            let xb = (-1.0 - disc.sqrt()) / c;
            if xb >= 1.0 {
                out.push(EllipticPoint {
                    lambda: xb.acosh(),
                    nu,
                    p_lambda: 0.0,
                    p_nu: 0.0,
                });
            }
        }
    }
    Ok(out)
}

/// Scans the smallest eigenvalue of the tangential Hessian over the zero set.
///
/// A positive minimum over all samples reports [`ScanVerdict::Positive`]; any
/// negative sample is a witness of non-convexity.
pub fn oracle_convexity(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
    grid: &EllipticGrid,
) -> Result<ScanReport> {
    let started = web_time::Instant::now();
    let points = sample_zero_set(params, c, component, grid)?;
    let values = par_map(&points, |ep| {
        hess_frame(ep, params, c).map(|h| h.min_tangential_eigenvalue())
    });
    let mut ext = Extrema::default();
    let mut witnesses: Vec<Witness> = Vec::new();
    for (ep, v) in points.iter().zip(&values) {
        let coords = [ep.lambda, ep.nu, ep.p_lambda, ep.p_nu];
        ext.record(&coords, v);
        if let Ok(v) = v {
            if *v < 0.0 && witnesses.len() < 16 {
                witnesses.push(Witness {
                    point: coords.to_vec(),
                    value: *v,
                });
            }
        }
    }
    if ext.verdict() == ScanVerdict::SignChange || ext.verdict() == ScanVerdict::Negative {
        // Lead with the most negative sample.
        let (value, point) = ext.min();
        witnesses.insert(
            0,
            Witness {
                point: point.to_vec(),
                value,
            },
        );
        witnesses.truncate(16);
    }
    let domain = domain_bounds(params, c, component)?;
    let (nu0, nu1) = nu_range(&domain);
    let layout = GridSpec {
        lower: vec![0.0, nu0, 0.0],
        upper: vec![domain.x_range.1.acosh(), nu1, std::f64::consts::TAU],
        counts: vec![grid.n_lambda, grid.n_nu, grid.n_phi],
        refine_depth: 0,
    };
    let target = format!(
        "min tangential eigenvalue, mu = {}, c = {c}, {component}",
        params.mu()
    );
    Ok(ext.into_report(&target, layout, witnesses, started))
}

/// Convexity as decided by [`oracle_convexity`].
pub fn oracle_verdict(report: &ScanReport) -> Convexity {
    if report.verdict == ScanVerdict::Positive {
        Convexity::Convex
    } else {
        Convexity::NonConvex
    }
}

/// Maps a canonical-sheet sample to a standard-frame position.
pub fn sample_position(ep: &EllipticPoint) -> [f64; 2] {
    Frame::Centered.convert(elliptic_to_cartesian(ep.lambda, ep.nu), Frame::Standard)
}

/// Hill membership of a sample, for cross-checks against [`model::hill_membership`].
pub fn sample_membership(
    ep: &EllipticPoint,
    params: &ProblemParams,
    c: f64,
) -> Result<model::HillMembership> {
    model::hill_membership(sample_position(ep), params, c, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn on_shell(
        params: &ProblemParams,
        c: f64,
        lambda: f64,
        nu: f64,
        phi: f64,
    ) -> Option<EllipticPoint> {
        let r2 = momentum_sq(lambda.cosh(), nu.cos(), params.m(), c);
        (r2 >= 0.0)
            .then(|| EllipticPoint::new(lambda, nu, r2.sqrt() * phi.cos(), r2.sqrt() * phi.sin()))
    }

    #[test]
    fn foci() {
        let e = elliptic_to_cartesian(0.0, PI);
        assert_relative_eq!(e[0], -0.5);
        assert!(e[1].abs() < 1e-16);
        assert_eq!(elliptic_to_cartesian(0.0, 0.0), [0.5, 0.0]);
        assert!(matches!(
            EllipticPoint::new(0.0, PI, 1.0, 0.0).to_cartesian(),
            Err(Error::FocalDegeneracy)
        ));
    }

    #[test]
    fn collision_at_rest_is_off_the_zero_set() {
        let p = ProblemParams::new(0.5).unwrap();
        assert_relative_eq!(
            q_value(&EllipticPoint::new(0.0, PI, 0.0, 0.0), &p, -2.0),
            -2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn momentum_entries_are_four() {
        let p = ProblemParams::new(0.3).unwrap();
        let h = hess_frame(&EllipticPoint::new(0.4, 2.0, 0.1, -0.3), &p, -2.5).unwrap();
        assert_eq!((h.cc, h.d), (4.0, 4.0));
    }

    #[test]
    fn unit_diagonal_determinant() {
        let h = HessFrameData {
            x: 0.3,
            y: -1.2,
            z: 0.7,
            w: 2.0,
            a: 1.0,
            b: 1.0,
            cc: 1.0,
            d: 1.0,
        };
        let n = h.gradient_norm_sq();
        assert_relative_eq!(h.det_closed_form(), n * n * n, max_relative = 1e-14);
        assert_relative_eq!(
            h.projected_hessian().determinant(),
            n * n * n,
            max_relative = 1e-12
        );
    }

    #[test]
    fn domain_examples() {
        let p = ProblemParams::new(0.5).unwrap();
        let d = domain_bounds(&p, -2.0 - 1e-12, HillComponent::Earth).unwrap();
        assert!(d.y_range.1.abs() < 1e-5);
        let d = domain_bounds(&p, -2.0 - 1e-12, HillComponent::Moon).unwrap();
        assert!(d.y_range.0.abs() < 1e-5);
        assert_relative_eq!(d.x_range.1, (1.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-9);
        assert_eq!(d.x_range.0, 1.0);
        assert!(matches!(
            domain_bounds(&p, -2.0, HillComponent::Earth),
            Err(Error::EnergyAboveCritical { .. })
        ));
    }

    #[test]
    fn roots_at_equal_masses() {
        let p = ProblemParams::new(0.5).unwrap();
        let (a, b) = roots_ab(&p, -3.0);
        assert_relative_eq!(a, -0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(b, 0.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn equal_mass_thresholds() {
        let p = ProblemParams::new(0.5).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!(t.c0, -2.0);
        assert_eq!(c_e_double_prime(0.5), -2.0);
        assert!(t.c_e < -2.0 && t.c_m < -2.0);
        assert_relative_eq!(t.c_e, t.c_m, epsilon = 1e-10);
    }

    #[test]
    fn a_positive_example() {
        let p = ProblemParams::new(0.5).unwrap();
        assert!(a_value(1.2, -0.5, &p, -3.0) > 0.0);
    }

    #[test]
    fn verdict_examples() {
        let p = ProblemParams::new(0.5).unwrap();
        for comp in [HillComponent::Earth, HillComponent::Moon] {
            assert_eq!(
                convexity_verdict(&p, -2.3, comp).unwrap(),
                Convexity::Convex
            );
        }
        let p = ProblemParams::new(0.3).unwrap();
        let t = thresholds(&p).unwrap();
        assert_eq!(
            convexity_verdict(&p, t.c_j - 1e-3, HillComponent::Moon).unwrap(),
            Convexity::Convex
        );
        let mid = 0.5 * (t.c0 + t.c_j);
        assert_eq!(
            convexity_verdict(&p, mid, HillComponent::Earth).unwrap(),
            Convexity::NonConvex
        );
        assert_eq!(
            convexity_verdict(&p, t.c0 - 0.1, HillComponent::Earth).unwrap(),
            Convexity::Convex
        );
        let q = ProblemParams::new(0.7).unwrap();
        assert_eq!(
            convexity_verdict(&q, mid, HillComponent::Moon).unwrap(),
            Convexity::NonConvex
        );
        assert_eq!(
            convexity_verdict(&q, mid, HillComponent::Earth).unwrap(),
            Convexity::Convex
        );
    }

    #[test]
    fn failure_regime_has_indefinite_point() {
        let p = ProblemParams::new(0.3).unwrap();
        let t = thresholds(&p).unwrap();
        let c = 0.5 * (t.c0 + t.c_j);
        let grid = EllipticGrid {
            n_lambda: 40,
            n_nu: 60,
            n_phi: 8,
        };
        let pts = sample_zero_set(&p, c, HillComponent::Earth, &grid).unwrap();
        let found = pts.iter().any(|ep| {
            tangential_hessian_definiteness(ep, &p, c).unwrap() == Definiteness::Indefinite
        });
        assert!(found);
    }

    #[test]
    fn zero_set_samples_are_on_shell_and_in_component() {
        let p = ProblemParams::new(0.3).unwrap();
        let c = -2.2;
        for comp in [HillComponent::Earth, HillComponent::Moon] {
            let pts = sample_zero_set(
                &p,
                c,
                comp,
                &EllipticGrid {
                    n_lambda: 12,
                    n_nu: 12,
                    n_phi: 4,
                },
            )
            .unwrap();
            assert!(!pts.is_empty());
            for ep in &pts {
                assert!(q_value(ep, &p, c).abs() < 1e-10);
                if ep.p_lambda == 0.0 && ep.p_nu == 0.0 {
                    continue;
                }
                let expect = match comp {
                    HillComponent::Earth => model::HillMembership::Earth,
                    HillComponent::Moon => model::HillMembership::Moon,
                };
                match sample_membership(ep, &p, c) {
                    Ok(got) => assert_eq!(got, expect),
                    Err(Error::CollisionPoint(..)) | Err(Error::BoundaryAmbiguous { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn exact_c0_certificate() {
        let p = ProblemParams::new(0.25).unwrap();
        let cert = certify_c0(&p).unwrap();
        assert!(cert.holds(), "{cert:?}");
        let c0 = thresholds(&p).unwrap().c0;
        assert!(cert.root_interval.0 - 1e-12 <= c0 && c0 <= cert.root_interval.1 + 1e-12);
    }

    #[test]
    fn g_is_negative_on_domain() {
        for (mu, c) in [(0.25, -2.5), (0.1, -1.7), (0.5, -2.01)] {
            let p = ProblemParams::new(mu).unwrap();
            let d = domain_bounds(&p, c, HillComponent::Earth).unwrap();
            assert!(matches!(
                certify_g_negative(c, d.x_range.1).unwrap(),
                Certificate::Certified { .. }
            ));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn focal_distances(lambda in 0.0f64..3.0, nu in 0.0f64..TAU) {
            let q = elliptic_to_cartesian(lambda, nu);
            let r1 = (q[0] + 0.5).hypot(q[1]);
            let r2 = (q[0] - 0.5).hypot(q[1]);
            prop_assert!((r1 + r2 - lambda.cosh()).abs() < 1e-12 * lambda.cosh());
            prop_assert!((r1 - r2 - nu.cos()).abs() < 1e-12 * lambda.cosh());
        }

        #[test]
        fn round_trip(x in -3.0f64..3.0, y in -3.0f64..3.0, p1 in -2.0f64..2.0, p2 in -2.0f64..2.0) {
            prop_assume!((x + 0.5).hypot(y) > 1e-3 && (x - 0.5).hypot(y) > 1e-3 && y.abs() > 1e-6);
            let pt = CartesianPhasePoint::new([x, y], [p1, p2], Frame::Centered).unwrap();
            let [e1, e2] = cartesian_to_elliptic(&pt).unwrap();
            prop_assert!(e1.lambda >= 0.0);
            prop_assert_eq!(e1.nu <= PI, y >= 0.0);
            for e in [e1, e2] {
                let back = e.to_cartesian().unwrap();
                prop_assert!((back.q[0] - x).abs() < 1e-9 && (back.q[1] - y).abs() < 1e-9);
                prop_assert!((back.p[0] - p1).abs() < 1e-6 && (back.p[1] - p2).abs() < 1e-6);
            }
        }

        #[test]
        fn pullback_of_liouville_form(lambda in 0.05f64..2.0, nu in 0.0f64..TAU, pl in -1.0f64..1.0, pn in -1.0f64..1.0, dl in -1.0f64..1.0, dn in -1.0f64..1.0) {
            let ep = EllipticPoint::new(lambda, nu, pl, pn);
            let pt = ep.to_cartesian().unwrap();
            let h = 1e-6;
            let qa = elliptic_to_cartesian(lambda + h * dl, nu + h * dn);
            let qb = elliptic_to_cartesian(lambda - h * dl, nu - h * dn);
            let dq = [(qa[0] - qb[0]) / (2.0 * h), (qa[1] - qb[1]) / (2.0 * h)];
            let lhs = pt.p[0] * dq[0] + pt.p[1] * dq[1];
            let rhs = pl * dl + pn * dn;
            prop_assert!((lhs - rhs).abs() < 1e-8 * (1.0 + pt.p[0].abs() + pt.p[1].abs()));
        }

        #[test]
        fn q_matches_hamiltonian(mu in 0.05f64..0.95, lambda in 0.05f64..2.0, nu in 0.0f64..TAU, pl in -1.0f64..1.0, pn in -1.0f64..1.0, c in -4.0f64..-1.0) {
            let p = ProblemParams::new(mu).unwrap();
            let ep = EllipticPoint::new(lambda, nu, pl, pn);
            let pt = ep.to_cartesian().unwrap();
            let h = model::hamiltonian(&pt, &p).unwrap();
            let expect = (h - c) * (lambda.cosh().powi(2) - nu.cos().powi(2));
            let q = q_value(&ep, &p, c);
            prop_assert!((q - expect).abs() < 1e-10 * (1.0 + q.abs()));
            let [_, other] = cartesian_to_elliptic(&pt).unwrap();
            prop_assert!((q_value(&other, &p, c) - q).abs() < 1e-9 * (1.0 + q.abs()));
            let flipped = EllipticPoint::new(lambda, nu, -pl, -pn);
            prop_assert_eq!(q_value(&flipped, &p, c), q);
        }

        #[test]
        fn frame_is_orthogonal(mu in 0.05f64..0.95, lambda in 0.0f64..2.0, nu in 0.0f64..TAU, phi in 0.0f64..TAU, dc in 0.01f64..2.0) {
            let p = ProblemParams::new(mu).unwrap();
            let c = p.c_jacobi() - dc;
            if let Some(ep) = on_shell(&p, c, lambda, nu, phi) {
                let h = hess_frame(&ep, &p, c).unwrap();
                let f = h.frame();
                let g = h.gradient();
                let dot = |u: &[f64; 4], v: &[f64; 4]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
                let n = h.gradient_norm_sq();
                prop_assert!(dot(&f[0], &f[1]).abs() <= 1e-12 * n);
                prop_assert!(dot(&f[1], &f[2]).abs() <= 1e-12 * n);
                prop_assert!(dot(&f[0], &f[2]).abs() <= 1e-12 * n);
                for row in &f {
                    prop_assert!(dot(row, &g).abs() <= 1e-12 * n);
                }
            }
        }

        #[test]
        fn diagonal_matches_differences(mu in 0.05f64..0.95, lambda in 0.1f64..2.0, nu in 0.0f64..TAU, c in -4.0f64..-1.0) {
            let p = ProblemParams::new(mu).unwrap();
            let ep = EllipticPoint::new(lambda, nu, 0.3, -0.2);
            let h = hess_frame(&ep, &p, c).unwrap();
            let s = 1e-5;
            let ql = |d: f64| q_value(&EllipticPoint::new(lambda + d, nu, 0.3, -0.2), &p, c);
            let qn = |d: f64| q_value(&EllipticPoint::new(lambda, nu + d, 0.3, -0.2), &p, c);
            let a = (ql(s) - 2.0 * ql(0.0) + ql(-s)) / (s * s);
            let b = (qn(s) - 2.0 * qn(0.0) + qn(-s)) / (s * s);
            let scale = h.a.abs().max(h.b.abs()).max(1.0);
            prop_assert!((a - h.a).abs() < 1e-4 * scale);
            prop_assert!((b - h.b).abs() < 1e-4 * scale);
        }

        #[test]
        fn a_matches_bracket_on_shell(mu in 0.05f64..0.95, lambda in 0.0f64..2.0, nu in 0.0f64..TAU, phi in 0.0f64..TAU, dc in 0.01f64..2.0) {
            let p = ProblemParams::new(mu).unwrap();
            let c = p.c_jacobi() - dc;
            if let Some(ep) = on_shell(&p, c, lambda, nu, phi) {
                let h = hess_frame(&ep, &p, c).unwrap();
                let bracket = h.a * h.b * (h.z * h.z + h.w * h.w) + 4.0 * (h.a * h.y * h.y + h.b * h.x * h.x);
                let a = 32.0 * a_value(lambda.cosh(), nu.cos(), &p, c);
                let scale = bracket.abs().max(a.abs()).max(1e-300);
                prop_assert!((bracket - a).abs() <= 1e-8 * scale.max(1.0));
            }
        }

        #[test]
        fn determinant_paths_agree(mu in 0.05f64..0.95, lambda in 0.0f64..2.0, nu in 0.0f64..TAU, phi in 0.0f64..TAU, dc in 0.01f64..2.0) {
            let p = ProblemParams::new(mu).unwrap();
            let c = p.c_jacobi() - dc;
            if let Some(ep) = on_shell(&p, c, lambda, nu, phi) {
                let (num, closed) = tangential_hessian_det(&ep, &p, c).unwrap();
                let h = hess_frame(&ep, &p, c).unwrap();
                let n = h.gradient_norm_sq();
                let scale = n * n * n * [h.a, h.b, 4.0].iter().fold(0.0f64, |s, v| s.max(v.abs())).powi(3);
                prop_assert!((num - closed).abs() <= 1e-8 * closed.abs().max(1e-6 * scale));
                prop_assert_eq!(num.signum(), closed.signum());
                if classify(&h) == Definiteness::PosDef {
                    prop_assert!(closed > 0.0);
                }
            }
        }

        #[test]
        fn root_signs(mu in 0.01f64..0.5, dc in 0.0f64..5.0) {
            let p = ProblemParams::new(mu).unwrap();
            let c = p.c_jacobi() - dc - 1e-9;
            let (a, b) = roots_ab(&p, c);
            let f = |y: f64| 2.0 * c * y * y + p.m() * y - c;
            prop_assert!(-1.0 < a && a < 0.0 && 0.0 < b && b < 1.0);
            prop_assert!(f(a).abs() < 1e-14 * c.abs().max(1.0) && f(b).abs() < 1e-14 * c.abs().max(1.0));
            prop_assert!(f(-1.0) < 0.0 && f(0.0) > 0.0 && f(1.0) < 0.0);
        }

        #[test]
        fn eta_at_critical(mu in 0.001f64..0.999) {
            let m = 1.0 - 2.0 * mu;
            let cj = model::jacobi_energy(mu);
            prop_assert!((eta(cj, m) + 27.0 / 256.0 * m.powi(4)).abs() < 1e-12);
            let t = (-28.0 * mu * mu + 28.0 * mu + 9.0).sqrt();
            let expect = 9.0 / 32.0 * m * m * (t - 4.0 * mu * mu + 4.0 * mu + 3.0);
            prop_assert!((eta(c_e_double_prime(mu), m) - expect).abs() < 1e-10);
        }

        #[test]
        fn c0_is_symmetric(mu in 0.01f64..0.49) {
            let a = c0(mu).unwrap();
            let b = c0(1.0 - mu).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_chain() {
        for k in 1..10 {
            let mu = 0.05 * k as f64;
            let t = thresholds(&ProblemParams::new(mu).unwrap()).unwrap();
            assert!(t.c_e2 < t.c0 && t.c0 < t.c_j, "mu = {mu}: {t:?}");
            assert!(t.c_e < t.c_e2, "mu = {mu}: {t:?}");
        }
    }
}
