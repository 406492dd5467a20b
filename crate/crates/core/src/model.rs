//! The unregularized two-center problem.
//!
//! A massless satellite moves in the plane under Newtonian attraction of the
//! Earth (mass `1 - mu`) and the Moon (mass `mu`), both fixed:
//!
//! `H(q, p) = |p|^2 / 2 + U(q)`, `U(q) = -(1 - mu)/|q - E| - mu/|q - M|`.
//!
//! In the [`Frame::Standard`] frame the Earth sits at the origin and the Moon
//! at `(1, 0)`. The potential has exactly one critical point `L = (l, 0)`
//! between them, at the critical Jacobi energy `c_J = U(L)`. For `c < c_J` the
//! Hill region `{U <= c}` consists of two disks, one around each primary.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default absolute tolerance for membership in a level set of `U`.
pub const DEFAULT_LEVEL_TOL: f64 = 1e-10;

/// Mass ratio together with the quantities derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    mu: f64,
    l: f64,
    c_jacobi: f64,
}

impl ProblemParams {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::InvalidMassRatio(mu));
        }
        Ok(ProblemParams {
            mu,
            l: lagrange_l(mu),
            c_jacobi: jacobi_energy(mu),
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Abscissa of the critical point in the standard frame.
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn c_jacobi(&self) -> f64 {
        self.c_jacobi
    }

    /// `1 - 2 mu`.
    pub fn m(&self) -> f64 {
        1.0 - 2.0 * self.mu
    }

    pub fn mass(&self, component: HillComponent) -> f64 {
        match component {
            HillComponent::Earth => 1.0 - self.mu,
            HillComponent::Moon => self.mu,
        }
    }

    /// The same problem with the roles of the primaries exchanged.
    pub fn swapped(&self) -> ProblemParams {
        ProblemParams::new(1.0 - self.mu).expect("1 - mu lies in (0, 1)")
    }

    /// Fails with [`Error::EnergyAboveCritical`] unless `c < c_J`.
    pub fn require_below_critical(&self, c: f64) -> Result<()> {
        if c < self.c_jacobi {
            Ok(())
        } else {
            Err(Error::EnergyAboveCritical {
                c,
                c_jacobi: self.c_jacobi,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    /// Earth at `(0, 0)`, Moon at `(1, 0)`.
    Standard,
    /// Earth at `(-1/2, 0)`, Moon at `(1/2, 0)`.
    Centered,
}

impl Frame {
    fn shift(self) -> f64 {
        match self {
            Frame::Standard => 0.0,
            Frame::Centered => -0.5,
        }
    }

    pub fn earth(self) -> [f64; 2] {
        [self.shift(), 0.0]
    }

    pub fn moon(self) -> [f64; 2] {
        [1.0 + self.shift(), 0.0]
    }

    pub fn primary(self, component: HillComponent) -> [f64; 2] {
        match component {
            HillComponent::Earth => self.earth(),
            HillComponent::Moon => self.moon(),
        }
    }

    /// Re-expresses a position given in `self` in the frame `to`.
    pub fn convert(self, q: [f64; 2], to: Frame) -> [f64; 2] {
        [q[0] - self.shift() + to.shift(), q[1]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HillComponent {
    Earth,
    Moon,
}

impl HillComponent {
    pub fn other(self) -> HillComponent {
        match self {
            HillComponent::Earth => HillComponent::Moon,
            HillComponent::Moon => HillComponent::Earth,
        }
    }
}

impl std::fmt::Display for HillComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HillComponent::Earth => f.write_str("earth"),
            HillComponent::Moon => f.write_str("moon"),
        }
    }
}

impl std::str::FromStr for HillComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "earth" | "e" => Ok(HillComponent::Earth),
            "moon" | "m" => Ok(HillComponent::Moon),
            _ => Err(Error::InvalidArgument(format!("unknown component `{s}`"))),
        }
    }
}

/// Where a position sits relative to the Hill region of a given energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HillMembership {
    Earth,
    Moon,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartesianPhasePoint {
    pub q: [f64; 2],
    pub p: [f64; 2],
    pub frame: Frame,
}

impl CartesianPhasePoint {
    pub fn new(q: [f64; 2], p: [f64; 2], frame: Frame) -> Result<Self> {
        check_off_primaries(q, frame)?;
        Ok(CartesianPhasePoint { q, p, frame })
    }

    pub fn in_frame(&self, frame: Frame) -> CartesianPhasePoint {
        CartesianPhasePoint {
            q: self.frame.convert(self.q, frame),
            p: self.p,
            frame,
        }
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn check_off_primaries(q: [f64; 2], frame: Frame) -> Result<(f64, f64)> {
    let r1 = dist(q, frame.earth());
    let r2 = dist(q, frame.moon());
    if r1 <= f64::EPSILON || r2 <= f64::EPSILON || !r1.is_finite() || !r2.is_finite() {
        return Err(Error::CollisionPoint(q[0], q[1]));
    }
    Ok((r1, r2))
}

/// The potential `U(q) = -(1 - mu)/|q - E| - mu/|q - M|`.
pub fn potential(q: [f64; 2], params: &ProblemParams, frame: Frame) -> Result<f64> {
    let (r1, r2) = check_off_primaries(q, frame)?;
    Ok(-(1.0 - params.mu) / r1 - params.mu / r2)
}

/// Gradient of [`potential`].
pub fn potential_gradient(q: [f64; 2], params: &ProblemParams, frame: Frame) -> Result<[f64; 2]> {
    let (r1, r2) = check_off_primaries(q, frame)?;
    let e = frame.earth();
    let m = frame.moon();
    let k1 = (1.0 - params.mu) / (r1 * r1 * r1);
    let k2 = params.mu / (r2 * r2 * r2);
    Ok([
        k1 * (q[0] - e[0]) + k2 * (q[0] - m[0]),
        k1 * (q[1] - e[1]) + k2 * (q[1] - m[1]),
    ])
}

pub fn hamiltonian(pt: &CartesianPhasePoint, params: &ProblemParams) -> Result<f64> {
    let kinetic = 0.5 * (pt.p[0] * pt.p[0] + pt.p[1] * pt.p[1]);
    Ok(kinetic + potential(pt.q, params, pt.frame)?)
}

/// Abscissa of the critical point of `U` in the standard frame.
///
/// Written as `sqrt(1 - mu) / (sqrt(1 - mu) + sqrt(mu))`, which equals
/// `(1 - mu - sqrt(mu (1 - mu))) / (1 - 2 mu)` away from `mu = 1/2` and is
/// continuous through it.
pub fn lagrange_l(mu: f64) -> f64 {
    let a = (1.0 - mu).sqrt();
    let b = mu.sqrt();
    a / (a + b)
}

/// `c_J = -1 - 2 sqrt(mu (1 - mu))`.
pub fn jacobi_energy(mu: f64) -> f64 {
    -1.0 - 2.0 * (mu * (1.0 - mu)).sqrt()
}

/// Classifies a standard-frame position against the Hill region of energy `c`.
///
/// Bounded points are labelled by the side of `q1 = l` they lie on. The label
/// is checked by walking the segment back to the claimed primary.
pub fn hill_membership(
    q: [f64; 2],
    params: &ProblemParams,
    c: f64,
    tol: f64,
) -> Result<HillMembership> {
    params.require_below_critical(c)?;
    let u = potential(q, params, Frame::Standard)?;
    if (u - c).abs() < tol {
        return Err(Error::BoundaryAmbiguous { u, c, tol });
    }
    if u > c {
        return Ok(HillMembership::Exterior);
    }
    let component = if q[0] < params.l {
        HillComponent::Earth
    } else {
        HillComponent::Moon
    };
    let primary = Frame::Standard.primary(component);
    const STEPS: usize = 32;
    for k in 1..STEPS {
        let t = k as f64 / STEPS as f64;
        let s = [
            primary[0] + t * (q[0] - primary[0]),
            primary[1] + t * (q[1] - primary[1]),
        ];
        if potential(s, params, Frame::Standard)? > c + tol {
            return Err(Error::ClassificationInconsistent);
        }
    }
    Ok(match component {
        HillComponent::Earth => HillMembership::Earth,
        HillComponent::Moon => HillMembership::Moon,
    })
}

/// Samples the boundary `U = c` of one bounded component of the Hill region.
///
/// Returns `n` standard-frame points, one per ray from the component's primary
/// at angles `2 pi k / n`, each the first crossing of the level set. The energy
/// may equal `c_J`, in which case the ray aimed at the critical point ends on it.
pub fn hill_boundary(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
    n: usize,
) -> Result<Vec<[f64; 2]>> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!(
            "need at least 8 rays, got {n}"
        )));
    }
    if c > params.c_jacobi {
        return Err(Error::EnergyAboveCritical {
            c,
            c_jacobi: params.c_jacobi,
        });
    }
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            boundary_on_ray(params, c, component, theta, DEFAULT_LEVEL_TOL)
        })
        .collect()
}

/// First crossing of `U = c` along the ray from the primary at angle `theta`.
pub fn boundary_on_ray(
    params: &ProblemParams,
    c: f64,
    component: HillComponent,
    theta: f64,
    tol: f64,
) -> Result<[f64; 2]> {
    let origin = Frame::Standard.primary(component);
    let dir = [theta.cos(), theta.sin()];
    let at = |r: f64| [origin[0] + r * dir[0], origin[1] + r * dir[1]];
    let u = |r: f64| potential(at(r), params, Frame::Standard);

    // Along any ray U <= -mass/r, so the Kepler radius is always inside.
    let r_kepler = params.mass(component) / -c;
    // Distance to the line q1 = l, which the component never crosses.
    let toward_line = match component {
        HillComponent::Earth => dir[0],
        HillComponent::Moon => -dir[0],
    };
    let gap = (params.l - origin[0]).abs();
    let r_line = if toward_line > 0.0 {
        gap / toward_line
    } else {
        f64::INFINITY
    };
    let step = r_kepler.min(gap) / 256.0;
    let r_cap = r_line.min(r_kepler + 4.0 + 2.0 / -c);

    let mut lo = r_kepler.min(r_line);
    let mut u_lo = u(lo)?;
    if u_lo > c {
        return Err(Error::TraceFailure(format!(
            "ray {theta} starts outside the Hill region"
        )));
    }
    let mut hi;
    loop {
        hi = (lo + step).min(r_cap);
        let u_hi = u(hi)?;
        if u_hi >= c {
            if (u_hi - c).abs() <= tol {
                return Ok(at(hi));
            }
            break;
        }
        if hi >= r_cap {
            if (u_hi - c).abs() <= tol {
                return Ok(at(hi));
            }
            return Err(Error::TraceFailure(format!(
                "no crossing of U = {c} on ray {theta}"
            )));
        }
        lo = hi;
        u_lo = u_hi;
    }
    debug_assert!(u_lo < c);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let u_mid = u(mid)?;
        if (u_mid - c).abs() <= tol {
            return Ok(at(mid));
        }
        if u_mid < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (r, val) = {
        let (ul, uh) = (u(lo)?, u(hi)?);
        if (ul - c).abs() <= (uh - c).abs() {
            (lo, ul)
        } else {
            (hi, uh)
        }
    };
    if (val - c).abs() <= tol {
        Ok(at(r))
    } else {
        Err(Error::TraceFailure(format!(
            "bisection on ray {theta} stalled at |U - c| = {:e}",
            (val - c).abs()
        )))
    }
}
