//! Generic numerics: sign scans, implicit-curve tracing and finite-difference
//! checks of closed-form derivatives.

use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Defaults shared by scans and traces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub nx: usize,
    pub ny: usize,
    pub refine_depth: usize,
    pub zero_tol: f64,
    pub max_witnesses: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            nx: 400,
            ny: 400,
            refine_depth: 4,
            zero_tol: 1e-9,
            max_witnesses: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub counts: Vec<usize>,
    pub refine_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub point: Vec<f64>,
    pub error: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVerdict {
    /// Every sample is strictly positive.
    Positive,
    /// Every sample is strictly negative.
    Negative,
    /// Both signs occur.
    SignChange,
    /// Some sample is exactly zero and no sample has the opposite sign.
    Degenerate,
    /// Nothing was evaluated.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub target: String,
    pub grid: GridSpec,
    pub min: f64,
    pub argmin: Vec<f64>,
    pub max: f64,
    pub argmax: Vec<f64>,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<SampleFailure>,
    pub verdict: ScanVerdict,
    pub samples: usize,
    pub wall_time: f64,
}

impl ScanReport {
    /// Copy with the timing zeroed, for comparisons between runs.
    pub fn without_timing(&self) -> ScanReport {
        ScanReport {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}

/// Ordered accumulator for extrema and failures.
#[derive(Clone, Debug)]
pub struct Extrema {
    min: f64,
    argmin: Vec<f64>,
    max: f64,
    argmax: Vec<f64>,
    samples: usize,
    failures: Vec<SampleFailure>,
}

impl Default for Extrema {
    fn default() -> Self {
        Extrema {
            min: f64::INFINITY,
            argmin: Vec::new(),
            max: f64::NEG_INFINITY,
            argmax: Vec::new(),
            samples: 0,
            failures: Vec::new(),
        }
    }
}

impl Extrema {
    pub fn min(&self) -> (f64, &[f64]) {
        (self.min, &self.argmin)
    }

    pub fn max(&self) -> (f64, &[f64]) {
        (self.max, &self.argmax)
    }

    pub fn push(&mut self, point: &[f64], value: f64) {
        self.samples += 1;
        if value < self.min {
            self.min = value;
            self.argmin = point.to_vec();
        }
        if value > self.max {
            self.max = value;
            self.argmax = point.to_vec();
        }
    }

    pub fn fail(&mut self, point: &[f64], error: &Error) {
        self.failures.push(SampleFailure {
            point: point.to_vec(),
            error: error.to_string(),
        });
    }

    pub fn record(&mut self, point: &[f64], value: &Result<f64>) {
        match value {
            Ok(v) if v.is_finite() => self.push(point, *v),
            Ok(v) => self.failures.push(SampleFailure {
                point: point.to_vec(),
                error: format!("non-finite value {v}"),
            }),
            Err(e) => self.fail(point, e),
        }
    }

    pub fn verdict(&self) -> ScanVerdict {
        if self.samples == 0 {
            ScanVerdict::Empty
        } else if self.min > 0.0 {
            ScanVerdict::Positive
        } else if self.max < 0.0 {
            ScanVerdict::Negative
        } else if self.min < 0.0 && self.max > 0.0 {
            ScanVerdict::SignChange
        } else {
            ScanVerdict::Degenerate
        }
    }

    pub fn into_report(
        self,
        target: &str,
        grid: GridSpec,
        witnesses: Vec<Witness>,
        started: Instant,
    ) -> ScanReport {
        let verdict = self.verdict();
        ScanReport {
            target: target.to_string(),
            grid,
            min: self.min,
            argmin: self.argmin,
            max: self.max,
            argmax: self.argmax,
            witnesses,
            failures: self.failures,
            verdict,
            samples: self.samples,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }
}

/// Evaluates `f` at every item, in parallel when the feature is enabled,
/// returning results in input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Rect {
        Rect {
            x: (x0, x1),
            y: (y0, y1),
        }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.x.0 && p[0] <= self.x.1 && p[1] >= self.y.0 && p[1] <= self.y.1
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Zero of `f` on the segment `a..b`, whose endpoint values have opposite signs.
fn edge_zero<F>(f: &F, a: [f64; 2], fa: f64, b: [f64; 2], tol: f64) -> Option<Witness>
where
    F: Fn([f64; 2]) -> Result<f64>,
{
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let at = |t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    let s_lo = sign(fa);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = at(mid);
        let v = f(p).ok()?;
        if v.abs() < tol {
            return Some(Witness {
                point: p.to_vec(),
                value: v,
            });
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if sign(v) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

struct Cell {
    corners: [[f64; 2]; 4],
    values: [f64; 4],
}

impl Cell {
    fn changes_sign(&self) -> bool {
        let s: Vec<i8> = self.values.iter().map(|v| sign(*v)).collect();
        s.iter().any(|&x| x != s[0]) || s[0] == 0
    }
}

fn refine<F>(
    f: &F,
    cell: Cell,
    depth: usize,
    tol: f64,
    ext: &mut Extrema,
    witnesses: &mut Vec<Witness>,
) where
    F: Fn([f64; 2]) -> Result<f64>,
{
    if depth == 0 {
        // corners are ordered (x0,y0), (x1,y0), (x1,y1), (x0,y1)
        for k in 0..4 {
            let (i, j) = (k, (k + 1) % 4);
            if cell.values[i] == 0.0 {
                witnesses.push(Witness {
                    point: cell.corners[i].to_vec(),
                    value: 0.0,
                });
            } else if sign(cell.values[i]) * sign(cell.values[j]) < 0 {
                if let Some(w) = edge_zero(f, cell.corners[i], cell.values[i], cell.corners[j], tol)
                {
                    witnesses.push(w);
                }
            }
        }
        return;
    }
    let [a, b, _, d] = cell.corners;
    let (x0, x1, y0, y1) = (a[0], b[0], a[1], d[1]);
    let xm = 0.5 * (x0 + x1);
    let ym = 0.5 * (y0 + y1);
    let xs = [x0, xm, x1];
    let ys = [y0, ym, y1];
    let mut vals = [[0.0f64; 3]; 3];
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let known = match (i, j) {
                (0, 0) => Some(cell.values[0]),
                (2, 0) => Some(cell.values[1]),
                (2, 2) => Some(cell.values[2]),
                (0, 2) => Some(cell.values[3]),
                _ => None,
            };
            vals[j][i] = match known {
                Some(v) => v,
                None => {
                    let r = f([x, y]);
                    ext.record(&[x, y], &r);
                    match r {
                        Ok(v) if v.is_finite() => v,
                        _ => return,
                    }
                }
            };
        }
    }
    for j in 0..2 {
        for i in 0..2 {
            let sub = Cell {
                corners: [
                    [xs[i], ys[j]],
                    [xs[i + 1], ys[j]],
                    [xs[i + 1], ys[j + 1]],
                    [xs[i], ys[j + 1]],
                ],
                values: [
                    vals[j][i],
                    vals[j][i + 1],
                    vals[j + 1][i + 1],
                    vals[j + 1][i],
                ],
            };
            if sub.changes_sign() {
                refine(f, sub, depth - 1, tol, ext, witnesses);
            }
        }
    }
}

/// Samples `f` on a regular grid over `region` and refines every cell whose
/// corners disagree in sign, recording zeros found on refined cell edges.
pub fn sign_scan<F>(target: &str, f: F, region: Rect, cfg: &ScanConfig) -> Result<ScanReport>
where
    F: Fn([f64; 2]) -> Result<f64> + Sync + Send,
{
    if cfg.nx < 2 || cfg.ny < 2 {
        return Err(Error::InvalidArgument(
            "scan grid must be at least 2 x 2".into(),
        ));
    }
    let started = Instant::now();
    let xs: Vec<f64> = (0..cfg.nx)
        .map(|i| region.x.0 + (region.x.1 - region.x.0) * i as f64 / (cfg.nx - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..cfg.ny)
        .map(|j| region.y.0 + (region.y.1 - region.y.0) * j as f64 / (cfg.ny - 1) as f64)
        .collect();
    let rows: Vec<usize> = (0..cfg.ny).collect();
    let values: Vec<Vec<Result<f64>>> =
        par_map(&rows, |&j| xs.iter().map(|&x| f([x, ys[j]])).collect());

    let mut ext = Extrema::default();
    for (j, row) in values.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            ext.record(&[xs[i], ys[j]], v);
        }
    }
    let good = |v: &Result<f64>| match v {
        Ok(x) if x.is_finite() => Some(*x),
        _ => None,
    };

    let cells: Vec<(usize, usize)> = (0..cfg.ny - 1)
        .flat_map(|j| (0..cfg.nx - 1).map(move |i| (i, j)))
        .collect();
    let refined: Vec<Option<(Extrema, Vec<Witness>)>> = par_map(&cells, |&(i, j)| {
        let vals = [
            good(&values[j][i])?,
            good(&values[j][i + 1])?,
            good(&values[j + 1][i + 1])?,
            good(&values[j + 1][i])?,
        ];
        let cell = Cell {
            corners: [
                [xs[i], ys[j]],
                [xs[i + 1], ys[j]],
                [xs[i + 1], ys[j + 1]],
                [xs[i], ys[j + 1]],
            ],
            values: vals,
        };
        if !cell.changes_sign() {
            return None;
        }
        let mut local = Extrema::default();
        let mut wit = Vec::new();
        refine(
            &f,
            cell,
            cfg.refine_depth,
            cfg.zero_tol,
            &mut local,
            &mut wit,
        );
        Some((local, wit))
    });

    let mut witnesses = Vec::new();
    let mut any_change = false;
    for (local, wit) in refined.into_iter().flatten() {
        any_change = true;
        ext.samples += local.samples;
        if local.min < ext.min {
            ext.min = local.min;
            ext.argmin = local.argmin.clone();
        }
        if local.max > ext.max {
            ext.max = local.max;
            ext.argmax = local.argmax.clone();
        }
        ext.failures.extend(local.failures);
        for w in wit {
            if witnesses.len() < cfg.max_witnesses.max(1) {
                witnesses.push(w);
            }
        }
    }
    if any_change && witnesses.is_empty() {
        return Err(Error::TraceFailure(format!(
            "{target}: sign change found but no zero could be bracketed"
        )));
    }
    let grid = GridSpec {
        lower: vec![region.x.0, region.y.0],
        upper: vec![region.x.1, region.y.1],
        counts: vec![cfg.nx, cfg.ny],
        refine_depth: cfg.refine_depth,
    };
    Ok(ext.into_report(target, grid, witnesses, started))
}

/// A scalar field in the plane with a gradient.
pub trait Field2 {
    fn value(&self, p: [f64; 2]) -> Result<f64>;

    fn gradient(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        let h = 1e-7 * (1.0 + p[0].abs().max(p[1].abs()));
        let fx = (self.value([p[0] + h, p[1]])? - self.value([p[0] - h, p[1]])?) / (2.0 * h);
        let fy = (self.value([p[0], p[1] + h])? - self.value([p[0], p[1] - h])?) / (2.0 * h);
        Ok([fx, fy])
    }
}

impl<F: Fn([f64; 2]) -> Result<f64>> Field2 for F {
    fn value(&self, p: [f64; 2]) -> Result<f64> {
        self(p)
    }
}

/// A field with a closed-form gradient.
pub struct WithGradient<F, G> {
    pub f: F,
    pub grad: G,
}

impl<F, G> Field2 for WithGradient<F, G>
where
    F: Fn([f64; 2]) -> Result<f64>,
    G: Fn([f64; 2]) -> Result<[f64; 2]>,
{
    fn value(&self, p: [f64; 2]) -> Result<f64> {
        (self.f)(p)
    }

    fn gradient(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        (self.grad)(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    pub step: f64,
    pub max_len: f64,
    /// Newton stops once `|f|` is at most this.
    pub tol: f64,
    /// Gradient norm below which the trace stops.
    pub collapse: f64,
    /// Preferred initial direction; the tangent with positive projection is used.
    pub direction: Option<[f64; 2]>,
    pub bounds: Option<Rect>,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            step: 1e-3,
            max_len: 10.0,
            tol: 1e-12,
            collapse: 1e-7,
            direction: None,
            bounds: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Termination {
    Closed,
    MaxLength,
    /// Reached a point where the gradient vanishes.
    GradientCollapse {
        at: [f64; 2],
    },
    LeftBounds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
    pub termination: Termination,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub length: f64,
}

impl Polyline {
    fn from_points(points: Vec<[f64; 2]>, residuals: &[f64], termination: Termination) -> Polyline {
        let length = points.windows(2).map(|w| dist(w[0], w[1])).sum();
        let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(*r));
        let mean_residual = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().sum::<f64>() / residuals.len() as f64
        };
        Polyline {
            points,
            closed: termination == Termination::Closed,
            termination,
            max_residual,
            mean_residual,
            length,
        }
    }

    /// Closest vertex to `p` and its distance.
    pub fn nearest(&self, p: [f64; 2]) -> Option<([f64; 2], f64)> {
        self.points
            .iter()
            .map(|q| (*q, dist(*q, p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Failed trace, with whatever was traced before the failure.
#[derive(Clone, Debug)]
pub struct TraceError {
    pub reason: String,
    pub partial: Polyline,
}

impl From<TraceError> for Error {
    fn from(e: TraceError) -> Error {
        Error::TraceFailure(format!(
            "{} after {} points",
            e.reason,
            e.partial.points.len()
        ))
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Newton projection onto `f = 0` along the gradient.
fn project<F: Field2 + ?Sized>(
    f: &F,
    mut p: [f64; 2],
    tol: f64,
) -> Result<Option<([f64; 2], f64)>> {
    for _ in 0..20 {
        let v = f.value(p)?;
        if v.abs() <= tol {
            return Ok(Some((p, v.abs())));
        }
        let g = f.gradient(p)?;
        let gg = g[0] * g[0] + g[1] * g[1];
        if gg == 0.0 || !gg.is_finite() {
            return Ok(None);
        }
        let next = [p[0] - v * g[0] / gg, p[1] - v * g[1] / gg];
        if next == p {
            return Ok(Some((p, v.abs())));
        }
        p = next;
    }
    let v = f.value(p)?;
    Ok(if v.abs() <= tol.max(1e-9) {
        Some((p, v.abs()))
    } else {
        None
    })
}

/// Newton step towards a nearby critical point, using a difference Hessian.
fn nearby_critical<F: Field2 + ?Sized>(f: &F, p: [f64; 2], h: f64) -> Result<Option<[f64; 2]>> {
    let e = 1e-6 * h.max(1e-3);
    let gx1 = f.gradient([p[0] + e, p[1]])?;
    let gx0 = f.gradient([p[0] - e, p[1]])?;
    let gy1 = f.gradient([p[0], p[1] + e])?;
    let gy0 = f.gradient([p[0], p[1] - e])?;
    let hxx = (gx1[0] - gx0[0]) / (2.0 * e);
    let hyy = (gy1[1] - gy0[1]) / (2.0 * e);
    let hxy = 0.5 * ((gx1[1] - gx0[1]) + (gy1[0] - gy0[0])) / (2.0 * e);
    let det = hxx * hyy - hxy * hxy;
    if det == 0.0 || !det.is_finite() {
        return Ok(None);
    }
    let g = f.gradient(p)?;
    let dx = -(hyy * g[0] - hxy * g[1]) / det;
    let dy = -(-hxy * g[0] + hxx * g[1]) / det;
    Ok(Some([p[0] + dx, p[1] + dy]))
}

/// Traces the level set `f = 0` from `seed` by predictor-corrector continuation.
pub fn trace_implicit<F: Field2 + ?Sized>(
    f: &F,
    seed: [f64; 2],
    opts: &TraceOptions,
) -> std::result::Result<Polyline, TraceError> {
    let fail = |reason: String, pts: Vec<[f64; 2]>, res: &[f64]| TraceError {
        reason,
        partial: Polyline::from_points(pts, res, Termination::MaxLength),
    };
    let mut points = Vec::new();
    let mut residuals = Vec::new();
    let wrap = |e: Error| e.to_string();

    let (start, r0) = match project(f, seed, opts.tol) {
        Ok(Some(x)) => x,
        Ok(None) => {
            return Err(fail(
                "seed projection did not converge".into(),
                points,
                &residuals,
            ))
        }
        Err(e) => return Err(fail(wrap(e), points, &residuals)),
    };
    points.push(start);
    residuals.push(r0);
    let g0 = f
        .gradient(start)
        .map_err(|e| fail(wrap(e), points.clone(), &residuals))?;
    if norm(g0) < opts.collapse {
        return Err(fail(
            "gradient vanishes at the seed".into(),
            points,
            &residuals,
        ));
    }
    let mut tangent = [-g0[1] / norm(g0), g0[0] / norm(g0)];
    if let Some(d) = opts.direction {
        if tangent[0] * d[0] + tangent[1] * d[1] < 0.0 {
            tangent = [-tangent[0], -tangent[1]];
        }
    }

    let mut length = 0.0;
    let mut p = start;
    let termination = loop {
        if length >= opts.max_len {
            break Termination::MaxLength;
        }
        if let Ok(Some(crit)) = nearby_critical(f, p, opts.step) {
            let ahead = (crit[0] - p[0]) * tangent[0] + (crit[1] - p[1]) * tangent[1];
            if ahead > 0.0 && dist(crit, p) < 2.0 * opts.step {
                let on_level = f
                    .value(crit)
                    .map(|v| v.abs() <= opts.tol.max(1e-10))
                    .unwrap_or(false);
                let flat = f
                    .gradient(crit)
                    .map(|g| norm(g) < opts.collapse)
                    .unwrap_or(false);
                if on_level && flat {
                    points.push(crit);
                    residuals.push(f.value(crit).map(f64::abs).unwrap_or(0.0));
                    break Termination::GradientCollapse { at: crit };
                }
            }
        }
        let mut h = opts.step;
        let mut accepted = None;
        for _ in 0..3 {
            let pred = [p[0] + h * tangent[0], p[1] + h * tangent[1]];
            match project(f, pred, opts.tol) {
                Ok(Some((q, r))) if dist(q, pred) < 0.5 * h && dist(q, p) > 0.25 * opts.step => {
                    accepted = Some((q, r));
                    break;
                }
                Err(e) => return Err(fail(wrap(e), points, &residuals)),
                _ => h *= 0.5,
            }
        }
        let Some((q, r)) = accepted else {
            return Err(fail(
                "corrector failed after step halving".into(),
                points,
                &residuals,
            ));
        };
        if let Some(b) = opts.bounds {
            if !b.contains(q) {
                break Termination::LeftBounds;
            }
        }
        length += dist(p, q);
        points.push(q);
        residuals.push(r);
        let g = match f.gradient(q) {
            Ok(g) => g,
            Err(e) => return Err(fail(wrap(e), points, &residuals)),
        };
        if norm(g) < opts.collapse {
            break Termination::GradientCollapse { at: q };
        }
        let mut t = [-g[1] / norm(g), g[0] / norm(g)];
        if t[0] * tangent[0] + t[1] * tangent[1] < 0.0 {
            t = [-t[0], -t[1]];
        }
        tangent = t;
        p = q;
        if points.len() > 10 && dist(q, start) < opts.step && length > 4.0 * opts.step {
            points.push(start);
            residuals.push(r0);
            break Termination::Closed;
        }
    };
    Ok(Polyline::from_points(points, &residuals, termination))
}

/// Closed-form derivatives of a scalar function at a point, grouped by order.
///
/// `derivs[k]` lists the order-`k` partials over nondecreasing index tuples in
/// lexicographic order, see [`multi_indices`]. `derivs[0]` holds the value.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub dim: usize,
    pub derivs: Vec<Vec<f64>>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn get(&self, index: &[usize]) -> Option<f64> {
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        let pos = multi_indices(self.dim, sorted.len())
            .iter()
            .position(|m| *m == sorted)?;
        self.derivs.get(sorted.len())?.get(pos).copied()
    }
}

/// Nondecreasing index tuples of length `order` over `0..dim`.
pub fn multi_indices(dim: usize, order: usize) -> Vec<Vec<usize>> {
    if order == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for prefix in multi_indices(dim, order - 1) {
        let start = prefix.last().copied().unwrap_or(0);
        for i in start..dim {
            let mut m = prefix.clone();
            m.push(i);
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdRow {
    pub order: usize,
    pub index: Vec<usize>,
    pub max_rel_err: f64,
    pub max_abs_err: f64,
    pub worst_point: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdTable {
    pub target: String,
    pub rows: Vec<FdRow>,
    pub points: usize,
}

impl FdTable {
    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.max_rel_err))
    }

    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.max_abs_err))
    }

    pub fn max_rel_err_of_order(&self, order: usize) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.order == order)
            .fold(0.0, |m, r| m.max(r.max_rel_err))
    }
}

/// Step sizes used by [`fd_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdSteps {
    pub low_order: f64,
    pub fourth_order: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps {
            low_order: 1e-5,
            fourth_order: 1e-3,
        }
    }
}

/// Compares every order-`k` entry of a closed-form jet with a difference
/// quotient of the order-`(k-1)` entry.
///
/// Orders one to three use the central quotient with step `low_order`; order
/// four uses the five-point quotient with step `fourth_order`. The relative
/// error of an entry is `|a - b| / max(|a|, |b|, 1)`: relative for large
/// entries, absolute for entries that cross zero. The plain absolute error
/// is reported alongside.
pub fn fd_check<J>(target: &str, jet: J, points: &[Vec<f64>], steps: FdSteps) -> Result<FdTable>
where
    J: Fn(&[f64]) -> Result<Jet> + Sync + Send,
{
    let first = match points.first() {
        Some(p) => jet(p)?,
        None => {
            return Ok(FdTable {
                target: target.into(),
                rows: Vec::new(),
                points: 0,
            })
        }
    };
    let dim = first.dim;
    let max_order = first.order();
    let mut rows: Vec<FdRow> = Vec::new();
    for k in 1..=max_order {
        for index in multi_indices(dim, k) {
            rows.push(FdRow {
                order: k,
                index,
                max_rel_err: 0.0,
                max_abs_err: 0.0,
                worst_point: Vec::new(),
            });
        }
    }
    let errs: Vec<Result<Vec<f64>>> = par_map(points, |p| {
        let base = jet(p)?;
        let mut out = Vec::with_capacity(2 * rows.len());
        for row in &rows {
            let k = row.order;
            let dir = *row.index.last().expect("order >= 1");
            let lower = &row.index[..k - 1];
            let lower_pos = multi_indices(dim, k - 1)
                .iter()
                .position(|m| m == lower)
                .expect("index present");
            let shifted = |t: f64| -> Result<f64> {
                let mut q = p.clone();
                q[dir] += t;
                Ok(jet(&q)?.derivs[k - 1][lower_pos])
            };
            let approx = if k == 4 {
                let h = steps.fourth_order;
                (-shifted(2.0 * h)? + 8.0 * shifted(h)? - 8.0 * shifted(-h)? + shifted(-2.0 * h)?)
                    / (12.0 * h)
            } else {
                let h = steps.low_order;
                (shifted(h)? - shifted(-h)?) / (2.0 * h)
            };
            let exact = base.get(&row.index).expect("index present");
            out.push((exact - approx).abs());
            out.push((exact - approx).abs() / exact.abs().max(approx.abs()).max(1.0));
        }
        Ok(out)
    });
    for (p, e) in points.iter().zip(errs) {
        let e = e?;
        for (row, pair) in rows.iter_mut().zip(e.chunks(2)) {
            let (abs, err) = (pair[0], pair[1]);
            row.max_abs_err = if abs.is_finite() {
                row.max_abs_err.max(abs)
            } else {
                f64::INFINITY
            };
            if err > row.max_rel_err || !err.is_finite() {
                row.max_rel_err = if err.is_finite() { err } else { f64::INFINITY };
                row.worst_point = p.clone();
            }
        }
    }
    Ok(FdTable {
        target: target.into(),
        rows,
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn circle(p: [f64; 2]) -> Result<f64> {
        Ok(p[0] * p[0] + p[1] * p[1] - 1.0)
    }

    fn small() -> ScanConfig {
        ScanConfig {
            nx: 41,
            ny: 41,
            refine_depth: 3,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn circle_scan() {
        let r = sign_scan("circle", circle, Rect::new(-2.0, 2.0, -2.0, 2.0), &small()).unwrap();
        assert_eq!(r.verdict, ScanVerdict::SignChange);
        assert!((r.min + 1.0).abs() < 1e-12);
        assert!(r.argmin.iter().all(|v| v.abs() < 1e-12));
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            let v = circle([w.point[0], w.point[1]]).unwrap();
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn definite_field_has_no_witnesses() {
        let f = |p: [f64; 2]| Ok(1.0 + p[0] * p[0] + p[1] * p[1]);
        let r = sign_scan("pos", f, Rect::new(-1.0, 1.0, -1.0, 1.0), &small()).unwrap();
        assert_eq!(r.verdict, ScanVerdict::Positive);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn failures_are_recorded() {
        let f = |p: [f64; 2]| {
            if p[0] > 0.5 {
                Err(Error::InvalidArgument("x".into()))
            } else {
                Ok(p[0] - 0.1)
            }
        };
        let r = sign_scan("partial", f, Rect::new(0.0, 1.0, 0.0, 1.0), &small()).unwrap();
        assert!(!r.failures.is_empty());
        assert_eq!(r.verdict, ScanVerdict::SignChange);
    }

    #[test]
    fn scans_are_deterministic() {
        let f = |p: [f64; 2]| Ok((3.0 * p[0]).sin() * (2.0 * p[1]).cos() - 0.1);
        let region = Rect::new(-2.0, 2.0, -1.0, 1.5);
        let a = sign_scan("wave", f, region, &small()).unwrap();
        let b = sign_scan("wave", f, region, &small()).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn circle_trace_closes() {
        let opts = TraceOptions {
            step: 1e-2,
            ..TraceOptions::default()
        };
        let line = trace_implicit(&circle, [1.1, 0.0], &opts).unwrap();
        assert!(line.closed);
        assert!((line.length - std::f64::consts::TAU).abs() / std::f64::consts::TAU < 0.01);
        assert!(line.max_residual < 1e-8);
        for w in line.points.windows(2) {
            let d = dist(w[0], w[1]);
            assert!(d <= 4.0 * opts.step && d >= opts.step / 4.0, "{d}");
        }
    }

    #[test]
    fn trace_stops_at_saddle() {
        // The level set xy = 0 crosses itself at the origin.
        let f = |p: [f64; 2]| Ok(p[0] * p[1]);
        let opts = TraceOptions {
            step: 1e-2,
            direction: Some([-1.0, 0.0]),
            ..TraceOptions::default()
        };
        let line = trace_implicit(&f, [0.5, 0.0], &opts).unwrap();
        match line.termination {
            Termination::GradientCollapse { at } => assert!(norm(at) < 1e-6),
            t => panic!("{t:?}"),
        }
    }

    #[test]
    fn trace_respects_bounds() {
        let f = |p: [f64; 2]| Ok(p[1] - 0.3);
        let opts = TraceOptions {
            bounds: Some(Rect::new(0.0, 1.0, 0.0, 1.0)),
            direction: Some([1.0, 0.0]),
            ..TraceOptions::default()
        };
        let line = trace_implicit(&f, [0.5, 0.2], &opts).unwrap();
        assert_eq!(line.termination, Termination::LeftBounds);
        assert!(line.points.last().unwrap()[0] > 0.99);
    }

    #[test]
    fn cube_third_derivative() {
        let jet = |p: &[f64]| {
            let x = p[0];
            Ok(Jet {
                dim: 1,
                derivs: vec![vec![x * x * x], vec![3.0 * x * x], vec![6.0 * x], vec![6.0]],
            })
        };
        let t = fd_check("cube", jet, &[vec![1.0]], FdSteps::default()).unwrap();
        assert!(t.max_rel_err_of_order(3) < 1e-9);
        assert!(t.max_rel_err() < 1e-8);
    }

    #[test]
    fn fd_check_catches_wrong_entry() {
        let jet = |p: &[f64]| {
            let (x, y) = (p[0], p[1]);
            Ok(Jet {
                dim: 2,
                derivs: vec![vec![x * y], vec![y, x], vec![0.0, 1.5, 0.0]],
            })
        };
        let t = fd_check("bad", jet, &[vec![0.3, 0.7]], FdSteps::default()).unwrap();
        assert!(t.max_rel_err_of_order(1) < 1e-9);
        assert!(t.max_rel_err_of_order(2) > 0.1);
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(2, 3).len(), 4);
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn coarse_sign_change_yields_witness(cx in -0.5f64..0.5, cy in -0.5f64..0.5, r in 0.2f64..0.8) {
            let f = move |p: [f64; 2]| Ok((p[0] - cx).powi(2) + (p[1] - cy).powi(2) - r * r);
            let cfg = ScanConfig { nx: 9, ny: 9, refine_depth: 2, ..ScanConfig::default() };
            let rep = sign_scan("disk", f, Rect::new(-1.5, 1.5, -1.5, 1.5), &cfg).unwrap();
            prop_assert_eq!(rep.verdict, ScanVerdict::SignChange);
            prop_assert!(!rep.witnesses.is_empty());
            prop_assert!(rep.min <= rep.max);
            for w in rep.witnesses {
                prop_assert!(f([w.point[0], w.point[1]]).unwrap().abs() < cfg.zero_tol);
            }
        }

        #[test]
        fn ellipse_traces_have_small_residual(a in 0.5f64..2.0, b in 0.5f64..2.0) {
            let f = move |p: [f64; 2]| Ok((p[0] / a).powi(2) + (p[1] / b).powi(2) - 1.0);
            let opts = TraceOptions { step: 1e-2, max_len: 20.0, ..TraceOptions::default() };
            let line = trace_implicit(&f, [a, 0.0], &opts).unwrap();
            prop_assert!(line.closed);
            prop_assert!(line.max_residual < 1e-8);
        }
    }
}
