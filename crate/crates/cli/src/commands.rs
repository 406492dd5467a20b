use std::io::Write;
use std::time::Instant;

use euler2c::curves::{self, Series};
use euler2c::elliptic::{self, EllipticGrid, EllipticPoint};
use euler2c::exactpoly::identities::{verify_all, IdentityId};
use euler2c::fiberwise::{self, FiberwiseOptions};
use euler2c::levicivita::{self, LeviSearch};
use euler2c::scan::{sign_scan, Rect, ScanConfig, ScanReport, TraceOptions};
use euler2c::{Convexity, HillComponent, ProblemParams};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, Method, RunConfig};
use crate::CliError;

const SCHEMA: u32 = 1;

fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::runtime(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::runtime(e.to_string())),
    }
}

fn emit_json<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::runtime(e.to_string()))?;
    text.push('\n');
    emit(cfg, text.as_bytes())
}

#[derive(Debug, Serialize)]
pub struct Constants {
    pub schema: u32,
    pub mu: f64,
    pub l: f64,
    pub c_j: f64,
    /// Energy at which `a` and `b` are reported, `c_J - 0.1`.
    pub c_ab: f64,
    pub a: f64,
    pub b: f64,
    pub c_e: f64,
    pub c_m: f64,
    pub c_e2: f64,
    pub c0: f64,
}

pub fn constants(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.params()?;
    let th = elliptic::thresholds(&p)?;
    let c_ab = p.c_jacobi() - 0.1;
    let (a, b) = elliptic::roots_ab(&p, c_ab);
    emit_json(
        cfg,
        &Constants {
            schema: SCHEMA,
            mu: p.mu(),
            l: p.l(),
            c_j: p.c_jacobi(),
            c_ab,
            a,
            b,
            c_e: th.c_e,
            c_m: th.c_m,
            c_e2: th.c_e2,
            c0: th.c0,
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Claim {
    Elliptic,
    Levi,
    Fiberwise,
}

impl Claim {
    fn name(self) -> &'static str {
        match self {
            Claim::Elliptic => "elliptic",
            Claim::Levi => "levi",
            Claim::Fiberwise => "fiberwise",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub claim: &'static str,
    pub mu: f64,
    pub c: f64,
    pub component: String,
    pub method: &'static str,
    /// `Convex`, `NonConvex` or `Undetermined`.
    pub verdict: String,
    pub theory: Option<Convexity>,
    pub oracle: Option<Convexity>,
    pub agree: Option<bool>,
    pub witness: Option<Value>,
    pub samples: usize,
    pub min_value: Option<f64>,
    pub runtime: f64,
}

struct OracleResult {
    verdict: Convexity,
    witness: Option<Value>,
    samples: usize,
    min_value: f64,
}

/// Mass ratio seen from the component's own primary.
fn own_ratio(p: &ProblemParams, component: HillComponent) -> f64 {
    match component {
        HillComponent::Earth => p.mu(),
        HillComponent::Moon => 1.0 - p.mu(),
    }
}

fn at_critical(p: &ProblemParams, c: f64) -> bool {
    (c - p.c_jacobi()).abs() <= 1e-12
}

fn theory(
    claim: Claim,
    p: &ProblemParams,
    c: f64,
    component: HillComponent,
) -> Result<Option<Convexity>, CliError> {
    let mu = own_ratio(p, component);
    Ok(match claim {
        Claim::Elliptic => Some(elliptic::convexity_verdict(p, c, component)?),
        Claim::Levi => (at_critical(p, c) && mu < 16.0 / 17.0).then_some(Convexity::NonConvex),
        Claim::Fiberwise => {
            if mu == 0.5 && c < p.c_jacobi() {
                Some(Convexity::Convex)
            } else if mu < 0.5 && at_critical(p, c) {
                Some(Convexity::NonConvex)
            } else {
                None
            }
        }
    })
}

fn from_own_frame(q: [f64; 2], component: HillComponent) -> [f64; 2] {
    match component {
        HillComponent::Earth => q,
        HillComponent::Moon => [1.0 - q[0], q[1]],
    }
}

fn oracle(
    claim: Claim,
    cfg: &RunConfig,
    p: &ProblemParams,
    c: f64,
    component: HillComponent,
) -> Result<OracleResult, CliError> {
    match claim {
        Claim::Elliptic => {
            let grid = EllipticGrid {
                n_lambda: cfg.n_lambda.unwrap_or(100),
                n_nu: cfg.n_nu.unwrap_or(100),
                n_phi: cfg.n_phi.unwrap_or(16),
            };
            let report = elliptic::oracle_convexity(p, c, component, &grid)?;
            let verdict = elliptic::oracle_verdict(&report);
            let witness = report
                .witnesses
                .first()
                .filter(|_| verdict == Convexity::NonConvex)
                .map(|w| {
                    let ep = EllipticPoint::new(w.point[0], w.point[1], w.point[2], w.point[3]);
                    json!({
                        "lambda": ep.lambda, "nu": ep.nu, "p_lambda": ep.p_lambda, "p_nu": ep.p_nu,
                        "position": elliptic::sample_position(&ep),
                        "min_eigenvalue": w.value,
                    })
                });
            Ok(OracleResult {
                verdict,
                witness,
                samples: report.samples,
                min_value: report.min,
            })
        }
        Claim::Levi => {
            let own = match component {
                HillComponent::Earth => *p,
                HillComponent::Moon => p.swapped(),
            };
            let rays = cfg.rays.unwrap_or(2000);
            let o = levicivita::levi_oracle(&own, c, rays, &LeviSearch::default())?;
            let witness = o.witness.map(|w| {
                let q = [2.0 * (w.point[0].powi(2) - w.point[1].powi(2)), 4.0 * w.point[0] * w.point[1]];
                json!({ "v": w.point, "f": w.f, "v_value": w.v, "x0": w.x0, "position": from_own_frame(q, component) })
            });
            let verdict = if o.convex {
                Convexity::Convex
            } else {
                Convexity::NonConvex
            };
            Ok(OracleResult {
                verdict,
                witness,
                samples: o.samples,
                min_value: o.min_f,
            })
        }
        Claim::Fiberwise => {
            let opts = FiberwiseOptions {
                rays: cfg.rays.unwrap_or(2000),
                energies: cfg.energies.unwrap_or(8),
                ..Default::default()
            };
            let rep = fiberwise::fiberwise_verdict(p, c, component, &opts)?;
            let witness = rep
                .witness
                .map(|w| json!({ "energy": w.energy, "position": w.point, "c": w.c }));
            Ok(OracleResult {
                verdict: rep.verdict,
                witness,
                samples: rep.samples,
                min_value: rep.min_c,
            })
        }
    }
}

/// Returns whether theory and oracle agree (`true` when only one ran).
pub fn verdict(claim: Claim, cfg: &RunConfig) -> Result<bool, CliError> {
    let started = Instant::now();
    let p = cfg.params()?;
    let c = cfg.energy(&p);
    if claim == Claim::Elliptic {
        p.require_below_critical(c)?;
    } else if c > p.c_jacobi() {
        return Err(euler2c::Error::EnergyAboveCritical {
            c,
            c_jacobi: p.c_jacobi(),
        }
        .into());
    }
    let component = cfg.component.unwrap_or(HillComponent::Earth);
    let method = cfg.method.unwrap_or(Method::Both);
    let th = if method != Method::Oracle {
        theory(claim, &p, c, component)?
    } else {
        None
    };
    let or = if method != Method::Theory {
        Some(oracle(claim, cfg, &p, c, component)?)
    } else {
        None
    };
    let oracle_verdict = or.as_ref().map(|o| o.verdict);
    let agree = match (th, oracle_verdict) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let verdict = match (th, oracle_verdict) {
        (Some(v), _) | (None, Some(v)) => v.to_string(),
        (None, None) => "Undetermined".to_string(),
    };
    let report = VerdictReport {
        schema: SCHEMA,
        claim: claim.name(),
        mu: p.mu(),
        c,
        component: component.to_string(),
        method: method.name(),
        verdict,
        theory: th,
        oracle: oracle_verdict,
        agree,
        witness: or.as_ref().and_then(|o| o.witness.clone()),
        samples: or.as_ref().map_or(0, |o| o.samples),
        min_value: or.as_ref().map(|o| o.min_value),
        runtime: started.elapsed().as_secs_f64(),
    };
    if agree == Some(false) {
        eprintln!("theory says {:?}, oracle says {:?}", th, oracle_verdict);
    }
    emit_json(cfg, &report)?;
    Ok(agree != Some(false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CurveKind {
    /// Both Hill boundary components and the tangent lines at the critical point.
    Hill,
    /// `V = 0` in the Levi-Civita plane.
    V0,
    /// `F = 0` in the Levi-Civita plane.
    F0,
    /// Zero set of the boundary curvature numerator.
    Czero,
    /// `c^2 x^4 + 3c x^3 + x^2 + 1 = 0` in the `(x, c)` plane.
    Quartic,
    /// `c0(mu)` and `c_J(mu)`.
    C0curve,
}

pub fn curve(kind: CurveKind, cfg: &RunConfig) -> Result<(), CliError> {
    let trace = TraceOptions {
        max_len: 4.0,
        ..Default::default()
    };
    let result: Result<Vec<Series>, CliError> = (|| {
        Ok(match kind {
            CurveKind::Hill => {
                let p = cfg.params()?;
                let c = cfg.energy(&p);
                curves::hill(&p, c, cfg.rays.unwrap_or(720))?
            }
            CurveKind::V0 => {
                let p = cfg.params()?;
                curves::v_zero(&p, cfg.energy(&p), &trace)?
            }
            CurveKind::F0 => {
                let p = cfg.params()?;
                curves::f_zero(&p, cfg.energy(&p), &trace)?
            }
            CurveKind::Czero => curves::c_zero(&cfg.params()?, 8)?,
            CurveKind::Quartic => curves::quartic(4.0, cfg.points.unwrap_or(400))?,
            CurveKind::C0curve => curves::c0_curve(cfg.points.unwrap_or(100))?,
        })
    })();
    let series = match &result {
        Ok(s) => s.as_slice(),
        Err(_) => &[],
    };
    let mut buf = Vec::new();
    curves::write_csv(series, &mut buf).map_err(|e| CliError::runtime(e.to_string()))?;
    emit(cfg, &buf)?;
    result.map(|_| ())
}

fn print_text(text: &str) -> Result<(), CliError> {
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::runtime(e.to_string()))
        }
        _ => Ok(()),
    }
}

pub fn identities(list: bool, only: &[String]) -> Result<bool, CliError> {
    use std::fmt::Write as _;
    let mut text = String::new();
    if list {
        for id in IdentityId::ALL {
            let _ = writeln!(text, "{:<24} {}", id.name(), id.description());
        }
        print_text(&text)?;
        return Ok(true);
    }
    let ids: Vec<IdentityId> = if only.is_empty() {
        IdentityId::ALL.to_vec()
    } else {
        only.iter()
            .map(|n| {
                IdentityId::from_name(n)
                    .ok_or_else(|| CliError::invalid(format!("unknown identity `{n}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut ok = true;
    for out in verify_all(&ids) {
        let tag = if out.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{tag} {:<24} {} checks, {:.3} s",
            out.id.name(),
            out.checks,
            out.seconds
        );
        if let Some((label, diff)) = &out.failure {
            let _ = writeln!(text, "     {label}: {diff}");
        }
        for note in &out.notes {
            let _ = writeln!(text, "     note: {note}");
        }
        ok &= out.passed;
    }
    print_text(&text)?;
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanTarget {
    /// The elliptic convexity polynomial `A` over the component's `(x, y)` box.
    AValue,
    /// `F` over `[-1, 1]^2` in the Levi-Civita plane.
    LeviF,
    /// The Salomão expression over `[-1, 1]^2` in the Levi-Civita plane.
    Salomao,
    /// The curvature numerator `C` around both primaries.
    Curvature,
}

pub fn scan(target: ScanTarget, cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.params()?;
    let c = cfg.energy(&p);
    let component = cfg.component.unwrap_or(HillComponent::Earth);
    let defaults = ScanConfig::default();
    let sc = ScanConfig {
        nx: cfg.nx.unwrap_or(defaults.nx),
        ny: cfg.ny.unwrap_or(defaults.ny),
        refine_depth: cfg.refine_depth.unwrap_or(defaults.refine_depth),
        zero_tol: cfg.zero_tol.unwrap_or(defaults.zero_tol),
        ..defaults
    };
    let lc = Rect::new(-1.0, 1.0, -1.0, 1.0);
    let report: ScanReport = match target {
        ScanTarget::AValue => {
            let d = elliptic::domain_bounds(&p, c, component)?;
            let region = Rect::new(d.x_range.0, d.x_range.1, d.y_range.0, d.y_range.1);
            sign_scan(
                "A",
                |q: [f64; 2]| Ok(elliptic::a_value(q[0], q[1], &p, c)),
                region,
                &sc,
            )?
        }
        ScanTarget::LeviF => sign_scan(
            "F",
            |q: [f64; 2]| levicivita::f_value(q[0], q[1], &p, c),
            lc,
            &sc,
        )?,
        ScanTarget::Salomao => sign_scan(
            "Salomao",
            |q: [f64; 2]| levicivita::salomao_lhs(q[0], q[1], &p, c),
            lc,
            &sc,
        )?,
        ScanTarget::Curvature => {
            let region = Rect::new(-0.8, 1.8, -1.3, 1.3);
            sign_scan("C", |q: [f64; 2]| fiberwise::c_only(q, &p), region, &sc)?
        }
    };
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            cfg,
            &json!({ "schema": SCHEMA, "mu": p.mu(), "c": c, "report": report }),
        ),
        Format::Csv => {
            let series = Series {
                name: "witness".into(),
                points: report
                    .witnesses
                    .iter()
                    .map(|w| [w.point[0], w.point[1]])
                    .collect(),
                values: report.witnesses.iter().map(|w| w.value).collect(),
            };
            let mut buf = Vec::new();
            curves::write_csv(&[series], &mut buf).map_err(|e| CliError::runtime(e.to_string()))?;
            emit(cfg, &buf)
        }
    }
}
