//! Exact checks of the polynomial identities behind the convexity proofs.
//!
//! Each identity is reduced to one or more polynomials that must vanish,
//! possibly after reduction by a [`SurdRelation`]. Intermediate forms that
//! are known not to hold as written are evaluated too and reported as notes,
//! never as failures.

use web_time::Instant;

use serde::Serialize;

use super::{int, MultiPoly, PolyError, SurdRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityId {
    TangentialDeterminant,
    AxDerivative,
    AxReduction,
    AyDerivative,
    HBoundary,
    HVertex,
    EtaCritical,
    EtaThreshold,
    LeviCriticalValue,
    LeviRadicand,
    F0Expansion,
    F0Discriminant,
    C0Resultant,
    LineDerivativeSquares,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::TangentialDeterminant,
        IdentityId::AxDerivative,
        IdentityId::AxReduction,
        IdentityId::AyDerivative,
        IdentityId::HBoundary,
        IdentityId::HVertex,
        IdentityId::EtaCritical,
        IdentityId::EtaThreshold,
        IdentityId::LeviCriticalValue,
        IdentityId::LeviRadicand,
        IdentityId::F0Expansion,
        IdentityId::F0Discriminant,
        IdentityId::C0Resultant,
        IdentityId::LineDerivativeSquares,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::TangentialDeterminant => "det",
            IdentityId::AxDerivative => "ax-derivative",
            IdentityId::AxReduction => "ax-reduction",
            IdentityId::AyDerivative => "ay-derivative",
            IdentityId::HBoundary => "h-boundary",
            IdentityId::HVertex => "h-vertex",
            IdentityId::EtaCritical => "eta-critical",
            IdentityId::EtaThreshold => "eta-threshold",
            IdentityId::LeviCriticalValue => "levi-critical-value",
            IdentityId::LeviRadicand => "levi-radicand",
            IdentityId::F0Expansion => "f0-expansion",
            IdentityId::F0Discriminant => "f0-discriminant",
            IdentityId::C0Resultant => "c0-resultant",
            IdentityId::LineDerivativeSquares => "line-derivative-squares",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::TangentialDeterminant => {
                "det of the frame-projected diagonal Hessian = |g|^4 (bcd x^2 + acd y^2 + abd z^2 + abc w^2)"
            }
            IdentityId::AxDerivative => "dA/dy = (m + 4cy)(-c g y^2 - 2 g m y + P)",
            IdentityId::AxReduction => "A = g (y^2 - 1)(cy + m)^2 at roots of -c g y^2 - 2 g m y + P",
            IdentityId::AyDerivative => "dA/dx = (1 + 4cx) g_y(x) and A(1, y) = (c + 1) h(y)",
            IdentityId::HBoundary => "h(y) = (c^2 + 2c + m^2)(y^2 - 1) at the Hill bounds y_+-; h' factorization",
            IdentityId::HVertex => "c^2 h(-m/4c) = -eta(c)",
            IdentityId::EtaCritical => "eta, eta', eta'' at c_J = -1 - 2 sqrt(mu(1 - mu))",
            IdentityId::EtaThreshold => "eta(c_E'') = 9/32 m^2 (t - 4mu^2 + 4mu + 3), t^2 = -28mu^2 + 28mu + 9",
            IdentityId::LeviCriticalValue => "V(x0, 0) = 0 iff c^2 + 2c + m^2 = 0",
            IdentityId::LeviRadicand => "4x^4 + 8x^2y^2 - 4x^2 + 4y^4 + 4y^2 + 1 = (2x^2 - 2y^2 - 1)^2 + 16x^2y^2",
            IdentityId::F0Expansion => "expansion of F0 and its factorization on y = 1",
            IdentityId::F0Discriminant => "discriminant of the seventh y-derivative of F0; sixth derivative on y = 1",
            IdentityId::C0Resultant => "(12q^2 - 8q + 2) a^2 - (12q^2 - 16q + 6) b^2 = (2q - 1)^3 S(q) / 11664",
            IdentityId::LineDerivativeSquares => {
                "(3q - 1)^2 (6q^2 - 8q + 3)^3 - (3q - 2)^2 (6q^2 - 4q + 1)^3 = (1 - 2q)^3 (324q^4 - ... + 23)"
            }
        }
    }

    pub fn from_name(name: &str) -> Option<IdentityId> {
        IdentityId::ALL.iter().copied().find(|id| id.name() == name)
    }
}

/// Result of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityOutcome {
    pub id: IdentityId,
    pub passed: bool,
    pub checks: usize,
    /// Label and rendering of the first nonvanishing difference.
    pub failure: Option<(String, String)>,
    #[serde(skip)]
    pub residual: Option<MultiPoly>,
    /// Diagnostics about intermediate forms that do not hold as written.
    pub notes: Vec<String>,
    pub seconds: f64,
}

#[derive(Default)]
struct Checks {
    items: Vec<(String, MultiPoly)>,
    notes: Vec<String>,
}

impl Checks {
    fn zero(&mut self, label: &str, diff: MultiPoly) {
        self.items.push((label.to_string(), diff));
    }

    fn note_if_nonzero(&mut self, diff: &MultiPoly, msg: &str) {
        if !diff.is_zero() {
            self.notes
                .push(format!("{msg} (difference {})", abbreviate(diff)));
        }
    }
}

fn abbreviate(p: &MultiPoly) -> String {
    let text = p.to_string();
    if text.len() > 160 {
        format!("{}... [{} terms]", &text[..160], p.num_terms())
    } else {
        text
    }
}

/// Runs a single identity check.
pub fn verify_identity(id: IdentityId) -> IdentityOutcome {
    let start = Instant::now();
    let result = match id {
        IdentityId::TangentialDeterminant => tangential_determinant(),
        IdentityId::AxDerivative => ax_derivative(),
        IdentityId::AxReduction => ax_reduction(),
        IdentityId::AyDerivative => ay_derivative(),
        IdentityId::HBoundary => h_boundary(),
        IdentityId::HVertex => h_vertex(),
        IdentityId::EtaCritical => eta_critical(),
        IdentityId::EtaThreshold => eta_threshold(),
        IdentityId::LeviCriticalValue => levi_critical_value(),
        IdentityId::LeviRadicand => levi_radicand(),
        IdentityId::F0Expansion => f0_expansion(),
        IdentityId::F0Discriminant => f0_discriminant(),
        IdentityId::C0Resultant => c0_resultant(),
        IdentityId::LineDerivativeSquares => line_derivative_squares(),
    };
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(checks) => {
            let failed = checks.items.iter().find(|(_, d)| !d.is_zero());
            IdentityOutcome {
                id,
                passed: failed.is_none(),
                checks: checks.items.len(),
                failure: failed.map(|(l, d)| (l.clone(), abbreviate(d))),
                residual: failed.map(|(_, d)| d.clone()),
                notes: checks.notes,
                seconds,
            }
        }
        Err(e) => IdentityOutcome {
            id,
            passed: false,
            checks: 0,
            failure: Some(("construction".into(), e.to_string())),
            residual: None,
            notes: Vec::new(),
            seconds,
        },
    }
}

/// Runs the whole suite, in parallel when the `parallel` feature is on.
pub fn verify_all(ids: &[IdentityId]) -> Vec<IdentityOutcome> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ids.par_iter().map(|&id| verify_identity(id)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ids.iter().map(|&id| verify_identity(id)).collect()
    }
}

// Shared building blocks in the variables x = cosh(lambda), y = cos(nu), c, m = 1 - 2mu.
const XYCM: &[&str] = &["x", "y", "c", "m"];

fn a_function() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(
        XYCM,
        "(c*x^2 + 2*x - c*y^2 - 2*m*y)*(2*c*x^2 + x - c)*(2*c*y^2 + m*y - c) \
         - (1 - y^2)*(m + c*y)^2*(2*c*x^2 + x - c) \
         - (x^2 - 1)*(1 + c*x)^2*(2*c*y^2 + m*y - c)",
    )
}

fn g_poly() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(XYCM, "2*c*x^2 + x - c")
}

fn p_quartic() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(XYCM, "c^2*x^4 + 3*c*x^3 + x^2 + 1")
}

fn h_poly() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(
        XYCM,
        "(2*c*y^2 + m*y - c)*(c + 2) - (c^2*y^4 + 3*c*m*y^3 + m^2*y^2 + m^2)",
    )
}

fn eta_cm(vars: &[&str]) -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(vars, "c^4 + 2*c^3 + 9/8*m^2*c^2 + m^2/4*c + 5/256*m^4")
}

fn tangential_determinant() -> Result<Checks, PolyError> {
    let vars = ["a", "b", "c", "d", "x", "y", "z", "w"];
    let p = |s: &str| MultiPoly::parse(&vars, s);
    let frame = [
        [p("-y")?, p("x")?, p("w")?, p("-z")?],
        [p("-z")?, p("-w")?, p("x")?, p("y")?],
        [p("-w")?, p("z")?, p("-y")?, p("x")?],
    ];
    let diag = [p("a")?, p("b")?, p("c")?, p("d")?];
    let grad = [p("x")?, p("y")?, p("z")?, p("w")?];
    let zero = MultiPoly::zero(&vars);
    let mut m: Vec<Vec<MultiPoly>> = vec![vec![zero.clone(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = zero.clone();
            for k in 0..4 {
                acc = &acc + &(&(&frame[i][k] * &diag[k]) * &frame[j][k]);
            }
            m[i][j] = acc;
        }
    }
    let det = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
        - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])))
        + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
    let target = p("(x^2 + y^2 + z^2 + w^2)^2*(b*c*d*x^2 + a*c*d*y^2 + a*b*d*z^2 + a*b*c*w^2)")?;
    let mut checks = Checks::default();
    checks.zero("determinant", &det - &target);
    let dot = |u: &[MultiPoly; 4], v: &[MultiPoly; 4]| {
        u.iter()
            .zip(v)
            .fold(zero.clone(), |acc, (a, b)| &acc + &(a * b))
    };
    checks.zero("X.Y", dot(&frame[0], &frame[1]));
    checks.zero("Y.Z", dot(&frame[1], &frame[2]));
    checks.zero("X.Z", dot(&frame[0], &frame[2]));
    for (i, row) in frame.iter().enumerate() {
        checks.zero(&format!("row {i} . gradient"), dot(row, &grad));
    }
    Ok(checks)
}

fn ax_derivative() -> Result<Checks, PolyError> {
    let a = a_function()?;
    let g = g_poly()?;
    let target = MultiPoly::parse(XYCM, "m + 4*c*y")?
        * (&(&MultiPoly::parse(XYCM, "-c*y^2 - 2*m*y")? * &g) + &p_quartic()?);
    let mut checks = Checks::default();
    checks.zero("dA/dy factorization", &a.derivative("y")? - &target);
    let split = &(&MultiPoly::parse(XYCM, "2*c*y^2 + m*y - c")? * &p_quartic()?)
        - &(&g * &MultiPoly::parse(XYCM, "c^2*y^4 + 3*c*m*y^3 + m^2*y^2 + m^2")?);
    checks.zero("separated form of A", &a - &split);
    Ok(checks)
}

fn ax_reduction() -> Result<Checks, PolyError> {
    let a = a_function()?;
    let g = g_poly()?;
    let quad = &(&MultiPoly::parse(XYCM, "-c*y^2 - 2*m*y")? * &g) + &p_quartic()?;
    let target = &g * &MultiPoly::parse(XYCM, "(y^2 - 1)*(c*y + m)^2")?;
    let mut checks = Checks::default();
    checks.zero(
        "remainder modulo the critical quadratic",
        (&a - &target).pseudo_remainder(&quad, "y")?,
    );
    Ok(checks)
}

fn ay_derivative() -> Result<Checks, PolyError> {
    let a = a_function()?;
    let gy = MultiPoly::parse(
        XYCM,
        "(2*c*y^2 + m*y - c)*c*x^2 + 2*(2*c*y^2 + m*y - c)*x - (c^2*y^4 + 3*c*m*y^3 + m^2*y^2 + m^2)",
    )?;
    let mut checks = Checks::default();
    let target = &MultiPoly::parse(XYCM, "1 + 4*c*x")? * &gy;
    checks.zero("dA/dx factorization", &a.derivative("x")? - &target);
    let one = a.constant_like(int(1));
    let a1 = a.substitute("x", &one)?;
    let h = h_poly()?;
    checks.zero("h = g_y(1)", &gy.substitute("x", &one)? - &h);
    checks.zero(
        "A(1, y) = (c + 1) h(y)",
        &a1 - &(&MultiPoly::parse(XYCM, "c + 1")? * &h),
    );
    Ok(checks)
}

fn h_boundary() -> Result<Checks, PolyError> {
    let h = h_poly()?;
    let bound = MultiPoly::parse(XYCM, "-c*y^2 - 2*m*y + c + 2")?;
    let target = MultiPoly::parse(XYCM, "(c^2 + 2*c + m^2)*(y^2 - 1)")?;
    let mut checks = Checks::default();
    checks.zero(
        "h at the Hill bounds",
        (&h - &target).pseudo_remainder(&bound, "y")?,
    );
    let dh = &MultiPoly::parse(XYCM, "m + 4*c*y")? * &bound;
    checks.zero("h' factorization", &h.derivative("y")? - &dh);
    Ok(checks)
}

fn h_vertex() -> Result<Checks, PolyError> {
    let h = h_poly()?;
    let num = MultiPoly::parse(XYCM, "-m")?;
    let den = MultiPoly::parse(XYCM, "4*c")?;
    // (4c)^4 h(-m/4c) + 256 c^2 eta(c) = 0
    let cleared = h.substitute_fraction("y", &num, &den)?;
    let eta = eta_cm(XYCM)?;
    let mut checks = Checks::default();
    checks.zero(
        "c^2 h(-m/4c) + eta",
        &cleared + &(&MultiPoly::parse(XYCM, "256*c^2")? * &eta),
    );

    let a = a_function()?;
    let ax = a.substitute_fraction("y", &num, &den)?;
    let target = &(&MultiPoly::parse(XYCM, "-(32*m^2*c + 256*c^3)*c^2")? * &p_quartic()?)
        - &(&(&g_poly()? * &MultiPoly::parse(XYCM, "5*m^4 + 256*m^2*c^2")?)
            * &MultiPoly::parse(XYCM, "c^2")?);
    checks.zero("A(x, -m/4c)", &ax - &target);
    Ok(checks)
}

fn eta_critical() -> Result<Checks, PolyError> {
    let vars = ["mu", "s", "c", "m"];
    let p = |src: &str| MultiPoly::parse(&vars, src);
    let rel = SurdRelation::new("s", p("mu*(1 - mu)")?)?;
    let at_cj = |q: &MultiPoly| -> Result<MultiPoly, PolyError> {
        let q = q.substitute("m", &p("1 - 2*mu")?)?;
        let q = q.substitute("c", &p("-1 - 2*s")?)?;
        rel.reduce(&q)
    };
    let eta = eta_cm(&vars)?;
    let d1 = eta.derivative("c")?;
    let d2 = d1.derivative("c")?;
    let mut checks = Checks::default();
    checks.zero("eta(c_J)", at_cj(&(&eta + &p("27/256*m^4")?))?);
    checks.zero(
        "eta''(c_J)",
        at_cj(&(&d2 - &p("-39*mu^2 + 39*mu + 9/4 + 24*s")?))?,
    );
    checks.zero(
        "eta'(c_J)",
        at_cj(&(&d1 - &p("(14*mu^2 - 14*mu - 9/2)*s - 16*mu*(1 - mu)")?))?,
    );
    checks.zero("eta'' as printed", &d2 - &p("12*c^2 + 12*c + 9/4*m^2")?);
    checks.note_if_nonzero(
        &(&d1 - &p("4*c^3 + 6*c^2 + 9/4*m^2*c - m^2/4")?),
        "the form 4c^3 + 6c^2 + (9/4)m^2 c - m^2/4 is not d(eta)/dc; the constant term should be +m^2/4",
    );
    // c_J is a root of c^2 + 2c + m^2.
    checks.zero("c_J root of c^2 + 2c + m^2", at_cj(&p("c^2 + 2*c + m^2")?)?);
    Ok(checks)
}

fn eta_threshold() -> Result<Checks, PolyError> {
    let vars = ["mu", "t", "c", "m"];
    let p = |src: &str| MultiPoly::parse(&vars, src);
    let rel = SurdRelation::new("t", p("-28*mu^2 + 28*mu + 9")?)?;
    let eta = eta_cm(&vars)?;
    let diff = &eta - &p("9/32*m^2*(t - 4*mu^2 + 4*mu + 3)")?;
    let diff = diff.substitute("m", &p("1 - 2*mu")?)?;
    let diff = diff.substitute("c", &p("-1 - t/4")?)?;
    let mut checks = Checks::default();
    checks.zero("eta(c_E'')", rel.reduce(&diff)?);
    // c_E'' solves c^2 + 2c + (7/16) m^2 = 0.
    let edge = p("c^2 + 2*c + 7/16*m^2")?
        .substitute("m", &p("1 - 2*mu")?)?
        .substitute("c", &p("-1 - t/4")?)?;
    checks.zero("c_E'' root of c^2 + 2c + 7m^2/16", rel.reduce(&edge)?);
    Ok(checks)
}

fn levi_critical_value() -> Result<Checks, PolyError> {
    // w = sqrt(-mu c), x0^2 = (c + w)/(2c), 2 x0^2 - 1 = w/c.
    let vars = ["c", "mu", "w"];
    let p = |src: &str| MultiPoly::parse(&vars, src);
    let rel = SurdRelation::new("w", p("-mu*c")?)?;
    let mut checks = Checks::default();
    // dV/dX = -c - mu/(1 - 2X)^2 vanishes: c (c(1 - 2X))^2 + mu c^2 with c(1 - 2X) = -w.
    checks.zero("x0 is critical", rel.reduce(&p("c*w^2 + mu*c^2")?)?);
    // 2cw V(x0, 0) from V = -cX + mu X/(2X - 1) - (1 - mu)/2.
    let two_cw_v = p("-c*w*(c + w) + mu*c*(c + w) - c*w*(1 - mu)")?;
    let closed = p("-c*w*(c + 1 - 2*mu + 2*w)")?;
    checks.zero(
        "V(x0, 0) = -(c + 1 - 2mu + 2w)/2",
        rel.reduce(&(&two_cw_v - &closed))?,
    );
    let product = p("(c + 1 - 2*mu + 2*w)*(c + 1 - 2*mu - 2*w) - (c^2 + 2*c + (1 - 2*mu)^2)")?;
    checks.zero("conjugate product", rel.reduce(&product)?);
    let printed = p("(c + w + 1 - mu)*w + mu*(c + w)")?;
    checks.note_if_nonzero(
        &rel.reduce(&(&printed - &p("-w*(c + 1 - 2*mu + 2*w)")?))?,
        "the numerator (c + w + 1 - mu)w + mu(c + w) reduces to w(c + 1), not to -w(c + 1 - 2mu + 2w)",
    );

    let vars2 = ["mu", "s", "c"];
    let q = |src: &str| MultiPoly::parse(&vars2, src);
    let rel2 = SurdRelation::new("s", q("mu*(1 - mu)")?)?;
    let at_cj = q("c^2 + 2*c + (1 - 2*mu)^2")?.substitute("c", &q("-1 - 2*s")?)?;
    checks.zero(
        "c = -1 - 2 sqrt(mu(1 - mu)) is a root",
        rel2.reduce(&at_cj)?,
    );
    Ok(checks)
}

fn levi_radicand() -> Result<Checks, PolyError> {
    let vars = ["x", "y"];
    let lhs = MultiPoly::parse(&vars, "4*x^4 + 8*x^2*y^2 - 4*x^2 + 4*y^4 + 4*y^2 + 1")?;
    let rhs = MultiPoly::parse(&vars, "(2*x^2 - 2*y^2 - 1)^2 + 16*x^2*y^2")?;
    // |2v^2 - 1|^2 for v = x + iy.
    let modulus = MultiPoly::parse(&vars, "(2*(x^2 - y^2) - 1)^2 + (4*x*y)^2")?;
    let mut checks = Checks::default();
    checks.zero("sum of squares", &lhs - &rhs);
    checks.zero("modulus of 2v^2 - 1", &lhs - &modulus);
    Ok(checks)
}

const XY: &[&str] = &["x", "y"];

/// Polynomial coefficient of the square root in the radial derivative numerator.
pub fn rderi_root_part() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(
        XY,
        "4*x^4*y^4 - (65/7*x^5 + 8*x^3)*y^3 + (235/28*x^6 + 345/28*x^4 + 6*x^2)*y^2 \
         - (4*x^7 + 38/7*x^5 + 6*x^3 + 2*x)*y + (x^8 + 13/28*x^6 + 9/7*x^4 + x^2 + 1/4)",
    )
}

/// Rational part of the radial derivative numerator, without its `x^2` prefactor.
pub fn rderi_rational_part() -> Result<MultiPoly, PolyError> {
    MultiPoly::parse(
        XY,
        "13/2*x^3*y^4 - (393/28*x^4 + 207/28*x^2)*y^3 + (333/28*x^5 + 297/28*x^3 + 39/14*x)*y^2 \
         - (5*x^6 + 21/4*x^4 + 27/14*x^2 + 5/14)*y + (x^7 + 27/28*x^5 + 3/14*x^3)",
    )
}

/// `(x^2 - 2xy + 1) P^2 - x^4 R^2`, the rationalized radial numerator.
pub fn f0_poly() -> Result<MultiPoly, PolyError> {
    let s2 = MultiPoly::parse(XY, "x^2 - 2*x*y + 1")?;
    let p = rderi_root_part()?;
    let r = rderi_rational_part()?;
    Ok(&(&s2 * &p.pow(2)) - &(&MultiPoly::parse(XY, "x^4")? * &r.pow(2)))
}

fn f0_expansion() -> Result<Checks, PolyError> {
    let f0 = f0_poly()?;
    let expanded = MultiPoly::parse(
        XY,
        "-32*x^9*y^9 + (3425/28*x^10 + 144*x^8)*y^8 - (38917/196*x^11 + 15021/28*x^9 + 288*x^7)*y^7 \
         + (139155/784*x^12 + 340323/392*x^10 + 769431/784*x^8 + 336*x^6)*y^6 \
         - (4629/49*x^13 + 39360/49*x^11 + 19953/14*x^9 + 196145/196*x^7 + 252*x^5)*y^5 \
         + (411/14*x^14 + 368931/784*x^12 + 225543/196*x^10 + 959533/784*x^8 + 30861/49*x^6 + 126*x^4)*y^4 \
         - (30/7*x^15 + 8769/49*x^13 + 111273/196*x^11 + 77229/98*x^9 + 4293/7*x^7 + 49443/196*x^5 + 42*x^3)*y^3 \
         + (288/7*x^14 + 137229/784*x^12 + 112503/392*x^10 + 113205/392*x^8 + 17883/98*x^6 + 24709/392*x^4 + 9*x^2)*y^2 \
         - (30/7*x^15 + 1536/49*x^13 + 5739/98*x^11 + 1857/28*x^9 + 10869/196*x^7 + 211/7*x^5 + 9*x^3 + 9/8*x)*y \
         + (33/14*x^14 + 4365/784*x^12 + 1221/196*x^10 + 2307/392*x^8 + 249/56*x^6 + 15/7*x^4 + 9/16*x^2 + 1/16)",
    )?;
    let mut checks = Checks::default();
    checks.zero("expansion", &f0 - &expanded);
    let one = f0.constant_like(int(1));
    let on_line = f0.substitute("y", &one)?;
    let factored = MultiPoly::parse(
        XY,
        "1/784*(1 - 2*x)*(1 - x)^2*(2*x^2 - 2*x + 1)*(60*x^4 - 120*x^3 + 102*x^2 - 42*x + 7)\
         *(28*x^6 - 84*x^5 + 150*x^4 - 160*x^3 + 108*x^2 - 42*x + 7)",
    )?;
    checks.zero("factorization on y = 1", &on_line - &factored);
    let printed = MultiPoly::parse(
        XY,
        "1/784*(1 - 2*x)*(1 - x)^2*(2*x^2 - 2*x + 1)*(60*x^4 - 120*x^3 + 102*x^2 - 42*x + 7)\
         *(28*x^6 - 84*x^6 + 150*x^4 - 160*x^3 + 108*x^2 - 42*x + 7)",
    )?;
    checks.note_if_nonzero(
        &(&on_line - &printed),
        "the sextic factor holds with -84x^5; the variant with -84x^6 does not",
    );
    Ok(checks)
}

fn factorial(n: i64) -> num_rational::BigRational {
    int((1..=n).product())
}

fn f0_discriminant() -> Result<Checks, PolyError> {
    let f0 = f0_poly()?;
    let a = f0.coefficients_in("y")?;
    let f8 = factorial(8);
    let lhs = &(a[8].scale(&f8)).pow(2)
        - &(&a[9] * &a[7]).scale(&(int(4) * factorial(9) / int(2) * factorial(7)));
    let target = MultiPoly::parse(XY, "x^18*(74647/112*x^2 - 23778/7)")?.scale(&(&f8 * &f8));
    let mut checks = Checks::default();
    checks.zero("discriminant", &lhs - &target);
    // Seventh derivative in y is the quadratic whose discriminant this is.
    let mut d7 = f0.clone();
    for _ in 0..7 {
        d7 = d7.derivative("y")?;
    }
    let quad = &(&(&a[9].scale(&(factorial(9) / int(2))) * &MultiPoly::parse(XY, "y^2")?)
        + &(&a[8].scale(&f8) * &MultiPoly::parse(XY, "y")?))
        + &a[7].scale(&factorial(7));
    checks.zero("seventh derivative", &d7 - &quad);
    let mut d6 = f0.clone();
    for _ in 0..6 {
        d6 = d6.derivative("y")?;
    }
    let one = f0.constant_like(int(1));
    let d6_line = d6.substitute("y", &one)?;
    let stated = MultiPoly::parse(
        XY,
        "45/49*x^6*(139155*x^6 - 1089676*x^5 + 3365846*x^4 - 5051508*x^3 + 3930519*x^2 - 1580544*x + 263424)",
    )?;
    checks.zero("sixth derivative on y = 1", &d6_line - &stated);
    let variant = MultiPoly::parse(
        XY,
        "45/49*x^6*(139155*x^6 - 1089676*x^5 + 3365846*x^4 - 5051508*x^3 + 3930519*x^2 - 1508544*x + 263424)",
    )?;
    checks.note_if_nonzero(
        &(&d6_line - &variant),
        "the linear coefficient of the sixth derivative is -1580544; -1508544 is a transposition",
    );
    Ok(checks)
}

/// Quintics `a(q)` and `b(q)` of the equal-mass diagonal curvature `C0`.
pub fn c0_quintics() -> Result<(MultiPoly, MultiPoly), PolyError> {
    let vars = ["q"];
    Ok((
        MultiPoly::parse(
            &vars,
            "q^5 - 8/3*q^4 + 53/18*q^3 - 169/108*q^2 + 10/27*q - 5/216",
        )?,
        MultiPoly::parse(
            &vars,
            "q^5 - 7/3*q^4 + 41/18*q^3 - 137/108*q^2 + 11/27*q - 13/216",
        )?,
    ))
}

fn c0_resultant() -> Result<Checks, PolyError> {
    let vars = ["q"];
    let p = |src: &str| MultiPoly::parse(&vars, src);
    let (a, b) = c0_quintics()?;
    let lhs = &(&p("12*q^2 - 8*q + 2")? * &a.pow(2)) - &(&p("12*q^2 - 16*q + 6")? * &b.pow(2));
    let sextic = p("7776*q^6 - 23328*q^5 + 30348*q^4 - 21816*q^3 + 9232*q^2 - 2212*q + 241")?;
    let mut checks = Checks::default();
    checks.zero(
        "squared difference",
        &lhs - &(&p("(2*q - 1)^3/11664")? * &sextic),
    );
    checks.note_if_nonzero(
        &(&lhs - &(&p("(1 - 2*q)^3/11664")? * &sextic)),
        "with the prefactor (1 - 2q)^3 the sign is reversed; the identity holds with (2q - 1)^3",
    );
    Ok(checks)
}

fn line_derivative_squares() -> Result<Checks, PolyError> {
    let vars = ["q"];
    let p = |src: &str| MultiPoly::parse(&vars, src);
    // V' = (3q - 1)/(2 r1^3) + (3q - 2)/(2 r2^3), 2 r1^2 = 6q^2 - 4q + 1, 2 r2^2 = 6q^2 - 8q + 3.
    let lhs = p("(3*q - 1)^2*(6*q^2 - 8*q + 3)^3 - (3*q - 2)^2*(6*q^2 - 4*q + 1)^3")?;
    let quartic = p("324*q^4 - 648*q^3 + 504*q^2 - 180*q + 23")?;
    let mut checks = Checks::default();
    checks.zero(
        "cleared difference of squares",
        &lhs - &(&p("(1 - 2*q)^3")? * &quartic),
    );
    checks.note_if_nonzero(
        &(&lhs - &(&p("(1 - 2*q)^2")? * &quartic)),
        "the factor (1 - 2q) appears cubed, not squared",
    );
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::from_name(id.name()), Some(id));
        }
        assert_eq!(IdentityId::from_name("nope"), None);
    }

    #[test]
    fn determinant_with_unit_diagonal() {
        let vars = ["a", "b", "c", "d", "x", "y", "z", "w"];
        let target = MultiPoly::parse(
            &vars,
            "(x^2 + y^2 + z^2 + w^2)^2*(b*c*d*x^2 + a*c*d*y^2 + a*b*d*z^2 + a*b*c*w^2)",
        )
        .unwrap();
        let one = target.constant_like(int(1));
        let mut t = target;
        for v in ["a", "b", "c", "d"] {
            t = t.substitute(v, &one).unwrap();
        }
        assert_eq!(
            t,
            MultiPoly::parse(&vars, "(x^2 + y^2 + z^2 + w^2)^3").unwrap()
        );
    }

    #[test]
    fn eta_critical_at_equal_masses() {
        let eta = eta_cm(&["c", "m"]).unwrap();
        assert_eq!(eta.evaluate(&[int(-2), int(0)]).unwrap(), int(0));
    }

    #[test]
    fn c0_resultant_vanishes_at_half() {
        let (a, b) = c0_quintics().unwrap();
        let q = [rat(1, 2)];
        let lhs = rat(1, 1) * (int(3) - int(4) + int(2)) * a.evaluate(&q).unwrap().pow(2)
            - (int(3) - int(8) + int(6)) * b.evaluate(&q).unwrap().pow(2);
        assert_eq!(lhs, int(0));
    }

    #[test]
    fn every_identity_passes() {
        for outcome in verify_all(&IdentityId::ALL) {
            assert!(outcome.passed, "{:?}: {:?}", outcome.id, outcome.failure);
        }
    }

    #[test]
    fn misprinted_forms_are_flagged() {
        let noted = [
            IdentityId::EtaCritical,
            IdentityId::LeviCriticalValue,
            IdentityId::F0Expansion,
            IdentityId::F0Discriminant,
            IdentityId::C0Resultant,
            IdentityId::LineDerivativeSquares,
        ];
        for outcome in verify_all(&noted) {
            assert_eq!(outcome.notes.len(), 1, "{:?}", outcome.id);
        }
        assert!(verify_identity(IdentityId::TangentialDeterminant)
            .notes
            .is_empty());
    }
}
