use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int, MultiPoly, PolyError};

/// Dense univariate polynomial over ℚ, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

/// Endpoint of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl From<BigRational> for Bound {
    fn from(r: BigRational) -> Self {
        Bound::Finite(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

/// Interval `(lo, hi)` holding exactly one real root; `lo == hi` marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No root in the open interval and the sample has the claimed sign.
    Certified { sample: BigRational },
    /// The claim fails; `witness` has the wrong sign (or is a root) when one could be
    /// produced, `roots` lists isolating intervals of the roots found.
    Refuted {
        witness: Option<BigRational>,
        roots: Vec<RootInterval>,
    },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn parse(var: &str, src: &str) -> Result<Self, PolyError> {
        Self::from_multipoly(&MultiPoly::parse(&[var], src)?, var)
    }

    /// Extracts the coefficients in `var`; every other variable must be absent.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Result<Self, PolyError> {
        let i = p.index_of(var)?;
        let mut coeffs = vec![BigRational::zero(); p.degree_in(var)? as usize + 1];
        for (e, c) in p.terms() {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(PolyError::NotUnivariate(var.to_string()));
            }
            coeffs[e[i] as usize] += c;
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let nq = (r.len() + 1).saturating_sub(dd + 1);
        let mut q = vec![BigRational::zero(); nq];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().cloned().unwrap_or_default() / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        let Some(lead) = self.leading() else { return 0 };
        let s = if lead.is_positive() { 1 } else { -1 };
        match b {
            Bound::PosInf => s,
            Bound::NegInf => {
                if self.degree().unwrap_or(0).is_multiple_of(2) {
                    s
                } else {
                    -s
                }
            }
            Bound::Finite(x) => sign_of(&self.eval(x)),
        }
    }

    /// Strict upper bound on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> BigRational {
        let Some(lead) = self.leading() else {
            return BigRational::one();
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn variations(seq: &[UniPoly], b: &Bound) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|q| q.sign_at(b))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn bound_lt(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Returns `None` for the zero polynomial.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Option<usize> {
    if p.is_zero() {
        return None;
    }
    if !bound_lt(lo, hi) {
        return Some(0);
    }
    let sf = p.squarefree_part();
    Some(count_squarefree(&sturm_sequence(&sf), &sf, lo, hi))
}

fn count_squarefree(seq: &[UniPoly], sf: &UniPoly, lo: &Bound, hi: &Bound) -> usize {
    // V(lo) - V(hi) counts roots in (lo, hi].
    let n = variations(seq, lo).saturating_sub(variations(seq, hi));
    match hi {
        Bound::Finite(x) if sf.eval(x).is_zero() => n - 1,
        _ => n,
    }
}

/// Disjoint isolating intervals for the distinct real roots of `p` in `(lo, hi)`, in increasing order.
pub fn sturm_isolate(p: &UniPoly, lo: &Bound, hi: &Bound) -> Vec<RootInterval> {
    if p.is_zero() || !bound_lt(lo, hi) {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    let b = sf.cauchy_bound();
    let a = match lo {
        Bound::Finite(x) => x.clone(),
        _ => -b.clone(),
    };
    let z = match hi {
        Bound::Finite(x) => x.clone(),
        _ => b,
    };
    let mut out = Vec::new();
    let n = count_squarefree(
        &seq,
        &sf,
        &Bound::Finite(a.clone()),
        &Bound::Finite(z.clone()),
    );
    isolate_rec(&seq, &sf, a, z, n, &mut out);
    out
}

fn isolate_rec(
    seq: &[UniPoly],
    sf: &UniPoly,
    lo: BigRational,
    hi: BigRational,
    n: usize,
    out: &mut Vec<RootInterval>,
) {
    match n {
        0 => {}
        1 => out.push(RootInterval { lo, hi }),
        _ => {
            let mid = (&lo + &hi) / int(2);
            let m = Bound::Finite(mid.clone());
            let left = count_squarefree(seq, sf, &Bound::Finite(lo.clone()), &m);
            let at_mid = sf.eval(&mid).is_zero();
            isolate_rec(seq, sf, lo, mid.clone(), left, out);
            if at_mid {
                out.push(RootInterval {
                    lo: mid.clone(),
                    hi: mid.clone(),
                });
            }
            let right = n - left - usize::from(at_mid);
            isolate_rec(seq, sf, mid, hi, right, out);
        }
    }
}

/// Shrinks an isolating interval by bisection until its width is at most `width`.
pub fn refine_root(p: &UniPoly, iv: &RootInterval, width: &BigRational) -> RootInterval {
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    let mut iv = iv.clone();
    while !iv.is_exact() && &(&iv.hi - &iv.lo) > width {
        let mid = iv.midpoint();
        if sf.eval(&mid).is_zero() {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        let left = count_squarefree(
            &seq,
            &sf,
            &Bound::Finite(iv.lo.clone()),
            &Bound::Finite(mid.clone()),
        );
        if left == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    iv
}

fn interior_sample(lo: &Bound, hi: &Bound) -> BigRational {
    match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => (a + b) / int(2),
        (Bound::Finite(a), _) => a + BigRational::one(),
        (_, Bound::Finite(b)) => b - BigRational::one(),
        _ => BigRational::zero(),
    }
}

/// Certifies that `p` has the claimed strict sign on the open interval `(lo, hi)`.
pub fn sign_certificate(p: &UniPoly, lo: &Bound, hi: &Bound, claimed: Sign) -> Certificate {
    let want = match claimed {
        Sign::Positive => 1,
        Sign::Negative => -1,
    };
    let sample = interior_sample(lo, hi);
    let count = sturm_count(p, lo, hi);
    let sample_ok = sign_of(&p.eval(&sample)) == want;
    if count == Some(0) && sample_ok {
        return Certificate::Certified { sample };
    }
    if !sample_ok {
        let roots = sturm_isolate(p, lo, hi);
        return Certificate::Refuted {
            witness: Some(sample),
            roots,
        };
    }
    let roots = sturm_isolate(p, lo, hi);
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    let mut witness = None;
    'outer: for iv in &roots {
        if iv.is_exact() {
            witness = Some(iv.lo.clone());
            break;
        }
        let mut cur = iv.clone();
        for _ in 0..200 {
            let mid = cur.midpoint();
            if sign_of(&p.eval(&mid)) != want {
                witness = Some(mid);
                break 'outer;
            }
            let left = count_squarefree(
                &seq,
                &sf,
                &Bound::Finite(cur.lo.clone()),
                &Bound::Finite(mid.clone()),
            );
            if left == 1 {
                cur.hi = mid;
            } else {
                cur.lo = mid;
            }
        }
    }
    Certificate::Refuted { witness, roots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn fin(n: i64, d: i64) -> Bound {
        Bound::Finite(rat(n, d))
    }

    #[test]
    fn sqrt_two_is_isolated() {
        let p = UniPoly::from_integers(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &fin(1, 1), &fin(2, 1)), Some(1));
        assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf), Some(2));
        let roots = sturm_isolate(&p, &Bound::NegInf, &Bound::PosInf);
        assert_eq!(roots.len(), 2);
        let r = refine_root(&p, &roots[1], &rat(1, 1_000_000));
        let approx = crate::exactpoly::to_f64(&r.midpoint());
        assert!((approx - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn forced_refutation_returns_witness() {
        let p = UniPoly::from_integers(&[-2, 0, 1]);
        match sign_certificate(&p, &fin(0, 1), &fin(1, 1), Sign::Positive) {
            Certificate::Refuted { witness, roots } => {
                assert_eq!(witness, Some(rat(1, 2)));
                assert!(roots.is_empty());
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn refutation_through_a_root() {
        // (x - 1/10)(x - 9/10)
        let p = UniPoly::new(vec![rat(9, 100), rat(-1, 1), rat(1, 1)]);
        // The sample 1/10 is itself a root.
        assert!(!sign_certificate(&p, &fin(0, 1), &fin(1, 5), Sign::Positive).is_certified());
        // The sample -1/4 is positive, so the witness comes from the root search.
        match sign_certificate(&p, &fin(-1, 1), &fin(1, 2), Sign::Positive) {
            Certificate::Refuted {
                witness: Some(w),
                roots,
            } => {
                assert_eq!(roots.len(), 1);
                assert!(p.eval(&w) <= BigRational::zero());
            }
            other => panic!("expected refutation with witness, got {other:?}"),
        }
    }

    #[test]
    fn exact_root_at_midpoint() {
        let p = UniPoly::from_integers(&[0, -1, 0, 1]); // x^3 - x
        let roots = sturm_isolate(&p, &Bound::NegInf, &Bound::PosInf);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|r| r.is_exact() && r.lo.is_zero()));
        assert_eq!(sturm_count(&p, &fin(-1, 1), &fin(1, 1)), Some(1));
    }

    #[test]
    fn repeated_roots_counted_once() {
        let p = UniPoly::from_integers(&[1, -2, 1]); // (x-1)^2
        assert_eq!(sturm_count(&p, &fin(0, 1), &fin(2, 1)), Some(1));
        assert_eq!(p.squarefree_part().degree(), Some(1));
        assert!(!sign_certificate(&p, &fin(0, 1), &fin(2, 1), Sign::Positive).is_certified());
    }
}
