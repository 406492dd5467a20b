use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse, PolyError};

type Monomial = Vec<u32>;

/// Sparse polynomial over ℚ in a fixed, ordered list of named variables.
///
/// Binary operations require identical variable lists. The `checked_*`
/// methods report a mismatch as [`PolyError::VariableMismatch`]; the
/// operator impls panic on it.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn constant_like(&self, c: BigRational) -> Self {
        let mut p = self.empty_like();
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let zero = Self::zero(vars);
        zero.var_like(name)
    }

    pub fn var_like(&self, name: &str) -> Result<Self, PolyError> {
        let i = self.index_of(name)?;
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        let mut p = self.empty_like();
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    /// Parses an expression such as `4*x^2*y - (3/7)*x + 1/2`.
    ///
    /// Supports `+ - * / ^`, parentheses, integer and decimal literals and the
    /// given variables. Division is only allowed by nonzero constants.
    pub fn parse(vars: &[&str], src: &str) -> Result<Self, PolyError> {
        parse::parse(&Self::zero(vars), src)
    }

    pub fn parse_like(&self, src: &str) -> Result<Self, PolyError> {
        parse::parse(&self.empty_like(), src)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Returns the value if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.empty_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = self.empty_like();
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = self.constant_like(BigRational::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.index_of(var)?;
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, PolyError> {
        let i = self.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    /// Coefficients with respect to `var`: entry k multiplies `var^k`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>, PolyError> {
        let i = self.index_of(var)?;
        let deg = self.degree_in(var)? as usize;
        let mut out = vec![self.empty_like(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Replaces `var` by the polynomial `value` (same variable list).
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<Self, PolyError> {
        self.same_vars(value)?;
        let coeffs = self.coefficients_in(var)?;
        // Horner in the substituted variable.
        let mut acc = self.empty_like();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    /// `p(num/den) · den^deg`, with `deg` the degree of `p` in `var`.
    ///
    /// Substitutes a rational function without leaving the polynomial ring.
    pub fn substitute_fraction(
        &self,
        var: &str,
        num: &MultiPoly,
        den: &MultiPoly,
    ) -> Result<Self, PolyError> {
        self.same_vars(num)?;
        self.same_vars(den)?;
        let coeffs = self.coefficients_in(var)?;
        let deg = coeffs.len() - 1;
        let mut acc = self.empty_like();
        for (k, c) in coeffs.iter().enumerate() {
            let term = c * &(num.pow(k as u32) * den.pow((deg - k) as u32));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Exact evaluation; `values` follows the variable order.
    pub fn evaluate(&self, values: &[BigRational]) -> Result<BigRational, PolyError> {
        if values.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Floating-point evaluation, for plotting and cross-checks.
    pub fn evaluate_f64(&self, values: &[f64]) -> Result<f64, PolyError> {
        if values.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: values.len(),
            });
        }
        let mut sum = 0.0;
        for (e, c) in &self.terms {
            let mut t = super::to_f64(c);
            for (v, &k) in values.iter().zip(e) {
                t *= v.powi(k as i32);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (k, &j) in e.iter().zip(&map) {
                e2[j] = *k;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `var`.
    ///
    /// Returns `r` with `lc^k · self = q · divisor + r` and `deg_var r < deg_var divisor`,
    /// where `lc` is the leading coefficient of `divisor` in `var`.
    pub fn pseudo_remainder(&self, divisor: &MultiPoly, var: &str) -> Result<Self, PolyError> {
        self.same_vars(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree_in(var)?;
        let dcoef = divisor.coefficients_in(var)?;
        let lc = dcoef[dd as usize].clone();
        let x = self.var_like(var)?;
        let mut r = self.clone();
        loop {
            let dr = r.degree_in(var)?;
            if r.is_zero() || dr < dd {
                return Ok(r);
            }
            let lead = r.coefficients_in(var)?.swap_remove(dr as usize);
            let shift = x.pow(dr - dd);
            r = &(&r * &lc) - &(&(&lead * &shift) * divisor);
        }
    }

    /// The `n` lexicographically largest terms, for diagnostics.
    pub fn leading_terms(&self, n: usize) -> Vec<(Vec<u32>, BigRational)> {
        self.terms
            .iter()
            .rev()
            .take(n)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs)
                    .expect("polynomial variable lists differ")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    const XY: &[&str] = &["x", "y"];

    #[test]
    fn binomial_square() {
        let p = MultiPoly::parse(XY, "(x+y)^2 - (x^2 + 2*x*y + y^2)").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn derivative_of_root_quadratic() {
        let vars = ["y", "c", "mu"];
        let f = MultiPoly::parse(&vars, "2*c*y^2 + (1-2*mu)*y - c").unwrap();
        let d = f.derivative("y").unwrap();
        let expected = MultiPoly::parse(&vars, "4*c*y + 1 - 2*mu").unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn eta_vanishes_at_equal_masses() {
        let vars = ["c", "m"];
        let eta =
            MultiPoly::parse(&vars, "c^4 + 2*c^3 + 9/8*m^2*c^2 + m^2/4*c + 5/256*m^4").unwrap();
        assert_eq!(eta.evaluate(&[int(-2), int(0)]).unwrap(), int(0));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = MultiPoly::parse(&["x"], "x").unwrap();
        let b = MultiPoly::parse(&["y"], "y").unwrap();
        assert!(matches!(
            a.checked_add(&b),
            Err(PolyError::VariableMismatch { .. })
        ));
        assert!(matches!(
            a.derivative("y"),
            Err(PolyError::UnknownVariable(_))
        ));
    }

    #[test]
    fn pseudo_remainder_of_multiple_is_zero() {
        let q = MultiPoly::parse(XY, "x*y^2 + 3*y - x").unwrap();
        let k = MultiPoly::parse(XY, "y^3 - x^2*y + 7").unwrap();
        let r = (&q * &k).pseudo_remainder(&q, "y").unwrap();
        assert!(r.is_zero());
        let r = (&(&q * &k) + &MultiPoly::parse(XY, "y + 1").unwrap())
            .pseudo_remainder(&q, "y")
            .unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn fraction_substitution_clears_denominator() {
        let p = MultiPoly::parse(XY, "x^2 + y*x + 1").unwrap();
        let num = MultiPoly::parse(XY, "y").unwrap();
        let den = MultiPoly::parse(XY, "2").unwrap();
        let s = p.substitute_fraction("x", &num, &den).unwrap();
        assert_eq!(s, MultiPoly::parse(XY, "y^2 + 2*y^2 + 4").unwrap());
    }

    #[test]
    fn substitution_and_evaluation_commute() {
        let p = MultiPoly::parse(XY, "x^3 - 2*x*y + 5/3").unwrap();
        let v = MultiPoly::parse(XY, "y^2 + 1").unwrap();
        let s = p.substitute("x", &v).unwrap();
        let y = rat(3, 7);
        let x = &y * &y + int(1);
        assert_eq!(
            s.evaluate(&[int(11), y.clone()]).unwrap(),
            p.evaluate(&[x, y]).unwrap()
        );
    }
}
