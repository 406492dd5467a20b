use super::{MultiPoly, PolyError};

/// A square root adjoined as a symbol: `symbol² = square`.
#[derive(Clone, Debug)]
pub struct SurdRelation {
    symbol: String,
    square: MultiPoly,
}

impl SurdRelation {
    /// `square` must be free of `symbol`.
    pub fn new(symbol: &str, square: MultiPoly) -> Result<Self, PolyError> {
        if square.degree_in(symbol)? > 0 {
            return Err(PolyError::NotUnivariate(format!(
                "{symbol} appears in its own square"
            )));
        }
        Ok(Self {
            symbol: symbol.to_string(),
            square,
        })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn square(&self) -> &MultiPoly {
        &self.square
    }

    /// Rewrites `s^k` as `s^(k mod 2) · square^(k div 2)`; the result has degree ≤ 1 in `s`.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let coeffs = p.coefficients_in(&self.symbol)?;
        let s = p.var_like(&self.symbol)?;
        let mut even = p.constant_like(super::int(0));
        let mut odd = even.clone();
        let mut power = p.constant_like(super::int(1));
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 && k % 2 == 0 {
                power = &power * &self.square;
            }
            if k % 2 == 0 {
                even = &even + &(c * &power);
            } else {
                odd = &odd + &(c * &power);
            }
        }
        even.checked_add(&(&odd * &s))
    }

    /// True when `p` vanishes once the relation is applied.
    pub fn is_zero_mod(&self, p: &MultiPoly) -> Result<bool, PolyError> {
        Ok(self.reduce(p)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_relation() {
        let vars = ["s"];
        let rel = SurdRelation::new("s", MultiPoly::parse(&vars, "5").unwrap()).unwrap();
        // ((1+s)/2)^2 - (1+s)/2 - 1 = 0 when s^2 = 5
        let p = MultiPoly::parse(&vars, "((1+s)/2)^2 - (1+s)/2 - 1").unwrap();
        assert!(rel.is_zero_mod(&p).unwrap());
    }

    #[test]
    fn reduction_is_idempotent_and_degree_reducing() {
        let vars = ["s", "mu"];
        let rel = SurdRelation::new("s", MultiPoly::parse(&vars, "mu*(1-mu)").unwrap()).unwrap();
        let p = MultiPoly::parse(&vars, "s^5 - 3*s^4*mu + s^2 + 7*s - 1").unwrap();
        let r = rel.reduce(&p).unwrap();
        assert!(r.degree_in("s").unwrap() <= 1);
        assert_eq!(rel.reduce(&r).unwrap(), r);
    }

    #[test]
    fn self_referential_relation_rejected() {
        let vars = ["s"];
        assert!(SurdRelation::new("s", MultiPoly::parse(&vars, "s + 1").unwrap()).is_err());
    }
}
