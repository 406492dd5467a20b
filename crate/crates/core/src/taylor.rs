//! Truncated Taylor series in two variables.
//!
//! A [`Taylor2`] of order `n` stores the coefficients of `dx^i dy^j` with
//! `i + j <= n` around a base point. Arithmetic on these series yields exact
//! partial derivatives (up to rounding) of any expression built from
//! polynomials and real powers, without symbolic differentiation.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Taylor2 {
    order: usize,
    coeffs: Vec<f64>,
}

fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

impl Taylor2 {
    pub fn constant(order: usize, value: f64) -> Self {
        let mut coeffs = vec![0.0; index(0, order + 1)];
        coeffs[0] = value;
        Taylor2 { order, coeffs }
    }

    /// The coordinate functions `(x, y)` around `(x0, y0)`.
    pub fn variables(order: usize, x0: f64, y0: f64) -> (Self, Self) {
        let mut x = Self::constant(order, x0);
        let mut y = Self::constant(order, y0);
        if order >= 1 {
            x.coeffs[index(1, 0)] = 1.0;
            y.coeffs[index(0, 1)] = 1.0;
        }
        (x, y)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    /// `d^(i+j) f / dx^i dy^j` at the base point.
    pub fn derivative(&self, i: usize, j: usize) -> f64 {
        self.coeff(i, j) * factorial(i) * factorial(j)
    }

    /// All partials of total order `k`, ordered by increasing power of `y`.
    pub fn derivatives_of_order(&self, k: usize) -> Vec<f64> {
        (0..=k).map(|j| self.derivative(k - j, j)).collect()
    }

    /// `n`-th derivative of `t -> f(x0 + t dx, y0 + t dy)` at `t = 0`.
    pub fn directional(&self, n: usize, dx: f64, dy: f64) -> f64 {
        let s: f64 = (0..=n)
            .map(|j| self.coeff(n - j, j) * dx.powi((n - j) as i32) * dy.powi(j as i32))
            .sum();
        s * factorial(n)
    }

    pub fn dx(&self) -> Self {
        self.partial(true)
    }

    pub fn dy(&self) -> Self {
        self.partial(false)
    }

    fn partial(&self, along_x: bool) -> Self {
        assert!(self.order >= 1, "cannot differentiate a series of order 0");
        let order = self.order - 1;
        let mut out = Self::constant(order, 0.0);
        for d in 0..=order {
            for j in 0..=d {
                let i = d - j;
                out.coeffs[index(i, j)] = if along_x {
                    (i + 1) as f64 * self.coeff(i + 1, j)
                } else {
                    (j + 1) as f64 * self.coeff(i, j + 1)
                };
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Taylor2 {
            order,
            coeffs: self.coeffs[..index(0, order + 1)].to_vec(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Taylor2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_constant(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// `self^p` for real `p`; the base value must be positive unless `p` is a
    /// non-negative integer.
    pub fn powf(&self, p: f64) -> Self {
        let a = self.value();
        let mut derivs = Vec::with_capacity(self.order + 1);
        let mut coef = 1.0;
        for k in 0..=self.order {
            derivs.push(coef * a.powf(p - k as f64));
            coef *= p - k as f64;
        }
        self.compose(&derivs)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Self {
        self.powf(-1.0)
    }

    /// `g(self)` from the derivatives `g^(k)(value)`, `k = 0..=order`.
    pub fn compose(&self, derivs: &[f64]) -> Self {
        let mut t = self.clone();
        t.coeffs[0] = 0.0;
        let mut out = Self::constant(self.order, derivs[0]);
        let mut power = Self::constant(self.order, 1.0);
        for (k, dk) in derivs.iter().enumerate().skip(1).take(self.order) {
            power = &power * &t;
            let w = dk / factorial(k);
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                *o += w * p;
            }
        }
        out
    }

    fn aligned(&self, other: &Self) -> usize {
        self.order.min(other.order)
    }
}

impl Add for &Taylor2 {
    type Output = Taylor2;
    fn add(self, rhs: &Taylor2) -> Taylor2 {
        let order = self.aligned(rhs);
        let n = index(0, order + 1);
        Taylor2 {
            order,
            coeffs: (0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Taylor2 {
    type Output = Taylor2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &Taylor2) -> Taylor2 {
        let order = self.aligned(rhs);
        let n = index(0, order + 1);
        Taylor2 {
            order,
            coeffs: (0..n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &Taylor2 {
    type Output = Taylor2;
    fn mul(self, rhs: &Taylor2) -> Taylor2 {
        let order = self.aligned(rhs);
        let mut out = Taylor2::constant(order, 0.0);
        for d1 in 0..=order {
            for j1 in 0..=d1 {
                let a = self.coeffs[index(d1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=order - d1 {
                    for j2 in 0..=d2 {
                        out.coeffs[index(d1 - j1 + d2 - j2, j1 + j2)] +=
                            a * rhs.coeffs[index(d2 - j2, j2)];
                    }
                }
            }
        }
        out
    }
}

impl Neg for &Taylor2 {
    type Output = Taylor2;
    fn neg(self) -> Taylor2 {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Taylor2 {
            type Output = Taylor2;
            fn $f(self, rhs: Taylor2) -> Taylor2 {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
