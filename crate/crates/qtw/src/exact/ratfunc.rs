//! Rational functions num/den over the rationals, kept in the canonical
//! reduced form: den ≠ 0, den monic, gcd(num, den) = 1.  Equality is then a
//! structural comparison.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::{poly_gcd, Poly};
use super::scalar::Rational;

/// Reduced rational function with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    // ---- Constructors ----

    /// num/den, reduced.  Returns `None` when den = 0.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divmod(&g).0, den.divmod(&g).0)
        };
        let lead_inv = den.leading().recip();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// x^k for any integer k (negative k puts the power in the denominator).
    pub fn var_pow(k: i64) -> Self {
        if k >= 0 {
            RatFunc::from_poly(Poly::monomial(Rational::one(), k as usize))
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    // ---- Inspection ----

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Q[x^±]: the reduced denominator is a
    /// power of x.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// True when the value is a nonzero constant (or zero).
    pub fn is_constant(&self) -> bool {
        self.num.degree().is_none_or(|d| d == 0) && self.den.is_one()
    }

    /// The constant value, if `is_constant`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    // ---- Arithmetic ----

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// f(c·x) for c ≠ 0.
    pub fn scale_arg(&self, c: &Rational) -> Self {
        assert!(!c.is_zero(), "argument scaling by zero is not injective");
        Self::reduced(self.num.scale_arg(c), self.den.scale_arg(c))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Laurent expansion at x = ∞ of a nonzero value: returns
    /// (top, [c_0, c_1, …]) with f = Σ_t c_t·x^(top − t) + O(x^(top − terms)).
    /// The zero function returns (0, empty).
    pub fn expand_at_infinity(&self, terms: usize) -> (i64, Vec<Rational>) {
        if self.is_zero() || terms == 0 {
            return (0, vec![]);
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let top = dn as i64 - dd as i64;
        // In u = 1/x: f = x^top · ñ(u)/d̃(u) with ñ, d̃ the reversed
        // coefficient lists, both having nonzero constant terms.
        let n_rev: Vec<Rational> = (0..=dn).rev().map(|k| self.num.coeff(k)).collect();
        let d_rev: Vec<Rational> = (0..=dd).rev().map(|k| self.den.coeff(k)).collect();
        // Power-series division ñ/d̃ to `terms` coefficients.
        let d0_inv = d_rev[0].recip();
        let mut out = Vec::with_capacity(terms);
        for t in 0..terms {
            let mut acc = if t < n_rev.len() {
                n_rev[t].clone()
            } else {
                Rational::zero()
            };
            for (s, c) in out.iter().enumerate().take(t) {
                let k = t - s;
                if k < d_rev.len() {
                    acc = acc - c * &d_rev[k];
                }
            }
            out.push(acc * &d0_inv);
        }
        (top, out)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "rational-function division by zero");
        RatFunc::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
