use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Poly};
use crate::error::{Error, Result};

/// Element of the coefficient field: a ratio of polynomials over the rationals.
///
/// Always stored reduced, with a monic denominator (leading coefficient one
/// under the graded lexicographic order). A constant denominator is therefore
/// exactly `1`, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(q))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// The symbol with index `var`.
    pub fn var(var: usize) -> Self {
        Scalar::from_poly(Poly::var(var))
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when no symbol occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.recip()?)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative with respect to symbol `var`, by the quotient rule.
    pub fn partial(&self, var: usize) -> Scalar {
        let dn = self.num.derivative(var);
        if self.den.is_one() {
            return Scalar::from_poly(dn);
        }
        let dd = self.den.derivative(var);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::canonical(num, self.den.mul(&self.den))
    }

    /// Sign of a rational constant; `None` when a symbol occurs.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Renders in the expression syntax.
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let num = self.num.render(names);
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        let den = self.den.render(names);
        let den = if self.den.num_terms() > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }

    /// True when rendering needs parentheses to act as a multiplicative factor.
    pub fn is_compound(&self) -> bool {
        self.num.num_terms() > 1 || !self.den.is_one()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{v}")))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_poly(self.num.add(&rhs.num));
            }
            return Scalar::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::canonical(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Scalar::canonical(a.mul(&c), b.mul(&d))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}
