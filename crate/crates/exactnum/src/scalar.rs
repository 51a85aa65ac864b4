//! Elements of the field ℚ(q) of rational functions, in canonical form.
//!
//! A [`Scalar`] is a fraction `num / den` maintained so that the
//! representation of every field element is unique:
//!
//! * `den` is an ordinary polynomial (no negative exponents) that is monic
//!   and has a nonzero constant term — any power of `q` is carried by `num`;
//! * `num` is a Laurent polynomial sharing no polynomial factor with `den`;
//! * zero is stored as `0 / 1`.
//!
//! Because the form is canonical, derived structural equality coincides with
//! equality in the field, and scalars can be used directly as map keys.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::Zero;

use crate::laurent::{poly_divmod, poly_gcd};
use crate::{Laurent, NumError, QRat};

/// A rational function in `q`, always in canonical fraction form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl Scalar {
    /// The zero scalar.
    pub fn zero() -> Self {
        Scalar {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    /// The unit scalar.
    pub fn one() -> Self {
        Scalar {
            num: Laurent::one(),
            den: Laurent::one(),
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// The monomial `q^exp` (negative exponents allowed).
    pub fn q_pow(exp: i64) -> Self {
        Scalar {
            num: Laurent::q_pow(exp),
            den: Laurent::one(),
        }
    }

    /// The integer constant `n`.
    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: Laurent::from_int(n),
            den: Laurent::one(),
        }
    }

    /// The rational constant `value`.
    pub fn from_qrat(value: QRat) -> Self {
        Scalar {
            num: Laurent::constant(value),
            den: Laurent::one(),
        }
    }

    /// A scalar that happens to be a Laurent polynomial.
    pub fn from_laurent(p: Laurent) -> Self {
        Scalar {
            num: p,
            den: Laurent::one(),
        }
    }

    /// Form the fraction `num / den`, reducing to canonical form.
    pub fn fraction(num: &Laurent, den: &Laurent) -> Result<Self, NumError> {
        if den.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let v_num = num.min_exp().unwrap();
        let v_den = den.min_exp().unwrap();
        let poly_num = num.shift(-v_num);
        let poly_den = den.shift(-v_den);
        let g = poly_gcd(&poly_num, &poly_den);
        let (mut n, r) = poly_divmod(&poly_num, &g);
        debug_assert!(r.is_zero());
        let (mut d, r) = poly_divmod(&poly_den, &g);
        debug_assert!(r.is_zero());
        let lc = d.leading_coeff().recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(Scalar {
            num: n.shift(v_num - v_den),
            den: d,
        })
    }

    /// The numerator in canonical form (a Laurent polynomial).
    pub fn num(&self) -> &Laurent {
        &self.num
    }

    /// The denominator in canonical form (a monic polynomial with nonzero
    /// constant term; `1` whenever the scalar is a Laurent polynomial).
    pub fn den(&self) -> &Laurent {
        &self.den
    }

    /// Whether this scalar is zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether this scalar is one.
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether this scalar is a Laurent polynomial (denominator `1`).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The multiplicative inverse, or an error for zero.
    pub fn recip(&self) -> Result<Scalar, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Scalar::fraction(&self.den, &self.num)
    }

    /// Integer power; negative exponents invert (zero base then errors).
    pub fn pow(&self, exp: i64) -> Result<Scalar, NumError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut n = exp.unsigned_abs();
        let mut b = base;
        let mut acc = Scalar::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point.  Errors when the point is a pole or a
    /// negative `q`-power meets `q0 = 0`.
    pub fn evaluate(&self, q0: &QRat) -> Result<QRat, NumError> {
        let n = self.num.evaluate(q0).ok_or(NumError::DivisionByZero)?;
        let d = self.den.evaluate(q0).ok_or(NumError::DivisionByZero)?;
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Parse a scalar expression such as `q^-1 - q^3` or `(q^2 - 1)/(q - 1)`.
    pub fn parse(text: &str) -> Result<Scalar, NumError> {
        crate::parse::parse_scalar(text)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num + &rhs.num,
                den: Laurent::one(),
            };
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        Scalar::fraction(&num, &den).expect("denominators are nonzero")
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num * &rhs.num,
                den: Laurent::one(),
            };
        }
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        Scalar::fraction(&num, &den).expect("denominators are nonzero")
    }
}

/// Panics when dividing by zero; use [`Scalar::recip`] for a checked version.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;

    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("scalar division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

/// Formats so that the output re-parses to an equal scalar: the numerator
/// alone when the denominator is `1`, otherwise `(num)/(den)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        // (q^2 - 1)/(q - 1) reduces to q + 1.
        let num = &Laurent::q_pow(2) - &Laurent::one();
        let den = &Laurent::q() - &Laurent::one();
        let r = Scalar::fraction(&num, &den).unwrap();
        assert_eq!(r, s("q + 1"));
        assert!(r.is_laurent());

        // 0/q^3 is plain zero.
        let z = Scalar::fraction(&Laurent::zero(), &Laurent::q_pow(3)).unwrap();
        assert_eq!(z, Scalar::zero());

        // 2q/2 normalizes the constant away.
        let two_q = Laurent::from_int(2).shift(1);
        let two = Laurent::from_int(2);
        assert_eq!(Scalar::fraction(&two_q, &two).unwrap(), Scalar::q());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            Scalar::fraction(&Laurent::one(), &Laurent::zero()),
            Err(NumError::ZeroDenominator)
        ));
    }

    #[test]
    fn field_operations() {
        let a = s("q^-1 - q^3");
        let b = s("q^2 + 1");
        let c = &a / &b;
        assert_eq!(&c * &b, a);
        assert_eq!(&a - &a, Scalar::zero());
        assert_eq!(a.pow(0).unwrap(), Scalar::one());
        assert_eq!(a.pow(-1).unwrap(), a.recip().unwrap());
        assert_eq!(&a.pow(-2).unwrap() * &a.pow(2).unwrap(), Scalar::one());
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "0",
            "1",
            "q",
            "q^-1 - q^3",
            "(q^-1 - q^3)/(q^2 + 1)",
            "-1/2*q^2 + 3",
        ] {
            let v = s(text);
            assert_eq!(Scalar::parse(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn denominator_stays_canonical() {
        // 1/(2q^2 + 2q^4) = q^-2 / (2 + 2q^2): monic den, q-power in num.
        let den = &Laurent::monomial(crate::qrat(2, 1), 2)
            + &Laurent::monomial(crate::qrat(2, 1), 4);
        let r = Scalar::fraction(&Laurent::one(), &den).unwrap();
        assert_eq!(r.den().leading_coeff(), crate::qrat(1, 1));
        assert!(r.den().coeff(0) != crate::qrat(0, 1));
        let back = r.recip().unwrap();
        assert_eq!(back, Scalar::from_laurent(den));
    }
}
