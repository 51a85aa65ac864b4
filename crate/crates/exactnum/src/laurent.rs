//! Sparse Laurent polynomials in one variable `q` over the rationals.
//!
//! Terms are kept in a `BTreeMap` from exponent to coefficient, with the
//! invariant that no stored coefficient is zero.  Exponents may be negative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::{QInt, QRat};

/// A Laurent polynomial `Σ cₑ qᵉ` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, QRat>,
}

impl Laurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Laurent::monomial(QRat::one(), 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Laurent::monomial(QRat::one(), 1)
    }

    /// The monomial `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Laurent::monomial(QRat::one(), exp)
    }

    /// The single-term polynomial `coeff · q^exp`.
    pub fn monomial(coeff: QRat, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// The constant polynomial with the given value.
    pub fn constant(value: QRat) -> Self {
        Laurent::monomial(value, 0)
    }

    /// The constant polynomial `n`.
    pub fn from_int(n: i64) -> Self {
        Laurent::constant(QRat::from(QInt::from(n)))
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this is the constant polynomial `1`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// The coefficient of `q^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> QRat {
        self.terms.get(&exp).cloned().unwrap_or_else(QRat::zero)
    }

    /// The smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// The largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The coefficient of the largest exponent (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> QRat {
        self.max_exp()
            .map(|e| self.coeff(e))
            .unwrap_or_else(QRat::zero)
    }

    /// Iterate over `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &QRat)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiply by `q^k`, shifting every exponent by `k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Multiply every coefficient by a rational constant.
    pub fn scale(&self, factor: &QRat) -> Laurent {
        if factor.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * factor))
                .collect(),
        }
    }

    /// Raise to a nonnegative power by repeated squaring.
    pub fn pow(&self, n: u32) -> Laurent {
        let mut base = self.clone();
        let mut n = n;
        let mut acc = Laurent::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Evaluate at a nonzero rational point (or at any point when all
    /// exponents are nonnegative).  Returns `None` when evaluation would
    /// require dividing by zero.
    pub fn evaluate(&self, q0: &QRat) -> Option<QRat> {
        let mut total = QRat::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num::pow::pow(q0.clone(), *e as usize)
            } else {
                if q0.is_zero() {
                    return None;
                }
                num::pow::pow(q0.recip(), (-*e) as usize)
            };
            total += c * p;
        }
        Some(total)
    }

    fn insert_term(terms: &mut BTreeMap<i64, QRat>, exp: i64, coeff: QRat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;

    fn add(self, rhs: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Laurent::insert_term(&mut terms, *e, c.clone());
        }
        Laurent { terms }
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;

    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Laurent::insert_term(&mut terms, *e, -c.clone());
        }
        Laurent { terms }
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                Laurent::insert_term(&mut terms, e1 + e2, c1 * c2);
            }
        }
        Laurent { terms }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

/// Formats in the canonical ascending-exponent form, e.g. `q^-1 - q^3`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", term_body(&c.abs(), *e))?;
        }
        Ok(())
    }
}

fn term_body(coeff: &QRat, exp: i64) -> String {
    let power = match exp {
        0 => None,
        1 => Some("q".to_string()),
        e => Some(format!("q^{}", e)),
    };
    match (coeff.is_one(), power) {
        (true, None) => "1".to_string(),
        (true, Some(p)) => p,
        (false, None) => format!("{}", coeff),
        (false, Some(p)) => format!("{}*{}", coeff, p),
    }
}

/// Division with remainder for ordinary polynomials (all exponents ≥ 0).
///
/// Returns `(quotient, remainder)` with `deg r < deg b`.  Panics if `b` is
/// zero or either argument has a negative exponent.
pub(crate) fn poly_divmod(a: &Laurent, b: &Laurent) -> (Laurent, Laurent) {
    assert!(!b.is_zero(), "polynomial division by zero");
    assert!(a.min_exp().unwrap_or(0) >= 0 && b.min_exp().unwrap_or(0) >= 0);
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff();
    let mut q = Laurent::zero();
    let mut r = a.clone();
    while !r.is_zero() && r.max_exp().unwrap() >= db {
        let e = r.max_exp().unwrap() - db;
        let c = r.leading_coeff() / &lb;
        let t = Laurent::monomial(c, e);
        q = &q + &t;
        r = &r - &(&t * b);
    }
    (q, r)
}

/// Monic greatest common divisor of two ordinary polynomials.
pub(crate) fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    if x.is_zero() {
        return x;
    }
    let lc = x.leading_coeff();
    x.scale(&lc.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrat;

    #[test]
    fn arithmetic_basics() {
        let a = &Laurent::q_pow(-1) + &Laurent::q_pow(3);
        let b = &Laurent::q_pow(-1) - &Laurent::q_pow(3);
        let prod = &a * &b;
        // (q^-1 + q^3)(q^-1 - q^3) = q^-2 - q^6
        assert_eq!(prod, &Laurent::q_pow(-2) - &Laurent::q_pow(6));
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(0), Laurent::one());
        assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn display_canonical() {
        let p = &(&Laurent::q_pow(-1) - &Laurent::q_pow(3)) + &Laurent::from_int(2);
        assert_eq!(p.to_string(), "q^-1 + 2 - q^3");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::monomial(qrat(-1, 2), 1).to_string(), "-1/2*q");
        assert_eq!(Laurent::q().to_string(), "q");
    }

    #[test]
    fn divmod_and_gcd() {
        // q^2 - 1 = (q - 1)(q + 1)
        let a = &Laurent::q_pow(2) - &Laurent::one();
        let b = &Laurent::q() - &Laurent::one();
        let (quot, rem) = poly_divmod(&a, &b);
        assert!(rem.is_zero());
        assert_eq!(quot, &Laurent::q() + &Laurent::one());

        let g = poly_gcd(&a, &b);
        assert_eq!(g, b);

        let c = &Laurent::q_pow(2) + &Laurent::one();
        assert_eq!(poly_gcd(&a, &c), Laurent::one());
    }

    #[test]
    fn evaluate_points() {
        let p = &Laurent::q_pow(-2) + &Laurent::q();
        assert_eq!(p.evaluate(&qrat(2, 1)), Some(qrat(9, 4)));
        assert_eq!(p.evaluate(&qrat(0, 1)), None);
    }
}
