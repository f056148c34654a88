//! Dense univariate polynomials over the rationals.
//!
//! `LaurentPoly` is the public-facing ring; this type backs the places where
//! ordinary polynomial division, gcds and Sturm sequences are needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>, // coeffs[i] is the coefficient of x^i; empty = zero
}

impl Poly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_int_coeffs(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_slice(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.degree() < divisor.degree() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading_coeff();
        let dl = divisor.coeffs.len();
        let qlen = rem.len() - dl + 1;
        let mut quot = vec![Rational::zero(); qlen];
        for qi in (0..qlen).rev() {
            let c = rem[qi + dl - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / &dlead;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                let v = &rem[qi + k] - &(&q * dc);
                rem[qi + k] = v;
            }
            quot[qi] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Interprets `self` as a Laurent polynomial with lowest exponent 0.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(0, self.coeffs.clone())
    }

    /// Drops the Laurent unit `t^k` and reads off the plain coefficient run.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        Self::new(p.coeff_slice().to_vec())
    }

    /// Rescales so the coefficients are coprime integers with positive leading
    /// coefficient.  Requires a nonzero polynomial.
    pub fn primitive_integer(&self) -> Self {
        assert!(!self.is_zero());
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        Self::new(
            ints.into_iter()
                .map(|v| Rational::from_integer(v / &content))
                .collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_laurent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1
        let b = p(&[-1, 0, 0, 1]); // x^3 - 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 0, 0, 1]));
        assert_eq!(a.gcd(&b), b.monic());
        assert_eq!(p(&[2, 2]).gcd(&p(&[3, 3])), p(&[1, 1]));
    }

    #[test]
    fn squarefree() {
        let sq = &p(&[-1, 1]) * &p(&[-1, 1]); // (x-1)^2
        let times = &sq * &p(&[1, 1]); // (x-1)^2 (x+1)
        assert_eq!(times.squarefree_part(), &p(&[-1, 1]) * &p(&[1, 1]));
        assert_eq!(p(&[5]).squarefree_part(), Poly::one());
    }

    #[test]
    fn primitive_integer_rescaling() {
        let a = Poly::new(vec![
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::new(BigInt::from(-3), BigInt::from(4)),
        ]);
        // (1/2) - (3/4)x rescales to -(2 - 3x) = -2 + 3x... leading must be positive
        assert_eq!(a.primitive_integer(), p(&[-2, 3]));
        assert_eq!(p(&[2, -4, 6]).primitive_integer(), p(&[1, -2, 3]));
    }

    #[test]
    fn derivative_and_eval() {
        let a = p(&[1, -1, 1]);
        assert_eq!(a.derivative(), p(&[-1, 2]));
        let two = Rational::from_integer(BigInt::from(2));
        assert_eq!(a.evaluate(&two), Rational::from_integer(BigInt::from(3)));
    }
}
