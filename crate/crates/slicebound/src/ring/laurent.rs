//! Laurent polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A Laurent polynomial with rational coefficients, stored as the exponent of
/// its lowest-order term together with the dense coefficient run up to the
/// highest-order term.  The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    /// Builds a polynomial from the exponent of its lowest listed term and the
    /// coefficients of consecutive powers.  Leading/trailing zeros are trimmed.
    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::new(
            low,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(0, vec![c])
    }

    /// The monomial `c * t^exp`.
    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.low += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest-order term (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Exponent of the highest-order term (0 for the zero polynomial).
    pub fn high_exp(&self) -> i64 {
        if self.is_zero() { 0 } else { self.low + self.coeffs.len() as i64 - 1 }
    }

    /// Top degree minus bottom degree; the Euclidean norm used for pivoting.
    pub fn degree_span(&self) -> i64 {
        if self.is_zero() { 0 } else { self.coeffs.len() as i64 - 1 }
    }

    /// Coefficient of `t^exp`.
    pub fn coeff(&self, exp: i64) -> Rational {
        if exp < self.low {
            return Rational::zero();
        }
        let i = (exp - self.low) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over `(exponent, coefficient)` pairs of nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Raw coefficient slice starting at `low_exp()`.
    pub fn coeff_slice(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// The involution `t -> t^{-1}`.
    pub fn involution(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.high_exp(), coeffs)
    }

    /// Evaluates at a nonzero rational point.
    ///
    /// # Panics
    /// Panics if `x` is zero and the polynomial has terms of negative degree.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        assert!(
            !x.is_zero() || self.low >= 0,
            "cannot evaluate a Laurent polynomial with negative exponents at 0"
        );
        // Horner on the dense run, then the power of x for the offset.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * rational_pow(x, self.low)
    }

    /// Sum of the coefficients, i.e. the value at `t = 1`.
    pub fn eval_at_one(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The canonical representative of the `±t^k`-unit orbit: lowest exponent 0
    /// and positive leading coefficient.  Rational scale is preserved, so
    /// `3t - 3` normalizes to itself, not to `t - 1`.
    pub fn unit_normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let shifted = self.shift(-self.low);
        if shifted.leading_coeff().is_negative() {
            -&shifted
        } else {
            shifted
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn unit_eq(&self, other: &Self) -> bool {
        self.unit_normalize() == other.unit_normalize()
    }

    /// Whether `p(t^{-1})` equals `p(t)` up to a unit `±t^k`.
    pub fn is_symmetric(&self) -> bool {
        self.unit_eq(&self.involution())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Exact division; `None` when the divisor does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<Rational> = self.coeffs.clone();
        let d = &divisor.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![Rational::zero(); qlen];
        let dlead = divisor.leading_coeff();
        for qi in (0..qlen).rev() {
            let c = rem[qi + d.len() - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / &dlead;
            for (k, dc) in d.iter().enumerate() {
                let v = &rem[qi + k] - &(&q * dc);
                rem[qi + k] = v;
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - divisor.low, quot))
    }
}

fn rational_pow(x: &Rational, n: i64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let base = if n < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..n.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().max(rhs.high_exp());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - low) as usize] += c;
        }
        for (e, c) in rhs.terms() {
            coeffs[(e - low) as usize] += c;
        }
        LaurentPoly::new(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
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
        LaurentPoly::new(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            match (e, unit_coeff) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{abs}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(low, coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(0, &[1, 1]); // 1 + t
        let b = p(-1, &[1, 0, -1]); // t^{-1} - t
        assert_eq!(&a + &b, p(-1, &[1, 1]));
        assert_eq!(&a * &b, p(-1, &[1, 1, -1, -1]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn trim_and_exponents() {
        let a = LaurentPoly::from_int_coeffs(-2, &[0, 3, 0, 0]);
        assert_eq!(a.low_exp(), -1);
        assert_eq!(a.high_exp(), -1);
        assert_eq!(a.degree_span(), 0);
        assert_eq!(p(0, &[1, 0, 0, 2]).degree_span(), 3);
    }

    #[test]
    fn involution_reverses() {
        let a = p(0, &[1, -2, 3]); // 1 - 2t + 3t^2
        assert_eq!(a.involution(), p(-2, &[3, -2, 1]));
        assert_eq!(a.involution().involution(), a);
    }

    #[test]
    fn evaluation() {
        let a = p(-1, &[1, 0, 1]); // t^{-1} + t
        let x = Rational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(a.evaluate(&x), Rational::new(BigInt::from(5), BigInt::from(2)));
        assert_eq!(p(0, &[1, -1]).eval_at_one(), Rational::zero());
    }

    #[test]
    fn unit_normalize_examples() {
        // -t^2 + t - 1 normalizes by flipping the sign.
        assert_eq!(p(1, &[1, -1, 1]).unit_normalize(), p(0, &[1, -1, 1]));
        assert_eq!(p(-3, &[-1, 1, -1]).unit_normalize(), p(0, &[1, -1, 1]));
        // Rational scale is preserved.
        assert_eq!(p(1, &[-3, 3]).unit_normalize(), p(0, &[-3, 3]));
        assert_eq!(LaurentPoly::zero().unit_normalize(), LaurentPoly::zero());
    }

    #[test]
    fn unit_eq_orbit() {
        let a = p(0, &[1, -1, 1]);
        assert!(a.unit_eq(&p(5, &[-1, 1, -1])));
        assert!(!a.unit_eq(&p(0, &[2, -2, 2])));
    }

    #[test]
    fn symmetry() {
        assert!(p(0, &[1, -1, 1]).is_symmetric());
        assert!(p(0, &[1, -3, 1]).is_symmetric());
        assert!(!p(0, &[1, 1, -1]).is_symmetric());
        assert!(p(0, &[1]).is_symmetric());
        // t - 1 is symmetric up to sign: (1/t - 1) * (-t) = t - 1.
        assert!(p(0, &[-1, 1]).is_symmetric());
    }

    #[test]
    fn exact_division() {
        let num = p(0, &[-1, 0, 0, 0, 0, 0, 1]); // t^6 - 1
        let den = p(0, &[1, 1, 1]); // 1 + t + t^2
        let q = num.div_exact(&den).unwrap();
        assert_eq!(&q * &den, num);
        assert!(p(0, &[1, 1, 1]).div_exact(&p(0, &[1, 1])).is_none());
        // Laurent shifts divide out exactly.
        let shifted = num.shift(-3);
        assert_eq!(&shifted.div_exact(&den).unwrap() * &den, shifted);
    }

    #[test]
    fn display_formatting() {
        assert_eq!(p(0, &[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(-1, &[1, 0, 2]).to_string(), "2*t + t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
