//! Certified rational enclosures of the transcendental quantities that enter
//! the ρ-integral: cos at rational arguments, arccos, and π.  Every returned
//! interval rigorously contains the true value.

use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use crate::ring::{rat, Rational};

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Iv {
    pub lo: Rational,
    pub hi: Rational,
}

impl Iv {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Iv { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Iv { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn add(&self, other: &Iv) -> Iv {
        Iv::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Iv) -> Iv {
        Iv::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn scale_int(&self, c: i64) -> Iv {
        let c = rat(c, 1);
        if c.is_negative() {
            Iv::new(&self.hi * &c, &self.lo * &c)
        } else {
            Iv::new(&self.lo * &c, &self.hi * &c)
        }
    }

    /// Division by an interval of strictly positive numbers.
    pub fn div_pos(&self, d: &Iv) -> Iv {
        assert!(d.lo.is_positive(), "divisor interval must be positive");
        let lo = if self.lo.is_negative() { &self.lo / &d.lo } else { &self.lo / &d.hi };
        let hi = if self.hi.is_negative() { &self.hi / &d.hi } else { &self.hi / &d.lo };
        Iv::new(lo, hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Enclosure of `cos θ` by a truncated Taylor series with the alternating
/// remainder bound.  Valid for `|θ| ≤ 4` with at least six terms, which makes
/// the dropped terms strictly decreasing in magnitude.
pub fn cos_enclosure(theta: &Rational, terms: usize) -> Iv {
    assert!(theta.abs() <= rat(4, 1), "series bound requires |θ| ≤ 4");
    let terms = terms.max(6);
    let t2 = theta * theta;
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for k in 0..terms {
        sum += &term;
        term = -(&term * &t2) / rat(((2 * k + 1) * (2 * k + 2)) as i64, 1);
    }
    let r = term.abs();
    Iv::new(&sum - &r, &sum + &r)
}

// Cached bracket of π/2 inside [1, 2], refined on demand and shared across
// calls since bisection work is monotone.
static PI_HALF: Mutex<Option<(Rational, Rational)>> = Mutex::new(None);

/// Enclosure of π of width at most `tol`.
pub fn pi_enclosure(tol: &Rational) -> Iv {
    assert!(tol.is_positive());
    let mut guard = PI_HALF.lock().unwrap();
    let (mut a, mut b) = guard.clone().unwrap_or_else(|| (rat(1, 1), rat(2, 1)));
    let half_tol = tol / rat(2, 1);
    let mut terms = 12;
    while b.clone() - &a > half_tol {
        let mid = (&a + &b) / rat(2, 1);
        loop {
            let c = cos_enclosure(&mid, terms);
            if c.lo.is_positive() {
                a = mid;
                break;
            } else if c.hi.is_negative() {
                b = mid;
                break;
            }
            terms += 6;
        }
    }
    *guard = Some((a.clone(), b.clone()));
    Iv::new(a * rat(2, 1), b * rat(2, 1))
}

/// Enclosure of `arccos(x/2)` for `x ∈ (−2, 2)`, of width at most `tol`.
///
/// Negative `x` is folded through `arccos(−y) = π − arccos(y)`, so the
/// bisection itself always runs on `[0, 2]`, where `cos` is safely monotone
/// and the endpoint signs are certifiable with few series terms.
pub fn arccos_half(x: &Rational, tol: &Rational) -> Iv {
    assert!(x.abs() < rat(2, 1), "x must lie strictly inside (−2, 2)");
    assert!(tol.is_positive());
    if x.is_negative() {
        let half = tol / rat(2, 1);
        let flipped = arccos_half(&-x.clone(), &half);
        return pi_enclosure(&half).sub(&flipped);
    }
    let target = x / rat(2, 1);
    let mut a = Rational::zero();
    let mut b = rat(2, 1);
    let mut terms = 10;
    while b.clone() - &a > *tol {
        let mid = (&a + &b) / rat(2, 1);
        // cos(mid) is irrational for rational mid ≠ 0, so the comparison is
        // eventually decided as the series enclosure tightens.
        loop {
            let c = cos_enclosure(&mid, terms);
            if c.lo > target {
                a = mid;
                break;
            } else if c.hi < target {
                b = mid;
                break;
            }
            terms += 6;
        }
    }
    Iv::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(f: f64) -> Rational {
        Rational::from_float(f).unwrap()
    }

    #[test]
    fn cos_enclosure_basics() {
        let at_zero = cos_enclosure(&Rational::zero(), 8);
        assert!(at_zero.contains(&Rational::one()));
        assert!(at_zero.width() < rat(1, 1_000_000));

        // The enclosures are far tighter than f64, so compare midpoints with
        // an f64-precision slack rather than asking for containment.
        let f64_slack = rat(1, 1_000_000_000_000);
        let at_one = cos_enclosure(&rat(1, 1), 12);
        assert!((at_one.midpoint() - approx(0.5403023058681398)).abs() < f64_slack);
        assert!(at_one.width() < rat(1, 1_000_000_000));

        let at_three = cos_enclosure(&rat(3, 1), 16);
        assert!((at_three.midpoint() - approx(-0.9899924966004454)).abs() < f64_slack);
    }

    #[test]
    fn pi_enclosure_tightens_and_caches() {
        let rough = pi_enclosure(&rat(1, 1000));
        assert!(rough.contains(&approx(std::f64::consts::PI)));
        let tight = pi_enclosure(&rat(1, 1_000_000_000_000));
        assert!(tight.contains(&approx(std::f64::consts::PI)));
        assert!(tight.width() <= rat(1, 1_000_000_000_000));
        // A second coarse call must still contain π (cache may be tighter).
        let again = pi_enclosure(&rat(1, 1000));
        assert!(again.contains(&approx(std::f64::consts::PI)));
    }

    #[test]
    fn arccos_matches_floating_point_oracle() {
        let tol = rat(1, 1_000_000_000);
        for num in [-19i64, -15, -10, -7, -3, -1, 0, 1, 2, 5, 9, 14, 19] {
            let x = rat(num, 10);
            let enc = arccos_half(&x, &tol);
            let oracle = approx((num as f64 / 20.0).acos());
            assert!(
                enc.contains(&oracle),
                "arccos({num}/20) = {oracle} outside [{}, {}]",
                enc.lo,
                enc.hi
            );
            assert!(enc.width() <= tol);
        }
    }

    #[test]
    fn arccos_special_values() {
        let tol = rat(1, 100_000_000);
        // arccos(1/2) = π/3.
        let third = arccos_half(&rat(1, 1), &tol);
        let pi = pi_enclosure(&tol);
        let three_t = third.scale_int(3);
        assert!(three_t.lo <= pi.hi && pi.lo <= three_t.hi, "3·arccos(1/2) overlaps π");
        // arccos(0) = π/2.
        let half_pi = arccos_half(&Rational::zero(), &tol);
        let doubled = half_pi.scale_int(2);
        assert!(doubled.lo <= pi.hi && pi.lo <= doubled.hi);
        // Reflection: arccos(−x/2) + arccos(x/2) = π.
        let a = arccos_half(&rat(7, 5), &tol);
        let b = arccos_half(&rat(-7, 5), &tol);
        let sum = a.add(&b);
        assert!(sum.lo <= pi.hi && pi.lo <= sum.hi);
    }

    #[test]
    fn interval_division() {
        let num = Iv::new(rat(1, 1), rat(2, 1));
        let den = Iv::new(rat(3, 1), rat(4, 1));
        let q = num.div_pos(&den);
        assert_eq!(q.lo, rat(1, 4));
        assert_eq!(q.hi, rat(2, 3));
        let neg = Iv::new(rat(-2, 1), rat(-1, 1)).div_pos(&den);
        assert_eq!(neg.lo, rat(-2, 3));
        assert_eq!(neg.hi, rat(-1, 4));
    }
}
