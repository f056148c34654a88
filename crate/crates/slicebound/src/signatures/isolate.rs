//! Real-root isolation for squarefree rational polynomials by Sturm chains,
//! plus bisection refinement of the resulting intervals.

use num_traits::{Signed, Zero};

use crate::ring::{rat, Poly, Rational};

/// Sturm chain of a polynomial (intended squarefree, so root counts are
/// counts of distinct simple roots).
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub fn new(q: &Poly) -> Self {
        assert!(!q.is_zero());
        let mut chain = vec![q.clone(), q.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(-&r);
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.evaluate(x);
            if v.is_zero() {
                continue;
            }
            let s = v.is_positive();
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        debug_assert!(a < b);
        self.variations(a) - self.variations(b)
    }
}

/// A split point strictly inside `(a, b)` where `q` does not vanish.  Tries
/// more candidate fractions than `q` can have roots, so it always succeeds.
fn split_point(q: &Poly, a: &Rational, b: &Rational) -> Rational {
    let gap = b - a;
    let slots = q.degree().max(1) as i64 + 2;
    for k in 1..slots {
        let cand = a + &gap * rat(k, slots);
        if !q.evaluate(&cand).is_zero() {
            return cand;
        }
    }
    unreachable!("more candidate split points than roots of q");
}

/// One bisection step on an interval bracketing a single simple root
/// (`sign q(a) ≠ sign q(b)`, both nonzero).  When the midpoint is itself the
/// root (a rational root), the interval recenters around it instead.
pub fn refine_step(q: &Poly, iv: &(Rational, Rational)) -> (Rational, Rational) {
    let (a, b) = iv;
    let mid = (a + b) / rat(2, 1);
    let vm = q.evaluate(&mid);
    if vm.is_zero() {
        let w = (b - a) / rat(8, 1);
        return (&mid - &w, mid + w);
    }
    if q.evaluate(a).is_positive() != vm.is_positive() {
        (a.clone(), mid)
    } else {
        (mid, b.clone())
    }
}

/// Bisect until the interval is narrower than `width`.
pub fn refine_to_width(q: &Poly, iv: &(Rational, Rational), width: &Rational) -> (Rational, Rational) {
    let mut iv = iv.clone();
    while &iv.1 - &iv.0 > *width {
        iv = refine_step(q, &iv);
    }
    iv
}

/// Disjoint open isolating intervals for the roots of squarefree `q` in
/// `(lo, hi)`, in ascending order.  Each interval contains exactly one root,
/// has non-root endpoints with a sign change between them, lies strictly
/// inside `(lo, hi)`, and consecutive intervals are separated by gaps of
/// positive width.
pub fn isolate_roots(q: &Poly, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
    assert!(
        !q.evaluate(lo).is_zero() && !q.evaluate(hi).is_zero(),
        "range endpoints must not be roots"
    );
    if q.degree() <= 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(q);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_roots(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = split_point(q, &a, &b);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    // Pull endpoints strictly inside the range and off shared split points.
    for iv in &mut out {
        *iv = refine_step(q, iv);
        while &iv.0 <= lo || &iv.1 >= hi {
            *iv = refine_step(q, iv);
        }
    }
    loop {
        let mut separated = true;
        for i in 0..out.len().saturating_sub(1) {
            if out[i].1 >= out[i + 1].0 {
                separated = false;
                out[i] = refine_step(q, &out[i]);
                out[i + 1] = refine_step(q, &out[i + 1]);
            }
        }
        if separated {
            break;
        }
    }
    out
}
