//! Levine–Tristram signature functions on the unit circle, computed exactly
//! at rational points, and the ρ-invariant (the signature function averaged
//! over the circle) as a certified enclosure with an exact symbolic form.

pub mod enclose;
pub mod isolate;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mat::Mat;
use crate::ring::{rat, LaurentPoly, Poly, Rational};
use crate::seifert::SeifertMatrix;
use enclose::{arccos_half, pi_enclosure, Iv};
use isolate::{isolate_roots, refine_step};

/// A point ω on the unit circle: either −1, or the Weierstrass point
/// `((1−s²) + 2s·i)/(1+s²)` for a rational parameter `s`.  The parameter
/// sweeps the whole circle except −1 as `s` runs over the rationals, and
/// `|ω| = 1` holds exactly by construction.
#[derive(Clone, Debug, PartialEq)]
pub enum CirclePoint {
    MinusOne,
    Param(Rational),
}

fn weierstrass_x(s: &Rational) -> Rational {
    let s2 = s * s;
    rat(2, 1) * (Rational::one() - &s2) / (Rational::one() + &s2)
}

impl CirclePoint {
    pub fn one() -> Self {
        CirclePoint::Param(Rational::zero())
    }

    /// `ω + ω̄ = 2·Re ω`, the coordinate in which jump loci are described.
    pub fn x(&self) -> Rational {
        match self {
            CirclePoint::MinusOne => rat(-2, 1),
            CirclePoint::Param(s) => weierstrass_x(s),
        }
    }

    /// `(Re ω, Im ω)` as exact rationals.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            CirclePoint::MinusOne => (rat(-1, 1), Rational::zero()),
            CirclePoint::Param(s) => {
                let s2 = s * s;
                let den = Rational::one() + &s2;
                ((Rational::one() - &s2) / &den, rat(2, 1) * s / &den)
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        match self {
            CirclePoint::MinusOne => CirclePoint::MinusOne,
            CirclePoint::Param(s) => CirclePoint::Param(-s.clone()),
        }
    }
}

/// Result of evaluating the Hermitian form: the exact signature, and whether
/// the form was singular there (true only at ω = 1 for valid input).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureAt {
    pub value: i64,
    pub degenerate: bool,
}

/// Signature and rank of a symmetric rational matrix by exact congruence
/// reduction with symmetric pivoting; zero blocks contribute nothing.
pub fn symmetric_signature(m: &Mat<Rational>) -> (i64, usize) {
    let n = m.rows();
    assert!(m.is_square());
    let mut a = m.clone();
    let mut sig = 0i64;
    let mut rank = 0usize;
    let mut k = 0;
    while k < n {
        if let Some(j) = (k..n).find(|&j| !a.at(j, j).is_zero()) {
            a.swap_rows(k, j);
            a.swap_cols(k, j);
        } else {
            // All trailing diagonal entries vanish; a congruence row/column
            // addition manufactures 2·a[i][j] on the diagonal, if anything
            // nonzero remains.
            let mut off = None;
            'scan: for i in k..n {
                for j in i + 1..n {
                    if !a.at(i, j).is_zero() {
                        off = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = off else { break };
            for c in 0..n {
                let v = a.at(i, c) + a.at(j, c);
                a.set(i, c, v);
            }
            for r in 0..n {
                let v = a.at(r, i) + a.at(r, j);
                a.set(r, i, v);
            }
            a.swap_rows(k, i);
            a.swap_cols(k, i);
        }
        let pivot = a.at(k, k).clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        rank += 1;
        for r in k + 1..n {
            if a.at(r, k).is_zero() {
                continue;
            }
            let f = a.at(r, k) / &pivot;
            for c in k..n {
                let v = a.at(r, c) - &f * a.at(k, c);
                a.set(r, c, v);
            }
        }
        for c in k + 1..n {
            a.set(k, c, Rational::zero());
        }
        k += 1;
    }
    (sig, rank)
}

/// Exact signature of the Hermitian form `H(ω) = (1−ω)S + (1−ω̄)Sᵀ`.
///
/// Writing `H = A + iB` with `A` real symmetric and `B` real skew, the
/// signature is half the signature of the real symmetric doubling
/// `[[A, −B], [B, A]]`.  The computation splits along connected components of
/// the support of `S`, so block sums cost the sum of their blocks.
pub fn hermitian_signature_at(s: &SeifertMatrix, omega: &CirclePoint) -> SignatureAt {
    let n = s.size();
    let (re, im) = omega.parts();
    let one_minus_re = Rational::one() - &re;
    let mut doubled_sig = 0i64;
    let mut rank = 0usize;
    for comp in s.matrix().support_components() {
        let k = comp.len();
        let sym = |u: usize, v: usize| -> Rational {
            &one_minus_re
                * Rational::from((s.entry(comp[u], comp[v]) + s.entry(comp[v], comp[u])).clone())
        };
        let skew = |u: usize, v: usize| -> Rational {
            &im * Rational::from((s.entry(comp[v], comp[u]) - s.entry(comp[u], comp[v])).clone())
        };
        let doubled = Mat::from_fn(2 * k, 2 * k, |i, j| match (i < k, j < k) {
            (true, true) => sym(i, j),
            (false, false) => sym(i - k, j - k),
            (true, false) => -skew(i, j - k),
            (false, true) => skew(i - k, j),
        });
        let (sg, rk) = symmetric_signature(&doubled);
        doubled_sig += sg;
        rank += rk;
    }
    assert!(doubled_sig % 2 == 0 && rank % 2 == 0, "doubling must pair eigenvalues");
    SignatureAt { value: doubled_sig / 2, degenerate: rank / 2 < n }
}

/// The classical knot signature `σ(−1) = sign(S + Sᵀ)`.
pub fn signature_at_minus_one(s: &SeifertMatrix) -> i64 {
    hermitian_signature_at(s, &CirclePoint::MinusOne).value
}

/// The polynomial `p` with `Δ(t)·t^{−deg Δ/2} = p(t + t⁻¹)`, for palindromic
/// `Δ` of even degree.  Unit-circle roots of `Δ` away from ±1 correspond to
/// roots of `p` in `(−2, 2)` via `x = ω + ω̄`.
pub fn trace_polynomial(delta: &LaurentPoly) -> Poly {
    assert!(!delta.is_zero());
    let p = delta.unit_normalize();
    let d = p.degree_span();
    assert!(d % 2 == 0, "palindromic polynomial of even degree required");
    let k = d / 2;
    for j in 0..=k {
        assert_eq!(p.coeff(k + j), p.coeff(k - j), "coefficient vector must be a palindrome");
    }
    // z_j(x) = t^j + t^{−j}: z_0 = 2, z_1 = x, z_{j+1} = x·z_j − z_{j−1}.
    let x = Poly::x();
    let mut z_prev = Poly::constant(rat(2, 1));
    let mut z_cur = x.clone();
    let mut acc = Poly::constant(p.coeff(k));
    for j in 1..=k {
        acc = &acc + &z_cur.scale(&p.coeff(k + j));
        let z_next = &(&x * &z_cur) - &z_prev;
        z_prev = std::mem::replace(&mut z_cur, z_next);
    }
    acc
}

/// Isolating intervals (ascending in `x = ω + ω̄`) for the jump abscissae of
/// the signature function: the real roots in `(−2, 2)` of the squarefree part
/// of the trace polynomial of Δ.
pub fn jump_locus(s: &SeifertMatrix) -> Vec<(Rational, Rational)> {
    let delta = s.alexander_polynomial();
    let q = trace_polynomial(delta.rep()).squarefree_part();
    isolate_roots(&q, &rat(-2, 1), &rat(2, 1))
}

/// Value of the signature function at a point, in the sense of [`SignatureFunction::value_at_x`].
#[derive(Clone, Debug, PartialEq)]
pub enum PointValue {
    /// The point lies on an open arc carrying this signature.
    Regular(i64),
    /// The point is a jump abscissa; the average of the two adjacent arc
    /// values is reported instead (the integral never sees this value).
    Averaged(Rational),
}

/// The Levine–Tristram signature as a function on the circle: a
/// piecewise-constant even-integer function, recorded by its jump intervals
/// (ascending in angle θ on the upper semicircle, so descending in
/// `x = 2cos θ`) and the value on each open arc in the same order.  The lower
/// semicircle is determined by conjugation symmetry.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    jumps: Vec<(Rational, Rational)>,
    arc_values: Vec<i64>,
    isolating: Poly,
}

impl SignatureFunction {
    /// Jump isolating intervals in θ-ascending (x-descending) order.
    pub fn jumps(&self) -> &[(Rational, Rational)] {
        &self.jumps
    }

    /// Arc values in θ-ascending order; first entry is the arc at ω = 1
    /// (always 0), last entry is the arc containing ω = −1.
    pub fn arc_values(&self) -> &[i64] {
        &self.arc_values
    }

    /// The squarefree polynomial whose roots in `(−2, 2)` are the jump
    /// abscissae; shared with refinement.
    pub fn isolating_poly(&self) -> &Poly {
        &self.isolating
    }

    pub fn is_identically_zero(&self) -> bool {
        self.arc_values.iter().all(|&v| v == 0)
    }

    pub fn value_at(&self, omega: &CirclePoint) -> PointValue {
        self.value_at_x(&omega.x())
    }

    /// Value at the conjugate pair of circle points with `ω + ω̄ = x`.
    /// At a jump abscissa the averaged value is returned, flagged as such.
    pub fn value_at_x(&self, x: &Rational) -> PointValue {
        assert!(x.abs() <= rat(2, 1), "x must lie in [−2, 2]");
        for (j, iv) in self.jumps.iter().enumerate() {
            if *x > iv.1 {
                return PointValue::Regular(self.arc_values[j]);
            }
            if *x >= iv.0 {
                if self.isolating.evaluate(x).is_zero() {
                    let avg = rat(self.arc_values[j] + self.arc_values[j + 1], 2);
                    return PointValue::Averaged(avg);
                }
                // Inside the isolating interval but not the root: shrink the
                // interval until the point falls off one side.
                let mut narrowed = iv.clone();
                loop {
                    narrowed = refine_step(&self.isolating, &narrowed);
                    if *x > narrowed.1 {
                        return PointValue::Regular(self.arc_values[j]);
                    }
                    if *x < narrowed.0 {
                        return PointValue::Regular(self.arc_values[j + 1]);
                    }
                }
            }
        }
        PointValue::Regular(*self.arc_values.last().expect("at least one arc"))
    }
}

/// A rational parameter `s ≥ 0` whose Weierstrass point has `x(s)` strictly
/// inside the open interval `(glo, ghi) ⊆ [−2, 2]`.
fn find_param(glo: &Rational, ghi: &Rational) -> Rational {
    assert!(glo < ghi);
    let mut lo = Rational::zero(); // x(0) = 2, at or above the region
    let mut hi = Rational::one();
    // Expand until a sample falls below the region's top.  x(s) > −2 for
    // every rational s, so when glo = −2 the first such sample is already
    // inside and is returned directly; otherwise it completes the bracket.
    loop {
        let x = weierstrass_x(&hi);
        if &x < ghi {
            if &x > glo {
                return hi;
            }
            break;
        }
        lo = hi.clone();
        hi = hi * rat(2, 1);
    }
    loop {
        let mid = (&lo + &hi) / rat(2, 1);
        let x = weierstrass_x(&mid);
        if &x >= ghi {
            lo = mid;
        } else if &x <= glo {
            hi = mid;
        } else {
            return mid;
        }
    }
}

/// Computes the full signature function: jump isolation, then one exact
/// Hermitian signature per arc at a rational circle point strictly inside it.
/// Every arc is sampled twice at distinct points as a constancy check.
pub fn signature_function(s: &SeifertMatrix) -> SignatureFunction {
    let delta = s.alexander_polynomial();
    let q = trace_polynomial(delta.rep()).squarefree_part();
    let ascending = isolate_roots(&q, &rat(-2, 1), &rat(2, 1));
    let jumps: Vec<(Rational, Rational)> = ascending.into_iter().rev().collect();
    let m = jumps.len();
    let mut arc_values = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let upper = if j == 0 { rat(2, 1) } else { jumps[j - 1].0.clone() };
        let lower = if j == m { rat(-2, 1) } else { jumps[j].1.clone() };
        let s1 = find_param(&lower, &upper);
        let x1 = weierstrass_x(&s1);
        let first = hermitian_signature_at(s, &CirclePoint::Param(s1));
        let s2 = find_param(&lower, &x1);
        let second = hermitian_signature_at(s, &CirclePoint::Param(s2));
        assert!(!first.degenerate && !second.degenerate, "arc sample hit a singular point");
        assert_eq!(first.value, second.value, "signature not constant on an arc");
        arc_values.push(first.value);
    }
    assert_eq!(arc_values[0], 0, "signature must vanish on the arc at ω = 1");
    SignatureFunction { jumps, arc_values, isolating: q }
}

/// One term `coeff · arccos(x/2)/π` of the exact form of ρ, with the root `x`
/// held in a shrinkable isolating interval of its own squarefree polynomial.
#[derive(Clone, Debug)]
pub struct RhoTerm {
    coeff: i64,
    x_lo: Rational,
    x_hi: Rational,
    poly: Poly,
}

impl RhoTerm {
    pub fn coeff(&self) -> i64 {
        self.coeff
    }

    pub fn x_interval(&self) -> (&Rational, &Rational) {
        (&self.x_lo, &self.x_hi)
    }
}

/// The ρ-invariant: the integral of the signature function over the unit
/// circle, normalized to total length 1.  Carried as a certified enclosure
/// (`value ± error_bound`) plus the exact symbolic form
/// `constant + Σ coeffᵢ·arccos(xᵢ/2)/π`, which can be re-enclosed to any
/// precision without recomputing signatures.
#[derive(Clone, Debug)]
pub struct RhoValue {
    value: Rational,
    error: Rational,
    constant: Rational,
    terms: Vec<RhoTerm>,
}

impl RhoValue {
    pub fn exact_zero() -> Self {
        Self::exact(Rational::zero())
    }

    /// A ρ-value known exactly (zero error, empty arccos part).
    pub fn exact(r: Rational) -> Self {
        RhoValue { value: r.clone(), error: Rational::zero(), constant: r, terms: Vec::new() }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn error_bound(&self) -> &Rational {
        &self.error
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn terms(&self) -> &[RhoTerm] {
        &self.terms
    }

    /// The enclosure `[value − error, value + error]`.
    pub fn interval(&self) -> Iv {
        Iv::new(&self.value - &self.error, &self.value + &self.error)
    }

    /// The exact rational value of ρ, available when every arccos term sits
    /// at one of the jump abscissae x ∈ {−1, 0, 1}.  These are the only
    /// rational x in (−2, 2) whose angle is commensurable with π
    /// (arccos(x/2)/π = 2/3, 1/2, 1/3 respectively); every other rational
    /// jump abscissa contributes an irrational amount and `None` is returned.
    pub fn exact_rational(&self) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for t in &self.terms {
            let mut ratio = None;
            for (x0, share) in [(rat(-1, 1), rat(2, 3)), (Rational::zero(), rat(1, 2)), (rat(1, 1), rat(1, 3))] {
                if t.x_lo < x0 && x0 < t.x_hi && t.poly.evaluate(&x0).is_zero() {
                    ratio = Some(share);
                    break;
                }
            }
            acc = acc + rat(t.coeff, 1) * ratio?;
        }
        Some(acc)
    }

    /// The tightest certified interval: a point when the value is exactly
    /// rational, otherwise the numeric enclosure.
    pub fn tight_interval(&self) -> Iv {
        match self.exact_rational() {
            Some(r) => Iv::point(r),
            None => self.interval(),
        }
    }

    /// Lower bound for `|ρ|` certified by the enclosure.
    pub fn abs_lower_bound(&self) -> Rational {
        let iv = self.tight_interval();
        if iv.lo.is_positive() {
            iv.lo
        } else if iv.hi.is_negative() {
            -iv.hi
        } else {
            Rational::zero()
        }
    }

    /// Upper bound for `|ρ|` certified by the enclosure.
    pub fn abs_upper_bound(&self) -> Rational {
        let iv = self.tight_interval();
        iv.lo.abs().max(iv.hi.abs())
    }

    fn from_parts(constant: Rational, mut terms: Vec<RhoTerm>, precision: &Rational) -> Self {
        assert!(precision.is_positive());
        terms.retain(|t| t.coeff != 0);
        let total_weight: i64 = terms.iter().map(|t| t.coeff.abs()).sum::<i64>().max(1);
        let mut tau = precision / rat(4 * total_weight, 1);
        for _ in 0..256 {
            let pi_iv = pi_enclosure(&tau);
            let mut total = Iv::point(constant.clone());
            for t in &terms {
                let theta_lo = arccos_half(&t.x_hi, &tau);
                let theta_hi = arccos_half(&t.x_lo, &tau);
                let lo = if theta_lo.lo.is_negative() { Rational::zero() } else { theta_lo.lo };
                let theta = Iv::new(lo, theta_hi.hi);
                total = total.add(&theta.div_pos(&pi_iv).scale_int(t.coeff));
            }
            if total.width() <= rat(2, 1) * precision {
                return RhoValue {
                    value: total.midpoint(),
                    error: total.width() / rat(2, 1),
                    constant: constant.clone(),
                    terms,
                };
            }
            tau = tau / rat(2, 1);
            for t in &mut terms {
                let narrowed = refine_step(&t.poly, &(t.x_lo.clone(), t.x_hi.clone()));
                t.x_lo = narrowed.0;
                t.x_hi = narrowed.1;
            }
        }
        unreachable!("ρ enclosure failed to reach the requested precision");
    }

    /// A new value with `error_bound ≤ precision`, re-enclosed from the exact
    /// form without touching the originating Seifert matrix.
    pub fn refine(&self, precision: &Rational) -> Self {
        if self.terms.is_empty() {
            return self.clone();
        }
        Self::from_parts(self.constant.clone(), self.terms.clone(), precision)
    }

    /// Sum of invariants (ρ of a connected sum); enclosures and exact forms
    /// combine term by term.
    pub fn add(&self, other: &RhoValue) -> RhoValue {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        RhoValue {
            value: &self.value + &other.value,
            error: &self.error + &other.error,
            constant: &self.constant + &other.constant,
            terms,
        }
    }

    pub fn neg(&self) -> RhoValue {
        RhoValue {
            value: -self.value.clone(),
            error: self.error.clone(),
            constant: -self.constant.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| RhoTerm { coeff: -t.coeff, ..t.clone() })
                .collect(),
        }
    }

    /// Sum of `copies` identical summands.
    pub fn scale(&self, copies: u32) -> RhoValue {
        let mut acc = RhoValue::exact_zero();
        for _ in 0..copies {
            acc = acc.add(self);
        }
        acc
    }
}

/// ρ as a certified enclosure with `error_bound ≤ precision`.
///
/// With arcs in θ-ascending order delimited by angles θⱼ = arccos(xⱼ/2), the
/// normalized integral telescopes to
/// `ρ = a_last + Σⱼ (a_j − a_{j+1})·θⱼ₊₁/π`, which is the stored exact form.
pub fn rho_integral(s: &SeifertMatrix, precision: &Rational) -> RhoValue {
    let sf = signature_function(s);
    let arcs = sf.arc_values();
    let constant = *arcs.last().expect("at least one arc");
    let terms: Vec<RhoTerm> = sf
        .jumps()
        .iter()
        .enumerate()
        .map(|(j, iv)| RhoTerm {
            coeff: arcs[j] - arcs[j + 1],
            x_lo: iv.0.clone(),
            x_hi: iv.1.clone(),
            poly: sf.isolating_poly().clone(),
        })
        .collect();
    if terms.iter().all(|t| t.coeff == 0) && constant == 0 {
        return RhoValue::exact_zero();
    }
    RhoValue::from_parts(rat(constant, 1), terms, precision)
}

/// ρ of the connected sum of the given knots, by additivity: the summands are
/// integrated independently (at a proportionally tighter precision) and the
/// enclosures added.
pub fn rho_of_connected_sum(list: &[SeifertMatrix], precision: &Rational) -> RhoValue {
    if list.is_empty() {
        return RhoValue::exact_zero();
    }
    let per = precision / rat(list.len() as i64, 1);
    let mut acc = RhoValue::exact_zero();
    for s in list {
        acc = acc.add(&rho_integral(s, &per));
    }
    acc
}
