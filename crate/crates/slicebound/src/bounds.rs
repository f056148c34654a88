//! Genus-bound inequalities as a certification engine.  Every decision is
//! made on certified enclosures (or exact rationals when available) and
//! recorded in a self-verifying [`BoundReport`].

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::ring::{rat, Rational};
use crate::seifert::SeifertMatrix;
use crate::signatures::{rho_integral, RhoValue};

/// Anchor inequalities quoted verbatim in reports, so each fired rule names
/// the exact arithmetic fact it certifies.
pub const ANCHOR_RHO_BETTI: &str = "|rho| <= 2*beta_2(W)";
pub const ANCHOR_SURFACE_BORDISM: &str = "beta_2(V) = beta_2(W) + 2g - 1";
pub const ANCHOR_SLICE_BORDISM: &str = "beta_2(V) <= 2*g_h";
pub const ANCHOR_LEE_WILCZYNSKI: &str =
    "2*genus >= -beta_2(X) + max_{0<=j<d} |sign(X) - (2j(d-j)/d^2)*self_int|";
pub const ANCHOR_COND_I: &str = "|rho(J)| >= C + 4g";
pub const ANCHOR_COND_II: &str = "|rho(J')| >= C + 4g + g*|rho(J)|";
pub const ANCHOR_PATTERNS: &str =
    "|c + a*rho(J) - b*rho(J')| >= 4g for all patterns (n,m) in {0,1}^(2g) \\ {0}, any |c| <= C";

/// Machine-checkable payload of a fired rule; [`RuleCheck::holds`] re-derives
/// the rule's truth from the stored numbers alone.
#[derive(Clone, Debug, PartialEq)]
pub enum RuleCheck {
    /// `lhs_lower ≥ threshold` (a magnitude condition decided from below).
    MagnitudeAtLeast { lhs_lower: Rational, threshold: Rational },
    /// Every interval avoids the open ball of the given radius around 0.
    /// Entries are `(pattern, a, b, lo, hi)` with `pattern` the bitmask over
    /// `{0,1}^{2g}` and `(a, b)` its multiplicity sums.
    IntervalsAvoid { entries: Vec<(u32, u32, u32, Rational, Rational)>, radius: Rational },
    /// The consistency verdict of `|rho| ≤ budget` given a certified lower
    /// bound for `|rho|`.
    AbsConsistent { abs_lower: Rational, budget: Rational, consistent: bool },
    /// An exact integer identity `lhs = rhs`.
    Identity { lhs: i64, rhs: i64 },
    /// `bound = ⌈rhs/2⌉` when `rhs > 0`, else no information.
    CeilingHalf { rhs: Rational, bound: Option<i64> },
}

impl RuleCheck {
    pub fn holds(&self) -> bool {
        match self {
            RuleCheck::MagnitudeAtLeast { lhs_lower, threshold } => lhs_lower >= threshold,
            RuleCheck::IntervalsAvoid { entries, radius } => entries
                .iter()
                .all(|(_, _, _, lo, hi)| *lo >= *radius || *hi <= -radius.clone()),
            RuleCheck::AbsConsistent { abs_lower, budget, consistent } => {
                (abs_lower <= budget) == *consistent
            }
            RuleCheck::Identity { lhs, rhs } => lhs == rhs,
            RuleCheck::CeilingHalf { rhs, bound } => {
                if rhs.is_positive() {
                    let want = (rhs / rat(2, 1)).ceil().to_integer().to_i64();
                    *bound == want
                } else {
                    bound.is_none()
                }
            }
        }
    }
}

/// One inequality instance the engine relied on.
#[derive(Clone, Debug)]
pub struct FiredRule {
    pub name: String,
    pub anchor: String,
    pub instantiation: String,
    pub check: RuleCheck,
}

/// The engine's verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Conclusion {
    /// A certified lower bound; `sharp` records that the construction also
    /// supplies a surface of the same genus, making the bound an equality.
    GenusAtLeast { bound: u32, sharp: bool },
    /// A plain numeric lower bound (used by the embedded-surface inequality).
    GenusBound(i64),
    NoInformation,
}

/// Structured certification trace: echoed inputs, the inequalities fired
/// with their numeric instantiations, and the conclusion.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub inputs: Vec<(String, String)>,
    pub fired_rules: Vec<FiredRule>,
    pub conclusion: Conclusion,
}

impl BoundReport {
    /// Re-evaluates every fired rule from its stored payload.
    pub fn verify(&self) -> bool {
        self.fired_rules.iter().all(|r| r.check.holds())
    }
}

fn decimal(r: &Rational) -> String {
    match r.to_f64() {
        Some(f) => format!("{f:.9}"),
        None => r.to_string(),
    }
}

fn describe_rho(rho: &RhoValue) -> String {
    match rho.exact_rational() {
        Some(q) => format!("{q} (exact)"),
        None => format!("{} +/- {}", decimal(rho.value()), decimal(rho.error_bound())),
    }
}

/// Whether `|rho| ≤ 2·beta2` is consistent with the certified enclosure:
/// `false` only when the entire enclosure lies strictly beyond the budget.
pub fn rho_betti_bound(rho: &RhoValue, beta2: u64) -> bool {
    rho.abs_lower_bound() <= rat(2 * beta2 as i64, 1)
}

/// Second Betti number of the bordism obtained from an embedded genus-`g`
/// surface: `β₂(W) + 2g − 1`.  Valid for `g ≥ 1`, or `g = 0` when the
/// restricted character is nontrivial (the caller asserts that via the flag).
pub fn surface_bordism_betti(beta2_w: u64, g: u64, character_nontrivial: bool) -> u64 {
    assert!(
        g >= 1 || character_nontrivial,
        "the identity needs g >= 1 or a nontrivial restricted character"
    );
    (beta2_w + 2 * g).checked_sub(1).expect("beta_2 + 2g must be at least 1")
}

/// Betti budget available over a hypothetical genus-`g_h` slice surface.
pub fn slice_bordism_betti(g_h: u64) -> u64 {
    2 * g_h
}

/// The embedded-surface genus bound `⌈RHS/2⌉` with
/// `RHS = −β₂(X) + max_{0≤j<d} |sign(X) − (2j(d−j)/d²)·self_int|`,
/// in exact rational arithmetic.  `None` means the inequality gives no
/// information (`RHS ≤ 0`).
pub fn lee_wilczynski(beta2: u64, sign: i64, self_int: i64, d: u64) -> Option<i64> {
    assert!(d >= 1, "the divisibility parameter d must be positive");
    let rhs = lee_wilczynski_rhs(beta2, sign, self_int, d);
    if rhs.is_positive() {
        Some((rhs / rat(2, 1)).ceil().to_integer().to_i64().expect("small bound"))
    } else {
        None
    }
}

fn lee_wilczynski_rhs(beta2: u64, sign: i64, self_int: i64, d: u64) -> Rational {
    let d_sq = rat((d * d) as i64, 1);
    let mut best: Option<Rational> = None;
    for j in 0..d {
        let coef = rat(2 * (j * (d - j)) as i64, 1) / &d_sq;
        let v = (rat(sign, 1) - coef * rat(self_int, 1)).abs();
        if best.as_ref().map_or(true, |b| v > *b) {
            best = Some(v);
        }
    }
    rat(-(beta2 as i64), 1) + best.expect("d >= 1 gives at least j = 0")
}

/// [`lee_wilczynski`] wrapped in a self-verifying report.
pub fn lee_wilczynski_report(beta2: u64, sign: i64, self_int: i64, d: u64) -> BoundReport {
    let rhs = lee_wilczynski_rhs(beta2, sign, self_int, d);
    let bound = lee_wilczynski(beta2, sign, self_int, d);
    let conclusion = match bound {
        Some(b) => Conclusion::GenusBound(b),
        None => Conclusion::NoInformation,
    };
    BoundReport {
        inputs: vec![
            ("beta_2(X)".into(), beta2.to_string()),
            ("sign(X)".into(), sign.to_string()),
            ("self_intersection".into(), self_int.to_string()),
            ("d".into(), d.to_string()),
        ],
        fired_rules: vec![FiredRule {
            name: "embedded-surface-genus-bound".into(),
            anchor: ANCHOR_LEE_WILCZYNSKI.into(),
            instantiation: format!(
                "RHS = {rhs}; {}",
                match bound {
                    Some(b) => format!("genus >= ceil(RHS/2) = {b}"),
                    None => "RHS <= 0: no information".to_string(),
                }
            ),
            check: RuleCheck::CeilingHalf { rhs, bound },
        }],
        conclusion,
    }
}

/// Why a certification run did not produce a report.
#[derive(Clone, Debug, PartialEq)]
pub enum CertifyError {
    /// Malformed parameters (nonpositive C, zero genus).
    InvalidInput(String),
    /// An inequality straddles the current enclosure: refine the ρ precision.
    Undecidable { condition: String },
    /// An inequality is certifiably false.
    ConditionFailed { condition: String, detail: String },
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            CertifyError::Undecidable { condition } => {
                write!(f, "undecidable at current precision: {condition}; refine the rho enclosures")
            }
            CertifyError::ConditionFailed { condition, detail } => {
                write!(f, "condition failed: {condition} ({detail})")
            }
        }
    }
}

impl std::error::Error for CertifyError {}

/// Certified `[min |x|, max |x|]` over a rational interval.
fn interval_abs(lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let abs_hi = lo.abs().max(hi.abs());
    let abs_lo = if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        Rational::zero()
    } else {
        lo.abs().min(hi.abs())
    };
    (abs_lo, abs_hi)
}

/// Certifies that the infected family of genus `g` built from companions with
/// the given ρ-invariants has slice genus at least `g`, against any character
/// correction bounded by `C`.
///
/// The engine first decides the two magnitude conditions
/// `|ρ(J)| ≥ C + 4g` and `|ρ(J')| ≥ C + 4g + g·|ρ(J)|` strictly on the
/// certified enclosures, then exhaustively enumerates every nonzero pattern
/// `(n, m) ∈ {0,1}^{2g}` and checks that the obstruction interval
/// `[−C, C] + Σnᵢ·ρ(J) − Σmᵢ·ρ(J')` avoids `(−4g, 4g)`.
pub fn certify_family_genus(
    c: &Rational,
    g: u32,
    rho_j: &RhoValue,
    rho_jp: &RhoValue,
) -> Result<BoundReport, CertifyError> {
    if !c.is_positive() {
        return Err(CertifyError::InvalidInput("C must be positive".into()));
    }
    if g == 0 {
        return Err(CertifyError::InvalidInput("genus must be positive".into()));
    }
    if g > 12 {
        return Err(CertifyError::InvalidInput(
            "pattern enumeration over {0,1}^(2g) is capped at g = 12".into(),
        ));
    }
    let jv = rho_j.tight_interval();
    let pv = rho_jp.tight_interval();
    let (j_abs_lo, j_abs_hi) = interval_abs(&jv.lo, &jv.hi);
    let (p_abs_lo, p_abs_hi) = interval_abs(&pv.lo, &pv.hi);
    let four_g = rat(4 * g as i64, 1);
    let g_rat = rat(g as i64, 1);

    let threshold_i = c + &four_g;
    if j_abs_lo < threshold_i {
        if j_abs_hi < threshold_i {
            return Err(CertifyError::ConditionFailed {
                condition: ANCHOR_COND_I.into(),
                detail: format!("|rho(J)| <= {} < {} = C + 4g", decimal(&j_abs_hi), threshold_i),
            });
        }
        return Err(CertifyError::Undecidable { condition: ANCHOR_COND_I.into() });
    }
    let rule_i = FiredRule {
        name: "companion-magnitude".into(),
        anchor: ANCHOR_COND_I.into(),
        instantiation: format!("|rho(J)| >= {} >= {} = C + 4g", decimal(&j_abs_lo), threshold_i),
        check: RuleCheck::MagnitudeAtLeast {
            lhs_lower: j_abs_lo.clone(),
            threshold: threshold_i.clone(),
        },
    };

    let threshold_ii_hi = &threshold_i + &g_rat * &j_abs_hi;
    let threshold_ii_lo = &threshold_i + &g_rat * &j_abs_lo;
    if p_abs_lo < threshold_ii_hi {
        if p_abs_hi < threshold_ii_lo {
            return Err(CertifyError::ConditionFailed {
                condition: ANCHOR_COND_II.into(),
                detail: format!(
                    "|rho(J')| <= {} < {} = C + 4g + g*|rho(J)|",
                    decimal(&p_abs_hi),
                    decimal(&threshold_ii_lo)
                ),
            });
        }
        return Err(CertifyError::Undecidable { condition: ANCHOR_COND_II.into() });
    }
    let rule_ii = FiredRule {
        name: "second-companion-magnitude".into(),
        anchor: ANCHOR_COND_II.into(),
        instantiation: format!(
            "|rho(J')| >= {} >= {} = C + 4g + g*|rho(J)|",
            decimal(&p_abs_lo),
            decimal(&threshold_ii_hi)
        ),
        check: RuleCheck::MagnitudeAtLeast { lhs_lower: p_abs_lo, threshold: threshold_ii_hi },
    };

    // Exhaustive pattern enumeration: bit i of the mask picks nᵢ (first g
    // bits) or mᵢ (last g bits).
    let mut entries = Vec::with_capacity((1usize << (2 * g)) - 1);
    for mask in 1u32..(1u32 << (2 * g)) {
        let a = (mask & ((1 << g) - 1)).count_ones();
        let b = (mask >> g).count_ones();
        let a_rat = rat(a as i64, 1);
        let b_rat = rat(b as i64, 1);
        let lo = &a_rat * &jv.lo - &b_rat * &pv.hi - c;
        let hi = &a_rat * &jv.hi - &b_rat * &pv.lo + c;
        let avoids = lo >= four_g || hi <= -four_g.clone();
        if !avoids {
            let center_lo = &a_rat * &jv.lo - &b_rat * &pv.hi;
            let center_hi = &a_rat * &jv.hi - &b_rat * &pv.lo;
            let definitely_hits = center_lo.abs().max(center_hi.abs()) < &four_g + c;
            if definitely_hits {
                return Err(CertifyError::ConditionFailed {
                    condition: ANCHOR_PATTERNS.into(),
                    detail: format!(
                        "pattern a={a}, b={b}: interval [{}, {}] meets (-4g, 4g)",
                        decimal(&lo),
                        decimal(&hi)
                    ),
                });
            }
            return Err(CertifyError::Undecidable {
                condition: format!("pattern a={a}, b={b} of: {ANCHOR_PATTERNS}"),
            });
        }
        entries.push((mask, a, b, lo, hi));
    }
    let rule_patterns = FiredRule {
        name: "pattern-obstruction".into(),
        anchor: ANCHOR_PATTERNS.into(),
        instantiation: format!(
            "all {} nonzero patterns clear the open interval (-{four_g}, {four_g})",
            entries.len()
        ),
        check: RuleCheck::IntervalsAvoid { entries, radius: four_g },
    };

    Ok(BoundReport {
        inputs: vec![
            ("C".into(), c.to_string()),
            ("g".into(), g.to_string()),
            ("rho(J)".into(), describe_rho(rho_j)),
            ("rho(J')".into(), describe_rho(rho_jp)),
        ],
        fired_rules: vec![rule_i, rule_ii, rule_patterns],
        conclusion: Conclusion::GenusAtLeast { bound: g, sharp: true },
    })
}

/// Why [`build_companion_multiplicities`] could not produce multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub enum BuildError {
    InvalidInput(String),
    /// The seed's ρ enclosure contains 0, so no multiple can clear the bars.
    SeedRhoIndistinguishableFromZero,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            BuildError::SeedRhoIndistinguishableFromZero => {
                write!(f, "seed knot has |rho| enclosure containing 0; pick a seed with nonzero rho")
            }
        }
    }
}

impl std::error::Error for BuildError {}

fn ceil_ratio(num: &Rational, den: &Rational) -> u32 {
    (num / den).ceil().to_integer().to_u32().expect("multiplicity fits in u32")
}

/// Minimal multiplicities `(k, k′)` so that the connected sums of `k` and
/// `k′` copies of the seed satisfy the two magnitude conditions of
/// [`certify_family_genus`], by ρ-additivity.  Decisions use the seed's exact
/// rational ρ when available, otherwise its certified enclosure (in which
/// case minimality is relative to the enclosure).
pub fn build_companion_multiplicities(
    c: &Rational,
    g: u32,
    seed: &SeifertMatrix,
) -> Result<(u32, u32), BuildError> {
    if !c.is_positive() || g == 0 {
        return Err(BuildError::InvalidInput("need C > 0 and g >= 1".into()));
    }
    let mut rho = rho_integral(seed, &rat(1, 1_000_000));
    if rho.exact_rational().is_none() && rho.abs_lower_bound().is_zero() {
        rho = rho.refine(&rat(1, 1_000_000_000_000));
    }
    let abs_lo = rho.abs_lower_bound();
    if abs_lo.is_zero() {
        return Err(BuildError::SeedRhoIndistinguishableFromZero);
    }
    let abs_hi = rho.abs_upper_bound();
    let threshold_i = c + rat(4 * g as i64, 1);
    let k = ceil_ratio(&threshold_i, &abs_lo);
    let threshold_ii = &threshold_i + rat(g as i64, 1) * rat(k as i64, 1) * &abs_hi;
    let kp = ceil_ratio(&threshold_ii, &abs_lo);
    Ok((k, kp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::catalog;

    fn trefoil_rho() -> RhoValue {
        rho_integral(&catalog("trefoil", &[]).unwrap(), &rat(1, 1_000_000))
    }

    #[test]
    fn rho_betti_consistency_frozen() {
        let one = trefoil_rho();
        assert!(rho_betti_bound(&one, 1), "4/3 <= 2");
        let fourteen = one.scale(14);
        assert!(!rho_betti_bound(&fourteen, 2), "56/3 > 4");
        assert!(rho_betti_bound(&RhoValue::exact_zero(), 0));
    }

    #[test]
    fn betti_identities_frozen() {
        assert_eq!(surface_bordism_betti(1, 1, false), 2);
        assert_eq!(surface_bordism_betti(0, 3, false), 5);
        assert_eq!(surface_bordism_betti(5, 1, false), 6);
        assert_eq!(surface_bordism_betti(4, 0, true), 3);
        assert_eq!(slice_bordism_betti(1), 2);
        assert_eq!(slice_bordism_betti(0), 0);
        assert_eq!(slice_bordism_betti(7), 14);
    }

    #[test]
    #[should_panic(expected = "nontrivial restricted character")]
    fn surface_bordism_needs_positive_genus_or_flag() {
        surface_bordism_betti(3, 0, false);
    }

    #[test]
    fn lee_wilczynski_frozen() {
        // max over j ∈ {0,1} of |1 − j(2−j)·2/4·2| = max(1, 0)… RHS = 0.
        assert_eq!(lee_wilczynski(1, 1, 2, 2), None);
        assert_eq!(lee_wilczynski(0, 2, 0, 1), Some(1));
        // RHS = -2 + max_j |5 - ...|: d=1 forces j=0: |5| - 2 = 3, genus >= 2.
        assert_eq!(lee_wilczynski(2, 5, 9, 1), Some(2));
        let report = lee_wilczynski_report(0, 2, 0, 1);
        assert!(report.verify());
        assert_eq!(report.conclusion, Conclusion::GenusBound(1));
        let nothing = lee_wilczynski_report(3, 1, 0, 4);
        assert!(nothing.verify());
        assert_eq!(nothing.conclusion, Conclusion::NoInformation);
    }

    #[test]
    fn lee_wilczynski_degenerate_never_informs() {
        let mut state = 0x1ee7_c0deu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let sign = (next() % 21) as i64 - 10;
            let beta2 = sign.unsigned_abs() + next() % 5;
            let d = 1 + next() % 6;
            assert_eq!(lee_wilczynski(beta2, sign, 0, d), None, "beta2 >= |sign|, self_int = 0");
        }
    }

    #[test]
    fn certify_trefoil_family_frozen() {
        let (k, kp) = build_companion_multiplicities(&rat(10, 1), 2, &catalog("trefoil", &[]).unwrap())
            .unwrap();
        assert_eq!((k, kp), (14, 42));
        let one = trefoil_rho();
        let report = certify_family_genus(&rat(10, 1), 2, &one.scale(k), &one.scale(kp)).unwrap();
        assert!(report.verify());
        assert_eq!(report.conclusion, Conclusion::GenusAtLeast { bound: 2, sharp: true });
        assert_eq!(report.fired_rules.len(), 3);
        let RuleCheck::IntervalsAvoid { entries, .. } = &report.fired_rules[2].check else {
            panic!("third rule is the pattern enumeration");
        };
        assert_eq!(entries.len(), 15, "2^(2g) - 1 patterns for g = 2");
    }

    #[test]
    fn certify_large_c_exact_equality_edge() {
        // At C = 10⁴ the thresholds are met with exact equality, which only
        // the exact rational path can decide.
        let c = rat(10_000, 1);
        let (k, kp) =
            build_companion_multiplicities(&c, 2, &catalog("trefoil", &[]).unwrap()).unwrap();
        assert_eq!((k, kp), (7506, 22518));
        let one = trefoil_rho();
        let report = certify_family_genus(&c, 2, &one.scale(k), &one.scale(kp)).unwrap();
        assert!(report.verify());
    }

    #[test]
    fn certify_rejects_and_detects() {
        let one = trefoil_rho();
        let err = certify_family_genus(&rat(10, 1), 2, &one, &one.scale(42)).unwrap_err();
        assert!(
            matches!(&err, CertifyError::ConditionFailed { condition, .. } if condition == ANCHOR_COND_I),
            "single trefoil is far below C + 4g: {err:?}"
        );
        assert!(matches!(
            certify_family_genus(&rat(10, 1), 0, &one.scale(14), &one.scale(42)),
            Err(CertifyError::InvalidInput(_))
        ));
        assert!(matches!(
            certify_family_genus(&rat(-1, 1), 1, &one.scale(14), &one.scale(42)),
            Err(CertifyError::InvalidInput(_))
        ));
        // (ii) violated: J' too small even though (i) holds.
        let err2 = certify_family_genus(&rat(10, 1), 2, &one.scale(14), &one.scale(14)).unwrap_err();
        assert!(
            matches!(&err2, CertifyError::ConditionFailed { condition, .. } if condition == ANCHOR_COND_II)
        );
    }

    #[test]
    fn certify_undecidable_requests_refinement() {
        // Construct a genuinely fuzzy value by computing a torus-knot rho at
        // coarse precision and scaling it so the bar C + 4g falls inside the
        // enclosure of |rho|.
        let t25 = rho_integral(&catalog("torus(2,5)", &[]).unwrap(), &rat(1, 100));
        // |rho(T(2,5))| = 12/5; threshold for C = 12k/5 - small, g = 1:
        // choose k with k*12/5 exactly at C + 4: C = k*12/5 - 4.
        let k = 10u32;
        let c = rat(24, 1) - rat(4, 1); // k·12/5 = 24, so C + 4g = 24 exactly
        let scaled = t25.scale(k);
        assert!(scaled.exact_rational().is_none());
        let err = certify_family_genus(&c, 1, &scaled, &scaled.scale(40)).unwrap_err();
        assert!(
            matches!(err, CertifyError::Undecidable { .. }),
            "enclosure straddles an exact-equality bar"
        );
        // The exact path decides the same bar: |rho(J)| = 24 = C + 4g holds
        // with equality, which no finite enclosure can certify.
        let exact_bar = RhoValue::exact(rat(-24, 1));
        assert!(certify_family_genus(&c, 1, &exact_bar, &RhoValue::exact(rat(200, 1))).is_ok());
    }

    #[test]
    fn certify_monotone_in_c() {
        let one = trefoil_rho();
        let j = one.scale(14);
        let jp = one.scale(42);
        assert!(certify_family_genus(&rat(10, 1), 2, &j, &jp).is_ok());
        for smaller in [rat(9, 1), rat(5, 1), rat(1, 2), rat(1, 100)] {
            assert!(
                certify_family_genus(&smaller, 2, &j, &jp).is_ok(),
                "certification must survive shrinking C to {smaller}"
            );
        }
    }

    #[test]
    fn build_multiplicities_errors() {
        assert_eq!(
            build_companion_multiplicities(&rat(10, 1), 1, &catalog("unknot", &[]).unwrap()),
            Err(BuildError::SeedRhoIndistinguishableFromZero)
        );
        assert_eq!(
            build_companion_multiplicities(&rat(10, 1), 1, &catalog("figure-eight", &[]).unwrap()),
            Err(BuildError::SeedRhoIndistinguishableFromZero)
        );
        assert!(matches!(
            build_companion_multiplicities(&rat(0, 1), 1, &catalog("trefoil", &[]).unwrap()),
            Err(BuildError::InvalidInput(_))
        ));
    }

    #[test]
    fn build_multiplicities_with_irrational_seed() {
        // T(2,5) has |rho| = 12/5 but no exact rational path; the enclosure
        // is tight enough that the multiplicities match the true values.
        let (k, kp) =
            build_companion_multiplicities(&rat(10, 1), 1, &catalog("torus(2,5)", &[]).unwrap())
                .unwrap();
        // thresholds: 14/(12/5) = 5.83 → 6; (14 + 6·12/5)/(12/5) = 11.83 → 12.
        assert_eq!((k, kp), (6, 12));
        let rho = rho_integral(&catalog("torus(2,5)", &[]).unwrap(), &rat(1, 1_000_000));
        assert!(certify_family_genus(&rat(10, 1), 1, &rho.scale(k), &rho.scale(kp)).is_ok());
    }

    #[test]
    fn report_self_verification_catches_tampering() {
        let one = trefoil_rho();
        let mut report = certify_family_genus(&rat(10, 1), 2, &one.scale(14), &one.scale(42)).unwrap();
        assert!(report.verify());
        report.fired_rules[0].check = RuleCheck::MagnitudeAtLeast {
            lhs_lower: rat(1, 1),
            threshold: rat(2, 1),
        };
        assert!(!report.verify());
    }
}
