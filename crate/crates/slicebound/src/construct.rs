//! Builders for doubled-companion families: block sums of `g` copies of
//! `S ⊕ −S` whose classical invariants all vanish, together with the ρ-ledger
//! that records the winding-zero companion insertions the block sum hides.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::alexmod::AlexanderModule;
use crate::ring::{cyclotomic, distinct_prime_factors, prime_power_decomposition, rat, Rational};
use crate::seifert::{metabolizer_check, realize_alexander, Metabolizer, SeifertMatrix};
use crate::signatures::enclose::Iv;
use crate::signatures::{rho_integral, RhoValue};

/// One companion insertion along an unknotted axis.  A winding-zero insertion
/// leaves the Seifert form alone; its entire effect on the certification
/// pipeline is the signed ρ-contribution recorded here.
#[derive(Clone, Debug)]
pub struct RhoLedgerEntry {
    /// Symbolic tag for the axis curve (asserted to generate the Alexander
    /// module of its block).
    pub axis: String,
    /// Seifert matrix of the companion knot tied in along the axis.
    pub companion: SeifertMatrix,
    /// Connected-sum multiplicity of the companion.
    pub copies: u32,
    /// `+1` when the block carries the companion directly, `−1` when the
    /// block is the concordance inverse (which flips ρ).
    pub sign: i8,
}

impl RhoLedgerEntry {
    /// Certified enclosure of this entry's total ρ-contribution.
    pub fn rho(&self, precision: &Rational) -> RhoValue {
        let one = rho_integral(&self.companion, precision);
        let scaled = one.scale(self.copies);
        if self.sign < 0 {
            scaled.neg()
        } else {
            scaled
        }
    }
}

/// A companion insertion request: tie `infection_knot` into `base` along an
/// axis with the given winding number.  Only winding zero is supported,
/// because that is the case in which the Seifert form is preserved.
#[derive(Clone, Debug)]
pub struct InfectionDescriptor {
    pub base: SeifertMatrix,
    /// Symbolic tag naming the axis; callers assert the axis class generates
    /// the Alexander module of the base.
    pub axis_class: String,
    pub infection_knot: SeifertMatrix,
    pub winding: i64,
}

/// Parameters of the doubled-companion family: `g` blocks, each the block sum
/// of a Seifert matrix realizing the `n`-th cyclotomic polynomial and its
/// concordance inverse, with companions `J` (multiplicity `j_copies`) and
/// `J'` (multiplicity `j_prime_copies`) inserted per block.
#[derive(Clone, Debug)]
pub struct FamilyDescriptor {
    pub g: u32,
    pub n: u64,
    pub j: SeifertMatrix,
    pub j_prime: SeifertMatrix,
    pub j_copies: u32,
    pub j_prime_copies: u32,
}

impl FamilyDescriptor {
    pub fn new(g: u32, n: u64, j: SeifertMatrix, j_prime: SeifertMatrix) -> Self {
        FamilyDescriptor { g, n, j, j_prime, j_copies: 1, j_prime_copies: 1 }
    }

    pub fn with_copies(mut self, j_copies: u32, j_prime_copies: u32) -> Self {
        self.j_copies = j_copies;
        self.j_prime_copies = j_prime_copies;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    /// Only winding-zero insertions preserve the Seifert form.
    NonzeroWinding(i64),
    /// `Φ_n(1) = p` for `n = p^a`, so the cyclotomic polynomial fails the
    /// unit-evaluation realizability condition.
    PrimePower { n: u64, p: u64 },
    /// The order gate demands at least three distinct prime factors.
    TooFewPrimes { n: u64, primes: Vec<u64> },
    InvalidParameter(String),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NonzeroWinding(w) => {
                write!(f, "winding number {w} != 0: only winding-zero insertions preserve the Seifert form")
            }
            ConstructError::PrimePower { n, p } => write!(
                f,
                "n = {n} is a power of {p}, so Phi_{n}(1) = {p} != +/-1 and no Seifert matrix realizes it"
            ),
            ConstructError::TooFewPrimes { n, primes } => write!(
                f,
                "n = {n} has distinct prime factors {primes:?}; the order gate needs at least three"
            ),
            ConstructError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl std::error::Error for ConstructError {}

/// Seifert matrix after a companion insertion, plus the ledger entry for the
/// ρ bookkeeping.  Winding zero means the matrix is the base unchanged; a
/// trivial companion (empty Seifert matrix) leaves the ledger empty too.
pub fn infected_seifert(
    d: &InfectionDescriptor,
) -> Result<(SeifertMatrix, Vec<RhoLedgerEntry>), ConstructError> {
    if d.winding != 0 {
        return Err(ConstructError::NonzeroWinding(d.winding));
    }
    let ledger = if d.infection_knot.size() == 0 {
        Vec::new()
    } else {
        vec![RhoLedgerEntry {
            axis: d.axis_class.clone(),
            companion: d.infection_knot.clone(),
            copies: 1,
            sign: 1,
        }]
    };
    Ok((d.base.clone(), ledger))
}

/// A fully built family: the block-sum Seifert matrix, the single positive
/// block it repeats, and the ρ-ledger of all companion insertions.
#[derive(Clone, Debug)]
pub struct Family {
    pub g: u32,
    pub n: u64,
    /// `⊕ᵍ (S ⊕ −S)` where `S` realizes `Φ_n`.
    pub seifert: SeifertMatrix,
    /// One copy of `S` (the positive half of a block).
    pub block: SeifertMatrix,
    /// `2g` entries: per block, one insertion of `J` (sign `+1`) into the
    /// positive half and one of `J'` (sign `−1`) into the negative half.
    pub ledger: Vec<RhoLedgerEntry>,
}

/// Builds the genus-`g` doubled-companion family over `Φ_n`.
///
/// The order `n` is gated twice, in this sequence: first `n` must not be a
/// prime power (otherwise `Φ_n(1) = p` and no Seifert matrix realizes the
/// polynomial at all), then `n` must have at least three distinct prime
/// factors (the divisibility gate the concordance obstructions need).  The
/// sequencing matters: `n = 6` fails only the second gate.
pub fn build_family(f: &FamilyDescriptor) -> Result<Family, ConstructError> {
    if f.g == 0 {
        return Err(ConstructError::InvalidParameter("genus must be positive".into()));
    }
    if f.n < 2 {
        return Err(ConstructError::InvalidParameter("order n must be at least 2".into()));
    }
    if f.j_copies == 0 || f.j_prime_copies == 0 {
        return Err(ConstructError::InvalidParameter("companion multiplicities must be positive".into()));
    }
    if let Some((p, _)) = prime_power_decomposition(f.n) {
        return Err(ConstructError::PrimePower { n: f.n, p });
    }
    let primes = distinct_prime_factors(f.n);
    if primes.len() < 3 {
        return Err(ConstructError::TooFewPrimes { n: f.n, primes });
    }
    let block = realize_alexander(&cyclotomic(f.n)).map_err(|e| {
        ConstructError::InvalidParameter(format!("Phi_{} could not be realized: {e}", f.n))
    })?;
    let pair = block.block_sum(&block.concordance_inverse());
    let mut seifert = pair.clone();
    for _ in 1..f.g {
        seifert = seifert.block_sum(&pair);
    }
    let seifert = seifert.with_name(format!("family(g={}, n={})", f.g, f.n));
    let mut ledger = Vec::with_capacity(2 * f.g as usize);
    for i in 0..f.g {
        if f.j.size() > 0 {
            ledger.push(RhoLedgerEntry {
                axis: format!("eta({}, +)", i + 1),
                companion: f.j.clone(),
                copies: f.j_copies,
                sign: 1,
            });
        }
        if f.j_prime.size() > 0 {
            ledger.push(RhoLedgerEntry {
                axis: format!("eta({}, -)", i + 1),
                companion: f.j_prime.clone(),
                copies: f.j_prime_copies,
                sign: -1,
            });
        }
    }
    Ok(Family { g: f.g, n: f.n, seifert, block, ledger })
}

/// Witness that the family's Seifert form is metabolic: the diagonal basis
/// `{(x, x)}` of each `S ⊕ −S` block, assembled across blocks, plus the
/// verdict of the integral metabolizer check on the full matrix.
#[derive(Clone, Debug)]
pub struct MetabolizerCertificate {
    pub metabolizer: Metabolizer,
    pub rank: usize,
    pub passed: bool,
}

/// Builds and checks the diagonal metabolizer of the family.  A `false`
/// verdict would mean the builder produced something other than a block sum
/// of `S ⊕ −S` pairs, so callers treat it as an internal error.
pub fn verify_p3(family: &Family) -> MetabolizerCertificate {
    let m = family.block.size();
    let g = family.g as usize;
    let total = 2 * m * g;
    assert_eq!(family.seifert.size(), total, "family size is 2·g·|block|");
    let mut basis = Vec::with_capacity(m * g);
    for b in 0..g {
        let offset = 2 * m * b;
        for i in 0..m {
            let mut v = vec![num_bigint::BigInt::from(0); total];
            v[offset + i] = num_bigint::BigInt::from(1);
            v[offset + m + i] = num_bigint::BigInt::from(1);
            basis.push(v);
        }
    }
    let metabolizer = Metabolizer::new(basis);
    let rank = metabolizer.rank();
    let passed = metabolizer_check(&family.seifert, &metabolizer).unwrap_or(false);
    MetabolizerCertificate { metabolizer, rank, passed }
}

/// One certified obstruction interval: the set of values
/// `c + Σ selected signed ρ-contributions` can take for `|c| ≤ C`, for one
/// nonzero selection pattern over the ledger.
#[derive(Clone, Debug)]
pub struct ObstructionInterval {
    /// Bitmask over the ledger entries (bit `i` selects entry `i`).
    pub pattern: u32,
    pub interval: Iv,
}

/// Enumerates every nonzero selection pattern over the family's ledger and
/// returns the certified interval of possible obstruction values for each,
/// allowing an arbitrary correction term of magnitude at most `C`.  An empty
/// ledger yields an empty set.
pub fn rho_obstruction_set(family: &Family, c: &Rational, precision: &Rational) -> Vec<ObstructionInterval> {
    let entries = &family.ledger;
    assert!(entries.len() < 31, "pattern enumeration is capped at 30 ledger entries");
    let contributions: Vec<Iv> = entries.iter().map(|e| e.rho(precision).tight_interval()).collect();
    let mut out = Vec::with_capacity((1usize << entries.len()).saturating_sub(1));
    for mask in 1u32..(1u32 << entries.len()) {
        let mut lo = -c.clone();
        let mut hi = c.clone();
        for (i, iv) in contributions.iter().enumerate() {
            if mask & (1 << i) != 0 {
                lo += &iv.lo;
                hi += &iv.hi;
            }
        }
        out.push(ObstructionInterval { pattern: mask, interval: Iv::new(lo, hi) });
    }
    out
}

/// The least `|·|` over the obstruction intervals: the certified margin the
/// genus bound clears.  `None` on an empty set.
pub fn certification_minimum(set: &[ObstructionInterval]) -> Option<Rational> {
    set.iter()
        .map(|o| {
            if o.interval.lo.is_negative() && o.interval.hi.is_positive() {
                Rational::zero()
            } else {
                o.interval.lo.abs().min(o.interval.hi.abs())
            }
        })
        .min()
}

/// The family's Alexander module (two invariant factors `Φ_n` per block).
pub fn family_module(family: &Family) -> AlexanderModule {
    AlexanderModule::new(&family.seifert)
}

/// Convenience: `rat(1, 10^6)`, the default ρ precision used by builders.
pub fn default_precision() -> Rational {
    rat(1, 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::UnitClass;
    use crate::seifert::catalog;
    use crate::signatures::signature_function;

    fn trefoil() -> SeifertMatrix {
        catalog("trefoil", &[]).unwrap()
    }

    fn descriptor(g: u32, n: u64) -> FamilyDescriptor {
        FamilyDescriptor::new(g, n, trefoil(), trefoil()).with_copies(14, 42)
    }

    #[test]
    fn infection_keeps_seifert_form() {
        let d = InfectionDescriptor {
            base: catalog("figure-eight", &[]).unwrap(),
            axis_class: "eta".into(),
            infection_knot: trefoil(),
            winding: 0,
        };
        let (s, ledger) = infected_seifert(&d).unwrap();
        assert_eq!(s.matrix(), d.base.matrix());
        assert_eq!(ledger.len(), 1);
        assert_eq!(ledger[0].sign, 1);
        assert_eq!(
            UnitClass::new(s.alexander_polynomial().rep()),
            d.base.alexander_polynomial()
        );

        let trivial = InfectionDescriptor {
            base: catalog("figure-eight", &[]).unwrap(),
            axis_class: "eta".into(),
            infection_knot: catalog("unknot", &[]).unwrap(),
            winding: 0,
        };
        let (s2, ledger2) = infected_seifert(&trivial).unwrap();
        assert_eq!(s2.matrix(), d.base.matrix());
        assert!(ledger2.is_empty());

        let twisted = InfectionDescriptor { winding: 2, ..d };
        assert_eq!(infected_seifert(&twisted).unwrap_err(), ConstructError::NonzeroWinding(2));
    }

    #[test]
    fn family_shape_and_alexander_polynomial() {
        let fam = build_family(&descriptor(1, 30)).unwrap();
        assert_eq!(fam.seifert.size(), 16, "deg Phi_30 = 8, one S + one -S");
        assert_eq!(fam.block.size(), 8);
        let want = UnitClass::new(&cyclotomic(30)).pow(2);
        assert_eq!(fam.seifert.alexander_polynomial(), want);
        assert_eq!(fam.ledger.len(), 2);
        assert_eq!(fam.ledger[0].copies, 14);
        assert_eq!(fam.ledger[1].copies, 42);
        assert_eq!(fam.ledger[1].sign, -1);

        let fam2 = build_family(&descriptor(2, 30)).unwrap();
        assert_eq!(fam2.seifert.size(), 32);
        assert_eq!(fam2.seifert.alexander_polynomial(), UnitClass::new(&cyclotomic(30)).pow(4));
        assert_eq!(fam2.ledger.len(), 4);
    }

    #[test]
    fn family_orders_42_and_60() {
        for n in [42u64, 60] {
            let fam = build_family(&descriptor(1, n)).unwrap();
            let want = UnitClass::new(&cyclotomic(n)).pow(2);
            assert_eq!(fam.seifert.alexander_polynomial(), want, "n = {n}");
        }
    }

    #[test]
    fn order_gates_fire_in_sequence() {
        assert_eq!(
            build_family(&descriptor(1, 9)).unwrap_err(),
            ConstructError::PrimePower { n: 9, p: 3 },
            "9 = 3^2 fails realizability outright"
        );
        assert_eq!(
            build_family(&descriptor(1, 6)).unwrap_err(),
            ConstructError::TooFewPrimes { n: 6, primes: vec![2, 3] },
            "6 passes the prime-power gate but has only two primes"
        );
        assert!(matches!(
            build_family(&descriptor(0, 30)),
            Err(ConstructError::InvalidParameter(_))
        ));
        assert!(matches!(
            build_family(&descriptor(1, 1)),
            Err(ConstructError::InvalidParameter(_))
        ));
    }

    #[test]
    fn family_module_generators() {
        for g in [1u32, 2] {
            let fam = build_family(&descriptor(g, 30)).unwrap();
            let module = family_module(&fam);
            assert_eq!(module.min_generators(), 2 * g as usize);
            for f in module.invariant_factors() {
                assert_eq!(UnitClass::new(f), UnitClass::new(&cyclotomic(30)));
            }
            assert!(crate::alexmod::exceeds_generators(&module, 2 * g as usize - 1));
            assert!(!crate::alexmod::exceeds_generators(&module, 2 * g as usize));
        }
    }

    #[test]
    fn family_signature_function_vanishes() {
        let fam = build_family(&descriptor(1, 30)).unwrap();
        let sig = signature_function(&fam.seifert);
        assert!(sig.is_identically_zero(), "S + (-S) blocks cancel pointwise");
    }

    #[test]
    fn diagonal_metabolizer_certificates() {
        for g in [1u32, 3] {
            let fam = build_family(&descriptor(g, 30)).unwrap();
            let cert = verify_p3(&fam);
            assert_eq!(cert.rank, 8 * g as usize);
            assert!(cert.passed, "diagonal metabolizer must pass at g = {g}");
        }
    }

    #[test]
    fn obstruction_set_counts_and_margins() {
        let fam = build_family(&descriptor(2, 30)).unwrap();
        let set = rho_obstruction_set(&fam, &rat(10, 1), &default_precision());
        assert_eq!(set.len(), 15, "2^(2g) - 1 nonzero patterns at g = 2");
        let min = certification_minimum(&set).unwrap();
        assert!(min >= rat(8, 1), "certified margin clears 4g = 8, got {min}");

        // Single block, single-trefoil companions: pattern (1,0) forces the
        // interval [-C, C] + rho(J) to stay clear of (-4, 4) only when
        // |rho(J)| >= C + 4; with 14 copies and C = 10 it does.
        let small = build_family(&descriptor(1, 30)).unwrap();
        let set1 = rho_obstruction_set(&small, &rat(10, 1), &default_precision());
        assert_eq!(set1.len(), 3);
        let j_only = set1.iter().find(|o| o.pattern == 1).unwrap();
        assert!(
            j_only.interval.hi <= rat(-4, 1) || j_only.interval.lo >= rat(4, 1),
            "J-only interval {:?} avoids (-4, 4)",
            j_only.interval
        );

        // Empty ledger: trivial companions contribute nothing.
        let silent = FamilyDescriptor::new(
            1,
            30,
            catalog("unknot", &[]).unwrap(),
            catalog("unknot", &[]).unwrap(),
        );
        let fam0 = build_family(&silent).unwrap();
        assert!(fam0.ledger.is_empty());
        assert!(rho_obstruction_set(&fam0, &rat(10, 1), &default_precision()).is_empty());
        assert_eq!(certification_minimum(&[]), None);
    }
}
