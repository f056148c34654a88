//! The rational Alexander module of a knot presented by a Seifert matrix:
//! invariant factors, minimal generator counts, and the Blanchfield pairing
//! with orthogonal complements of submodules.
//!
//! All module arithmetic happens over `Λ = Q[t, t⁻¹]`, a principal ideal
//! domain, so Smith normal form exists and invariant factors are canonical
//! up to units.

use crate::mat::{kernel_basis, smith_invariant_factors, ColumnEchelon, EuclideanRing, ExactRing, Mat};
use crate::ring::{LaurentPoly, Rational, UnitClass};
use crate::seifert::SeifertMatrix;

/// The square presentation matrix `tS − Sᵀ` of the Alexander module
/// `Λⁿ / (tS − Sᵀ)Λⁿ`.  Its determinant is the Alexander polynomial.
pub fn presentation(s: &SeifertMatrix) -> Mat<LaurentPoly> {
    let n = s.size();
    Mat::from_fn(n, n, |i, j| {
        LaurentPoly::new(
            0,
            vec![
                -Rational::from(s.entry(j, i).clone()),
                Rational::from(s.entry(i, j).clone()),
            ],
        )
    })
}

/// Remainder of `p` modulo `modulus` in `Λ` (a representative of the class,
/// zero exactly when `modulus` divides `p`).
fn reduce(p: &LaurentPoly, modulus: &LaurentPoly) -> LaurentPoly {
    EuclideanRing::div_rem(p, modulus).1
}

/// The Alexander module with its Smith data.
pub struct AlexanderModule {
    presentation: Mat<LaurentPoly>,
    echelon: ColumnEchelon<LaurentPoly>,
    factors: Vec<LaurentPoly>,
}

impl AlexanderModule {
    pub fn new(s: &SeifertMatrix) -> Self {
        let p = presentation(s);
        let all = smith_invariant_factors(&p);
        assert!(
            all.iter().all(|f| !ExactRing::is_zero(f)),
            "valid Seifert matrices present torsion modules"
        );
        let factors: Vec<LaurentPoly> = all.into_iter().filter(|f| !f.is_unit()).collect();
        let echelon = ColumnEchelon::new(&p);
        AlexanderModule { presentation: p, echelon, factors }
    }

    pub fn presentation(&self) -> &Mat<LaurentPoly> {
        &self.presentation
    }

    /// The non-unit invariant factors in divisibility order, each the
    /// canonical primitive integer representative of its unit class.
    pub fn invariant_factors(&self) -> &[LaurentPoly] {
        &self.factors
    }

    /// The minimal number of generators of the module: the count of non-unit
    /// invariant factors.
    pub fn min_generators(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// The order of the torsion module: the product of the invariant factors,
    /// which equals the Alexander polynomial up to units.
    pub fn order(&self) -> UnitClass {
        let mut acc = LaurentPoly::one();
        for f in &self.factors {
            acc = &acc * f;
        }
        UnitClass::new(&acc)
    }

    /// Whether the class of `v ∈ Λⁿ` is zero in the module, i.e. `v` lies in
    /// the column span of the presentation matrix.
    pub fn vanishes(&self, v: &[LaurentPoly]) -> bool {
        self.echelon.contains(v)
    }
}

/// Whether a module needing `min_generators()` generators cannot embed in a
/// quotient constrained to `available` generators.
pub fn exceeds_generators(module: &AlexanderModule, available: usize) -> bool {
    module.min_generators() > available
}

/// The Blanchfield pairing `B(v, w) = (1−t)·v̄ᵀ·(tS − Sᵀ)⁻¹·w`, taking values
/// in `Q(t)/Λ`, stored as the matrix of numerators over the honest
/// determinant `det(tS − Sᵀ)` (the Alexander polynomial up to a unit; kept
/// unnormalized so the stored data is itself Hermitian).  The bar is the
/// involution `t ↦ t⁻¹`.  The pairing is sesquilinear and Hermitian, and
/// descends to the Alexander module.
pub struct BlanchfieldForm {
    delta: LaurentPoly,
    numer: Mat<LaurentPoly>,
}

impl BlanchfieldForm {
    pub fn new(s: &SeifertMatrix) -> Self {
        let p = presentation(s);
        let delta = p.det();
        assert!(!ExactRing::is_zero(&delta), "form requires a torsion module");
        let adj = p.adjugate();
        let one_minus_t = LaurentPoly::from_int_coeffs(0, &[1, -1]);
        let numer = adj.map(|a| reduce(&(&one_minus_t * a), &delta));
        BlanchfieldForm { delta, numer }
    }

    pub fn size(&self) -> usize {
        self.numer.rows()
    }

    /// The common denominator of the pairing values: `det(tS − Sᵀ)`, the
    /// Alexander polynomial up to a unit.
    pub fn denominator(&self) -> &LaurentPoly {
        &self.delta
    }

    /// Numerator over [`denominator`](Self::denominator) of `B(eᵢ, eⱼ)`,
    /// reduced modulo the denominator.
    pub fn numerator(&self, i: usize, j: usize) -> &LaurentPoly {
        self.numer.at(i, j)
    }

    /// Numerator over the denominator of `B(v, w)`, reduced.
    pub fn pairing_numerator(&self, v: &[LaurentPoly], w: &[LaurentPoly]) -> LaurentPoly {
        let n = self.size();
        assert!(v.len() == n && w.len() == n);
        let mut acc = LaurentPoly::zero();
        for i in 0..n {
            if LaurentPoly::is_zero(&v[i]) {
                continue;
            }
            let vbar = v[i].involution();
            for j in 0..n {
                if LaurentPoly::is_zero(&w[j]) {
                    continue;
                }
                acc = &acc + &(&(&vbar * self.numer.at(i, j)) * &w[j]);
            }
        }
        reduce(&acc, &self.delta)
    }

    /// Whether `B(v, w)` lies in `Λ`, i.e. vanishes in `Q(t)/Λ`.
    pub fn pairs_into_ring(&self, v: &[LaurentPoly], w: &[LaurentPoly]) -> bool {
        LaurentPoly::is_zero(&self.pairing_numerator(v, w))
    }

    /// Whether the submodule generated by `gens` pairs into `Λ` with itself.
    pub fn is_isotropic(&self, gens: &[Vec<LaurentPoly>]) -> bool {
        gens.iter().all(|v| gens.iter().all(|w| self.pairs_into_ring(v, w)))
    }

    /// Generators of the orthogonal complement
    /// `{v : B(v, w) ∈ Λ for all w in the span of gens}` as elements of `Λⁿ`.
    /// The list generates the full complement as a submodule of the Alexander
    /// module; it may include vectors whose class is zero.
    pub fn orthogonal_complement(&self, gens: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
        let n = self.size();
        if gens.is_empty() {
            return (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                        .collect()
                })
                .collect();
        }
        // Write v̄ = w.  Row r of the system says w·(N·g_r) ≡ 0 mod Δ, with a
        // slack variable absorbing the multiple of Δ; the kernel over Λ then
        // projects onto the w-block, and v = w̄ recovers the complement.
        let k = gens.len();
        let mut m: Mat<LaurentPoly> = Mat::zeros(k, n + k);
        for (r, g) in gens.iter().enumerate() {
            assert_eq!(g.len(), n);
            for i in 0..n {
                let mut acc = LaurentPoly::zero();
                for j in 0..n {
                    acc = &acc + &(self.numer.at(i, j) * &g[j]);
                }
                m.set(r, i, reduce(&acc, &self.delta));
            }
            m.set(r, n + r, self.delta.clone());
        }
        kernel_basis(&m)
            .into_iter()
            .map(|w| w[..n].iter().map(|f| f.involution()).collect())
            .collect()
    }
}
