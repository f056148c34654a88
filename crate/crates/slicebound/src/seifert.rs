//! Seifert matrices, the classical invariants computed from them, a catalog of
//! standard knots, and certificates for algebraic sliceness.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mat::{kernel_basis, smith_invariant_factors, EuclideanRing, Mat};
use crate::ring::{LaurentPoly, Rational, UnitClass};

/// A square integer matrix `S` of even size with `det(S − Sᵀ) = ±1`, the
/// linking data of a Seifert surface basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    mat: Mat<BigInt>,
    name: Option<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix size {size} is odd; Seifert matrices have even size")]
    OddSize { size: usize },
    #[error("det(S - S^T) = {det}, expected +1 or -1")]
    NotUnimodular { det: BigInt },
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self, SeifertError> {
        let rows = entries.len();
        if let Some(bad) = entries.iter().find(|r| r.len() != rows) {
            return Err(SeifertError::NotSquare { rows, cols: bad.len() });
        }
        let mat = Mat::from_rows(entries);
        if mat.rows() % 2 != 0 {
            return Err(SeifertError::OddSize { size: mat.rows() });
        }
        let skew = Mat::from_fn(mat.rows(), mat.cols(), |i, j| mat.at(i, j) - mat.at(j, i));
        let det = skew.det();
        if !det.abs().is_one() {
            return Err(SeifertError::NotUnimodular { det });
        }
        Ok(SeifertMatrix { mat, name: None })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, SeifertError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.mat.at(i, j)
    }

    pub fn matrix(&self) -> &Mat<BigInt> {
        &self.mat
    }

    /// Half the matrix size: an upper bound for the Seifert genus of any knot
    /// carrying this matrix.
    pub fn genus_bound(&self) -> usize {
        self.size() / 2
    }

    /// The bilinear Seifert pairing `vᵀ S w`.
    pub fn pairing(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        assert!(v.len() == self.size() && w.len() == self.size());
        let mut acc = BigInt::zero();
        for i in 0..v.len() {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..w.len() {
                acc += &v[i] * self.mat.at(i, j) * &w[j];
            }
        }
        acc
    }

    /// `det(tS − Sᵀ)` up to `±t^k`.  Always satisfies `Δ(1) = ±1` and the
    /// palindromic symmetry `Δ(t⁻¹) ≐ ±Δ(t)`.
    pub fn alexander_polynomial(&self) -> UnitClass {
        let n = self.size();
        let p = Mat::from_fn(n, n, |i, j| {
            let s = LaurentPoly::constant(Rational::from(self.mat.at(i, j).clone()));
            let st = LaurentPoly::constant(Rational::from(self.mat.at(j, i).clone()));
            &(&s * &LaurentPoly::t()) - &st
        });
        UnitClass::new(&p.det())
    }

    /// Block-diagonal sum, modelling connected sum of the underlying knots.
    pub fn block_sum(&self, other: &Self) -> Self {
        SeifertMatrix {
            mat: Mat::block_diag(&[self.mat.clone(), other.mat.clone()]),
            name: None,
        }
    }

    /// `−S`: reverse plus mirror, so `S ⊕ (−S)` always carries the diagonal
    /// metabolizer and models a ribbon connected sum.
    pub fn concordance_inverse(&self) -> Self {
        SeifertMatrix { mat: self.mat.map(|v| -v), name: None }
    }

    /// `−Sᵀ`: mirror image only.  Distinct from [`Self::concordance_inverse`];
    /// both negate the signature function.
    pub fn mirror(&self) -> Self {
        SeifertMatrix { mat: self.mat.transpose().map(|v| -v), name: None }
    }
}

/// A candidate half-rank subspace on which the Seifert pairing should vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metabolizer {
    basis: Vec<Vec<BigInt>>,
}

impl Metabolizer {
    pub fn new(basis: Vec<Vec<BigInt>>) -> Self {
        Metabolizer { basis }
    }

    pub fn from_i64(basis: &[&[i64]]) -> Self {
        Metabolizer {
            basis: basis.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The diagonal `{(x, x)}` inside a block sum of two blocks of size `n`.
    pub fn diagonal(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); 2 * n];
                v[i] = BigInt::one();
                v[n + i] = BigInt::one();
                v
            })
            .collect();
        Metabolizer { basis }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetabolizerError {
    #[error("basis has {got} vectors, expected {expected} (half the matrix size)")]
    WrongCardinality { got: usize, expected: usize },
    #[error("basis vector {index} has length {got}, expected {expected}")]
    WrongLength { index: usize, got: usize, expected: usize },
    #[error("basis vectors are linearly dependent over the rationals")]
    DependentVectors,
}

/// Whether the given half-rank basis spans an integral metabolizer: the
/// Seifert pairing vanishes on all ordered pairs and the span is a direct
/// summand of the full lattice (every Smith invariant factor a unit).
pub fn metabolizer_check(s: &SeifertMatrix, m: &Metabolizer) -> Result<bool, MetabolizerError> {
    metabolizer_check_inner(s, m, true)
}

/// Weaker variant: only demands linear independence of the basis and vanishing
/// of the pairing, i.e. a metabolizer of the rationalized form.  A lattice
/// that is isotropic but of finite index in its saturation passes here and
/// fails [`metabolizer_check`].
pub fn metabolizer_check_rational(
    s: &SeifertMatrix,
    m: &Metabolizer,
) -> Result<bool, MetabolizerError> {
    metabolizer_check_inner(s, m, false)
}

fn metabolizer_check_inner(
    s: &SeifertMatrix,
    m: &Metabolizer,
    integral: bool,
) -> Result<bool, MetabolizerError> {
    let n = s.size();
    let r = n / 2;
    if m.rank() != r {
        return Err(MetabolizerError::WrongCardinality { got: m.rank(), expected: r });
    }
    for (index, v) in m.basis().iter().enumerate() {
        if v.len() != n {
            return Err(MetabolizerError::WrongLength { index, got: v.len(), expected: n });
        }
    }
    if r == 0 {
        return Ok(true);
    }
    // Columns of `b` are the candidate basis vectors.
    let b = Mat::from_fn(n, r, |i, j| m.basis()[j][i].clone());
    let factors = smith_invariant_factors(&b);
    if factors.iter().any(|f| f.is_zero()) {
        return Err(MetabolizerError::DependentVectors);
    }
    if integral && !factors.iter().all(|f| f.is_unit()) {
        return Ok(false);
    }
    for v in m.basis() {
        for w in m.basis() {
            if !s.pairing(v, w).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `Δ ≐ f(t)·f(t⁻¹)` up to `±t^k` — the classical necessary condition
/// on the Alexander polynomial of a slice knot, checked against an explicit
/// witness `f`.
pub fn fox_milnor_check(delta: &UnitClass, f: &LaurentPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let prod = f * &f.involution();
    prod.unit_eq(delta.rep())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("the zero polynomial is not an Alexander polynomial")]
    ZeroPolynomial,
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("polynomial is not symmetric: p(1/t) is not ±t^k · p(t)")]
    NotSymmetric,
    #[error("p(1) = {value}, expected +1 or -1")]
    NonUnitAtOne { value: Rational },
    #[error(
        "degree-{degree} polynomial with leading coefficient of absolute value > 1 \
         is outside the implemented search family (quadratics and monic polynomials)"
    )]
    NonMonicUnsupported { degree: i64 },
    #[error("search family exhausted for degree {degree} without a unimodular solution")]
    SearchExhausted { degree: i64 },
}

/// A Seifert matrix whose Alexander polynomial is `≐ delta`.
///
/// Validates the two realizability conditions (symmetry, unit value at 1, over
/// the integers) and reports which failed.  Construction: constants give the
/// empty matrix, quadratics an explicit 2×2, and monic polynomials of higher
/// degree a search through integer solutions of `Sᵀ = S·C` with `C` the
/// companion matrix — every such `S` has `det(tS − Sᵀ) = det(S)·delta`, so any
/// unimodular lattice point realizes `delta`.  The result is gated on the
/// postcondition `alexander_polynomial(S) ≐ delta`, not on the construction.
pub fn realize_alexander(delta: &LaurentPoly) -> Result<SeifertMatrix, RealizeError> {
    if delta.is_zero() {
        return Err(RealizeError::ZeroPolynomial);
    }
    if !delta.has_integer_coeffs() {
        return Err(RealizeError::NonIntegerCoefficients);
    }
    if !delta.is_symmetric() {
        return Err(RealizeError::NotSymmetric);
    }
    let at_one = delta.eval_at_one();
    if at_one != Rational::from(BigInt::one()) && at_one != -Rational::from(BigInt::one()) {
        return Err(RealizeError::NonUnitAtOne { value: at_one });
    }
    let p = delta.unit_normalize();
    let d = p.degree_span();
    // Symmetry plus p(1) = ±1 forces an honest palindrome of even degree: an
    // odd-degree palindrome has even coefficient sum, and the sign-reversed
    // case forces p(1) = 0.
    assert!(d % 2 == 0, "gated polynomial must have even degree");
    let s = match d {
        0 => SeifertMatrix::new(Vec::new()).expect("empty matrix is valid"),
        2 => realize_quadratic(&p),
        _ => realize_companion(&p)?,
    };
    let got = s.alexander_polynomial();
    assert!(
        got.rep().unit_eq(delta),
        "realization postcondition failed: built {} for requested {}",
        got,
        delta
    );
    Ok(s)
}

/// `[[c, 1], [0, 1]]` realizes `c·t² + (1−2c)·t + c`; quadratic palindromes
/// with unit value at 1 are exactly of this shape up to overall sign.
fn realize_quadratic(p: &LaurentPoly) -> SeifertMatrix {
    let one = Rational::from(BigInt::one());
    let sign = if p.eval_at_one() == one { one } else { -Rational::from(BigInt::one()) };
    let c = (p.coeff(0) * &sign).to_integer();
    let rows = vec![
        vec![c, BigInt::one()],
        vec![BigInt::zero(), BigInt::one()],
    ];
    SeifertMatrix::new(rows).expect("quadratic construction is always unimodular")
}

fn realize_companion(p: &LaurentPoly) -> Result<SeifertMatrix, RealizeError> {
    let d = p.degree_span() as usize;
    let coeffs: Vec<BigInt> = (0..=d as i64).map(|k| p.coeff(k).to_integer()).collect();
    if !coeffs[d].is_one() {
        return Err(RealizeError::NonMonicUnsupported { degree: d as i64 });
    }
    // Companion matrix of p: subdiagonal ones, last column -c_0..-c_{d-1}.
    let comp = Mat::from_fn(d, d, |i, j| {
        if j + 1 == d {
            -coeffs[i].clone()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    // Linear system over Z in the d² entries of S: (Sᵀ − S·C)_{ij} = 0.
    let sys = Mat::from_fn(d * d, d * d, |eq, var| {
        let (i, j) = (eq / d, eq % d);
        let (a, b) = (var / d, var % d);
        let mut coeff = BigInt::zero();
        if (a, b) == (j, i) {
            coeff += 1;
        }
        if a == i {
            coeff -= comp.at(b, j);
        }
        coeff
    });
    let lattice = kernel_basis(&sys);
    if lattice.is_empty() {
        return Err(RealizeError::SearchExhausted { degree: d as i64 });
    }
    let g = lattice.len();
    // Enumerate small integer combinations shell by shell; det(−S) = det(S)
    // for even size, so only combinations with positive first nonzero
    // coordinate are tried.
    let mut budget: u64 = 400_000;
    for bound in 1..=3i64 {
        let mut combo = vec![-bound; g];
        'odometer: loop {
            if combo.iter().any(|&c| c.abs() == bound)
                && combo.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
            {
                if budget == 0 {
                    return Err(RealizeError::SearchExhausted { degree: d as i64 });
                }
                budget -= 1;
                let mut entries = vec![BigInt::zero(); d * d];
                for (c, basis_vec) in combo.iter().zip(&lattice) {
                    if *c == 0 {
                        continue;
                    }
                    let cb = BigInt::from(*c);
                    for (e, b) in entries.iter_mut().zip(basis_vec) {
                        *e += &cb * b;
                    }
                }
                let cand = Mat::from_fn(d, d, |i, j| entries[i * d + j].clone());
                if det_could_be_unit(&cand) && cand.det().abs().is_one() {
                    let rows = (0..d).map(|i| cand.row(i).to_vec()).collect();
                    let s = SeifertMatrix::new(rows)
                        .expect("unimodular solution of the companion system is a Seifert matrix");
                    return Ok(s);
                }
            }
            for k in 0..g {
                if combo[k] < bound {
                    combo[k] += 1;
                    continue 'odometer;
                }
                combo[k] = -bound;
            }
            break;
        }
    }
    Err(RealizeError::SearchExhausted { degree: d as i64 })
}

/// Fast modular filter: a determinant that is not ±1 modulo a large prime
/// cannot be ±1.  Entries here are tiny, so `i64` arithmetic suffices.
fn det_could_be_unit(m: &Mat<BigInt>) -> bool {
    const P: i64 = 1_000_000_007;
    use num_traits::ToPrimitive;
    let n = m.rows();
    let mut a: Vec<i64> = (0..n)
        .flat_map(|i| m.row(i).iter())
        .map(|v| {
            let r = (v % BigInt::from(P)).to_i64().unwrap();
            (r + P) % P
        })
        .collect();
    let mut det: i64 = 1;
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return false;
        };
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            det = P - det;
        }
        let pivot = a[k * n + k];
        det = mulmod(det, pivot);
        let inv = modpow(pivot, P - 2);
        for r in k + 1..n {
            let factor = mulmod(a[r * n + k], inv);
            if factor == 0 {
                continue;
            }
            for j in k..n {
                let sub = mulmod(factor, a[k * n + j]);
                a[r * n + j] = ((a[r * n + j] - sub) % P + P) % P;
            }
        }
    }
    det == 1 || det == P - 1
}

fn mulmod(a: i64, b: i64) -> i64 {
    (a as i128 * b as i128 % 1_000_000_007) as i64
}

fn modpow(mut base: i64, mut exp: i64) -> i64 {
    let mut acc = 1i64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog knot {0:?}")]
    UnknownName(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
}

/// Standard band Seifert matrices by name: `unknot`, `trefoil`,
/// `figure-eight`, `torus` with parameters `(2, odd q ≥ 3)`, and `twist` with
/// one integer parameter (the number of full twists).  Parameters may also be
/// embedded in the name, as in `"torus(2,5)"`.
pub fn catalog(name: &str, params: &[i64]) -> Result<SeifertMatrix, CatalogError> {
    let (base, embedded) = split_embedded_params(name)?;
    let params = if embedded.is_empty() {
        params.to_vec()
    } else if params.is_empty() {
        embedded
    } else {
        return Err(CatalogError::BadParams {
            name: name.to_string(),
            reason: "parameters given both in the name and separately".into(),
        });
    };
    let require = |want: usize| -> Result<(), CatalogError> {
        if params.len() == want {
            Ok(())
        } else {
            Err(CatalogError::BadParams {
                name: base.to_string(),
                reason: format!("expected {} parameter(s), got {}", want, params.len()),
            })
        }
    };
    match base {
        "unknot" => {
            require(0)?;
            Ok(SeifertMatrix::new(Vec::new()).unwrap().with_name("unknot"))
        }
        "trefoil" => {
            require(0)?;
            Ok(SeifertMatrix::from_i64(&[&[-1, 1], &[0, -1]]).unwrap().with_name("trefoil"))
        }
        "figure-eight" | "figure8" => {
            require(0)?;
            Ok(SeifertMatrix::from_i64(&[&[1, 1], &[0, -1]]).unwrap().with_name("figure-eight"))
        }
        "torus" => {
            require(2)?;
            let (p, q) = (params[0], params[1]);
            if p != 2 || q < 3 || q % 2 == 0 {
                return Err(CatalogError::BadParams {
                    name: "torus".into(),
                    reason: format!("only torus(2, odd q >= 3) is available, got ({p}, {q})"),
                });
            }
            let n = (q - 1) as usize;
            let mat = Mat::from_fn(n, n, |i, j| {
                if i == j {
                    BigInt::from(-1)
                } else if j == i + 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            });
            let rows = (0..n).map(|i| mat.row(i).to_vec()).collect();
            Ok(SeifertMatrix::new(rows).unwrap().with_name(format!("torus(2,{q})")))
        }
        "twist" => {
            require(1)?;
            let k = params[0];
            Ok(SeifertMatrix::from_i64(&[&[-1, 1], &[0, k]])
                .unwrap()
                .with_name(format!("twist({k})")))
        }
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

fn split_embedded_params(name: &str) -> Result<(&str, Vec<i64>), CatalogError> {
    let Some(open) = name.find('(') else {
        return Ok((name, Vec::new()));
    };
    let inner = name[open..]
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| CatalogError::BadParams {
            name: name.to_string(),
            reason: "unbalanced parentheses".into(),
        })?;
    let mut params = Vec::new();
    for piece in inner.split(',') {
        let v = piece.trim().parse::<i64>().map_err(|_| CatalogError::BadParams {
            name: name.to_string(),
            reason: format!("cannot parse parameter {piece:?}"),
        })?;
        params.push(v);
    }
    Ok((&name[..open], params))
}

/// Names every catalog entry answers to, for CLI listings.
pub fn catalog_names() -> &'static [&'static str] {
    &["unknot", "trefoil", "figure-eight", "torus(2,q)", "twist(k)"]
}

/// Deterministic pseudorandom valid Seifert matrix of the given genus:
/// a random symmetric part plus the fixed upper half of the standard
/// symplectic form, so `S − Sᵀ` is exactly that form.  Used by property tests.
pub fn random_seifert(genus: usize, seed: u64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 5) as i64 - 2
    };
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = next();
            rows[i][j] = BigInt::from(v);
            rows[j][i] = BigInt::from(v);
        }
    }
    for b in 0..genus {
        rows[2 * b][2 * b + 1] += 1;
    }
    SeifertMatrix::new(rows).expect("symmetric part plus symplectic half is valid")
}
