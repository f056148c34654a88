//! Dense matrices over exact rings, with fraction-free determinants, Smith
//! normal form and Hermite-style kernels/membership over Euclidean domains.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::{LaurentPoly, Poly, Rational};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

/// The ring operations the matrix algorithms need, including exact division.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; `None` when `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

/// Euclidean structure on top of [`ExactRing`], for Smith/Hermite reduction.
/// The norm is zero exactly on zero, and units are the norm-minimal nonzero
/// elements.
pub trait EuclideanRing: ExactRing {
    fn norm(&self) -> u64;
    fn div_rem(&self, rhs: &Self) -> (Self, Self);
    fn is_unit(&self) -> bool;
    /// A deterministic representative of the unit orbit of `self`.
    fn canonical_associate(&self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        Zero::is_zero(&r).then_some(q)
    }
}

impl EuclideanRing for BigInt {
    fn norm(&self) -> u64 {
        use num_traits::ToPrimitive;
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        num_integer::Integer::div_rem(self, rhs)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn canonical_associate(&self) -> Self {
        self.abs()
    }
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl ExactRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Poly::div_exact(self, rhs)
    }
}

impl EuclideanRing for Poly {
    fn norm(&self) -> u64 {
        (self.degree() + 1).max(0) as u64
    }
    fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        Poly::div_rem(self, rhs)
    }
    fn is_unit(&self) -> bool {
        self.degree() == 0
    }
    fn canonical_associate(&self) -> Self {
        if Poly::is_zero(self) { Poly::zero() } else { self.monic() }
    }
}

impl ExactRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, rhs)
    }
}

impl EuclideanRing for LaurentPoly {
    /// Degree span plus one, so that units (monomials) have norm 1.
    fn norm(&self) -> u64 {
        if self.is_zero() { 0 } else { self.degree_span() as u64 + 1 }
    }

    /// Division with remainder of strictly smaller degree span: both operands
    /// are shifted to honest polynomials, divided there, and shifted back.
    fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!LaurentPoly::is_zero(rhs), "division by zero");
        if LaurentPoly::is_zero(self) {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let a = Poly::from_laurent(self);
        let b = Poly::from_laurent(rhs);
        let (q, r) = a.div_rem(&b);
        (
            q.to_laurent().shift(self.low_exp() - rhs.low_exp()),
            r.to_laurent().shift(self.low_exp()),
        )
    }

    fn is_unit(&self) -> bool {
        !self.is_zero() && self.degree_span() == 0
    }

    /// Units of the Laurent ring over the rationals are `c·t^k`, so the
    /// canonical associate rescales to coprime integer coefficients with
    /// positive leading coefficient and lowest exponent zero.
    fn canonical_associate(&self) -> Self {
        if LaurentPoly::is_zero(self) {
            return LaurentPoly::zero();
        }
        Poly::from_laurent(self).primitive_integer().to_laurent()
    }
}

impl<T: ExactRing> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !rhs.at(k, j).is_zero() {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
                }
            }
            acc
        })
    }

    pub fn add_mat(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }

    pub fn neg_mat(&self) -> Self {
        self.map(|v| v.neg())
    }

    /// Block-diagonal concatenation.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(n, m);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(i0 + i, j0 + j, b.at(i, j).clone());
                }
            }
            i0 += b.rows;
            j0 += b.cols;
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination, after splitting the
    /// support graph into connected components so block-diagonal inputs cost
    /// only the sum of their blocks.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut acc = T::one();
        for comp in self.support_components() {
            let sub = Mat::from_fn(comp.len(), comp.len(), |i, j| self.at(comp[i], comp[j]).clone());
            acc = acc.mul(&sub.det_bareiss());
            if acc.is_zero() {
                return T::zero();
            }
        }
        acc
    }

    /// Connected components of the symmetrized support graph, each sorted.
    pub(crate) fn support_components(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in 0..n {
                    if !seen[w] && (!self.at(v, w).is_zero() || !self.at(w, v).is_zero()) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The adjugate matrix: `self.matmul(&self.adjugate()) = det·I`.  Entries
    /// are signed minors, each computed with the fraction-free determinant.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        Mat::from_fn(n, n, |i, j| {
            let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
                self.at(if r < j { r } else { r + 1 }, if c < i { c } else { c + 1 }).clone()
            });
            let d = minor.det();
            if (i + j) % 2 == 0 { d } else { d.neg() }
        })
    }

    fn det_bareiss(&self) -> T {
        let n = self.rows;
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n {
            if a.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.at(r, k).is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            let pivot = a.at(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot.mul(a.at(i, j)).sub(&a.at(i, k).mul(a.at(k, j)));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, T::zero());
            }
            prev = pivot;
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign_flip { d.neg() } else { d }
    }
}

/// Position of the norm-minimal nonzero entry of the trailing submatrix
/// starting at `(t, t)`, scanning row-major so ties are broken by position.
fn min_norm_pivot<R: EuclideanRing>(a: &Mat<R>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            let n = v.norm();
            if best.as_ref().map_or(true, |(bn, _, _)| n < *bn) {
                best = Some((n, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Diagonal of the Smith normal form, with the divisibility chain enforced
/// and every entry replaced by its canonical associate.  Square matrices are
/// first split along support components, so block-diagonal inputs reduce
/// block by block.
pub fn smith_invariant_factors<R: EuclideanRing>(m: &Mat<R>) -> Vec<R> {
    let steps = m.rows().min(m.cols());
    let mut diag: Vec<R> = Vec::with_capacity(steps);
    if m.is_square() {
        for comp in m.support_components() {
            let sub = Mat::from_fn(comp.len(), comp.len(), |i, j| m.at(comp[i], comp[j]).clone());
            diag.extend(smith_diagonal(&sub));
        }
    } else {
        diag = smith_diagonal(m);
    }
    while diag.len() < steps {
        diag.push(R::zero());
    }
    // Enforce d_i | d_{i+1} by replacing offending pairs with (gcd, lcm).
    loop {
        let mut changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[i].is_zero() {
                    diag.swap(i, j);
                    changed = !diag[i].is_zero() || changed;
                    continue;
                }
                if diag[j].div_exact(&diag[i]).is_some() {
                    continue;
                }
                let g = euclid_gcd(&diag[i], &diag[j]);
                let l = diag[i]
                    .mul(&diag[j])
                    .div_exact(&g)
                    .expect("gcd divides product");
                diag[i] = g;
                diag[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    diag.iter().map(|d| d.canonical_associate()).collect()
}

/// Diagonalization core: the unsorted, unnormalized Smith diagonal of one
/// matrix, padded with zeros to `min(rows, cols)`.
fn smith_diagonal<R: EuclideanRing>(m: &Mat<R>) -> Vec<R> {
    let mut a = m.clone();
    let steps = a.rows().min(a.cols());
    let mut diag: Vec<R> = Vec::with_capacity(steps);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = min_norm_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            // Clear the pivot column.
            let mut dirty = false;
            for i in t + 1..a.rows() {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.at(i, t).div_rem(a.at(t, t));
                for j in t..a.cols() {
                    let v = a.at(i, j).sub(&q.mul(a.at(t, j)));
                    a.set(i, j, v);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder of smaller norm appeared; make it the pivot.
                let (pi, pj) = min_norm_pivot(&a, t).expect("nonzero entry remains");
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            // Clear the pivot row.
            for j in t + 1..a.cols() {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.at(t, j).div_rem(a.at(t, t));
                for i in t..a.rows() {
                    let v = a.at(i, j).sub(&q.mul(a.at(i, t)));
                    a.set(i, j, v);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_norm_pivot(&a, t).expect("nonzero entry remains");
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            break;
        }
        diag.push(a.at(t, t).clone());
        t += 1;
    }
    // Pad with explicit zeros for rank-deficient square-ish shapes.
    while diag.len() < steps {
        diag.push(R::zero());
    }
    diag
}

fn euclid_gcd<R: EuclideanRing>(a: &R, b: &R) -> R {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a
}

/// Basis of the kernel `{x : m·x = 0}` over the ring, via column Hermite
/// reduction with a unimodular transform, so the basis generates the full
/// kernel (it is saturated).
pub fn kernel_basis<R: EuclideanRing>(m: &Mat<R>) -> Vec<Vec<R>> {
    let mut a = m.clone();
    let mut v: Mat<R> = Mat::identity(m.cols());
    let mut pivot_row = 0;
    let mut next_col = 0;
    while pivot_row < a.rows() && next_col < a.cols() {
        loop {
            // Norm-minimal nonzero entry of this row among unpivoted columns.
            let mut best: Option<(u64, usize)> = None;
            for j in next_col..a.cols() {
                let x = a.at(pivot_row, j);
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(bn, _)| x.norm() < *bn) {
                    best = Some((x.norm(), j));
                }
            }
            let Some((_, pj)) = best else { break };
            a.swap_cols(next_col, pj);
            v.swap_cols(next_col, pj);
            let mut any_left = false;
            for j in next_col + 1..a.cols() {
                if a.at(pivot_row, j).is_zero() {
                    continue;
                }
                let (q, r) = a.at(pivot_row, j).div_rem(a.at(pivot_row, next_col));
                col_submul(&mut a, j, next_col, &q);
                col_submul(&mut v, j, next_col, &q);
                if !r.is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                next_col += 1;
                break;
            }
        }
        pivot_row += 1;
    }
    let mut basis = Vec::new();
    for j in next_col..a.cols() {
        if (0..a.rows()).all(|i| a.at(i, j).is_zero()) {
            basis.push((0..v.rows()).map(|i| v.at(i, j).clone()).collect());
        }
    }
    basis
}

fn col_submul<R: ExactRing>(m: &mut Mat<R>, target: usize, src: usize, q: &R) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = m.at(i, target).sub(&q.mul(m.at(i, src)));
        m.set(i, target, v);
    }
}

/// Column echelon form retaining only what membership testing needs: the
/// reduced matrix together with `(pivot_row, pivot_col)` pairs in row order.
pub struct ColumnEchelon<R> {
    mat: Mat<R>,
    pivots: Vec<(usize, usize)>,
}

impl<R: EuclideanRing> ColumnEchelon<R> {
    pub fn new(m: &Mat<R>) -> Self {
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut col = 0;
        for row in 0..a.rows() {
            if col >= a.cols() {
                break;
            }
            loop {
                let mut best: Option<(u64, usize)> = None;
                for j in col..a.cols() {
                    let x = a.at(row, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.as_ref().map_or(true, |(bn, _)| x.norm() < *bn) {
                        best = Some((x.norm(), j));
                    }
                }
                let Some((_, pj)) = best else { break };
                a.swap_cols(col, pj);
                let mut any_left = false;
                for j in col + 1..a.cols() {
                    if a.at(row, j).is_zero() {
                        continue;
                    }
                    let (q, r) = a.at(row, j).div_rem(a.at(row, col));
                    col_submul(&mut a, j, col, &q);
                    if !r.is_zero() {
                        any_left = true;
                    }
                }
                if !any_left {
                    pivots.push((row, col));
                    col += 1;
                    break;
                }
            }
        }
        ColumnEchelon { mat: a, pivots }
    }

    /// Whether `v` lies in the column span of the original matrix.
    pub fn contains(&self, v: &[R]) -> bool {
        assert_eq!(v.len(), self.mat.rows());
        let mut v: Vec<R> = v.to_vec();
        for &(r, c) in &self.pivots {
            if v[r].is_zero() {
                continue;
            }
            let Some(q) = v[r].div_exact(self.mat.at(r, c)) else {
                return false;
            };
            for i in 0..v.len() {
                v[i] = v[i].sub(&q.mul(self.mat.at(i, c)));
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn zmat(rows: &[&[i64]]) -> Mat<BigInt> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    #[test]
    fn det_small() {
        assert_eq!(zmat(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
        assert_eq!(zmat(&[&[0, 1], &[-1, 0]]).det(), BigInt::from(1));
        assert_eq!(zmat(&[&[2, 0], &[0, 3]]).det(), BigInt::from(6));
        assert_eq!(zmat(&[&[1, 1], &[1, 1]]).det(), BigInt::from(0));
        assert_eq!(Mat::<BigInt>::identity(0).det(), BigInt::from(1));
    }

    #[test]
    fn det_needs_row_swap() {
        assert_eq!(zmat(&[&[0, 2, 1], &[1, 0, 0], &[0, 0, 3]]).det(), BigInt::from(-6));
    }

    #[test]
    fn det_block_structure() {
        let b = Mat::block_diag(&[zmat(&[&[1, 2], &[3, 4]]), zmat(&[&[5]])]);
        assert_eq!(b.det(), BigInt::from(-10));
    }

    #[test]
    fn det_random_matches_cofactor_expansion() {
        fn cofactor_det(m: &Mat<BigInt>) -> BigInt {
            let n = m.rows();
            if n == 0 {
                return BigInt::from(1);
            }
            let mut acc = BigInt::from(0);
            for j in 0..n {
                if Zero::is_zero(m.at(0, j)) {
                    continue;
                }
                let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
                    m.at(r + 1, if c < j { c } else { c + 1 }).clone()
                });
                let term = m.at(0, j) * cofactor_det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for _ in 0..25 {
            let m = Mat::from_fn(5, 5, |_, _| BigInt::from(next()));
            assert_eq!(m.det(), cofactor_det(&m));
        }
    }

    #[test]
    fn smith_over_integers() {
        // Frozen: diag(2,6,12) has invariant factors (2,6,12); a generic
        // unimodular shuffle must not change them.
        let d = Mat::block_diag(&[zmat(&[&[2]]), zmat(&[&[6]]), zmat(&[&[12]])]);
        assert_eq!(
            smith_invariant_factors(&d),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let m = zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let facs = smith_invariant_factors(&m);
        assert_eq!(facs, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn smith_divisibility_fix() {
        let m = Mat::block_diag(&[zmat(&[&[4]]), zmat(&[&[6]])]);
        let facs = smith_invariant_factors(&m);
        assert_eq!(facs, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn smith_rank_deficient() {
        let m = zmat(&[&[1, 2], &[2, 4]]);
        let facs = smith_invariant_factors(&m);
        assert_eq!(facs, vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn kernel_over_integers() {
        let m = zmat(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for i in 0..m.rows() {
                let mut acc = BigInt::from(0);
                for j in 0..3 {
                    acc += m.at(i, j) * &v[j];
                }
                assert!(Zero::is_zero(&acc));
            }
        }
        // The kernel of [2 -1] over Z is generated by (1, 2): saturation means
        // the basis recovers it, not a multiple.
        let k = kernel_basis(&zmat(&[&[2, -1]]));
        assert_eq!(k.len(), 1);
        assert!(Zero::is_zero(&(k[0][0].clone() * 2 - k[0][1].clone())));
        assert!(k[0][0].abs().is_one());
        assert_eq!(k[0][1].abs(), BigInt::from(2));
    }

    #[test]
    fn membership_over_integers() {
        let m = zmat(&[&[2, 0], &[0, 3]]);
        let ech = ColumnEchelon::new(&m);
        assert!(ech.contains(&[BigInt::from(4), BigInt::from(3)]));
        assert!(!ech.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert!(ech.contains(&[BigInt::from(0), BigInt::from(0)]));
    }

    #[test]
    fn smith_over_polynomials() {
        use crate::ring::Poly;
        // diag(x, x^2) stays (x, x^2); diag(x-1, x+1) becomes (1, x^2-1).
        let x = Poly::x();
        let x2 = &x * &x;
        let d = Mat::block_diag(&[
            Mat::from_rows(vec![vec![x.clone()]]),
            Mat::from_rows(vec![vec![x2.clone()]]),
        ]);
        let facs = smith_invariant_factors(&d);
        assert_eq!(facs.len(), 2);
        assert_eq!(facs[0].monic(), x.monic());
        assert_eq!(facs[1].monic(), x2.monic());

        let a = Poly::from_int_coeffs(&[-1, 1]);
        let b = Poly::from_int_coeffs(&[1, 1]);
        let d2 = Mat::block_diag(&[
            Mat::from_rows(vec![vec![a.clone()]]),
            Mat::from_rows(vec![vec![b.clone()]]),
        ]);
        let facs2 = smith_invariant_factors(&d2);
        assert!(facs2[0].is_unit());
        assert_eq!(facs2[1].monic(), (&a * &b).monic());
    }

    #[test]
    fn adjugate_identity() {
        let mut state = 0xfeed_5eedu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 9) as i64 - 4
        };
        for _ in 0..10 {
            let m = Mat::from_fn(4, 4, |_, _| BigInt::from(next()));
            let adj = m.adjugate();
            let d = m.det();
            let prod = m.matmul(&adj);
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { d.clone() } else { BigInt::from(0) };
                    assert_eq!(*prod.at(i, j), want);
                }
            }
        }
        // 1×1 and 0×0 conventions.
        assert_eq!(*zmat(&[&[7]]).adjugate().at(0, 0), BigInt::from(1));
        assert_eq!(Mat::<BigInt>::identity(0).adjugate().rows(), 0);
    }

    #[test]
    fn smith_block_diagonal_merges_chains() {
        // Components are reduced independently, then the divisibility chain is
        // restored across them.
        let m = Mat::block_diag(&[zmat(&[&[6]]), zmat(&[&[4, 0], &[1, 2]])]);
        let facs = smith_invariant_factors(&m);
        assert_eq!(facs, vec![BigInt::from(1), BigInt::from(2), BigInt::from(24)]);
    }

    #[test]
    fn laurent_euclidean_division() {
        let f = LaurentPoly::from_int_coeffs(-2, &[1, 0, 0, 0, 1]); // t^-2 + t^2
        let g = LaurentPoly::from_int_coeffs(1, &[1, 1]); // t + t^2
        let (q, r) = EuclideanRing::div_rem(&f, &g);
        let back = &(&q * &g) + &r;
        assert_eq!(back, f);
        assert!(r.norm() < g.norm());
    }

    #[test]
    fn rational_matmul() {
        let a = Mat::from_rows(vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(2, 1)]]);
        let b = a.matmul(&a);
        assert_eq!(*b.at(0, 0), rat(1, 4));
        assert_eq!(*b.at(1, 1), rat(4, 1));
    }
}
