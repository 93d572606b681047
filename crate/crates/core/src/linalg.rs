//! Exact linear algebra over a prime field `F_p`.
//!
//! Every Hom space and every extension group in this crate is a finite
//! dimensional `F_p`-vector space, so everything reduces to row reduction
//! with modular arithmetic. Vectors are plain `Vec<Scalar>` with entries in
//! `0..p`; the field is passed explicitly as an [`Fp`] handle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue in `0..p`.
pub type Scalar = u32;

/// A coordinate vector.
pub type Vector = Vec<Scalar>;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(self, a: Scalar) -> Scalar {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as Scalar
    }

    /// Reduce an arbitrary integer into `0..p`.
    pub fn reduce(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    pub fn add_vec(self, a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn neg_vec(self, a: &[Scalar]) -> Vector {
        a.iter().map(|&x| self.neg(x)).collect()
    }

    pub fn scale_vec(self, c: Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `acc += c * v`
    pub fn axpy(self, acc: &mut [Scalar], c: Scalar, v: &[Scalar]) {
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(c, x));
        }
    }

    /// Iterate over all coefficient tuples of length `k` (p^k of them), in
    /// lexicographic order with the last coordinate varying fastest.
    pub fn tuples(self, k: usize) -> Tuples {
        Tuples {
            p: self.p,
            cur: Some(vec![0; k]),
        }
    }

    /// `p^k`, saturating.
    pub fn count(self, k: usize) -> u64 {
        (self.p as u64).checked_pow(k as u32).unwrap_or(u64::MAX)
    }
}

/// Iterator returned by [`Fp::tuples`].
pub struct Tuples {
    p: u32,
    cur: Option<Vector>,
}

impl Iterator for Tuples {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.p {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat { rows, cols, data }
    }

    /// Build a matrix from its columns (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, fp: Fp, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fp.add(out.get(i, j), fp.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, fp: Fp, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| fp.add(acc, fp.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, fp: Fp, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: fp.add_vec(&self.data, &other.data),
        }
    }

    pub fn sub(&self, fp: Fp, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: fp.sub_vec(&self.data, &other.data),
        }
    }

    pub fn scale(&self, fp: Fp, c: Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: fp.scale_vec(c, &self.data),
        }
    }

    /// Stack matrices with equal column count on top of each other.
    pub fn vstack(cols: usize, parts: &[Mat]) -> Mat {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Mat { rows, cols, data }
    }

    /// Place `block` with its top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j));
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, fp: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = fp.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = fp.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        for j in 0..self.cols {
                            let v = fp.sub(self.get(i, j), fp.mul(f, self.get(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, fp: Fp) -> usize {
        self.clone().rref(fp).len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel(&self, fp: Fp) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = fp.neg(m.get(r, f));
                }
                v
            })
            .collect();
        Subspace::span(fp, self.cols, basis)
    }

    /// Column space, as a subspace of `F_p^rows`.
    pub fn image(&self, fp: Fp) -> Subspace {
        Subspace::span(fp, self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// Solve `self * v = b`: a particular solution (if consistent) plus the kernel.
    pub fn solve(&self, fp: Fp, b: &[Scalar]) -> (Option<Vector>, Subspace) {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal rows");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(fp);
        let kernel = self.kernel(fp);
        if pivots.last() == Some(&self.cols) {
            return (None, kernel);
        }
        let mut v = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.get(r, self.cols);
        }
        (Some(v), kernel)
    }

    /// Two-sided inverse of a square matrix, if any.
    pub fn inverse(&self, fp: Fp) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        aug.put(0, 0, self);
        aug.put(0, n, &Mat::identity(n));
        let pivots = aug.rref(fp);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// A linear subspace of `F_p^ambient`, stored by a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(fp: Fp, ambient: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::zeros(vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector outside ambient space");
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let pivots = m.rref(fp);
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Coordinates of `v` with respect to [`Self::basis`], if `v` lies in the subspace.
    pub fn coords(&self, fp: Fp, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let mut rest = v.to_vec();
        let mut c = Vec::with_capacity(self.basis.len());
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let coef = rest[pc];
            c.push(coef);
            if coef != 0 {
                fp.axpy(&mut rest, fp.neg(coef), b);
            }
        }
        rest.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn contains(&self, fp: Fp, v: &[Scalar]) -> bool {
        self.coords(fp, v).is_some()
    }

    pub fn contains_space(&self, fp: Fp, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(fp, v))
    }

    /// Linear combination of the basis.
    pub fn combine(&self, fp: Fp, coeffs: &[Scalar]) -> Vector {
        let mut v = vec![0; self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            fp.axpy(&mut v, *c, b);
        }
        v
    }

    /// All elements of the subspace (p^dim of them).
    pub fn elements(&self, fp: Fp) -> impl Iterator<Item = Vector> + '_ {
        fp.tuples(self.dim()).map(move |c| self.combine(fp, &c))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, fp: Fp, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(fp, self.ambient, vs))
    }

    pub fn intersection(&self, fp: Fp, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // u in U ∩ W  <=>  u = Σ a_i u_i = Σ b_j w_j; kernel of [U | -W].
        let (k, l) = (self.dim(), other.dim());
        let mut m = Mat::zeros(self.ambient, k + l);
        for (j, u) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, u[i]);
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, k + j, fp.neg(w[i]));
            }
        }
        let ker = m.kernel(fp);
        let vs = ker
            .basis
            .iter()
            .map(|c| self.combine(fp, &c[..k]))
            .collect();
        Ok(Subspace::span(fp, self.ambient, vs))
    }

    /// The quotient `F_p^ambient / self`: a projection matrix whose kernel is
    /// exactly `self`, together with a section (lift) matrix.
    pub fn quotient(&self, fp: Fp) -> QuotientMap {
        // Complete the basis with standard vectors at non-pivot positions.
        let complement: Vec<usize> = (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let mut full = Mat::zeros(self.ambient, self.ambient);
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                full.set(i, j, b[i]);
            }
        }
        for (j, &c) in complement.iter().enumerate() {
            full.set(c, self.dim() + j, 1);
        }
        let inv = full
            .inverse(fp)
            .expect("basis completed by non-pivot columns is invertible");
        let q = complement.len();
        let mut projection = Mat::zeros(q, self.ambient);
        for r in 0..q {
            for c in 0..self.ambient {
                projection.set(r, c, inv.get(self.dim() + r, c));
            }
        }
        let mut section = Mat::zeros(self.ambient, q);
        for (j, &c) in complement.iter().enumerate() {
            section.set(c, j, 1);
        }
        QuotientMap {
            projection,
            section,
        }
    }
}

/// Projection onto a quotient space, with a chosen linear section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMap {
    pub projection: Mat,
    pub section: Mat,
}

/// An affine subspace `particular + directions` of `F_p^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub particular: Vector,
    pub directions: Subspace,
}

impl Affine {
    pub fn count(&self, fp: Fp) -> u64 {
        fp.count(self.directions.dim())
    }

    pub fn elements(&self, fp: Fp) -> impl Iterator<Item = Vector> + '_ {
        self.directions
            .elements(fp)
            .map(move |d| fp.add_vec(&self.particular, &d))
    }
}

/// A linear system whose unknowns come in named blocks, assembled one
/// equation block at a time: `Σ M_k x_{v_k} = rhs`.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    rows: Vec<(Vec<(usize, Mat)>, Vector)>,
}

impl BlockSystem {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut o = 0;
        for d in &dims {
            offsets.push(o);
            o += d;
        }
        BlockSystem {
            dims,
            offsets,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn equation(&mut self, terms: Vec<(usize, Mat)>, rhs: Vector) {
        for (v, m) in &terms {
            assert_eq!(m.cols(), self.dims[*v], "block width");
            assert_eq!(m.rows(), rhs.len(), "block height");
        }
        self.rows.push((terms, rhs));
    }

    fn assemble(&self, fp: Fp) -> (Mat, Vector) {
        let height: usize = self.rows.iter().map(|(_, r)| r.len()).sum();
        let mut m = Mat::zeros(height, self.unknowns());
        let mut rhs = Vec::with_capacity(height);
        let mut r = 0;
        for (terms, b) in &self.rows {
            for (v, block) in terms {
                let c = self.offsets[*v];
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        let x = fp.add(m.get(r + i, c + j), block.get(i, j));
                        m.set(r + i, c + j, x);
                    }
                }
            }
            rhs.extend_from_slice(b);
            r += b.len();
        }
        (m, rhs)
    }

    /// The solution set, or `None` if the system is inconsistent.
    pub fn solve(&self, fp: Fp) -> Option<Affine> {
        let (m, rhs) = self.assemble(fp);
        let (sol, kernel) = m.solve(fp, &rhs);
        sol.map(|particular| Affine {
            particular,
            directions: kernel,
        })
    }

    /// Cut a solution vector into its blocks.
    pub fn split(&self, x: &[Scalar]) -> Vec<Vector> {
        self.offsets
            .iter()
            .zip(&self.dims)
            .map(|(&o, &d)| x[o..o + d].to_vec())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    /// Brute force: all vectors of F_p^n.
    fn all_vectors(fp: Fp, n: usize) -> Vec<Vector> {
        fp.tuples(n).collect()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn inverse_mod_p() {
        let fp = Fp::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(fp.mul(a, fp.inv(a)), 1);
        }
    }

    #[test]
    fn rank_examples() {
        let fp = f2();
        assert_eq!(Mat::zeros(2, 3).rank(fp), 0);
        assert_eq!(Mat::identity(4).rank(fp), 4);
        assert_eq!(Mat::from_rows(2, 2, vec![1, 1, 1, 1]).rank(fp), 1);
    }

    #[test]
    fn kernel_examples() {
        let fp = f2();
        assert_eq!(Mat::identity(3).kernel(fp).dim(), 0);
        assert_eq!(Mat::zeros(2, 2).kernel(fp).dim(), 2);
        let k = Mat::from_rows(1, 2, vec![1, 1]).kernel(fp);
        // oracle: enumerate all 4 vectors of F_2^2
        let expected: Vec<Vector> = all_vectors(fp, 2)
            .into_iter()
            .filter(|v| fp.add(v[0], v[1]) == 0)
            .collect();
        assert_eq!(expected, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(fp, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let fp = f2();
        let (v, k) = Mat::identity(3).solve(fp, &[1, 0, 1]);
        assert_eq!(v, Some(vec![1, 0, 1]));
        assert!(k.is_zero());

        let (v, _) = Mat::zeros(2, 2).solve(fp, &[0, 1]);
        assert_eq!(v, None);

        let (v, k) = Mat::from_rows(1, 2, vec![1, 1]).solve(fp, &[1]);
        assert_eq!(v, Some(vec![1, 0]));
        assert_eq!(k.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn subspace_examples() {
        let fp = f2();
        let full = Subspace::full(3);
        let zero = Subspace::zero(3);
        let q = zero.quotient(fp);
        assert_eq!(q.projection.rank(fp), 3);
        assert!(q.projection.kernel(fp).is_zero());

        let u = Subspace::span(fp, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(u.intersection(fp, &u).unwrap(), u);
        assert_eq!(u.sum(fp, &u).unwrap(), u);
        assert_eq!(full.intersection(fp, &u).unwrap(), u);

        let w = Subspace::span(fp, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersection(fp, &w).unwrap();
        // oracle: enumerate the 8 vectors of F_2^3
        let common: Vec<Vector> = all_vectors(fp, 3)
            .into_iter()
            .filter(|v| u.contains(fp, v) && w.contains(fp, v))
            .collect();
        assert_eq!(common, vec![vec![0, 0, 0], vec![0, 1, 0]]);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(fp, &[0, 1, 0]));
        assert_eq!(u.sum(fp, &w).unwrap().dim(), 3);

        assert!(u.sum(fp, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn quotient_kills_exactly_the_subspace() {
        let fp = Fp::new(3).unwrap();
        let w = Subspace::span(fp, 4, vec![vec![1, 2, 0, 1], vec![0, 1, 1, 0]]);
        let q = w.quotient(fp);
        assert_eq!(q.projection.kernel(fp), w);
        let ps = q.projection.mul(fp, &q.section);
        assert_eq!(ps, Mat::identity(2));
    }

    #[test]
    fn inverse_round_trip() {
        let fp = Fp::new(5).unwrap();
        let m = Mat::from_rows(2, 2, vec![2, 3, 1, 1]);
        let inv = m.inverse(fp).unwrap();
        assert_eq!(m.mul(fp, &inv), Mat::identity(2));
        assert!(Mat::from_rows(2, 2, vec![1, 2, 2, 4]).inverse(fp).is_none());
    }
}
