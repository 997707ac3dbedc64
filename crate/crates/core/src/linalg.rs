//! Sparse exact linear algebra: vectors, matrices, echelon subspaces and quotients.
//!
//! Matrices are stored column by column, each column being the image of a basis
//! vector. The semantics is that of an ordinary dense matrix.

use std::fmt;

use crate::field::Field;

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SVec<F> {
    pub fn new() -> Self {
        SVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SVec {
            entries: vec![(i, F::one())],
        }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds a vector from unsorted pairs, summing repeated indices.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => y.add_assign(&x),
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SVec { entries }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut v = vec![F::zero(); n];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|p| p.0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(c, y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg(), other)
    }

    pub fn dot_dense(&self, v: &[F]) -> F {
        let mut s = F::zero();
        for (i, x) in &self.entries {
            s.add_mul(x, &v[*i]);
        }
        s
    }

    /// Adds `c * self` into the dense accumulator `acc`.
    pub fn add_into(&self, c: &F, acc: &mut [F]) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &self.entries {
            acc[*i].add_mul(c, x);
        }
    }

    /// Moves every entry up by `offset` positions.
    pub fn shift(&self, offset: usize) -> Self {
        SVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (i + offset, x.clone()))
                .collect(),
        }
    }
}

impl<F: Field> fmt::Debug for SVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, x)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {x}")?;
        }
        write!(f, "}}")
    }
}

/// Adds `c * x` to the dense vector `acc`.
pub fn axpy_dense<F: Field>(acc: &mut [F], c: &F, x: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            a.add_mul(c, b);
        }
    }
}

pub fn is_zero_dense<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit_dense<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn scale_dense<F: Field>(v: &[F], c: &F) -> Vec<F> {
    v.iter().map(|x| x.mul(c)).collect()
}

pub fn sub_dense<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn add_dense<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Nonzero entries of a dense vector as `(index, value)` pairs.
pub fn support<F: Field>(v: &[F]) -> impl Iterator<Item = (usize, &F)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}

/// A linear map `F^cols -> F^rows`, stored as the list of its column images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: Vec<SVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols: vec![SVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: (0..n).map(SVec::unit).collect(),
        }
    }

    pub fn from_cols(rows: usize, cols: Vec<SVec<F>>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.entries.last().is_none_or(|e| e.0 < rows)));
        Matrix { rows, cols }
    }

    pub fn from_dense_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        Matrix {
            rows,
            cols: cols.iter().map(|c| SVec::from_dense(c)).collect(),
        }
    }

    /// Builds a matrix from a dense row-major grid. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<F>], cols: usize) -> Self {
        let mut pairs: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    pairs[j].push((i, x.clone()));
                }
            }
        }
        Matrix {
            rows: rows.len(),
            cols: pairs.into_iter().map(|p| SVec { entries: p }).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(&dense, cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec<F>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn set_col(&mut self, j: usize, c: SVec<F>) {
        self.cols[j] = c;
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    /// The rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SVec<F>> {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[*i].push((j, x.clone()));
            }
        }
        rows.into_iter().map(|e| SVec { entries: e }).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix {
            rows: self.ncols(),
            cols: self.row_vectors(),
        }
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols(), "dimension mismatch in apply");
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.cols[j].add_into(x, &mut out);
            }
        }
        out
    }

    pub fn apply_sparse(&self, v: &SVec<F>) -> SVec<F> {
        let mut pairs = Vec::new();
        for (j, x) in v.iter() {
            for (i, y) in self.cols[*j].iter() {
                pairs.push((*i, x.mul(y)));
            }
        }
        SVec::from_pairs(pairs)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch in compose");
        Matrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply_sparse(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Matrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Matrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.rows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Block matrix `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix {
            rows: self.rows,
            cols,
        }
    }

    /// Block matrix with `self` on top of `other`.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.ncols());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut e = a.entries.clone();
                e.extend(b.entries.iter().map(|(i, x)| (i + self.rows, x.clone())));
                SVec { entries: e }
            })
            .collect();
        Matrix {
            rows: self.rows + other.rows,
            cols,
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut cols: Vec<SVec<F>> = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.shift(self.rows)));
        Matrix {
            rows: self.rows + other.rows,
            cols,
        }
    }

    /// The Kronecker product, with row-major index `i * other + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                let mut e = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        e.push((i * other.rows + k, x.mul(y)));
                    }
                }
                cols.push(SVec { entries: e });
            }
        }
        Matrix {
            rows: self.rows * other.rows,
            cols,
        }
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.ncols() == other.ncols(),
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.ncols(),
            other.rows,
            other.ncols()
        );
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.ncols())?;
        for r in self.to_dense_rows() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `F^n` held in reduced row-echelon form.
///
/// Rows are normalized (pivot entry 1) and every pivot column is zero in all
/// other rows, so two subspaces are equal exactly when their sorted rows agree.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ambient: usize,
    rows: Vec<SVec<F>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            rows: Vec::new(),
            pivot_row: vec![None; ambient],
        }
    }

    pub fn from_vectors(ambient: usize, vs: impl IntoIterator<Item = SVec<F>>) -> Self {
        let mut e = Self::new(ambient);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SVec<F>) -> SVec<F> {
        let mut out = v.clone();
        for (c, x) in v.iter() {
            if let Some(r) = self.pivot_row[*c] {
                out = out.axpy(&x.neg(), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: SVec<F>) -> bool {
        let w = self.reduce(&v);
        let Some(p) = w.leading() else { return false };
        let inv = w.get(p).inv().expect("leading entry is nonzero");
        let w = w.scale(&inv);
        for row in self.rows.iter_mut() {
            let x = row.get(p);
            if !x.is_zero() {
                *row = row.axpy(&x.neg(), &w);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(w);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.leading().unwrap()).collect();
        p.sort_unstable();
        p
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// The row whose pivot sits in column `c`.
    pub fn pivot_row(&self, c: usize) -> Option<&SVec<F>> {
        self.pivot_row[c].map(|r| &self.rows[r])
    }

    /// Rows sorted by pivot column: the canonical basis.
    pub fn basis(&self) -> Vec<SVec<F>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.leading());
        rows
    }

    /// Coordinates of `v` with respect to [`Echelon::basis`], if `v` lies in the span.
    pub fn coordinates(&self, v: &SVec<F>) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v.get(p)).collect())
    }

    pub fn is_subspace_of(&self, other: &Echelon<F>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_span(&self, other: &Echelon<F>) -> bool {
        self.ambient == other.ambient && self.basis() == other.basis()
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_cols(self.ambient, self.basis()).transpose()
    }
}

/// A subspace in canonical form, as produced by [`kernel`].
pub type Subspace<F> = Echelon<F>;

/// Reduced row-echelon form of `m`, padded with zero rows to the original shape.
pub fn rref<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let e = Echelon::from_vectors(m.ncols(), m.row_vectors());
    let mut rows: Vec<Vec<F>> = e.basis().iter().map(|r| r.to_dense(m.ncols())).collect();
    while rows.len() < m.nrows() {
        rows.push(vec![F::zero(); m.ncols()]);
    }
    Matrix::from_rows(&rows, m.ncols())
}

/// The null space `{ v : m v = 0 }`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    kernel_of_rows(m.ncols(), m.row_vectors())
}

/// The common null space of a family of sparse row vectors in `F^n`.
pub fn kernel_of_rows<F: Field>(n: usize, rows: impl IntoIterator<Item = SVec<F>>) -> Subspace<F> {
    let e = Echelon::from_vectors(n, rows);
    let mut k = Echelon::new(n);
    for f in (0..n).filter(|&c| !e.is_pivot(c)) {
        let mut pairs = vec![(f, F::one())];
        for r in &e.rows {
            let x = r.get(f);
            if !x.is_zero() {
                pairs.push((r.leading().unwrap(), x.neg()));
            }
        }
        k.insert(SVec::from_pairs(pairs));
    }
    k
}

/// Some `x` with `m x = b`, or `None`.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(b.len(), m.nrows(), "right-hand side has the wrong length");
    let n = m.ncols();
    let rows = m.row_vectors();
    let aug = rows.into_iter().zip(b).map(|(r, x)| {
        let mut e = r.entries;
        if !x.is_zero() {
            e.push((n, x.clone()));
        }
        SVec { entries: e }
    });
    let e = Echelon::from_vectors(n + 1, aug);
    if e.is_pivot(n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for r in &e.rows {
        x[r.leading().unwrap()] = r.get(n);
    }
    Some(x)
}

/// The quotient `F^n / rel`, with basis the non-pivot columns of `rel` in order.
///
/// The representative of quotient basis vector `k` is the ambient basis vector
/// `e_{reps[k]}`; the projection sends a pivot column `c` with echelon row `r` to
/// `-Σ_{j≠c} r_j [e_j]`.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    ambient: usize,
    rel: Echelon<F>,
    reps: Vec<usize>,
    proj_cols: Vec<SVec<F>>,
}

impl<F: Field> Quotient<F> {
    pub fn new(ambient: usize, rel: Echelon<F>) -> Self {
        assert_eq!(
            rel.ambient(),
            ambient,
            "relation subspace lives in the wrong ambient space"
        );
        let mut index = vec![usize::MAX; ambient];
        let mut reps = Vec::new();
        for (c, slot) in index.iter_mut().enumerate() {
            if !rel.is_pivot(c) {
                *slot = reps.len();
                reps.push(c);
            }
        }
        let proj_cols = (0..ambient)
            .map(|c| match rel.pivot_row(c) {
                None => SVec::unit(index[c]),
                Some(r) => SVec::from_pairs(
                    r.iter()
                        .filter(|(j, _)| *j != c)
                        .map(|(j, x)| (index[*j], x.neg()))
                        .collect(),
                ),
            })
            .collect();
        Quotient {
            ambient,
            rel,
            reps,
            proj_cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relations(&self) -> &Echelon<F> {
        &self.rel
    }

    /// Ambient index of the representative of quotient basis vector `k`.
    pub fn rep(&self, k: usize) -> usize {
        self.reps[k]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Quotient coordinates of the ambient basis vector `e_c`.
    pub fn proj_basis(&self, c: usize) -> &SVec<F> {
        &self.proj_cols[c]
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (c, x) in support(v) {
            self.proj_cols[c].add_into(x, &mut out);
        }
        out
    }

    pub fn project_sparse(&self, v: &SVec<F>) -> SVec<F> {
        let mut pairs = Vec::new();
        for (c, x) in v.iter() {
            for (k, y) in self.proj_cols[*c].iter() {
                pairs.push((*k, x.mul(y)));
            }
        }
        SVec::from_pairs(pairs)
    }

    /// The projection as a matrix `ambient -> dim`.
    pub fn projection(&self) -> Matrix<F> {
        Matrix::from_cols(self.dim(), self.proj_cols.clone())
    }

    /// The representatives as a matrix `dim -> ambient`.
    pub fn inclusion(&self) -> Matrix<F> {
        Matrix::from_cols(
            self.ambient,
            self.reps.iter().map(|&c| SVec::unit(c)).collect(),
        )
    }
}

/// The quotient of `F^ambient` by the span of `rel`.
pub fn quotient<F: Field>(ambient: usize, rel: Subspace<F>) -> Quotient<F> {
    Quotient::new(ambient, rel)
}
