//! Finite-dimensional algebras given by structure constants, bimodules over
//! them, and balanced tensor products realized as explicit quotients.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{support, Echelon, Matrix, Quotient, SVec};
use crate::report::Report;

/// A unital associative algebra with basis `e_0..e_{n-1}` and
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra<F: Field> {
    dim: usize,
    table: Vec<SVec<F>>,
    unit: Vec<F>,
}

impl<F: Field> FiniteAlgebra<F> {
    /// Builds an algebra from the flat constants `c[(i * dim + j) * dim + k]`.
    /// Validation of the axioms is left to [`check_algebra`].
    pub fn new(dim: usize, constants: Vec<F>, unit: Vec<F>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "algebra of dimension {dim} needs {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::Shape(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        let table = constants
            .chunks(dim.max(1))
            .take(dim * dim)
            .map(SVec::from_dense)
            .collect();
        Ok(FiniteAlgebra { dim, table, unit })
    }

    /// Builds an algebra from a product rule on basis indices.
    pub fn from_fn(dim: usize, unit: Vec<F>, mut prod: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(SVec::from_dense(&prod(i, j)));
            }
        }
        FiniteAlgebra { dim, table, unit }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Self::from_fn(1, vec![F::one()], |_, _| vec![F::one()])
    }

    /// `k[x]/(x^n - c)` with basis `1, x, .., x^{n-1}`.
    pub fn truncated_polynomial(n: usize, c: F) -> Self {
        let mut unit = vec![F::zero(); n];
        unit[0] = F::one();
        Self::from_fn(n, unit, |i, j| {
            let mut v = vec![F::zero(); n];
            if i + j < n {
                v[i + j] = F::one();
            } else {
                v[i + j - n] = c.clone();
            }
            v
        })
    }

    /// The dual numbers `k[x]/(x^2)`.
    pub fn dual_numbers() -> Self {
        Self::truncated_polynomial(2, F::zero())
    }

    /// The group algebra of the cyclic group of order `n`, basis `g^0..g^{n-1}`.
    pub fn cyclic_group(n: usize) -> Self {
        Self::truncated_polynomial(n, F::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// `e_i e_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &SVec<F> {
        &self.table[i * self.dim + j]
    }

    /// The structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> F {
        self.basis_product(i, j).get(k)
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, a) in support(x) {
            for (j, b) in support(y) {
                let c = a.mul(b);
                self.basis_product(i, j).add_into(&c, &mut out);
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        crate::linalg::unit_dense(self.dim, i)
    }

    /// Left multiplication by `x` as a matrix.
    pub fn left_mul(&self, x: &[F]) -> Matrix<F> {
        Matrix::from_dense_cols(
            self.dim,
            &(0..self.dim)
                .map(|j| self.mul(x, &self.basis(j)))
                .collect::<Vec<_>>(),
        )
    }

    /// Right multiplication by `x` as a matrix.
    pub fn right_mul(&self, x: &[F]) -> Matrix<F> {
        Matrix::from_dense_cols(
            self.dim,
            &(0..self.dim)
                .map(|j| self.mul(&self.basis(j), x))
                .collect::<Vec<_>>(),
        )
    }

    /// The opposite algebra, same basis, reversed product.
    pub fn opposite(&self) -> Self {
        Self::from_fn(self.dim, self.unit.clone(), |i, j| {
            self.basis_product(j, i).to_dense(self.dim)
        })
    }

    /// The tensor product `self ⊗ other` with factorwise product and basis
    /// index `i * dim(other) + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut unit = vec![F::zero(); n * m];
        for (i, a) in support(&self.unit) {
            for (j, b) in support(&other.unit) {
                unit[i * m + j] = a.mul(b);
            }
        }
        Self::from_fn(n * m, unit, |p, q| {
            let (i, j) = (p / m, p % m);
            let (k, l) = (q / m, q % m);
            let mut v = vec![F::zero(); n * m];
            for (a, x) in self.basis_product(i, k).iter() {
                for (b, y) in other.basis_product(j, l).iter() {
                    v[a * m + b] = x.mul(y);
                }
            }
            v
        })
    }

    /// Flat structure constants, the inverse of [`FiniteAlgebra::new`].
    pub fn constants(&self) -> Vec<F> {
        self.table
            .iter()
            .flat_map(|r| r.to_dense(self.dim))
            .collect()
    }
}

/// Checks associativity on every basis triple and two-sidedness of the unit.
pub fn check_algebra<F: Field>(a: &FiniteAlgebra<F>) -> Report {
    let mut r = Report::new();
    r.check("associativity");
    r.check("unit");
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = a.basis_product(i, j).to_dense(n);
            for k in 0..n {
                let lhs = a.mul(&ij, &a.basis(k));
                let rhs = a.mul(&a.basis(i), &a.basis_product(j, k).to_dense(n));
                if lhs != rhs {
                    r.fail(
                        "associativity",
                        format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})"),
                    );
                }
            }
        }
        if a.mul(a.unit(), &a.basis(i)) != a.basis(i) || a.mul(&a.basis(i), a.unit()) != a.basis(i)
        {
            r.fail("unit", format!("1 e{i} or e{i} 1 differs from e{i}"));
        }
    }
    r
}

/// A vector space with commuting left and right actions of two base algebras,
/// given by one matrix per base basis element.
///
/// `left_act[a]` is `m ↦ a·m` and `right_act[b]` is `m ↦ m·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    pub dim: usize,
    pub left_act: Vec<Matrix<F>>,
    pub right_act: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(dim: usize, left_act: Vec<Matrix<F>>, right_act: Vec<Matrix<F>>) -> Result<Self> {
        for m in left_act.iter().chain(&right_act) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Shape(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Bimodule {
            dim,
            left_act,
            right_act,
        })
    }

    /// The algebra acting on itself by left and right multiplication.
    pub fn regular(a: &FiniteAlgebra<F>) -> Self {
        let n = a.dim();
        Bimodule {
            dim: n,
            left_act: (0..n).map(|i| a.left_mul(&a.basis(i))).collect(),
            right_act: (0..n).map(|i| a.right_mul(&a.basis(i))).collect(),
        }
    }

    pub fn left_base_dim(&self) -> usize {
        self.left_act.len()
    }

    pub fn right_base_dim(&self) -> usize {
        self.right_act.len()
    }

    /// `a · m` for an arbitrary base element `a`.
    pub fn act_left(&self, a: &[F], m: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, c) in support(a) {
            let v = self.left_act[i].apply(m);
            crate::linalg::axpy_dense(&mut out, c, &v);
        }
        out
    }

    /// `m · b` for an arbitrary base element `b`.
    pub fn act_right(&self, m: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, c) in support(b) {
            let v = self.right_act[i].apply(m);
            crate::linalg::axpy_dense(&mut out, c, &v);
        }
        out
    }
}

/// Checks that the actions are unital, associative and commute with each other.
pub fn check_bimodule<F: Field>(
    m: &Bimodule<F>,
    left: &FiniteAlgebra<F>,
    right: &FiniteAlgebra<F>,
) -> Report {
    let mut r = Report::new();
    for name in [
        "left-unital",
        "right-unital",
        "left-associative",
        "right-associative",
        "actions-commute",
    ] {
        r.check(name);
    }
    let id = Matrix::identity(m.dim);
    let as_matrix = |acts: &[Matrix<F>], x: &[F]| {
        let mut out = Matrix::zeros(m.dim, m.dim);
        for (i, c) in support(x) {
            out = out.add(&acts[i].scale(c));
        }
        out
    };
    if as_matrix(&m.left_act, left.unit()) != id {
        r.fail("left-unital", "1 · m != m");
    }
    if as_matrix(&m.right_act, right.unit()) != id {
        r.fail("right-unital", "m · 1 != m");
    }
    for a in 0..left.dim() {
        for b in 0..left.dim() {
            let ab = as_matrix(&m.left_act, &left.basis_product(a, b).to_dense(left.dim()));
            if m.left_act[a].compose(&m.left_act[b]) != ab {
                r.fail(
                    "left-associative",
                    format!("(e{a} e{b}) · m != e{a} · (e{b} · m)"),
                );
            }
        }
    }
    for a in 0..right.dim() {
        for b in 0..right.dim() {
            let ab = as_matrix(
                &m.right_act,
                &right.basis_product(a, b).to_dense(right.dim()),
            );
            if m.right_act[b].compose(&m.right_act[a]) != ab {
                r.fail(
                    "right-associative",
                    format!("m · (e{a} e{b}) != (m · e{a}) · e{b}"),
                );
            }
        }
    }
    for a in 0..m.left_base_dim() {
        for b in 0..m.right_base_dim() {
            if m.left_act[a].compose(&m.right_act[b]) != m.right_act[b].compose(&m.left_act[a]) {
                r.fail(
                    "actions-commute",
                    format!("(e{a} · m) · e{b} != e{a} · (m · e{b})"),
                );
            }
        }
    }
    r
}

/// The balanced tensor product `M ⊗_B N`: the quotient of `M ⊗ N` by all
/// `m·b ⊗ n - m ⊗ b·n` on basis triples, with row-major ambient index
/// `i * dim(N) + j`.
#[derive(Clone, Debug)]
pub struct TensorOverBase<F: Field> {
    left_dim: usize,
    right_dim: usize,
    space: Quotient<F>,
}

impl<F: Field> TensorOverBase<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        (self.left_dim, self.right_dim)
    }

    pub fn space(&self) -> &Quotient<F> {
        &self.space
    }

    /// The pair of factor basis indices whose tensor represents basis vector `k`.
    pub fn rep(&self, k: usize) -> (usize, usize) {
        let c = self.space.rep(k);
        (c / self.right_dim, c % self.right_dim)
    }

    /// Coordinates of `e_i ⊗ e_j` in the quotient.
    pub fn proj_pair(&self, i: usize, j: usize) -> &SVec<F> {
        self.space.proj_basis(i * self.right_dim + j)
    }

    /// Coordinates of `x ⊗ y` in the quotient.
    pub fn proj(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        self.proj_into(F::one(), x, y, &mut out);
        out
    }

    /// Adds `c · [x ⊗ y]` into `acc`.
    pub fn proj_into(&self, c: F, x: &[F], y: &[F], acc: &mut [F]) {
        for (i, a) in support(x) {
            let ca = c.mul(a);
            for (j, b) in support(y) {
                self.proj_pair(i, j).add_into(&ca.mul(b), acc);
            }
        }
    }

    /// The map `f ⊗ g` on the quotient, computed on representatives.
    pub fn map_tensor(
        &self,
        target: &TensorOverBase<F>,
        f: &Matrix<F>,
        g: &Matrix<F>,
    ) -> Matrix<F> {
        let cols = (0..self.dim())
            .map(|k| {
                let (i, j) = self.rep(k);
                let mut acc = vec![F::zero(); target.dim()];
                for (a, x) in f.col(i).iter() {
                    for (b, y) in g.col(j).iter() {
                        target.proj_pair(*a, *b).add_into(&x.mul(y), &mut acc);
                    }
                }
                SVec::from_dense(&acc)
            })
            .collect();
        Matrix::from_cols(target.dim(), cols)
    }

    /// Coordinates of an element given as a list of `(coefficient, i, j)` pure basis tensors.
    pub fn proj_terms(&self, terms: &[(F, usize, usize)]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (c, i, j) in terms {
            self.proj_pair(*i, *j).add_into(c, &mut out);
        }
        out
    }

    /// An element as a list of pure basis tensors, read off the representatives.
    pub fn terms(&self, v: &[F]) -> Vec<(F, usize, usize)> {
        support(v)
            .map(|(k, c)| {
                let (i, j) = self.rep(k);
                (c.clone(), i, j)
            })
            .collect()
    }
}

/// `M ⊗_B N` for bimodules with `M` a right and `N` a left module over the same base.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorOverBase<F>> {
    if m.right_base_dim() != n.left_base_dim() {
        return Err(Error::BaseMismatch(format!(
            "right base of dimension {} against left base of dimension {}",
            m.right_base_dim(),
            n.left_base_dim()
        )));
    }
    let (dm, dn) = (m.dim, n.dim);
    let mut rel = Echelon::new(dm * dn);
    for a in 0..m.right_base_dim() {
        let ra = &m.right_act[a];
        let la = &n.left_act[a];
        for i in 0..dm {
            for j in 0..dn {
                let mut pairs = Vec::new();
                for (p, x) in ra.col(i).iter() {
                    pairs.push((p * dn + j, x.clone()));
                }
                for (q, y) in la.col(j).iter() {
                    pairs.push((i * dn + q, y.neg()));
                }
                rel.insert(SVec::from_pairs(pairs));
            }
        }
    }
    Ok(TensorOverBase {
        left_dim: dm,
        right_dim: dn,
        space: Quotient::new(dm * dn, rel),
    })
}

/// The bimodule structure on `M ⊗_B N` from the left action of `M` and the right action of `N`.
pub fn induced_bimodule<F: Field>(
    t: &TensorOverBase<F>,
    m: &Bimodule<F>,
    n: &Bimodule<F>,
) -> Bimodule<F> {
    let id_n = Matrix::identity(n.dim);
    let id_m = Matrix::identity(m.dim);
    Bimodule {
        dim: t.dim(),
        left_act: m
            .left_act
            .iter()
            .map(|a| t.map_tensor(t, a, &id_n))
            .collect(),
        right_act: n
            .right_act
            .iter()
            .map(|b| t.map_tensor(t, &id_m, b))
            .collect(),
    }
}

/// Which actions a morphism is required to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equivariance {
    pub left: bool,
    pub right: bool,
}

/// Checks that `f: source -> target` intertwines the requested actions.
pub fn apply_bimodule_map<F: Field>(
    f: &Matrix<F>,
    source: &Bimodule<F>,
    target: &Bimodule<F>,
    eq: Equivariance,
) -> Result<()> {
    if f.ncols() != source.dim || f.nrows() != target.dim {
        return Err(Error::Shape(format!(
            "map is {}x{}, expected {}x{}",
            f.nrows(),
            f.ncols(),
            target.dim,
            source.dim
        )));
    }
    if eq.left {
        for (a, (sa, ta)) in source.left_act.iter().zip(&target.left_act).enumerate() {
            let lhs = f.compose(sa);
            let rhs = ta.compose(f);
            if let Some(j) = (0..f.ncols()).find(|&j| lhs.col(j) != rhs.col(j)) {
                return Err(Error::Equivariance(format!(
                    "left action of e{a} on basis vector {j}"
                )));
            }
        }
    }
    if eq.right {
        for (b, (sb, tb)) in source.right_act.iter().zip(&target.right_act).enumerate() {
            let lhs = f.compose(sb);
            let rhs = tb.compose(f);
            if let Some(j) = (0..f.ncols()).find(|&j| lhs.col(j) != rhs.col(j)) {
                return Err(Error::Equivariance(format!(
                    "right action of e{b} on basis vector {j}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn small_algebras_pass() {
        assert!(check_algebra(&FiniteAlgebra::<Q>::ground()).is_ok());
        assert!(check_algebra(&FiniteAlgebra::<Q>::dual_numbers()).is_ok());
        assert!(check_algebra(&FiniteAlgebra::<Q>::cyclic_group(2)).is_ok());
        assert!(check_algebra(&FiniteAlgebra::<Q>::dual_numbers().opposite()).is_ok());
    }

    #[test]
    fn dual_numbers_table() {
        let a = FiniteAlgebra::<Q>::dual_numbers();
        assert_eq!(a.constant(1, 1, 0), q(0));
        assert_eq!(a.constant(1, 1, 1), q(0));
        assert_eq!(a.constant(0, 1, 1), q(1));
        assert_eq!(FiniteAlgebra::<Q>::cyclic_group(2).constant(1, 1, 0), q(1));
    }

    #[test]
    fn inconsistent_constants_are_named() {
        // Basis (1, x, y) with x x = x, x y = y, y x = 0 and y y = x:
        // (y y) y = x y = y while y (y y) = y x = 0.
        let unit = vec![q(1), q(0), q(0)];
        let a = FiniteAlgebra::from_fn(3, unit, |i, j| {
            let mut v = vec![q(0); 3];
            match (i, j) {
                (0, k) | (k, 0) => v[k] = q(1),
                (1, 1) => v[1] = q(1),
                (1, 2) => v[2] = q(1),
                (2, 2) => v[1] = q(1),
                _ => {}
            }
            v
        });
        let r = check_algebra(&a);
        assert!(!r.is_ok());
        assert_eq!(r.failed_axioms(), vec!["associativity"]);
        assert!(r.failures[0].witness.contains("e"));
    }

    #[test]
    fn tensor_over_unit_object() {
        let a = FiniteAlgebra::<Q>::dual_numbers();
        let reg = Bimodule::regular(&a);
        let t = tensor_over(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        let k = FiniteAlgebra::<Q>::ground();
        let kk = Bimodule::regular(&k);
        assert_eq!(tensor_over(&kk, &kk).unwrap().dim(), 1);
    }

    #[test]
    fn tensor_over_rejects_base_mismatch() {
        let a = Bimodule::regular(&FiniteAlgebra::<Q>::dual_numbers());
        let k = Bimodule::regular(&FiniteAlgebra::<Q>::ground());
        assert!(matches!(tensor_over(&a, &k), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn multiplication_is_balanced() {
        let a = FiniteAlgebra::<Q>::dual_numbers();
        let reg = Bimodule::regular(&a);
        // Multiplication A ⊗ A -> A on the ambient tensor space.
        let cols: Vec<Vec<Q>> = (0..4)
            .map(|c| a.basis_product(c / 2, c % 2).to_dense(2))
            .collect();
        let mult = Matrix::from_dense_cols(2, &cols);
        let t = tensor_over(&reg, &reg).unwrap();
        assert!(t
            .space()
            .relations()
            .basis()
            .iter()
            .all(|r| mult.apply_sparse(r).is_zero()));
        let id = Matrix::identity(2);
        let both = Equivariance {
            left: true,
            right: true,
        };
        assert!(apply_bimodule_map(&id, &reg, &reg, both).is_ok());
        assert!(apply_bimodule_map(&Matrix::zeros(2, 2), &reg, &reg, both).is_ok());
    }

    #[test]
    fn induced_bimodule_is_valid() {
        let a = FiniteAlgebra::<Q>::dual_numbers();
        let reg = Bimodule::regular(&a);
        let t = tensor_over(&reg, &reg).unwrap();
        let b = induced_bimodule(&t, &reg, &reg);
        assert!(check_bimodule(&b, &a, &a).is_ok());
        assert!(check_bimodule(&reg, &a, &a).is_ok());
    }
}
