//! Left modules over a left bialgebroid and their monoidal product `⊗_A`.

use crate::algebra::{tensor_over, Bimodule, TensorOverBase};
use crate::bialgebroid::LeftBialgebroid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_dense, support, Matrix, SVec};
use crate::report::Report;

/// A left `U`-module given by the action matrix of every basis element of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UModule<F: Field> {
    pub dim: usize,
    pub act: Vec<Matrix<F>>,
}

impl<F: Field> UModule<F> {
    pub fn new(b: &LeftBialgebroid<F>, dim: usize, act: Vec<Matrix<F>>) -> Result<Self> {
        if act.len() != b.dim_u() || act.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Shape(format!(
                "a module of dimension {dim} needs {} square action matrices",
                b.dim_u()
            )));
        }
        Ok(UModule { dim, act })
    }

    /// `U` acting on itself by left multiplication.
    pub fn regular(b: &LeftBialgebroid<F>) -> Self {
        let u = b.total();
        UModule {
            dim: u.dim(),
            act: (0..u.dim()).map(|i| u.left_mul(&u.basis(i))).collect(),
        }
    }

    /// The zero module.
    pub fn zero(b: &LeftBialgebroid<F>) -> Self {
        UModule {
            dim: 0,
            act: vec![Matrix::zeros(0, 0); b.dim_u()],
        }
    }

    /// The action matrix of an arbitrary element `u`.
    pub fn matrix_of(&self, u: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, c) in support(u) {
            out = out.add(&self.act[i].scale(c));
        }
        out
    }

    pub fn act(&self, u: &[F], m: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, c) in support(u) {
            let v = self.act[i].apply(m);
            axpy_dense(&mut out, c, &v);
        }
        out
    }

    pub fn act_basis(&self, u: usize, m: &[F]) -> Vec<F> {
        self.act[u].apply(m)
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        crate::linalg::unit_dense(self.dim, i)
    }

    pub fn zero_vec(&self) -> Vec<F> {
        vec![F::zero(); self.dim]
    }

    /// The underlying bimodule `a ⊳ m ⊲ b = s(a) t(b) m`.
    pub fn bimodule(&self, b: &LeftBialgebroid<F>) -> Bimodule<F> {
        Bimodule {
            dim: self.dim,
            left_act: (0..b.dim_a())
                .map(|a| self.matrix_of(b.s_basis(a)))
                .collect(),
            right_act: (0..b.dim_a())
                .map(|a| self.matrix_of(b.t_basis(a)))
                .collect(),
        }
    }

    /// `M ⊕ N` with the block-diagonal action.
    pub fn direct_sum(&self, other: &Self) -> Self {
        UModule {
            dim: self.dim + other.dim,
            act: self
                .act
                .iter()
                .zip(&other.act)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// The submodule spanned by the (independent) columns of `basis`, if it is invariant.
    pub fn restrict(&self, basis: &Matrix<F>) -> Option<Self> {
        let mut act = Vec::with_capacity(self.act.len());
        for a in &self.act {
            let mut cols = Vec::with_capacity(basis.ncols());
            for j in 0..basis.ncols() {
                let img = a.apply_sparse(basis.col(j)).to_dense(self.dim);
                cols.push(SVec::from_dense(&crate::linalg::solve(basis, &img)?));
            }
            act.push(Matrix::from_cols(basis.ncols(), cols));
        }
        Some(UModule {
            dim: basis.ncols(),
            act,
        })
    }
}

/// Unitality and associativity of the action on all basis pairs.
pub fn check_umodule<F: Field>(b: &LeftBialgebroid<F>, m: &UModule<F>) -> Report {
    let mut r = Report::new();
    r.expect(
        "module-unital",
        m.matrix_of(&b.one()) == Matrix::identity(m.dim),
        || "1 · m != m".into(),
    );
    let n = b.dim_u();
    for u in 0..n {
        for v in 0..n {
            let uv = m.matrix_of(&b.total().basis_product(u, v).to_dense(n));
            r.expect(
                "module-associative",
                m.act[u].compose(&m.act[v]) == uv,
                || format!("(e{u} e{v}) · m != e{u} · (e{v} · m)"),
            );
        }
    }
    r
}

/// Checks that `f: source -> target` is `U`-linear, naming the first offending basis pair.
pub fn check_u_linear<F: Field>(
    f: &Matrix<F>,
    source: &UModule<F>,
    target: &UModule<F>,
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
    for (u, (sa, ta)) in source.act.iter().zip(&target.act).enumerate() {
        let lhs = f.compose(sa);
        let rhs = ta.compose(f);
        if let Some(j) = (0..f.ncols()).find(|&j| lhs.col(j) != rhs.col(j)) {
            return Err(Error::Equivariance(format!(
                "basis element e{u} of U on basis vector {j}"
            )));
        }
    }
    Ok(())
}

/// `M ⊗_A N` with relations `t(a) m ⊗ n = m ⊗ s(a) n` and the diagonal action
/// `u (m ⊗ n) = u₍₁₎ m ⊗ u₍₂₎ n`.
#[derive(Clone, Debug)]
pub struct TensorModule<F: Field> {
    pub space: TensorOverBase<F>,
    pub module: UModule<F>,
}

impl<F: Field> TensorModule<F> {
    pub fn new(b: &LeftBialgebroid<F>, m: &UModule<F>, n: &UModule<F>) -> Self {
        let space = tensor_over(&m.bimodule(b), &n.bimodule(b))
            .expect("both sides are modules over the same base");
        let act = (0..b.dim_u())
            .map(|u| {
                let cols = (0..space.dim())
                    .map(|k| {
                        let (i, j) = space.rep(k);
                        let mut acc = vec![F::zero(); space.dim()];
                        for (c, p, q) in b.legs_basis(u) {
                            for (x, a) in m.act[*p].col(i).iter() {
                                for (y, bb) in n.act[*q].col(j).iter() {
                                    space
                                        .proj_pair(*x, *y)
                                        .add_into(&c.mul(a).mul(bb), &mut acc);
                                }
                            }
                        }
                        SVec::from_dense(&acc)
                    })
                    .collect();
                Matrix::from_cols(space.dim(), cols)
            })
            .collect();
        let dim = space.dim();
        TensorModule {
            space,
            module: UModule { dim, act },
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rep(&self, k: usize) -> (usize, usize) {
        self.space.rep(k)
    }

    pub fn proj(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.space.proj(x, y)
    }

    pub fn proj_pair(&self, i: usize, j: usize) -> &SVec<F> {
        self.space.proj_pair(i, j)
    }

    pub fn proj_into(&self, c: F, x: &[F], y: &[F], acc: &mut [F]) {
        self.space.proj_into(c, x, y, acc)
    }

    /// `f ⊗_A g` computed on representatives.
    pub fn map(&self, target: &TensorModule<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        self.space.map_tensor(&target.space, f, g)
    }
}
