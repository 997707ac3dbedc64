//! The bar resolution `Bar_n(U, W) = U ⊗_{A^op} ⋯ ⊗_{A^op} U ⊗_{A^op} W` of a
//! left `U`-module `W` and the cochain complex `Hom_U(Bar_•(U, W), M)`.
//!
//! Each level is the quotient of `U ⊗ Bar_{n-1}` by `u t(a) ⊗ w - u ⊗ t(a) w`.
//! Quotient representatives are pure basis tensors, so every basis vector of
//! `Bar_n` unwinds to a tuple `(u⁰, …, uⁿ, w)` of basis indices. `U` acts by
//! left multiplication on the first factor. The differential is
//! `d = Σ (-1)^i d_i` where `d_i` multiplies slots `i` and `i + 1` and the last
//! face lets `uⁿ` act on `w`; `d` on `Bar_0` is the augmentation `L(u ⊗ w) = u w`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{tensor_over, Bimodule, FiniteAlgebra, TensorOverBase};
use crate::bialgebroid::LeftBialgebroid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_rows, solve, support, Matrix, SVec, Subspace};
use crate::umodule::UModule;

/// Size limits applied when building a bar resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarConfig {
    pub max_degree: usize,
    pub max_dim_u: usize,
    /// Bound on `dim U · dim Bar_{n-1}`, the unreduced size of each level.
    pub max_ambient: usize,
}

impl Default for BarConfig {
    fn default() -> Self {
        BarConfig {
            max_degree: 5,
            max_dim_u: 8,
            max_ambient: 20_000,
        }
    }
}

impl BarConfig {
    pub fn with_max_degree(self, max_degree: usize) -> Self {
        BarConfig { max_degree, ..self }
    }
}

/// Which module the resolution resolves, as recorded on cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    X,
    XX,
}

#[derive(Clone, Debug)]
struct Level<F: Field> {
    space: TensorOverBase<F>,
    act: Vec<Matrix<F>>,
    faces: Vec<Matrix<F>>,
    d: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct BarResolution<F: Field> {
    u: FiniteAlgebra<F>,
    t_right: Vec<Matrix<F>>,
    t_images: Vec<Vec<F>>,
    w: UModule<F>,
    levels: Vec<Level<F>>,
}

/// A `U`-linear map `Bar_n(U, W) → M`, stored on the quotient basis of `Bar_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F: Field> {
    pub degree: usize,
    pub source: Source,
    pub mat: Matrix<F>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(bar: &BarResolution<F>, degree: usize, source: Source, target_dim: usize) -> Self {
        Cochain {
            degree,
            source,
            mat: Matrix::zeros(target_dim, bar.dim(degree)),
        }
    }

    pub fn target_dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding cochains of different degrees"
        );
        Cochain {
            mat: self.mat.add(&other.mat),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "subtracting cochains of different degrees"
        );
        Cochain {
            mat: self.mat.sub(&other.mat),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Cochain {
            mat: self.mat.scale(c),
            ..self.clone()
        }
    }

    /// Postcomposition with a module map `M → M'`.
    pub fn then(&self, f: &Matrix<F>) -> Self {
        Cochain {
            mat: f.compose(&self.mat),
            ..self.clone()
        }
    }
}

impl<F: Field> BarResolution<F> {
    /// Builds `Bar_0, …, Bar_{n_max}` for the module `w`.
    pub fn build(
        b: &LeftBialgebroid<F>,
        w: &UModule<F>,
        n_max: usize,
        cfg: BarConfig,
    ) -> Result<Self> {
        if b.dim_u() > cfg.max_dim_u {
            return Err(Error::Resource(format!(
                "dim U = {} exceeds the cap {}",
                b.dim_u(),
                cfg.max_dim_u
            )));
        }
        if n_max > cfg.max_degree {
            return Err(Error::Resource(format!(
                "bar degree {n_max} exceeds the cap {}",
                cfg.max_degree
            )));
        }
        let u = b.total().clone();
        let t_images: Vec<Vec<F>> = (0..b.dim_a()).map(|a| b.t_basis(a).to_vec()).collect();
        let t_right = t_images.iter().map(|t| u.right_mul(t)).collect();
        let mut bar = BarResolution {
            u,
            t_right,
            t_images,
            w: w.clone(),
            levels: Vec::new(),
        };
        for n in 0..=n_max {
            let ambient = bar.u.dim() * bar.below_dim(n);
            if ambient > cfg.max_ambient {
                return Err(Error::Resource(format!(
                    "Bar_{n} needs an ambient space of dimension {ambient}, above the cap {}",
                    cfg.max_ambient
                )));
            }
            bar.push_level();
        }
        Ok(bar)
    }

    fn below_act(&self, n: usize) -> &[Matrix<F>] {
        if n == 0 {
            &self.w.act
        } else {
            &self.levels[n - 1].act
        }
    }

    fn push_level(&mut self) {
        let n = self.levels.len();
        let du = self.u.dim();
        let prev_dim = self.below_dim(n);
        let prev_act = self.below_act(n);
        let t_on_prev: Vec<Matrix<F>> = self
            .t_images
            .iter()
            .map(|t| matrix_of(prev_act, t, prev_dim))
            .collect();
        let left = Bimodule {
            dim: du,
            left_act: Vec::new(),
            right_act: self.t_right.clone(),
        };
        let right = Bimodule {
            dim: prev_dim,
            left_act: t_on_prev,
            right_act: Vec::new(),
        };
        let space = tensor_over(&left, &right).expect("both sides use the base of U");
        let id_prev = Matrix::identity(prev_dim);
        let act = (0..du)
            .map(|v| space.map_tensor(&space, &self.u.left_mul(&self.u.basis(v)), &id_prev))
            .collect();

        let first = {
            let cols = (0..space.dim())
                .map(|k| {
                    let (u, j) = space.rep(k);
                    prev_act[u].col(j).clone()
                })
                .collect();
            Matrix::from_cols(prev_dim, cols)
        };
        let mut faces = vec![first];
        if n > 0 {
            let id_u = Matrix::identity(du);
            let below = &self.levels[n - 1];
            for face in &self.levels[n - 1].faces {
                faces.push(space.map_tensor(&below.space, &id_u, face));
            }
        }
        let mut d = Matrix::zeros(prev_dim, space.dim());
        for (i, f) in faces.iter().enumerate() {
            d = d.add(&f.scale(&F::sign(i as i64)));
        }
        self.levels.push(Level {
            space,
            act,
            faces,
            d,
        });
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim_u(&self) -> usize {
        self.u.dim()
    }

    /// The resolved module `W = Bar_{-1}`.
    pub fn resolved(&self) -> &UModule<F> {
        &self.w
    }

    pub fn dim(&self, n: usize) -> usize {
        self.levels[n].space.dim()
    }

    /// `dim Bar_{n-1}`, with `Bar_{-1} = W`.
    pub fn below_dim(&self, n: usize) -> usize {
        if n == 0 {
            self.w.dim
        } else {
            self.levels[n - 1].space.dim()
        }
    }

    /// `Bar_n` as a `U`-module.
    pub fn module(&self, n: usize) -> UModule<F> {
        UModule {
            dim: self.dim(n),
            act: self.levels[n].act.clone(),
        }
    }

    /// `Bar_{n-1}` as a `U`-module.
    pub fn below_module(&self, n: usize) -> UModule<F> {
        if n == 0 {
            self.w.clone()
        } else {
            self.module(n - 1)
        }
    }

    pub fn level_space(&self, n: usize) -> &TensorOverBase<F> {
        &self.levels[n].space
    }

    /// The face `d_i: Bar_n → Bar_{n-1}` for `0 ≤ i ≤ n`.
    pub fn face(&self, n: usize, i: usize) -> &Matrix<F> {
        &self.levels[n].faces[i]
    }

    /// The differential `Bar_n → Bar_{n-1}`; for `n = 0` this is `L: Bar_0 → W`.
    pub fn d(&self, n: usize) -> &Matrix<F> {
        &self.levels[n].d
    }

    pub fn augmentation(&self) -> &Matrix<F> {
        self.d(0)
    }

    /// The pure tensor `(u⁰, …, uⁿ, w)` of basis indices representing basis vector `k` of `Bar_n`.
    pub fn rep_tuple(&self, n: usize, k: usize) -> (Vec<usize>, usize) {
        let mut us = Vec::with_capacity(n + 1);
        let mut idx = k;
        for l in (0..=n).rev() {
            let (u, j) = self.levels[l].space.rep(idx);
            us.push(u);
            idx = j;
        }
        (us, idx)
    }

    /// Coordinates of the pure basis tensor `e_{u⁰} ⊗ ⋯ ⊗ e_{uⁿ} ⊗ e_w` in `Bar_n`.
    pub fn pure(&self, us: &[usize], w: usize) -> SVec<F> {
        let mut v: SVec<F> = SVec::unit(w);
        for (l, &u) in us.iter().rev().enumerate() {
            let space = &self.levels[l].space;
            let mut pairs = Vec::new();
            for (k, x) in v.iter() {
                for (m, y) in space.proj_pair(u, *k).iter() {
                    pairs.push((*m, x.mul(y)));
                }
            }
            v = SVec::from_pairs(pairs);
        }
        v
    }

    /// Coordinates of `u⁰ ⊗ ⋯ ⊗ uⁿ ⊗ w` for arbitrary elements.
    pub fn tensor(&self, us: &[&[F]], w: &[F]) -> Vec<F> {
        let mut v = SVec::from_dense(w);
        for (l, u) in us.iter().rev().enumerate() {
            let space = &self.levels[l].space;
            let mut pairs = Vec::new();
            for (p, a) in support(u) {
                for (k, x) in v.iter() {
                    let ax = a.mul(x);
                    for (m, y) in space.proj_pair(p, *k).iter() {
                        pairs.push((*m, ax.mul(y)));
                    }
                }
            }
            v = SVec::from_pairs(pairs);
        }
        v.to_dense(self.dim(us.len() - 1))
    }

    /// `1 ⊗ v` for `v ∈ Bar_{n-1}`, the inclusion of the normalized sub-basis into `Bar_n`.
    pub fn one_tensor(&self, n: usize, v: &SVec<F>) -> SVec<F> {
        let space = &self.levels[n].space;
        let mut pairs = Vec::new();
        for (p, a) in support(self.u.unit()) {
            for (k, x) in v.iter() {
                for (m, y) in space.proj_pair(p, *k).iter() {
                    pairs.push((*m, a.mul(x).mul(y)));
                }
            }
        }
        SVec::from_pairs(pairs)
    }

    /// The action of every `t(e_a)` on `Bar_{n-1}`.
    fn t_on_below(&self, n: usize) -> Vec<Matrix<F>> {
        let act = self.below_act(n);
        self.t_images
            .iter()
            .map(|t| matrix_of(act, t, self.below_dim(n)))
            .collect()
    }

    /// Linear conditions on a normalized matrix `g: Bar_{n-1} → M`, flattened
    /// as `g[r][k] ↦ k · dim M + r`, expressing `g(t(a) w) = t(a) g(w)`.
    fn linearity_rows(&self, n: usize, target: &UModule<F>) -> Vec<SVec<F>> {
        let dm = target.dim;
        let prev = self.below_dim(n);
        let mut rows = Vec::new();
        for (ta, t_target) in self
            .t_on_below(n)
            .iter()
            .zip(self.t_images.iter().map(|t| target.matrix_of(t)))
        {
            for k in 0..prev {
                for r in 0..dm {
                    let mut pairs = Vec::new();
                    for (l, x) in ta.col(k).iter() {
                        pairs.push((l * dm + r, x.clone()));
                    }
                    for s in 0..dm {
                        let y = t_target.get(r, s);
                        if !y.is_zero() {
                            pairs.push((k * dm + s, y.neg()));
                        }
                    }
                    let row = SVec::from_pairs(pairs);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// `Hom_U(Bar_n, M) ≅ Hom_{A^op}(Bar_{n-1}, M)` as a subspace of flattened normalized matrices.
    pub fn cochain_space(&self, n: usize, target: &UModule<F>) -> Subspace<F> {
        kernel_of_rows(
            self.below_dim(n) * target.dim,
            self.linearity_rows(n, target),
        )
    }

    pub fn cochain_space_dim(&self, n: usize, target: &UModule<F>) -> usize {
        self.cochain_space(n, target).rank()
    }

    /// The unique `U`-linear extension `u ⊗ w ↦ u g(w)`, without checking `g`.
    fn extend(&self, n: usize, g: &Matrix<F>, target: &UModule<F>) -> Matrix<F> {
        let space = &self.levels[n].space;
        let cols = (0..space.dim())
            .map(|k| {
                let (u, j) = space.rep(k);
                target.act[u].apply_sparse(g.col(j))
            })
            .collect();
        Matrix::from_cols(target.dim, cols)
    }

    /// `w ↦ c(1 ⊗ w)` on `Bar_{n-1}`.
    pub fn restrict(&self, c: &Cochain<F>) -> Matrix<F> {
        let n = c.degree;
        let cols = (0..self.below_dim(n))
            .map(|k| c.mat.apply_sparse(&self.one_tensor(n, &SVec::unit(k))))
            .collect();
        Matrix::from_cols(c.target_dim(), cols)
    }

    /// Normalized values of `c` flattened as in [`BarResolution::cochain_space`].
    pub fn flatten(&self, c: &Cochain<F>) -> SVec<F> {
        flatten(&self.restrict(c))
    }

    fn unflatten(&self, n: usize, v: &SVec<F>, dm: usize) -> Matrix<F> {
        let mut cols = vec![Vec::new(); self.below_dim(n)];
        for (i, x) in v.iter() {
            cols[i / dm].push((i % dm, x.clone()));
        }
        Matrix::from_cols(dm, cols.into_iter().map(SVec::from_pairs).collect())
    }

    /// The cochain with normalized values `g`, rejecting values that are not `A^op`-linear.
    pub fn cochain_from_normalized(
        &self,
        n: usize,
        g: &Matrix<F>,
        target: &UModule<F>,
        source: Source,
    ) -> Result<Cochain<F>> {
        if g.nrows() != target.dim || g.ncols() != self.below_dim(n) {
            return Err(Error::Shape(format!(
                "normalized values must be {}x{}",
                target.dim,
                self.below_dim(n)
            )));
        }
        for (a, (ta, t_target)) in self
            .t_on_below(n)
            .iter()
            .zip(self.t_images.iter().map(|t| target.matrix_of(t)))
            .enumerate()
        {
            let lhs = g.compose(ta);
            let rhs = t_target.compose(g);
            if let Some(k) = (0..g.ncols()).find(|&k| lhs.col(k) != rhs.col(k)) {
                return Err(Error::Equivariance(format!(
                    "g(t(a{a}) w) != t(a{a}) g(w) at basis vector {k} of Bar_{}",
                    n as isize - 1
                )));
            }
        }
        Ok(Cochain {
            degree: n,
            source,
            mat: self.extend(n, g, target),
        })
    }

    /// The cochain whose flattened normalized values are `v`, assumed to lie in the cochain space.
    pub fn cochain_from_flat(
        &self,
        n: usize,
        v: &SVec<F>,
        target: &UModule<F>,
        source: Source,
    ) -> Cochain<F> {
        Cochain {
            degree: n,
            source,
            mat: self.extend(n, &self.unflatten(n, v, target.dim), target),
        }
    }

    /// A deterministic pseudo-random cochain with small integer coordinates on the
    /// canonical basis of the cochain space.
    pub fn random_cochain(
        &self,
        n: usize,
        target: &UModule<F>,
        source: Source,
        seed: u64,
    ) -> Cochain<F> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = self.cochain_space(n, target);
        let mut v = SVec::new();
        for row in space.basis() {
            let c = F::from_i64(rng.gen_range(-3..=3));
            if !c.is_zero() {
                v = v.axpy(&c, &row);
            }
        }
        self.cochain_from_flat(n, &v, target, source)
    }

    /// `δc = c ∘ d`.
    pub fn delta(&self, c: &Cochain<F>) -> Cochain<F> {
        Cochain {
            degree: c.degree + 1,
            source: c.source,
            mat: c.mat.compose(self.d(c.degree + 1)),
        }
    }

    /// Checks `c(u b) = u c(b)` for every basis element of `U`.
    pub fn check_cochain(&self, c: &Cochain<F>, target: &UModule<F>) -> Result<()> {
        crate::umodule::check_u_linear(&c.mat, &self.module(c.degree), target)
    }

    /// The matrix of `δ: C^n → C^{n+1}` from the canonical basis of `C^n` to
    /// flattened normalized coordinates of `C^{n+1}`.
    pub fn delta_matrix(&self, n: usize, target: &UModule<F>, source: Source) -> Matrix<F> {
        let basis = self.cochain_space(n, target).basis();
        let cols = basis
            .iter()
            .map(|v| self.flatten(&self.delta(&self.cochain_from_flat(n, v, target, source))))
            .collect();
        Matrix::from_cols(self.below_dim(n + 1) * target.dim, cols)
    }

    /// Cocycles in degree `n`, as flattened normalized values.
    pub fn cocycles(&self, n: usize, target: &UModule<F>, source: Source) -> Subspace<F> {
        let basis = self.cochain_space(n, target).basis();
        let dm = self.delta_matrix(n, target, source);
        let k = crate::linalg::kernel(&dm);
        let mut out = Subspace::new(self.below_dim(n) * target.dim);
        for v in k.basis() {
            let mut w = SVec::new();
            for (i, x) in v.iter() {
                w = w.axpy(x, &basis[*i]);
            }
            out.insert(w);
        }
        out
    }

    /// Coboundaries in degree `n`, as flattened normalized values.
    pub fn coboundaries(&self, n: usize, target: &UModule<F>, source: Source) -> Subspace<F> {
        let ambient = self.below_dim(n) * target.dim;
        if n == 0 {
            return Subspace::new(ambient);
        }
        Subspace::from_vectors(
            ambient,
            self.delta_matrix(n - 1, target, source)
                .columns()
                .iter()
                .cloned(),
        )
    }

    /// Some `h` with `δh = c`, if `c` is a coboundary.
    pub fn solve_coboundary(&self, c: &Cochain<F>, target: &UModule<F>) -> Option<Cochain<F>> {
        let n = c.degree;
        if n == 0 {
            return if c.is_zero() { Some(c.clone()) } else { None };
        }
        let basis = self.cochain_space(n - 1, target).basis();
        let dm = self.delta_matrix(n - 1, target, c.source);
        let rhs = self.flatten(c).to_dense(dm.nrows());
        let x = solve(&dm, &rhs)?;
        let mut v = SVec::new();
        for (i, a) in support(&x) {
            v = v.axpy(a, &basis[i]);
        }
        Some(self.cochain_from_flat(n - 1, &v, target, c.source))
    }
}

fn matrix_of<F: Field>(act: &[Matrix<F>], u: &[F], dim: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(dim, dim);
    for (i, c) in support(u) {
        out = out.add(&act[i].scale(c));
    }
    out
}

/// Flattens a matrix column by column: entry `(r, k)` goes to `k · rows + r`.
pub fn flatten<F: Field>(g: &Matrix<F>) -> SVec<F> {
    let dm = g.nrows();
    let mut pairs = Vec::new();
    for k in 0..g.ncols() {
        for (r, x) in g.col(k).iter() {
            pairs.push((k * dm + r, x.clone()));
        }
    }
    SVec::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;
    use crate::bialgebroid::{enveloping, trivial};
    use crate::field::Q;
    use crate::yd::base_module;

    fn dual() -> LeftBialgebroid<Q> {
        enveloping(&FiniteAlgebra::dual_numbers())
    }

    #[test]
    fn ground_field_bar_alternates() {
        let b = trivial::<Q>();
        let k = base_module(&b);
        let bar = BarResolution::build(&b, &k, 4, BarConfig::default()).unwrap();
        for n in 0..=4 {
            assert_eq!(bar.dim(n), 1);
            let expected = if n % 2 == 0 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(1, 1)
            };
            assert_eq!(bar.d(n), &expected, "degree {n}");
        }
    }

    #[test]
    fn enveloping_bar_is_a_resolution() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 4, BarConfig::default()).unwrap();
        assert_eq!(bar.dim(0), 4);
        assert_eq!(bar.dim(3), 32);
        for n in 1..=4 {
            assert!(
                bar.d(n - 1).compose(bar.d(n)).is_zero(),
                "d d != 0 in degree {n}"
            );
        }
        // Exactness: rank d_n + rank d_{n+1} = dim Bar_n, and L is onto.
        assert_eq!(bar.d(0).rank(), 2);
        for n in 0..4 {
            assert_eq!(
                bar.d(n).rank() + bar.d(n + 1).rank(),
                bar.dim(n),
                "homology in degree {n}"
            );
        }
    }

    #[test]
    fn differentials_are_u_linear() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 3, BarConfig::default()).unwrap();
        for n in 0..=3 {
            let d = Cochain {
                degree: n,
                source: Source::X,
                mat: bar.d(n).clone(),
            };
            bar.check_cochain(&d, &bar.below_module(n)).unwrap();
        }
    }

    #[test]
    fn pure_tensors_round_trip() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 2, BarConfig::default()).unwrap();
        for k in 0..bar.dim(2) {
            let (us, w) = bar.rep_tuple(2, k);
            assert_eq!(bar.pure(&us, w), SVec::unit(k));
            let dense: Vec<Vec<Q>> = us.iter().map(|&u| b.basis(u)).collect();
            let refs: Vec<&[Q]> = dense.iter().map(|v| v.as_slice()).collect();
            assert_eq!(
                bar.tensor(&refs, &a.basis(w)),
                crate::linalg::unit_dense(bar.dim(2), k)
            );
        }
    }

    #[test]
    fn caps_are_enforced() {
        let b = dual();
        let a = base_module(&b);
        assert!(matches!(
            BarResolution::build(&b, &a, 6, BarConfig::default()),
            Err(Error::Resource(_))
        ));
        let tight = BarConfig {
            max_ambient: 10,
            ..BarConfig::default()
        };
        assert!(matches!(
            BarResolution::build(&b, &a, 2, tight),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn cochains_round_trip_and_are_linear() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 3, BarConfig::default()).unwrap();
        // Hom_{A^e}(A^e ⊗ A^{⊗n} ⊗ A ... , A) ≅ Hom(A^{⊗n}, A) has dimension 2^(n+1).
        for n in 0..=2 {
            assert_eq!(bar.cochain_space_dim(n, &a), 1 << (n + 1));
        }
        let c = bar.random_cochain(2, &a, Source::X, 7);
        assert_eq!(c, bar.random_cochain(2, &a, Source::X, 7));
        bar.check_cochain(&c, &a).unwrap();
        let g = bar.restrict(&c);
        assert_eq!(
            bar.cochain_from_normalized(2, &g, &a, Source::X).unwrap(),
            c
        );
        let dd = bar.delta(&bar.delta(&bar.random_cochain(1, &a, Source::X, 3)));
        assert!(dd.is_zero());
        let zero = Matrix::zeros(2, bar.below_dim(1));
        assert!(bar
            .cochain_from_normalized(1, &zero, &a, Source::X)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn non_linear_normalized_values_are_rejected() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 1, BarConfig::default()).unwrap();
        let mut g = Matrix::zeros(2, bar.below_dim(1));
        g.set_col(0, SVec::unit(0));
        assert!(matches!(
            bar.cochain_from_normalized(1, &g, &a, Source::X),
            Err(Error::Equivariance(_))
        ));
    }

    #[test]
    fn hochschild_dimensions_of_dual_numbers() {
        let b = dual();
        let a = base_module(&b);
        let bar = BarResolution::build(&b, &a, 4, BarConfig::default()).unwrap();
        let dims: Vec<usize> = (0..4)
            .map(|n| {
                bar.cocycles(n, &a, Source::X).rank() - bar.coboundaries(n, &a, Source::X).rank()
            })
            .collect();
        assert_eq!(dims, vec![2, 1, 1, 1]);
    }
}
