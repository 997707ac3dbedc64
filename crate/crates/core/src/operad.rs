//! Composition operations on cochains `C^n(U, X, M) = Hom_U(Bar_n(U, X), M)`.
//!
//! Every operation is evaluated on the normalized sub-basis `1 ⊗ Bar_{n-1}` and
//! extended `U`-linearly. Slots are written `u¹, …, uⁿ` with `u⁰ = 1`, so the
//! Sweedler legs `u⁰₍₁₎` and `u⁰₍₂₎` are both `1`. Extension goes through
//! [`BarResolution::cochain_from_normalized`], which rejects normalized values
//! that fail to be `A^op`-linear; an error there means the inputs violate the
//! hypotheses of the formula.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::{BarConfig, BarResolution, Cochain, Source};
use crate::bialgebroid::LeftBialgebroid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_dense, Matrix, SVec};
use crate::report::Report;
use crate::umodule::{TensorModule, UModule};
use crate::yd::{sigma_matrix, tau_matrix, CommutingPair, Comonoid, Monoid};

/// One term of `u¹ ⊗ ⋯ ⊗ uⁿ ↦ Σ c · (u¹₍₁₎, …, uⁿ₍₁₎) ⊗ (u¹₍₂₎, …, uⁿ₍₂₎)`.
type Split<F> = (F, Vec<usize>, Vec<usize>);

fn splits<F: Field>(b: &LeftBialgebroid<F>, us: &[usize]) -> Vec<Split<F>> {
    let mut out = vec![(F::one(), Vec::new(), Vec::new())];
    for &u in us {
        let mut next = Vec::with_capacity(out.len() * b.legs_basis(u).len());
        for (c, first, second) in &out {
            for (d, p, q) in b.legs_basis(u) {
                let mut f = first.clone();
                f.push(*p);
                let mut s = second.clone();
                s.push(*q);
                next.push((c.mul(d), f, s));
            }
        }
        out = next;
    }
    out
}

/// The product of basis elements of `U` in the given order; `1` if empty.
fn product<F: Field>(b: &LeftBialgebroid<F>, idx: &[usize]) -> Vec<F> {
    let mut acc = b.one();
    for &i in idx {
        acc = b.mul(&acc, &b.basis(i));
    }
    acc
}

/// The tuple `(u¹, …, uⁿ, w)` of basis indices behind basis vector `k` of `Bar_{n-1}`.
fn normalized_tuple<F: Field>(bar: &BarResolution<F>, n: usize, k: usize) -> (Vec<usize>, usize) {
    if n == 0 {
        (Vec::new(), k)
    } else {
        bar.rep_tuple(n - 1, k)
    }
}

/// A cochain through its normalized values `g(u¹ ⊗ ⋯ ⊗ uⁿ ⊗ w) = c(1 ⊗ u¹ ⊗ ⋯ ⊗ w)`.
struct Normalized<'a, F: Field> {
    bar: &'a BarResolution<F>,
    g: Matrix<F>,
}

impl<'a, F: Field> Normalized<'a, F> {
    fn new(bar: &'a BarResolution<F>, c: &Cochain<F>) -> Self {
        Normalized {
            bar,
            g: bar.restrict(c),
        }
    }

    fn at(&self, args: &[Vec<F>], w: &[F]) -> Vec<F> {
        if args.is_empty() {
            return self.g.apply(w);
        }
        let refs: Vec<&[F]> = args.iter().map(|a| a.as_slice()).collect();
        self.g.apply(&self.bar.tensor(&refs, w))
    }
}

fn basis_args<F: Field>(b: &LeftBialgebroid<F>, idx: &[usize]) -> Vec<Vec<F>> {
    idx.iter().map(|&i| b.basis(i)).collect()
}

fn columns_to_matrix<F: Field>(rows: usize, cols: Vec<Vec<F>>) -> Matrix<F> {
    Matrix::from_cols(rows, cols.iter().map(|c| SVec::from_dense(c)).collect())
}

/// The structure shared by all cochain operations: the bialgebroid, a commuting
/// pair `(X, Z)`, bar resolutions of `X` and `X ⊗_A X`, and, when `X` is a
/// comonoid and `Z` a monoid, the distinguished cochains `μ`, `𝟙` and `e`.
#[derive(Clone, Debug)]
pub struct OperadContext<F: Field> {
    b: LeftBialgebroid<F>,
    pair: CommutingPair<F>,
    bar_x: BarResolution<F>,
    xx: TensorModule<F>,
    bar_xx: BarResolution<F>,
    distinguished: Option<[Cochain<F>; 3]>,
}

impl<F: Field> OperadContext<F> {
    /// Resolutions up to `max_degree + 1`, so that `δ` is available on cochains of degree `max_degree`.
    pub fn new(b: &LeftBialgebroid<F>, pair: CommutingPair<F>, max_degree: usize) -> Result<Self> {
        let cfg = BarConfig::default()
            .with_max_degree(BarConfig::default().max_degree.max(max_degree + 1));
        Self::with_config(b, pair, max_degree + 1, cfg)
    }

    pub fn with_config(
        b: &LeftBialgebroid<F>,
        pair: CommutingPair<F>,
        bar_degree: usize,
        cfg: BarConfig,
    ) -> Result<Self> {
        let bar_x = BarResolution::build(b, &pair.x.module, bar_degree, cfg)?;
        let xx = TensorModule::new(b, &pair.x.module, &pair.x.module);
        let bar_xx = BarResolution::build(b, &xx.module, bar_degree, cfg)?;
        let mut ctx = OperadContext {
            b: b.clone(),
            pair,
            bar_x,
            xx,
            bar_xx,
            distinguished: None,
        };
        if ctx.pair.x.comonoid.is_some() && ctx.pair.z.monoid.is_some() {
            let mu = ctx.counit_cochain(2)?;
            let unit = ctx.counit_cochain(1)?;
            let e = ctx.counit_cochain(0)?;
            ctx.distinguished = Some([mu, unit, e]);
        }
        Ok(ctx)
    }

    pub fn bialgebroid(&self) -> &LeftBialgebroid<F> {
        &self.b
    }

    pub fn pair(&self) -> &CommutingPair<F> {
        &self.pair
    }

    pub fn x(&self) -> &UModule<F> {
        &self.pair.x.module
    }

    pub fn z(&self) -> &UModule<F> {
        &self.pair.z.module
    }

    /// `X ⊗_A X` with its diagonal action.
    pub fn xx(&self) -> &TensorModule<F> {
        &self.xx
    }

    pub fn bar(&self, source: Source) -> &BarResolution<F> {
        match source {
            Source::X => &self.bar_x,
            Source::XX => &self.bar_xx,
        }
    }

    /// The highest cochain degree on which `δ` can be applied.
    pub fn max_degree(&self) -> usize {
        self.bar_x.max_degree() - 1
    }

    pub fn delta(&self, c: &Cochain<F>) -> Cochain<F> {
        self.bar(c.source).delta(c)
    }

    /// `δ_i c = c ∘ d_i`, the pullback along a single face.
    pub fn face_pullback(&self, c: &Cochain<F>, i: usize) -> Cochain<F> {
        let bar = self.bar(c.source);
        Cochain {
            degree: c.degree + 1,
            source: c.source,
            mat: c.mat.compose(bar.face(c.degree + 1, i)),
        }
    }

    pub fn zero(&self, degree: usize, source: Source, target: &UModule<F>) -> Cochain<F> {
        Cochain::zero(self.bar(source), degree, source, target.dim)
    }

    pub fn random(
        &self,
        degree: usize,
        target: &UModule<F>,
        source: Source,
        seed: u64,
    ) -> Cochain<F> {
        self.bar(source)
            .random_cochain(degree, target, source, seed)
    }

    /// A random cochain into `Z` on `Bar(U, X)`.
    pub fn random_internal(&self, degree: usize, seed: u64) -> Cochain<F> {
        self.random(degree, self.z(), Source::X, seed)
    }

    fn comonoid(&self) -> Result<&Comonoid<F>> {
        self.pair
            .x
            .comonoid
            .as_ref()
            .ok_or_else(|| Error::Shape("X carries no comonoid structure".into()))
    }

    fn monoid(&self) -> Result<&Monoid<F>> {
        self.pair
            .z
            .monoid
            .as_ref()
            .ok_or_else(|| Error::Shape("Z carries no monoid structure".into()))
    }

    /// `(u⁰, …, uⁿ, m) ↦ ε_X(u⁰ ⋯ uⁿ m) ⊳ 1_Z`.
    fn counit_cochain(&self, n: usize) -> Result<Cochain<F>> {
        let co = self.comonoid()?;
        let one_z = self.monoid()?.unit.clone();
        let bar = &self.bar_x;
        let cols = (0..bar.below_dim(n))
            .map(|k| {
                let (us, m) = normalized_tuple(bar, n, k);
                let y = self.x().act(&product(&self.b, &us), &self.x().basis(m));
                self.z().act(&self.b.s(&co.eps(&y)), &one_z)
            })
            .collect();
        bar.cochain_from_normalized(
            n,
            &columns_to_matrix(self.z().dim, cols),
            self.z(),
            Source::X,
        )
    }

    fn distinguished(&self, i: usize) -> Result<&Cochain<F>> {
        self.distinguished
            .as_ref()
            .map(|d| &d[i])
            .ok_or_else(|| Error::Shape("μ, 𝟙 and e need a comonoid on X and a monoid on Z".into()))
    }

    /// The multiplication `μ ∈ O(2)`.
    pub fn mu(&self) -> Result<&Cochain<F>> {
        self.distinguished(0)
    }

    /// The identity `𝟙 ∈ O(1)`.
    pub fn identity(&self) -> Result<&Cochain<F>> {
        self.distinguished(1)
    }

    /// The unit `e ∈ O(0)`.
    pub fn unit(&self) -> Result<&Cochain<F>> {
        self.distinguished(2)
    }

    fn expect_source(c: &Cochain<F>, source: Source, name: &str) -> Result<()> {
        if c.source != source {
            return Err(Error::Shape(format!(
                "{name} must be a cochain on Bar(U, {source:?})"
            )));
        }
        Ok(())
    }

    /// The external cup product `φ_j ∪_⊗ ψ_i`, a cochain on `Bar(U, X ⊗_A X)`
    /// with values in `E ⊗_A F`:
    ///
    /// `(u⁰, …, u^{j+i}, m ⊗ m') ↦ φ(u⁰₍₁₎, …, uʲ₍₁₎, v₍₀₎) ⊗ ψ(u⁰₍₂₎ ⋯ uʲ₍₂₎ v₍₁₎, u^{j+1}₍₁₎, …, u^{j+i}₍₁₎, m)`
    /// with `v = u^{j+1}₍₂₎ ⋯ u^{j+i}₍₂₎ m'`.
    pub fn external_cup(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
        f: &UModule<F>,
    ) -> Result<Cochain<F>> {
        Self::expect_source(phi, Source::X, "φ")?;
        Self::expect_source(psi, Source::X, "ψ")?;
        let (j, i) = (phi.degree, psi.degree);
        let n = j + i;
        self.check_degree(n, Source::XX)?;
        let ef = TensorModule::new(&self.b, e, f);
        let nphi = Normalized::new(&self.bar_x, phi);
        let npsi = Normalized::new(&self.bar_x, psi);
        let rho = &self.pair.x.coaction;
        let x = self.x();
        let cols = (0..self.bar_xx.below_dim(n))
            .map(|k| {
                let (us, w) = normalized_tuple(&self.bar_xx, n, k);
                let (m, m2) = self.xx.rep(w);
                let mut acc = ef.module.zero_vec();
                for (c, first, second) in splits(&self.b, &us) {
                    let v = x.act(&product(&self.b, &second[j..]), &x.basis(m2));
                    let head = product(&self.b, &second[..j]);
                    let psi_val = npsi.at(&basis_args(&self.b, &first[j..]), &x.basis(m));
                    for (d, x0, y) in rho.legs(&v) {
                        let phi_val = nphi.at(&basis_args(&self.b, &first[..j]), &x.basis(x0));
                        let lead = self.b.mul(&head, &self.b.basis(y));
                        ef.proj_into(c.mul(&d), &phi_val, &f.act(&lead, &psi_val), &mut acc);
                    }
                }
                acc
            })
            .collect();
        self.bar_xx.cochain_from_normalized(
            n,
            &columns_to_matrix(ef.dim(), cols),
            &ef.module,
            Source::XX,
        )
    }

    fn check_degree(&self, n: usize, source: Source) -> Result<()> {
        let max = self.bar(source).max_degree();
        if n > max {
            return Err(Error::Resource(format!(
                "degree {n} exceeds the resolved range 0..={max}"
            )));
        }
        Ok(())
    }

    fn check_position(i: usize, p: usize) -> Result<()> {
        if i == 0 || i > p {
            return Err(Error::Position { i, max: p });
        }
        Ok(())
    }

    /// Shared core of the partial compositions: for each term returns the
    /// `φ`-value and the `Z`-part `u⁰₍₂₎ ⋯ u^{i-1}₍₂₎ ζ₍₀₎` with their coefficient,
    /// where `m` is the argument of `φ` and `m'` feeds `ψ` through the coaction.
    #[allow(clippy::too_many_arguments)]
    fn insertion_terms(
        &self,
        nphi: &Normalized<F>,
        npsi: &Normalized<F>,
        i: usize,
        q: usize,
        us: &[usize],
        m: &[F],
        m2: &[F],
        mut emit: impl FnMut(F, Vec<F>, Vec<F>),
    ) {
        let n = us.len();
        let (before, inside, after) = (0..i - 1, i - 1..i - 1 + q, i - 1 + q..n);
        let rho = &self.pair.x.coaction;
        let lam = &self.pair.z.coaction;
        let (x, z) = (self.x(), self.z());
        for (c, first, second) in splits(&self.b, us) {
            let v = x.act(&product(&self.b, &second[after.clone()]), m2);
            let mid = product(&self.b, &second[inside.clone()]);
            let head = product(&self.b, &second[before.clone()]);
            for (d, x0, y) in rho.legs(&v) {
                let zeta = npsi.at(&basis_args(&self.b, &first[inside.clone()]), &x.basis(x0));
                let tail = self.b.mul(&mid, &self.b.basis(y));
                for (e, w, z0) in lam.legs(&zeta) {
                    let slot = self.b.mul(&self.b.basis(w), &tail);
                    let mut args = basis_args(&self.b, &first[before.clone()]);
                    args.push(slot);
                    args.extend(basis_args(&self.b, &first[after.clone()]));
                    let phi_val = nphi.at(&args, m);
                    let z_part = z.act(&head, &z.basis(z0));
                    emit(c.mul(&d).mul(&e), phi_val, z_part);
                }
            }
        }
    }

    /// The partial external composition `φ_j ∘^⊗_i ψ_q` for `1 ≤ i ≤ j`, a
    /// cochain of degree `j + q - 1` on `Bar(U, X ⊗_A X)` with values in `E ⊗_A Z`.
    pub fn external_insert(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
        i: usize,
    ) -> Result<Cochain<F>> {
        Self::expect_source(phi, Source::X, "φ")?;
        Self::expect_source(psi, Source::X, "ψ")?;
        let (j, q) = (phi.degree, psi.degree);
        Self::check_position(i, j)?;
        let n = j + q - 1;
        self.check_degree(n, Source::XX)?;
        let ez = TensorModule::new(&self.b, e, self.z());
        let nphi = Normalized::new(&self.bar_x, phi);
        let npsi = Normalized::new(&self.bar_x, psi);
        let x = self.x();
        let cols = (0..self.bar_xx.below_dim(n))
            .map(|k| {
                let (us, w) = normalized_tuple(&self.bar_xx, n, k);
                let (m, m2) = self.xx.rep(w);
                let mut acc = ez.module.zero_vec();
                self.insertion_terms(
                    &nphi,
                    &npsi,
                    i,
                    q,
                    &us,
                    &x.basis(m),
                    &x.basis(m2),
                    |c, a, zp| ez.proj_into(c, &a, &zp, &mut acc),
                );
                acc
            })
            .collect();
        self.bar_xx.cochain_from_normalized(
            n,
            &columns_to_matrix(ez.dim(), cols),
            &ez.module,
            Source::XX,
        )
    }

    /// The full external composition `φ_j ∘̄^⊗ ψ_q = Σᵢ (-1)^{(i-1)(q-1)} φ_j ∘^⊗_i ψ_q`,
    /// which is zero for `j = 0`. Fails with a degree error when `j = q = 0`.
    pub fn external_gerstenhaber_product(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
    ) -> Result<Cochain<F>> {
        let (j, q) = (phi.degree, psi.degree);
        if j + q == 0 {
            return Err(Error::Degree(
                "the composition of two degree 0 cochains has degree -1".into(),
            ));
        }
        let ez_dim = TensorModule::new(&self.b, e, self.z()).dim();
        let mut out = Cochain::zero(&self.bar_xx, j + q - 1, Source::XX, ez_dim);
        for i in 1..=j {
            let term = self.external_insert(phi, e, psi, i)?;
            out = out.add(&term.scale(&F::sign((i as i64 - 1) * (q as i64 - 1))));
        }
        Ok(out)
    }

    /// The partial composition `φ_p ∘_i ψ_q` on `O(n) = C^n(U, X, Z)` for `1 ≤ i ≤ p`.
    pub fn insert(&self, phi: &Cochain<F>, psi: &Cochain<F>, i: usize) -> Result<Cochain<F>> {
        Self::expect_source(phi, Source::X, "φ")?;
        Self::expect_source(psi, Source::X, "ψ")?;
        let (p, q) = (phi.degree, psi.degree);
        Self::check_position(i, p)?;
        let n = p + q - 1;
        self.check_degree(n, Source::X)?;
        let co = self.comonoid()?;
        let monoid = self.monoid()?;
        let nphi = Normalized::new(&self.bar_x, phi);
        let npsi = Normalized::new(&self.bar_x, psi);
        let x = self.x();
        let cols = (0..self.bar_x.below_dim(n))
            .map(|k| {
                let (us, m) = normalized_tuple(&self.bar_x, n, k);
                let mut acc = self.z().zero_vec();
                for (h, m1, m2) in co.legs_basis(m) {
                    self.insertion_terms(
                        &nphi,
                        &npsi,
                        i,
                        q,
                        &us,
                        &x.basis(*m1),
                        &x.basis(*m2),
                        |c, a, zp| {
                            let prod = monoid.mul(&a, &zp);
                            axpy_dense(&mut acc, &c.mul(h), &prod);
                        },
                    );
                }
                acc
            })
            .collect();
        self.bar_x.cochain_from_normalized(
            n,
            &columns_to_matrix(self.z().dim, cols),
            self.z(),
            Source::X,
        )
    }

    /// The Gerstenhaber product `φ_p ∘̄ ψ_q = Σᵢ (-1)^{(i-1)(q-1)} φ_p ∘_i ψ_q`, zero for `p = 0`.
    /// Fails with a degree error when `p = q = 0`.
    pub fn gerstenhaber_product(&self, phi: &Cochain<F>, psi: &Cochain<F>) -> Result<Cochain<F>> {
        let (p, q) = (phi.degree, psi.degree);
        if p + q == 0 {
            return Err(Error::Degree(
                "the composition of two degree 0 cochains has degree -1".into(),
            ));
        }
        let mut out = Cochain::zero(&self.bar_x, p + q - 1, Source::X, self.z().dim);
        for i in 1..=p {
            let term = self.insert(phi, psi, i)?;
            out = out.add(&term.scale(&F::sign((i as i64 - 1) * (q as i64 - 1))));
        }
        Ok(out)
    }

    /// The bracket `{φ_p, ψ_q} = φ_p ∘̄ ψ_q - (-1)^{(p-1)(q-1)} ψ_q ∘̄ φ_p`.
    pub fn bracket(&self, phi: &Cochain<F>, psi: &Cochain<F>) -> Result<Cochain<F>> {
        let (p, q) = (phi.degree as i64, psi.degree as i64);
        let a = self.gerstenhaber_product(phi, psi)?;
        let b = self.gerstenhaber_product(psi, phi)?;
        Ok(a.sub(&b.scale(&F::sign((p - 1) * (q - 1)))))
    }

    /// The cup product `φ_p ∪ ψ_q = (μ ∘₂ ψ_q) ∘₁ φ_p`.
    pub fn cup(&self, phi: &Cochain<F>, psi: &Cochain<F>) -> Result<Cochain<F>> {
        let inner = self.insert(self.mu()?, psi, 2)?;
        self.insert(&inner, phi, 1)
    }

    /// The cup product from its closed form
    /// `φ(u⁰₍₁₎, …, uᵖ₍₁₎, v₍₀₎) · ψ(u⁰₍₂₎ ⋯ uᵖ₍₂₎ v₍₁₎, u^{p+1}₍₁₎, …, u^{p+q}₍₁₎, m₍₁₎)`
    /// with `v = u^{p+1}₍₂₎ ⋯ u^{p+q}₍₂₎ m₍₂₎`.
    pub fn cup_explicit(&self, phi: &Cochain<F>, psi: &Cochain<F>) -> Result<Cochain<F>> {
        Self::expect_source(phi, Source::X, "φ")?;
        Self::expect_source(psi, Source::X, "ψ")?;
        let (p, q) = (phi.degree, psi.degree);
        let n = p + q;
        self.check_degree(n, Source::X)?;
        let co = self.comonoid()?;
        let monoid = self.monoid()?;
        let nphi = Normalized::new(&self.bar_x, phi);
        let npsi = Normalized::new(&self.bar_x, psi);
        let rho = &self.pair.x.coaction;
        let (x, z) = (self.x(), self.z());
        let cols = (0..self.bar_x.below_dim(n))
            .map(|k| {
                let (us, m) = normalized_tuple(&self.bar_x, n, k);
                let mut acc = z.zero_vec();
                for (h, m1, m2) in co.legs_basis(m) {
                    for (c, first, second) in splits(&self.b, &us) {
                        let v = x.act(&product(&self.b, &second[p..]), &x.basis(*m2));
                        let head = product(&self.b, &second[..p]);
                        let psi_val = npsi.at(&basis_args(&self.b, &first[p..]), &x.basis(*m1));
                        for (d, x0, y) in rho.legs(&v) {
                            let phi_val = nphi.at(&basis_args(&self.b, &first[..p]), &x.basis(x0));
                            let lead = self.b.mul(&head, &self.b.basis(y));
                            let prod = monoid.mul(&phi_val, &z.act(&lead, &psi_val));
                            axpy_dense(&mut acc, &c.mul(h).mul(&d), &prod);
                        }
                    }
                }
                acc
            })
            .collect();
        self.bar_x
            .cochain_from_normalized(n, &columns_to_matrix(z.dim, cols), z, Source::X)
    }

    /// `U^{⊗ n+1} ⊗ f: Bar_n(U, W) → Bar_n(U, X ⊗_A X)` for a `U`-linear `f: W → X ⊗_A X`,
    /// where `W` is the module resolved by `source`.
    fn lift_on_bar(&self, n: usize, source: Source, f: &Matrix<F>) -> Matrix<F> {
        let (from, to) = (self.bar(source), &self.bar_xx);
        let cols = (0..from.dim(n))
            .map(|k| {
                let (us, w) = from.rep_tuple(n, k);
                let fw = f.col(w).to_dense(self.xx.dim());
                let args = basis_args(&self.b, &us);
                let refs: Vec<&[F]> = args.iter().map(|a| a.as_slice()).collect();
                SVec::from_dense(&to.tensor(&refs, &fw))
            })
            .collect();
        Matrix::from_cols(to.dim(n), cols)
    }

    fn lift_on_bar_xx(&self, n: usize, f: &Matrix<F>) -> Matrix<F> {
        self.lift_on_bar(n, Source::XX, f)
    }

    /// The coproduct `Δ_X: X → X ⊗_A X` as a matrix.
    pub fn delta_x(&self) -> Result<Matrix<F>> {
        Ok(self.comonoid()?.matrix())
    }

    /// The multiplication `μ: Z ⊗_A Z → Z` on the given tensor space.
    pub fn mu_z(&self, zz: &TensorModule<F>) -> Result<Matrix<F>> {
        Ok(self.monoid()?.on_tensor(&zz.space))
    }

    /// `U^{⊗ n+1} ⊗ Δ_X: Bar_n(U, X) → Bar_n(U, X ⊗_A X)`.
    pub fn delta_on_bar(&self, n: usize) -> Result<Matrix<F>> {
        let delta = self.delta_x()?;
        Ok(self.lift_on_bar(n, Source::X, &delta))
    }

    /// The braiding `τ_{X,X}: m ⊗ m' ↦ m'₍₀₎ ⊗ m'₍₁₎ m` on `X ⊗_A X`.
    pub fn tau_xx(&self) -> Matrix<F> {
        tau_matrix(self.x(), &self.pair.x, &self.xx.space, &self.xx.space)
    }

    /// `τ_n = U^{⊗ n+1} ⊗ τ_{X,X}` on `Bar_n(U, X ⊗_A X)`.
    pub fn tau_on_bar(&self, n: usize) -> Matrix<F> {
        self.lift_on_bar_xx(n, &self.tau_xx())
    }

    /// The braided cup commutator
    /// `[φ_j, ψ_q] = (φ_j ∪_⊗ ψ_q) ∘ τ_{j+q} - (-1)^{jq} σ ∘ (ψ_q ∪_⊗ φ_j)`
    /// for `φ_j` with values in `E` and `ψ_q` with values in `Z`.
    pub fn braided_cup_commutator(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
    ) -> Result<Cochain<F>> {
        let (j, q) = (phi.degree, psi.degree);
        let first = self.braided_cup_left(phi, e, psi)?;
        let second = self.braided_cup_right(phi, e, psi)?;
        Ok(first.sub(&second.scale(&F::sign((j * q) as i64))))
    }

    /// `(φ_j ∪_⊗ ψ_q) ∘ τ_{j+q}`.
    pub fn braided_cup_left(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
    ) -> Result<Cochain<F>> {
        let c = self.external_cup(phi, e, psi, self.z())?;
        Ok(Cochain {
            mat: c.mat.compose(&self.tau_on_bar(c.degree)),
            ..c
        })
    }

    /// `σ ∘ (ψ_q ∪_⊗ φ_j)` with `σ = σ_{Z,E}: Z ⊗_A E → E ⊗_A Z`.
    pub fn braided_cup_right(
        &self,
        phi: &Cochain<F>,
        e: &UModule<F>,
        psi: &Cochain<F>,
    ) -> Result<Cochain<F>> {
        let c = self.external_cup(psi, self.z(), phi, e)?;
        let ze = TensorModule::new(&self.b, self.z(), e);
        let ez = TensorModule::new(&self.b, e, self.z());
        let sigma = sigma_matrix(&self.pair.z, e, &ze.space, &ez.space);
        Ok(c.then(&sigma))
    }
}

/// Both sides of `(u₍₂₎m)₍₀₎ ⊗ (u₍₂₎m)₍₁₎ ⊗ (u₍₂₎m)₍₂₎ u₍₁₎ = (u₍₁₎m₍₀₎)₍₀₎ ⊗ (u₍₁₎m₍₀₎)₍₁₎ ⊗ u₍₂₎m₍₁₎`
/// in `X ⊗_A U ⊗_A U`, where `m₍₀₎ ⊗ m₍₁₎ ⊗ m₍₂₎ = (ρ ⊗ id) ρ(m)`.
pub fn coaction_reassociation<F: Field>(
    b: &LeftBialgebroid<F>,
    x: &crate::yd::YDLeftRight<F>,
    u: usize,
    m: usize,
) -> (Vec<F>, Vec<F>) {
    let rho = &x.coaction;
    let xu = &rho.space;
    let xuu = TensorModule::new(b, &xu.module, &UModule::regular(b));
    let total = b.total();
    let mut lhs = vec![F::zero(); xuu.dim()];
    for (c, p, q) in b.legs_basis(u) {
        let y = x.module.act_basis(*q, &x.module.basis(m));
        for (d, y0, w) in rho.legs(&y) {
            for (e, y00, v) in rho.legs_basis(y0) {
                let inner = xu.proj_pair(*y00, *v).to_dense(xu.dim());
                let wp = total.basis_product(w, *p).to_dense(b.dim_u());
                xuu.proj_into(c.mul(&d).mul(e), &inner, &wp, &mut lhs);
            }
        }
    }
    let mut rhs = vec![F::zero(); xuu.dim()];
    let moved = xu.module.act_basis(u, &rho.coact(&x.module.basis(m)));
    for (c, i, j) in xu.space.terms(&moved) {
        for (d, i0, v) in rho.legs_basis(i) {
            let inner = xu.proj_pair(*i0, *v).to_dense(xu.dim());
            xuu.proj_into(c.mul(d), &inner, &b.basis(j), &mut rhs);
        }
    }
    (lhs, rhs)
}

/// Checks the coaction reassociation identity on all basis pairs `(u, m)`.
pub fn check_coaction_reassociation<F: Field>(
    b: &LeftBialgebroid<F>,
    x: &crate::yd::YDLeftRight<F>,
) -> Report {
    let mut r = Report::new();
    for u in 0..b.dim_u() {
        for m in 0..x.dim() {
            let (lhs, rhs) = coaction_reassociation(b, x, u, m);
            r.expect("coaction-reassociation", lhs == rhs, || {
                format!("u = e{u}, m = x{m}")
            });
        }
    }
    r
}

/// Random degrees `p ≥ 1` and `q, r ≥ 0` bounded by `cap`, plus seeds for three cochains.
fn sample_triple(rng: &mut ChaCha8Rng, cap: usize) -> ([usize; 3], [u64; 3]) {
    let p = rng.gen_range(1..=cap.max(1));
    let q = rng.gen_range(0..=cap);
    let r = rng.gen_range(0..=cap);
    ([p, q, r], [rng.gen(), rng.gen(), rng.gen()])
}

/// Checks the operad axioms, unitality and the multiplication identities on
/// `trials` random triples `(φ, ψ, χ)` with degrees at most `degree_cap`.
///
/// Each trial draws random positions `i` and `j` and tests the associativity
/// branch they select; the branch that is hit is recorded in the axiom name.
pub fn verify_operad<F: Field>(
    ctx: &OperadContext<F>,
    degree_cap: usize,
    trials: usize,
    seed: u64,
) -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mu, one, e) = match (ctx.mu(), ctx.identity(), ctx.unit()) {
        (Ok(mu), Ok(one), Ok(e)) => (mu, one, e),
        _ => {
            r.fail("multiplication", "no comonoid on X or no monoid on Z");
            return r;
        }
    };
    let fmt_err = |e: Error| e.to_string();
    let eq = |r: &mut Report,
              axiom: &str,
              a: Result<Cochain<F>>,
              b: Result<Cochain<F>>,
              witness: &dyn Fn() -> String| {
        match (a, b) {
            (Ok(a), Ok(b)) => r.expect(axiom, a == b, witness),
            (Err(e), _) | (_, Err(e)) => r.fail(axiom, format!("{}: {}", witness(), fmt_err(e))),
        }
    };

    eq(
        &mut r,
        "mu-associative",
        ctx.insert(mu, mu, 1),
        ctx.insert(mu, mu, 2),
        &|| "μ ∘₁ μ != μ ∘₂ μ".into(),
    );
    eq(
        &mut r,
        "mu-unit-left",
        ctx.insert(mu, e, 1),
        Ok(one.clone()),
        &|| "μ ∘₁ e != 𝟙".into(),
    );
    eq(
        &mut r,
        "mu-unit-right",
        ctx.insert(mu, e, 2),
        Ok(one.clone()),
        &|| "μ ∘₂ e != 𝟙".into(),
    );

    for t in 0..trials {
        let ([p, q, rr], seeds) = sample_triple(&mut rng, degree_cap);
        let phi = ctx.random_internal(p, seeds[0]);
        let psi = ctx.random_internal(q, seeds[1]);
        let chi = ctx.random_internal(rr, seeds[2]);
        let w = |s: &str| format!("trial {t}, degrees ({p}, {q}, {rr}): {s}");

        let i = rng.gen_range(1..=p);
        eq(
            &mut r,
            "identity-right",
            ctx.insert(&phi, one, i),
            Ok(phi.clone()),
            &|| w(&format!("φ ∘{i} 𝟙 != φ")),
        );
        eq(
            &mut r,
            "identity-left",
            ctx.insert(one, &phi, 1),
            Ok(phi.clone()),
            &|| w("𝟙 ∘₁ φ != φ"),
        );

        let outer = p + q - 1;
        if outer == 0 {
            continue;
        }
        let j = rng.gen_range(1..=outer);
        let lhs = ctx
            .insert(&phi, &psi, i)
            .and_then(|c| ctx.insert(&c, &chi, j));
        let (axiom, rhs) = if j < i {
            (
                "operad-associative-before",
                ctx.insert(&phi, &chi, j)
                    .and_then(|c| ctx.insert(&c, &psi, i + rr - 1)),
            )
        } else if j < q + i {
            (
                "operad-associative-nested",
                ctx.insert(&psi, &chi, j - i + 1)
                    .and_then(|c| ctx.insert(&phi, &c, i)),
            )
        } else {
            (
                "operad-associative-after",
                ctx.insert(&phi, &chi, j - q + 1)
                    .and_then(|c| ctx.insert(&c, &psi, i)),
            )
        };
        eq(&mut r, axiom, lhs, rhs, &|| {
            w(&format!("(φ ∘{i} ψ) ∘{j} χ"))
        });
    }
    r
}

/// Checks all three associativity branches on every admissible position pair
/// for the given cochains, rather than a single random pair.
pub fn check_operad_triple<F: Field>(
    ctx: &OperadContext<F>,
    phi: &Cochain<F>,
    psi: &Cochain<F>,
    chi: &Cochain<F>,
) -> Report {
    let mut r = Report::new();
    let (p, q, rr) = (phi.degree, psi.degree, chi.degree);
    for i in 1..=p {
        let Ok(inner) = ctx.insert(phi, psi, i) else {
            r.fail("operad-associative", format!("φ ∘{i} ψ is undefined"));
            continue;
        };
        for j in 1..p + q {
            let lhs = ctx.insert(&inner, chi, j);
            let (axiom, rhs) = if j < i {
                (
                    "operad-associative-before",
                    ctx.insert(phi, chi, j)
                        .and_then(|c| ctx.insert(&c, psi, i + rr - 1)),
                )
            } else if j < q + i {
                (
                    "operad-associative-nested",
                    ctx.insert(psi, chi, j - i + 1)
                        .and_then(|c| ctx.insert(phi, &c, i)),
                )
            } else {
                (
                    "operad-associative-after",
                    ctx.insert(phi, chi, j - q + 1)
                        .and_then(|c| ctx.insert(&c, psi, i)),
                )
            };
            let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
            r.expect(axiom, ok, || {
                format!("degrees ({p}, {q}, {rr}), (φ ∘{i} ψ) ∘{j} χ")
            });
        }
    }
    r
}

/// A column of the normalized values of `c`, for diagnostics.
pub fn normalized_value<F: Field>(ctx: &OperadContext<F>, c: &Cochain<F>, k: usize) -> Vec<F> {
    let bar = ctx.bar(c.source);
    c.mat.apply(
        &bar.one_tensor(c.degree, &SVec::unit(k))
            .to_dense(bar.dim(c.degree)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;
    use crate::bialgebroid::enveloping;
    use crate::field::Q;
    use crate::yd::unit_coefficients;

    fn dual_ctx(max_degree: usize) -> OperadContext<Q> {
        let b = enveloping(&FiniteAlgebra::<Q>::dual_numbers());
        let pair = unit_coefficients(&b).unwrap();
        OperadContext::new(&b, pair, max_degree).unwrap()
    }

    /// For `U = A^e` and `X = Z = A`, the classical multilinear map
    /// `(a¹, …, aⁿ) ↦ φ(1, s(a¹), …, s(aⁿ), 1)` on all basis tuples.
    fn classical(ctx: &OperadContext<Q>, c: &Cochain<Q>) -> Vec<Vec<Q>> {
        let b = ctx.bialgebroid();
        let a = b.base();
        let n = c.degree;
        let norm = Normalized::new(ctx.bar(Source::X), c);
        tuples(a.dim(), n)
            .iter()
            .map(|t| {
                let args: Vec<Vec<Q>> = t.iter().map(|&i| b.s(&a.basis(i))).collect();
                norm.at(&args, a.unit())
            })
            .collect()
    }

    fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn index(d: usize, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * d + i)
    }

    #[test]
    fn multiplication_identities() {
        let ctx = dual_ctx(3);
        let (mu, one, e) = (
            ctx.mu().unwrap(),
            ctx.identity().unwrap(),
            ctx.unit().unwrap(),
        );
        assert_eq!(
            ctx.insert(mu, mu, 1).unwrap(),
            ctx.insert(mu, mu, 2).unwrap()
        );
        assert_eq!(&ctx.insert(mu, e, 1).unwrap(), one);
        assert_eq!(&ctx.insert(mu, e, 2).unwrap(), one);
    }

    #[test]
    fn identity_is_classical_identity() {
        let ctx = dual_ctx(2);
        let one = classical(&ctx, ctx.identity().unwrap());
        for (i, v) in one.iter().enumerate() {
            assert_eq!(v, &ctx.bialgebroid().base().basis(i));
        }
    }

    #[test]
    fn identity_is_two_sided_unit() {
        let ctx = dual_ctx(3);
        let one = ctx.identity().unwrap();
        for p in 1..=3 {
            let phi = ctx.random_internal(p, 10 + p as u64);
            for i in 1..=p {
                assert_eq!(ctx.insert(&phi, one, i).unwrap(), phi);
            }
            assert_eq!(ctx.insert(one, &phi, 1).unwrap(), phi);
        }
    }

    #[test]
    fn insertion_reduces_to_classical_formula() {
        let ctx = dual_ctx(4);
        let a = ctx.bialgebroid().base().clone();
        let d = a.dim();
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (2, 0), (3, 1)] {
            let phi = ctx.random_internal(p, 100 + p as u64);
            let psi = ctx.random_internal(q, 200 + q as u64);
            let (f, g) = (classical(&ctx, &phi), classical(&ctx, &psi));
            for i in 1..=p {
                let got = classical(&ctx, &ctx.insert(&phi, &psi, i).unwrap());
                for t in tuples(d, p + q - 1) {
                    let inner = &g[index(d, &t[i - 1..i - 1 + q])];
                    let mut expected = vec![Q::zero(); d];
                    for (k, c) in inner.iter().enumerate() {
                        let mut outer = t[..i - 1].to_vec();
                        outer.push(k);
                        outer.extend_from_slice(&t[i - 1 + q..]);
                        axpy_dense(&mut expected, c, &f[index(d, &outer)]);
                    }
                    assert_eq!(got[index(d, &t)], expected, "p={p} q={q} i={i} t={t:?}");
                }
            }
        }
    }

    #[test]
    fn cup_reduces_to_classical_formula_and_closed_form() {
        let ctx = dual_ctx(4);
        let a = ctx.bialgebroid().base().clone();
        let d = a.dim();
        for (p, q) in [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 2)] {
            let phi = ctx.random_internal(p, 300 + p as u64);
            let psi = ctx.random_internal(q, 400 + q as u64);
            let cup = ctx.cup(&phi, &psi).unwrap();
            assert_eq!(cup, ctx.cup_explicit(&phi, &psi).unwrap(), "p={p} q={q}");
            let (f, g, h) = (
                classical(&ctx, &phi),
                classical(&ctx, &psi),
                classical(&ctx, &cup),
            );
            for t in tuples(d, p + q) {
                let expected = a.mul(&f[index(d, &t[..p])], &g[index(d, &t[p..])]);
                assert_eq!(h[index(d, &t)], expected);
            }
        }
    }

    #[test]
    fn e_is_a_cup_unit() {
        let ctx = dual_ctx(3);
        let e = ctx.unit().unwrap();
        for p in 0..=2 {
            let phi = ctx.random_internal(p, 500 + p as u64);
            assert_eq!(ctx.cup(e, &phi).unwrap(), phi);
            assert_eq!(ctx.cup(&phi, e).unwrap(), phi);
        }
    }

    #[test]
    fn differential_is_bracket_with_mu() {
        let ctx = dual_ctx(4);
        let mu = ctx.mu().unwrap();
        for p in 0..=3 {
            let phi = ctx.random_internal(p, 600 + p as u64);
            let bracket = ctx.bracket(mu, &phi).unwrap();
            assert_eq!(
                ctx.delta(&phi),
                bracket.scale(&Q::sign(p as i64 + 1)),
                "p={p}"
            );
        }
    }

    #[test]
    fn positions_are_checked() {
        let ctx = dual_ctx(2);
        let phi = ctx.random_internal(1, 1);
        assert!(matches!(
            ctx.insert(&phi, &phi, 0),
            Err(Error::Position { i: 0, max: 1 })
        ));
        assert!(matches!(
            ctx.insert(&phi, &phi, 2),
            Err(Error::Position { i: 2, max: 1 })
        ));
        assert!(matches!(
            ctx.external_insert(&phi, ctx.z(), &phi, 2),
            Err(Error::Position { .. })
        ));
        let zero = ctx.random_internal(0, 1);
        assert!(matches!(
            ctx.gerstenhaber_product(&zero, &zero),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn zero_degree_product_vanishes() {
        let ctx = dual_ctx(2);
        let phi0 = ctx.random_internal(0, 3);
        let psi = ctx.random_internal(2, 4);
        assert!(ctx.gerstenhaber_product(&phi0, &psi).unwrap().is_zero());
        assert!(ctx
            .external_gerstenhaber_product(&phi0, ctx.z(), &psi)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn augmentation_cup_is_braiding() {
        let ctx = dual_ctx(1);
        let x = ctx.x().clone();
        let l = Cochain {
            degree: 0,
            source: Source::X,
            mat: ctx.bar(Source::X).augmentation().clone(),
        };
        let cup = ctx.external_cup(&l, &x, &l, &x).unwrap();
        let expected = ctx.tau_xx().compose(ctx.bar(Source::XX).augmentation());
        assert_eq!(cup.mat, expected);
    }

    #[test]
    fn reassociation_holds_for_unit_coefficients() {
        let ctx = dual_ctx(1);
        assert!(check_coaction_reassociation(ctx.bialgebroid(), &ctx.pair().x).is_ok());
    }

    #[test]
    fn operad_axioms_on_small_triples() {
        let ctx = dual_ctx(4);
        for (p, q, r) in [(1, 1, 1), (2, 1, 0), (2, 0, 2), (1, 2, 1)] {
            let phi = ctx.random_internal(p, 700 + p as u64);
            let psi = ctx.random_internal(q, 800 + q as u64);
            let chi = ctx.random_internal(r, 900 + r as u64);
            let report = check_operad_triple(&ctx, &phi, &psi, &chi);
            assert!(report.is_ok(), "{report}");
        }
    }

    fn regular(ctx: &OperadContext<Q>) -> UModule<Q> {
        UModule::regular(ctx.bialgebroid())
    }

    #[test]
    fn external_cup_is_a_graded_derivation() {
        let ctx = dual_ctx(3);
        let e = regular(&ctx);
        for (j, i) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
            let phi = ctx.random(j, &e, Source::X, 11 + j as u64);
            let psi = ctx.random(i, ctx.z(), Source::X, 13 + i as u64);
            let lhs = ctx.delta(&ctx.external_cup(&phi, &e, &psi, ctx.z()).unwrap());
            let a = ctx
                .external_cup(&ctx.delta(&phi), &e, &psi, ctx.z())
                .unwrap();
            let b = ctx
                .external_cup(&phi, &e, &ctx.delta(&psi), ctx.z())
                .unwrap();
            assert_eq!(lhs, a.add(&b.scale(&Q::sign(j as i64))), "j={j} i={i}");
        }
    }

    #[test]
    fn braided_cup_identities() {
        let ctx = dual_ctx(3);
        let e = regular(&ctx);
        for (j, q) in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 2)] {
            let phi = ctx.random(j, &e, Source::X, 21 + j as u64);
            let psi = ctx.random_internal(q, 23 + q as u64);
            let left = ctx.braided_cup_left(&phi, &e, &psi).unwrap();
            let face_last = ctx.face_pullback(&phi, j + 1);
            assert_eq!(
                left,
                ctx.external_insert(&face_last, &e, &psi, j + 1).unwrap(),
                "first j={j} q={q}"
            );
            let right = ctx.braided_cup_right(&phi, &e, &psi).unwrap();
            let face_first = ctx.face_pullback(&phi, 0);
            assert_eq!(
                right,
                ctx.external_insert(&face_first, &e, &psi, 1).unwrap(),
                "second j={j} q={q}"
            );
        }
    }

    #[test]
    fn homotopy_formula() {
        let ctx = dual_ctx(3);
        let e = regular(&ctx);
        for (j, q) in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (2, 0)] {
            let phi = ctx.random(j, &e, Source::X, 31 + j as u64);
            let psi = ctx.random_internal(q, 37 + q as u64);
            let lhs = ctx
                .braided_cup_commutator(&phi, &e, &psi)
                .unwrap()
                .scale(&Q::sign((q * j) as i64));
            let a = ctx
                .external_gerstenhaber_product(&phi, &e, &ctx.delta(&psi))
                .unwrap();
            let b = if j + q == 0 {
                lhs.scale(&Q::zero())
            } else {
                ctx.delta(&ctx.external_gerstenhaber_product(&phi, &e, &psi).unwrap())
            };
            let c = ctx
                .external_gerstenhaber_product(&ctx.delta(&phi), &e, &psi)
                .unwrap();
            let rhs = a.sub(&b).scale(&Q::sign(q as i64)).sub(&c);
            assert_eq!(lhs, rhs, "j={j} q={q}");
            if j == 0 {
                let c1 = ctx.external_insert(&ctx.delta(&phi), &e, &psi, 1).unwrap();
                assert_eq!(
                    ctx.braided_cup_commutator(&phi, &e, &psi).unwrap(),
                    c1.scale(&Q::one().neg())
                );
            }
        }
    }

    fn group_ctx(commuting: bool) -> (OperadContext<Q>, UModule<Q>) {
        use crate::yd::{YDLeftLeft, YDLeftRight};
        let b = crate::bialgebroid::cyclic_group_bialgebra::<Q>(2);
        let scalar = |c: i64| Matrix::from_i64_rows(&[&[c]]);
        let sign = if commuting { 1 } else { -1 };
        let xm = UModule::new(&b, 1, vec![scalar(1), scalar(sign)]).unwrap();
        let zm = UModule::new(&b, 1, vec![scalar(1), scalar(1)]).unwrap();
        let x = YDLeftRight::new(&b, xm, vec![vec![(Q::one(), 0, 0)]]).unwrap();
        let z = YDLeftLeft::new(&b, zm, vec![vec![(Q::one(), 1, 0)]]).unwrap();
        let pair = if commuting {
            crate::yd::check_commuting_pair(&b, x, z).unwrap()
        } else {
            CommutingPair { x, z }
        };
        let ctx = OperadContext::new(&b, pair, 3).unwrap();
        let e = UModule::regular(&b);
        (ctx, e)
    }

    #[test]
    fn external_identities_with_nontrivial_coaction() {
        let (ctx, e) = group_ctx(true);
        for (j, q) in [(0, 1), (1, 1), (2, 1), (1, 2)] {
            let phi = ctx.random(j, &e, Source::X, 41 + j as u64);
            let psi = ctx.random_internal(q, 43 + q as u64);
            let left = ctx.braided_cup_left(&phi, &e, &psi).unwrap();
            assert_eq!(
                left,
                ctx.external_insert(&ctx.face_pullback(&phi, j + 1), &e, &psi, j + 1)
                    .unwrap()
            );
            let right = ctx.braided_cup_right(&phi, &e, &psi).unwrap();
            assert_eq!(
                right,
                ctx.external_insert(&ctx.face_pullback(&phi, 0), &e, &psi, 1)
                    .unwrap()
            );
            assert!(!right.is_zero() || psi.is_zero() || phi.is_zero());
        }
    }

    #[test]
    fn non_commuting_pair_breaks_first_braided_identity() {
        let (ctx, e) = group_ctx(false);
        let broken = (1..20u64).any(|seed| {
            let phi = ctx.random(1, &e, Source::X, seed);
            let psi = ctx.random_internal(1, seed + 100);
            let left = ctx.braided_cup_left(&phi, &e, &psi).unwrap();
            left != ctx
                .external_insert(&ctx.face_pullback(&phi, 2), &e, &psi, 2)
                .unwrap()
        });
        assert!(broken);
    }
}
