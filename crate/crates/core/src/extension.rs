//! Finite exact sequences of `U`-modules and the chain-level machinery of the
//! Yoneda product: splicing, the truncated totalisation [`Moloch`] of two extensions with its
//! edge morphisms, twisted chain maps out of the bar resolution, and the
//! transfers `Φ` and `Ψ` into `μ # H # Δ_X` that produce cup product and bracket.
//!
//! Degrees are absolute. An extension `0 → Z → E_{p-1} → ⋯ → E_0 → X → 0` of
//! length `p` has `E_{-1} = X`, `E_p = Z` and differentials `d_k: E_k → E_{k-1}`
//! for `0 ≤ k ≤ p`, so `d_0 = p_E` and `d_p = i_E`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::{BarResolution, Cochain, Source};
use crate::bialgebroid::LeftBialgebroid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, solve, Echelon, Matrix, Quotient, SVec};
use crate::operad::OperadContext;
use crate::report::Report;
use crate::umodule::{check_u_linear, TensorModule, UModule};
use crate::yd::{sigma_matrix, tau_matrix, YDLeftLeft, YDLeftRight};

/// Assembles a `rows × cols` matrix from blocks placed at `(row_offset, col_offset)`.
fn block_matrix<F: Field>(
    rows: usize,
    cols: usize,
    pieces: &[(usize, usize, &Matrix<F>)],
) -> Matrix<F> {
    let mut acc: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
    for (r0, c0, m) in pieces {
        for j in 0..m.ncols() {
            acc[c0 + j].extend(m.col(j).iter().map(|(i, x)| (r0 + i, x.clone())));
        }
    }
    Matrix::from_cols(rows, acc.into_iter().map(SVec::from_pairs).collect())
}

fn columns_of<F: Field>(m: &Matrix<F>) -> Vec<SVec<F>> {
    m.columns().to_vec()
}

/// A finite exact sequence `0 → Z → E_{p-1} → ⋯ → E_0 → X → 0` with `p ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<F: Field> {
    modules: Vec<UModule<F>>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Extension<F> {
    /// `modules[k + 1] = E_k` for `-1 ≤ k ≤ p` and `maps[k] = d_k`; shapes,
    /// `U`-linearity and exactness are all checked.
    pub fn new(modules: Vec<UModule<F>>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let e = Self::assemble(modules, maps)?;
        e.check_exact()?;
        Ok(e)
    }

    fn assemble(modules: Vec<UModule<F>>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if modules.len() < 3 || maps.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "an extension of length p needs p + 2 modules and p + 1 maps, got {} and {}",
                modules.len(),
                maps.len()
            )));
        }
        for (k, d) in maps.iter().enumerate() {
            let (src, tgt) = (&modules[k + 1], &modules[k]);
            if d.ncols() != src.dim || d.nrows() != tgt.dim {
                return Err(Error::Shape(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    tgt.dim,
                    src.dim
                )));
            }
        }
        Ok(Extension { modules, maps })
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 2
    }

    /// `E_k` for `-1 ≤ k ≤ p`.
    pub fn module(&self, k: isize) -> &UModule<F> {
        &self.modules[(k + 1) as usize]
    }

    pub fn x(&self) -> &UModule<F> {
        &self.modules[0]
    }

    pub fn z(&self) -> &UModule<F> {
        self.modules.last().expect("at least three modules")
    }

    /// `d_k: E_k → E_{k-1}` for `0 ≤ k ≤ p`.
    pub fn d(&self, k: usize) -> &Matrix<F> {
        &self.maps[k]
    }

    pub fn p_map(&self) -> &Matrix<F> {
        &self.maps[0]
    }

    pub fn i_map(&self) -> &Matrix<F> {
        &self.maps[self.length()]
    }

    /// Dimensions of `E_{-1}, …, E_p`.
    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.dim).collect()
    }

    /// Linearity of every map, `d ∘ d = 0`, and exactness at every spot.
    pub fn check_exact(&self) -> Result<()> {
        let p = self.length();
        for (k, d) in self.maps.iter().enumerate() {
            check_u_linear(d, &self.modules[k + 1], &self.modules[k])
                .map_err(|e| Error::Equivariance(format!("d_{k}: {e}")))?;
        }
        for k in 1..=p {
            if !self.maps[k - 1].compose(&self.maps[k]).is_zero() {
                return Err(Error::NotExact(format!("d_{} ∘ d_{k} != 0", k - 1)));
            }
        }
        if self.i_map().rank() != self.z().dim {
            return Err(Error::NotExact("i_E is not injective".into()));
        }
        if self.p_map().rank() != self.x().dim {
            return Err(Error::NotExact("p_E is not surjective".into()));
        }
        for k in 0..p {
            let inner = self.maps[k].rank() + self.maps[k + 1].rank();
            if inner != self.modules[k + 1].dim {
                return Err(Error::NotExact(format!("homology at E_{k}")));
            }
        }
        Ok(())
    }

    /// `E ⊗_A M` with differentials `d ⊗ M`.
    pub fn tensor_right(&self, b: &LeftBialgebroid<F>, m: &UModule<F>) -> Self {
        let ts: Vec<TensorModule<F>> = self
            .modules
            .iter()
            .map(|e| TensorModule::new(b, e, m))
            .collect();
        let id = Matrix::identity(m.dim);
        let maps = (0..self.maps.len())
            .map(|k| ts[k + 1].map(&ts[k], &self.maps[k], &id))
            .collect();
        Extension {
            modules: ts.into_iter().map(|t| t.module).collect(),
            maps,
        }
    }

    /// `M ⊗_A E` with differentials `M ⊗ d`.
    pub fn tensor_left(&self, b: &LeftBialgebroid<F>, m: &UModule<F>) -> Self {
        let ts: Vec<TensorModule<F>> = self
            .modules
            .iter()
            .map(|e| TensorModule::new(b, m, e))
            .collect();
        let id = Matrix::identity(m.dim);
        let maps = (0..self.maps.len())
            .map(|k| ts[k + 1].map(&ts[k], &id, &self.maps[k]))
            .collect();
        Extension {
            modules: ts.into_iter().map(|t| t.module).collect(),
            maps,
        }
    }
}

/// A `U`-linear map, the length-zero case of splicing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F: Field> {
    pub source: UModule<F>,
    pub target: UModule<F>,
    pub map: Matrix<F>,
}

impl<F: Field> Morphism<F> {
    pub fn new(source: UModule<F>, target: UModule<F>, map: Matrix<F>) -> Result<Self> {
        check_u_linear(&map, &source, &target)?;
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: &UModule<F>) -> Self {
        Morphism {
            source: m.clone(),
            target: m.clone(),
            map: Matrix::identity(m.dim),
        }
    }
}

/// Either a morphism (length 0) or an extension (length ≥ 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Yoneda<F: Field> {
    Morphism(Morphism<F>),
    Extension(Extension<F>),
}

impl<F: Field> Yoneda<F> {
    pub fn length(&self) -> usize {
        match self {
            Yoneda::Morphism(_) => 0,
            Yoneda::Extension(e) => e.length(),
        }
    }

    /// The right end: the source of a morphism, `X` of an extension.
    pub fn x_end(&self) -> &UModule<F> {
        match self {
            Yoneda::Morphism(m) => &m.source,
            Yoneda::Extension(e) => e.x(),
        }
    }

    /// The left end: the target of a morphism, `Z` of an extension.
    pub fn z_end(&self) -> &UModule<F> {
        match self {
            Yoneda::Morphism(m) => &m.target,
            Yoneda::Extension(e) => e.z(),
        }
    }
}

/// `E_0 ×_X X' ⊆ E_0 ⊕ X'`, with coordinates on the canonical kernel basis.
#[derive(Clone, Debug)]
pub struct Pullback<F: Field> {
    sub: Echelon<F>,
    basis: Matrix<F>,
}

impl<F: Field> Pullback<F> {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The embedding into `E_0 ⊕ X'`.
    pub fn inclusion(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Coordinates of an element of `E_0 ⊕ X'`, if it lies in the pullback.
    pub fn coords(&self, v: &SVec<F>) -> Option<SVec<F>> {
        self.sub.coordinates(v).map(|c| SVec::from_dense(&c))
    }
}

/// `Z' ⊔_Z E_{p-1} = (Z' ⊕ E_{p-1}) / {(h(z), i_E(z))}`.
#[derive(Clone, Debug)]
pub struct Pushout<F: Field> {
    quotient: Quotient<F>,
}

impl<F: Field> Pushout<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// The class of an element of `Z' ⊕ E_{p-1}`.
    pub fn project(&self, v: &SVec<F>) -> SVec<F> {
        self.quotient.project_sparse(v)
    }

    pub fn projection(&self) -> Matrix<F> {
        self.quotient.projection()
    }
}

fn object_mismatch(what: &str) -> Error {
    Error::Shape(format!("object mismatch: {what}"))
}

/// `E # g` for `g: X' → X`: the rightmost square is a pullback. The new `E_0`
/// is the kernel of `(e, x') ↦ p_E(e) - g(x')`.
pub fn pullback_splice<F: Field>(
    e: &Extension<F>,
    g: &Morphism<F>,
) -> Result<(Extension<F>, Pullback<F>)> {
    if &g.target != e.x() {
        return Err(object_mismatch(
            "the morphism must end in X of the extension",
        ));
    }
    let e0 = e.module(0);
    let ambient = e0.direct_sum(&g.source);
    let diff = e.p_map().hcat(&g.map.neg());
    let sub = kernel(&diff);
    let basis = Matrix::from_cols(ambient.dim, sub.basis());
    let pb = Pullback { sub, basis };
    let module = ambient
        .restrict(&pb.basis)
        .ok_or_else(|| Error::NotExact("pullback is not a submodule".into()))?;
    let new_p = block_matrix(
        g.source.dim,
        ambient.dim,
        &[(0, e0.dim, &Matrix::identity(g.source.dim))],
    )
    .compose(&pb.basis);
    let into = e.d(1);
    let lifted = block_matrix(ambient.dim, into.ncols(), &[(0, 0, into)]);
    let cols = (0..lifted.ncols())
        .map(|j| {
            pb.coords(lifted.col(j))
                .ok_or_else(|| Error::NotExact("d_1 does not land in the pullback".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let new_d1 = Matrix::from_cols(pb.dim(), cols);
    let mut modules = e.modules.clone();
    modules[0] = g.source.clone();
    modules[1] = module;
    let mut maps = e.maps.clone();
    maps[0] = new_p;
    maps[1] = new_d1;
    Ok((Extension::new(modules, maps)?, pb))
}

/// `h # E` for `h: Z → Z'`: the leftmost square is a pushout. The new
/// `i_E` sends `z'` to the class of `(-z', 0)`.
pub fn pushout_splice<F: Field>(
    h: &Morphism<F>,
    e: &Extension<F>,
) -> Result<(Extension<F>, Pushout<F>)> {
    if &h.source != e.z() {
        return Err(object_mismatch(
            "the morphism must start at Z of the extension",
        ));
    }
    let p = e.length();
    let top = e.module(p as isize - 1);
    let zp = &h.target;
    let ambient = zp.direct_sum(top);
    let rel = h.map.vcat(e.i_map());
    let quotient = Quotient::new(
        ambient.dim,
        Echelon::from_vectors(ambient.dim, columns_of(&rel)),
    );
    let (proj, incl) = (quotient.projection(), quotient.inclusion());
    let module = UModule {
        dim: quotient.dim(),
        act: ambient
            .act
            .iter()
            .map(|a| proj.compose(&a.compose(&incl)))
            .collect(),
    };
    let minus = block_matrix(
        ambient.dim,
        zp.dim,
        &[(0, 0, &Matrix::identity(zp.dim).neg())],
    );
    let new_i = proj.compose(&minus);
    let below = e.d(p - 1);
    let new_d = block_matrix(below.nrows(), ambient.dim, &[(0, zp.dim, below)]).compose(&incl);
    let mut modules = e.modules.clone();
    modules[p] = module;
    modules[p + 1] = zp.clone();
    let mut maps = e.maps.clone();
    maps[p - 1] = new_d;
    maps[p] = new_i;
    Ok((Extension::new(modules, maps)?, Pushout { quotient }))
}

/// Concatenation of `upper` (length `p`) above `lower` (length `q`) through
/// `i_lower ∘ p_upper`; `upper.x() = lower.z()` is required.
pub fn concatenate<F: Field>(upper: &Extension<F>, lower: &Extension<F>) -> Result<Extension<F>> {
    if upper.x() != lower.z() {
        return Err(object_mismatch(
            "X of the upper extension must equal Z of the lower one",
        ));
    }
    let q = lower.length();
    let mut modules: Vec<UModule<F>> = lower.modules[..=q].to_vec();
    modules.extend(upper.modules[1..].iter().cloned());
    let mut maps: Vec<Matrix<F>> = lower.maps[..q].to_vec();
    maps.push(lower.i_map().compose(upper.p_map()));
    maps.extend(upper.maps[1..].iter().cloned());
    Extension::assemble(modules, maps)
}

/// The Yoneda splice `upper # lower` in all four cases of vanishing length.
pub fn splice<F: Field>(upper: &Yoneda<F>, lower: &Yoneda<F>) -> Result<Yoneda<F>> {
    if upper.x_end() != lower.z_end() {
        return Err(object_mismatch(
            "the right end of the upper factor must equal the left end of the lower one",
        ));
    }
    Ok(match (upper, lower) {
        (Yoneda::Morphism(h), Yoneda::Morphism(g)) => Yoneda::Morphism(Morphism {
            source: g.source.clone(),
            target: h.target.clone(),
            map: h.map.compose(&g.map),
        }),
        (Yoneda::Extension(e), Yoneda::Morphism(g)) => Yoneda::Extension(pullback_splice(e, g)?.0),
        (Yoneda::Morphism(h), Yoneda::Extension(e)) => Yoneda::Extension(pushout_splice(h, e)?.0),
        (Yoneda::Extension(e), Yoneda::Extension(f)) => {
            let spliced = concatenate(e, f)?;
            spliced.check_exact()?;
            Yoneda::Extension(spliced)
        }
    })
}

/// A chain map between two extensions of the same length, `comps[k + 1]: D_k → C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F: Field> {
    pub comps: Vec<Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn at(&self, k: isize) -> &Matrix<F> {
        &self.comps[(k + 1) as usize]
    }
}

/// Checks `d ∘ f_k = f_{k-1} ∘ d` for every `k`, naming each square by `label(k)`.
pub fn check_chain_map_labelled<F: Field>(
    dom: &Extension<F>,
    cod: &Extension<F>,
    f: &ChainMap<F>,
    label: impl Fn(usize) -> String,
) -> Report {
    let mut r = Report::new();
    let p = dom.length();
    if cod.length() != p || f.comps.len() != p + 2 {
        r.fail(
            "shape",
            format!(
                "lengths {} and {} with {} components",
                p,
                cod.length(),
                f.comps.len()
            ),
        );
        return r;
    }
    for k in 0..=p {
        let lhs = cod.d(k).compose(f.at(k as isize));
        let rhs = f.at(k as isize - 1).compose(dom.d(k));
        let name = label(k);
        r.expect(&name, lhs == rhs, || {
            let j = (0..lhs.ncols())
                .find(|&j| lhs.col(j) != rhs.col(j))
                .unwrap_or(0);
            format!("degree {k}, basis vector {j}")
        });
    }
    r
}

pub fn check_chain_map<F: Field>(
    dom: &Extension<F>,
    cod: &Extension<F>,
    f: &ChainMap<F>,
) -> Report {
    check_chain_map_labelled(dom, cod, f, |k| format!("square {k}"))
}

/// One summand `E_j ⊗_A F_i` of a degree of [`Moloch`].
#[derive(Clone, Debug)]
pub struct Block<F: Field> {
    pub j: usize,
    pub i: usize,
    pub offset: usize,
    pub tensor: TensorModule<F>,
}

/// The truncated totalisation of `E ⊗_A F`: `T_k = ⊕_{j+i=k} E_j ⊗_A F_i` for
/// `0 ≤ k ≤ p + q` with `E_p = F_q = Z`, augmented by `p_E ⊗ p_F` onto `X ⊗_A X`.
/// The differential is `e ⊗ f ↦ d e ⊗ f + (-1)^j e ⊗ d f` for `e ∈ E_j`, with the
/// pieces through `E_{-1}` or `F_{-1}` dropped.
#[derive(Clone, Debug)]
pub struct Moloch<F: Field> {
    pub e: Extension<F>,
    pub f: Extension<F>,
    blocks: Vec<Vec<Block<F>>>,
    ext: Extension<F>,
}

impl<F: Field> Moloch<F> {
    pub fn new(b: &LeftBialgebroid<F>, e: &Extension<F>, f: &Extension<F>) -> Result<Self> {
        if e.x() != f.x() || e.z() != f.z() {
            return Err(object_mismatch("both factors must be extensions of X by Z"));
        }
        let (p, q) = (e.length(), f.length());
        let xx = TensorModule::new(b, e.x(), f.x());
        let mut blocks: Vec<Vec<Block<F>>> = Vec::new();
        let mut modules = vec![xx.module.clone()];
        for k in 0..=p + q {
            let mut row = Vec::new();
            let mut module = UModule::zero(b);
            for j in k.saturating_sub(q)..=k.min(p) {
                let i = k - j;
                let tensor = TensorModule::new(b, e.module(j as isize), f.module(i as isize));
                row.push(Block {
                    j,
                    i,
                    offset: module.dim,
                    tensor: tensor.clone(),
                });
                module = module.direct_sum(&tensor.module);
            }
            blocks.push(row);
            modules.push(module);
        }
        let mut maps = Vec::new();
        let b00 = &blocks[0][0];
        maps.push(b00.tensor.map(&xx, e.p_map(), f.p_map()));
        for k in 1..=p + q {
            let mut pieces = Vec::new();
            for blk in &blocks[k] {
                if blk.j >= 1 {
                    let tgt = Self::find(&blocks[k - 1], blk.j - 1).expect("block below");
                    let m = blk.tensor.map(
                        &tgt.tensor,
                        e.d(blk.j),
                        &Matrix::identity(f.module(blk.i as isize).dim),
                    );
                    pieces.push((tgt.offset, blk.offset, m));
                }
                if blk.i >= 1 {
                    let tgt = Self::find(&blocks[k - 1], blk.j).expect("block below");
                    let m = blk.tensor.map(
                        &tgt.tensor,
                        &Matrix::identity(e.module(blk.j as isize).dim),
                        f.d(blk.i),
                    );
                    pieces.push((tgt.offset, blk.offset, m.scale(&F::sign(blk.j as i64))));
                }
            }
            let refs: Vec<(usize, usize, &Matrix<F>)> =
                pieces.iter().map(|(r, c, m)| (*r, *c, m)).collect();
            maps.push(block_matrix(modules[k].dim, modules[k + 1].dim, &refs));
        }
        let ext = Extension::assemble(modules, maps)?;
        Ok(Moloch {
            e: e.clone(),
            f: f.clone(),
            blocks,
            ext,
        })
    }

    fn find(row: &[Block<F>], j: usize) -> Option<&Block<F>> {
        row.iter().find(|blk| blk.j == j)
    }

    /// The totalisation as an extension of `X ⊗_A X` by `Z ⊗_A Z`.
    pub fn extension(&self) -> &Extension<F> {
        &self.ext
    }

    /// The summand `E_j ⊗_A F_{k-j}` of degree `k ≥ 0`.
    pub fn block(&self, k: usize, j: usize) -> Option<&Block<F>> {
        Self::find(&self.blocks[k], j)
    }

    /// The inclusion of the summand `E_j ⊗_A F_{k-j}` into `T_k`.
    pub fn inclusion(&self, k: usize, j: usize) -> Matrix<F> {
        let blk = self.block(k, j).expect("block in range");
        block_matrix(
            self.ext.module(k as isize).dim,
            blk.tensor.dim(),
            &[(blk.offset, 0, &Matrix::identity(blk.tensor.dim()))],
        )
    }

    /// The projection of `T_k` onto the summand `E_j ⊗_A F_{k-j}`.
    pub fn projection(&self, k: usize, j: usize) -> Matrix<F> {
        self.inclusion(k, j).transpose()
    }
}

/// `(E ⊗ Z) # (X ⊗ F)`: `X ⊗ F_k` in degrees `0..q`, `E_{k-q} ⊗ Z` in degrees `q..=p+q`.
pub fn left_splice<F: Field>(
    b: &LeftBialgebroid<F>,
    e: &Extension<F>,
    f: &Extension<F>,
) -> Result<Extension<F>> {
    concatenate(&e.tensor_right(b, f.z()), &f.tensor_left(b, e.x()))
}

/// `(Z ⊗ F) # (E ⊗ X)`: `E_k ⊗ X` in degrees `0..p`, `Z ⊗ F_{k-p}` in degrees `p..=p+q`.
pub fn right_splice<F: Field>(
    b: &LeftBialgebroid<F>,
    e: &Extension<F>,
    f: &Extension<F>,
) -> Result<Extension<F>> {
    concatenate(&f.tensor_left(b, e.z()), &e.tensor_right(b, f.x()))
}

/// The edge morphism `λ: T(E, F) → (E ⊗ Z) # (X ⊗ F)`: projection onto
/// `E_{k-q} ⊗ Z` above `q`, and `p_E ⊗ F_k` on `E_0 ⊗ F_k` below `q`.
pub fn lambda_edge<F: Field>(
    b: &LeftBialgebroid<F>,
    m: &Moloch<F>,
    target: &Extension<F>,
) -> ChainMap<F> {
    let (p, q) = (m.e.length(), m.f.length());
    let mut comps = vec![Matrix::identity(m.ext.x().dim)];
    for k in 0..=p + q {
        let dom_dim = m.ext.module(k as isize).dim;
        let cod_dim = target.module(k as isize).dim;
        let comp = if k >= q {
            m.projection(k, k - q)
        } else {
            let blk = m.block(k, 0).expect("E_0 ⊗ F_k");
            let xf = TensorModule::new(b, m.e.x(), m.f.module(k as isize));
            let piece = blk.tensor.map(
                &xf,
                m.e.p_map(),
                &Matrix::identity(m.f.module(k as isize).dim),
            );
            block_matrix(cod_dim, dom_dim, &[(0, blk.offset, &piece)])
        };
        comps.push(comp);
    }
    ChainMap { comps }
}

/// The edge morphism `ϱ: T(E, F) → (Z ⊗ F) # (E ⊗ X)`: projection onto
/// `Z ⊗ F_{k-p}` with sign `(-1)^{pk-p}` above `p`, and `E_k ⊗ p_F` on `E_k ⊗ F_0` below `p`.
pub fn rho_edge<F: Field>(
    b: &LeftBialgebroid<F>,
    m: &Moloch<F>,
    target: &Extension<F>,
) -> ChainMap<F> {
    let (p, q) = (m.e.length(), m.f.length());
    let mut comps = vec![Matrix::identity(m.ext.x().dim)];
    for k in 0..=p + q {
        let dom_dim = m.ext.module(k as isize).dim;
        let cod_dim = target.module(k as isize).dim;
        let comp = if k >= p {
            m.projection(k, p)
                .scale(&F::sign((p * k) as i64 - p as i64))
        } else {
            let blk = m.block(k, k).expect("E_k ⊗ F_0");
            let ex = TensorModule::new(b, m.e.module(k as isize), m.f.x());
            let piece = blk.tensor.map(
                &ex,
                &Matrix::identity(m.e.module(k as isize).dim),
                m.f.p_map(),
            );
            block_matrix(cod_dim, dom_dim, &[(0, blk.offset, &piece)])
        };
        comps.push(comp);
    }
    ChainMap { comps }
}

/// `(σ|τ)_{E,F}: (Z ⊗ E) # (F ⊗ X) → (E ⊗ Z) # (X ⊗ F)`, built from `σ_{Z,E_j}` above
/// degree `q`, `τ_{F_k,X}` below it and `τ_{X,X}` in degree `-1`.
pub struct SigmaTau<F: Field> {
    pub source: Extension<F>,
    pub target: Extension<F>,
    pub map: ChainMap<F>,
    q: usize,
}

impl<F: Field> SigmaTau<F> {
    pub fn new(
        b: &LeftBialgebroid<F>,
        e: &Extension<F>,
        f: &Extension<F>,
        x: &YDLeftRight<F>,
        z: &YDLeftLeft<F>,
    ) -> Result<Self> {
        if e.x() != &x.module || e.z() != &z.module {
            return Err(object_mismatch(
                "the extensions must be extensions of X by Z",
            ));
        }
        let source = concatenate(&e.tensor_left(b, &z.module), &f.tensor_right(b, &x.module))?;
        let target = left_splice(b, e, f)?;
        let (p, q) = (e.length(), f.length());
        let tau = |m: &UModule<F>| {
            let mx = TensorModule::new(b, m, &x.module);
            let xm = TensorModule::new(b, &x.module, m);
            tau_matrix(m, x, &mx.space, &xm.space)
        };
        let mut comps = vec![tau(&x.module)];
        for k in 0..q {
            comps.push(tau(f.module(k as isize)));
        }
        for j in 0..=p {
            let m = e.module(j as isize);
            let zm = TensorModule::new(b, &z.module, m);
            let mz = TensorModule::new(b, m, &z.module);
            comps.push(sigma_matrix(z, m, &zm.space, &mz.space));
        }
        Ok(SigmaTau {
            source,
            target,
            map: ChainMap { comps },
            q,
        })
    }

    /// The square in degree `k` is the "middle square" for `k = q`, where
    /// commutativity amounts to `σ_{Z,X} = τ_{Z,X}`.
    pub fn square_name(&self, k: usize) -> String {
        match k {
            0 => "bottom square".into(),
            k if k == self.q => "middle square".into(),
            k if k < self.q => format!("lower square {k}"),
            k => format!("upper square {k}"),
        }
    }

    pub fn check(&self) -> Report {
        check_chain_map_labelled(&self.source, &self.target, &self.map, |k| {
            self.square_name(k)
        })
    }
}

/// Graded linear maps out of a bar resolution: `bottom: W → T_{shift-1}` and
/// `comps[k]: Bar_k → T_{k+shift}`. With `shift = 0` these are the twisted chain
/// maps (twist `bottom`); with `shift = 1` they are homotopies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<F: Field> {
    pub source: Source,
    pub shift: usize,
    pub bottom: Matrix<F>,
    pub comps: Vec<Cochain<F>>,
}

/// A graded map with `shift = 0`, whose bottom component is the twist `f: X → X`.
pub type TwistedChainMap<F> = GradedMap<F>;

impl<F: Field> GradedMap<F> {
    /// The zero map into `target`, with components up to the top degree of `target`.
    pub fn zero(
        bar: &BarResolution<F>,
        source: Source,
        shift: usize,
        target: &Extension<F>,
    ) -> Self {
        let r = target.length();
        let bottom = Matrix::zeros(target.module(shift as isize - 1).dim, bar.resolved().dim);
        let comps = (0..=r - shift)
            .map(|k| Cochain::zero(bar, k, source, target.module((k + shift) as isize).dim))
            .collect();
        GradedMap {
            source,
            shift,
            bottom,
            comps,
        }
    }

    pub fn twist(&self) -> &Matrix<F> {
        &self.bottom
    }

    pub fn top(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedMap {
            source: self.source,
            shift: self.shift,
            bottom: self.bottom.add(&other.bottom),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        GradedMap {
            source: self.source,
            shift: self.shift,
            bottom: self.bottom.scale(c),
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Postcomposition with a chain map of the target.
    pub fn then(&self, f: &ChainMap<F>) -> Self {
        let s = self.shift as isize;
        GradedMap {
            source: self.source,
            shift: self.shift,
            bottom: f.at(s - 1).compose(&self.bottom),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(k, c)| c.then(f.at(k as isize + s)))
                .collect(),
        }
    }

    /// Precomposition with an endomorphism family of the bar resolution.
    pub fn precompose(&self, bottom: &Matrix<F>, on_bar: impl Fn(usize) -> Matrix<F>) -> Self {
        GradedMap {
            source: self.source,
            shift: self.shift,
            bottom: self.bottom.compose(bottom),
            comps: self
                .comps
                .iter()
                .map(|c| Cochain {
                    mat: c.mat.compose(&on_bar(c.degree)),
                    ..c.clone()
                })
                .collect(),
        }
    }

    /// The first degree (with `-1` for the bottom) where two graded maps differ.
    pub fn first_difference(&self, other: &Self) -> Option<isize> {
        if self.bottom != other.bottom {
            return Some(-1);
        }
        (0..self.comps.len().max(other.comps.len()))
            .find(|&k| self.comps.get(k).map(|c| &c.mat) != other.comps.get(k).map(|c| &c.mat))
            .map(|k| k as isize)
    }
}

/// Squares of a twisted chain map: `d φ_0 = f L`, `d φ_k = φ_{k-1} d`, and
/// `φ_r d = 0` whenever `Bar_{r+1}` is available.
pub fn check_twisted_chain_map<F: Field>(
    bar: &BarResolution<F>,
    target: &Extension<F>,
    phi: &GradedMap<F>,
) -> Report {
    let mut r = Report::new();
    let top = target.length();
    if phi.shift != 0 || phi.comps.len() != top + 1 {
        r.fail(
            "shape",
            format!("expected {} components with shift 0", top + 1),
        );
        return r;
    }
    for k in 0..=top {
        let lhs = target.d(k).compose(&phi.comps[k].mat);
        let rhs = if k == 0 {
            phi.bottom.compose(bar.d(0))
        } else {
            phi.comps[k - 1].mat.compose(bar.d(k))
        };
        r.expect(&format!("square {k}"), lhs == rhs, || {
            let j = (0..lhs.ncols())
                .find(|&j| lhs.col(j) != rhs.col(j))
                .unwrap_or(0);
            format!("degree {k}, basis vector {j} of Bar_{k}")
        });
    }
    if bar.max_degree() > top {
        let vanish = phi.comps[top].mat.compose(bar.d(top + 1)).is_zero();
        r.expect("top cocycle", vanish, || format!("φ_{top} ∘ d != 0"));
    }
    r
}

/// `[d, s]_k = d s_k + s_{k-1} d` for a homotopy `s` into `target`, a graded map with shift 0.
pub fn homotopy_boundary<F: Field>(
    bar: &BarResolution<F>,
    target: &Extension<F>,
    s: &GradedMap<F>,
) -> Result<GradedMap<F>> {
    let r = target.length();
    if s.shift != 1 || s.comps.len() != r {
        return Err(Error::Degree(format!(
            "a homotopy into a length {r} complex has components 0..{r} and shift 1"
        )));
    }
    let bottom = target.d(0).compose(&s.bottom);
    let comps = (0..=r)
        .map(|k| {
            let mut m = if k < r {
                target.d(k + 1).compose(&s.comps[k].mat)
            } else {
                Matrix::zeros(target.module(r as isize).dim, bar.dim(k))
            };
            let below = if k == 0 {
                &s.bottom
            } else {
                &s.comps[k - 1].mat
            };
            m = m.add(&below.compose(bar.d(k)));
            Cochain {
                degree: k,
                source: s.source,
                mat: m,
            }
        })
        .collect();
    Ok(GradedMap {
        source: s.source,
        shift: 0,
        bottom,
        comps,
    })
}

/// Solves `d_E ∘ φ = rhs` for a `U`-linear `φ: Bar_k → E_k`, where `rhs: Bar_k → E_{k-1}`.
fn solve_square<F: Field>(
    bar: &BarResolution<F>,
    source: Source,
    k: usize,
    d: &Matrix<F>,
    target: &UModule<F>,
    rhs: &Cochain<F>,
) -> Result<Cochain<F>> {
    let space = bar.cochain_space(k, target);
    let (dt, db) = (target.dim, d.nrows());
    let cols: Vec<SVec<F>> = space
        .basis()
        .iter()
        .map(|s| {
            let mut pairs = Vec::new();
            for (idx, x) in s.iter() {
                let (w, row) = (idx / dt, idx % dt);
                pairs.extend(d.col(row).iter().map(|(i, y)| (w * db + i, x.mul(y))));
            }
            SVec::from_pairs(pairs)
        })
        .collect();
    let m = Matrix::from_cols(bar.below_dim(k) * db, cols);
    let b = bar.flatten(rhs).to_dense(m.nrows());
    let coeffs =
        solve(&m, &b).ok_or_else(|| Error::NoSolution(format!("no lift in degree {k}")))?;
    let mut g = SVec::new();
    for (s, c) in space.basis().iter().zip(&coeffs) {
        if !c.is_zero() {
            g = g.axpy(c, s);
        }
    }
    Ok(bar.cochain_from_flat(k, &g, target, source))
}

/// A twisted chain map over `twist: W → X` from the bar resolution of `W` into `e`,
/// found degree by degree by linear solves.
pub fn lift_chain_map<F: Field>(
    bar: &BarResolution<F>,
    source: Source,
    e: &Extension<F>,
    twist: &Matrix<F>,
) -> Result<GradedMap<F>> {
    let p = e.length();
    if bar.max_degree() < p {
        return Err(Error::Resource(format!(
            "the bar resolution stops below degree {p}"
        )));
    }
    let mut comps: Vec<Cochain<F>> = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let rhs = if k == 0 {
            Cochain {
                degree: 0,
                source,
                mat: twist.compose(bar.d(0)),
            }
        } else {
            Cochain {
                degree: k,
                source,
                mat: comps[k - 1].mat.compose(bar.d(k)),
            }
        };
        comps.push(solve_square(
            bar,
            source,
            k,
            e.d(k),
            e.module(k as isize),
            &rhs,
        )?);
    }
    Ok(GradedMap {
        source,
        shift: 0,
        bottom: twist.clone(),
        comps,
    })
}

/// A pseudo-random cocycle of degree `n` with small integer coordinates on the
/// canonical cocycle basis.
pub fn random_cocycle<F: Field>(
    bar: &BarResolution<F>,
    n: usize,
    target: &UModule<F>,
    source: Source,
    seed: u64,
) -> Cochain<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = SVec::new();
    for row in bar.cocycles(n, target, source).basis() {
        let c = F::from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            v = v.axpy(&c, &row);
        }
    }
    bar.cochain_from_flat(n, &v, target, source)
}

/// The extension factory: the truncated bar resolution
/// `0 → K_p → Bar_{p-1} → ⋯ → Bar_0 → X → 0` with `K_p = im d_p`, a splice of the
/// short exact sequences `0 → K_{j+1} → Bar_j → K_j → 0`, pushed out along the
/// map `K_p → Z` induced by a cocycle of degree `p ≥ 1`.
pub fn factory_extension<F: Field>(
    bar: &BarResolution<F>,
    cocycle: &Cochain<F>,
    z: &UModule<F>,
) -> Result<Extension<F>> {
    let p = cocycle.degree;
    if p == 0 || bar.max_degree() < p {
        return Err(Error::Degree(format!(
            "the factory needs a cocycle of degree 1..={}",
            bar.max_degree()
        )));
    }
    if p < bar.max_degree() && !bar.delta(cocycle).is_zero() {
        return Err(Error::NotExact("the factory input is not a cocycle".into()));
    }
    let below = bar.module(p - 1);
    let image = Echelon::from_vectors(below.dim, columns_of(bar.d(p)));
    let incl = Matrix::from_cols(below.dim, image.basis());
    let k_module = below
        .restrict(&incl)
        .ok_or_else(|| Error::NotExact("image of d is not a submodule".into()))?;
    let induced = (0..incl.ncols())
        .map(|j| {
            let pre = solve(bar.d(p), &incl.col(j).to_dense(below.dim)).expect("lies in the image");
            Ok(SVec::from_dense(&cocycle.mat.apply(&pre)))
        })
        .collect::<Result<Vec<_>>>()?;
    let cbar = Morphism::new(
        k_module.clone(),
        z.clone(),
        Matrix::from_cols(z.dim, induced),
    )?;
    let mut modules = vec![bar.resolved().clone()];
    let mut maps = Vec::new();
    for j in 0..p {
        modules.push(bar.module(j));
        maps.push(bar.d(j).clone());
    }
    modules.push(k_module);
    maps.push(incl);
    let truncated = Extension::new(modules, maps)?;
    Ok(pushout_splice(&cbar, &truncated)?.0)
}

/// `μ # H # Δ_X` for an extension `H` of `X ⊗ X` by `Z ⊗ Z` of length `r ≥ 1`,
/// built as the pushout along `μ` of the pullback along `Δ_X`, together with the
/// transfers `Φ` and `Ψ` into it.
pub struct TransferTarget<F: Field> {
    h: Extension<F>,
    pullback: Pullback<F>,
    pushout: Pushout<F>,
    g: Extension<F>,
    mu: Matrix<F>,
    delta: Matrix<F>,
    z_dim: usize,
}

impl<F: Field> TransferTarget<F> {
    pub fn new(ctx: &OperadContext<F>, h: &Extension<F>) -> Result<Self> {
        let b = ctx.bialgebroid();
        let zz = TensorModule::new(b, ctx.z(), ctx.z());
        if h.x() != &ctx.xx().module || h.z() != &zz.module {
            return Err(object_mismatch("H must be an extension of X ⊗ X by Z ⊗ Z"));
        }
        let delta = ctx.delta_x()?;
        let mu = ctx.mu_z(&zz)?;
        let dm = Morphism::new(ctx.x().clone(), ctx.xx().module.clone(), delta.clone())?;
        let mm = Morphism::new(zz.module.clone(), ctx.z().clone(), mu.clone())?;
        let (hd, pullback) = pullback_splice(h, &dm)?;
        let (g, pushout) = pushout_splice(&mm, &hd)?;
        Ok(TransferTarget {
            h: h.clone(),
            pullback,
            pushout,
            g,
            mu,
            delta,
            z_dim: ctx.z().dim,
        })
    }

    pub fn h(&self) -> &Extension<F> {
        &self.h
    }

    /// The spliced extension `μ # H # Δ_X` of `X` by `Z`.
    pub fn g(&self) -> &Extension<F> {
        &self.g
    }

    pub fn length(&self) -> usize {
        self.h.length()
    }

    /// Coordinates in `G_k` (`0 ≤ k < r`) of the columns `(h, x)` with `h ∈ H_k`,
    /// and `x ∈ X` present only for `k = 0`: pullback coordinates in degree `0`,
    /// then the class of `(0, ·)` in degree `r - 1`.
    pub fn embed(&self, k: usize, h: &Matrix<F>, x: Option<&Matrix<F>>) -> Result<Matrix<F>> {
        let r = self.length();
        let mut v = h.clone();
        if k == 0 {
            let x = x
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(self.delta.ncols(), h.ncols()));
            let stacked = v.vcat(&x);
            let cols = (0..stacked.ncols())
                .map(|j| {
                    self.pullback.coords(stacked.col(j)).ok_or_else(|| {
                        Error::NoSolution(format!("column {j} lies outside H_0 ×_(X⊗X) X"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            v = Matrix::from_cols(self.pullback.dim(), cols);
        }
        if k + 1 == r {
            let stacked = Matrix::zeros(self.z_dim, v.ncols()).vcat(&v);
            v = Matrix::from_cols(
                self.pushout.dim(),
                (0..stacked.ncols())
                    .map(|j| self.pushout.project(stacked.col(j)))
                    .collect(),
            );
        }
        Ok(v)
    }

    /// `Φ(ξ)` for a graded map `ξ` on `Bar(U, X ⊗ X)` into `H`; with `constant` the
    /// pieces `(L, 0)` in degree `0` and `id_X` in degree `-1` are added, which turns
    /// a cocycle representative of `H` into one of `μ # H # Δ_X`.
    pub fn phi(
        &self,
        ctx: &OperadContext<F>,
        xi: &GradedMap<F>,
        constant: bool,
    ) -> Result<GradedMap<F>> {
        let r = self.length();
        if xi.shift != 0 || xi.comps.len() != r + 1 || xi.source != Source::XX {
            return Err(Error::Degree(format!(
                "Φ takes a graded map on Bar(U, X ⊗ X) with components 0..={r}"
            )));
        }
        let bar = ctx.bar(Source::X);
        let xd = ctx.x().dim;
        let bottom = if constant {
            Matrix::identity(xd)
        } else {
            Matrix::zeros(xd, xd)
        };
        let mut comps = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let pulled = xi.comps[k].mat.compose(&ctx.delta_on_bar(k)?);
            let mat = if k == r {
                self.mu.compose(&pulled)
            } else {
                let l = bar.d(0).clone();
                self.embed(k, &pulled, (constant && k == 0).then_some(&l))?
            };
            comps.push(Cochain {
                degree: k,
                source: Source::X,
                mat,
            });
        }
        Ok(GradedMap {
            source: Source::X,
            shift: 0,
            bottom,
            comps,
        })
    }

    /// `Ψ(ν)` for a homotopy `ν` on `Bar(U, X ⊗ X)` into `H`.
    pub fn psi(&self, ctx: &OperadContext<F>, nu: &GradedMap<F>) -> Result<GradedMap<F>> {
        let r = self.length();
        if nu.shift != 1 || nu.comps.len() != r || nu.source != Source::XX {
            return Err(Error::Degree(format!(
                "Ψ takes a homotopy on Bar(U, X ⊗ X) with components 0..{r}"
            )));
        }
        let bottom = self.embed(0, &nu.bottom.compose(&self.delta), None)?;
        let mut comps = Vec::with_capacity(r);
        for k in 0..r {
            let pulled = nu.comps[k].mat.compose(&ctx.delta_on_bar(k)?);
            let mat = if k + 1 == r {
                self.mu.compose(&pulled)
            } else {
                self.embed(k + 1, &pulled, None)?
            };
            comps.push(Cochain {
                degree: k,
                source: Source::X,
                mat,
            });
        }
        Ok(GradedMap {
            source: Source::X,
            shift: 1,
            bottom,
            comps,
        })
    }
}

/// Everything attached to a pair of twisted cocycle representatives `φ` into `E`
/// (length `p`) and `ψ` into `F` (length `q`): the totalisations, the edge
/// morphisms, the target `H = (E ⊗ Z) # (X ⊗ F)` and the transfer into `μ # H # Δ_X`.
pub struct ExtensionLoop<'a, F: Field> {
    ctx: &'a OperadContext<F>,
    pub e: Extension<F>,
    pub f: Extension<F>,
    pub phi: GradedMap<F>,
    pub psi: GradedMap<F>,
    pub moloch_ef: Moloch<F>,
    pub moloch_fe: Moloch<F>,
    pub h: Extension<F>,
    pub lambda: ChainMap<F>,
    pub rho_fe: ChainMap<F>,
    pub sigma_tau: SigmaTau<F>,
    pub transfer: TransferTarget<F>,
}

impl<'a, F: Field> ExtensionLoop<'a, F> {
    pub fn new(
        ctx: &'a OperadContext<F>,
        e: Extension<F>,
        f: Extension<F>,
        phi: GradedMap<F>,
        psi: GradedMap<F>,
    ) -> Result<Self> {
        let b = ctx.bialgebroid();
        let (p, q) = (e.length(), f.length());
        if phi.comps.len() != p + 1
            || psi.comps.len() != q + 1
            || phi.source != Source::X
            || psi.source != Source::X
        {
            return Err(Error::Degree(
                "φ and ψ must be twisted chain maps on Bar(U, X) into E and F".into(),
            ));
        }
        if ctx.bar(Source::XX).max_degree() < p + q {
            return Err(Error::Resource(format!(
                "Bar(U, X ⊗ X) must reach degree {}",
                p + q
            )));
        }
        let moloch_ef = Moloch::new(b, &e, &f)?;
        let moloch_fe = Moloch::new(b, &f, &e)?;
        let h = left_splice(b, &e, &f)?;
        let lambda = lambda_edge(b, &moloch_ef, &h);
        let rho_target = right_splice(b, &f, &e)?;
        let rho_fe = rho_edge(b, &moloch_fe, &rho_target);
        let sigma_tau = SigmaTau::new(b, &e, &f, &ctx.pair().x, &ctx.pair().z)?;
        let transfer = TransferTarget::new(ctx, &h)?;
        Ok(ExtensionLoop {
            ctx,
            e,
            f,
            phi,
            psi,
            moloch_ef,
            moloch_fe,
            h,
            lambda,
            rho_fe,
            sigma_tau,
            transfer,
        })
    }

    fn p(&self) -> usize {
        self.e.length()
    }

    fn q(&self) -> usize {
        self.f.length()
    }

    fn bar_xx(&self) -> &BarResolution<F> {
        self.ctx.bar(Source::XX)
    }

    fn zero_into(&self, target: &Extension<F>, shift: usize) -> GradedMap<F> {
        GradedMap::zero(self.bar_xx(), Source::XX, shift, target)
    }

    fn add_at(g: &mut GradedMap<F>, k: usize, c: &Cochain<F>, into: Option<&Matrix<F>>) {
        let c = match into {
            Some(m) => c.then(m),
            None => c.clone(),
        };
        g.comps[k] = g.comps[k].add(&c);
    }

    /// `a ∪_⊗ b = Σ_{j+i=k} a_j ∪_⊗ b_i` into `T(A, B)`, with twist `τ_{X,X}`.
    fn cup_into(&self, a: &GradedMap<F>, b: &GradedMap<F>, m: &Moloch<F>) -> Result<GradedMap<F>> {
        let mut out = self.zero_into(m.extension(), 0);
        out.bottom = self.ctx.tau_xx();
        let (la, lb) = (m.e.length(), m.f.length());
        for k in 0..=la + lb {
            for j in k.saturating_sub(lb)..=k.min(la) {
                let i = k - j;
                let c = self.ctx.external_cup(
                    &a.comps[j],
                    m.e.module(j as isize),
                    &b.comps[i],
                    m.f.module(i as isize),
                )?;
                Self::add_at(&mut out, k, &c, Some(&m.inclusion(k, j)));
            }
        }
        Ok(out)
    }

    /// `φ ∪_⊗ ψ`, a `τ`-twisted chain map into `T(E, F)`.
    pub fn external_cup(&self) -> Result<GradedMap<F>> {
        self.cup_into(&self.phi, &self.psi, &self.moloch_ef)
    }

    /// `(φ ∪_⊗ ψ) ∘ τ_•`.
    fn cup_braided(&self) -> Result<GradedMap<F>> {
        Ok(self
            .external_cup()?
            .precompose(&self.ctx.tau_xx(), |k| self.ctx.tau_on_bar(k)))
    }

    /// `(F_j ⊗ i_E) ∘ (ψ_j ∘̄^⊗ φ_p)`, landing in `F_j ⊗ E_{p-1}`.
    fn inserted_phi_top(&self, j: usize) -> Result<Cochain<F>> {
        let b = self.ctx.bialgebroid();
        let p = self.p();
        let fj = self.f.module(j as isize);
        let c =
            self.ctx
                .external_gerstenhaber_product(&self.psi.comps[j], fj, &self.phi.comps[p])?;
        let src = TensorModule::new(b, fj, self.ctx.z());
        let tgt = TensorModule::new(b, fj, self.e.module(p as isize - 1));
        Ok(c.then(&src.map(&tgt, &Matrix::identity(fj.dim), self.e.i_map())))
    }

    /// The correction `ε(φ, ψ)`, a 0-twisted chain map into `T(F, E)`: zero below `p`,
    /// `-[ψ_{k-p}, φ_p] + (-1)^{pk+k+1} (F ⊗ i_E)(ψ_{k-p+1} ∘̄^⊗ φ_p)` for `p ≤ k < p + q`,
    /// and `-[ψ_q, φ_p]` on top.
    pub fn epsilon(&self) -> Result<GradedMap<F>> {
        let (p, q) = (self.p(), self.q());
        let m = &self.moloch_fe;
        let mut out = self.zero_into(m.extension(), 0);
        let minus = F::one().neg();
        let phi_p = &self.phi.comps[p];
        for k in p..=p + q {
            let j = k - p;
            let comm = self.ctx.braided_cup_commutator(
                &self.psi.comps[j],
                self.f.module(j as isize),
                phi_p,
            )?;
            Self::add_at(&mut out, k, &comm.scale(&minus), Some(&m.inclusion(k, j)));
            if k < p + q {
                let corr = self
                    .inserted_phi_top(j + 1)?
                    .scale(&F::sign((p * k + k + 1) as i64));
                Self::add_at(&mut out, k, &corr, Some(&m.inclusion(k, j + 1)));
            }
        }
        Ok(out)
    }

    /// `ψ_q ∘̄^⊗ φ_p` in `Z ⊗ Z`.
    fn psi_into_phi(&self) -> Result<Cochain<F>> {
        self.ctx.external_gerstenhaber_product(
            &self.psi.comps[self.q()],
            self.ctx.z(),
            &self.phi.comps[self.p()],
        )
    }

    /// `i_E ⊗ Z: Z ⊗ Z → E_{p-1} ⊗ Z`.
    fn i_tensor_z(&self) -> Matrix<F> {
        let b = self.ctx.bialgebroid();
        let z = self.ctx.z();
        let top = self.e.module(self.p() as isize - 1);
        TensorModule::new(b, z, z).map(
            &TensorModule::new(b, top, z),
            self.e.i_map(),
            &Matrix::identity(z.dim),
        )
    }

    /// `σ_{Z,M}` between the tensor spaces `Z ⊗ M` and `M ⊗ Z`.
    fn sigma(&self, m: &UModule<F>) -> Matrix<F> {
        let b = self.ctx.bialgebroid();
        let z = self.ctx.z();
        sigma_matrix(
            &self.ctx.pair().z,
            m,
            &TensorModule::new(b, z, m).space,
            &TensorModule::new(b, m, z).space,
        )
    }

    /// `[φ_{k-q}, ψ_q]` for `q ≤ k`, in `E_{k-q} ⊗ Z`.
    fn commutator_band(&self, k: usize) -> Result<Cochain<F>> {
        let j = k - self.q();
        self.ctx.braided_cup_commutator(
            &self.phi.comps[j],
            self.e.module(j as isize),
            &self.psi.comps[self.q()],
        )
    }

    /// `ξ(φ, ψ)` into `H`: `[φ_{k-q}, ψ_q]` for `q ≤ k < p + q`, corrected in degree
    /// `p + q - 1` by `(-1)^{p+1} (i_E ⊗ Z)(ψ_q ∘̄^⊗ φ_p)`, and zero on top.
    pub fn xi(&self) -> Result<GradedMap<F>> {
        let (p, q) = (self.p(), self.q());
        let mut out = self.zero_into(&self.h, 0);
        for k in q..p + q {
            Self::add_at(&mut out, k, &self.commutator_band(k)?, None);
        }
        let corr = self
            .psi_into_phi()?
            .then(&self.i_tensor_z())
            .scale(&F::sign(p as i64 + 1));
        Self::add_at(&mut out, p + q - 1, &corr, None);
        Ok(out)
    }

    /// The homotopy `s(φ, ψ)` into `H` with `ξ = [d, s]`: `-(-1)^{q(k+1)} φ_{k-q+1} ∘̄^⊗ ψ_q`
    /// for `q ≤ k ≤ p + q - 2`, and `(-1)^{p+1} ψ_q ∘̄^⊗ φ_p - (-1)^{q(p-1)} φ_p ∘̄^⊗ ψ_q` in
    /// degree `p + q - 1`.
    pub fn s(&self) -> Result<GradedMap<F>> {
        let (p, q) = (self.p(), self.q());
        let mut out = self.zero_into(&self.h, 1);
        let psi_q = &self.psi.comps[q];
        for k in q..p + q - 1 {
            let j = k + 1 - q;
            let c = self.ctx.external_gerstenhaber_product(
                &self.phi.comps[j],
                self.e.module(j as isize),
                psi_q,
            )?;
            Self::add_at(
                &mut out,
                k,
                &c.scale(&F::sign((q * (k + 1) + 1) as i64)),
                None,
            );
        }
        let z = self.ctx.z();
        let a = self.psi_into_phi()?.scale(&F::sign(p as i64 + 1));
        let bb = self
            .ctx
            .external_gerstenhaber_product(&self.phi.comps[p], z, psi_q)?;
        let top = a.sub(&bb.scale(&F::sign((q * (p - 1)) as i64)));
        Self::add_at(&mut out, p + q - 1, &top, None);
        Ok(out)
    }

    /// `η(φ, ψ) = λ((φ ∪_⊗ ψ) ∘ τ_•) - (σ|τ) ϱ(ψ ∪_⊗ φ + ε)`, composed literally.
    pub fn eta(&self) -> Result<GradedMap<F>> {
        let first = self.cup_braided()?.then(&self.lambda);
        let second = self
            .cup_into(&self.psi, &self.phi, &self.moloch_fe)?
            .add(&self.epsilon()?);
        let second = second.then(&self.rho_fe).then(&self.sigma_tau.map);
        Ok(first.sub(&second))
    }

    /// The closed form of `η(φ, ψ)`: `[φ_{k-q}, ψ_q]` for `q ≤ k < p + q`, plus
    /// `(-1)^{p+1} σ (Z ⊗ i_E)(ψ_q ∘̄^⊗ φ_p)` in degree `p + q - 1`, and
    /// `[φ_p, ψ_q] + (-1)^{pq} σ [ψ_q, φ_p]` on top.
    pub fn eta_closed(&self) -> Result<GradedMap<F>> {
        let (p, q) = (self.p(), self.q());
        let b = self.ctx.bialgebroid();
        let z = self.ctx.z();
        let mut out = self.zero_into(&self.h, 0);
        for k in q..p + q {
            Self::add_at(&mut out, k, &self.commutator_band(k)?, None);
        }
        let top = self.e.module(p as isize - 1);
        let z_i = TensorModule::new(b, z, z).map(
            &TensorModule::new(b, z, top),
            &Matrix::identity(z.dim),
            self.e.i_map(),
        );
        let corr = self
            .psi_into_phi()?
            .then(&z_i)
            .then(&self.sigma(top))
            .scale(&F::sign(p as i64 + 1));
        Self::add_at(&mut out, p + q - 1, &corr, None);
        let (phi_p, psi_q) = (&self.phi.comps[p], &self.psi.comps[q]);
        let c1 = self.ctx.braided_cup_commutator(phi_p, z, psi_q)?;
        let c2 = self
            .ctx
            .braided_cup_commutator(psi_q, z, phi_p)?
            .then(&self.sigma(z));
        Self::add_at(
            &mut out,
            p + q,
            &c1.add(&c2.scale(&F::sign((p * q) as i64))),
            None,
        );
        Ok(out)
    }

    /// `(0, …, 0, (L, 0), id_X) + Φ(λ((φ ∪_⊗ ψ) ∘ τ_•))`, a cocycle representative of
    /// `μ # H # Δ_X` over the identity twist.
    pub fn cup_representative(&self) -> Result<GradedMap<F>> {
        let xi = self.cup_braided()?.then(&self.lambda);
        self.transfer.phi(self.ctx, &xi, true)
    }

    /// `{φ, ψ} = (-1)^{pq+q+1} Ψ_{p+q-1}(s(φ, ψ))`, which is `(-1)^{pq} Ψ_{p+q-1}(s)` for odd `q`.
    pub fn bracket_from_homotopy(&self) -> Result<Cochain<F>> {
        let (p, q) = (self.p(), self.q());
        let psi = self.transfer.psi(self.ctx, &self.s()?)?;
        Ok(psi.comps[p + q - 1].scale(&F::sign((p * q + q + 1) as i64)))
    }

    /// Runs every identity of the pipeline and records the verdicts.
    pub fn verify(&self) -> Result<Report> {
        let mut r = Report::new();
        let (p, q) = (self.p(), self.q());
        let bar_x = self.ctx.bar(Source::X);
        let bar_xx = self.bar_xx();
        let exact = |e: &Extension<F>| e.check_exact().err().map(|e| e.to_string());
        for (name, e) in [
            ("Moloch(E,F) exact", self.moloch_ef.extension()),
            ("Moloch(F,E) exact", self.moloch_fe.extension()),
            ("H exact", &self.h),
            ("μ#H#Δ exact", self.transfer.g()),
        ] {
            let err = exact(e);
            r.expect(name, err.is_none(), || err.unwrap_or_default());
        }
        r.merge_prefixed(
            "λ ",
            check_chain_map(self.moloch_ef.extension(), &self.h, &self.lambda),
        );
        r.merge_prefixed(
            "ϱ ",
            check_chain_map(
                self.moloch_fe.extension(),
                &self.sigma_tau.source,
                &self.rho_fe,
            ),
        );
        r.merge_prefixed("σ|τ ", self.sigma_tau.check());
        r.merge_prefixed("φ ", check_twisted_chain_map(bar_x, &self.e, &self.phi));
        r.merge_prefixed("ψ ", check_twisted_chain_map(bar_x, &self.f, &self.psi));
        let eps = self.epsilon()?;
        r.expect("ε 0-twisted", eps.bottom.is_zero(), || {
            "ε_{-1} != 0".into()
        });
        r.merge_prefixed(
            "ε ",
            check_twisted_chain_map(bar_xx, self.moloch_fe.extension(), &eps),
        );
        let xi = self.xi()?;
        let s = self.s()?;
        let ds = homotopy_boundary(bar_xx, &self.h, &s)?;
        r.expect("ξ = [d,s]", ds == xi, || {
            format!("degree {:?}", xi.first_difference(&ds))
        });
        let eta = self.eta()?;
        let eta_closed = self.eta_closed()?;
        r.expect("η closed form", eta == eta_closed, || {
            format!("degree {:?}", eta.first_difference(&eta_closed))
        });
        let phi_eta = self.transfer.phi(self.ctx, &eta, false)?;
        let phi_xi = self.transfer.phi(self.ctx, &xi, false)?;
        r.expect("Φ(η) = Φ(ξ)", phi_eta == phi_xi, || {
            format!("degree {:?}", phi_eta.first_difference(&phi_xi))
        });
        let g = self.transfer.g();
        let d_psi = homotopy_boundary(bar_x, g, &self.transfer.psi(self.ctx, &s)?)?;
        r.expect("Φ(η) = [d,Ψ(s)]", phi_eta == d_psi, || {
            format!("degree {:?}", phi_eta.first_difference(&d_psi))
        });
        let rep = self.cup_representative()?;
        r.merge_prefixed(
            "cup representative ",
            check_twisted_chain_map(bar_x, g, &rep),
        );
        let explicit = self
            .ctx
            .cup_explicit(&self.phi.comps[p], &self.psi.comps[q])?;
        r.expect(
            "cup top = cup_explicit",
            rep.comps[p + q] == explicit,
            || "top components differ".into(),
        );
        let bracket = self.ctx.bracket(&self.phi.comps[p], &self.psi.comps[q])?;
        r.expect(
            "bracket from homotopy",
            self.bracket_from_homotopy()? == bracket,
            || "Ψ(s) differs from {φ_p, ψ_q}".into(),
        );
        Ok(r)
    }
}

/// Builds factory extensions of lengths `p` and `q` from seeded random cocycles,
/// lifts the identity of `X` into both, and runs [`ExtensionLoop::verify`].
pub fn verify_extension_loop<F: Field>(
    ctx: &OperadContext<F>,
    p: usize,
    q: usize,
    seed: u64,
) -> Result<Report> {
    if p == 0 || q == 0 {
        return Err(Error::Degree("the loop needs p, q ≥ 1".into()));
    }
    let bar = ctx.bar(Source::X);
    let id = Matrix::identity(ctx.x().dim);
    let build = |n: usize, s: u64| -> Result<(Extension<F>, GradedMap<F>)> {
        let c = random_cocycle(bar, n, ctx.z(), Source::X, s);
        let e = factory_extension(bar, &c, ctx.z())?;
        let lift = lift_chain_map(bar, Source::X, &e, &id)?;
        Ok((e, lift))
    };
    let (e, phi) = build(p, seed)?;
    let (f, psi) = build(q, seed.wrapping_add(1))?;
    ExtensionLoop::new(ctx, e, f, phi, psi)?.verify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;
    use crate::bar::BarConfig;
    use crate::bialgebroid::{cyclic_group_bialgebra, enveloping};
    use crate::field::Q;
    use crate::yd::{sign_pair, unit_coefficients};

    fn dual_ctx(max_degree: usize) -> OperadContext<Q> {
        let b = enveloping(&FiniteAlgebra::<Q>::dual_numbers());
        OperadContext::new(&b, unit_coefficients(&b).unwrap(), max_degree).unwrap()
    }

    fn factory(ctx: &OperadContext<Q>, p: usize, seed: u64) -> Extension<Q> {
        let bar = ctx.bar(Source::X);
        factory_extension(
            bar,
            &random_cocycle(bar, p, ctx.z(), Source::X, seed),
            ctx.z(),
        )
        .unwrap()
    }

    /// `0 → Z → Z ⊕ X → X → 0`.
    fn split<F: Field>(x: &UModule<F>, z: &UModule<F>) -> Extension<F> {
        let mid = z.direct_sum(x);
        let i = block_matrix(mid.dim, z.dim, &[(0, 0, &Matrix::identity(z.dim))]);
        let p = block_matrix(x.dim, mid.dim, &[(0, z.dim, &Matrix::identity(x.dim))]);
        Extension::new(vec![x.clone(), mid, z.clone()], vec![p, i]).unwrap()
    }

    #[test]
    fn factory_dimensions_on_dual_numbers() {
        let ctx = dual_ctx(3);
        assert_eq!(factory(&ctx, 1, 3).dims(), vec![2, 4, 2]);
        assert_eq!(factory(&ctx, 2, 3).dims(), vec![2, 4, 4, 2]);
    }

    #[test]
    fn factory_rejects_degree_zero_and_non_cocycles() {
        let ctx = dual_ctx(3);
        let bar = ctx.bar(Source::X);
        let zero = ctx.zero(0, Source::X, ctx.z());
        assert!(matches!(
            factory_extension(bar, &zero, ctx.z()),
            Err(Error::Degree(_))
        ));
        let noise = (0..20)
            .map(|s| ctx.random(1, ctx.z(), Source::X, s))
            .find(|c| !bar.delta(c).is_zero())
            .unwrap();
        assert!(matches!(
            factory_extension(bar, &noise, ctx.z()),
            Err(Error::NotExact(_))
        ));
    }

    #[test]
    fn extension_constructor_rejects_broken_sequences() {
        let ctx = dual_ctx(2);
        let e = factory(&ctx, 1, 3);
        let mut maps = e.maps.clone();
        maps[1] = Matrix::zeros(maps[1].nrows(), maps[1].ncols());
        assert!(matches!(
            Extension::new(e.modules.clone(), maps),
            Err(Error::NotExact(_))
        ));
        let short = Extension::new(e.modules[..2].to_vec(), e.maps[..1].to_vec());
        assert!(matches!(short, Err(Error::Shape(_))));
    }

    #[test]
    fn splicing_morphisms_composes() {
        let ctx = dual_ctx(2);
        let x = ctx.x();
        let two = Morphism::new(
            x.clone(),
            x.clone(),
            Matrix::identity(x.dim).scale(&Q::from_i64(2)),
        )
        .unwrap();
        let three = Morphism::new(
            x.clone(),
            x.clone(),
            Matrix::identity(x.dim).scale(&Q::from_i64(3)),
        )
        .unwrap();
        match splice(&Yoneda::Morphism(two), &Yoneda::Morphism(three)).unwrap() {
            Yoneda::Morphism(m) => {
                assert_eq!(m.map, Matrix::identity(x.dim).scale(&Q::from_i64(6)))
            }
            other => panic!("expected a morphism, got length {}", other.length()),
        }
    }

    #[test]
    fn splicing_with_identities_keeps_dimensions() {
        let ctx = dual_ctx(3);
        let e = factory(&ctx, 2, 5);
        let id = Yoneda::Morphism(Morphism::identity(ctx.x()));
        let pulled = splice(&Yoneda::Extension(e.clone()), &id).unwrap();
        let pushed = splice(
            &Yoneda::Morphism(Morphism::identity(ctx.z())),
            &Yoneda::Extension(e.clone()),
        )
        .unwrap();
        for y in [pulled, pushed] {
            match y {
                Yoneda::Extension(g) => assert_eq!(g.dims(), e.dims()),
                Yoneda::Morphism(_) => panic!("expected an extension"),
            }
        }
    }

    #[test]
    fn splicing_two_extensions_is_exact() {
        let ctx = dual_ctx(2);
        let (e, f) = (factory(&ctx, 1, 1), factory(&ctx, 1, 2));
        match splice(&Yoneda::Extension(e), &Yoneda::Extension(f)).unwrap() {
            Yoneda::Extension(g) => assert_eq!(g.dims(), vec![2, 4, 4, 2]),
            Yoneda::Morphism(_) => panic!("expected an extension"),
        }
    }

    #[test]
    fn splice_reports_object_mismatch() {
        let ctx = dual_ctx(2);
        let e = factory(&ctx, 1, 1);
        let b = ctx.bialgebroid();
        let bigger = ctx.x().direct_sum(ctx.x());
        let g = Morphism::new(bigger.clone(), bigger.clone(), Matrix::identity(4)).unwrap();
        assert!(matches!(
            splice(&Yoneda::Extension(e.clone()), &Yoneda::Morphism(g)),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            Moloch::new(b, &e, &split(&bigger, ctx.z())),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn moloch_dimensions_and_edges() {
        let ctx = dual_ctx(3);
        let b = ctx.bialgebroid();
        let (e, f) = (factory(&ctx, 1, 1), factory(&ctx, 2, 2));
        let m = Moloch::new(b, &e, &f).unwrap();
        assert_eq!(m.extension().dims(), vec![2, 8, 12, 8, 2]);
        m.extension().check_exact().unwrap();
        let h = left_splice(b, &e, &f).unwrap();
        assert!(check_chain_map(m.extension(), &h, &lambda_edge(b, &m, &h)).is_ok());
        let r = right_splice(b, &e, &f).unwrap();
        assert!(check_chain_map(m.extension(), &r, &rho_edge(b, &m, &r)).is_ok());
    }

    #[test]
    fn rho_edge_needs_its_sign() {
        let ctx = dual_ctx(3);
        let b = ctx.bialgebroid();
        let (e, f) = (factory(&ctx, 1, 1), factory(&ctx, 2, 2));
        let m = Moloch::new(b, &f, &e).unwrap();
        let r = right_splice(b, &f, &e).unwrap();
        let mut rho = rho_edge(b, &m, &r);
        let top = rho.comps.len() - 2;
        rho.comps[top + 1] = rho.comps[top + 1].neg();
        rho.comps[top] = rho.comps[top].neg();
        assert!(!check_chain_map(m.extension(), &r, &rho).is_ok());
    }

    #[test]
    fn sigma_tau_commutes_for_unit_coefficients() {
        let ctx = dual_ctx(3);
        let (e, f) = (factory(&ctx, 2, 1), factory(&ctx, 1, 2));
        let st = SigmaTau::new(ctx.bialgebroid(), &e, &f, &ctx.pair().x, &ctx.pair().z).unwrap();
        assert!(st.check().is_ok());
    }

    #[test]
    fn sigma_tau_fails_only_in_the_middle_square_for_the_sign_pair() {
        let b = cyclic_group_bialgebra::<Q>(2);
        let (x, z) = sign_pair(&b).unwrap();
        let e = split(&x.module, &z.module);
        let st = SigmaTau::new(&b, &e, &e, &x, &z).unwrap();
        let r = st.check();
        assert_eq!(r.failed_axioms(), vec!["middle square"]);
        assert_eq!(r.checked.len(), 3);
    }

    #[test]
    fn lifted_identity_is_a_cocycle_representative() {
        let ctx = dual_ctx(3);
        let bar = ctx.bar(Source::X);
        let e = factory(&ctx, 2, 4);
        let phi = lift_chain_map(bar, Source::X, &e, &Matrix::identity(2)).unwrap();
        assert!(check_twisted_chain_map(bar, &e, &phi).is_ok());
        let short =
            BarResolution::build(ctx.bialgebroid(), ctx.x(), 1, BarConfig::default()).unwrap();
        assert!(matches!(
            lift_chain_map(&short, Source::X, &e, &Matrix::identity(2)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn lifted_top_component_recovers_the_cocycle_class() {
        let ctx = dual_ctx(3);
        let bar = ctx.bar(Source::X);
        let c = random_cocycle(bar, 2, ctx.z(), Source::X, 9);
        let e = factory_extension(bar, &c, ctx.z()).unwrap();
        let phi = lift_chain_map(bar, Source::X, &e, &Matrix::identity(2)).unwrap();
        let diff = phi.comps[2].sub(&c);
        let coboundaries = bar.coboundaries(2, ctx.z(), Source::X);
        assert!(coboundaries.contains(&bar.flatten(&diff)));
    }

    #[test]
    fn transfer_of_a_length_one_extension() {
        let ctx = dual_ctx(2);
        let b = ctx.bialgebroid();
        let zz = TensorModule::new(b, ctx.z(), ctx.z()).module;
        let bar_xx = ctx.bar(Source::XX);
        let c = random_cocycle(bar_xx, 1, &zz, Source::XX, 3);
        let h = factory_extension(bar_xx, &c, &zz).unwrap();
        let t = TransferTarget::new(&ctx, &h).unwrap();
        assert_eq!(t.g().length(), 1);
        let xi = lift_chain_map(
            bar_xx,
            Source::XX,
            &h,
            &Matrix::identity(ctx.xx().module.dim),
        )
        .unwrap();
        let rep = t.phi(&ctx, &xi, true).unwrap();
        assert!(check_twisted_chain_map(ctx.bar(Source::X), t.g(), &rep).is_ok());
    }

    #[test]
    fn transfers_intertwine_differentials() {
        let ctx = dual_ctx(3);
        let b = ctx.bialgebroid();
        let (e, f) = (factory(&ctx, 1, 1), factory(&ctx, 1, 2));
        let h = left_splice(b, &e, &f).unwrap();
        let t = TransferTarget::new(&ctx, &h).unwrap();
        let bar_xx = ctx.bar(Source::XX);
        for seed in 0..4 {
            let mut nu = GradedMap::zero(bar_xx, Source::XX, 1, &h);
            for k in 0..nu.comps.len() {
                nu.comps[k] = ctx.random(
                    k,
                    h.module(k as isize + 1),
                    Source::XX,
                    seed * 10 + k as u64,
                );
            }
            let lhs = t
                .phi(&ctx, &homotopy_boundary(bar_xx, &h, &nu).unwrap(), false)
                .unwrap();
            let rhs =
                homotopy_boundary(ctx.bar(Source::X), t.g(), &t.psi(&ctx, &nu).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn epsilon_vanishes_below_p_and_on_the_twist() {
        let ctx = dual_ctx(3);
        let bar = ctx.bar(Source::X);
        let (e, f) = (factory(&ctx, 2, 1), factory(&ctx, 1, 2));
        let id = Matrix::identity(2);
        let phi = lift_chain_map(bar, Source::X, &e, &id).unwrap();
        let psi = lift_chain_map(bar, Source::X, &f, &id).unwrap();
        let l = ExtensionLoop::new(&ctx, e, f, phi, psi).unwrap();
        let eps = l.epsilon().unwrap();
        assert!(eps.bottom.is_zero());
        assert!(eps.comps[..2].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn extension_loop_passes_in_low_degrees() {
        let ctx = dual_ctx(4);
        for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
            for seed in [1, 5] {
                let r = verify_extension_loop(&ctx, p, q, seed).unwrap();
                assert!(r.is_ok(), "({p},{q}) seed {seed}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn extension_loop_needs_positive_lengths_and_enough_bar_degrees() {
        let ctx = dual_ctx(2);
        assert!(matches!(
            verify_extension_loop(&ctx, 0, 1, 1),
            Err(Error::Degree(_))
        ));
        assert!(matches!(
            verify_extension_loop(&ctx, 2, 2, 1),
            Err(Error::Resource(_))
        ));
    }
}
