//! Left bialgebroids `(U, A, s, t, Δ, ε)` with an exhaustive axiom checker.
//!
//! The four commuting `A`-actions on `U` are
//! `a ▸ b ⊳ u ⊲ c ◂ d = t(c) s(b) u s(d) t(a)`, so `⊳` and `⊲` are left
//! multiplication by `s` and `t`, while `◂` and `▸` are right multiplication by
//! `s` and `t`. The coproduct lands in `U_⊲ ⊗_A _⊳U`, the quotient of `U ⊗ U` by
//! `t(a) u ⊗ v - u ⊗ s(a) v`.

use crate::algebra::{
    check_algebra, induced_bimodule, tensor_over, Bimodule, FiniteAlgebra, TensorOverBase,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_dense, is_zero_dense, sub_dense, support, Matrix};
use crate::report::Report;

/// A pure tensor `c · e_i ⊗ e_j` of basis elements.
pub type Leg<F> = (F, usize, usize);

#[derive(Clone, Debug)]
pub struct LeftBialgebroid<F: Field> {
    u: FiniteAlgebra<F>,
    a: FiniteAlgebra<F>,
    s: Vec<Vec<F>>,
    t: Vec<Vec<F>>,
    uu: TensorOverBase<F>,
    delta: Vec<Vec<F>>,
    legs: Vec<Vec<Leg<F>>>,
    eps: Vec<Vec<F>>,
}

/// Forgetful bimodule of a left `U`-module: `a ⊳ m ⊲ b = s(a) t(b) m`, given
/// the action matrices of the images `s(e_a)` and `t(e_b)`.
pub(crate) fn forgetful_bimodule<F: Field>(
    s_acts: Vec<Matrix<F>>,
    t_acts: Vec<Matrix<F>>,
    dim: usize,
) -> Bimodule<F> {
    Bimodule {
        dim,
        left_act: s_acts,
        right_act: t_acts,
    }
}

impl<F: Field> LeftBialgebroid<F> {
    /// Assembles a bialgebroid from explicit data. `s[a]`, `t[a]` are the images
    /// of the base basis, `coproduct[u]` lists pure tensors whose class is
    /// `Δ(e_u)`, and `counit[u]` is `ε(e_u)` in base coordinates.
    ///
    /// No axioms are checked here; see [`check_bialgebroid`].
    pub fn new(
        u: FiniteAlgebra<F>,
        a: FiniteAlgebra<F>,
        s: Vec<Vec<F>>,
        t: Vec<Vec<F>>,
        coproduct: Vec<Vec<Leg<F>>>,
        counit: Vec<Vec<F>>,
    ) -> Result<Self> {
        let (n, m) = (u.dim(), a.dim());
        let shape_ok = s.len() == m
            && t.len() == m
            && s.iter().chain(&t).all(|v| v.len() == n)
            && coproduct.len() == n
            && coproduct.iter().flatten().all(|(_, i, j)| *i < n && *j < n)
            && counit.len() == n
            && counit.iter().all(|v| v.len() == m);
        if !shape_ok {
            return Err(Error::Shape(
                "bialgebroid structure maps have inconsistent sizes".into(),
            ));
        }
        let reg = Bimodule {
            dim: n,
            left_act: s.iter().map(|x| u.left_mul(x)).collect(),
            right_act: t.iter().map(|x| u.left_mul(x)).collect(),
        };
        let uu = tensor_over(&reg, &reg)?;
        let delta: Vec<Vec<F>> = coproduct.iter().map(|terms| uu.proj_terms(terms)).collect();
        let legs = delta.iter().map(|d| uu.terms(d)).collect();
        Ok(LeftBialgebroid {
            u,
            a,
            s,
            t,
            uu,
            delta,
            legs,
            eps: counit,
        })
    }

    /// The same bialgebroid with the Sweedler representatives replaced.
    ///
    /// The new legs must represent the same classes; this is asserted.
    pub fn with_legs(&self, legs: Vec<Vec<Leg<F>>>) -> Self {
        for (u, l) in legs.iter().enumerate() {
            assert_eq!(
                self.uu.proj_terms(l),
                self.delta[u],
                "legs for e{u} change the coproduct"
            );
        }
        LeftBialgebroid {
            legs,
            ..self.clone()
        }
    }

    /// The same data with a different counit.
    pub fn with_counit(&self, counit: Vec<Vec<F>>) -> Self {
        LeftBialgebroid {
            eps: counit,
            ..self.clone()
        }
    }

    pub fn total(&self) -> &FiniteAlgebra<F> {
        &self.u
    }

    pub fn base(&self) -> &FiniteAlgebra<F> {
        &self.a
    }

    pub fn dim_u(&self) -> usize {
        self.u.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn one(&self) -> Vec<F> {
        self.u.unit().to_vec()
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        self.u.basis(i)
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.u.mul(x, y)
    }

    /// Product of several elements, left to right. The empty product is `1`.
    pub fn product(&self, xs: &[&[F]]) -> Vec<F> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    fn along(&self, images: &[Vec<F>], x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim_u()];
        for (i, c) in support(x) {
            axpy_dense(&mut out, c, &images[i]);
        }
        out
    }

    /// `s(x)` for a base element `x`.
    pub fn s(&self, x: &[F]) -> Vec<F> {
        self.along(&self.s, x)
    }

    /// `t(x)` for a base element `x`.
    pub fn t(&self, x: &[F]) -> Vec<F> {
        self.along(&self.t, x)
    }

    pub fn s_basis(&self, a: usize) -> &[F] {
        &self.s[a]
    }

    pub fn t_basis(&self, a: usize) -> &[F] {
        &self.t[a]
    }

    /// `ε(x)` in base coordinates.
    pub fn eps(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim_a()];
        for (i, c) in support(x) {
            axpy_dense(&mut out, c, &self.eps[i]);
        }
        out
    }

    pub fn counit_table(&self) -> &[Vec<F>] {
        &self.eps
    }

    /// `a ▸ b ⊳ u ⊲ c ◂ d = t(c) s(b) u s(d) t(a)`.
    pub fn four_actions(&self, a: &[F], b: &[F], u: &[F], c: &[F], d: &[F]) -> Vec<F> {
        self.product(&[&self.t(c), &self.s(b), u, &self.s(d), &self.t(a)])
    }

    /// The space `U_⊲ ⊗_A _⊳U` receiving the coproduct.
    pub fn coproduct_space(&self) -> &TensorOverBase<F> {
        &self.uu
    }

    /// `Δ(e_u)` in coordinates of [`LeftBialgebroid::coproduct_space`].
    pub fn coproduct_basis(&self, u: usize) -> &[F] {
        &self.delta[u]
    }

    /// Sweedler legs `Σ c · e_i ⊗ e_j` of `Δ(e_u)`.
    pub fn legs_basis(&self, u: usize) -> &[Leg<F>] {
        &self.legs[u]
    }

    /// Sweedler legs of `Δ(x)` for an arbitrary element.
    pub fn legs(&self, x: &[F]) -> Vec<Leg<F>> {
        let mut out = Vec::new();
        for (u, c) in support(x) {
            for (d, i, j) in &self.legs[u] {
                out.push((c.mul(d), *i, *j));
            }
        }
        out
    }

    pub fn coproduct(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.uu.dim()];
        for (u, c) in support(x) {
            axpy_dense(&mut out, c, &self.delta[u]);
        }
        out
    }

    /// `U` as an `A`-bimodule through `⊳` and `⊲`.
    pub fn regular_bimodule(&self) -> Bimodule<F> {
        forgetful_bimodule(
            self.s.iter().map(|x| self.u.left_mul(x)).collect(),
            self.t.iter().map(|x| self.u.left_mul(x)).collect(),
            self.dim_u(),
        )
    }

    /// Matrices of the actions `⊳`, `⊲`, `◂`, `▸` of each base basis element, in that order.
    pub fn action_matrices(&self) -> [Vec<Matrix<F>>; 4] {
        [
            self.s.iter().map(|x| self.u.left_mul(x)).collect(),
            self.t.iter().map(|x| self.u.left_mul(x)).collect(),
            self.s.iter().map(|x| self.u.right_mul(x)).collect(),
            self.t.iter().map(|x| self.u.right_mul(x)).collect(),
        ]
    }
}

/// The enveloping bialgebroid `A^e = A ⊗ A^op` over `A`, with basis index
/// `i * dim A + j` for `e_i ⊗ e_j`:
/// `Δ(a ⊗ b) = (a ⊗ 1) ⊗_A (1 ⊗ b)`, `ε(a ⊗ b) = ab`, `s(a) = a ⊗ 1`, `t(a) = 1 ⊗ a`.
pub fn enveloping<F: Field>(a: &FiniteAlgebra<F>) -> LeftBialgebroid<F> {
    let n = a.dim();
    let u = a.tensor(&a.opposite());
    let one = a.unit();
    let pure = |x: &[F], y: &[F]| {
        let mut v = vec![F::zero(); n * n];
        for (i, p) in support(x) {
            for (j, q) in support(y) {
                v[i * n + j] = p.mul(q);
            }
        }
        v
    };
    let s = (0..n).map(|i| pure(&a.basis(i), one)).collect();
    let t = (0..n).map(|i| pure(one, &a.basis(i))).collect();
    let coproduct = (0..n * n)
        .map(|p| {
            let (i, j) = (p / n, p % n);
            let mut terms = Vec::new();
            for (k, x) in support(one) {
                for (l, y) in support(one) {
                    terms.push((x.mul(y), i * n + k, l * n + j));
                }
            }
            terms
        })
        .collect();
    let counit = (0..n * n)
        .map(|p| a.basis_product(p / n, p % n).to_dense(n))
        .collect();
    LeftBialgebroid::new(u, a.clone(), s, t, coproduct, counit)
        .expect("enveloping data is well-shaped")
}

/// A bialgebra `(H, Δ_H, ε_H)` as a left bialgebroid over the ground field
/// with `s = t` the unit map. Fails if any axiom does not hold.
pub fn from_bialgebra<F: Field>(
    h: &FiniteAlgebra<F>,
    coproduct: Vec<Vec<Leg<F>>>,
    counit: Vec<F>,
) -> Result<LeftBialgebroid<F>> {
    let k = FiniteAlgebra::ground();
    let unit = h.unit().to_vec();
    let b = LeftBialgebroid::new(
        h.clone(),
        k,
        vec![unit.clone()],
        vec![unit],
        coproduct,
        counit.into_iter().map(|x| vec![x]).collect(),
    )?;
    let r = check_bialgebroid(&b);
    match r.failures.first() {
        None => Ok(b),
        Some(f) => Err(Error::Axiom {
            axiom: f.axiom.clone(),
            witness: f.witness.clone(),
        }),
    }
}

/// The group algebra of the cyclic group of order `n` with `Δ g = g ⊗ g`.
pub fn cyclic_group_bialgebra<F: Field>(n: usize) -> LeftBialgebroid<F> {
    let h = FiniteAlgebra::cyclic_group(n);
    let coproduct = (0..n).map(|i| vec![(F::one(), i, i)]).collect();
    from_bialgebra(&h, coproduct, vec![F::one(); n]).expect("group algebras are bialgebras")
}

/// The dual numbers `k[x]/(x^2)` with `x` primitive.
///
/// This is a bialgebra only in characteristic 2: `Δ(x)^2 = 2 x ⊗ x` must vanish.
/// Elsewhere the multiplicativity check rejects it.
pub fn dual_numbers_bialgebra<F: Field>() -> Result<LeftBialgebroid<F>> {
    let h = FiniteAlgebra::dual_numbers();
    let coproduct = vec![
        vec![(F::one(), 0, 0)],
        vec![(F::one(), 1, 0), (F::one(), 0, 1)],
    ];
    from_bialgebra(&h, coproduct, vec![F::one(), F::zero()])
}

/// The ground field as the trivial bialgebroid over itself.
pub fn trivial<F: Field>() -> LeftBialgebroid<F> {
    from_bialgebra(
        &FiniteAlgebra::ground(),
        vec![vec![(F::one(), 0, 0)]],
        vec![F::one()],
    )
    .expect("the ground field is a bialgebra")
}

/// `U_⊲ ⊗_A U ⊗_A _⊳U` with helpers to project pure triple tensors.
pub(crate) struct TripleTensor<F: Field> {
    pair: TensorOverBase<F>,
    triple: TensorOverBase<F>,
}

impl<F: Field> TripleTensor<F> {
    pub(crate) fn new(b: &LeftBialgebroid<F>) -> Self {
        let reg = b.regular_bimodule();
        let pair = b.coproduct_space().clone();
        let pair_bim = induced_bimodule(&pair, &reg, &reg);
        let triple = tensor_over(&pair_bim, &reg).expect("bases agree");
        TripleTensor { pair, triple }
    }

    pub(crate) fn dim(&self) -> usize {
        self.triple.dim()
    }

    pub(crate) fn add_pure(&self, c: &F, i: usize, j: usize, k: usize, acc: &mut [F]) {
        for (m, x) in self.pair.proj_pair(i, j).iter() {
            self.triple.proj_pair(*m, k).add_into(&c.mul(x), acc);
        }
    }
}

/// Checks every left bialgebroid axiom on all basis tuples.
///
/// Counit-related identities have names starting with `counit`.
pub fn check_bialgebroid<F: Field>(b: &LeftBialgebroid<F>) -> Report {
    let mut r = Report::new();
    let (n, m) = (b.dim_u(), b.dim_a());
    let u = b.total();
    let a = b.base();
    let mut alg = check_algebra(u);
    alg.checked
        .iter_mut()
        .for_each(|c| *c = format!("total-{c}"));
    alg.failures
        .iter_mut()
        .for_each(|f| f.axiom = format!("total-{}", f.axiom));
    r.merge(alg);
    let mut base = check_algebra(a);
    base.checked
        .iter_mut()
        .for_each(|c| *c = format!("base-{c}"));
    base.failures
        .iter_mut()
        .for_each(|f| f.axiom = format!("base-{}", f.axiom));
    r.merge(base);

    // Source and target.
    r.expect("source-unital", b.s(a.unit()) == b.one(), || {
        "s(1) != 1".into()
    });
    r.expect("target-unital", b.t(a.unit()) == b.one(), || {
        "t(1) != 1".into()
    });
    for x in 0..m {
        for y in 0..m {
            let xy = a.basis_product(x, y).to_dense(m);
            r.expect(
                "source-multiplicative",
                b.s(&xy) == b.mul(b.s_basis(x), b.s_basis(y)),
                || format!("s(e{x} e{y}) != s(e{x}) s(e{y})"),
            );
            r.expect(
                "target-antimultiplicative",
                b.t(&xy) == b.mul(b.t_basis(y), b.t_basis(x)),
                || format!("t(e{x} e{y}) != t(e{y}) t(e{x})"),
            );
            r.expect(
                "source-target-commute",
                b.mul(b.s_basis(x), b.t_basis(y)) == b.mul(b.t_basis(y), b.s_basis(x)),
                || format!("s(e{x}) t(e{y}) != t(e{y}) s(e{x})"),
            );
        }
    }
    let acts = b.action_matrices();
    let names = ["⊳", "⊲", "◂", "▸"];
    for p in 0..4 {
        for q in (p + 1)..4 {
            for x in 0..m {
                for y in 0..m {
                    let ok = acts[p][x].compose(&acts[q][y]) == acts[q][y].compose(&acts[p][x]);
                    r.expect("four-actions-commute", ok, || {
                        format!("{} e{x} and {} e{y}", names[p], names[q])
                    });
                }
            }
        }
    }

    // Coproduct.
    let uu = b.coproduct_space();
    let one_one = uu.proj(&b.one(), &b.one());
    r.expect("coproduct-unit", b.coproduct(&b.one()) == one_one, || {
        "Δ(1) != 1 ⊗ 1".into()
    });
    let tt = TripleTensor::new(b);
    for x in 0..n {
        let mut lhs = vec![F::zero(); tt.dim()];
        let mut rhs = vec![F::zero(); tt.dim()];
        for (c, i, j) in b.legs_basis(x) {
            for (d, p, q) in b.legs_basis(*i) {
                tt.add_pure(&c.mul(d), *p, *q, *j, &mut lhs);
            }
            for (d, p, q) in b.legs_basis(*j) {
                tt.add_pure(&c.mul(d), *i, *p, *q, &mut rhs);
            }
        }
        r.expect("coassociativity", lhs == rhs, || format!("e{x}"));
    }
    for x in 0..n {
        let mut left = vec![F::zero(); n];
        let mut right = vec![F::zero(); n];
        for (c, i, j) in b.legs_basis(x) {
            let l = b.mul(&b.s(&b.eps(&b.basis(*i))), &b.basis(*j));
            axpy_dense(&mut left, c, &l);
            let rr = b.mul(&b.t(&b.eps(&b.basis(*j))), &b.basis(*i));
            axpy_dense(&mut right, c, &rr);
        }
        r.expect("counit-left", left == b.basis(x), || {
            format!("s(ε(u₁)) u₂ != u for u = e{x}")
        });
        r.expect("counit-right", right == b.basis(x), || {
            format!("t(ε(u₂)) u₁ != u for u = e{x}")
        });
    }
    for x in 0..n {
        for y in 0..m {
            let mut acc = vec![F::zero(); uu.dim()];
            for (c, i, j) in b.legs_basis(x) {
                uu.proj_into(
                    c.clone(),
                    &b.mul(&b.basis(*i), b.t_basis(y)),
                    &b.basis(*j),
                    &mut acc,
                );
                uu.proj_into(
                    c.neg(),
                    &b.basis(*i),
                    &b.mul(&b.basis(*j), b.s_basis(y)),
                    &mut acc,
                );
            }
            r.expect("takeuchi", is_zero_dense(&acc), || {
                format!("u = e{x}, a = e{y}")
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = u.basis_product(x, y).to_dense(n);
            let mut prod = vec![F::zero(); uu.dim()];
            for (c, i, j) in b.legs_basis(x) {
                for (d, p, q) in b.legs_basis(y) {
                    let l = b.mul(&b.basis(*i), &b.basis(*p));
                    let rr = b.mul(&b.basis(*j), &b.basis(*q));
                    uu.proj_into(c.mul(d), &l, &rr, &mut prod);
                }
            }
            r.expect("coproduct-multiplicative", b.coproduct(&xy) == prod, || {
                format!("Δ(e{x} e{y})")
            });
        }
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..n {
                let w = b.product(&[b.s_basis(x), b.t_basis(y), &b.basis(z)]);
                let mut rhs = vec![F::zero(); uu.dim()];
                for (c, i, j) in b.legs_basis(z) {
                    let l = b.mul(b.s_basis(x), &b.basis(*i));
                    let rr = b.mul(b.t_basis(y), &b.basis(*j));
                    uu.proj_into(c.clone(), &l, &rr, &mut rhs);
                }
                r.expect("coproduct-bimodule", b.coproduct(&w) == rhs, || {
                    format!("a = e{x}, b = e{y}, u = e{z}")
                });
            }
        }
    }

    // Counit.
    r.expect("counit-unit", b.eps(&b.one()) == a.unit(), || {
        "ε(1) != 1".into()
    });
    for x in 0..n {
        for y in 0..n {
            let lhs = b.eps(&u.basis_product(x, y).to_dense(n));
            let ey = b.eps(&b.basis(y));
            let via_s = b.eps(&b.mul(&b.basis(x), &b.s(&ey)));
            let via_t = b.eps(&b.mul(&b.basis(x), &b.t(&ey)));
            r.expect("counit-multiplicative-source", lhs == via_s, || {
                format!("ε(e{x} e{y}) != ε(e{x} s(ε(e{y})))")
            });
            r.expect("counit-multiplicative-target", lhs == via_t, || {
                format!("ε(e{x} e{y}) != ε(e{x} t(ε(e{y})))")
            });
        }
    }
    for x in 0..m {
        r.expect("counit-source", b.eps(b.s_basis(x)) == a.basis(x), || {
            format!("ε(s(e{x})) != e{x}")
        });
        r.expect("counit-target", b.eps(b.t_basis(x)) == a.basis(x), || {
            format!("ε(t(e{x})) != e{x}")
        });
        for y in 0..m {
            for z in 0..n {
                let w = b.product(&[b.s_basis(x), b.t_basis(y), &b.basis(z)]);
                let rhs = a.mul(&a.mul(&a.basis(x), &b.eps(&b.basis(z))), &a.basis(y));
                r.expect("counit-bimodule", b.eps(&w) == rhs, || {
                    format!("ε(s(e{x}) t(e{y}) e{z}) != e{x} ε(e{z}) e{y}")
                });
            }
        }
    }
    r
}

/// `Δ(u)` minus the class of the given pure tensors, for diagnostics.
pub fn coproduct_residual<F: Field>(b: &LeftBialgebroid<F>, u: usize, terms: &[Leg<F>]) -> Vec<F> {
    sub_dense(b.coproduct_basis(u), &b.coproduct_space().proj_terms(terms))
}
