//! Comodules and Yetter–Drinfeld modules over a left bialgebroid, the braidings
//! `σ` and `τ`, commuting pairs, and braided (co)commutative (co)monoids.
//!
//! Coactions are stored as classes in the appropriate balanced tensor space
//! together with Sweedler legs read off the quotient representatives:
//! `λ(z) = z₍₋₁₎ ⊗_A z₍₀₎ ∈ U_⊲ ⊗_A Z` and `ρ(x) = x₍₀₎ ⊗_A x₍₁₎ ∈ X ⊗_A _⊳U`.

use crate::algebra::{tensor_over, TensorOverBase};
use crate::bialgebroid::{LeftBialgebroid, Leg};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_dense, support, Matrix, SVec};
use crate::report::Report;
use crate::umodule::{check_u_linear, check_umodule, TensorModule, UModule};

fn scaled_legs<F: Field>(table: &[Vec<Leg<F>>], v: &[F]) -> Vec<Leg<F>> {
    let mut out = Vec::new();
    for (k, c) in support(v) {
        for (d, i, j) in &table[k] {
            out.push((c.mul(d), *i, *j));
        }
    }
    out
}

fn check_leg_shape<F: Field>(
    legs: &[Vec<Leg<F>>],
    n: usize,
    left: usize,
    right: usize,
) -> Result<()> {
    if legs.len() != n
        || legs
            .iter()
            .flatten()
            .any(|(_, i, j)| *i >= left || *j >= right)
    {
        return Err(Error::Shape(format!(
            "expected {n} lists of legs with indices below ({left}, {right})"
        )));
    }
    Ok(())
}

/// A left coaction `λ: Z → U_⊲ ⊗_A Z`.
#[derive(Clone, Debug)]
pub struct LeftCoaction<F: Field> {
    pub space: TensorModule<F>,
    coords: Vec<Vec<F>>,
    legs: Vec<Vec<Leg<F>>>,
}

impl<F: Field> LeftCoaction<F> {
    /// `legs[k]` lists pure tensors `(c, u, j)` whose class is `λ(e_k)`.
    pub fn new(b: &LeftBialgebroid<F>, z: &UModule<F>, legs: Vec<Vec<Leg<F>>>) -> Result<Self> {
        check_leg_shape(&legs, z.dim, b.dim_u(), z.dim)?;
        let space = TensorModule::new(b, &UModule::regular(b), z);
        let coords: Vec<Vec<F>> = legs.iter().map(|l| space.space.proj_terms(l)).collect();
        let legs = coords.iter().map(|c| space.space.terms(c)).collect();
        Ok(LeftCoaction {
            space,
            coords,
            legs,
        })
    }

    /// The same coaction with other representatives of the same classes.
    pub fn with_legs(&self, legs: Vec<Vec<Leg<F>>>) -> Self {
        for (k, l) in legs.iter().enumerate() {
            assert_eq!(
                self.space.space.proj_terms(l),
                self.coords[k],
                "legs for z{k} change the coaction"
            );
        }
        LeftCoaction {
            legs,
            ..self.clone()
        }
    }

    pub fn coact(&self, z: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.space.dim()];
        for (k, c) in support(z) {
            axpy_dense(&mut out, c, &self.coords[k]);
        }
        out
    }

    pub fn legs_basis(&self, k: usize) -> &[Leg<F>] {
        &self.legs[k]
    }

    pub fn legs(&self, z: &[F]) -> Vec<Leg<F>> {
        scaled_legs(&self.legs, z)
    }

    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_dense_cols(self.space.dim(), &self.coords)
    }
}

/// A right coaction `ρ: X → X ⊗_A _⊳U`.
#[derive(Clone, Debug)]
pub struct RightCoaction<F: Field> {
    pub space: TensorModule<F>,
    coords: Vec<Vec<F>>,
    legs: Vec<Vec<Leg<F>>>,
}

impl<F: Field> RightCoaction<F> {
    /// `legs[k]` lists pure tensors `(c, j, u)` whose class is `ρ(e_k)`.
    pub fn new(b: &LeftBialgebroid<F>, x: &UModule<F>, legs: Vec<Vec<Leg<F>>>) -> Result<Self> {
        check_leg_shape(&legs, x.dim, x.dim, b.dim_u())?;
        let space = TensorModule::new(b, x, &UModule::regular(b));
        let coords: Vec<Vec<F>> = legs.iter().map(|l| space.space.proj_terms(l)).collect();
        let legs = coords.iter().map(|c| space.space.terms(c)).collect();
        Ok(RightCoaction {
            space,
            coords,
            legs,
        })
    }

    pub fn with_legs(&self, legs: Vec<Vec<Leg<F>>>) -> Self {
        for (k, l) in legs.iter().enumerate() {
            assert_eq!(
                self.space.space.proj_terms(l),
                self.coords[k],
                "legs for x{k} change the coaction"
            );
        }
        RightCoaction {
            legs,
            ..self.clone()
        }
    }

    pub fn coact(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.space.dim()];
        for (k, c) in support(x) {
            axpy_dense(&mut out, c, &self.coords[k]);
        }
        out
    }

    pub fn legs_basis(&self, k: usize) -> &[Leg<F>] {
        &self.legs[k]
    }

    pub fn legs(&self, x: &[F]) -> Vec<Leg<F>> {
        scaled_legs(&self.legs, x)
    }

    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_dense_cols(self.space.dim(), &self.coords)
    }
}

/// An `A`-ring structure on a module: a product on basis pairs and a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid<F: Field> {
    /// Column `i * dim + j` is `e_i · e_j`.
    pub table: Matrix<F>,
    pub unit: Vec<F>,
}

impl<F: Field> Monoid<F> {
    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.unit.len();
        let mut out = vec![F::zero(); n];
        for (i, a) in support(x) {
            for (j, b) in support(y) {
                self.table.col(i * n + j).add_into(&a.mul(b), &mut out);
            }
        }
        out
    }

    /// The product as a map out of a balanced tensor square, evaluated on representatives.
    pub fn on_tensor(&self, zz: &TensorOverBase<F>) -> Matrix<F> {
        let n = self.unit.len();
        let cols = (0..zz.dim()).map(|k| {
            let (i, j) = zz.rep(k);
            self.table.col(i * n + j).clone()
        });
        Matrix::from_cols(n, cols.collect())
    }
}

/// An `A`-coring structure: a coproduct into `X ⊗_A X` and a counit `X → A`.
#[derive(Clone, Debug)]
pub struct Comonoid<F: Field> {
    pub space: TensorModule<F>,
    coords: Vec<Vec<F>>,
    legs: Vec<Vec<Leg<F>>>,
    /// `dim A × dim X`.
    pub counit: Matrix<F>,
}

impl<F: Field> Comonoid<F> {
    pub fn new(
        b: &LeftBialgebroid<F>,
        x: &UModule<F>,
        legs: Vec<Vec<Leg<F>>>,
        counit: Matrix<F>,
    ) -> Result<Self> {
        check_leg_shape(&legs, x.dim, x.dim, x.dim)?;
        if counit.nrows() != b.dim_a() || counit.ncols() != x.dim {
            return Err(Error::Shape("counit must be dim A × dim X".into()));
        }
        let space = TensorModule::new(b, x, x);
        let coords: Vec<Vec<F>> = legs.iter().map(|l| space.space.proj_terms(l)).collect();
        let legs = coords.iter().map(|c| space.space.terms(c)).collect();
        Ok(Comonoid {
            space,
            coords,
            legs,
            counit,
        })
    }

    pub fn coproduct(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.space.dim()];
        for (k, c) in support(x) {
            axpy_dense(&mut out, c, &self.coords[k]);
        }
        out
    }

    pub fn legs_basis(&self, k: usize) -> &[Leg<F>] {
        &self.legs[k]
    }

    pub fn legs(&self, x: &[F]) -> Vec<Leg<F>> {
        scaled_legs(&self.legs, x)
    }

    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_dense_cols(self.space.dim(), &self.coords)
    }

    pub fn eps(&self, x: &[F]) -> Vec<F> {
        self.counit.apply(x)
    }
}

/// A left-left Yetter–Drinfeld module, optionally carrying a monoid structure.
#[derive(Clone, Debug)]
pub struct YDLeftLeft<F: Field> {
    pub module: UModule<F>,
    pub coaction: LeftCoaction<F>,
    pub monoid: Option<Monoid<F>>,
}

impl<F: Field> YDLeftLeft<F> {
    pub fn new(b: &LeftBialgebroid<F>, module: UModule<F>, legs: Vec<Vec<Leg<F>>>) -> Result<Self> {
        let coaction = LeftCoaction::new(b, &module, legs)?;
        Ok(YDLeftLeft {
            module,
            coaction,
            monoid: None,
        })
    }

    pub fn with_monoid(mut self, table: Matrix<F>, unit: Vec<F>) -> Result<Self> {
        let n = self.module.dim;
        if table.nrows() != n || table.ncols() != n * n || unit.len() != n {
            return Err(Error::Shape(
                "monoid table must be dim × dim² with a unit of length dim".into(),
            ));
        }
        self.monoid = Some(Monoid { table, unit });
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }
}

/// A left-right Yetter–Drinfeld module, optionally carrying a comonoid structure.
#[derive(Clone, Debug)]
pub struct YDLeftRight<F: Field> {
    pub module: UModule<F>,
    pub coaction: RightCoaction<F>,
    pub comonoid: Option<Comonoid<F>>,
}

impl<F: Field> YDLeftRight<F> {
    pub fn new(b: &LeftBialgebroid<F>, module: UModule<F>, legs: Vec<Vec<Leg<F>>>) -> Result<Self> {
        let coaction = RightCoaction::new(b, &module, legs)?;
        Ok(YDLeftRight {
            module,
            coaction,
            comonoid: None,
        })
    }

    pub fn with_comonoid(
        mut self,
        b: &LeftBialgebroid<F>,
        legs: Vec<Vec<Leg<F>>>,
        counit: Matrix<F>,
    ) -> Result<Self> {
        self.comonoid = Some(Comonoid::new(b, &self.module, legs, counit)?);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }
}

/// Adds `c · [e_i ⊗ (e_j ⊗ e_k)]` into `acc`.
fn add_right_nested<F: Field>(
    inner: &TensorOverBase<F>,
    outer: &TensorOverBase<F>,
    c: &F,
    i: usize,
    j: usize,
    k: usize,
    acc: &mut [F],
) {
    for (m, x) in inner.proj_pair(j, k).iter() {
        outer.proj_pair(i, *m).add_into(&c.mul(x), acc);
    }
}

/// Adds `c · [(e_i ⊗ e_j) ⊗ e_k]` into `acc`.
fn add_left_nested<F: Field>(
    inner: &TensorOverBase<F>,
    outer: &TensorOverBase<F>,
    c: &F,
    i: usize,
    j: usize,
    k: usize,
    acc: &mut [F],
) {
    for (m, x) in inner.proj_pair(i, j).iter() {
        outer.proj_pair(*m, k).add_into(&c.mul(x), acc);
    }
}

/// Coassociativity, counitality, bilinearity and the Takeuchi condition of a
/// left coaction, plus agreement of the two induced `A`-bimodule structures.
pub fn check_left_comodule<F: Field>(
    b: &LeftBialgebroid<F>,
    z: &UModule<F>,
    lam: &LeftCoaction<F>,
) -> Report {
    let mut r = Report::new();
    let uz = &lam.space;
    let triple =
        tensor_over(&UModule::regular(b).bimodule(b), &uz.module.bimodule(b)).expect("bases agree");
    for k in 0..z.dim {
        let ek = z.basis(k);
        let legs = lam.legs_basis(k);

        let mut counit = z.zero_vec();
        for (c, u, j) in legs {
            axpy_dense(
                &mut counit,
                c,
                &z.act(&b.s(&b.eps(&b.basis(*u))), &z.basis(*j)),
            );
        }
        r.expect("comodule-counit", counit == ek, || {
            format!("s(ε(z₍₋₁₎)) z₍₀₎ != z for z = z{k}")
        });

        let mut lhs = vec![F::zero(); triple.dim()];
        let mut rhs = vec![F::zero(); triple.dim()];
        for (c, u, j) in legs {
            for (d, p, q) in b.legs_basis(*u) {
                add_right_nested(&uz.space, &triple, &c.mul(d), *p, *q, *j, &mut lhs);
            }
            for (d, p, l) in lam.legs_basis(*j) {
                add_right_nested(&uz.space, &triple, &c.mul(d), *u, *p, *l, &mut rhs);
            }
        }
        r.expect("comodule-coassociative", lhs == rhs, || {
            format!("(Δ ⊗ id) λ != (id ⊗ λ) λ on z{k}")
        });

        for a in 0..b.dim_a() {
            let (sa, ta) = (b.s_basis(a), b.t_basis(a));
            let mut left = vec![F::zero(); uz.dim()];
            let mut right = vec![F::zero(); uz.dim()];
            let mut tk_l = vec![F::zero(); uz.dim()];
            let mut tk_r = vec![F::zero(); uz.dim()];
            let mut induced = z.zero_vec();
            for (c, u, j) in legs {
                let eu = b.basis(*u);
                let ej = z.basis(*j);
                uz.proj_into(c.clone(), &b.mul(sa, &eu), &ej, &mut left);
                uz.proj_into(c.clone(), &b.mul(&eu, sa), &ej, &mut right);
                uz.proj_into(c.clone(), &b.mul(&eu, ta), &ej, &mut tk_l);
                uz.proj_into(c.clone(), &eu, &z.act(ta, &ej), &mut tk_r);
                axpy_dense(&mut induced, c, &z.act(&b.s(&b.eps(&b.mul(&eu, sa))), &ej));
            }
            let ok = lam.coact(&z.act(sa, &ek)) == left && lam.coact(&z.act(ta, &ek)) == right;
            r.expect("comodule-bilinear", ok, || {
                format!("λ(s(a) z t(a)) differs for a = a{a}, z = z{k}")
            });
            r.expect("comodule-takeuchi", tk_l == tk_r, || {
                format!("z₍₋₁₎ t(a) ⊗ z₍₀₎ != z₍₋₁₎ ⊗ t(a) z₍₀₎ for a = a{a}, z = z{k}")
            });
            r.expect("same-bimodule", induced == z.act(ta, &ek), || {
                format!("comodule right action differs from t(a) z for a = a{a}, z = z{k}")
            });
        }
    }
    r
}

/// The right-comodule analogue of [`check_left_comodule`].
pub fn check_right_comodule<F: Field>(
    b: &LeftBialgebroid<F>,
    x: &UModule<F>,
    rho: &RightCoaction<F>,
) -> Report {
    let mut r = Report::new();
    let xu = &rho.space;
    let triple =
        tensor_over(&xu.module.bimodule(b), &UModule::regular(b).bimodule(b)).expect("bases agree");
    for k in 0..x.dim {
        let ek = x.basis(k);
        let legs = rho.legs_basis(k);

        let mut counit = x.zero_vec();
        for (c, j, u) in legs {
            axpy_dense(
                &mut counit,
                c,
                &x.act(&b.t(&b.eps(&b.basis(*u))), &x.basis(*j)),
            );
        }
        r.expect("comodule-counit", counit == ek, || {
            format!("t(ε(x₍₁₎)) x₍₀₎ != x for x = x{k}")
        });

        let mut lhs = vec![F::zero(); triple.dim()];
        let mut rhs = vec![F::zero(); triple.dim()];
        for (c, j, u) in legs {
            for (d, i, v) in rho.legs_basis(*j) {
                add_left_nested(&xu.space, &triple, &c.mul(d), *i, *v, *u, &mut lhs);
            }
            for (d, p, q) in b.legs_basis(*u) {
                add_left_nested(&xu.space, &triple, &c.mul(d), *j, *p, *q, &mut rhs);
            }
        }
        r.expect("comodule-coassociative", lhs == rhs, || {
            format!("(ρ ⊗ id) ρ != (id ⊗ Δ) ρ on x{k}")
        });

        for a in 0..b.dim_a() {
            let (sa, ta) = (b.s_basis(a), b.t_basis(a));
            let mut via_t = vec![F::zero(); xu.dim()];
            let mut via_s = vec![F::zero(); xu.dim()];
            let mut tk_l = vec![F::zero(); xu.dim()];
            let mut tk_r = vec![F::zero(); xu.dim()];
            let mut induced = x.zero_vec();
            for (c, j, u) in legs {
                let eu = b.basis(*u);
                let ej = x.basis(*j);
                xu.proj_into(c.clone(), &ej, &b.mul(ta, &eu), &mut via_t);
                xu.proj_into(c.clone(), &ej, &b.mul(&eu, ta), &mut via_s);
                xu.proj_into(c.clone(), &x.act(sa, &ej), &eu, &mut tk_l);
                xu.proj_into(c.clone(), &ej, &b.mul(&eu, sa), &mut tk_r);
                axpy_dense(&mut induced, c, &x.act(&b.t(&b.eps(&b.mul(&eu, ta))), &ej));
            }
            let ok = rho.coact(&x.act(ta, &ek)) == via_t && rho.coact(&x.act(sa, &ek)) == via_s;
            r.expect("comodule-bilinear", ok, || {
                format!("ρ(s(a) t(a) x) differs for a = a{a}, x = x{k}")
            });
            r.expect("comodule-takeuchi", tk_l == tk_r, || {
                format!("s(a) x₍₀₎ ⊗ x₍₁₎ != x₍₀₎ ⊗ x₍₁₎ s(a) for a = a{a}, x = x{k}")
            });
            r.expect("same-bimodule", induced == x.act(sa, &ek), || {
                format!("comodule left action differs from s(a) x for a = a{a}, x = x{k}")
            });
        }
    }
    r
}

/// All axioms of a left-left YD module, including
/// `u₍₁₎ z₍₋₁₎ ⊗ u₍₂₎ z₍₀₎ = (u₍₁₎ z)₍₋₁₎ u₍₂₎ ⊗ (u₍₁₎ z)₍₀₎`.
pub fn check_yd_left_left<F: Field>(b: &LeftBialgebroid<F>, z: &YDLeftLeft<F>) -> Report {
    let m = &z.module;
    let lam = &z.coaction;
    let mut r = check_umodule(b, m);
    r.merge(check_left_comodule(b, m, lam));
    let uz = &lam.space;
    for u in 0..b.dim_u() {
        for k in 0..m.dim {
            let mut lhs = vec![F::zero(); uz.dim()];
            let mut rhs = vec![F::zero(); uz.dim()];
            for (c, p, q) in b.legs_basis(u) {
                for (d, v, j) in lam.legs_basis(k) {
                    let w = b.total().basis_product(*p, *v).to_dense(b.dim_u());
                    uz.proj_into(c.mul(d), &w, &m.act_basis(*q, &m.basis(*j)), &mut lhs);
                }
                for (d, v, j) in lam.legs(&m.act_basis(*p, &m.basis(k))) {
                    let w = b.total().basis_product(v, *q).to_dense(b.dim_u());
                    uz.proj_into(c.mul(&d), &w, &m.basis(j), &mut rhs);
                }
            }
            r.expect("yd", lhs == rhs, || {
                format!("left-left YD condition fails for u = e{u}, z = z{k}")
            });
        }
    }
    r
}

/// All axioms of a left-right YD module, including
/// `u₍₁₎ x₍₀₎ ⊗ u₍₂₎ x₍₁₎ = (u₍₂₎ x)₍₀₎ ⊗ (u₍₂₎ x)₍₁₎ u₍₁₎`.
pub fn check_yd_left_right<F: Field>(b: &LeftBialgebroid<F>, x: &YDLeftRight<F>) -> Report {
    let m = &x.module;
    let rho = &x.coaction;
    let mut r = check_umodule(b, m);
    r.merge(check_right_comodule(b, m, rho));
    let xu = &rho.space;
    for u in 0..b.dim_u() {
        for k in 0..m.dim {
            let mut lhs = vec![F::zero(); xu.dim()];
            let mut rhs = vec![F::zero(); xu.dim()];
            for (c, p, q) in b.legs_basis(u) {
                for (d, j, v) in rho.legs_basis(k) {
                    let w = b.total().basis_product(*q, *v).to_dense(b.dim_u());
                    xu.proj_into(c.mul(d), &m.act_basis(*p, &m.basis(*j)), &w, &mut lhs);
                }
                for (d, j, v) in rho.legs(&m.act_basis(*q, &m.basis(k))) {
                    let w = b.total().basis_product(v, *p).to_dense(b.dim_u());
                    xu.proj_into(c.mul(&d), &m.basis(j), &w, &mut rhs);
                }
            }
            r.expect("yd", lhs == rhs, || {
                format!("left-right YD condition fails for u = e{u}, x = x{k}")
            });
        }
    }
    r
}

/// The `A`-ring axioms, the module-algebra and comodule-algebra laws, and
/// braided commutativity `z · z' = (z₍₋₁₎ z') · z₍₀₎`.
pub fn check_braided_monoid<F: Field>(b: &LeftBialgebroid<F>, z: &YDLeftLeft<F>) -> Report {
    let mut r = Report::new();
    let Some(mon) = &z.monoid else {
        r.fail("monoid-present", "no multiplication given");
        return r;
    };
    let m = &z.module;
    let lam = &z.coaction;
    let uz = &lam.space;
    let n = m.dim;
    let one = &mon.unit;
    let e = |i: usize| m.basis(i);

    for a in 0..b.dim_a() {
        let (sa, ta) = (b.s_basis(a), b.t_basis(a));
        for i in 0..n {
            for j in 0..n {
                let balanced =
                    mon.mul(&m.act(ta, &e(i)), &e(j)) == mon.mul(&e(i), &m.act(sa, &e(j)));
                r.expect("ring-balanced", balanced, || {
                    format!("(t(a)z) z' != z (s(a)z') for a = a{a}, z{i}, z{j}")
                });
                let zz = mon.mul(&e(i), &e(j));
                let bilinear = mon.mul(&m.act(sa, &e(i)), &e(j)) == m.act(sa, &zz)
                    && mon.mul(&e(i), &m.act(ta, &e(j))) == m.act(ta, &zz);
                r.expect("ring-bilinear", bilinear, || {
                    format!("product not A-bilinear for a = a{a}, z{i}, z{j}")
                });
            }
        }
    }
    for i in 0..n {
        let unital = mon.mul(one, &e(i)) == e(i) && mon.mul(&e(i), one) == e(i);
        r.expect("ring-unital", unital, || {
            format!("1_Z is not a unit on z{i}")
        });
        for j in 0..n {
            let ij = mon.mul(&e(i), &e(j));
            for k in 0..n {
                let assoc = mon.mul(&ij, &e(k)) == mon.mul(&e(i), &mon.mul(&e(j), &e(k)));
                r.expect("ring-associative", assoc, || {
                    format!("(z{i} z{j}) z{k} != z{i} (z{j} z{k})")
                });
            }
        }
    }

    for u in 0..b.dim_u() {
        let eu = b.basis(u);
        let unit_ok = m.act(&eu, one) == m.act(&b.s(&b.eps(&eu)), one);
        r.expect("module-algebra-unit", unit_ok, || {
            format!("u 1_Z != ε(u) ⊳ 1_Z for u = e{u}")
        });
        for i in 0..n {
            for j in 0..n {
                let lhs = m.act(&eu, &mon.mul(&e(i), &e(j)));
                let mut rhs = m.zero_vec();
                let mut via_yd = m.zero_vec();
                for (c, p, q) in b.legs_basis(u) {
                    axpy_dense(
                        &mut rhs,
                        c,
                        &mon.mul(&m.act_basis(*p, &e(i)), &m.act_basis(*q, &e(j))),
                    );
                    for (d, v, l) in lam.legs_basis(i) {
                        let pv = b.total().basis_product(*p, *v).to_dense(b.dim_u());
                        let term = mon.mul(&m.act(&pv, &e(j)), &m.act_basis(*q, &e(*l)));
                        axpy_dense(&mut via_yd, &c.mul(d), &term);
                    }
                }
                r.expect("module-algebra", lhs == rhs, || {
                    format!("u (z z') != (u₍₁₎ z)(u₍₂₎ z') for u = e{u}, z{i}, z{j}")
                });
                r.expect("braided-commutative-equivariance", rhs == via_yd, || {
                    format!("u (z z') computed through braided commutativity differs for u = e{u}, z{i}, z{j}")
                });
            }
        }
    }

    let mut unit_coact = vec![F::zero(); uz.dim()];
    uz.proj_into(F::one(), &b.one(), one, &mut unit_coact);
    r.expect(
        "comodule-algebra-unit",
        lam.coact(one) == unit_coact,
        || "λ(1_Z) != 1 ⊗ 1_Z".into(),
    );
    for i in 0..n {
        for j in 0..n {
            let ij = mon.mul(&e(i), &e(j));
            let mut rhs = vec![F::zero(); uz.dim()];
            let mut braided = m.zero_vec();
            for (c, u, k) in lam.legs_basis(i) {
                for (d, v, l) in lam.legs_basis(j) {
                    let uv = b.total().basis_product(*u, *v).to_dense(b.dim_u());
                    uz.proj_into(c.mul(d), &uv, &mon.mul(&e(*k), &e(*l)), &mut rhs);
                }
                axpy_dense(&mut braided, c, &mon.mul(&m.act_basis(*u, &e(j)), &e(*k)));
            }
            r.expect("comodule-algebra", lam.coact(&ij) == rhs, || {
                format!("λ(z{i} z{j}) != λ(z{i}) λ(z{j})")
            });
            r.expect("braided-commutative", ij == braided, || {
                format!("z{i} z{j} != (z₍₋₁₎ z{j}) z₍₀₎ for z = z{i}")
            });
        }
    }
    r
}

/// The `A`-coring axioms, the module-coalgebra and comodule-coalgebra laws, and
/// braided cocommutativity `x₍₂₎₍₀₎ ⊗ x₍₂₎₍₁₎ x₍₁₎ = x₍₁₎ ⊗ x₍₂₎`.
pub fn check_braided_comonoid<F: Field>(b: &LeftBialgebroid<F>, x: &YDLeftRight<F>) -> Report {
    let mut r = Report::new();
    let Some(co) = &x.comonoid else {
        r.fail("comonoid-present", "no comultiplication given");
        return r;
    };
    let m = &x.module;
    let rho = &x.coaction;
    let xx = &co.space;
    let n = m.dim;
    let e = |i: usize| m.basis(i);
    let xxx = tensor_over(&xx.module.bimodule(b), &m.bimodule(b)).expect("bases agree");
    let xxu =
        tensor_over(&xx.module.bimodule(b), &UModule::regular(b).bimodule(b)).expect("bases agree");

    for k in 0..n {
        let legs = co.legs_basis(k);
        let mut lhs = vec![F::zero(); xxx.dim()];
        let mut rhs = vec![F::zero(); xxx.dim()];
        let mut left_counit = m.zero_vec();
        let mut right_counit = m.zero_vec();
        for (c, i, j) in legs {
            for (d, p, q) in co.legs_basis(*i) {
                add_left_nested(&xx.space, &xxx, &c.mul(d), *p, *q, *j, &mut lhs);
            }
            for (d, p, q) in co.legs_basis(*j) {
                add_left_nested(&xx.space, &xxx, &c.mul(d), *i, *p, *q, &mut rhs);
            }
            axpy_dense(&mut left_counit, c, &m.act(&b.s(&co.eps(&e(*i))), &e(*j)));
            axpy_dense(&mut right_counit, c, &m.act(&b.t(&co.eps(&e(*j))), &e(*i)));
        }
        r.expect("coring-coassociative", lhs == rhs, || {
            format!("(Δ ⊗ id) Δ != (id ⊗ Δ) Δ on x{k}")
        });
        r.expect(
            "coring-counital",
            left_counit == e(k) && right_counit == e(k),
            || format!("counit fails on x{k}"),
        );

        for a in 0..b.dim_a() {
            let (sa, ta) = (b.s_basis(a), b.t_basis(a));
            let mut via_s = vec![F::zero(); xx.dim()];
            let mut via_t = vec![F::zero(); xx.dim()];
            for (c, i, j) in legs {
                xx.proj_into(c.clone(), &m.act(sa, &e(*i)), &e(*j), &mut via_s);
                xx.proj_into(c.clone(), &e(*i), &m.act(ta, &e(*j)), &mut via_t);
            }
            let base = b.base();
            let ea = base.basis(a);
            let eps = co.eps(&e(k));
            let ok = co.coproduct(&m.act(sa, &e(k))) == via_s
                && co.coproduct(&m.act(ta, &e(k))) == via_t
                && co.eps(&m.act(sa, &e(k))) == base.mul(&ea, &eps)
                && co.eps(&m.act(ta, &e(k))) == base.mul(&eps, &ea);
            r.expect("coring-bilinear", ok, || {
                format!("coproduct or counit not A-bilinear for a = a{a}, x{k}")
            });
        }

        for u in 0..b.dim_u() {
            let eu = b.basis(u);
            let ux = m.act_basis(u, &e(k));
            r.expect(
                "module-coalgebra",
                co.coproduct(&ux) == xx.module.act_basis(u, &co.coproduct(&e(k))),
                || format!("Δ(u x) != u₍₁₎ x₍₁₎ ⊗ u₍₂₎ x₍₂₎ for u = e{u}, x{k}"),
            );
            let rhs = b.eps(&b.mul(&eu, &b.s(&co.eps(&e(k)))));
            r.expect("module-coalgebra-counit", co.eps(&ux) == rhs, || {
                format!("ε_X(u x) != ε(u ◂ ε_X(x)) for u = e{u}, x{k}")
            });
        }

        let mut lhs = vec![F::zero(); xxu.dim()];
        let mut rhs = vec![F::zero(); xxu.dim()];
        let mut counit = vec![F::zero(); b.dim_u()];
        for (c, j, v) in rho.legs_basis(k) {
            for (d, p, q) in co.legs_basis(*j) {
                add_left_nested(&xx.space, &xxu, &c.mul(d), *p, *q, *v, &mut lhs);
            }
            axpy_dense(&mut counit, c, &b.mul(&b.s(&co.eps(&e(*j))), &b.basis(*v)));
        }
        let mut braided = vec![F::zero(); xx.dim()];
        for (c, i, j) in legs {
            for (d, p, v) in rho.legs_basis(*i) {
                for (f, q, w) in rho.legs_basis(*j) {
                    let wv = b.total().basis_product(*w, *v).to_dense(b.dim_u());
                    for (l, g) in support(&wv) {
                        add_left_nested(
                            &xx.space,
                            &xxu,
                            &c.mul(d).mul(f).mul(g),
                            *p,
                            *q,
                            l,
                            &mut rhs,
                        );
                    }
                }
            }
            for (d, p, v) in rho.legs_basis(*j) {
                xx.proj_into(c.mul(d), &e(*p), &m.act_basis(*v, &e(*i)), &mut braided);
            }
        }
        r.expect("comodule-coalgebra", lhs == rhs, || {
            format!("ρ is not a coalgebra map on x{k}")
        });
        r.expect(
            "comodule-coalgebra-counit",
            counit == b.t(&co.eps(&e(k))),
            || format!("t(ε_X(x)) != ε_X(x₍₀₎) ⊳ x₍₁₎ for x{k}"),
        );
        r.expect(
            "braided-cocommutative",
            braided == co.coproduct(&e(k)),
            || format!("τ ∘ Δ_X != Δ_X on x{k}"),
        );
    }
    r
}

/// The matrix of `σ_{Z,M}: z ⊗ m ↦ z₍₋₁₎ m ⊗ z₍₀₎` between given tensor spaces.
pub fn sigma_matrix<F: Field>(
    z: &YDLeftLeft<F>,
    m: &UModule<F>,
    source: &TensorOverBase<F>,
    target: &TensorOverBase<F>,
) -> Matrix<F> {
    let cols = (0..source.dim())
        .map(|col| {
            let (k, j) = source.rep(col);
            let mut acc = vec![F::zero(); target.dim()];
            for (c, u, i) in z.coaction.legs_basis(k) {
                for (p, x) in m.act[*u].col(j).iter() {
                    target.proj_pair(*p, *i).add_into(&c.mul(x), &mut acc);
                }
            }
            SVec::from_dense(&acc)
        })
        .collect();
    Matrix::from_cols(target.dim(), cols)
}

/// The matrix of `τ_{M,X}: m ⊗ x ↦ x₍₀₎ ⊗ x₍₁₎ m` between given tensor spaces.
pub fn tau_matrix<F: Field>(
    m: &UModule<F>,
    x: &YDLeftRight<F>,
    source: &TensorOverBase<F>,
    target: &TensorOverBase<F>,
) -> Matrix<F> {
    let cols = (0..source.dim())
        .map(|col| {
            let (j, k) = source.rep(col);
            let mut acc = vec![F::zero(); target.dim()];
            for (c, i, u) in x.coaction.legs_basis(k) {
                for (p, y) in m.act[*u].col(j).iter() {
                    target.proj_pair(*i, *p).add_into(&c.mul(y), &mut acc);
                }
            }
            SVec::from_dense(&acc)
        })
        .collect();
    Matrix::from_cols(target.dim(), cols)
}

/// A braiding together with its source and target modules.
#[derive(Clone, Debug)]
pub struct Braiding<F: Field> {
    pub source: TensorModule<F>,
    pub target: TensorModule<F>,
    pub matrix: Matrix<F>,
}

/// `σ_{Z,M}: Z ⊗_A M → M ⊗_A Z`, checked to be `U`-linear.
pub fn braiding_sigma<F: Field>(
    b: &LeftBialgebroid<F>,
    z: &YDLeftLeft<F>,
    m: &UModule<F>,
) -> Result<Braiding<F>> {
    let source = TensorModule::new(b, &z.module, m);
    let target = TensorModule::new(b, m, &z.module);
    let matrix = sigma_matrix(z, m, &source.space, &target.space);
    check_u_linear(&matrix, &source.module, &target.module)?;
    Ok(Braiding {
        source,
        target,
        matrix,
    })
}

/// `τ_{M,X}: M ⊗_A X → X ⊗_A M`, checked to be `U`-linear.
pub fn braiding_tau<F: Field>(
    b: &LeftBialgebroid<F>,
    m: &UModule<F>,
    x: &YDLeftRight<F>,
) -> Result<Braiding<F>> {
    let source = TensorModule::new(b, m, &x.module);
    let target = TensorModule::new(b, &x.module, m);
    let matrix = tau_matrix(m, x, &source.space, &target.space);
    check_u_linear(&matrix, &source.module, &target.module)?;
    Ok(Braiding {
        source,
        target,
        matrix,
    })
}

/// The canonical isomorphism `A ⊗_A M → M`, `a ⊗ m ↦ s(a) m`, where `A` is the unit object.
pub fn left_unitor<F: Field>(
    b: &LeftBialgebroid<F>,
    m: &UModule<F>,
    am: &TensorOverBase<F>,
) -> Matrix<F> {
    let cols = (0..am.dim())
        .map(|k| {
            let (a, j) = am.rep(k);
            SVec::from_dense(&m.act(b.s_basis(a), &m.basis(j)))
        })
        .collect();
    Matrix::from_cols(m.dim, cols)
}

/// The canonical isomorphism `M ⊗_A A → M`, `m ⊗ a ↦ t(a) m`.
pub fn right_unitor<F: Field>(
    b: &LeftBialgebroid<F>,
    m: &UModule<F>,
    ma: &TensorOverBase<F>,
) -> Matrix<F> {
    let cols = (0..ma.dim())
        .map(|k| {
            let (j, a) = ma.rep(k);
            SVec::from_dense(&m.act(b.t_basis(a), &m.basis(j)))
        })
        .collect();
    Matrix::from_cols(m.dim, cols)
}

/// A validated commuting pair of coefficients.
#[derive(Clone, Debug)]
pub struct CommutingPair<F: Field> {
    pub x: YDLeftRight<F>,
    pub z: YDLeftLeft<F>,
}

fn first_failure(r: &Report, prefix: &str) -> Result<()> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Error::Axiom {
            axiom: format!("{prefix}{}", f.axiom),
            witness: f.witness.clone(),
        }),
    }
}

/// The first basis pair `(x_i, z_j)` with `x₍₀₎ ⊗ x₍₁₎ z != z₍₋₁₎ x ⊗ z₍₀₎`, if any.
pub fn commuting_pair_witness<F: Field>(
    b: &LeftBialgebroid<F>,
    x: &YDLeftRight<F>,
    z: &YDLeftLeft<F>,
) -> Option<(usize, usize)> {
    let xz = tensor_over(&x.module.bimodule(b), &z.module.bimodule(b)).expect("bases agree");
    for i in 0..x.dim() {
        for j in 0..z.dim() {
            let mut lhs = vec![F::zero(); xz.dim()];
            let mut rhs = vec![F::zero(); xz.dim()];
            for (c, p, u) in x.coaction.legs_basis(i) {
                xz.proj_into(
                    c.clone(),
                    &x.module.basis(*p),
                    &z.module.act_basis(*u, &z.module.basis(j)),
                    &mut lhs,
                );
            }
            for (c, u, q) in z.coaction.legs_basis(j) {
                xz.proj_into(
                    c.clone(),
                    &x.module.act_basis(*u, &x.module.basis(i)),
                    &z.module.basis(*q),
                    &mut rhs,
                );
            }
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Validates both YD modules and the commuting-pair identity on all basis pairs.
pub fn check_commuting_pair<F: Field>(
    b: &LeftBialgebroid<F>,
    x: YDLeftRight<F>,
    z: YDLeftLeft<F>,
) -> Result<CommutingPair<F>> {
    first_failure(&check_yd_left_right(b, &x), "X: ")?;
    first_failure(&check_yd_left_left(b, &z), "Z: ")?;
    if let Some((i, j)) = commuting_pair_witness(b, &x, &z) {
        return Err(Error::Axiom {
            axiom: "commuting-pair".into(),
            witness: format!("(x{i}, z{j}): x₍₀₎ ⊗ x₍₁₎ z != z₍₋₁₎ x ⊗ z₍₀₎"),
        });
    }
    Ok(CommutingPair { x, z })
}

/// A commuting pair whose monoid and comonoid structures are validated as well.
pub fn check_coefficients<F: Field>(
    b: &LeftBialgebroid<F>,
    x: YDLeftRight<F>,
    z: YDLeftLeft<F>,
) -> Result<CommutingPair<F>> {
    first_failure(&check_braided_comonoid(b, &x), "X: ")?;
    first_failure(&check_braided_monoid(b, &z), "Z: ")?;
    check_commuting_pair(b, x, z)
}

/// `A` as a `U`-module through `u · a = ε(u s(a))`.
pub fn base_module<F: Field>(b: &LeftBialgebroid<F>) -> UModule<F> {
    let n = b.dim_a();
    let act = (0..b.dim_u())
        .map(|u| {
            let cols: Vec<Vec<F>> = (0..n)
                .map(|a| b.eps(&b.mul(&b.basis(u), b.s_basis(a))))
                .collect();
            Matrix::from_dense_cols(n, &cols)
        })
        .collect();
    UModule { dim: n, act }
}

fn pure_legs<F: Field>(x: &[F], y: &[F]) -> Vec<Leg<F>> {
    let mut out = Vec::new();
    for (i, a) in support(x) {
        for (j, c) in support(y) {
            out.push((a.mul(c), i, j));
        }
    }
    out
}

/// `Z = A` with `λ(a) = s(a) ⊗ 1` and the product of `A`.
pub fn unit_z<F: Field>(b: &LeftBialgebroid<F>) -> Result<YDLeftLeft<F>> {
    let a = b.base();
    let n = a.dim();
    let legs = (0..n).map(|i| pure_legs(b.s_basis(i), a.unit())).collect();
    let table: Vec<Vec<F>> = (0..n * n)
        .map(|p| a.basis_product(p / n, p % n).to_dense(n))
        .collect();
    YDLeftLeft::new(b, base_module(b), legs)?
        .with_monoid(Matrix::from_dense_cols(n, &table), a.unit().to_vec())
}

/// `X = A` with `ρ(a) = 1 ⊗ t(a)`, `Δ_X(a) = a ⊗ 1` and `ε_X = id`.
pub fn unit_x<F: Field>(b: &LeftBialgebroid<F>) -> Result<YDLeftRight<F>> {
    let a = b.base();
    let n = a.dim();
    let legs = (0..n).map(|i| pure_legs(a.unit(), b.t_basis(i))).collect();
    let delta = (0..n).map(|i| pure_legs(&a.basis(i), a.unit())).collect();
    YDLeftRight::new(b, base_module(b), legs)?.with_comonoid(b, delta, Matrix::identity(n))
}

/// The unit coefficients `X = Z = A`, validated by every checker.
pub fn unit_coefficients<F: Field>(b: &LeftBialgebroid<F>) -> Result<CommutingPair<F>> {
    check_coefficients(b, unit_x(b)?, unit_z(b)?)
}

/// A pair over the group algebra of `C₂` that is not commuting: `X = k` with
/// `g` acting by `-1` and trivial coaction, `Z = k` with trivial action and
/// `λ(z) = g ⊗ z`. Here `σ_{Z,X} = -τ_{Z,X}`.
pub fn sign_pair<F: Field>(b: &LeftBialgebroid<F>) -> Result<(YDLeftRight<F>, YDLeftLeft<F>)> {
    if b.dim_a() != 1 || b.dim_u() != 2 {
        return Err(Error::Shape(
            "the sign pair lives over the group algebra of C₂".into(),
        ));
    }
    let scalar = |c: F| Matrix::from_dense_cols(1, &[vec![c]]);
    let sign = UModule::new(b, 1, vec![scalar(F::one()), scalar(F::one().neg())])?;
    let triv = UModule::new(b, 1, vec![scalar(F::one()), scalar(F::one())])?;
    let x = YDLeftRight::new(b, sign, vec![vec![(F::one(), 0, 0)]])?;
    let z = YDLeftLeft::new(b, triv, vec![vec![(F::one(), 1, 0)]])?;
    Ok((x, z))
}
