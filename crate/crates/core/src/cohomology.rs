//! `Ext^•_U(X, Z)` as the cohomology of `C^•(U, X, Z)`, with the cup product and
//! the Gerstenhaber bracket induced on classes.

use crate::bar::{Cochain, Source};
use crate::bialgebroid::LeftBialgebroid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, solve, support, Matrix, SVec, Subspace};
use crate::operad::OperadContext;
use crate::report::Report;
use crate::yd::CommutingPair;

/// One degree of `Ext`: cocycles and coboundaries as subspaces of flattened
/// normalized values, and representatives of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct ExtDegree<F: Field> {
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    pub representatives: Vec<Cochain<F>>,
    /// Basis of the cochain space, in flattened coordinates.
    cochain_basis: Vec<SVec<F>>,
    /// `δ` from the cochain basis of this degree to flattened coordinates of the next.
    delta: Matrix<F>,
    /// Columns: flattened representatives followed by a basis of the coboundaries.
    split: Matrix<F>,
}

/// A cohomology class, stored through a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class<F: Field> {
    pub degree: usize,
    pub rep: Cochain<F>,
}

/// The Ext groups of a commuting pair in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct ExtGroups<F: Field> {
    ctx: OperadContext<F>,
    degrees: Vec<ExtDegree<F>>,
}

/// A coboundary `δh = lhs - rhs` found for one instance of an identity.
#[derive(Clone, Debug)]
pub struct Exhibited<F: Field> {
    pub identity: String,
    pub h: Option<Cochain<F>>,
    pub degree: usize,
    /// `lhs - rhs` at cochain level.
    pub difference: Cochain<F>,
}

/// The outcome of [`verify_gerstenhaber`]: pass/fail per identity and the
/// coboundaries that witness each identity holding on classes.
#[derive(Clone, Debug)]
pub struct GerstenhaberReport<F: Field> {
    pub report: Report,
    pub exhibited: Vec<Exhibited<F>>,
}

impl<F: Field> ExtGroups<F> {
    /// Ext in degrees `0..=n_max` with the default resource caps.
    pub fn compute(b: &LeftBialgebroid<F>, pair: CommutingPair<F>, n_max: usize) -> Result<Self> {
        Self::from_context(OperadContext::new(b, pair, n_max)?, n_max)
    }

    pub fn from_context(ctx: OperadContext<F>, n_max: usize) -> Result<Self> {
        if n_max > ctx.max_degree() {
            return Err(Error::Resource(format!(
                "Ext up to degree {n_max} needs the bar resolution up to degree {}",
                n_max + 1
            )));
        }
        let bar = ctx.bar(Source::X);
        let z = ctx.z().clone();
        let mut degrees: Vec<ExtDegree<F>> = Vec::with_capacity(n_max + 1);
        let mut below: Option<Matrix<F>> = None;
        for n in 0..=n_max {
            let ambient = bar.below_dim(n) * z.dim;
            let cochain_basis = bar.cochain_space(n, &z).basis();
            let delta = bar.delta_matrix(n, &z, Source::X);
            let mut cocycles = Subspace::new(ambient);
            for v in kernel(&delta).basis() {
                let mut w = SVec::new();
                for (i, x) in v.iter() {
                    w = w.axpy(x, &cochain_basis[*i]);
                }
                cocycles.insert(w);
            }
            let coboundaries = match &below {
                None => Subspace::new(ambient),
                Some(d) => Subspace::from_vectors(ambient, d.columns().iter().cloned()),
            };
            let mut span = coboundaries.clone();
            let mut reps = Vec::new();
            for v in cocycles.basis() {
                if span.insert(v.clone()) {
                    reps.push(v);
                }
            }
            let cols: Vec<SVec<F>> = reps.iter().cloned().chain(coboundaries.basis()).collect();
            let split = Matrix::from_cols(ambient, cols);
            let representatives = reps
                .iter()
                .map(|v| bar.cochain_from_flat(n, v, &z, Source::X))
                .collect();
            below = Some(delta.clone());
            degrees.push(ExtDegree {
                cocycles,
                coboundaries,
                representatives,
                cochain_basis,
                delta,
                split,
            });
        }
        Ok(ExtGroups { ctx, degrees })
    }

    pub fn context(&self) -> &OperadContext<F> {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &ExtDegree<F> {
        &self.degrees[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].representatives.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.degrees.len()).map(|n| self.dim(n)).collect()
    }

    /// The `i`-th basis class in degree `n`.
    pub fn basis_class(&self, n: usize, i: usize) -> Class<F> {
        Class {
            degree: n,
            rep: self.degrees[n].representatives[i].clone(),
        }
    }

    pub fn basis_classes(&self, n: usize) -> Vec<Class<F>> {
        (0..self.dim(n)).map(|i| self.basis_class(n, i)).collect()
    }

    pub fn zero_class(&self, n: usize) -> Class<F> {
        Class {
            degree: n,
            rep: self.ctx.zero(n, Source::X, self.ctx.z()),
        }
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::Resource(format!(
                "degree {n} is above the computed range 0..={}",
                self.max_degree()
            )));
        }
        Ok(())
    }

    fn flat(&self, c: &Cochain<F>) -> SVec<F> {
        self.ctx.bar(Source::X).flatten(c)
    }

    pub fn is_cocycle(&self, c: &Cochain<F>) -> bool {
        c.degree <= self.max_degree() && self.degrees[c.degree].cocycles.contains(&self.flat(c))
    }

    /// The class of a cocycle; fails on cochains that are not closed.
    pub fn class_of(&self, c: &Cochain<F>) -> Result<Class<F>> {
        self.check_range(c.degree)?;
        if c.source != Source::X {
            return Err(Error::Shape("classes live on Bar(U, X)".into()));
        }
        if !self.is_cocycle(c) {
            return Err(Error::Axiom {
                axiom: "cocycle".into(),
                witness: format!("δc != 0 in degree {}", c.degree),
            });
        }
        Ok(Class {
            degree: c.degree,
            rep: c.clone(),
        })
    }

    /// Coordinates of a class in the basis of representatives.
    pub fn coordinates(&self, c: &Class<F>) -> Result<Vec<F>> {
        self.check_range(c.degree)?;
        let d = &self.degrees[c.degree];
        let flat = self.flat(&c.rep).to_dense(d.split.nrows());
        let x = solve(&d.split, &flat)
            .ok_or_else(|| Error::NoSolution(format!("not a cocycle in degree {}", c.degree)))?;
        Ok(x[..d.representatives.len()].to_vec())
    }

    /// Some `h` with `δh = c`, if `c` is a coboundary.
    pub fn coboundary_preimage(&self, c: &Cochain<F>) -> Option<Cochain<F>> {
        let n = c.degree;
        if n == 0 {
            return c.is_zero().then(|| c.clone());
        }
        if n > self.max_degree() {
            return None;
        }
        let d = &self.degrees[n - 1];
        let rhs = self.flat(c).to_dense(d.delta.nrows());
        let x = solve(&d.delta, &rhs)?;
        let mut v = SVec::new();
        for (i, a) in support(&x) {
            v = v.axpy(a, &d.cochain_basis[i]);
        }
        Some(
            self.ctx
                .bar(Source::X)
                .cochain_from_flat(n - 1, &v, self.ctx.z(), Source::X),
        )
    }

    pub fn same_class(&self, a: &Class<F>, b: &Class<F>) -> bool {
        a.degree == b.degree && self.coboundary_preimage(&a.rep.sub(&b.rep)).is_some()
    }

    pub fn add(&self, a: &Class<F>, b: &Class<F>) -> Class<F> {
        Class {
            degree: a.degree,
            rep: a.rep.add(&b.rep),
        }
    }

    pub fn scale(&self, a: &Class<F>, c: &F) -> Class<F> {
        Class {
            degree: a.degree,
            rep: a.rep.scale(c),
        }
    }

    pub fn class_cup(&self, a: &Class<F>, b: &Class<F>) -> Result<Class<F>> {
        self.class_of(&a.rep)?;
        self.class_of(&b.rep)?;
        let c = self.ctx.cup(&a.rep, &b.rep)?;
        self.class_of(&c)
    }

    /// The bracket of classes; `None` when both have degree 0 and the bracket
    /// lands in degree `-1`, where it vanishes.
    pub fn class_bracket(&self, a: &Class<F>, b: &Class<F>) -> Result<Option<Class<F>>> {
        self.class_of(&a.rep)?;
        self.class_of(&b.rep)?;
        if a.degree + b.degree == 0 {
            return Ok(None);
        }
        let c = self.ctx.bracket(&a.rep, &b.rep)?;
        self.class_of(&c).map(Some)
    }
}

/// A signed sum of cochains of one degree, where `None` stands for zero.
fn combine<F: Field>(terms: &[(i64, Option<&Cochain<F>>)], zero: &Cochain<F>) -> Cochain<F> {
    let mut out = zero.clone();
    for (s, t) in terms {
        if let Some(t) = t {
            out = out.add(&t.scale(&F::sign(*s)));
        }
    }
    out
}

/// Checks the Gerstenhaber identities on all basis classes of degree at most
/// `degree_cap` whose results stay within the computed range:
///
/// - graded commutativity `a ∪ b = (-1)^{pq} b ∪ a`;
/// - graded antisymmetry `{a, b} = -(-1)^{(p-1)(q-1)} {b, a}`;
/// - graded Jacobi `Σ_cyclic (-1)^{(p-1)(r-1)} {a, {b, c}} = 0`;
/// - Leibniz `{a, b ∪ c} = {a, b} ∪ c + (-1)^{(p-1)q} b ∪ {a, c}`.
///
/// Each identity is decided by solving `δh = lhs - rhs`; the solutions are returned.
pub fn verify_gerstenhaber<F: Field>(
    ext: &ExtGroups<F>,
    degree_cap: usize,
) -> GerstenhaberReport<F> {
    let mut out = GerstenhaberReport {
        report: Report::new(),
        exhibited: Vec::new(),
    };
    let ctx = ext.context();
    let top = ext.max_degree();
    let cap = degree_cap.min(top);
    let classes: Vec<Class<F>> = (0..=cap).flat_map(|n| ext.basis_classes(n)).collect();
    let label = |c: &Class<F>| {
        let idx = ext
            .basis_classes(c.degree)
            .iter()
            .position(|b| b == c)
            .unwrap_or(0);
        format!("[{}.{}]", c.degree, idx)
    };

    let decide = |out: &mut GerstenhaberReport<F>,
                  axiom: &str,
                  name: String,
                  diff: Result<Cochain<F>>| match diff {
        Err(e) => out.report.fail(axiom, format!("{name}: {e}")),
        Ok(d) => {
            let h = ext.coboundary_preimage(&d);
            out.report
                .expect(axiom, h.is_some(), || format!("{name} is not a coboundary"));
            out.exhibited.push(Exhibited {
                identity: name,
                degree: d.degree,
                h,
                difference: d,
            });
        }
    };

    let bracket = |a: &Cochain<F>, b: &Cochain<F>| -> Result<Option<Cochain<F>>> {
        if a.degree + b.degree == 0 {
            Ok(None)
        } else {
            ctx.bracket(a, b).map(Some)
        }
    };

    for a in &classes {
        for b in &classes {
            let (p, q) = (a.degree as i64, b.degree as i64);
            if a.degree + b.degree <= top {
                let name = format!("{} ∪ {} vs {} ∪ {}", label(a), label(b), label(b), label(a));
                let diff = ctx
                    .cup(&a.rep, &b.rep)
                    .and_then(|ab| Ok(ab.sub(&ctx.cup(&b.rep, &a.rep)?.scale(&F::sign(p * q)))));
                decide(&mut out, "cup-graded-commutative", name, diff);
            }
            if a.degree + b.degree >= 1 && a.degree + b.degree - 1 <= top {
                let name = format!(
                    "{{{}, {}}} vs {{{}, {}}}",
                    label(a),
                    label(b),
                    label(b),
                    label(a)
                );
                let diff = ctx.bracket(&a.rep, &b.rep).and_then(|ab| {
                    Ok(ab.add(
                        &ctx.bracket(&b.rep, &a.rep)?
                            .scale(&F::sign((p - 1) * (q - 1))),
                    ))
                });
                decide(&mut out, "bracket-antisymmetric", name, diff);
            }
        }
    }

    for a in &classes {
        for b in &classes {
            for c in &classes {
                let (p, q, r) = (a.degree as i64, b.degree as i64, c.degree as i64);
                let total = p + q + r;
                if total >= 2 && (total - 2) as usize <= top {
                    let name = format!("Jacobi on ({}, {}, {})", label(a), label(b), label(c));
                    let diff = (|| -> Result<Cochain<F>> {
                        let zero = ctx.zero((total - 2) as usize, Source::X, ctx.z());
                        let nested = |x: &Cochain<F>,
                                      y: &Cochain<F>,
                                      w: &Cochain<F>|
                         -> Result<Option<Cochain<F>>> {
                            match bracket(y, w)? {
                                None => Ok(None),
                                Some(yw) => bracket(x, &yw),
                            }
                        };
                        let t1 = nested(&a.rep, &b.rep, &c.rep)?;
                        let t2 = nested(&b.rep, &c.rep, &a.rep)?;
                        let t3 = nested(&c.rep, &a.rep, &b.rep)?;
                        Ok(combine(
                            &[
                                ((p - 1) * (r - 1), t1.as_ref()),
                                ((q - 1) * (p - 1), t2.as_ref()),
                                ((r - 1) * (q - 1), t3.as_ref()),
                            ],
                            &zero,
                        ))
                    })();
                    decide(&mut out, "bracket-jacobi", name, diff);
                }
                if total >= 1 && (total - 1) as usize <= top {
                    let name = format!("Leibniz on ({}, {}, {})", label(a), label(b), label(c));
                    let diff = (|| -> Result<Cochain<F>> {
                        let zero = ctx.zero((total - 1) as usize, Source::X, ctx.z());
                        let bc = ctx.cup(&b.rep, &c.rep)?;
                        let lhs = bracket(&a.rep, &bc)?;
                        let ab_c = match bracket(&a.rep, &b.rep)? {
                            None => None,
                            Some(ab) => Some(ctx.cup(&ab, &c.rep)?),
                        };
                        let b_ac = match bracket(&a.rep, &c.rep)? {
                            None => None,
                            Some(ac) => Some(ctx.cup(&b.rep, &ac)?),
                        };
                        Ok(combine(
                            &[
                                (0, lhs.as_ref()),
                                (1, ab_c.as_ref()),
                                (1 + (p - 1) * q, b_ac.as_ref()),
                            ],
                            &zero,
                        ))
                    })();
                    decide(&mut out, "bracket-leibniz", name, diff);
                }
            }
        }
    }
    out
}
